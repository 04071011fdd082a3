#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

/// 200 symbols over {a,b,c,d,e}; symbol counts (31, 31, 64, 37, 37).
pub const LONG_SAMPLE: &[u8] = b"abedcababedccabedcedcababedcedcccabedcabedcedccababedc\
abedccccedccedccedcababedcabedcedccedcababedcabedccabedcab\
abedcedcccccedcabedcabedccccedcccabedcccedccabedccccabedcc\
ababedcabedcedccabedcababedced";

pub const SHORT_SAMPLE: &[u8] = b"abccdbbab";

/// Minimum of Σ f·depth over all full binary trees whose leaves are the
/// entries of `freqs`, by exhaustive split enumeration.
pub fn brute_force_optimal_cost(freqs: &[u64]) -> u64 {
    fn solve(set: u32, freqs: &[u64], memo: &mut HashMap<u32, u64>) -> u64 {
        if set.count_ones() == 1 {
            return 0;
        }
        if let Some(&c) = memo.get(&set) {
            return c;
        }
        let total: u64 = (0..freqs.len())
            .filter(|i| set & (1 << i) != 0)
            .map(|i| freqs[i])
            .sum();
        let lowest = set & set.wrapping_neg();
        let rest = set & !lowest;
        let mut best = u64::MAX;
        // left subtree always holds the lowest member; enumerate the rest of it
        let mut sub = rest;
        loop {
            let left = lowest | sub;
            if left != set {
                let cost = solve(left, freqs, memo) + solve(set & !left, freqs, memo);
                best = best.min(cost);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        memo.insert(set, total + best);
        total + best
    }
    if freqs.len() == 1 {
        // a lone symbol still needs a one-bit codeword
        return freqs[0];
    }
    solve((1u32 << freqs.len()) - 1, freqs, &mut HashMap::new())
}

/// (context, following symbol) -> number of positions i with
/// w[i..i+n] == context and w[i+n] == symbol.
pub fn naive_transition_counts(w: &[u8], n: usize) -> BTreeMap<(Vec<u8>, u8), u64> {
    let mut counts = BTreeMap::new();
    if w.len() <= n {
        return counts;
    }
    for i in 0..w.len() - n {
        *counts.entry((w[i..i + n].to_vec(), w[i + n])).or_insert(0) += 1;
    }
    counts
}

pub fn kraft_sum(lengths: &[u32]) -> f64 {
    lengths.iter().map(|&l| 0.5f64.powi(l as i32)).sum()
}
