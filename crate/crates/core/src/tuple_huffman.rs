//! Huffman coding over tuples.
//!
//! The working list holds one [`WorkItem`] per live subtree. Each round
//! picks the two items with the smallest totals, prepends `0` to the
//! codewords of the first item's members and `1` to the second's, and
//! replaces both with their merge. Codewords stay aligned with the input
//! positions.
//!
//! Ties between equal totals go to the item that sits later in the list.
//! Together with the successor order fixed in
//! [`crate::adaptive_graph::AdaptiveGraph::successors_sorted`], this yields
//! the codewords `a -> "0"`, `c -> "10"`, `b_aux -> "11"` for the context `b`
//! of `abccdbbab`, where all three successors occur once.

use std::cmp::Reverse;

use crate::bitstream::BitString;
use crate::error::{Error, Result};

/// `P ◁ q`
pub fn append<T>(mut tuple: Vec<T>, item: T) -> Vec<T> {
    tuple.push(item);
    tuple
}

/// `P ▷ i`, with `position` counted from 1.
pub fn remove_at<T>(mut tuple: Vec<T>, position: usize) -> Result<Vec<T>> {
    if position == 0 || position > tuple.len() {
        return Err(Error::Position {
            position,
            len: tuple.len(),
        });
    }
    tuple.remove(position - 1);
    Ok(tuple)
}

/// `U △ V`
pub fn concat<T>(mut first: Vec<T>, second: Vec<T>) -> Vec<T> {
    first.extend(second);
    first
}

/// A subtree under construction: its total frequency, the depth reached
/// so far by each member leaf, and the (1-based) input positions of those
/// leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkItem {
    pub total: u64,
    pub depths: Vec<u64>,
    pub members: Vec<usize>,
}

impl WorkItem {
    /// `(f, 0, (position))`
    pub fn leaf(frequency: u64, position: usize) -> Self {
        Self {
            total: frequency,
            depths: vec![0],
            members: vec![position],
        }
    }

    /// `M ◊ N`: totals add, every member goes one level deeper.
    pub fn merge(self, other: WorkItem) -> WorkItem {
        let deeper = |d: Vec<u64>| d.into_iter().map(|x| x + 1).collect::<Vec<_>>();
        WorkItem {
            total: self.total + other.total,
            depths: concat(deeper(self.depths), deeper(other.depths)),
            members: concat(self.members, other.members),
        }
    }
}

/// Codewords aligned with the input frequencies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeAssignment {
    entries: Vec<(BitString, u32)>,
}

impl CodeAssignment {
    pub fn entries(&self) -> &[(BitString, u32)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn codeword(&self, index: usize) -> &BitString {
        &self.entries[index].0
    }

    pub fn codewords(&self) -> impl Iterator<Item = &BitString> {
        self.entries.iter().map(|(c, _)| c)
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.entries.iter().map(|&(_, l)| l).collect()
    }

    pub fn into_codewords(self) -> Vec<BitString> {
        self.entries.into_iter().map(|(c, _)| c).collect()
    }

    /// `Σ f_i · l_i`
    pub fn cost(&self, frequencies: &[u64]) -> u64 {
        frequencies
            .iter()
            .zip(&self.entries)
            .map(|(&f, &(_, l))| f * l as u64)
            .sum()
    }
}

/// Positions (0-based, ascending) of the two items to merge next.
fn select_pair(list: &[WorkItem]) -> (usize, usize) {
    let mut order: Vec<usize> = (0..list.len()).collect();
    order.sort_by_key(|&p| (list[p].total, Reverse(p)));
    let (a, b) = (order[0], order[1]);
    (a.min(b), a.max(b))
}

/// Builds a Huffman code for `frequencies`. A single frequency gets `"0"`.
pub fn huffman(frequencies: &[u64]) -> Result<CodeAssignment> {
    if frequencies.is_empty() {
        return Err(Error::Argument("huffman needs at least one frequency"));
    }
    if frequencies.contains(&0) {
        return Err(Error::Argument("huffman frequencies must be positive"));
    }
    let k = frequencies.len();
    let mut list: Vec<WorkItem> = frequencies
        .iter()
        .enumerate()
        .map(|(p, &f)| WorkItem::leaf(f, p + 1))
        .collect();
    // codewords grow at the front; collect them reversed
    let mut reversed: Vec<Vec<bool>> = vec![Vec::new(); k];
    if k == 1 {
        reversed[0].push(false);
    }
    while list.len() > 1 {
        let (i, j) = select_pair(&list);
        for &x in &list[i].members {
            reversed[x - 1].push(false);
        }
        for &x in &list[j].members {
            reversed[x - 1].push(true);
        }
        let first = list[i].clone();
        let second = list[j].clone();
        list = remove_at(list, j + 1)?;
        list = remove_at(list, i + 1)?;
        list = append(list, first.merge(second));
    }
    let entries = reversed
        .into_iter()
        .map(|bits| {
            let len = bits.len() as u32;
            (bits.into_iter().rev().collect::<BitString>(), len)
        })
        .collect();
    Ok(CodeAssignment { entries })
}

/// True iff no codeword is a prefix of another.
pub fn is_prefix_free<'a>(codewords: impl IntoIterator<Item = &'a BitString>) -> bool {
    let mut words: Vec<String> = codewords.into_iter().map(|c| c.to_string()).collect();
    words.sort();
    // after sorting, a prefix sits directly before some word it prefixes
    words.windows(2).all(|w| !w[1].starts_with(w[0].as_str()))
}
