mod common;

use common::{LONG_SAMPLE, SHORT_SAMPLE};
use eah_core::adaptive_code::{Alphabet, CodeTable};
use eah_core::baselines::{lz78_decode, lz78_encode, lz78_parse};
use eah_core::bitstream::{b10, b10b2, index_width, mb10b2, BitString};
use eah_core::eah_codec::{self, context_code_table, decompress, encode};
use eah_core::tuple_huffman::huffman;
use proptest::prelude::*;

fn data() -> impl Strategy<Value = Vec<u8>> {
    (1usize..=16).prop_flat_map(|m| {
        prop::collection::vec(any::<u8>(), m)
            .prop_flat_map(|symbols| prop::collection::vec(prop::sample::select(symbols), 1..=300))
    })
}

#[test]
fn samples_round_trip() {
    for w in [SHORT_SAMPLE, LONG_SAMPLE, b"a", b"ab", b"aaaa"] {
        for n in 1..=3 {
            let bytes = eah_codec::compress(w, n).unwrap();
            assert_eq!(decompress(&bytes).unwrap(), w, "n={n}");
        }
    }
}

#[test]
fn encoding_is_deterministic() {
    assert_eq!(
        eah_codec::compress(LONG_SAMPLE, 2).unwrap(),
        eah_codec::compress(LONG_SAMPLE, 2).unwrap()
    );
}

/// Codes every position of `w` (after the first `n`) in its context from an
/// explicit table, which must agree with `E`.
#[test]
fn codeword_stream_matches_explicit_table() {
    for n in 1..=3 {
        let table = context_code_table(LONG_SAMPLE, n).unwrap();
        assert!(table.validate_prefix_condition());
        let mut e = BitString::new();
        for (context, symbol) in table.context_trace(LONG_SAMPLE).skip(n) {
            e.append(table.codeword(symbol, context).unwrap());
        }
        assert_eq!(e, encode(LONG_SAMPLE, n).unwrap().payload.e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn codec_round_trip(w in data(), n in 1usize..=3) {
        let out = encode(&w, n).unwrap();
        prop_assert_eq!(out.decode().unwrap(), w.clone());
        let bytes = out.to_bytes();
        let back = eah_codec::deserialize(&bytes).unwrap();
        prop_assert_eq!(&back, &out);
        prop_assert_eq!(back.to_bytes(), bytes);
    }

    #[test]
    fn component_identities(w in data(), n in 1usize..=3) {
        let out = encode(&w, n).unwrap();
        let p = &out.payload;
        let m = out.header.alphabet.len() as u64;
        let h = w.len() as u64;
        prop_assert_eq!(p.a.len(), h.min(n as u64) * index_width(m) as u64);
        prop_assert_eq!(p.b.len(), m.pow(n as u32));
        prop_assert_eq!(p.c.len(), m * p.b.count_ones());
        prop_assert_eq!(p.d.len(), p.max_width as u64 * p.c.count_ones());
        // Σ over marked pairs of the frequency is h - n
        let mut r = p.d.reader();
        let mut total = 0;
        for _ in 0..p.c.count_ones() {
            let f = r.read_bits(p.max_width as u32).unwrap();
            prop_assert!(f >= 1);
            total += f;
        }
        prop_assert_eq!(total, h.saturating_sub(n as u64));
    }

    #[test]
    fn codeword_stream_length(w in data(), n in 1usize..=3) {
        let mut g = eah_core::AdaptiveGraph::build(&w, n).unwrap();
        g.assign_codewords();
        let expected: u64 = g.transitions().map(|(_, l)| l.frequency * l.codeword.len()).sum();
        prop_assert_eq!(encode(&w, n).unwrap().payload.e.len(), expected);
    }

    #[test]
    fn binary_round_trip(j in 0u64..=(1 << 20)) {
        prop_assert_eq!(b10b2(j).to_u64(), Some(j));
        let width = b10b2(j).len() as u32 + 3;
        let padded = mb10b2(j, width).unwrap();
        prop_assert_eq!(padded.len(), width as u64);
        let stripped: BitString = padded.iter().skip(3).collect();
        prop_assert_eq!(stripped, b10b2(j));
    }

    #[test]
    fn digits_are_positional(m in 2u64..=10, n in 1usize..=5, seed in any::<u64>()) {
        let j = seed % m.pow(n as u32);
        let t = b10(j, m, n).unwrap();
        prop_assert_eq!(t.width(), n);
        let value: u64 = (1..=n).map(|i| t.digit(i).unwrap() * m.pow((n - i) as u32)).sum();
        prop_assert_eq!(value, j);
        prop_assert!(t.digits().iter().all(|&d| d < m));
    }

    #[test]
    fn bit_writer_reader(chunks in prop::collection::vec(prop::collection::vec(any::<bool>(), 0..20), 0..20)) {
        let mut w = BitString::new();
        let mut flat: Vec<bool> = Vec::new();
        for chunk in &chunks {
            w.append(&chunk.iter().copied().collect());
            flat.extend(chunk);
        }
        prop_assert_eq!(w.len(), flat.len() as u64);
        let bytes = w.as_bytes().to_vec();
        let mut r = eah_core::BitReader::new(&bytes, w.len());
        for chunk in &chunks {
            let got: Vec<bool> = r.read_bitstring(chunk.len() as u64).unwrap().iter().collect();
            prop_assert_eq!(&got, chunk);
        }
        prop_assert!(r.is_at_end());
    }

    #[test]
    fn lz78_round_trip(w in prop::collection::vec(prop::sample::select(b"abcxyz".to_vec()), 1..2000)) {
        let enc = lz78_encode(&w).unwrap();
        prop_assert_eq!(lz78_decode(&enc.bits, enc.phrases, &enc.alphabet).unwrap(), w.clone());
        // phrases cover the input exactly
        let phrases = lz78_parse(&w);
        let mut dict: Vec<Vec<u8>> = vec![vec![]];
        let mut joined: Vec<u8> = Vec::new();
        for p in &phrases {
            let mut text = dict[p.prefix as usize].clone();
            text.push(p.symbol);
            joined.extend(&text);
            dict.push(text);
        }
        prop_assert_eq!(joined, w);
    }

    #[test]
    fn explicit_tables_are_injective(
        m in 1usize..=4,
        n in 1usize..=2,
        seed in prop::collection::vec(1u64..10, 64),
        w_seed in prop::collection::vec(any::<u8>(), 0..=64),
    ) {
        let symbols: Vec<u8> = (b'a'..).take(m).collect();
        let alphabet = Alphabet::new(symbols.clone()).unwrap();
        let mut table = CodeTable::new(n, alphabet).unwrap();
        // every context of length <= n gets a Huffman code over random weights
        let mut contexts: Vec<Vec<u8>> = vec![vec![]];
        for len in 1..=n {
            let mut next = Vec::new();
            for c in contexts.iter().filter(|c| c.len() == len - 1) {
                for &s in &symbols {
                    let mut k = c.clone();
                    k.push(s);
                    next.push(k);
                }
            }
            contexts.extend(next);
        }
        for (ci, context) in contexts.iter().enumerate() {
            let weights: Vec<u64> = (0..m).map(|i| seed[(ci * 7 + i) % seed.len()]).collect();
            let code = huffman(&weights).unwrap();
            for (&s, word) in symbols.iter().zip(code.codewords()) {
                table.insert(context, s, word.clone()).unwrap();
            }
        }
        prop_assert!(table.validate_prefix_condition());
        let w: Vec<u8> = w_seed.iter().map(|b| symbols[*b as usize % m]).collect();
        let bits = table.extend(&w).unwrap();
        let expected_len: u64 = table.context_trace(&w).map(|(c, s)| table.codeword(s, c).unwrap().len()).sum();
        prop_assert_eq!(bits.len(), expected_len);
        prop_assert_eq!(table.decode(&bits, w.len()).unwrap(), w);
    }
}
