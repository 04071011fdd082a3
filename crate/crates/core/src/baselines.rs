//! Reference coders to compare EAHn against: a static Huffman code over the
//! whole input, and LZ78.

use std::collections::HashMap;

use crate::adaptive_code::Alphabet;
use crate::bitstream::{index_width, BitString};
use crate::error::{Error, Result};
use crate::tuple_huffman::huffman;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaselineReport {
    pub codec: &'static str,
    pub payload_bits: u64,
    /// Symbols coded (Huffman) or phrases emitted (LZ78).
    pub units: u64,
}

/// Bits of the codeword stream when `data` is coded with one Huffman code
/// built from its symbol frequencies. The code table itself is not counted.
pub fn huffman_stream_length(data: &[u8]) -> Result<u64> {
    let alphabet = Alphabet::from_data(data)?;
    let mut counts = [0u64; 256];
    for &b in data {
        counts[b as usize] += 1;
    }
    let frequencies: Vec<u64> = alphabet
        .symbols()
        .iter()
        .map(|&s| counts[s as usize])
        .collect();
    Ok(huffman(&frequencies)?.cost(&frequencies))
}

pub fn huffman_report(data: &[u8]) -> Result<BaselineReport> {
    Ok(BaselineReport {
        codec: "huffman",
        payload_bits: huffman_stream_length(data)?,
        units: data.len() as u64,
    })
}

/// One LZ78 phrase: a previous phrase (0 is the empty phrase) extended by
/// one symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Phrase {
    pub prefix: u64,
    pub symbol: u8,
}

/// Greedy LZ78 parse. If the input ends inside a known phrase, that
/// phrase is emitted once more, as its parent plus its last symbol.
pub fn lz78_parse(data: &[u8]) -> Vec<Phrase> {
    let mut children: HashMap<(u64, u8), u64> = HashMap::new();
    // dictionary entry -> how it was formed; entry 0 is the empty phrase
    let mut entries = vec![Phrase {
        prefix: 0,
        symbol: 0,
    }];
    let mut phrases = Vec::new();
    let mut node = 0u64;
    for &b in data {
        match children.get(&(node, b)) {
            Some(&child) => node = child,
            None => {
                let phrase = Phrase {
                    prefix: node,
                    symbol: b,
                };
                children.insert((node, b), entries.len() as u64);
                entries.push(phrase);
                phrases.push(phrase);
                node = 0;
            }
        }
    }
    if node != 0 {
        phrases.push(entries[node as usize]);
    }
    phrases
}

/// Width of the `k`-th phrase (1-based) over an alphabet of `m` symbols:
/// the pair (prefix, symbol) is packed as `prefix·m + symbol < k·m`.
pub fn phrase_width(k: u64, m: u64) -> u32 {
    index_width(k.saturating_mul(m))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lz78Encoding {
    pub bits: BitString,
    pub phrases: u64,
    pub alphabet: Alphabet,
}

pub fn lz78_encode(data: &[u8]) -> Result<Lz78Encoding> {
    if data.is_empty() {
        return Err(Error::Argument("cannot encode an empty input"));
    }
    let alphabet = Alphabet::from_data(data)?;
    let m = alphabet.len() as u64;
    let phrases = lz78_parse(data);
    let mut bits = BitString::new();
    for (k, phrase) in (1u64..).zip(&phrases) {
        let symbol = alphabet
            .index_of(phrase.symbol)
            .expect("symbol in alphabet") as u64;
        bits.push_bits(phrase.prefix * m + symbol, phrase_width(k, m));
    }
    Ok(Lz78Encoding {
        bits,
        phrases: phrases.len() as u64,
        alphabet,
    })
}

pub fn lz78_report(data: &[u8]) -> Result<BaselineReport> {
    let enc = lz78_encode(data)?;
    Ok(BaselineReport {
        codec: "lz78",
        payload_bits: enc.bits.len(),
        units: enc.phrases,
    })
}

pub fn lz78_decode(bits: &BitString, phrases: u64, alphabet: &Alphabet) -> Result<Vec<u8>> {
    let m = alphabet.len() as u64;
    let mut reader = bits.reader();
    let mut entries: Vec<(u64, u8)> = vec![(0, 0)];
    let mut out = Vec::new();
    let mut scratch = Vec::new();
    for k in 1..=phrases {
        let value = reader.read_bits(phrase_width(k, m))?;
        let (prefix, symbol) = (value / m, (value % m) as usize);
        if prefix >= k {
            return Err(Error::CorruptStream("dangling dictionary reference"));
        }
        let symbol = alphabet.symbol(symbol).expect("value % m is an index");
        scratch.clear();
        scratch.push(symbol);
        let mut node = prefix;
        while node != 0 {
            let (parent, s) = entries[node as usize];
            scratch.push(s);
            node = parent;
        }
        out.extend(scratch.iter().rev());
        entries.push((prefix, symbol));
    }
    if !reader.is_at_end() {
        return Err(Error::TrailingGarbage(reader.remaining()));
    }
    Ok(out)
}
