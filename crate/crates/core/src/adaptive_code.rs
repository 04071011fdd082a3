//! Explicit adaptive codes of order `n`: a codeword for every symbol in
//! every context of at most `n` previous symbols.
//!
//! When every per-context codeword set is a prefix code, the extension
//! `c̄` is injective and [`CodeTable::decode`] inverts [`CodeTable::extend`].

use std::collections::BTreeMap;

use crate::bitstream::{BitReader, BitString};
use crate::error::{Error, Result};
use crate::tuple_huffman::is_prefix_free;

const NO_INDEX: u16 = u16::MAX;

/// An ordered set of byte symbols. Position in the set is the symbol's index.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    index: [u16; 256],
}

impl Alphabet {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::Alphabet("an alphabet needs at least one symbol"));
        }
        let mut index = [NO_INDEX; 256];
        for (i, &s) in symbols.iter().enumerate() {
            if index[s as usize] != NO_INDEX {
                return Err(Error::Alphabet("alphabet symbols must be distinct"));
            }
            index[s as usize] = i as u16;
        }
        Ok(Self { symbols, index })
    }

    /// The distinct bytes of `data`, ascending.
    pub fn from_data(data: &[u8]) -> Result<Self> {
        let mut seen = [false; 256];
        for &b in data {
            seen[b as usize] = true;
        }
        let symbols = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::new(symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn index_of(&self, symbol: u8) -> Option<usize> {
        match self.index[symbol as usize] {
            NO_INDEX => None,
            i => Some(i as usize),
        }
    }

    pub fn symbol(&self, index: usize) -> Option<u8> {
        self.symbols.get(index).copied()
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.index_of(symbol).is_some()
    }

    pub fn is_ascending(&self) -> bool {
        self.symbols.windows(2).all(|w| w[0] < w[1])
    }

    /// Maps every byte of `data` to its index.
    pub fn indices(&self, data: &[u8]) -> Result<Vec<u8>> {
        data.iter()
            .map(|&b| {
                self.index_of(b)
                    .map(|i| i as u8)
                    .ok_or(Error::UnknownSymbol(b))
            })
            .collect()
    }
}

impl std::fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("Alphabet").field(&self.symbols).finish()
    }
}

/// A function `c: Σ × Σ^{≤n} → {0,1}^+` stored column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTable {
    order: usize,
    alphabet: Alphabet,
    contexts: BTreeMap<Vec<u8>, BTreeMap<u8, BitString>>,
}

impl CodeTable {
    pub fn new(order: usize, alphabet: Alphabet) -> Result<Self> {
        if order == 0 {
            return Err(Error::Argument("adaptive codes have order at least 1"));
        }
        Ok(Self {
            order,
            alphabet,
            contexts: BTreeMap::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Sets `c(symbol, context)`. The empty context is `λ`.
    pub fn insert(&mut self, context: &[u8], symbol: u8, codeword: BitString) -> Result<()> {
        if context.len() > self.order {
            return Err(Error::Argument("context longer than the code order"));
        }
        if let Some(&b) = context
            .iter()
            .chain([&symbol])
            .find(|&&b| !self.alphabet.contains(b))
        {
            return Err(Error::UnknownSymbol(b));
        }
        self.contexts
            .entry(context.to_vec())
            .or_default()
            .insert(symbol, codeword);
        Ok(())
    }

    pub fn codeword(&self, symbol: u8, context: &[u8]) -> Option<&BitString> {
        self.contexts.get(context)?.get(&symbol)
    }

    pub fn contexts(&self) -> impl Iterator<Item = (&[u8], &BTreeMap<u8, BitString>)> {
        self.contexts.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// The (context, symbol) pair used at every position of `w`.
    pub fn context_trace<'w>(&self, w: &'w [u8]) -> impl Iterator<Item = (&'w [u8], u8)> + 'w {
        let order = self.order;
        w.iter()
            .enumerate()
            .map(move |(t, &s)| (&w[t.saturating_sub(order)..t], s))
    }

    /// `c̄(w)`: each symbol coded in the context of the `min(t-1, n)`
    /// symbols before it.
    pub fn extend(&self, w: &[u8]) -> Result<BitString> {
        let mut out = BitString::new();
        for (context, symbol) in self.context_trace(w) {
            let codeword =
                self.codeword(symbol, context)
                    .ok_or_else(|| Error::TableIncomplete {
                        symbol,
                        context: context.to_vec(),
                    })?;
            out.append(codeword);
        }
        Ok(out)
    }

    /// True iff every stored context's codeword set is a prefix code.
    pub fn validate_prefix_condition(&self) -> bool {
        self.contexts
            .values()
            .all(|column| is_prefix_free(column.values()))
    }

    /// Inverse of [`extend`](Self::extend) for strings of length `count`.
    pub fn decode(&self, bits: &BitString, count: usize) -> Result<Vec<u8>> {
        let mut reader = bits.reader();
        let mut out: Vec<u8> = Vec::with_capacity(count);
        for t in 0..count {
            let context = &out[t.saturating_sub(self.order)..t];
            let column = self
                .contexts
                .get(context)
                .ok_or(Error::CorruptStream("no code for the current context"))?;
            let symbol = column
                .iter()
                .find(|(_, codeword)| next_bits_equal(&reader, codeword))
                .map(|(&s, _)| s)
                .ok_or(Error::CorruptStream(
                    "no codeword matches in the current context",
                ))?;
            reader.read_bitstring(column[&symbol].len())?;
            out.push(symbol);
        }
        if !reader.is_at_end() {
            return Err(Error::TrailingGarbage(reader.remaining()));
        }
        Ok(out)
    }
}

fn next_bits_equal(reader: &BitReader<'_>, codeword: &BitString) -> bool {
    let mut peek = reader.clone();
    codeword.iter().all(|bit| peek.read_bit().ok() == Some(bit))
}
