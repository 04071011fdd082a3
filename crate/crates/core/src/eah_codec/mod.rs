//! The EAHn encoder, its decoder, and the on-disk container.
//!
//! Symbols are identified by their index in the alphabet (the distinct
//! input bytes, ascending), and a context `σ_{j1}…σ_{jn}` by the number
//! whose base-`m` digits are `j1…jn`. Components:
//!
//! * `A`: indices of the first `min(h, n)` symbols, `⌈log₂ m⌉` bits each;
//! * `B`: `m^n` bits, bit `j` set iff context `j` is followed by a symbol;
//! * `C`: for `i` in `0..m`, for every `j` with `B_j = 1`, one bit telling
//!   whether symbol `i` ever follows context `j`;
//! * `D`: in the same order, the frequency of every pair marked in `C`, in
//!   `Max` bits where `Max` is the width of the largest such frequency;
//! * `E`: the codeword of every symbol after the first `n`, taken from the
//!   Huffman code of the context in front of it.

mod container;

use std::collections::{BTreeMap, HashMap};

use crate::adaptive_code::{Alphabet, CodeTable};
use crate::adaptive_graph::AdaptiveGraph;
use crate::bitstream::{bit_width, index_width, BitReader, BitString};
use crate::error::{Error, Result};
use crate::tuple_huffman::huffman;

pub use container::{deserialize, serialize, FORMAT_VERSION, MAGIC};

/// Largest `m^n` (the length of `B` in bits) the codec will handle.
pub const MAX_CONTEXT_SPACE: u64 = 1 << 32;

/// What the decoder needs besides the payload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub order: usize,
    pub alphabet: Alphabet,
    pub original_len: u64,
}

impl Header {
    /// `m^n`, the number of possible contexts.
    pub fn context_space(&self) -> Result<u64> {
        context_space(self.alphabet.len(), self.order)
    }

    pub fn symbol_width(&self) -> u32 {
        index_width(self.alphabet.len() as u64)
    }

    /// Number of symbols stored verbatim in `A`.
    pub fn prefix_len(&self) -> u64 {
        self.original_len.min(self.order as u64)
    }
}

/// The five components plus `Max`, the field width of `D`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EahPayload {
    pub a: BitString,
    pub b: BitString,
    pub c: BitString,
    pub d: BitString,
    pub e: BitString,
    pub max_width: u8,
}

impl EahPayload {
    /// `[|A|, |B|, |C|, |D|, |E|]`
    pub fn component_lengths(&self) -> [u64; 5] {
        [
            self.a.len(),
            self.b.len(),
            self.c.len(),
            self.d.len(),
            self.e.len(),
        ]
    }

    /// `|A| + |B| + |C| + |D| + |E|`
    pub fn total_bits(&self) -> u64 {
        self.component_lengths().iter().sum()
    }

    fn concatenated(&self) -> BitString {
        let mut all = BitString::with_capacity(self.total_bits());
        for part in [&self.a, &self.b, &self.c, &self.d, &self.e] {
            all.append(part);
        }
        all
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Compressed {
    pub header: Header,
    pub payload: EahPayload,
}

impl Compressed {
    pub fn to_bytes(&self) -> Vec<u8> {
        serialize(&self.header, &self.payload)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        deserialize(bytes)
    }

    pub fn decode(&self) -> Result<Vec<u8>> {
        decode(&self.payload, &self.header)
    }
}

fn context_space(alphabet_len: usize, order: usize) -> Result<u64> {
    let too_large = Error::ContextSpace {
        alphabet: alphabet_len,
        order,
    };
    let exp = u32::try_from(order).map_err(|_| too_large.clone())?;
    match (alphabet_len as u64).checked_pow(exp) {
        Some(space) if space <= MAX_CONTEXT_SPACE => Ok(space),
        _ => Err(too_large),
    }
}

/// Runs the encoder on `data` with contexts of `order` symbols.
pub fn encode(data: &[u8], order: usize) -> Result<Compressed> {
    if data.is_empty() {
        return Err(Error::Argument("cannot encode an empty input"));
    }
    if order == 0 || order > u8::MAX as usize {
        return Err(Error::Argument("order must be between 1 and 255"));
    }
    let alphabet = Alphabet::from_data(data)?;
    let m = alphabet.len() as u64;
    let header = Header {
        order,
        alphabet,
        original_len: data.len() as u64,
    };
    let space = header.context_space()?;
    let symbol_width = header.symbol_width();
    let indices = header.alphabet.indices(data)?;

    let mut a = BitString::new();
    for &i in &indices[..header.prefix_len() as usize] {
        a.push_bits(i as u64, symbol_width);
    }

    let mut graph = AdaptiveGraph::build_with_alphabet(data, order, &header.alphabet)?;
    graph.assign_codewords();

    // context -> successor index -> frequency
    let mut successors: BTreeMap<u64, BTreeMap<u8, u64>> = BTreeMap::new();
    let mut codebook: HashMap<(u64, u8), BitString> = HashMap::new();
    for (edge, label) in graph.transitions() {
        let context = context_index(&header.alphabet, edge.from.key());
        let symbol = header
            .alphabet
            .index_of(edge.to.key()[0])
            .expect("symbol in alphabet") as u8;
        successors
            .entry(context)
            .or_default()
            .insert(symbol, label.frequency);
        codebook.insert((context, symbol), label.codeword.clone());
    }

    let mut b = BitString::zeros(space);
    for &context in successors.keys() {
        b.set(context, true);
    }

    let max_width = successors
        .values()
        .flat_map(|s| s.values())
        .map(|&f| bit_width(f))
        .max()
        .unwrap_or(0);
    let marked = successors.len() as u64;
    let mut pairs: Vec<(u8, u64, u64)> = successors
        .values()
        .zip(0u64..)
        .flat_map(|(follow, j)| follow.iter().map(move |(&i, &f)| (i, j, f)))
        .collect();
    pairs.sort_unstable();
    let mut c = BitString::zeros(m * marked);
    let mut d = BitString::with_capacity(max_width as u64 * pairs.len() as u64);
    for (i, j, frequency) in pairs {
        c.set(i as u64 * marked + j, true);
        d.push_bits(frequency, max_width);
    }

    let mut e = BitString::new();
    if indices.len() > order {
        let mut context = context_index_of(&indices[..order], m);
        for &symbol in &indices[order..] {
            e.append(&codebook[&(context, symbol)]);
            context = (context * m + symbol as u64) % space;
        }
    }

    Ok(Compressed {
        header,
        payload: EahPayload {
            a,
            b,
            c,
            d,
            e,
            max_width: max_width as u8,
        },
    })
}

fn context_index(alphabet: &Alphabet, key: &[u8]) -> u64 {
    key.iter().fold(0u64, |acc, &s| {
        acc * alphabet.len() as u64 + alphabet.index_of(s).expect("symbol in alphabet") as u64
    })
}

fn context_index_of(indices: &[u8], m: u64) -> u64 {
    indices.iter().fold(0u64, |acc, &i| acc * m + i as u64)
}

/// `LEAHn(w)`, the total length of the five components.
pub fn leahn_length(data: &[u8], order: usize) -> Result<u64> {
    Ok(encode(data, order)?.payload.total_bits())
}

/// Encodes and serializes in one step.
pub fn compress(data: &[u8], order: usize) -> Result<Vec<u8>> {
    Ok(encode(data, order)?.to_bytes())
}

/// Deserializes and decodes in one step.
pub fn decompress(bytes: &[u8]) -> Result<Vec<u8>> {
    deserialize(bytes)?.decode()
}

/// The per-context codes the encoder uses, as an explicit table of order
/// `n`. Only length-`n` contexts are present; the first `n` symbols travel
/// verbatim in `A` and never need a shorter context.
pub fn context_code_table(data: &[u8], order: usize) -> Result<CodeTable> {
    let alphabet = Alphabet::from_data(data)?;
    let mut graph = AdaptiveGraph::build_with_alphabet(data, order, &alphabet)?;
    graph.assign_codewords();
    let mut table = CodeTable::new(order, alphabet)?;
    for (edge, label) in graph.transitions() {
        table.insert(edge.from.key(), edge.to.key()[0], label.codeword.clone())?;
    }
    Ok(table)
}

const LEAF: u32 = 1 << 31;

/// Huffman code of one context, rebuilt from `C` and `D`.
#[derive(Debug)]
struct ContextCode {
    /// Successor symbol indices in code-construction order.
    symbols: Vec<u8>,
    frequencies: Vec<u64>,
    /// Binary trie; `0` is "no child" (the root is never a child) and
    /// `LEAF | k` is successor `k`.
    nodes: Vec<[u32; 2]>,
}

impl ContextCode {
    fn new(symbols: Vec<u8>, frequencies: Vec<u64>) -> Result<Self> {
        let code = huffman(&frequencies)?;
        let mut nodes = vec![[0u32; 2]];
        for (k, codeword) in code.codewords().enumerate() {
            let mut node = 0usize;
            let last = codeword.len() - 1;
            for (depth, bit) in codeword.iter().enumerate() {
                let slot = nodes[node][bit as usize];
                if depth as u64 == last {
                    nodes[node][bit as usize] = LEAF | k as u32;
                } else if slot == 0 {
                    nodes.push([0; 2]);
                    let fresh = (nodes.len() - 1) as u32;
                    nodes[node][bit as usize] = fresh;
                    node = fresh as usize;
                } else {
                    node = slot as usize;
                }
            }
        }
        Ok(Self {
            symbols,
            frequencies,
            nodes,
        })
    }

    /// Position (in `symbols`) of the next codeword in `reader`.
    fn read(&self, reader: &mut BitReader<'_>) -> Result<usize> {
        let mut node = 0usize;
        loop {
            let child = self.nodes[node][reader.read_bit()? as usize];
            if child == 0 {
                return Err(Error::CorruptStream(
                    "no codeword matches in the current context",
                ));
            }
            if child & LEAF != 0 {
                return Ok((child & !LEAF) as usize);
            }
            node = child as usize;
        }
    }
}

/// Every context's code, rebuilt from `B`, `C` and `D` alone.
#[derive(Debug)]
struct Model {
    codes: HashMap<u64, ContextCode>,
}

fn read_prefix(header: &Header, reader: &mut BitReader<'_>) -> Result<Vec<u8>> {
    let m = header.alphabet.len() as u64;
    let width = header.symbol_width();
    (0..header.prefix_len())
        .map(|_| {
            let i = reader.read_bits(width)?;
            if i >= m {
                return Err(Error::CorruptStream("symbol index outside the alphabet"));
            }
            Ok(i as u8)
        })
        .collect()
}

/// Reads `B`, then `C` and `D`. Returns `None` when the input is no
/// longer than the order, in which case `B` must be all zeros.
fn read_model(
    header: &Header,
    max_width: u8,
    b: &mut BitReader<'_>,
    c: &mut BitReader<'_>,
    d: &mut BitReader<'_>,
) -> Result<Option<Model>> {
    let space = header.context_space()?;
    let b_bits = b.read_bitstring(space)?;
    let marked: Vec<u64> = b_bits.ones().collect();
    let transitions = header.original_len.saturating_sub(header.order as u64);
    if transitions == 0 {
        if !marked.is_empty() || max_width != 0 {
            return Err(Error::CorruptHeader("input too short to have any context"));
        }
        return Ok(None);
    }
    if marked.is_empty() {
        return Err(Error::CorruptHeader("no context occurs"));
    }
    if max_width == 0 || max_width > 64 {
        return Err(Error::CorruptHeader(
            "frequency width must be between 1 and 64",
        ));
    }

    let m = header.alphabet.len();
    let mut follow: Vec<Vec<(u8, u64)>> = vec![Vec::new(); marked.len()];
    let mut total = 0u64;
    let mut widest = 0u32;
    let c_bits = c.read_bitstring(m as u64 * marked.len() as u64)?;
    for position in c_bits.ones() {
        let i = (position / marked.len() as u64) as u8;
        let j = (position % marked.len() as u64) as usize;
        let frequency = d.read_bits(max_width as u32)?;
        if frequency == 0 {
            return Err(Error::CorruptHeader("zero frequency for a marked pair"));
        }
        widest = widest.max(bit_width(frequency));
        total = total
            .checked_add(frequency)
            .ok_or(Error::CorruptHeader("frequency total overflows"))?;
        follow[j].push((i, frequency));
    }
    if total != transitions {
        return Err(Error::CorruptHeader(
            "frequencies do not add up to the input length",
        ));
    }
    if widest != max_width as u32 {
        return Err(Error::CorruptHeader("frequency width is not minimal"));
    }

    let mut codes = HashMap::with_capacity(marked.len());
    for (&context, mut successors) in marked.iter().zip(follow) {
        if successors.is_empty() {
            return Err(Error::CorruptHeader(
                "context marked in B has no successor in C",
            ));
        }
        if header.order == 1 {
            // the repeat (auxiliary) successor comes after the others
            let own = context as u8;
            successors.sort_by_key(|&(i, _)| (i == own, i));
        }
        let (symbols, frequencies) = successors.into_iter().unzip();
        codes.insert(context, ContextCode::new(symbols, frequencies)?);
    }
    Ok(Some(Model { codes }))
}

/// Decodes the `h - n` symbols of `E`, checking that every
/// (context, symbol) pair occurs exactly as often as `D` says.
fn read_symbols(
    header: &Header,
    model: &Model,
    prefix: Vec<u8>,
    e: &mut BitReader<'_>,
) -> Result<Vec<u8>> {
    let m = header.alphabet.len() as u64;
    let space = header.context_space()?;
    let remaining = header.original_len - prefix.len() as u64;
    if remaining > e.remaining() {
        return Err(Error::Truncated {
            needed: remaining,
            available: e.remaining(),
        });
    }
    let mut counts: HashMap<u64, Vec<u64>> = model
        .codes
        .iter()
        .map(|(&j, code)| (j, vec![0; code.symbols.len()]))
        .collect();
    let mut context = context_index_of(&prefix, m);
    let mut symbols = prefix;
    symbols.reserve(remaining as usize);
    for _ in 0..remaining {
        let code = model
            .codes
            .get(&context)
            .ok_or(Error::CorruptStream("current context never occurs in B"))?;
        let k = code.read(e)?;
        counts.get_mut(&context).expect("same keys")[k] += 1;
        let symbol = code.symbols[k];
        symbols.push(symbol);
        context = (context * m + symbol as u64) % space;
    }
    let consistent = model
        .codes
        .iter()
        .all(|(j, code)| counts[j] == code.frequencies);
    if !consistent {
        return Err(Error::CorruptStream(
            "codeword counts disagree with the frequency table",
        ));
    }
    Ok(symbols)
}

fn to_bytes(header: &Header, indices: &[u8]) -> Result<Vec<u8>> {
    let mut seen = vec![false; header.alphabet.len()];
    let bytes = indices
        .iter()
        .map(|&i| {
            seen[i as usize] = true;
            header.alphabet.symbol(i as usize).expect("index checked")
        })
        .collect();
    if seen.contains(&false) {
        return Err(Error::CorruptStream(
            "alphabet symbol never occurs in the output",
        ));
    }
    Ok(bytes)
}

fn expect_consumed(reader: &BitReader<'_>) -> Result<()> {
    if reader.is_at_end() {
        Ok(())
    } else {
        Err(Error::TrailingGarbage(reader.remaining()))
    }
}

/// Rebuilds the original bytes from a payload and its header. The
/// per-context codes come from `B`, `C`, `D` and `Max` only.
pub fn decode(payload: &EahPayload, header: &Header) -> Result<Vec<u8>> {
    if header.original_len == 0 {
        return Err(Error::CorruptHeader("original length is zero"));
    }
    let mut a = payload.a.reader();
    let mut b = payload.b.reader();
    let mut c = payload.c.reader();
    let mut d = payload.d.reader();
    let mut e = payload.e.reader();
    let prefix = read_prefix(header, &mut a)?;
    let model = read_model(header, payload.max_width, &mut b, &mut c, &mut d)?;
    let symbols = match model {
        Some(model) => read_symbols(header, &model, prefix, &mut e)?,
        None => prefix,
    };
    for reader in [&a, &b, &c, &d, &e] {
        expect_consumed(reader)?;
    }
    to_bytes(header, &symbols)
}
