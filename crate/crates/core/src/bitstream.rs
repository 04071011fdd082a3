//! Bit strings, a bit cursor, and the integer/bit conversions used by the
//! payload components.
//!
//! Bits are stored most-significant-first within each byte. A partially
//! filled final byte is padded with zero bits.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An owned, appendable string over `{0, 1}`. The empty string is `λ`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitString {
    bytes: Vec<u8>,
    len: u64,
}

impl BitString {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(bits: u64) -> Self {
        Self {
            bytes: Vec::with_capacity(bits.div_ceil(8) as usize),
            len: 0,
        }
    }

    /// `len` zero bits.
    pub fn zeros(len: u64) -> Self {
        Self {
            bytes: vec![0; len.div_ceil(8) as usize],
            len,
        }
    }

    /// Wraps packed bytes. Bits past `len` are cleared.
    pub fn from_bytes(mut bytes: Vec<u8>, len: u64) -> Result<Self> {
        let available = bytes.len() as u64 * 8;
        if len > available {
            return Err(Error::Truncated {
                needed: len,
                available,
            });
        }
        bytes.truncate(len.div_ceil(8) as usize);
        let mut out = Self { bytes, len };
        out.clear_tail();
        Ok(out)
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed bytes, final byte zero-padded.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    pub fn get(&self, index: u64) -> Option<bool> {
        if index >= self.len {
            return None;
        }
        Some(self.bytes[(index / 8) as usize] & (0x80 >> (index % 8)) != 0)
    }

    /// # Panics
    ///
    /// Panics if `index` is out of bounds.
    pub fn set(&mut self, index: u64, bit: bool) {
        assert!(index < self.len, "bit index {index} out of bounds");
        let mask = 0x80u8 >> (index % 8);
        let byte = &mut self.bytes[(index / 8) as usize];
        if bit {
            *byte |= mask;
        } else {
            *byte &= !mask;
        }
    }

    pub fn push(&mut self, bit: bool) {
        let offset = self.len % 8;
        if offset == 0 {
            self.bytes.push(0);
        }
        if bit {
            *self.bytes.last_mut().unwrap() |= 0x80 >> offset;
        }
        self.len += 1;
    }

    /// Appends the low `width` bits of `value`, most significant first.
    pub fn push_bits(&mut self, value: u64, width: u32) {
        debug_assert!(width <= 64);
        for shift in (0..width).rev() {
            self.push((value >> shift) & 1 == 1);
        }
    }

    /// Appends every bit of `other`.
    pub fn append(&mut self, other: &BitString) {
        if other.is_empty() {
            return;
        }
        let offset = (self.len % 8) as u32;
        if offset == 0 {
            self.bytes.extend_from_slice(&other.bytes);
        } else {
            for &byte in &other.bytes {
                *self.bytes.last_mut().unwrap() |= byte >> offset;
                self.bytes.push(byte << (8 - offset));
            }
        }
        self.len += other.len;
        self.bytes.truncate(self.len.div_ceil(8) as usize);
    }

    pub fn concat(&self, other: &BitString) -> BitString {
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.bytes[(i / 8) as usize] & (0x80 >> (i % 8)) != 0)
    }

    /// Indices of the set bits, ascending. Zero words are skipped whole.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            bytes: &self.bytes,
            next: 0,
            base: 0,
            word: 0,
        }
    }

    pub fn count_ones(&self) -> u64 {
        let (chunks, rest) = self.bytes.as_chunks::<8>();
        let words: u64 = chunks
            .iter()
            .map(|c| u64::from_ne_bytes(*c).count_ones() as u64)
            .sum();
        words + rest.iter().map(|b| b.count_ones() as u64).sum::<u64>()
    }

    pub fn starts_with(&self, prefix: &BitString) -> bool {
        prefix.len <= self.len && (0..prefix.len).all(|i| self.get(i) == prefix.get(i))
    }

    /// Reads the whole string as an unsigned binary number.
    pub fn to_u64(&self) -> Option<u64> {
        if self.len > 64 {
            let leading = self.len - 64;
            if (0..leading).any(|i| self.get(i) == Some(true)) {
                return None;
            }
        }
        Some(self.iter().fold(0u64, |acc, bit| (acc << 1) | bit as u64))
    }

    pub fn reader(&self) -> BitReader<'_> {
        BitReader::new(&self.bytes, self.len)
    }

    fn clear_tail(&mut self) {
        let offset = self.len % 8;
        if offset != 0 {
            *self.bytes.last_mut().unwrap() &= 0xffu8 << (8 - offset);
        }
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.iter() {
            f.write_str(if bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("BitString(λ)");
        }
        write!(f, "BitString({self})")
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = BitString::with_capacity(s.len() as u64);
        for c in s.chars() {
            match c {
                '0' => out.push(false),
                '1' => out.push(true),
                _ => return Err(Error::Argument("bit strings contain only '0' and '1'")),
            }
        }
        Ok(out)
    }
}

impl FromIterator<bool> for BitString {
    fn from_iter<I: IntoIterator<Item = bool>>(iter: I) -> Self {
        let mut out = BitString::new();
        for bit in iter {
            out.push(bit);
        }
        out
    }
}

/// Iterator over the set bits of a [`BitString`].
#[derive(Debug, Clone)]
pub struct Ones<'a> {
    bytes: &'a [u8],
    /// next byte to load
    next: usize,
    /// bit index of the most significant bit of `word`
    base: u64,
    word: u64,
}

impl Iterator for Ones<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.word == 0 {
            if self.next >= self.bytes.len() {
                return None;
            }
            let end = (self.next + 8).min(self.bytes.len());
            let mut buf = [0u8; 8];
            buf[..end - self.next].copy_from_slice(&self.bytes[self.next..end]);
            self.base = self.next as u64 * 8;
            self.word = u64::from_be_bytes(buf);
            self.next = end;
        }
        let lead = self.word.leading_zeros();
        self.word &= !(1u64 << (63 - lead));
        Some(self.base + lead as u64)
    }
}

/// Sequential reader over a packed bit sequence of known length.
#[derive(Debug, Clone)]
pub struct BitReader<'a> {
    bytes: &'a [u8],
    len: u64,
    pos: u64,
}

impl<'a> BitReader<'a> {
    /// `len` is clamped to the bits actually present in `bytes`.
    pub fn new(bytes: &'a [u8], len: u64) -> Self {
        Self {
            bytes,
            len: len.min(bytes.len() as u64 * 8),
            pos: 0,
        }
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    pub fn remaining(&self) -> u64 {
        self.len - self.pos
    }

    pub fn is_at_end(&self) -> bool {
        self.pos == self.len
    }

    fn ensure(&self, count: u64) -> Result<()> {
        if count > self.remaining() {
            return Err(Error::Truncated {
                needed: count,
                available: self.remaining(),
            });
        }
        Ok(())
    }

    pub fn read_bit(&mut self) -> Result<bool> {
        self.ensure(1)?;
        let bit = self.bytes[(self.pos / 8) as usize] & (0x80 >> (self.pos % 8)) != 0;
        self.pos += 1;
        Ok(bit)
    }

    /// Reads `width <= 64` bits as an unsigned number, most significant first.
    pub fn read_bits(&mut self, width: u32) -> Result<u64> {
        if width > 64 {
            return Err(Error::Argument(
                "cannot read more than 64 bits into an integer",
            ));
        }
        self.ensure(width as u64)?;
        let mut value = 0u64;
        for _ in 0..width {
            value = (value << 1) | self.read_bit()? as u64;
        }
        Ok(value)
    }

    pub fn read_bitstring(&mut self, count: u64) -> Result<BitString> {
        self.ensure(count)?;
        let offset = (self.pos % 8) as u32;
        let start = (self.pos / 8) as usize;
        let nbytes = count.div_ceil(8) as usize;
        let mut bytes = Vec::with_capacity(nbytes);
        if offset == 0 {
            bytes.extend_from_slice(&self.bytes[start..start + nbytes]);
        } else {
            for k in 0..nbytes {
                let hi = self.bytes[start + k] << offset;
                let lo = self
                    .bytes
                    .get(start + k + 1)
                    .map_or(0, |b| b >> (8 - offset));
                bytes.push(hi | lo);
            }
        }
        self.pos += count;
        BitString::from_bytes(bytes, count)
    }

    /// Consumes everything left.
    pub fn read_rest(&mut self) -> BitString {
        let rest = self.remaining();
        self.read_bitstring(rest)
            .expect("remaining bits are available")
    }
}

/// Fixed-length base-`m` digit tuple, most significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitTuple {
    digits: Vec<u64>,
    base: u64,
}

impl DigitTuple {
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }

    /// 1-based digit access, from the left.
    pub fn digit(&self, i: usize) -> Option<u64> {
        i.checked_sub(1).and_then(|i| self.digits.get(i).copied())
    }

    pub fn value(&self) -> u64 {
        self.digits.iter().fold(0, |acc, &d| acc * self.base + d)
    }
}

/// Minimal binary representation of `value`; `0` maps to `"0"`.
pub fn b10b2(value: u64) -> BitString {
    let mut out = BitString::new();
    out.push_bits(value, bit_width(value));
    out
}

/// `|b10b2(value)|`.
pub fn bit_width(value: u64) -> u32 {
    (64 - value.leading_zeros()).max(1)
}

/// `value` written as exactly `width` digits in `base`.
pub fn b10(value: u64, base: u64, width: usize) -> Result<DigitTuple> {
    let range_err = Error::Range {
        value,
        base,
        digits: width,
    };
    if base == 0 {
        return Err(range_err);
    }
    let mut digits = vec![0u64; width];
    let mut rest = value;
    for slot in digits.iter_mut().rev() {
        *slot = rest % base;
        rest /= base;
    }
    // base 1 only has the digit 0, so only the value 0 is representable
    if rest != 0 || (base == 1 && value != 0) {
        return Err(range_err);
    }
    Ok(DigitTuple { digits, base })
}

/// `b10b2(value)` left-padded with zeros to exactly `width` bits.
pub fn mb10b2(value: u64, width: u32) -> Result<BitString> {
    if bit_width(value) > width {
        return Err(Error::Width { value, width });
    }
    let mut out = BitString::with_capacity(width as u64);
    out.push_bits(value, width);
    Ok(out)
}

/// `⌈log₂ m⌉`, the fixed width of a symbol index; `0` for `m <= 1`.
pub fn index_width(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}
