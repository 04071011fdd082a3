//! Container layout:
//!
//! ```text
//! offset  size  field
//! 0       4     magic "EAH1"
//! 4       1     version (1)
//! 5       1     order n
//! 6       1     alphabet size minus one
//! 7       m     alphabet, in index order (strictly ascending)
//! 7+m     8     original length h, little-endian
//! 15+m    1     Max, the width of each D entry
//! 16+m    ...   A ‖ B ‖ C ‖ D ‖ E, MSB-first, last byte zero-padded
//! ```
//!
//! The header fixes `|A|` and `|B|`; `|C|` follows from `B`, `|D|` from
//! `C` and `Max`, and `E` ends after its `h - n`-th codeword.

use super::{read_model, read_prefix, read_symbols, to_bytes, Compressed, EahPayload, Header};
use crate::adaptive_code::Alphabet;
use crate::bitstream::BitReader;
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"EAH1";
pub const FORMAT_VERSION: u8 = 1;

pub fn serialize(header: &Header, payload: &EahPayload) -> Vec<u8> {
    let m = header.alphabet.len();
    let mut out = Vec::with_capacity(16 + m + payload.total_bits().div_ceil(8) as usize);
    out.extend_from_slice(&MAGIC);
    out.push(FORMAT_VERSION);
    out.push(header.order as u8);
    out.push((m - 1) as u8);
    out.extend_from_slice(header.alphabet.symbols());
    out.extend_from_slice(&header.original_len.to_le_bytes());
    out.push(payload.max_width);
    out.extend_from_slice(payload.concatenated().as_bytes());
    out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let available = self.bytes.len() - self.pos;
        if n > available {
            return Err(Error::Truncated {
                needed: n as u64 * 8,
                available: available as u64 * 8,
            });
        }
        let out = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    fn byte(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
}

/// Parses a container. Every component is validated, including that `E`
/// decodes cleanly, since `E`'s length is only known once it is decoded.
/// A container is accepted exactly when [`Compressed::decode`] succeeds.
pub fn deserialize(bytes: &[u8]) -> Result<Compressed> {
    let mut cur = Cursor { bytes, pos: 0 };
    let magic: [u8; 4] = cur.take(4)?.try_into().expect("four bytes");
    if magic != MAGIC {
        return Err(Error::BadMagic(magic));
    }
    let version = cur.byte()?;
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let order = cur.byte()? as usize;
    if order == 0 {
        return Err(Error::CorruptHeader("order is zero"));
    }
    let m = cur.byte()? as usize + 1;
    let alphabet = Alphabet::new(cur.take(m)?.to_vec())?;
    if !alphabet.is_ascending() {
        return Err(Error::CorruptHeader("alphabet is not in ascending order"));
    }
    let original_len = u64::from_le_bytes(cur.take(8)?.try_into().expect("eight bytes"));
    if original_len == 0 {
        return Err(Error::CorruptHeader("original length is zero"));
    }
    let max_width = cur.byte()?;
    let header = Header {
        order,
        alphabet,
        original_len,
    };

    let body = &bytes[cur.pos..];
    let mut reader = BitReader::new(body, body.len() as u64 * 8);

    let a_len = header.prefix_len() * header.symbol_width() as u64;
    let a = reader.read_bitstring(a_len)?;
    let prefix = read_prefix(&header, &mut a.reader())?;

    let b = reader.read_bitstring(header.context_space()?)?;
    let c_len = header.alphabet.len() as u64 * b.count_ones();
    let c = reader.read_bitstring(c_len)?;
    let d_len = max_width as u64 * c.count_ones();
    let d = reader.read_bitstring(d_len)?;
    let model = read_model(
        &header,
        max_width,
        &mut b.reader(),
        &mut c.reader(),
        &mut d.reader(),
    )?;

    let start = reader.position();
    let symbols = match &model {
        Some(model) => read_symbols(&header, model, prefix, &mut reader)?,
        None => prefix,
    };
    to_bytes(&header, &symbols)?;
    let e_len = reader.position() - start;
    let mut rewind = BitReader::new(body, body.len() as u64 * 8);
    rewind.read_bitstring(start)?;
    let e = rewind.read_bitstring(e_len)?;

    let padding = reader.remaining();
    if padding >= 8 || reader.read_bits(padding as u32)? != 0 {
        return Err(Error::TrailingGarbage(padding));
    }

    Ok(Compressed {
        header,
        payload: EahPayload {
            a,
            b,
            c,
            d,
            e,
            max_width,
        },
    })
}
