//! Lossless compression with adaptive codes of order `n`.
//!
//! The EAHn encoder models its input as an adaptive graph whose base
//! vertices are the length-`n` contexts of the input. Every context gets
//! its own Huffman code over the symbols that follow it, so the codeword
//! for a symbol depends on the `n` symbols before it. The compressed form
//! is five bit strings:
//!
//! * `A` - the first `n` symbols, verbatim;
//! * `B` - one bit per possible context, set when the context occurs;
//! * `C` - for every occurring context, which symbols follow it;
//! * `D` - the fixed-width frequency of every (context, symbol) pair in `C`;
//! * `E` - the codeword stream.
//!
//! `B`, `C` and `D` are enough for a decoder to rebuild every per-context
//! code, which is what makes the scheme invertible.
//!
//! ```
//! use eah_core::eah_codec;
//!
//! let data = b"abccdbbab";
//! let compressed = eah_codec::encode(data, 1).unwrap();
//! assert_eq!(compressed.payload.e.to_string(), "0101001100");
//! let bytes = compressed.to_bytes();
//! assert_eq!(eah_codec::decompress(&bytes).unwrap(), data);
//! ```

pub mod adaptive_code;
pub mod adaptive_graph;
pub mod baselines;
pub mod bitstream;
pub mod eah_codec;
mod error;
pub mod tuple_huffman;

pub use adaptive_code::{Alphabet, CodeTable};
pub use adaptive_graph::AdaptiveGraph;
pub use bitstream::{BitReader, BitString};
pub use eah_codec::{Compressed, EahPayload, Header};
pub use error::{Error, Result};
