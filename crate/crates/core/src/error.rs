use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bit stream truncated: needed {needed} bits, {available} available")]
    Truncated { needed: u64, available: u64 },
    #[error("value {value} does not fit in {width} bits")]
    Width { value: u64, width: u32 },
    #[error("value {value} out of range for {digits} base-{base} digits")]
    Range {
        value: u64,
        base: u64,
        digits: usize,
    },
    #[error("tuple position {position} out of range for length {len}")]
    Position { position: usize, len: usize },
    #[error("invalid argument: {0}")]
    Argument(&'static str),
    #[error("alphabet: {0}")]
    Alphabet(&'static str),
    #[error("symbol {0:#04x} is not in the alphabet")]
    UnknownSymbol(u8),
    #[error("code table has no codeword for symbol {symbol:#04x} in context {context:?}")]
    TableIncomplete { symbol: u8, context: Vec<u8> },
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("corrupt stream: {0}")]
    CorruptStream(&'static str),
    #[error("{0} trailing bits after the last symbol")]
    TrailingGarbage(u64),
    #[error("corrupt header: {0}")]
    CorruptHeader(&'static str),
    #[error("bad magic {0:?}")]
    BadMagic([u8; 4]),
    #[error("unsupported container version {0}")]
    UnsupportedVersion(u8),
    #[error("context space of {alphabet}^{order} entries is too large")]
    ContextSpace { alphabet: usize, order: usize },
}
