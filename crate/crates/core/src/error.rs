use thiserror::Error;

/// Errors raised while decoding graph6 text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("graph6: empty input")]
    Empty,
    #[error("graph6: malformed header byte {0:#04x}")]
    MalformedHeader(u8),
    #[error("graph6: long-form header (n > 62) is not supported")]
    UnsupportedOrder,
    #[error("graph6: body byte {byte:#04x} at offset {offset} is outside '?'..='~'")]
    InvalidBodyByte { offset: usize, byte: u8 },
    #[error("graph6: truncated body, expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("graph6: {0} trailing byte(s) after the edge body")]
    TrailingGarbage(usize),
    #[error("graph6: padding bits in the last body byte are not zero")]
    NonZeroPadding,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph order {0} exceeds the supported maximum of 62")]
    OrderTooLarge(usize),
    #[error("loops are not allowed (vertex {0})")]
    Loop(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vector length {found} does not match graph order {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("edge list, line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
