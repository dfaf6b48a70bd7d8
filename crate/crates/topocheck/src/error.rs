use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which closure law a candidate family violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureOp {
    Union,
    Intersection,
}

impl std::fmt::Display for ClosureOp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosureOp::Union => write!(f, "union"),
            ClosureOp::Intersection => write!(f, "intersection"),
        }
    }
}

#[derive(Error, Clone, Debug, PartialEq, Eq)]
pub enum Error {
    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("not a topology: {witness_a} and {witness_b} violate {op} closure")]
    NotATopology {
        witness_a: String,
        witness_b: String,
        op: ClosureOp,
    },

    #[error("size limit exceeded: {what} = {value} exceeds limit {limit}")]
    SizeLimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("operation requires a nonempty carrier")]
    EmptyCarrier,

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("duplicate label `{label}`{}", fmt_line(.line))]
    DuplicateLabel { label: String, line: Option<usize> },

    #[error("unknown label `{label}`{}", fmt_line(.line))]
    UnknownLabel { label: String, line: Option<usize> },

    #[error("g-open is only decided for singletons of the tail space")]
    GOpenUnsupported,
}

fn fmt_line(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!(" at line {l}"),
        None => String::new(),
    }
}
