use thiserror::Error;

/// Errors raised by the construction and verification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    CompositeP(u64),
    #[error("characteristic {0} is too large (must be below 2^31)")]
    PrimeTooLarge(u64),
    #[error("unsupported extension degree {0} (only 1 and 2 are supported)")]
    UnsupportedDegree(u32),
    #[error("GF({0}) has no primitive cube root of unity: 3 does not divide q - 1")]
    NoCubeRoot(u64),
    #[error("q = {p}^{r} is invalid: {q} mod 30 = {residue}, expected 1 or 19")]
    InvalidQ { p: u64, r: u32, q: u64, residue: u64 },
    #[error("coordinates do not belong to the field GF({0})")]
    MixedFields(u64),
    #[error("the zero vector does not represent a projective point or line")]
    ZeroVector,
    #[error("a line needs two distinct points")]
    EqualPoints,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("group closure exceeded {elements} elements or word length {word_len}")]
    ClosureOverflow { elements: usize, word_len: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("the orbit is not an arc (a line meets it in {0} points)")]
    NotAnArc(usize),
    #[error("bad pair index ({0}, {1}): need 1 <= i < j <= 89")]
    BadIndex(usize, usize),
    #[error("resultant vanishes{}", match pair { Some((i, j)) => format!(" for pair ({i}, {j})"), None => String::new() })]
    ZeroResultant { pair: Option<(usize, usize)> },
    #[error("symbolic point {0} does not specialize to the numeric orbit point")]
    WordReplayMismatch(usize),
    #[error("pair cache line {line}: {reason}")]
    CorruptCache { line: usize, reason: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
