use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph order {0} is outside 1..=62")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("invalid named family: {0}")]
    InvalidFamily(String),

    #[error("graph6: byte {byte:#04x} at position {position} is outside 63..=126")]
    Graph6BadChar { position: usize, byte: u8 },
    #[error("graph6: expected {expected} payload bytes, found {found}")]
    Graph6Truncated { expected: usize, found: usize },
    #[error("graph6: multi-byte size headers (n > 62) are not supported")]
    Graph6Unsupported,
    #[error("graph6: empty input")]
    Graph6Empty,
    #[error("edge list, line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("matrix dimensions disagree: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("eigensolver did not converge; best residual {residual:e}")]
    NoConvergence { residual: f64 },
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("spectrum failed certification: {0}")]
    Certification(String),

    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph needs at least {need} vertices, has {have}")]
    TooSmall { need: usize, have: usize },
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("quotient denominator is zero")]
    ZeroDenominator,
    #[error("vertex function has length {found}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid edge transfer: {0}")]
    InvalidTransfer(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("eigenspace has dimension {0}; choose a basis function explicitly")]
    DegenerateEigenspace(usize),
    #[error("invalid scan configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
}
