use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which grammar rule a network file or complex literal violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxKind {
    /// `C` and `D` given on the same edge.
    MutuallyExclusive,
    UnknownDirective(String),
    UnknownParameter(String),
    DuplicateParameter(String),
    BadNumber(String),
    MissingArgument(&'static str),
    DuplicateSection(&'static str),
    MissingSection(&'static str),
    BadComplex(String),
}

impl std::fmt::Display for SyntaxKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SyntaxKind::MutuallyExclusive => write!(f, "C and D are mutually exclusive on one edge"),
            SyntaxKind::UnknownDirective(d) => write!(f, "unknown directive `{d}`"),
            SyntaxKind::UnknownParameter(p) => write!(f, "unknown edge parameter `{p}`"),
            SyntaxKind::DuplicateParameter(p) => write!(f, "edge parameter `{p}` given twice"),
            SyntaxKind::BadNumber(s) => write!(f, "invalid number `{s}`"),
            SyntaxKind::MissingArgument(what) => write!(f, "missing {what}"),
            SyntaxKind::DuplicateSection(s) => write!(f, "`{s}` given more than once"),
            SyntaxKind::MissingSection(s) => write!(f, "missing `{s}` line"),
            SyntaxKind::BadComplex(s) => write!(f, "invalid complex number `{s}`"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("empty vertex label")]
    EmptyLabel,
    #[error("edge endpoint or vertex `{0}` is not declared")]
    UnknownEndpoint(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("more than one edge between `{0}` and `{1}`")]
    ParallelEdge(String, String),
    #[error("edge `{0}`-`{1}` has R + L + D = 0")]
    ZeroEdgeParams(String, String),
    #[error("edge parameter {name} = {value} must be finite and nonnegative")]
    InvalidEdgeParam { name: &'static str, value: f64 },
    #[error("network needs at least two vertices")]
    TooFewVertices,
    #[error("network graph is not connected")]
    Disconnected,
    #[error("source `{0}` is also a ground vertex")]
    SourceInGround(String),
    #[error("ground set is empty")]
    EmptyGround,
    #[error("λ = 0 is not allowed")]
    LambdaZero,
    #[error("λ = {0} makes an edge impedance vanish")]
    ForbiddenLambda(crate::Complex),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("function is not defined on every vertex")]
    IncompleteFunction,
    #[error("ε must be positive, got {0}")]
    NonpositiveEpsilon(f64),
    #[error("Re λ must be positive")]
    NotInRightHalfplane,
    #[error("λ is outside Ω (needs Im λ ≠ 0 and |λ|² > S_D)")]
    OutsideOmega,
    #[error("λ is outside Ω* (needs Im λ ≠ 0 and |λ|² < S_D*)")]
    OutsideOmegaStar,
    #[error("Ω* is empty because S_D* = 0")]
    EmptyOmegaStar,
    #[error("bound requires L > 0 on every edge")]
    RequiresPositiveL,
    #[error("underlying graph has no vertices at distance {0} from the source")]
    GeneratorExhausted(usize),
    #[error("invalid sequence rule: {0}")]
    InvalidRule(String),
    #[error("invalid family parameter: {0}")]
    InvalidParam(String),
    #[error("vertical ladder edge is short-circuited (Lλ² + D = 0)")]
    VerticalEdgeShort,
    #[error("μ = 0 is not allowed")]
    MuZero,
    #[error("line {line}: {kind}")]
    Syntax { line: usize, kind: SyntaxKind },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// The underlying error with any location wrapper removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLine { source, .. } => source.root(),
            other => other,
        }
    }
}
