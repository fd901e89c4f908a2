use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("relation `{0}` is not homogeneous")]
    RelationNotHomogeneous(String),
    #[error("generator `{0}` has degree zero")]
    DegreeZeroGenerator(String),
    #[error("generator `{0}` does not match the presentation orientation")]
    OrientationViolation(String),
    #[error("generator `{name}`: parity tag `{tag}` contradicts degree {degree} in odd characteristic")]
    ParityMismatch { name: String, tag: String, degree: i32 },
    #[error("exterior generator `{0}` needs an explicit square-zero relation in characteristic 2")]
    MissingExteriorRelation(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("operand is not homogeneous")]
    InhomogeneousOperand,
    #[error("degree {degree} lies outside the computed window (bound {bound})")]
    OutsideWindow { degree: i32, bound: u32 },
    #[error("rational reconstruction failed: {0}")]
    ReconstructionFailed(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("algebra is not Artinian within degree bound {0}")]
    NotArtinian(u32),
    #[error("presentation is not in tensor form: {0}")]
    NotTensorForm(String),
    #[error("Koszul element {0} is not homogeneous of nonzero degree")]
    InhomogeneousElement(usize),
    #[error("defect is not divisible by (1+t)")]
    NotDivisible,
    #[error("bidegree violation: {0}")]
    BidegreeViolation(String),
    #[error("Leibniz extension inconsistent: {0}")]
    LeibnizInconsistent(String),
    #[error("window edge: {0}")]
    WindowEdgeEffect(String),
    #[error("presentations are over different fields ({0} vs {1})")]
    FieldMismatch(u32, u32),
    #[error("presentations have different orientations")]
    OrientationMismatch,
    #[error("Frobenius analysis needs positive characteristic")]
    CharacteristicZero,
    #[error("ledger is inconsistent: {0}")]
    InconsistentLedger(String),
    #[error("bar complex slice is infinite: generator `{0}` has degree zero")]
    InfiniteSlice(String),
    #[error("hypothesis unverified: {0}")]
    HypothesisUnverified(String),
    #[error("cache entry corrupt: {0}")]
    CacheCorrupt(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("corpus file: {0}")]
    Corpus(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
