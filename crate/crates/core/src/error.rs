use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square or does not match the label count: {0}")]
    NonSquare(String),
    #[error("negative entry at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },
    #[error("nonzero diagonal entry at index {0}")]
    NonzeroDiagonal(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("ground set must contain at least one element")]
    EmptyGroundSet,
    #[error("index {index} out of range for ground set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("ground sets do not match")]
    GroundSetMismatch,
    #[error("vector lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("distance is not a directed metric: {0}")]
    NotAMetric(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("point violates p(s^c) + p(t^r) >= mu(s,t) at ({0}, {1})")]
    NotInPolyhedron(usize, usize),
    #[error("point is not in P_mu")]
    NotInP,
    #[error("direction has no negative component and the step is unbounded")]
    UnboundedDirection,
    #[error("point is not in the tight span")]
    NotInTightSpan,
    #[error("point is not in Q_mu")]
    NotInQ,
    #[error("point set is not balanced (points {0} and {1})")]
    NotBalanced(usize, usize),
    #[error("balanced extension interval is empty")]
    EmptyIntersection,
    #[error("ground set of size {size} exceeds the enumeration cap {cap}")]
    GroundSetTooLarge { size: usize, cap: usize },
    #[error("complex has dimension {0}, expected at most 1")]
    DimensionTooHigh(usize),
    #[error("tropical rank {0} exceeds 2")]
    RankTooHigh(usize),
    #[error("metric is not a directed tree metric")]
    NotDirectedTreeMetric,
    #[error("realization has non-singleton subtrees")]
    NonSingletonSubtrees,
    #[error("subtree for element {0:?} is empty")]
    EmptySubtree(String),
    #[error("subtree for element {0:?} is not connected")]
    DisconnectedSubtree(String),
    #[error("unknown tree vertex {0}")]
    UnknownVertex(usize),
    #[error("not an oriented tree: {0}")]
    NotATree(String),
    #[error("edge length must be positive (edge {0})")]
    NonPositiveLength(usize),
    #[error("malformed linear program: {0}")]
    MalformedLP(String),
    #[error("network has {size} vertices, cap is {cap}")]
    NetworkTooLarge { size: usize, cap: usize },
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("not an extension: {0}")]
    NotAnExtension(String),
    #[error("network is not Eulerian at vertex {0:?}")]
    NotEulerian(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("input parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Stable machine-readable name, used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonSquare(_) => "NonSquare",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::NonzeroDiagonal(_) => "NonzeroDiagonal",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::EmptyGroundSet => "EmptyGroundSet",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::GroundSetMismatch => "GroundSetMismatch",
            Error::LengthMismatch(..) => "LengthMismatch",
            Error::NotAMetric(_) => "NotAMetric",
            Error::UnknownElement(_) => "UnknownElement",
            Error::NotInPolyhedron(..) => "NotInPolyhedron",
            Error::NotInP => "NotInP",
            Error::UnboundedDirection => "UnboundedDirection",
            Error::NotInTightSpan => "NotInTightSpan",
            Error::NotInQ => "NotInQ",
            Error::NotBalanced(..) => "NotBalanced",
            Error::EmptyIntersection => "EmptyIntersection",
            Error::GroundSetTooLarge { .. } => "GroundSetTooLarge",
            Error::DimensionTooHigh(_) => "DimensionTooHigh",
            Error::RankTooHigh(_) => "RankTooHigh",
            Error::NotDirectedTreeMetric => "NotDirectedTreeMetric",
            Error::NonSingletonSubtrees => "NonSingletonSubtrees",
            Error::EmptySubtree(_) => "EmptySubtree",
            Error::DisconnectedSubtree(_) => "DisconnectedSubtree",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::NotATree(_) => "NotATree",
            Error::NonPositiveLength(_) => "NonPositiveLength",
            Error::MalformedLP(_) => "MalformedLP",
            Error::NetworkTooLarge { .. } => "NetworkTooLarge",
            Error::InvalidNetwork(_) => "InvalidNetwork",
            Error::NotAnExtension(_) => "NotAnExtension",
            Error::NotEulerian(_) => "NotEulerian",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "InputParseError",
            Error::Internal(_) => "Internal",
        }
    }
}
