use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("invalid vertex label `{0}`")]
    InvalidLabel(String),

    #[error("loop at vertex `{0}`")]
    Loop(String),

    #[error("{what}: {value} exceeds the limit of {limit}")]
    LimitExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{{{}}} is not a face of the complex", .0.join(","))]
    NotAFace(Vec<String>),

    #[error("dimension {k} is outside -1..={dim}")]
    DimensionOutOfRange { k: isize, dim: isize },

    #[error("vertex sets overlap on `{0}`")]
    Overlap(String),

    #[error("facets are not an antichain: {0}")]
    NotAntichain(String),

    #[error("the void complex has no homology")]
    VoidComplex,

    #[error("facet order is not a permutation of the facets: {0}")]
    NotAPermutation(String),

    #[error("invalid shelling certificate: {0}")]
    InvalidCertificate(String),

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("graph is not chordal")]
    NotChordal,

    #[error("graph is not a tree")]
    NotATree,

    #[error("bipartition sides differ in size: {left} != {right}")]
    UnequalSides { left: usize, right: usize },

    #[error("graph has no perfect matching between its sides")]
    NoPerfectMatching,

    #[error("pairing is not a perfect matching: {0}")]
    InvalidPairing(String),

    #[error("the ideal is the {0} ideal")]
    DegenerateIdeal(&'static str),

    #[error("degree {d} is outside 0..={n}")]
    DegreeOutOfRange { d: usize, n: usize },

    #[error("clutter has an empty edge")]
    EmptyEdge,

    #[error("{0} is not a prime <= 2^31")]
    InvalidField(u64),
}
