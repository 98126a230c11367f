use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cone is not pointed: it contains the line spanned by {line:?}")]
    ContainsLine { line: Vec<String> },

    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("vector {index} is zero")]
    ZeroVector { index: usize },
    #[error("vector {index} is not primitive")]
    NonPrimitive { index: usize },
    #[error("covectors {first} and {second} are parallel")]
    Parallel { first: usize, second: usize },
    #[error("covectors do not generate the lattice (invariant factors {invariants:?})")]
    LatticeNotGenerated { invariants: Vec<String> },

    #[error("arrangement is not simplicial: chamber {chamber} has {rays} extreme rays in rank {rank}")]
    NotSimplicial { chamber: usize, rays: usize, rank: usize },
    #[error("arrangement is not crystallographic: root {root} has coordinates {coordinates:?} in chamber {chamber}")]
    NotCrystallographic { chamber: usize, root: usize, coordinates: Vec<String> },

    #[error("unknown catalog name `{0}`")]
    UnknownCatalog(String),
    #[error("{what} {index} out of range (limit {limit})")]
    IndexOutOfRange { what: &'static str, index: usize, limit: usize },

    #[error("ray index {index} out of range for {rays} rays")]
    BadRayIndex { index: usize, rays: usize },
    #[error("duplicate ray {index}")]
    DuplicateRay { index: usize },
    #[error("cone {cone:?} is not simplicial")]
    NonSimplicialCone { cone: Vec<usize> },
    #[error("cones {first:?} and {second:?} do not meet in a common face")]
    Overlap { first: Vec<usize>, second: Vec<usize> },

    #[error("fan is not smooth: cone {cone:?} is not unimodular")]
    NotSmooth { cone: Vec<usize> },
    #[error("fan is not complete")]
    NotComplete,
    #[error("fan is not centrally symmetric")]
    NotCentrallySymmetric,
    #[error("fan is not strongly symmetric: the span of {face:?} cuts through cone {cone:?}")]
    NotStronglySymmetric { face: Vec<usize>, cone: Vec<usize> },
    #[error("{0} is not a cone of the fan")]
    ConeNotInFan(String),
    #[error("subspace is not spanned by a cone of the fan")]
    NotSpannedByCone,
    #[error("subspace is not a flat of the arrangement")]
    NotAFlat,
    #[error("hyperplane {0} is already in the arrangement")]
    AlreadyPresent(String),

    #[error("unsupported rank {rank}: {reason}")]
    UnsupportedRank { rank: usize, reason: &'static str },
    #[error("weight sequence does not close up")]
    DoesNotClose,
    #[error("weight sequence does not wind once around the origin")]
    OrientationFailure,
    #[error("degenerate surface: {0}")]
    Degenerate(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}
