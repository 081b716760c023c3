use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("label {label} does not have the arity expected by rule {rule}")]
    ArityMismatch { rule: String, label: String },
    #[error("invalid rule: {0}")]
    InvalidRule(String),
    #[error("illegal move at step {0}")]
    IllegalMove(usize),
    #[error("malformed slicing: {0}")]
    MalformedSlicing(String),
    #[error("invalid parallelogram polyomino: {0}")]
    InvalidShape(String),
    #[error("slicing is not a member of family {0}")]
    NotInFamily(String),
    #[error("family {0} has no slicing growth")]
    UnsupportedFamily(String),
    #[error("block is not horizontal")]
    NotHorizontal,
    #[error("block does not belong to the slicing")]
    UnknownBlock,
    #[error("invalid lattice-path triple: {0}")]
    InvalidTriple(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation is not in the class S")]
    NotInS,
    #[error("blocks do not partition the {0}x{1} rectangle")]
    NotAPartition(u32, u32),
    #[error("floorplan is not packed")]
    NotPacked,
    #[error("floorplan is not a Schröder floorplan")]
    NotSchroeder,
    #[error("polynomial is not divisible by (1 - {0})")]
    NonDivisible(char),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("kernel root refinement failed at order {0}")]
    RootRefinementFailed(usize),
    #[error("parse error: {0}")]
    Parse(String),
}
