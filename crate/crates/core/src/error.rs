use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Error)]
pub enum Error {
    #[error("partition {0} is not 2-regular")]
    Not2Regular(Partition),

    #[error("partition {partition} is not {p}-regular")]
    NotPRegular { partition: Partition, p: usize },

    #[error("index {index} out of range for partition with {len} parts")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("sequence {0:?} is not weakly decreasing")]
    NotAPartition(Vec<usize>),

    #[error("weight mismatch: |lambda| = {lambda}, |alpha| = {alpha}")]
    WeightMismatch { lambda: usize, alpha: usize },

    #[error("input outside the required partition family: {0}")]
    BadFamily(String),

    #[error("inputs do not match the lemma case shape: {0}")]
    CaseShapeMismatch(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("module of degree zero")]
    DegreeZero,

    #[error("isomorphism test requires irreducible inputs")]
    NotIrreducible,

    #[error("meataxe could not certify a verdict within {budget} random words (degree {degree})")]
    Uncertified { degree: usize, budget: usize },

    #[error("endomorphism ring of dimension {0} over GF(2) needs a field larger than GF(4)")]
    SplittingFieldTooLarge(usize),

    #[error("composition factor of dimension {dim} matches no library member")]
    UnmatchedFactor { dim: usize },

    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("bad composition {0:?}")]
    BadComposition(Vec<usize>),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("malformed representation dump: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
