use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("not a permutation of 1..={n}: {word:?}")]
    InvalidPermutation { n: usize, word: Vec<usize> },

    #[error("rank must be at least 1")]
    ZeroRank,

    #[error("generator index {index} out of range for rank {n}")]
    GeneratorOutOfRange { index: usize, n: usize },

    #[error("vertex {vertex} out of range for rank {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("braid with {factors} normal-form factors lies outside [1, w_+^2]")]
    NotInInterval { factors: usize },

    #[error("permutations share the right descent {descent}")]
    CommonRightDescent { descent: usize },

    #[error("Ext degree {0} is not one of 0, 1, 2")]
    InvalidExtDegree(usize),

    #[error("module has projective dimension {0}; a two-term projective presentation is required")]
    ProjectiveDimensionTooLarge(usize),

    #[error("slot {slot} cannot be mutated (valid slots are 1..{n})")]
    ImmutableSlot { slot: usize, n: usize },

    #[error("tilting object carries no bimodule data; build it along a mutation path")]
    MissingBimoduleData,

    #[error("homological verification refused for n = {n} above the limit {limit}; force it explicitly")]
    HomologyGated { n: usize, limit: usize },

    #[error("isomorphism test undecided after exhausting the search")]
    IsoUndecided,

    #[error("expected a one-dimensional Ext^1, found dimension {0}")]
    ExtensionDimension(usize),

    #[error("component count mismatch: expected {expected}, got {got}")]
    ComponentCount { expected: usize, got: usize },

    #[error("construction check failed: {0}")]
    Construction(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
