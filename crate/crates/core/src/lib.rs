//! Geometric lattices from simple matroids, with minimal EL-labelings and the
//! descent machinery built on top of them.
//!
//! The pipeline: a [`matroid::Matroid`] (uniform, graphic, linear over a small
//! prime field, or an explicit flat family) yields its [`lattice::FlatsLattice`];
//! an [`labeling::AtomOrder`] induces the minimal edge labeling λ(u,v) = least
//! new atom, which is an EL-labeling for every order. Maximal chains form the
//! facet-ridge graph of the order complex and the directed graph G_lex
//! ([`chain_graph`]); descents straighten to reduced words in the symmetric
//! group ([`descent_path`], [`coxeter`]), giving the C(r,2) diameter bound and
//! its sharpness witness. [`descent_order`] builds the maximal chain descent
//! order and compares its Hasse diagram with G_lex.
//!
//! Everything is exact integer/bitset arithmetic; all enumeration orders are
//! canonical so equal inputs give byte-identical outputs.

pub mod atoms;
pub mod chain_graph;
pub mod coxeter;
pub mod descent_order;
pub mod descent_path;
pub mod labeling;
pub mod lattice;
pub mod matroid;
pub mod suite;

pub use atoms::{Atom, AtomSet, MAX_ATOMS};

/// Resource caps; exceeding one is an input error, not a panic.
#[derive(Clone, Copy, Debug)]
pub struct Caps {
    /// Maximum ground-set size n.
    pub ground: usize,
    /// Maximum number of flats enumerated per lattice.
    pub flats: usize,
    /// Maximum number of maximal chains enumerated per lattice.
    pub chains: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps { ground: 14, flats: 200_000, chains: 2_000_000 }
    }
}

/// Errors across the library: invalid input, cap overruns, and structural
/// violations detected by the verifiers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ground set size {n} exceeds cap {cap}")]
    GroundCap { n: usize, cap: usize },
    #[error("ground set must have at least one element")]
    EmptyGround,
    #[error("uniform rank must be at least 2, got {k}")]
    UniformRankTooSmall { k: usize },
    #[error("uniform rank {k} exceeds ground size {n}")]
    UniformRankTooLarge { k: usize, n: usize },
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("edge {index} ({u},{v}): vertex out of range 1..={vertices}")]
    VertexRange { index: usize, u: usize, v: usize, vertices: usize },
    #[error("edge {index} is a loop at vertex {v}")]
    LoopEdge { index: usize, v: usize },
    #[error("edges {e1} and {e2} are parallel (both join {u} and {v})")]
    ParallelEdges { e1: usize, e2: usize, u: usize, v: usize },
    #[error("{p} is not a prime at most 7")]
    BadPrime { p: u64 },
    #[error("vector {index} has dimension {got}, expected {expected}")]
    DimensionMismatch { index: usize, got: usize, expected: usize },
    #[error("vector {index} is zero mod {p} (a loop)")]
    ZeroVector { index: usize, p: u64 },
    #[error("vectors {i} and {j} are parallel mod {p}")]
    ParallelVectors { i: usize, j: usize, p: u64 },
    #[error("flat list must contain the empty set")]
    MissingEmptyFlat,
    #[error("flat list must contain the full ground set")]
    MissingFullFlat,
    #[error("flat {a} ∩ {b} = {meet} is not in the flat list")]
    IntersectionNotClosed { a: AtomSet, b: AtomSet, meet: AtomSet },
    #[error("flat {flat} contains atom {atom} outside the ground set of size {n}")]
    FlatOutsideGround { flat: AtomSet, atom: usize, n: usize },
    #[error("not a simple matroid: {0}")]
    NotSimple(String),
    #[error("rank axiom violated: {0}")]
    RankAxiom(String),
    #[error("flat family is not a geometric lattice: {0}")]
    NotGeometric(String),
    #[error("flat count exceeds cap {cap}")]
    FlatCap { cap: usize },
    #[error("maximal chain count exceeds cap {cap}")]
    ChainCap { cap: usize },
    #[error("interval [{lo}, {hi}] has more than {budget} saturated chains")]
    IntervalChainBudget { lo: AtomSet, hi: AtomSet, budget: usize },
    #[error("{lo} is not below {hi}")]
    NotAnInterval { lo: AtomSet, hi: AtomSet },
    #[error("{u} ⋖ {v} is not a cover relation")]
    NotACover { u: AtomSet, v: AtomSet },
    #[error("invalid maximal chain: {0}")]
    InvalidChain(String),
    #[error("invalid atom order: {0}")]
    InvalidOrder(String),
    #[error("rank {rank} is not a descent of the chain")]
    NotADescent { rank: usize },
    #[error("rank {rank} outside 1..={max}")]
    RankRange { rank: usize, max: usize },
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("facet-ridge graph is disconnected ({components} components, sizes {sizes:?})")]
    Disconnected { components: usize, sizes: Vec<usize> },
    #[error("descent order is not antisymmetric: chains {a} and {b} reach each other")]
    NotAntisymmetric { a: String, b: String },
    #[error("matroid spec: {0}")]
    Spec(String),
}

/// Binomial coefficient C(n,2), the diameter bound for a rank-n lattice.
pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}
