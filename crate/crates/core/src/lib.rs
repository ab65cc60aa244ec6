//! Card-deck shuffles as uniform distributions over permutation sets, and
//! the hierarchy of what each family of physical shuffles can realize.
//!
//! * [`perm`]: permutations of a deck of up to 5 cards, cycle notation, ranks.
//! * [`set`]: permutation sets as rank bitmasks, set products.
//! * [`dist`]: exact distributions, shuffles, convolution.
//! * [`atoms`]: the atomic operations of each level and their classification.
//! * [`closure`]: realizability search, witnesses, separations.
//! * [`oracle`]: brute-force cross-check for the search.
//! * [`complexity`]: protocol complexity tuples.
//!
//! The crate is `no_std` and needs only `alloc`. The `parallel` feature
//! expands search frontiers with rayon.
#![no_std]

extern crate alloc;

pub mod atoms;
pub mod closure;
pub mod complexity;
pub mod dist;
mod error;
pub mod oracle;
pub mod perm;
pub mod set;

pub use atoms::{
    classify_atomic, generate_atoms, AtomCategory, AtomKind, AtomParams, AtomicOp, Level,
};
pub use closure::{
    closure, membership, min_level, realizable_counts, verify_separations, witness_replay,
    ClosureResult, CountsRow, Hierarchy, SearchConfig, SearchMode, SeparationCheck,
    SeparationReport, Witness,
};
pub use complexity::{
    classify_step, classify_trace, compare_tuples, tuple_of_categories, tuple_of_trace,
    AffineCount, ComplexityTuple, ProtocolRecord, ShuffleTrace, TupleOrder,
};
pub use dist::{convolve, Distribution, Prob, Shuffle};
pub use error::{Error, Result};
pub use oracle::{oracle_search, OracleResult};
pub use perm::{DeckSize, Parity, Permutation};
pub use set::{product_if_uniform, PermSet, SymmetricGroup};
