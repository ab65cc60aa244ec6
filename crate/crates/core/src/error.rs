use alloc::string::String;

/// Errors produced by the permutation algebra and the realizability search.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported deck size {0} (expected 1..=5)")]
    UnsupportedDeckSize(usize),

    #[error("closure search supports decks of at most 4 cards, got {0}")]
    ClosureDeckTooLarge(u8),

    #[error("deck size mismatch: {0} vs {1}")]
    DeckSizeMismatch(u8, u8),

    #[error("unsupported level {0} (expected 0..=4)")]
    UnsupportedLevel(u8),

    #[error("one-line form is not a bijection on 1..={0}")]
    NotABijection(u8),

    #[error("rank {rank} out of range for a deck of {n} cards")]
    RankOutOfRange { n: u8, rank: usize },

    #[error("position {pos} out of range 1..={n}")]
    PositionOutOfRange { n: u8, pos: usize },

    #[error("position {0} appears more than once")]
    RepeatedPosition(usize),

    #[error("syntax error at offset {offset}: {reason}")]
    Syntax { offset: usize, reason: String },

    #[error("a shuffle needs a nonempty permutation set")]
    EmptySet,

    #[error("exact probability arithmetic overflowed")]
    Overflow,

    #[error("distribution search needs a finite max_depth and max_states")]
    UnboundedSearch,

    #[error("witness replay did not produce a uniform distribution")]
    NonUniformReplay,

    #[error("count expression is not affine in n: {0}")]
    Nonlinear(String),

    #[error("count component {slot} is negative ({value}) at n = {n}")]
    NegativeCount { slot: usize, n: i64, value: i64 },

    #[error("count expression has a negative coefficient of n")]
    NegativeCoefficient,
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn syntax(offset: usize, reason: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        reason: reason.into(),
    }
}
