//! File formats, JSON records and the command line for `cardshuffle-core`.

pub mod cli;
pub mod corpus;
pub mod records;
pub mod trace;

pub use cli::{run, Cli, CliError};
pub use corpus::{bundled_corpus, load_corpus, serialize_corpus, CorpusError};
pub use trace::{parse_trace, serialize_trace, TraceError};
