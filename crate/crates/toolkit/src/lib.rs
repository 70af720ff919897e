//! Structure documents, Hasse diagrams and the `hyperkit` command line.

pub mod cli;
pub mod format;
pub mod hasse;

pub use format::{parse_structure, serialize_structure, FormatError};
pub use hasse::emit_hasse;
