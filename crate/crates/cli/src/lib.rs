//! Command-line front end: complex documents, reports, and the commands of
//! the `toric-chow` binary.

pub mod document;
pub mod report;
pub mod run;

pub use document::{ComplexDocument, DocumentError, PiecewiseDocument};
pub use report::Report;
pub use run::{run, run_from, Cli, Outcome};
