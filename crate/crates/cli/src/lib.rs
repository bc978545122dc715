//! Command-line driver: text formats, report assembly and the built-in
//! corpus files.

pub mod args;
pub mod corpus_files;
pub mod format;
pub mod run;

pub use format::Document;
pub use run::{render, run, Outcome, Report};
