//! File formats and command-line front end for `boxarith-core`.

pub mod cli;
pub mod journal;
pub mod storefile;

pub use cli::run;
