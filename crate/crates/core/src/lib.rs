//! Exact laboratory for proper edge colorings whose vertex spectra are
//! intervals.
//!
//! - [`graph`]: graphs, `K_{m,n}` / cycle / path builders, induced subgraphs.
//! - [`coloring`]: edge colorings, spectra, interval and harmonic predicates.
//! - [`constructions`]: staircase, collapse sequence and block colorings.
//! - [`search`]: the exhaustive branch-and-bound oracle.
//! - [`analysis`]: game parameters, closed forms and the verification sweep.
//! - [`cli`]: the `spectra` command-line front end.

pub mod analysis;
pub mod cli;
pub mod coloring;
pub mod constructions;
pub mod graph;
pub mod search;

pub use coloring::{EdgeColoring, SpectrumSummary};
pub use graph::{Graph, Part};
pub use search::{SearchBudget, SearchOutcome, Status};
