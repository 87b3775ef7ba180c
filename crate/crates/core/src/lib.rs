//! Odd cycle transversal (graph bipartization) toolkit: ingestion and
//! sanitization, reduction rules, heuristics, iterative compression, a
//! vertex-cover route, ILP export, synthetic generators, and an experiment
//! harness.

pub mod bench;
pub mod error;
pub mod generators;
pub mod graph;
pub mod heuristics;
pub mod ic;
pub mod ilp;
pub mod io;
pub mod oracle;
pub mod reductions;
pub mod solution;
pub mod vc;

pub use error::{OctError, Result};
pub use graph::{degeneracy_ordering, is_bipartite, verify_oct, Graph, Side, TwoColoring};
pub use solution::{Deadline, OctSolution, SolverReport, Source, Termination};
