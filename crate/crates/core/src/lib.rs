//! The p-spectral radius of graphs: a solver for λ^(p)(G), closed-form bound
//! checkers, the symmetrization and vertex-removal procedures, and
//! exhaustive small-graph verification of Turán-type extremal results.
//!
//! ```
//! use pspec_core::{solve_lambda_p, turan_graph, SolveOptions};
//!
//! let g = turan_graph(2, 4).unwrap();
//! let res = solve_lambda_p(&g, 2.0, &SolveOptions::default()).unwrap();
//! assert!((res.lambda - 2.0).abs() < 1e-9);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod cliques;
pub mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod iso;
pub mod numfmt;
pub mod procedures;
pub mod pspectral;

pub use bounds::{BoundId, BoundReport};
pub use cliques::{clique_number, joint_size, CliqueList};
pub use error::{Error, Graph6Error, Result};
pub use graph::{kr_plus, turan_graph, Graph, VertexSet};
pub use harness::{GraphSource, HarnessOptions, TheoremId, VerificationReport};
pub use io::{parse_graph6, write_graph6};
pub use iso::{canonical_form, enumerate_graphs, is_isomorphic, subgraph_contains, CanonicalForm};
pub use procedures::{ExtractionParams, ExtractionTrace, LemmaOutcome, Symmetrization, Verdict};
pub use pspectral::{quadratic_form, solve_lambda_p, SolveOptions, SolveResult, SolveStatus, WeightVector};
