//! Truth versus provability over one labeled formula corpus.
//!
//! The crate bundles the pieces needed to reproduce, end to end, how two
//! non-isomorphic explanations can both fit a dataset while disagreeing on a
//! specific input:
//!
//! - [`formula`]: syntax of `~`/`->` formulas, substitution, enumeration.
//! - [`matrix`]: finite logical matrices, tautology checking, classification.
//! - [`hilbert`]: the Hilbert system H_X, proof checking, theorem enumeration.
//! - [`dataset`]: generation and validation of the labeled T/C corpus.
//! - [`explain`]: explanations over finite universes, generalization and
//!   adversarial sets.
//! - [`turing`]: a small Turing machine model and the reductions showing that
//!   learning the desired explanation is unrecognizable.
//! - [`cli`]: the `hxlab` command-line front end.

pub mod cli;
pub mod dataset;
pub mod explain;
pub mod formula;
pub mod hilbert;
pub mod matrix;
pub mod turing;

pub use formula::{parse_formula, Formula, Substitution, Var};
pub use matrix::{matrix_t, matrix_tprime, LogicalMatrix};
