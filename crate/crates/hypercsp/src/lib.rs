//! Hypergraph decompositions and constraint solving over exact rationals.
//!
//! This crate models constraint satisfaction problems with explicit
//! tuple-list constraints and the hypergraphs they induce, and implements
//! the structural machinery that makes such instances tractable:
//!
//! - exact fractional edge covers and fractional independent sets (a dual
//!   pair of linear programs solved over arbitrary-precision rationals),
//! - solution enumeration whose intermediate lists are bounded by
//!   `N^{ρ*}` where `ρ*` is the fractional edge cover number,
//! - tree, generalized hypertree, and fractional hypertree decompositions:
//!   validation, exact width computation at small scale, and a recursive
//!   balanced-separator construction,
//! - the robber-and-army pursuit game and its width,
//! - decomposition-driven solving with polynomial-delay enumeration and
//!   conjunctive-query projection.
//!
//! Every numeric quantity is an exact rational; there are no floating-point
//! tolerances anywhere. See the `examples/` directory for a runnable tour of
//! each capability, and the `hypercsp` binary for a JSON command-line
//! interface.

pub mod bitset;
pub mod csp;
pub mod decomp;
pub mod enumerate;
pub mod error;
pub mod game;
pub mod generators;
pub mod hypergraph;
pub mod json;
mod simplex;
pub mod solver;
pub mod weights;

pub use bitset::VertexSet;
pub use csp::structures_to_csp;
pub use csp::{Assignment, Constraint, CspInstance, Relation, RelationalStructure};
pub use decomp::{
    balanced_separator, decompose_by_separators, exact_width, validate_fractional, Decomposition,
    FractionalHypertreeDecomposition, GeneralizedHypertreeDecomposition, TreeDecomposition,
    ValidationReport, WidthMeasure,
};
pub use enumerate::{enumerate_by_cover, enumerate_with_stats, intermediate_list_sizes};
pub use error::{Error, Result};
pub use game::{army_width, blockable_family, general_wins, GameArena};
pub use generators::{
    generate_hn, generate_matching, generate_path, generate_random, generate_tight,
    generate_universal,
};
pub use hypergraph::Hypergraph;
pub use solver::{enumerate_all, project_solutions, solve, solve_with_decomposition};
pub use weights::{
    extend_weighting, format_rational, fractional_edge_cover, fractional_independent_set,
    integral_edge_cover, parse_rational, restrict_weighting, FractionalWeighting, Rational,
};
