//! Exact rational arithmetic, sparse polynomials, rational functions and
//! residues.

pub mod expr;
pub mod fraction;
pub mod gcd;
pub mod poly;
pub mod rational;
pub mod residue;

pub use expr::{normalize, normalize_with, reduce_pair, same_rational_function, set_default_gcd_threshold, NormalizeOptions, RatFunExpr};
pub use fraction::{canonicalize, Factor, FactoredFraction};
pub use gcd::gcd;
pub use poly::{Monomial, SparsePoly, MAX_VARS};
pub use rational::{format_rational, frac, int, parse_rational, ExactRational};
pub use residue::{
    iterated_residue, iterated_residue_fraction, iterated_residue_generic, residue_at_zero, residue_fraction,
    ResidueOrder,
};
