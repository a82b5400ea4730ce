//! Exact arithmetic over finitely generated abelian groups and integer
//! matrices: Smith normal form, chain-complex homology, universal-coefficient
//! duals, localization away from 2, and unimodular vector reduction.

mod complex;
mod group;
mod matrix;
mod snf;

pub use complex::{ChainComplex, ChainComplexError};
pub use group::{
    as_prime_power, factor, is_prime, localize_away_2, tensor, tensor_tor_mod, tor, uct_duals,
    FgAbGroup, TorsionSummand,
};
pub use matrix::IntMatrix;
pub use snf::{rank, smith_normal_form, unimodular_reduce, SmithNormalForm};
