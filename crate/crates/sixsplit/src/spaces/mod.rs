//! Formal space expressions: the atom catalogue, wedge/suspension/smash
//! constructors, a small grammar, localization-aware rewriting to a
//! canonical wedge of atoms, and structural homology.

mod atom;
mod expr;
mod homology;
mod parse;
mod rewrite;

pub use atom::{Localization, SpaceAtom};
pub use expr::{SpaceExpr, Term};
pub use homology::{homology_of, GradedHomology};
pub use parse::{parse, ParseError};
pub use rewrite::{normalize, normalize_shuffled, normalize_with, NormalizeError, NormalizeOptions};
