//! Symbolic computation with the suspension of a closed, oriented, simply
//! connected 6-manifold, localized away from 2.
//!
//! Given the homological invariants of such a manifold M, this crate
//! computes a wedge decomposition of its suspension into spheres, Moore
//! spaces and a handful of small cones, evaluates reduced generalized
//! cohomology theories on M through that decomposition, and emits product
//! decompositions of gauge groups of principal bundles over M.
//!
//! The narrative guide lives in `book/`; its code snippets run as doc-tests
//! through the hidden modules at the bottom of this file.

pub mod abelian;
pub mod cli;
pub mod cohomology;
pub mod gauge;
pub mod hilton;
pub mod homotopy;
pub mod spaces;
pub mod splitter;

pub use abelian::{FgAbGroup, IntMatrix};

// Run every code block of the book as a doc-test, so the guide can never
// drift from the crate. One module per chapter keeps failures locatable.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/abelian-groups.md")]
    mod abelian_groups {}
    #[doc = include_str!("../../../book/src/space-expressions.md")]
    mod space_expressions {}
    #[doc = include_str!("../../../book/src/homotopy-tables.md")]
    mod homotopy_tables {}
    #[doc = include_str!("../../../book/src/hilton-milnor.md")]
    mod hilton_milnor {}
    #[doc = include_str!("../../../book/src/splitting.md")]
    mod splitting {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology_theories {}
    #[doc = include_str!("../../../book/src/gauge-groups.md")]
    mod gauge_groups {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli_guide {}
}
