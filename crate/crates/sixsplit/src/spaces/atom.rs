use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::abelian::FgAbGroup;

/// Localization of a space expression. The rewrite rules and homotopy
/// tables that hold only after inverting 2 are gated on `AwayFromTwo`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Localization {
    Integral,
    AwayFromTwo,
}

/// The atom catalogue: the pointed cell complexes the engine knows by name.
///
/// `Moore { dim: n, order: m }` is the n-dimensional mod-m Moore space, the
/// mapping cone of the degree-m self-map of S^{n-1}, with one cell in each
/// of dimensions n-1 and n. Spheres are their own atoms; a sphere is never
/// encoded as a Moore space of infinite order.
///
/// The three exotic atoms are small cones that show up in the splitting:
/// `SigmaCp3` is the suspension of CP^3 (cells 3, 5, 7); `ConeAlpha1` is the
/// mapping cone of the order-3 class alpha_1: S^6 -> S^3 (cells 3, 7);
/// `ConeIotaAlpha1 { exp: r }` is the mapping cone of S^6 -> P^4(3^r)
/// obtained by following alpha_1 with the bottom-cell inclusion
/// (cells 3, 4, 7). `Opaque` carries complexes known only by their cells.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceAtom {
    Sphere(u32),
    Moore { dim: u32, order: BigUint },
    SigmaCp3,
    ConeAlpha1,
    ConeIotaAlpha1 { exp: u32 },
    Opaque { label: String, cells: Vec<u32> },
}

impl SpaceAtom {
    pub fn sphere(n: u32) -> Self {
        assert!(n >= 1, "spheres start at S^1");
        SpaceAtom::Sphere(n)
    }

    pub fn moore(dim: u32, order: impl Into<BigUint>) -> Self {
        let order = order.into();
        assert!(dim >= 2, "Moore spaces start in dimension 2");
        assert!(order >= BigUint::from(2u32), "Moore space order must be at least 2");
        SpaceAtom::Moore { dim, order }
    }

    pub fn cone_iota_alpha1(exp: u32) -> Self {
        assert!(exp >= 1);
        SpaceAtom::ConeIotaAlpha1 { exp }
    }

    pub fn opaque(label: impl Into<String>, cells: Vec<u32>) -> Self {
        assert!(!cells.is_empty(), "opaque atom needs at least one cell");
        let mut cells = cells;
        cells.sort_unstable();
        SpaceAtom::Opaque {
            label: label.into(),
            cells,
        }
    }

    /// Cell dimensions, sorted ascending.
    pub fn cells(&self) -> Vec<u32> {
        match self {
            SpaceAtom::Sphere(n) => vec![*n],
            SpaceAtom::Moore { dim, .. } => vec![dim - 1, *dim],
            SpaceAtom::SigmaCp3 => vec![3, 5, 7],
            SpaceAtom::ConeAlpha1 => vec![3, 7],
            SpaceAtom::ConeIotaAlpha1 { .. } => vec![3, 4, 7],
            SpaceAtom::Opaque { cells, .. } => cells.clone(),
        }
    }

    /// Top cell dimension.
    pub fn dimension(&self) -> u32 {
        *self.cells().last().unwrap()
    }

    /// Bottom nonzero reduced-homology degree minus one; for every
    /// catalogued atom the bottom cell carries homology.
    pub fn connectivity(&self) -> u32 {
        self.cells()[0] - 1
    }

    /// Reduced homology as (degree, group) pairs, plus a flag marking the
    /// opaque case where only the free-on-cells upper bound is known.
    pub fn reduced_homology(&self) -> (Vec<(u32, FgAbGroup)>, bool) {
        match self {
            SpaceAtom::Sphere(n) => (vec![(*n, FgAbGroup::free(1))], false),
            SpaceAtom::Moore { dim, order } => {
                (vec![(dim - 1, FgAbGroup::cyclic(order.clone()))], false)
            }
            SpaceAtom::SigmaCp3 => (
                vec![3, 5, 7]
                    .into_iter()
                    .map(|d| (d, FgAbGroup::free(1)))
                    .collect(),
                false,
            ),
            SpaceAtom::ConeAlpha1 => (
                vec![(3, FgAbGroup::free(1)), (7, FgAbGroup::free(1))],
                false,
            ),
            SpaceAtom::ConeIotaAlpha1 { exp } => (
                vec![
                    (3, FgAbGroup::cyclic_prime_power(3u32, *exp)),
                    (7, FgAbGroup::free(1)),
                ],
                false,
            ),
            SpaceAtom::Opaque { cells, .. } => (
                cells.iter().map(|&d| (d, FgAbGroup::free(1))).collect(),
                true,
            ),
        }
    }
}

impl fmt::Display for SpaceAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceAtom::Sphere(n) => write!(f, "S{n}"),
            SpaceAtom::Moore { dim, order } => write!(f, "P{dim}({order})"),
            SpaceAtom::SigmaCp3 => write!(f, "SCP3"),
            SpaceAtom::ConeAlpha1 => write!(f, "CA1"),
            SpaceAtom::ConeIotaAlpha1 { exp } => write!(f, "CIA({exp})"),
            SpaceAtom::Opaque { label, cells } => {
                let cells: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
                write!(f, "OPQ:{label}[{}]", cells.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_and_invariants() {
        assert_eq!(SpaceAtom::sphere(4).connectivity(), 3);
        assert_eq!(SpaceAtom::sphere(4).dimension(), 4);
        let p = SpaceAtom::moore(4, 9u32);
        assert_eq!(p.connectivity(), 2);
        assert_eq!(p.dimension(), 4);
        assert_eq!(SpaceAtom::SigmaCp3.cells(), vec![3, 5, 7]);
        assert_eq!(SpaceAtom::cone_iota_alpha1(2).cells(), vec![3, 4, 7]);
    }

    #[test]
    fn moore_homology() {
        let (h, flag) = SpaceAtom::moore(4, 9u32).reduced_homology();
        assert!(!flag);
        assert_eq!(h, vec![(3, FgAbGroup::cyclic(9u32))]);
    }

    #[test]
    fn opaque_homology_is_flagged() {
        let (h, flag) = SpaceAtom::opaque("C'", vec![2, 4, 6]).reduced_homology();
        assert!(flag);
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn display_atoms() {
        assert_eq!(SpaceAtom::sphere(3).to_string(), "S3");
        assert_eq!(SpaceAtom::moore(4, 9u32).to_string(), "P4(9)");
        assert_eq!(SpaceAtom::cone_iota_alpha1(2).to_string(), "CIA(2)");
        assert_eq!(
            SpaceAtom::opaque("C''", vec![3, 4, 4, 6]).to_string(),
            "OPQ:C''[3,4,4,6]"
        );
    }
}
