//! Authoritative lookup of homotopy groups of catalogue atoms, localized
//! away from 2, in the degree range the engine needs.
//!
//! The table is data, not computation: every entry carries the mathematical
//! fact it rests on, and queries outside the table fail loudly. The engine
//! never invents a homotopy group.

use std::fmt;

use thiserror::Error;

use crate::abelian::{as_prime_power, FgAbGroup};
use crate::spaces::{Localization, SpaceAtom};

/// A group together with labels for a minimal generating set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DecoratedGroup {
    pub group: FgAbGroup,
    pub generators: Vec<String>,
    pub citation: String,
}

impl DecoratedGroup {
    fn new(group: FgAbGroup, generators: &[&str], citation: &str) -> Self {
        DecoratedGroup {
            group,
            generators: generators.iter().map(|s| s.to_string()).collect(),
            citation: citation.to_string(),
        }
    }

    fn zero(citation: &str) -> Self {
        Self::new(FgAbGroup::zero(), &[], citation)
    }
}

impl fmt::Display for DecoratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.group)?;
        if !self.generators.is_empty() {
            write!(f, " <{}>", self.generators.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PiError {
    #[error("pi_{degree}({atom}) is not catalogued")]
    NotCatalogued { atom: String, degree: u32 },
    #[error("the homotopy table is only valid away from 2")]
    UnsupportedLocalization,
}

/// Homotopy group of a catalogue atom away from 2, with generator labels.
///
/// Supported entries: groups at or below the Hurewicz degree for all atoms;
/// pi_{n+1}(S^n) for n >= 3 and pi_6 of S^3, S^4, S^5; pi_n and pi_{n+1} of
/// mod-p^r Moore spaces in the range where they vanish; and pi_6(P^4(p^r)).
/// Anything else is an explicit error.
pub fn pi(atom: &SpaceAtom, degree: u32, loc: Localization) -> Result<DecoratedGroup, PiError> {
    if loc != Localization::AwayFromTwo {
        return Err(PiError::UnsupportedLocalization);
    }
    let not_catalogued = || PiError::NotCatalogued {
        atom: atom.to_string(),
        degree,
    };

    // Below the connectivity of the underlying cell structure every group
    // vanishes; this is sound even for opaque atoms, which have no cells
    // below their bottom one.
    if degree <= atom.connectivity() {
        return Ok(DecoratedGroup::zero(
            "trivial below the connectivity of the cell structure",
        ));
    }

    match atom {
        SpaceAtom::Sphere(k) => {
            let k = *k;
            if degree == k {
                Ok(DecoratedGroup::new(
                    FgAbGroup::free(1),
                    &["iota"],
                    "pi_n(S^n) = Z, generated by the identity",
                ))
            } else if degree == k + 1 && k >= 3 {
                Ok(DecoratedGroup::zero(
                    "pi_{n+1}(S^n) has order 2 for n >= 3, so it vanishes away from 2",
                ))
            } else if (k, degree) == (3, 6) {
                Ok(DecoratedGroup::new(
                    FgAbGroup::cyclic_prime_power(3u32, 1),
                    &["alpha1"],
                    "the odd component of pi_6(S^3) is Z/3, generated by the order-3 class alpha_1",
                ))
            } else if (k, degree) == (4, 6) {
                Ok(DecoratedGroup::zero(
                    "pi_6(S^4) is 2-primary, so it vanishes away from 2",
                ))
            } else {
                Err(not_catalogued())
            }
        }
        SpaceAtom::Moore { dim, order } => {
            let k = *dim;
            let Some((p, r)) = as_prime_power(order) else {
                return Err(not_catalogued());
            };
            if p == 2u32.into() {
                return Err(not_catalogued());
            }
            if degree == k - 1 {
                Ok(DecoratedGroup::new(
                    FgAbGroup::cyclic_prime_power(p, r),
                    &["jmath"],
                    "the Hurewicz isomorphism in the bottom degree; generated by the bottom-cell inclusion",
                ))
            } else if degree == k && k >= 4 {
                Ok(DecoratedGroup::zero(
                    "pi_n of an n-dimensional mod-p^r Moore space vanishes for n >= 4 (odd p)",
                ))
            } else if degree == k + 1 && k >= 3 {
                Ok(DecoratedGroup::zero(
                    "pi_n of an (n-1)-dimensional mod-p^r Moore space vanishes for n >= 4 (odd p)",
                ))
            } else if k == 4 && degree == 6 {
                if p == 3u32.into() {
                    Ok(DecoratedGroup::new(
                        FgAbGroup::cyclic_prime_power(3u32, r)
                            .direct_sum(&FgAbGroup::cyclic_prime_power(3u32, 1)),
                        &["wh(1,1)\u{2218}phi", "iota\u{2218}alpha1"],
                        "pi_6(P^4(3^r)) = Z/3^r + Z/3: the Whitehead product of the identity composed with phi, plus the bottom-cell inclusion composed with alpha_1",
                    ))
                } else {
                    Ok(DecoratedGroup::new(
                        FgAbGroup::cyclic_prime_power(p, r),
                        &["wh(1,1)\u{2218}phi"],
                        "pi_6(P^4(p^r)) = Z/p^r for p > 3, generated by the Whitehead product of the identity composed with phi",
                    ))
                }
            } else {
                Err(not_catalogued())
            }
        }
        _ => Err(not_catalogued()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const AWAY: Localization = Localization::AwayFromTwo;

    #[test]
    fn pi6_of_p4_27() {
        let g = pi(&SpaceAtom::moore(4, 27u32), 6, AWAY).unwrap();
        assert_eq!(
            g.group,
            FgAbGroup::cyclic(27u32).direct_sum(&FgAbGroup::cyclic(3u32))
        );
        assert_eq!(g.generators, vec!["wh(1,1)\u{2218}phi", "iota\u{2218}alpha1"]);
    }

    #[test]
    fn pi6_of_p4_25() {
        let g = pi(&SpaceAtom::moore(4, 25u32), 6, AWAY).unwrap();
        assert_eq!(g.group, FgAbGroup::cyclic(25u32));
        assert_eq!(g.generators, vec!["wh(1,1)\u{2218}phi"]);
    }

    #[test]
    fn moore_vanishing_range() {
        // pi_5(P^5(25)) = 0
        let g = pi(&SpaceAtom::moore(5, 25u32), 5, AWAY).unwrap();
        assert!(g.group.is_zero());
        // pi_6(P^5(p^r)) = 0
        let g = pi(&SpaceAtom::moore(5, 9u32), 6, AWAY).unwrap();
        assert!(g.group.is_zero());
        // pi_6(P^6(p^r)) = 0
        let g = pi(&SpaceAtom::moore(6, 7u32), 6, AWAY).unwrap();
        assert!(g.group.is_zero());
    }

    #[test]
    fn moore_hurewicz_degree() {
        let g = pi(&SpaceAtom::moore(7, 9u32), 6, AWAY).unwrap();
        assert_eq!(g.group, FgAbGroup::cyclic(9u32));
        assert_eq!(g.generators, vec!["jmath"]);
    }

    #[test]
    fn spheres() {
        let g = pi(&SpaceAtom::sphere(3), 6, AWAY).unwrap();
        assert_eq!(g.group, FgAbGroup::cyclic(3u32));
        assert_eq!(g.generators, vec!["alpha1"]);
        assert!(pi(&SpaceAtom::sphere(4), 6, AWAY).unwrap().group.is_zero());
        assert!(pi(&SpaceAtom::sphere(5), 6, AWAY).unwrap().group.is_zero());
        assert_eq!(pi(&SpaceAtom::sphere(6), 6, AWAY).unwrap().group, FgAbGroup::free(1));
        assert!(pi(&SpaceAtom::sphere(7), 6, AWAY).unwrap().group.is_zero());
    }

    #[test]
    fn out_of_table_errors() {
        assert!(matches!(
            pi(&SpaceAtom::sphere(3), 5, AWAY),
            Err(PiError::NotCatalogued { .. })
        ));
        assert!(matches!(
            pi(&SpaceAtom::moore(4, 6u32), 6, AWAY),
            Err(PiError::NotCatalogued { .. })
        ));
        assert!(matches!(
            pi(&SpaceAtom::moore(4, 8u32), 6, AWAY),
            Err(PiError::NotCatalogued { .. })
        ));
        assert!(matches!(
            pi(&SpaceAtom::SigmaCp3, 6, AWAY),
            Err(PiError::NotCatalogued { .. })
        ));
        assert!(matches!(
            pi(&SpaceAtom::sphere(3), 6, Localization::Integral),
            Err(PiError::UnsupportedLocalization)
        ));
    }

    #[test]
    fn table_is_2_torsion_free_with_minimal_generators() {
        let queries: Vec<(SpaceAtom, u32)> = vec![
            (SpaceAtom::sphere(3), 3),
            (SpaceAtom::sphere(3), 4),
            (SpaceAtom::sphere(3), 6),
            (SpaceAtom::sphere(4), 6),
            (SpaceAtom::sphere(5), 6),
            (SpaceAtom::sphere(6), 6),
            (SpaceAtom::moore(4, 3u32), 6),
            (SpaceAtom::moore(4, 27u32), 6),
            (SpaceAtom::moore(4, 49u32), 6),
            (SpaceAtom::moore(5, 9u32), 6),
            (SpaceAtom::moore(6, 9u32), 6),
            (SpaceAtom::moore(7, 27u32), 6),
            (SpaceAtom::moore(4, 5u32), 3),
            (SpaceAtom::cone_iota_alpha1(2), 2),
        ];
        for (atom, n) in queries {
            let g = pi(&atom, n, AWAY).unwrap();
            assert!(
                g.group.torsion().iter().all(|t| t.prime != 2u32.into()),
                "2-torsion in pi_{n}({atom})"
            );
            assert_eq!(
                g.generators.len(),
                g.group.min_generators(),
                "generator count off for pi_{n}({atom})"
            );
        }
    }
}
