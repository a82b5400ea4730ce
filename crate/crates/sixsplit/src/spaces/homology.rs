use crate::abelian::{localize_away_2, tensor, tor, FgAbGroup};

use super::atom::Localization;
use super::expr::{SpaceExpr, Term};

/// Reduced homology of a space expression, one group per degree.
///
/// `additive_only` flags the presence of opaque atoms, for which only the
/// free-on-cells upper bound is known.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedHomology {
    groups: Vec<FgAbGroup>,
    pub additive_only: bool,
}

impl GradedHomology {
    fn new(mut groups: Vec<FgAbGroup>, additive_only: bool) -> Self {
        while groups.last().is_some_and(|g| g.is_zero()) {
            groups.pop();
        }
        GradedHomology {
            groups,
            additive_only,
        }
    }

    pub fn group(&self, degree: u32) -> FgAbGroup {
        self.groups
            .get(degree as usize)
            .cloned()
            .unwrap_or_default()
    }

    pub fn top_degree(&self) -> Option<u32> {
        if self.groups.is_empty() {
            None
        } else {
            Some(self.groups.len() as u32 - 1)
        }
    }

    pub fn nonzero(&self) -> Vec<(u32, FgAbGroup)> {
        self.groups
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(d, g)| (d as u32, g.clone()))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Degree-wise reduced homology, localized per the expression's tag.
///
/// This is computed structurally, without rewriting: atoms from the
/// catalogue, wedges as direct sums, suspension as a shift, and smash by
/// the Kunneth formula. It therefore gives an independent check that the
/// rewrite rules preserve homology.
pub fn homology_of(x: &SpaceExpr) -> GradedHomology {
    let (mut groups, additive_only) = hom_term(&x.term);
    if x.loc == Localization::AwayFromTwo {
        for g in &mut groups {
            *g = localize_away_2(g);
        }
    }
    GradedHomology::new(groups, additive_only)
}

fn hom_term(term: &Term) -> (Vec<FgAbGroup>, bool) {
    match term {
        Term::Atom(a) => {
            let (pairs, flag) = a.reduced_homology();
            let top = pairs.iter().map(|(d, _)| *d).max().unwrap_or(0) as usize;
            let mut groups = vec![FgAbGroup::zero(); top + 1];
            for (d, g) in pairs {
                groups[d as usize] = groups[d as usize].direct_sum(&g);
            }
            (groups, flag)
        }
        Term::Wedge(parts) => {
            let mut groups: Vec<FgAbGroup> = Vec::new();
            let mut flag = false;
            for p in parts {
                let (pg, pf) = hom_term(p);
                flag |= pf;
                if pg.len() > groups.len() {
                    groups.resize(pg.len(), FgAbGroup::zero());
                }
                for (d, g) in pg.into_iter().enumerate() {
                    groups[d] = groups[d].direct_sum(&g);
                }
            }
            (groups, flag)
        }
        Term::Suspension(x) => {
            let (xg, flag) = hom_term(x);
            let mut groups = vec![FgAbGroup::zero()];
            groups.extend(xg);
            (groups, flag)
        }
        Term::Smash(l, r) => {
            let (lg, lf) = hom_term(l);
            let (rg, rf) = hom_term(r);
            if lg.is_empty() || rg.is_empty() {
                return (Vec::new(), lf || rf);
            }
            let mut groups = vec![FgAbGroup::zero(); lg.len() + rg.len()];
            for (i, a) in lg.iter().enumerate() {
                for (j, b) in rg.iter().enumerate() {
                    let t = tensor(a, b);
                    if !t.is_zero() {
                        groups[i + j] = groups[i + j].direct_sum(&t);
                    }
                    let q = tor(a, b);
                    if !q.is_zero() {
                        groups[i + j + 1] = groups[i + j + 1].direct_sum(&q);
                    }
                }
            }
            (groups, lf || rf)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::atom::SpaceAtom;
    use crate::spaces::parse::parse;
    use crate::spaces::rewrite::{normalize, normalize_with, NormalizeOptions};

    fn away(text: &str) -> SpaceExpr {
        parse(text).unwrap().away_from_2()
    }

    #[test]
    fn cone_iota_alpha1_homology() {
        let h = homology_of(&SpaceExpr::atom(SpaceAtom::cone_iota_alpha1(2)));
        assert_eq!(
            h.nonzero(),
            vec![(3, FgAbGroup::cyclic(9u32)), (7, FgAbGroup::free(1))]
        );
    }

    #[test]
    fn sigma_cp3_homology() {
        let h = homology_of(&SpaceExpr::atom(SpaceAtom::SigmaCp3));
        assert_eq!(
            h.nonzero(),
            vec![
                (3, FgAbGroup::free(1)),
                (5, FgAbGroup::free(1)),
                (7, FgAbGroup::free(1))
            ]
        );
    }

    #[test]
    fn localization_kills_even_torsion() {
        let x = away("P4(12)");
        assert_eq!(
            homology_of(&x).nonzero(),
            vec![(3, FgAbGroup::cyclic(3u32))]
        );
    }

    #[test]
    fn opaque_flagged_upper_bound() {
        let h = homology_of(&parse("OPQ:C'[2,4,6]").unwrap());
        assert!(h.additive_only);
        assert_eq!(h.group(4), FgAbGroup::free(1));
    }

    /// Every rewrite rule preserves reduced homology: the left side computed
    /// by the Kunneth route equals the right side from the catalogue.
    #[test]
    fn rules_preserve_homology() {
        let same = |text: &str| {
            let lhs = away(text);
            let rhs = normalize(&lhs).unwrap();
            assert_eq!(
                homology_of(&lhs),
                homology_of(&rhs),
                "homology changed by rewrite of {text}"
            );
        };
        for n in 1..5u32 {
            same(&format!("Sus(S{n})"));
            for m in [2u32, 9, 27, 25] {
                same(&format!("Sus(P{}({m}))", n + 2));
                same(&format!("S{n} ^ P{}({m})", n + 2));
            }
            same(&format!("S{n} ^ S{}", n + 1));
        }
        for (a, b) in [(9u32, 9u32), (9, 27), (3, 3), (25, 5), (7, 49)] {
            same(&format!("Sus(P3({a}) ^ P3({b}))"));
            same(&format!("Sus(P3({a}) ^ P4({b}))"));
        }
        for (a, b) in [(9u32, 25u32), (3, 5), (27, 7)] {
            same(&format!("Sus(P3({a}) ^ P3({b}))"));
        }
        // The optional suspended-CP^3 expansion.
        let lhs = away("SCP3");
        let rhs = normalize_with(
            &lhs,
            &NormalizeOptions {
                expand_sigma_cp3: true,
            },
        )
        .unwrap();
        assert_eq!(homology_of(&lhs), homology_of(&rhs));
    }

    #[test]
    fn suspension_shifts_connectivity_and_dimension() {
        for text in ["S3", "P4(9)", "SCP3", "S2 ^ P3(5)", "S3 v P5(7)"] {
            let x = away(text);
            let sx = SpaceExpr::suspension(x.clone());
            assert_eq!(sx.dimension(), x.dimension().map(|d| d + 1));
            assert_eq!(sx.connectivity(), x.connectivity().map(|c| c + 1));
        }
    }
}
