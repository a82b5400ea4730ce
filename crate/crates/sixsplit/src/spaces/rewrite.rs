use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use thiserror::Error;

use crate::abelian::as_prime_power;

use super::atom::{Localization, SpaceAtom};
use super::expr::{SpaceExpr, Term};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("no normal form: no rewrite rule applies to `{stuck}`")]
    NoNormalForm { stuck: String },
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NormalizeOptions {
    /// Rewrite the suspended CP^3 atom into CA1 v S5. Valid away from 2;
    /// both sides have the same reduced homology and the same mod-3 power
    /// operation bookkeeping. Off by default to keep outputs textually
    /// close to the splitting statements.
    pub expand_sigma_cp3: bool,
}

/// Rewrite an expression to its canonical form: a flat wedge of catalogue
/// atoms, lexicographically sorted. Rules that hold only away from 2 fire
/// only when the expression carries that tag.
pub fn normalize(x: &SpaceExpr) -> Result<SpaceExpr, NormalizeError> {
    normalize_with(x, &NormalizeOptions::default())
}

pub fn normalize_with(
    x: &SpaceExpr,
    opts: &NormalizeOptions,
) -> Result<SpaceExpr, NormalizeError> {
    normalize_inner(x, opts, &mut Order::fixed())
}

/// Normalization with the processing order of independent redexes shuffled
/// by a seed; the rules have no overlapping patterns, so every order must
/// reach the same canonical form. Exercised by the confluence tests.
#[doc(hidden)]
pub fn normalize_shuffled(
    x: &SpaceExpr,
    opts: &NormalizeOptions,
    seed: u64,
) -> Result<SpaceExpr, NormalizeError> {
    normalize_inner(x, opts, &mut Order::seeded(seed))
}

fn normalize_inner(
    x: &SpaceExpr,
    opts: &NormalizeOptions,
    order: &mut Order,
) -> Result<SpaceExpr, NormalizeError> {
    let partial = norm(&x.term, x.loc, opts, order);
    if let Some(stuck) = partial.residuals.first() {
        return Err(NormalizeError::NoNormalForm {
            stuck: stuck.to_string(),
        });
    }
    Ok(SpaceExpr::canonical_wedge(partial.atoms, x.loc))
}

/// A partially rewritten wedge: resolved atoms plus irreducible components.
struct Partial {
    atoms: Vec<SpaceAtom>,
    residuals: Vec<Term>,
}

impl Partial {
    fn empty() -> Self {
        Partial {
            atoms: Vec::new(),
            residuals: Vec::new(),
        }
    }

    fn is_point(&self) -> bool {
        self.atoms.is_empty() && self.residuals.is_empty()
    }

    fn components(self) -> Vec<Component> {
        let mut out: Vec<Component> = self.atoms.into_iter().map(Component::Atom).collect();
        out.extend(self.residuals.into_iter().map(Component::Residual));
        out
    }
}

enum Component {
    Atom(SpaceAtom),
    Residual(Term),
}

impl Component {
    fn term(&self) -> Term {
        match self {
            Component::Atom(a) => Term::Atom(a.clone()),
            Component::Residual(t) => t.clone(),
        }
    }
}

fn norm(term: &Term, loc: Localization, opts: &NormalizeOptions, order: &mut Order) -> Partial {
    match term {
        Term::Atom(a) => {
            if opts.expand_sigma_cp3
                && loc == Localization::AwayFromTwo
                && *a == SpaceAtom::SigmaCp3
            {
                Partial {
                    atoms: vec![SpaceAtom::ConeAlpha1, SpaceAtom::sphere(5)],
                    residuals: Vec::new(),
                }
            } else {
                Partial {
                    atoms: vec![a.clone()],
                    residuals: Vec::new(),
                }
            }
        }
        Term::Wedge(parts) => {
            let mut indices: Vec<usize> = (0..parts.len()).collect();
            order.permute(&mut indices);
            let mut out = Partial::empty();
            for i in indices {
                let p = norm(&parts[i], loc, opts, order);
                out.atoms.extend(p.atoms);
                out.residuals.extend(p.residuals);
            }
            out
        }
        Term::Suspension(x) => {
            let inner = norm(x, loc, opts, order);
            let mut out = Partial::empty();
            for a in inner.atoms {
                match suspend_atom(&a) {
                    Some(sa) => out.atoms.push(sa),
                    None => out
                        .residuals
                        .push(Term::Suspension(Box::new(Term::Atom(a)))),
                }
            }
            for r in inner.residuals {
                match suspended_smash_rule(&r, loc) {
                    Some(atoms) => out.atoms.extend(atoms),
                    None => out.residuals.push(Term::Suspension(Box::new(r))),
                }
            }
            out
        }
        Term::Smash(l, r) => {
            let lp = norm(l, loc, opts, order);
            let rp = norm(r, loc, opts, order);
            if lp.is_point() || rp.is_point() {
                return Partial::empty();
            }
            let lc = lp.components();
            let rc = rp.components();
            let mut pairs: Vec<(usize, usize)> = (0..lc.len())
                .flat_map(|i| (0..rc.len()).map(move |j| (i, j)))
                .collect();
            order.permute(&mut pairs);
            let mut out = Partial::empty();
            for (i, j) in pairs {
                match (&lc[i], &rc[j]) {
                    (Component::Atom(a), Component::Atom(b)) => match smash_atoms(a, b) {
                        Some(atom) => out.atoms.push(atom),
                        None => out
                            .residuals
                            .push(Term::Smash(Box::new(Term::Atom(a.clone())), Box::new(Term::Atom(b.clone())))),
                    },
                    (a, b) => out
                        .residuals
                        .push(Term::Smash(Box::new(a.term()), Box::new(b.term()))),
                }
            }
            out
        }
    }
}

fn suspend_atom(a: &SpaceAtom) -> Option<SpaceAtom> {
    match a {
        SpaceAtom::Sphere(n) => Some(SpaceAtom::Sphere(n + 1)),
        SpaceAtom::Moore { dim, order } => Some(SpaceAtom::Moore {
            dim: dim + 1,
            order: order.clone(),
        }),
        _ => None,
    }
}

/// Smash of two atoms with a sphere factor: iterated suspension.
fn smash_atoms(a: &SpaceAtom, b: &SpaceAtom) -> Option<SpaceAtom> {
    match (a, b) {
        (SpaceAtom::Sphere(x), SpaceAtom::Sphere(y)) => Some(SpaceAtom::Sphere(x + y)),
        (SpaceAtom::Sphere(x), SpaceAtom::Moore { dim, order })
        | (SpaceAtom::Moore { dim, order }, SpaceAtom::Sphere(x)) => Some(SpaceAtom::Moore {
            dim: dim + x,
            order: order.clone(),
        }),
        _ => None,
    }
}

/// The rules for a suspended smash of two Moore atoms: coprime orders
/// collapse to a point; equal odd primes give, away from 2,
/// Sus(P^n(p^r) ^ P^l(p^s)) = P^{n+l}(p^t) v P^{n+l+1}(p^t), t = min(r, s).
fn suspended_smash_rule(residual: &Term, loc: Localization) -> Option<Vec<SpaceAtom>> {
    let Term::Smash(l, r) = residual else {
        return None;
    };
    let (Term::Atom(SpaceAtom::Moore { dim: n, order: a }), Term::Atom(SpaceAtom::Moore { dim: m, order: b })) =
        (l.as_ref(), r.as_ref())
    else {
        return None;
    };
    if a.gcd(b).is_one() {
        return Some(Vec::new());
    }
    if loc == Localization::AwayFromTwo {
        if let (Some((p, r1)), Some((q, r2))) = (as_prime_power(a), as_prime_power(b)) {
            if p == q && p != BigUint::from(2u32) {
                let t = r1.min(r2);
                return Some(vec![
                    SpaceAtom::moore(n + m, p.pow(t)),
                    SpaceAtom::moore(n + m + 1, p.pow(t)),
                ]);
            }
        }
    }
    None
}

/// Deterministic order scrambler; `fixed` is the identity.
struct Order {
    state: u64,
    active: bool,
}

impl Order {
    fn fixed() -> Self {
        Order {
            state: 0,
            active: false,
        }
    }

    fn seeded(seed: u64) -> Self {
        Order {
            state: seed.wrapping_mul(2862933555777941757).wrapping_add(3037000493),
            active: true,
        }
    }

    fn next(&mut self, bound: usize) -> usize {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        ((self.state >> 33) as usize) % bound.max(1)
    }

    fn permute<T>(&mut self, v: &mut [T]) {
        if !self.active {
            return;
        }
        for i in (1..v.len()).rev() {
            let j = self.next(i + 1);
            v.swap(i, j);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::parse::parse;

    fn away(text: &str) -> SpaceExpr {
        parse(text).unwrap().away_from_2()
    }

    #[test]
    fn suspension_of_atoms() {
        let e = normalize(&parse("Sus(S2 v P3(9))").unwrap()).unwrap();
        assert_eq!(e, SpaceExpr::wedge(vec![SpaceExpr::sphere(3), SpaceExpr::moore(4, 9u32)]));
    }

    #[test]
    fn moore_smash_rule() {
        // Sus(P3(p^r) ^ P3(p^r)) = P6(p^r) v P7(p^r), away from 2.
        for (pr, p, r) in [(9u32, 3u32, 2u32), (25, 5, 2), (7, 7, 1)] {
            let e = normalize(&away(&format!("Sus(P3({pr}) ^ P3({pr}))"))).unwrap();
            let expect = SpaceExpr::canonical_wedge(
                vec![
                    SpaceAtom::moore(6, p.pow(r)),
                    SpaceAtom::moore(7, p.pow(r)),
                ],
                Localization::AwayFromTwo,
            );
            assert_eq!(e, expect);
        }
        // Mixed exponents take the minimum.
        let e = normalize(&away("Sus(P3(27) ^ P4(9))")).unwrap();
        let expect = SpaceExpr::canonical_wedge(
            vec![SpaceAtom::moore(7, 9u32), SpaceAtom::moore(8, 9u32)],
            Localization::AwayFromTwo,
        );
        assert_eq!(e, expect);
    }

    #[test]
    fn moore_smash_needs_localization() {
        let integral = parse("Sus(P3(9) ^ P3(9))").unwrap();
        assert!(matches!(
            normalize(&integral),
            Err(NormalizeError::NoNormalForm { .. })
        ));
    }

    #[test]
    fn coprime_smash_collapses() {
        let e = normalize(&parse("Sus(P3(9) ^ P3(25))").unwrap()).unwrap();
        assert!(e.is_point());
        // ... and stays collapsed inside a larger wedge.
        let e = normalize(&parse("S3 v Sus(P3(4) ^ P3(27))").unwrap()).unwrap();
        assert_eq!(e, SpaceExpr::sphere(3));
    }

    #[test]
    fn sphere_smash_is_iterated_suspension() {
        let e = normalize(&parse("S2 ^ P4(7)").unwrap()).unwrap();
        assert_eq!(e, SpaceExpr::moore(6, 7u32));
        let e = normalize(&parse("S2 ^ S3 ^ S1").unwrap()).unwrap();
        assert_eq!(e, SpaceExpr::sphere(6));
    }

    #[test]
    fn smash_distributes_over_wedge() {
        let e = normalize(&parse("(S2 v S3) ^ S4").unwrap()).unwrap();
        assert_eq!(
            e,
            SpaceExpr::wedge(vec![SpaceExpr::sphere(6), SpaceExpr::sphere(7)])
        );
    }

    #[test]
    fn sigma_cp3_flag() {
        let opts = NormalizeOptions {
            expand_sigma_cp3: true,
        };
        let e = normalize_with(&away("SCP3"), &opts).unwrap();
        let expect = SpaceExpr::canonical_wedge(
            vec![SpaceAtom::ConeAlpha1, SpaceAtom::sphere(5)],
            Localization::AwayFromTwo,
        );
        assert_eq!(e, expect);
        // Without the flag (or integrally) the atom is already canonical.
        assert_eq!(
            normalize(&away("SCP3")).unwrap(),
            away("SCP3")
        );
        assert_eq!(
            normalize_with(&parse("SCP3").unwrap(), &opts).unwrap(),
            parse("SCP3").unwrap()
        );
    }

    #[test]
    fn stuck_subterm_is_named() {
        let err = normalize(&away("CA1 ^ S3")).unwrap_err();
        assert_eq!(
            err,
            NormalizeError::NoNormalForm {
                stuck: "CA1 ^ S3".to_string()
            }
        );
        let err = normalize(&away("Sus(CA1)")).unwrap_err();
        assert_eq!(
            err,
            NormalizeError::NoNormalForm {
                stuck: "Sus(CA1)".to_string()
            }
        );
    }

    #[test]
    fn idempotent_on_corpus() {
        for text in [
            "Sus(S2 v P3(9))",
            "Sus(P3(27) ^ P3(9)) v S4 v S4",
            "S2 ^ P4(5) v Sus(Sus(S1))",
            "pt v S3",
        ] {
            let once = normalize(&away(text)).unwrap();
            let twice = normalize(&once).unwrap();
            assert_eq!(once, twice, "normalize not idempotent on {text}");
        }
    }

    #[test]
    fn confluent_under_shuffled_orders() {
        let corpus = [
            "Sus((S2 v P3(9) v P3(27)) ^ (P3(9) v S3))",
            "Sus(P3(9) ^ P3(25)) v Sus(S2 ^ S2) v S5 v P4(3)",
            "(S2 v S3) ^ (S2 v P4(7))",
            "Sus(Sus((S1 v S2) ^ P3(5)))",
        ];
        let opts = NormalizeOptions::default();
        for text in corpus {
            let base = normalize_with(&away(text), &opts).unwrap();
            for seed in 0..40u64 {
                let shuffled = normalize_shuffled(&away(text), &opts, seed).unwrap();
                assert_eq!(base, shuffled, "order {seed} diverged on {text}");
            }
        }
    }
}
