use std::fmt;

use super::atom::{Localization, SpaceAtom};

/// The shape of a formal pointed space: atoms under wedge, suspension and
/// smash. An empty wedge is the point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Atom(SpaceAtom),
    Wedge(Vec<Term>),
    Suspension(Box<Term>),
    Smash(Box<Term>, Box<Term>),
}

/// A formal space expression together with its localization tag.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SpaceExpr {
    pub term: Term,
    pub loc: Localization,
}

impl SpaceExpr {
    pub fn new(term: Term, loc: Localization) -> Self {
        SpaceExpr { term, loc }
    }

    pub fn atom(a: SpaceAtom) -> Self {
        SpaceExpr::new(Term::Atom(a), Localization::Integral)
    }

    pub fn sphere(n: u32) -> Self {
        Self::atom(SpaceAtom::sphere(n))
    }

    pub fn moore(dim: u32, order: impl Into<num_bigint::BigUint>) -> Self {
        Self::atom(SpaceAtom::moore(dim, order))
    }

    pub fn point() -> Self {
        SpaceExpr::new(Term::Wedge(Vec::new()), Localization::Integral)
    }

    /// Wedge sum; nested wedges are flattened (the operation is
    /// associative) and a wedge of one space is that space.
    pub fn wedge(parts: Vec<SpaceExpr>) -> Self {
        let loc = parts
            .iter()
            .map(|p| p.loc)
            .max()
            .unwrap_or(Localization::Integral);
        let mut terms = Vec::new();
        for p in parts {
            match p.term {
                Term::Wedge(inner) => terms.extend(inner),
                t => terms.push(t),
            }
        }
        if terms.len() == 1 {
            return SpaceExpr::new(terms.pop().unwrap(), loc);
        }
        SpaceExpr::new(Term::Wedge(terms), loc)
    }

    pub fn suspension(x: SpaceExpr) -> Self {
        SpaceExpr::new(Term::Suspension(Box::new(x.term)), x.loc)
    }

    pub fn smash(l: SpaceExpr, r: SpaceExpr) -> Self {
        let loc = l.loc.max(r.loc);
        SpaceExpr::new(Term::Smash(Box::new(l.term), Box::new(r.term)), loc)
    }

    pub fn with_loc(mut self, loc: Localization) -> Self {
        self.loc = loc;
        self
    }

    pub fn away_from_2(self) -> Self {
        self.with_loc(Localization::AwayFromTwo)
    }

    pub fn is_point(&self) -> bool {
        matches!(&self.term, Term::Wedge(parts) if parts.is_empty())
    }

    /// Wedge summands of a canonical form (or a bare atom). `None` when the
    /// expression still has structure under suspension or smash.
    pub fn atoms(&self) -> Option<Vec<SpaceAtom>> {
        match &self.term {
            Term::Atom(a) => Some(vec![a.clone()]),
            Term::Wedge(parts) => parts
                .iter()
                .map(|p| match p {
                    Term::Atom(a) => Some(a.clone()),
                    _ => None,
                })
                .collect(),
            _ => None,
        }
    }

    /// Assemble the canonical expression from a multiset of atoms: a flat
    /// wedge, lexicographically sorted; one atom stands alone, none is the
    /// point.
    pub fn canonical_wedge(mut atoms: Vec<SpaceAtom>, loc: Localization) -> Self {
        atoms.sort();
        let term = match atoms.len() {
            1 => Term::Atom(atoms.pop().unwrap()),
            _ => Term::Wedge(atoms.into_iter().map(Term::Atom).collect()),
        };
        SpaceExpr::new(term, loc)
    }

    /// Connectivity: the expression has trivial reduced homology in degrees
    /// up to and including the returned value. `None` means contractible.
    pub fn connectivity(&self) -> Option<u32> {
        self.term.connectivity()
    }

    /// Top cell dimension; `None` for the point.
    pub fn dimension(&self) -> Option<u32> {
        self.term.dimension()
    }
}

impl Term {
    pub fn connectivity(&self) -> Option<u32> {
        match self {
            Term::Atom(a) => Some(a.connectivity()),
            Term::Wedge(parts) => parts.iter().filter_map(|p| p.connectivity()).min(),
            Term::Suspension(x) => x.connectivity().map(|c| c + 1),
            Term::Smash(l, r) => Some(l.connectivity()? + r.connectivity()? + 1),
        }
    }

    pub fn dimension(&self) -> Option<u32> {
        match self {
            Term::Atom(a) => Some(a.dimension()),
            Term::Wedge(parts) => parts.iter().filter_map(|p| p.dimension()).max(),
            Term::Suspension(x) => x.dimension().map(|d| d + 1),
            Term::Smash(l, r) => Some(l.dimension()? + r.dimension()?),
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent_smash: bool, smash_rhs: bool) -> fmt::Result {
        match self {
            Term::Atom(a) => write!(f, "{a}"),
            Term::Wedge(parts) => {
                if parts.is_empty() {
                    return write!(f, "pt");
                }
                let need_parens = parent_smash;
                if need_parens {
                    write!(f, "(")?;
                }
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " v ")?;
                    }
                    p.fmt_prec(f, false, false)?;
                }
                if need_parens {
                    write!(f, ")")?;
                }
                Ok(())
            }
            Term::Suspension(x) => {
                write!(f, "Sus(")?;
                x.fmt_prec(f, false, false)?;
                write!(f, ")")
            }
            Term::Smash(l, r) => {
                let need_parens = parent_smash && smash_rhs;
                if need_parens {
                    write!(f, "(")?;
                }
                l.fmt_prec(f, true, false)?;
                write!(f, " ^ ")?;
                r.fmt_prec(f, true, true)?;
                if need_parens {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false, false)
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.term)
    }
}
