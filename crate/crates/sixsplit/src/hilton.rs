//! Homotopy groups of a wedge of suspensions: enumerate basic products as
//! Lyndon words over the wedge summands, form their smash expressions,
//! truncate by connectivity, and resolve the leaves through the homotopy
//! tables.

use thiserror::Error;

use crate::abelian::FgAbGroup;
use crate::homotopy::{self, DecoratedGroup, PiError};
use crate::spaces::{normalize, Localization, NormalizeError, SpaceAtom, SpaceExpr};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HiltonError {
    #[error("letter `{letter}` is not a suspension of a catalogue atom")]
    NotASuspension { letter: String },
    #[error("rewriting failed: {source}")]
    Rewrite {
        #[from]
        source: NormalizeError,
    },
    #[error("cannot resolve pi_{degree} of basic product `{smash}`: {source}")]
    Unresolved {
        smash: String,
        degree: u32,
        source: PiError,
    },
    #[error("only the away-from-2 localization is supported")]
    UnsupportedLocalization,
}

/// One basic product of the decomposition: a Lyndon word over the letter
/// indices, the (normalized) suspension of the smash of the desuspended
/// letters it names, and its length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasicProduct {
    pub word: Vec<usize>,
    pub smash: SpaceExpr,
    pub weight: usize,
}

/// The decomposition of pi_n of a wedge: one summand per contributing basic
/// product, plus their direct sum.
#[derive(Clone, Debug)]
pub struct PiWedge {
    pub summands: Vec<(BasicProduct, DecoratedGroup)>,
    pub total: FgAbGroup,
}

/// All Lyndon words over `0..k` of length at most `max_len`, lexicographic,
/// by Duval's generation step.
fn lyndon_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    if k == 0 || max_len == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut w = vec![0usize];
    loop {
        out.push(w.clone());
        let m = w.len();
        while w.len() < max_len {
            let next = w[w.len() - m];
            w.push(next);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out
}

/// Desuspend a letter once: the letter must normalize to a single atom that
/// is itself a suspension (a sphere of dimension >= 2 or a Moore space of
/// dimension >= 3).
fn desuspend_letter(letter: &SpaceExpr) -> Result<SpaceAtom, HiltonError> {
    let fail = || HiltonError::NotASuspension {
        letter: letter.to_string(),
    };
    let canonical = normalize(&letter.clone().away_from_2())?;
    let atoms = canonical.atoms().ok_or_else(fail)?;
    if atoms.len() != 1 {
        return Err(fail());
    }
    match atoms.into_iter().next().unwrap() {
        SpaceAtom::Sphere(n) if n >= 2 => Ok(SpaceAtom::sphere(n - 1)),
        SpaceAtom::Moore { dim, order } if dim >= 3 => Ok(SpaceAtom::moore(dim - 1, order)),
        _ => Err(fail()),
    }
}

/// Enumerate the basic products over the given letters that can contribute
/// to pi_n for n < `degree_cutoff`: all Lyndon words whose suspended smash
/// has connectivity below the cutoff. Connectivity grows with every added
/// letter, so the enumeration terminates; excluded words have connectivity
/// at or above the cutoff and contribute nothing.
pub fn basic_products(
    letters: &[SpaceExpr],
    degree_cutoff: u32,
) -> Result<Vec<BasicProduct>, HiltonError> {
    let desusp: Vec<SpaceAtom> = letters
        .iter()
        .map(desuspend_letter)
        .collect::<Result<_, _>>()?;
    if desusp.is_empty() {
        return Ok(Vec::new());
    }
    let min_step = desusp.iter().map(|a| a.connectivity() + 1).min().unwrap();
    let mut max_weight = 0usize;
    while (max_weight as u32 + 1) * min_step < degree_cutoff {
        max_weight += 1;
    }

    let mut out = Vec::new();
    for word in lyndon_words(desusp.len(), max_weight) {
        let conn: u32 =
            word.iter().map(|&i| desusp[i].connectivity()).sum::<u32>() + word.len() as u32;
        if conn >= degree_cutoff {
            continue;
        }
        let smash_raw = word
            .iter()
            .map(|&i| SpaceExpr::atom(desusp[i].clone()))
            .reduce(SpaceExpr::smash)
            .unwrap();
        let smash = normalize(&SpaceExpr::suspension(smash_raw).away_from_2())?;
        out.push(BasicProduct {
            weight: word.len(),
            word,
            smash,
        });
    }
    Ok(out)
}

/// pi_n of a wedge of suspensions, away from 2, as the direct sum over
/// basic products of pi_n of their smash expressions.
pub fn pi_wedge(x: &SpaceExpr, degree: u32, loc: Localization) -> Result<PiWedge, HiltonError> {
    if loc != Localization::AwayFromTwo {
        return Err(HiltonError::UnsupportedLocalization);
    }
    let canonical = normalize(&x.clone().away_from_2())?;
    let atoms = canonical.atoms().ok_or(HiltonError::Rewrite {
        source: NormalizeError::NoNormalForm {
            stuck: canonical.to_string(),
        },
    })?;
    let letters: Vec<SpaceExpr> = atoms.into_iter().map(SpaceExpr::atom).collect();
    let products = basic_products(&letters, degree)?;
    let mut summands = Vec::new();
    let mut total = FgAbGroup::zero();
    for bp in products {
        let group = resolve_pi(&bp.smash, degree)?;
        total = total.direct_sum(&group.group);
        summands.push((bp, group));
    }
    Ok(PiWedge { summands, total })
}

/// pi_n of a canonical expression: a single atom goes to the table, a wedge
/// recurses through the decomposition (the recursion gains connectivity and
/// terminates), the point is trivial.
fn resolve_pi(canonical: &SpaceExpr, degree: u32) -> Result<DecoratedGroup, HiltonError> {
    let atoms = canonical.atoms().unwrap_or_default();
    match atoms.len() {
        0 => Ok(DecoratedGroup {
            group: FgAbGroup::zero(),
            generators: Vec::new(),
            citation: "the smash collapsed to a point".to_string(),
        }),
        1 => homotopy::pi(&atoms[0], degree, Localization::AwayFromTwo).map_err(|source| {
            HiltonError::Unresolved {
                smash: canonical.to_string(),
                degree,
                source,
            }
        }),
        _ => {
            let inner = pi_wedge(canonical, degree, Localization::AwayFromTwo)?;
            let generators = inner
                .summands
                .iter()
                .flat_map(|(_, g)| g.generators.iter().cloned())
                .collect();
            Ok(DecoratedGroup {
                group: inner.total,
                generators,
                citation: "direct sum over the basic products of the smash normal form"
                    .to_string(),
            })
        }
    }
}
