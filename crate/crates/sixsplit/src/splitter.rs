//! The splitting engine: validate the homological invariants of a closed,
//! oriented, simply connected 6-manifold, select the decomposition case by
//! the action of the first mod-3 power operation, and emit the canonical
//! wedge for the suspension together with the skeleton data the gauge-group
//! computations build on.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::abelian::{is_prime, FgAbGroup, TorsionSummand};
use crate::spaces::{Localization, SpaceAtom, SpaceExpr};

/// How the first mod-3 power operation acts on H^2(M; Z/3).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum P1Action {
    Trivial,
    /// Nontrivial on the free part of H^2.
    NontrivialFree,
    /// Nontrivial exactly on the cited 3-torsion summands (indices into the
    /// validated torsion list).
    NontrivialTorsion(Vec<usize>),
}

/// Unvalidated invariants, as they arrive from a document: signed ranks,
/// arbitrary torsion, and the power-operation data in raw form.
#[derive(Clone, Debug, Default)]
pub struct RawInvariants {
    pub b: i64,
    pub d: i64,
    pub torsion: Vec<(BigUint, u32)>,
    pub p1_action: Option<RawP1Action>,
    pub p1_mod_3: Option<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawP1Action {
    Trivial,
    Free { indices: Vec<usize> },
    Torsion { indices: Vec<usize> },
}

/// Validated invariants: H_2 = Z^b + T, H_3 = Z^2d + T with T a sum of odd
/// prime-power cyclic groups, plus the power-operation action.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ManifoldInvariants {
    b: usize,
    d: usize,
    torsion: Vec<TorsionSummand>,
    p1: P1Action,
    p1_mod_3: Option<u8>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum SplitCase {
    A,
    B,
    C,
}

impl fmt::Display for SplitCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitCase::A => write!(f, "A"),
            SplitCase::B => write!(f, "B"),
            SplitCase::C => write!(f, "C"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidateError {
    #[error("negative rank: b and d must be non-negative (got b = {b}, d = {d})")]
    NegativeRank { b: i64, d: i64 },
    #[error("torsion entry Z/{p}^{r} is invalid: {reason}")]
    BadTorsion { p: BigUint, r: u32, reason: String },
    #[error("power-operation data is missing: provide p1_action or p1_mod_3")]
    MissingP1,
    #[error("p1_mod_3 must lie in {{0, 1, 2}} (got {0})")]
    BadP1Mod3(u8),
    #[error("p1_action and p1_mod_3 disagree: the action is trivial exactly when p_1(M) is divisible by 3")]
    InconsistentP1,
    #[error("p1_mod_3 = {0} is nonzero but no carrier was named: a nontrivial action needs p1_action to say whether it acts on the free part or on which 3-torsion summands")]
    UnderdeterminedCarrier(u8),
    #[error("a nontrivial action on the free part of H^2 requires b >= 1")]
    FreeActionNeedsFreePart,
    #[error("a nontrivial torsion action must cite at least one 3-torsion index")]
    EmptyTorsionAction,
    #[error("torsion index {index} is out of range")]
    TorsionIndexOutOfRange { index: usize },
    #[error("torsion index {index} has p = {p}: the mod-3 power operation can only act nontrivially on 3-torsion")]
    NotThreeTorsion { index: usize, p: BigUint },
}

/// Result of validation: the invariants plus any warnings raised while
/// normalizing the input.
#[derive(Clone, Debug)]
pub struct Validated {
    pub invariants: ManifoldInvariants,
    pub warnings: Vec<String>,
}

/// Validate raw invariants. 2-primary torsion is dropped with a warning
/// (everything downstream is localized away from 2); torsion indices cited
/// by the action are checked to be 3-primary and remapped to the filtered
/// list; the smooth shortcut p1_mod_3 pins the action to trivial exactly
/// when it is 0.
pub fn validate(raw: &RawInvariants) -> Result<Validated, ValidateError> {
    if raw.b < 0 || raw.d < 0 {
        return Err(ValidateError::NegativeRank { b: raw.b, d: raw.d });
    }
    let mut warnings = Vec::new();

    let two = BigUint::from(2u32);
    let mut kept = Vec::new();
    let mut index_map: Vec<Option<usize>> = Vec::new();
    for (p, r) in &raw.torsion {
        if *r == 0 {
            return Err(ValidateError::BadTorsion {
                p: p.clone(),
                r: *r,
                reason: "exponent must be at least 1".to_string(),
            });
        }
        if !is_prime(p) {
            return Err(ValidateError::BadTorsion {
                p: p.clone(),
                r: *r,
                reason: "p must be prime; factor composite orders first".to_string(),
            });
        }
        if *p == two {
            warnings.push(format!(
                "dropping 2-primary torsion summand Z/2^{r}: the decomposition is localized away from 2"
            ));
            index_map.push(None);
        } else {
            index_map.push(Some(kept.len()));
            kept.push(TorsionSummand::new(p.clone(), *r));
        }
    }

    if let Some(m) = raw.p1_mod_3 {
        if m > 2 {
            return Err(ValidateError::BadP1Mod3(m));
        }
    }
    let p1 = match (&raw.p1_action, raw.p1_mod_3) {
        (None, None) => return Err(ValidateError::MissingP1),
        (None, Some(0)) => P1Action::Trivial,
        (None, Some(m)) => return Err(ValidateError::UnderdeterminedCarrier(m)),
        (Some(action), mod3) => {
            if let Some(m) = mod3 {
                let trivial = matches!(action, RawP1Action::Trivial);
                if trivial != (m == 0) {
                    return Err(ValidateError::InconsistentP1);
                }
            }
            match action {
                RawP1Action::Trivial => P1Action::Trivial,
                RawP1Action::Free { indices } => {
                    if raw.b < 1 {
                        return Err(ValidateError::FreeActionNeedsFreePart);
                    }
                    if !indices.is_empty() {
                        warnings.push(
                            "action on the free part takes precedence; the cited torsion indices are ignored and the CP^3 case is used"
                                .to_string(),
                        );
                    }
                    P1Action::NontrivialFree
                }
                RawP1Action::Torsion { indices } => {
                    if indices.is_empty() {
                        return Err(ValidateError::EmptyTorsionAction);
                    }
                    let three = BigUint::from(3u32);
                    let mut mapped = Vec::new();
                    for &i in indices {
                        let Some((p, _)) = raw.torsion.get(i) else {
                            return Err(ValidateError::TorsionIndexOutOfRange { index: i });
                        };
                        if *p != three {
                            return Err(ValidateError::NotThreeTorsion {
                                index: i,
                                p: p.clone(),
                            });
                        }
                        mapped.push(index_map[i].expect("3-torsion is never dropped"));
                    }
                    mapped.sort_unstable();
                    mapped.dedup();
                    P1Action::NontrivialTorsion(mapped)
                }
            }
        }
    };

    Ok(Validated {
        invariants: ManifoldInvariants {
            b: raw.b as usize,
            d: raw.d as usize,
            torsion: kept,
            p1,
            p1_mod_3: raw.p1_mod_3,
        },
        warnings,
    })
}

impl ManifoldInvariants {
    /// Direct constructor for already-clean data; panics on inputs that
    /// validation would reject.
    pub fn new(b: usize, d: usize, torsion: Vec<(u64, u32)>, p1: P1Action) -> Self {
        let raw = RawInvariants {
            b: b as i64,
            d: d as i64,
            torsion: torsion
                .into_iter()
                .map(|(p, r)| (BigUint::from(p), r))
                .collect(),
            p1_action: Some(match &p1 {
                P1Action::Trivial => RawP1Action::Trivial,
                P1Action::NontrivialFree => RawP1Action::Free { indices: vec![] },
                P1Action::NontrivialTorsion(ix) => RawP1Action::Torsion {
                    indices: ix.clone(),
                },
            }),
            p1_mod_3: None,
        };
        validate(&raw).expect("invalid invariants").invariants
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn torsion(&self) -> &[TorsionSummand] {
        &self.torsion
    }

    pub fn p1(&self) -> &P1Action {
        &self.p1
    }

    pub fn case(&self) -> SplitCase {
        match &self.p1 {
            P1Action::Trivial => SplitCase::A,
            P1Action::NontrivialFree => SplitCase::B,
            P1Action::NontrivialTorsion(_) => SplitCase::C,
        }
    }

    /// The torsion group T.
    pub fn torsion_group(&self) -> FgAbGroup {
        FgAbGroup::from_parts(0, self.torsion.clone())
    }

    /// The unreduced homology of M: Z, 0, Z^b + T, Z^2d + T, Z^b, 0, Z.
    pub fn homology_table(&self) -> [FgAbGroup; 7] {
        let t = self.torsion_group();
        [
            FgAbGroup::free(1),
            FgAbGroup::zero(),
            FgAbGroup::free(self.b).direct_sum(&t),
            FgAbGroup::free(2 * self.d).direct_sum(&t),
            FgAbGroup::free(self.b),
            FgAbGroup::zero(),
            FgAbGroup::free(1),
        ]
    }

    /// In the torsion-action case: the cited index with maximal exponent
    /// (the distinguished summand the top cell attaches to).
    pub fn c_bar(&self) -> Option<usize> {
        match &self.p1 {
            P1Action::NontrivialTorsion(indices) => indices
                .iter()
                .copied()
                .max_by_key(|&i| self.torsion[i].exp),
            _ => None,
        }
    }
}

/// One wedge summand of the splitting, with its provenance.
#[derive(Clone, Debug)]
pub struct SplitSummand {
    pub atom: SpaceAtom,
    pub citation: String,
}

#[derive(Clone, Debug)]
pub struct SplitReport {
    pub case: SplitCase,
    pub summands: Vec<SplitSummand>,
}

impl SplitReport {
    pub fn expr(&self) -> SpaceExpr {
        SpaceExpr::canonical_wedge(
            self.summands.iter().map(|s| s.atom.clone()).collect(),
            Localization::AwayFromTwo,
        )
    }
}

const CIT_S3S5: &str = "an S3 v S5 pair suspended from a free generator of H_2 and its dual";
const CIT_S4: &str = "an S4 suspended from a free generator of H_3";
const CIT_MOORE_PAIR: &str = "a P4 v P5 pair suspended from a Z/p^r summand of H_2 and its dual";
const CIT_P5_ONLY: &str = "the P5 suspended from the dual Z/p^r summand of H_3";
const CIT_TOP: &str = "the suspended top cell, split off because the power operation acts trivially";
const CIT_CP3: &str = "suspended CP^3: the top cell attaches to a free generator by the order-3 class alpha_1, absorbing one S3 and one S5";
const CIT_CIA: &str = "the cone of iota composed with alpha_1: the top cell attaches to the distinguished mod-3^r Moore summand";

/// The suspension splitting of M as a report: per-summand atoms with their
/// provenance, selected by the power-operation case.
pub fn split_report(inv: &ManifoldInvariants) -> SplitReport {
    let case = inv.case();
    let mut summands = Vec::new();
    let mut push = |atom: SpaceAtom, citation: &str| {
        summands.push(SplitSummand {
            atom,
            citation: citation.to_string(),
        });
    };

    let s3s5_pairs = match case {
        SplitCase::B => inv.b - 1,
        _ => inv.b,
    };
    for _ in 0..s3s5_pairs {
        push(SpaceAtom::sphere(3), CIT_S3S5);
        push(SpaceAtom::sphere(5), CIT_S3S5);
    }
    for _ in 0..2 * inv.d {
        push(SpaceAtom::sphere(4), CIT_S4);
    }
    let c_bar = inv.c_bar();
    for (j, t) in inv.torsion.iter().enumerate() {
        if Some(j) != c_bar {
            push(SpaceAtom::moore(4, t.order()), CIT_MOORE_PAIR);
            push(SpaceAtom::moore(5, t.order()), CIT_MOORE_PAIR);
        } else {
            push(SpaceAtom::moore(5, t.order()), CIT_P5_ONLY);
        }
    }
    match case {
        SplitCase::A => push(SpaceAtom::sphere(7), CIT_TOP),
        SplitCase::B => push(SpaceAtom::SigmaCp3, CIT_CP3),
        SplitCase::C => {
            let c_bar = c_bar.expect("case C cites a torsion index");
            push(
                SpaceAtom::cone_iota_alpha1(inv.torsion[c_bar].exp),
                CIT_CIA,
            );
        }
    }
    SplitReport { case, summands }
}

/// The canonical wedge decomposition of the suspension of M, away from 2.
pub fn split_suspension(inv: &ManifoldInvariants) -> SpaceExpr {
    split_report(inv).expr()
}

/// The 2-skeleton wedge X, the 3-complex Y whose suspension splits off the
/// suspension of M, and the cone of its inclusion.
#[derive(Clone, Debug)]
pub struct SkeletonData {
    /// X = b spheres S2 wedge the mod-p^r Moore spaces P3.
    pub x: SpaceExpr,
    /// The 3-dimensional complex mapped into M; its suspension is a wedge
    /// summand of the suspension of M.
    pub y: SpaceExpr,
    /// The mapping cone of Y -> M, decomposed when the torsion is zero or
    /// cyclic and the case allows it, otherwise an opaque cell summary.
    pub c_j: SpaceExpr,
    /// Present when `c_j` is only known additively.
    pub c_j_note: Option<String>,
}

impl SkeletonData {
    pub fn c_j_resolved(&self) -> bool {
        self.c_j_note.is_none()
    }
}

pub fn skeleton_data(inv: &ManifoldInvariants) -> SkeletonData {
    let case = inv.case();
    let c_bar = inv.c_bar();

    let mut x_atoms = Vec::new();
    for _ in 0..inv.b {
        x_atoms.push(SpaceAtom::sphere(2));
    }
    for t in &inv.torsion {
        x_atoms.push(SpaceAtom::moore(3, t.order()));
    }
    let x = SpaceExpr::canonical_wedge(x_atoms, Localization::AwayFromTwo);

    let mut y_atoms = Vec::new();
    let y_spheres = match case {
        SplitCase::B => inv.b - 1,
        _ => inv.b,
    };
    for _ in 0..y_spheres {
        y_atoms.push(SpaceAtom::sphere(2));
    }
    for (j, t) in inv.torsion.iter().enumerate() {
        if Some(j) != c_bar {
            y_atoms.push(SpaceAtom::moore(3, t.order()));
        }
    }
    for _ in 0..2 * inv.d {
        y_atoms.push(SpaceAtom::sphere(3));
    }
    let y = SpaceExpr::canonical_wedge(y_atoms, Localization::AwayFromTwo);

    let c = inv.torsion.len();
    let (c_j, c_j_note) = match (case, c) {
        (SplitCase::A, 0) => {
            let mut atoms = vec![SpaceAtom::sphere(4); inv.b];
            atoms.push(SpaceAtom::sphere(6));
            (
                SpaceExpr::canonical_wedge(atoms, Localization::AwayFromTwo),
                None,
            )
        }
        (SplitCase::B, 0) => {
            let mut atoms = vec![SpaceAtom::sphere(4); inv.b - 1];
            atoms.push(SpaceAtom::opaque("C'", vec![2, 4, 6]));
            (
                SpaceExpr::canonical_wedge(atoms, Localization::AwayFromTwo),
                None,
            )
        }
        (SplitCase::A, 1) if inv.b >= 1 => {
            let mut atoms = vec![SpaceAtom::sphere(4); inv.b - 1];
            atoms.push(SpaceAtom::opaque("C''", vec![3, 4, 4, 6]));
            (
                SpaceExpr::canonical_wedge(atoms, Localization::AwayFromTwo),
                None,
            )
        }
        _ => (
            SpaceExpr::atom(SpaceAtom::opaque("C_j", cj_cells(inv)))
                .with_loc(Localization::AwayFromTwo),
            Some(
                "torsion is neither zero nor a single cyclic group in a case with a spare 4-sphere; the cone is described by its cells only"
                    .to_string(),
            ),
        ),
    };

    SkeletonData { x, y, c_j, c_j_note }
}

/// Cell dimensions of the cone of Y -> M: the cells of M not absorbed by
/// Y. Case A leaves c 3-cells, b + c 4-cells and the 6-cell; cases B and C
/// additionally keep the 2-cell (and 3-cell) of the summand dropped from Y.
pub fn cj_cells(inv: &ManifoldInvariants) -> Vec<u32> {
    let c = inv.torsion.len();
    let mut cells = Vec::new();
    match inv.case() {
        SplitCase::A => {}
        SplitCase::B | SplitCase::C => cells.push(2),
    }
    let three_cells = if inv.case() == SplitCase::C { c + 1 } else { c };
    cells.extend(std::iter::repeat_n(3, three_cells));
    cells.extend(std::iter::repeat_n(4, inv.b + c));
    cells.push(6);
    cells
}
