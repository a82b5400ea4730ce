//! Gauge-group decompositions over the manifold: the trivial bundle for any
//! connected Lie group, the classification of SU(n)-bundles, the product
//! decompositions for SU(n)-bundles with vanishing second Chern class, and
//! stable-range homotopy groups of the resulting factor products.

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

use crate::abelian::{uct_duals, FgAbGroup};
use crate::cohomology::GroupOrExtension;
use crate::spaces::{Localization, SpaceAtom, SpaceExpr};
use crate::splitter::{skeleton_data, split_report, ManifoldInvariants, SplitCase};

/// One factor of a mapping-space product.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Factor {
    /// The group itself (the identity-component factor).
    Lie { group: String },
    /// Omega^k G.
    Loop { k: u32, group: String },
    /// Omega^k G{m} = Map*(P^k(m), G).
    MooreLoop {
        k: u32,
        order: BigUint,
        group: String,
    },
    /// Map*(X, G) for a named complex X.
    MapStar { source: SpaceExpr, group: String },
    /// A gauge group over a base this engine does not decompose further.
    OpaqueGauge {
        base: SpaceExpr,
        group: String,
        c2: Vec<i64>,
        c3: i64,
    },
}

impl Factor {
    fn sort_key(&self) -> (u8, u32, BigUint, String) {
        match self {
            Factor::Lie { group } => (0, 0, BigUint::default(), group.clone()),
            Factor::Loop { k, group } => (1, *k, BigUint::default(), group.clone()),
            Factor::MooreLoop { k, order, group } => (2, *k, order.clone(), group.clone()),
            Factor::MapStar { source, group } => {
                (3, 0, BigUint::default(), format!("{source}|{group}"))
            }
            Factor::OpaqueGauge {
                base, group, c3, ..
            } => (4, 0, BigUint::default(), format!("{base}|{group}|{c3}")),
        }
    }
}

impl PartialOrd for Factor {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Factor {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Lie { group } => write!(f, "{group}"),
            Factor::Loop { k, group } => write!(f, "Omega^{k} {group}"),
            Factor::MooreLoop { k, order, group } => write!(f, "Omega^{k} {group}{{{order}}}"),
            Factor::MapStar { source, group } => write!(f, "Map*({source}, {group})"),
            Factor::OpaqueGauge {
                base, group, c3, ..
            } => write!(f, "Gauge_(0,{c3})({base}, {group})"),
        }
    }
}

/// A formal product of factors in canonical order, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorProduct {
    factors: Vec<Factor>,
    pub loc: Localization,
}

impl FactorProduct {
    pub fn new(mut factors: Vec<Factor>) -> Self {
        factors.sort();
        FactorProduct {
            factors,
            loc: Localization::AwayFromTwo,
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }
}

impl fmt::Display for FactorProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GaugeError {
    #[error("the bundle classification by (c2, c3) requires n >= 3 (got SU({0}))")]
    RankTooSmall(u32),
    #[error("only bundles with vanishing second Chern class are supported; c2 = {c2:?} is nonzero")]
    NonzeroC2 { c2: Vec<i64> },
    #[error("pi_{degree} of factor `{factor}` is not computable from catalogued data: {reason}")]
    NotResolvable {
        factor: String,
        degree: u32,
        reason: String,
    },
    #[error("pi_{degree} of factor `{factor}` needs pi_{total} of SU({n}), outside the stable range (total degree must be at most {max})")]
    OutOfStableRange {
        factor: String,
        degree: u32,
        total: u32,
        n: u32,
        max: u32,
    },
}

/// Isomorphism classes of principal SU(n)-bundles over M for n >= 3 are the
/// pairs (c2, c3) in H^4(M) x H^6(M); this returns those two groups,
/// computed by universal-coefficient duality from the homology table.
pub fn classify_su_bundles(
    inv: &ManifoldInvariants,
    n: u32,
) -> Result<(FgAbGroup, FgAbGroup), GaugeError> {
    if n < 3 {
        return Err(GaugeError::RankTooSmall(n));
    }
    let h = inv.homology_table();
    let (hom4, _) = uct_duals(&h[4]);
    let (_, ext3) = uct_duals(&h[3]);
    let h4 = hom4.direct_sum(&ext3);
    let (hom6, _) = uct_duals(&h[6]);
    let (_, ext5) = uct_duals(&h[5]);
    let h6 = hom6.direct_sum(&ext5);
    Ok((h4, h6))
}

/// Guard for the unsupported nonzero-c2 case.
pub fn require_zero_c2(c2: &[i64]) -> Result<(), GaugeError> {
    if c2.iter().any(|&x| x != 0) {
        return Err(GaugeError::NonzeroC2 { c2: c2.to_vec() });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct FactorEntry {
    pub factor: Factor,
    pub citation: String,
}

#[derive(Clone, Debug)]
pub struct GaugeReport {
    pub case: SplitCase,
    pub entries: Vec<FactorEntry>,
    pub notes: Vec<String>,
}

impl GaugeReport {
    pub fn product(&self) -> FactorProduct {
        FactorProduct::new(self.entries.iter().map(|e| e.factor.clone()).collect())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GaugeOptions {
    /// Replace the Map*(CP3, G) factor by Map*(C_alpha1, G) x Omega^4 G via
    /// the suspended-CP^3 rewrite. Off by default so outputs stay textually
    /// comparable with the splitting statements.
    pub expand_sigma_cp3: bool,
}

/// The factor of Map*(M, G) contributed by one wedge summand of the
/// suspension, read against its desuspension.
fn summand_factor(atom: &SpaceAtom, group: &str) -> Factor {
    match atom {
        SpaceAtom::Sphere(k) => Factor::Loop {
            k: k - 1,
            group: group.to_string(),
        },
        SpaceAtom::Moore { dim, order } => Factor::MooreLoop {
            k: dim - 1,
            order: order.clone(),
            group: group.to_string(),
        },
        SpaceAtom::SigmaCp3 => Factor::MapStar {
            source: SpaceExpr::atom(SpaceAtom::opaque("CP3", vec![2, 4, 6]))
                .with_loc(Localization::AwayFromTwo),
            group: group.to_string(),
        },
        // The two cones are their own mapping-space sources under the
        // 7-dimensional reading of the splitting.
        other => Factor::MapStar {
            source: SpaceExpr::atom(other.clone()).with_loc(Localization::AwayFromTwo),
            group: group.to_string(),
        },
    }
}

/// The gauge group of the trivial bundle G x M: the group itself times one
/// pointed mapping space per wedge summand of the suspension, desuspended
/// once.
pub fn gauge_trivial(inv: &ManifoldInvariants, group: &str) -> GaugeReport {
    gauge_trivial_with(inv, group, &GaugeOptions::default())
}

pub fn gauge_trivial_with(
    inv: &ManifoldInvariants,
    group: &str,
    opts: &GaugeOptions,
) -> GaugeReport {
    let split = split_report(inv);
    let mut entries = vec![FactorEntry {
        factor: Factor::Lie {
            group: group.to_string(),
        },
        citation: "the gauge group of the trivial bundle is the full mapping space Map(M, G), and evaluation at the basepoint splits off G".to_string(),
    }];
    let mut notes = Vec::new();
    for s in &split.summands {
        if opts.expand_sigma_cp3 && s.atom == SpaceAtom::SigmaCp3 {
            notes.push(
                "the suspended CP^3 summand was rewritten as C_alpha1 v S5, trading Map*(CP3, G) for Map*(C_alpha1, G) x Omega^4 G"
                    .to_string(),
            );
            entries.push(FactorEntry {
                factor: summand_factor(&SpaceAtom::ConeAlpha1, group),
                citation: s.citation.clone(),
            });
            entries.push(FactorEntry {
                factor: summand_factor(&SpaceAtom::sphere(5), group),
                citation: s.citation.clone(),
            });
            continue;
        }
        entries.push(FactorEntry {
            factor: summand_factor(&s.atom, group),
            citation: s.citation.clone(),
        });
    }
    GaugeReport {
        case: split.case,
        entries,
        notes,
    }
}

/// The gauge group of the SU(n)-bundle with c2 = 0 and c3 = l, as the gauge
/// group over the cone of the skeleton inclusion times the mapping spaces
/// out of the 3-complex Y, refined by splitting 4-spheres off the cone when
/// the torsion is zero or cyclic and the case allows it.
pub fn gauge_su(inv: &ManifoldInvariants, n: u32, c3: i64) -> Result<GaugeReport, GaugeError> {
    gauge_su_with(inv, n, c3, true)
}

pub fn gauge_su_with(
    inv: &ManifoldInvariants,
    n: u32,
    c3: i64,
    refine: bool,
) -> Result<GaugeReport, GaugeError> {
    if n < 3 {
        return Err(GaugeError::RankTooSmall(n));
    }
    let group = format!("SU({n})");
    let sk = skeleton_data(inv);
    let case = inv.case();
    let c2 = vec![0i64; inv.b() + inv.torsion().len()];

    let mut entries = Vec::new();
    let base = if refine {
        sk.c_j.clone()
    } else {
        // The undecomposed cone, described by its cells.
        opaque_cj(inv)
    };
    entries.push(FactorEntry {
        factor: Factor::OpaqueGauge {
            base,
            group: group.clone(),
            c2,
            c3,
        },
        citation: "the gauge group over the cone of Y -> M; the suspension of Y splits off, so components and gauge groups over the cone and over M correspond".to_string(),
    });
    for atom in sk.y.atoms().expect("Y is canonical") {
        entries.push(FactorEntry {
            factor: summand_factor_unsuspended(&atom, &group),
            citation: "a pointed mapping-space factor Map*(-, SU(n)) from a wedge summand of the 3-complex Y".to_string(),
        });
    }
    let mut notes = Vec::new();
    if let Some(note) = &sk.c_j_note {
        notes.push(note.clone());
    }
    let mut report = GaugeReport {
        case,
        entries,
        notes,
    };
    if refine {
        report = split_off_s4(&report);
    }
    Ok(report)
}

/// Cell summary of the cone of Y -> M, used for the unrefined product.
fn opaque_cj(inv: &ManifoldInvariants) -> SpaceExpr {
    SpaceExpr::atom(SpaceAtom::opaque("C_j", crate::splitter::cj_cells(inv)))
        .with_loc(Localization::AwayFromTwo)
}

/// Map*(X, G) factor for a summand of Y (not suspended: Y maps into M).
fn summand_factor_unsuspended(atom: &SpaceAtom, group: &str) -> Factor {
    match atom {
        SpaceAtom::Sphere(k) => Factor::Loop {
            k: *k,
            group: group.to_string(),
        },
        SpaceAtom::Moore { dim, order } => Factor::MooreLoop {
            k: *dim,
            order: order.clone(),
            group: group.to_string(),
        },
        other => Factor::MapStar {
            source: SpaceExpr::atom(other.clone()).with_loc(Localization::AwayFromTwo),
            group: group.to_string(),
        },
    }
}

/// Split every 4-sphere wedge summand off the bases of opaque gauge
/// factors: the gauge group over S^4 v A with vanishing class on the sphere
/// is the gauge group over A times Omega^4 G. Idempotent once no 4-sphere
/// summand remains.
pub fn split_off_s4(report: &GaugeReport) -> GaugeReport {
    let mut entries = Vec::new();
    for e in &report.entries {
        let Factor::OpaqueGauge {
            base,
            group,
            c2,
            c3,
        } = &e.factor
        else {
            entries.push(e.clone());
            continue;
        };
        let Some(atoms) = base.atoms() else {
            entries.push(e.clone());
            continue;
        };
        let spheres = atoms.iter().filter(|a| **a == SpaceAtom::sphere(4)).count();
        if spheres == 0 {
            entries.push(e.clone());
            continue;
        }
        let rest: Vec<SpaceAtom> = atoms
            .into_iter()
            .filter(|a| *a != SpaceAtom::sphere(4))
            .collect();
        for _ in 0..spheres {
            entries.push(FactorEntry {
                factor: Factor::Loop {
                    k: 4,
                    group: group.clone(),
                },
                citation: "a 4-sphere wedge summand of the cone splits off an Omega^4 factor (its bundle class vanishes)".to_string(),
            });
        }
        entries.push(FactorEntry {
            factor: Factor::OpaqueGauge {
                base: SpaceExpr::canonical_wedge(rest, base.loc),
                group: group.clone(),
                c2: c2.clone(),
                c3: *c3,
            },
            citation: e.citation.clone(),
        });
    }
    GaugeReport {
        case: report.case,
        entries,
        notes: report.notes.clone(),
    }
}

fn su_rank(group: &str) -> Option<u32> {
    group
        .strip_prefix("SU(")?
        .strip_suffix(')')?
        .parse()
        .ok()
}

/// pi_j(SU(n)) in the stable range j <= 2n - 1: Z for odd j >= 3, zero
/// otherwise (SU(n) is 2-connected).
fn stable_pi_su(j: u32) -> FgAbGroup {
    if j >= 3 && j % 2 == 1 {
        FgAbGroup::free(1)
    } else {
        FgAbGroup::zero()
    }
}

#[derive(Clone, Debug)]
pub struct PiFactors {
    pub per_factor: Vec<(Factor, FgAbGroup, String)>,
    pub total: GroupOrExtension,
}

/// pi_i of a factor product, computed factor-wise: loops shift the degree,
/// Moore loops are mod-m homotopy via the universal-coefficient sequence,
/// and everything must land in the stable range of its SU(n).
pub fn pi_factors(product: &FactorProduct, i: u32) -> Result<PiFactors, GaugeError> {
    let mut per_factor = Vec::new();
    let mut total = FgAbGroup::zero();
    for f in product.factors() {
        let (group_label, k, order): (&str, u32, Option<&BigUint>) = match f {
            Factor::Lie { group } => (group, 0, None),
            Factor::Loop { k, group } => (group, *k, None),
            Factor::MooreLoop { k, order, group } => (group, *k, Some(order)),
            other => {
                return Err(GaugeError::NotResolvable {
                    factor: other.to_string(),
                    degree: i,
                    reason: "mapping-space and opaque gauge factors have no catalogued homotopy"
                        .to_string(),
                })
            }
        };
        let Some(n) = su_rank(group_label) else {
            return Err(GaugeError::NotResolvable {
                factor: f.to_string(),
                degree: i,
                reason: format!("homotopy of {group_label} is only catalogued for SU(n)"),
            });
        };
        let j = i + k;
        if j > 2 * n - 1 {
            return Err(GaugeError::OutOfStableRange {
                factor: f.to_string(),
                degree: i,
                total: j,
                n,
                max: 2 * n - 1,
            });
        }
        let (value, citation) = match order {
            None => (
                stable_pi_su(j),
                format!("pi_{j}(SU({n})) in the stable range: Z for odd j >= 3, else 0"),
            ),
            Some(m) => {
                let stable = stable_pi_su(j);
                let below = stable_pi_su(j.saturating_sub(1));
                let (tensor_part, _) = if stable.is_zero() {
                    (FgAbGroup::zero(), FgAbGroup::zero())
                } else {
                    crate::abelian::tensor_tor_mod(&stable, m)
                };
                let (_, tor_part) = if below.is_zero() {
                    (FgAbGroup::zero(), FgAbGroup::zero())
                } else {
                    crate::abelian::tensor_tor_mod(&below, m)
                };
                (
                    tensor_part.direct_sum(&tor_part),
                    format!("mod-{m} homotopy of SU({n}) in degree {j}: pi_{j} tensor Z/{m} extended by Tor(pi_{}, Z/{m}), and the stable groups are free", j.saturating_sub(1)),
                )
            }
        };
        total = total.direct_sum(&value);
        per_factor.push((f.clone(), value, citation));
    }
    Ok(PiFactors {
        per_factor,
        total: GroupOrExtension::Exact(total),
    })
}
