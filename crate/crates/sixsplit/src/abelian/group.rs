use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// One cyclic summand Z/p^r of the torsion part.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TorsionSummand {
    pub prime: BigUint,
    pub exp: u32,
}

impl TorsionSummand {
    pub fn new(prime: impl Into<BigUint>, exp: u32) -> Self {
        let prime = prime.into();
        assert!(exp >= 1, "torsion exponent must be at least 1");
        assert!(prime >= BigUint::from(2u32), "torsion prime must be at least 2");
        TorsionSummand { prime, exp }
    }

    pub fn order(&self) -> BigUint {
        self.prime.pow(self.exp)
    }
}

impl fmt::Debug for TorsionSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.prime, self.exp)
    }
}

/// Finitely generated abelian group in canonical form: a free rank together
/// with a list of prime-power cyclic summands sorted by (prime, exponent).
///
/// Canonical form makes equality structural: two groups are isomorphic
/// exactly when the values compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<TorsionSummand>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        FgAbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// The cyclic group Z/p^r.
    pub fn cyclic_prime_power(prime: impl Into<BigUint>, exp: u32) -> Self {
        FgAbGroup {
            free_rank: 0,
            torsion: vec![TorsionSummand::new(prime, exp)],
        }
    }

    /// The cyclic group Z/n, split into prime-power summands. Z/1 = 0 and
    /// Z/0 = Z.
    pub fn cyclic(n: impl Into<BigUint>) -> Self {
        let n = n.into();
        if n.is_zero() {
            return FgAbGroup::free(1);
        }
        let torsion = factor(&n)
            .into_iter()
            .map(|(p, r)| TorsionSummand::new(p, r))
            .collect();
        FgAbGroup {
            free_rank: 0,
            torsion,
        }
        .canonicalized()
    }

    pub fn from_parts(free_rank: usize, torsion: Vec<TorsionSummand>) -> Self {
        FgAbGroup { free_rank, torsion }.canonicalized()
    }

    fn canonicalized(mut self) -> Self {
        self.torsion.sort();
        self
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[TorsionSummand] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Direct sum of two groups, in canonical form.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut torsion = self.torsion.clone();
        torsion.extend(other.torsion.iter().cloned());
        FgAbGroup {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
        .canonicalized()
    }

    pub fn sum_all<'a>(groups: impl IntoIterator<Item = &'a FgAbGroup>) -> FgAbGroup {
        groups
            .into_iter()
            .fold(FgAbGroup::zero(), |acc, g| acc.direct_sum(g))
    }

    /// Minimal number of generators: free rank plus the largest number of
    /// summands sharing one prime.
    pub fn min_generators(&self) -> usize {
        let mut best = 0usize;
        let mut i = 0;
        while i < self.torsion.len() {
            let p = &self.torsion[i].prime;
            let count = self.torsion[i..]
                .iter()
                .take_while(|t| &t.prime == p)
                .count();
            best = best.max(count);
            i += count;
        }
        self.free_rank + best
    }

    /// The free part, i.e. Hom(G, Z).
    pub fn hom_to_z(&self) -> FgAbGroup {
        FgAbGroup::free(self.free_rank)
    }

    /// The torsion part, i.e. Ext(G, Z).
    pub fn ext_to_z(&self) -> FgAbGroup {
        FgAbGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t.order()));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Hom(G, Z) and Ext(G, Z), the universal-coefficient duals of G.
pub fn uct_duals(g: &FgAbGroup) -> (FgAbGroup, FgAbGroup) {
    (g.hom_to_z(), g.ext_to_z())
}

/// Kill the 2-primary torsion; the free rank and odd torsion are unchanged.
pub fn localize_away_2(g: &FgAbGroup) -> FgAbGroup {
    let two = BigUint::from(2u32);
    FgAbGroup {
        free_rank: g.free_rank,
        torsion: g
            .torsion
            .iter()
            .filter(|t| t.prime != two)
            .cloned()
            .collect(),
    }
}

/// G tensor Z/m and Tor(G, Z/m), computed summand-wise: a Z summand
/// contributes Z/m to the tensor product, a Z/p^r summand contributes
/// Z/gcd(p^r, m) to both.
pub fn tensor_tor_mod(g: &FgAbGroup, m: &BigUint) -> (FgAbGroup, FgAbGroup) {
    assert!(*m >= BigUint::from(2u32), "modulus must be at least 2");
    let z_mod_m = FgAbGroup::cyclic(m.clone());
    let mut tensor = FgAbGroup::zero();
    for _ in 0..g.free_rank {
        tensor = tensor.direct_sum(&z_mod_m);
    }
    let mut tor = FgAbGroup::zero();
    for t in &g.torsion {
        let g_common = t.order().gcd(m);
        if !g_common.is_one() {
            let c = FgAbGroup::cyclic(g_common);
            tensor = tensor.direct_sum(&c);
            tor = tor.direct_sum(&c);
        }
    }
    (tensor, tor)
}

/// Pairwise tensor product of finitely generated abelian groups.
pub fn tensor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let mut out = FgAbGroup::free(a.free_rank * b.free_rank);
    for t in &b.torsion {
        for _ in 0..a.free_rank {
            out = out.direct_sum(&FgAbGroup::cyclic_prime_power(t.prime.clone(), t.exp));
        }
    }
    for t in &a.torsion {
        for _ in 0..b.free_rank {
            out = out.direct_sum(&FgAbGroup::cyclic_prime_power(t.prime.clone(), t.exp));
        }
    }
    for s in &a.torsion {
        for t in &b.torsion {
            if s.prime == t.prime {
                out = out.direct_sum(&FgAbGroup::cyclic_prime_power(
                    s.prime.clone(),
                    s.exp.min(t.exp),
                ));
            }
        }
    }
    out
}

/// Pairwise Tor of finitely generated abelian groups.
pub fn tor(a: &FgAbGroup, b: &FgAbGroup) -> FgAbGroup {
    let mut out = FgAbGroup::zero();
    for s in &a.torsion {
        for t in &b.torsion {
            if s.prime == t.prime {
                out = out.direct_sum(&FgAbGroup::cyclic_prime_power(
                    s.prime.clone(),
                    s.exp.min(t.exp),
                ));
            }
        }
    }
    out
}

/// Prime factorization by trial division; fine at the scale this engine
/// works with.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut r = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                r += 1;
            }
            out.push((p.clone(), r));
        }
        p += 1u32;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Some((p, r)) when n = p^r for a prime p and r >= 1.
pub fn as_prime_power(n: &BigUint) -> Option<(BigUint, u32)> {
    let f = factor(n);
    if f.len() == 1 {
        Some(f.into_iter().next().unwrap())
    } else {
        None
    }
}

pub fn is_prime(n: &BigUint) -> bool {
    matches!(as_prime_power(n), Some((_, 1)))
}
