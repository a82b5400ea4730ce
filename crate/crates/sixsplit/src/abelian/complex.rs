use thiserror::Error;

use super::group::FgAbGroup;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;

use num_traits::{One, Signed};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChainComplexError {
    #[error("boundary in degree {degree} has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    ShapeMismatch {
        degree: usize,
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("boundary degree {degree} is out of range")]
    DegreeOutOfRange { degree: usize },
    #[error("d.d != 0 between degrees {degree} and {}", degree - 1)]
    BoundarySquareNonzero { degree: usize },
}

/// A bounded chain complex of free abelian groups. `boundary(n)` maps
/// degree n to degree n-1; the composite of consecutive boundaries is zero.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    ranks: Vec<usize>,
    boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Build a complex from per-degree ranks and the nonzero boundary maps,
    /// given as (degree, matrix) pairs. Absent degrees get zero matrices.
    pub fn new(
        ranks: Vec<usize>,
        nonzero_boundaries: Vec<(usize, IntMatrix)>,
    ) -> Result<Self, ChainComplexError> {
        let mut boundaries: Vec<IntMatrix> = (0..ranks.len())
            .map(|n| {
                let target = if n == 0 { 0 } else { ranks[n - 1] };
                IntMatrix::zeros(target, ranks[n])
            })
            .collect();
        for (degree, m) in nonzero_boundaries {
            if degree == 0 || degree >= ranks.len() {
                return Err(ChainComplexError::DegreeOutOfRange { degree });
            }
            boundaries[degree] = m;
        }
        let c = ChainComplex { ranks, boundaries };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), ChainComplexError> {
        for n in 0..self.ranks.len() {
            let want_rows = if n == 0 { 0 } else { self.ranks[n - 1] };
            let b = &self.boundaries[n];
            if b.rows() != want_rows || b.cols() != self.ranks[n] {
                return Err(ChainComplexError::ShapeMismatch {
                    degree: n,
                    got_rows: b.rows(),
                    got_cols: b.cols(),
                    want_rows,
                    want_cols: self.ranks[n],
                });
            }
        }
        for n in 2..self.ranks.len() {
            let composite = self.boundaries[n - 1].mul(&self.boundaries[n]);
            if !composite.is_zero() {
                return Err(ChainComplexError::BoundarySquareNonzero { degree: n });
            }
        }
        Ok(())
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn boundary(&self, n: usize) -> &IntMatrix {
        &self.boundaries[n]
    }

    /// Homology in every degree, in canonical form: H_n = ker d_n / im d_{n+1}.
    ///
    /// With Smith normal form of d_{n+1} having nonzero invariant factors
    /// e_1 | ... | e_s, the torsion of H_n is the sum of Z/e_i with e_i > 1,
    /// and the free rank is rank C_n - rank d_n - rank d_{n+1}.
    pub fn homology(&self) -> Vec<FgAbGroup> {
        let len = self.ranks.len();
        let boundary_rank: Vec<usize> = (0..=len)
            .map(|n| {
                if n == 0 || n >= len {
                    0
                } else {
                    smith_normal_form(&self.boundaries[n]).rank()
                }
            })
            .collect();
        (0..len)
            .map(|n| {
                let free = self.ranks[n] - boundary_rank[n] - boundary_rank[n + 1];
                let mut h = FgAbGroup::free(free);
                if n + 1 < len {
                    let snf = smith_normal_form(&self.boundaries[n + 1]);
                    for factor in snf.invariant_factors() {
                        if factor.abs() > num_bigint::BigInt::one() {
                            h = h.direct_sum(&FgAbGroup::cyclic(factor.magnitude().clone()));
                        }
                    }
                }
                h
            })
            .collect()
    }
}
