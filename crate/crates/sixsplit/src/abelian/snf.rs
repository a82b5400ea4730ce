use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Smith normal form U * A * V = D with U, V unimodular and D diagonal,
/// the diagonal non-negative and chained by divisibility.
#[derive(Clone, Debug)]
pub struct SmithNormalForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithNormalForm {
    /// Nonzero diagonal entries d_1 | d_2 | ...
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.d
            .diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Reduction {
    d: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reduction {
    fn new(a: &IntMatrix) -> Self {
        Reduction {
            d: a.clone(),
            u: IntMatrix::identity(a.rows()),
            v: IntMatrix::identity(a.cols()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
    }

    fn add_row_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_row_multiple(dst, src, c);
        self.u.add_row_multiple(dst, src, c);
    }

    fn add_col_multiple(&mut self, dst: usize, src: usize, c: &BigInt) {
        self.d.add_col_multiple(dst, src, c);
        self.v.add_col_multiple(dst, src, c);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
    }

    // Rows (a, b) <- (p*a + q*b, r*a + s*b); the caller keeps ps - qr = +-1.
    fn transform_rows(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        self.d.transform_rows(a, b, p, q, r, s);
        self.u.transform_rows(a, b, p, q, r, s);
    }

    fn transform_cols(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        self.d.transform_cols(a, b, p, q, r, s);
        self.v.transform_cols(a, b, p, q, r, s);
    }

    fn find_pivot(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in from..self.d.rows() {
            for j in from..self.d.cols() {
                let e = &self.d[(i, j)];
                if e.is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((i, j)),
                    Some((bi, bj)) => {
                        if e.abs() < self.d[(bi, bj)].abs() {
                            best = Some((i, j));
                        }
                    }
                }
            }
        }
        best
    }

    fn clear_position(&mut self, t: usize) {
        loop {
            let mut changed = false;
            for i in t + 1..self.d.rows() {
                if self.d[(i, t)].is_zero() {
                    continue;
                }
                changed = true;
                let a = self.d[(t, t)].clone();
                let b = self.d[(i, t)].clone();
                if (&b % &a).is_zero() {
                    let q = -(&b / &a);
                    self.add_row_multiple(i, t, &q);
                } else {
                    let e = a.extended_gcd(&b);
                    let alpha = &a / &e.gcd;
                    let beta = &b / &e.gcd;
                    // det [[x, y], [-beta, alpha]] = (x*a + y*b)/g = 1
                    self.transform_rows(t, i, &e.x, &e.y, &(-beta), &alpha);
                }
            }
            for j in t + 1..self.d.cols() {
                if self.d[(t, j)].is_zero() {
                    continue;
                }
                changed = true;
                let a = self.d[(t, t)].clone();
                let b = self.d[(t, j)].clone();
                if (&b % &a).is_zero() {
                    let q = -(&b / &a);
                    self.add_col_multiple(j, t, &q);
                } else {
                    let e = a.extended_gcd(&b);
                    let alpha = &a / &e.gcd;
                    let beta = &b / &e.gcd;
                    self.transform_cols(t, j, &e.x, &e.y, &(-beta), &alpha);
                }
            }
            if !changed {
                return;
            }
        }
    }

    // Repair d_i | d_{i+1} for the nonzero diagonal prefix of length r.
    fn enforce_divisibility(&mut self, r: usize) {
        if r < 2 {
            return;
        }
        loop {
            let mut clean = true;
            for i in 0..r - 1 {
                let x = self.d[(i, i)].clone();
                let y = self.d[(i + 1, i + 1)].clone();
                if (&y % &x).is_zero() {
                    continue;
                }
                clean = false;
                // Fold y into column i, then re-diagonalize the 2x2 block.
                self.add_col_multiple(i, i + 1, &BigInt::one());
                self.clear_position(i);
            }
            if clean {
                return;
            }
        }
    }

    fn normalize_signs(&mut self) {
        for i in 0..self.d.rows().min(self.d.cols()) {
            if self.d[(i, i)].is_negative() {
                self.negate_row(i);
            }
        }
    }
}

/// Diagonalize an integer matrix: returns (U, D, V) with U * A * V = D,
/// |det U| = |det V| = 1, D diagonal, non-negative and divisibility-chained.
/// Empty matrices yield empty factors.
pub fn smith_normal_form(a: &IntMatrix) -> SmithNormalForm {
    let mut red = Reduction::new(a);
    let n = a.rows().min(a.cols());
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = red.find_pivot(t) else {
            break;
        };
        red.swap_rows(t, pi);
        red.swap_cols(t, pj);
        red.clear_position(t);
        t += 1;
    }
    red.enforce_divisibility(t);
    red.normalize_signs();
    debug_assert!(red.d.is_diagonal());
    SmithNormalForm {
        u: red.u,
        d: red.d,
        v: red.v,
    }
}

/// The rank of the matrix over Q, via elimination.
pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

/// Reduce an integer vector by a unimodular change of basis on the right:
/// returns (a', P) with P in GL_l(Z) and a.P = (a', 0, ..., 0) modulo m.
/// Here a' = gcd of the entries when m = 0 (the free case), and
/// a' = gcd(m, entries) when m > 0.
///
/// For l = 1 and m > 0 the only available changes of basis are the two
/// signs, so the congruence holds exactly when one of +-a represents
/// gcd(m, a) mod m; the returned a' follows the gcd formula regardless.
pub fn unimodular_reduce(a: &[BigInt], m: &BigUint) -> (BigInt, IntMatrix) {
    let l = a.len();
    assert!(l >= 1, "unimodular_reduce needs a nonempty vector");
    let row = IntMatrix::from_entries(1, l, a.to_vec());
    let snf = smith_normal_form(&row);
    let mut p = snf.v;
    // U is 1x1 with entry +-1; fold its sign into the first column so that
    // a.P = (g, 0, ..., 0) exactly, g = gcd of the entries.
    if snf.u[(0, 0)].is_negative() {
        p.negate_col(0);
    }
    let g = snf.d[(0, 0)].clone();
    if m.is_zero() {
        return (g, p);
    }
    let m_int = BigInt::from(m.clone());
    let a_prime = g.gcd(&m_int);

    if l == 1 {
        let target = ((&a_prime % &m_int) + &m_int) % &m_int;
        for sign in [BigInt::one(), -BigInt::one()] {
            let value = (((&a[0] * &sign) % &m_int) + &m_int) % &m_int;
            if value == target {
                return (a_prime, IntMatrix::from_entries(1, 1, vec![sign]));
            }
        }
        return (a_prime, p);
    }

    if g.is_zero() {
        // Zero vector: a.P = 0 = (a', 0, ...) mod m since a' = m here.
        return (a_prime, p);
    }

    // g*x + m*y = a'; complete the row (x, m/a') to a unimodular 2x2 block.
    // gcd(x, m/a') = 1 always holds for such x.
    let e = g.extended_gcd(&m_int);
    debug_assert_eq!(e.gcd, a_prime);
    let x = e.x;
    let m_over = &m_int / &a_prime;
    let e2 = x.extended_gcd(&m_over);
    debug_assert!(e2.gcd.is_one());
    // x*s + (m/a')*t = 1  =>  det [[x, m/a'], [-t, s]] = 1.
    let mut q = IntMatrix::identity(l);
    q[(0, 0)] = x;
    q[(0, 1)] = m_over;
    q[(1, 0)] = -e2.y;
    q[(1, 1)] = e2.x;
    (a_prime, p.mul(&q))
}
