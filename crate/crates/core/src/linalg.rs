//! Exact linear algebra: fraction-free elimination over integral domains,
//! Smith normal form over the integers, and small integer-matrix helpers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::laurent::{Exponent, GroupPoly};

/// The ring operations fraction-free elimination needs. Implemented by the
/// Laurent rings; divisions are exact or rejected.
pub trait ExactDomain: Clone + Eq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `Some(q)` with `self = q * other` when divisible; `None` otherwise.
    fn divide_exact(&self, other: &Self) -> Option<Self>;
}

impl<E: Exponent + Send + Sync> ExactDomain for GroupPoly<E> {
    fn zero() -> Self {
        GroupPoly::zero()
    }
    fn is_zero(&self) -> bool {
        GroupPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        GroupPoly::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        GroupPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        GroupPoly::mul(self, other)
    }
    fn neg(&self) -> Self {
        GroupPoly::neg(self)
    }
    fn divide_exact(&self, other: &Self) -> Option<Self> {
        GroupPoly::divide_exact(self, other)
    }
}

/// Errors of the exact solvers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// The matrix is singular over the fraction field.
    Singular,
    /// A division that the theory promises to be exact failed, i.e. the
    /// right-hand side is not in the module spanned over the ring.
    InexactDivision,
}

/// Fraction-free (Bareiss) elimination of a square matrix, cached so many
/// right-hand sides can be solved against the same matrix.
///
/// The elimination step is
/// `a[i][j] <- (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / p` with `p` the
/// previous pivot; every division is exact by the Sylvester identity. The
/// recorded data replays the same transformation on any column vector.
#[derive(Clone, Debug)]
pub struct BareissSolver<R: ExactDomain> {
    n: usize,
    /// Row swap performed before step k: (k, swap_partner_row).
    swaps: Vec<(usize, usize)>,
    /// mult[k][i] = eliminated entry a^{(k)}[i][k] for i > k.
    mult: Vec<Vec<R>>,
    /// pivots[k] = a^{(k)}[k][k].
    pivots: Vec<R>,
    /// Final upper-triangular matrix.
    upper: Vec<Vec<R>>,
    /// Number of row transpositions mod 2, for the determinant sign.
    swap_parity: bool,
}

impl<R: ExactDomain> BareissSolver<R> {
    pub fn new(matrix: Vec<Vec<R>>) -> Result<Self, SolveError> {
        let n = matrix.len();
        assert!(matrix.iter().all(|row| row.len() == n), "square matrix");
        let mut a = matrix;
        let mut swaps = Vec::new();
        let mut mult = Vec::new();
        let mut pivots = Vec::new();
        let mut parity = false;
        let mut prev: Option<R> = None;
        for k in 0..n {
            if a[k][k].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[i][k].is_zero());
                match swap {
                    Some(i) => {
                        a.swap(k, i);
                        swaps.push((k, i));
                        parity = !parity;
                    }
                    None => return Err(SolveError::Singular),
                }
            }
            let pivot = a[k][k].clone();
            let mut col = Vec::with_capacity(n.saturating_sub(k + 1));
            for i in k + 1..n {
                col.push(a[i][k].clone());
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = pivot.mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                    a[i][j] = match &prev {
                        None => num,
                        Some(p) => num
                            .divide_exact(p)
                            .expect("Bareiss interior division is exact"),
                    };
                }
                a[i][k] = R::zero();
            }
            mult.push(col);
            pivots.push(pivot.clone());
            prev = Some(pivot);
        }
        Ok(BareissSolver {
            n,
            swaps,
            mult,
            pivots,
            upper: a,
            swap_parity: parity,
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Determinant of the original matrix (the final pivot, up to the sign
    /// of the row transpositions).
    pub fn determinant(&self) -> R {
        let d = self.pivots[self.n - 1].clone();
        if self.swap_parity {
            d.neg()
        } else {
            d
        }
    }

    /// Solve `A x = b`. `Err(InexactDivision)` means the solution exists
    /// over the fraction field but not over the ring.
    pub fn solve(&self, rhs: Vec<R>) -> Result<Vec<R>, SolveError> {
        assert_eq!(rhs.len(), self.n);
        let n = self.n;
        let mut b = rhs;
        let mut swap_iter = self.swaps.iter().peekable();
        let mut prev: Option<&R> = None;
        for k in 0..n {
            while let Some(&&(sk, si)) = swap_iter.peek() {
                if sk == k {
                    b.swap(sk, si);
                    swap_iter.next();
                } else {
                    break;
                }
            }
            let pivot = &self.pivots[k];
            for i in k + 1..n {
                let num = pivot.mul(&b[i]).sub(&self.mult[k][i - k - 1].mul(&b[k]));
                b[i] = match prev {
                    None => num,
                    Some(p) => num
                        .divide_exact(p)
                        .expect("Bareiss replay division is exact"),
                };
            }
            prev = Some(pivot);
        }
        // Back substitution; divisions are exact iff the solution is in the ring.
        let mut x = vec![R::zero(); n];
        for i in (0..n).rev() {
            let mut acc = b[i].clone();
            for j in i + 1..n {
                acc = acc.sub(&self.upper[i][j].mul(&x[j]));
            }
            x[i] = acc
                .divide_exact(&self.upper[i][i])
                .ok_or(SolveError::InexactDivision)?;
        }
        Ok(x)
    }
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

pub type Mat64 = Vec<Vec<i64>>;

pub fn mat_identity(n: usize) -> Mat64 {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &Mat64, b: &Mat64) -> Mat64 {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for t in 0..k {
            let av = a[i][t];
            if av == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += av * b[t][j];
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat64, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn mat_transpose(a: &Mat64) -> Mat64 {
    let n = a.len();
    let m = a[0].len();
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Determinant by integer fraction-free elimination.
pub fn mat_det(a: &Mat64) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Inverse of an integer matrix with determinant +-1, via the adjugate.
pub fn mat_inverse_unimodular(a: &Mat64) -> Option<Mat64> {
    let n = a.len();
    let det = mat_det(a);
    let det_i: i64 = if det == BigInt::one() {
        1
    } else if det == -BigInt::one() {
        -1
    } else {
        return None;
    };
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            // cofactor C_{ji} / det
            let minor: Mat64 = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                .collect();
            let m = if n == 1 { BigInt::one() } else { mat_det(&minor) };
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            let val = m * sign * det_i;
            inv[i][j] = i64::try_from(val).expect("unimodular inverse entry fits i64");
        }
    }
    Some(inv)
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Smith normal form `D = U * A * V` with `U`, `V` unimodular. Returned
/// diagonal entries are nonnegative and each divides the next.
pub struct Snf {
    pub d: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub rank: usize,
}

pub fn smith_normal_form(a: &[Vec<BigInt>]) -> Snf {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| BigInt::from(i64::from(i == j))).collect())
        .collect();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| BigInt::from(i64::from(i == j))).collect())
        .collect();

    // row_i -= q * row_k on (d, u)
    fn row_op(d: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..d[0].len() {
            let sub = q * &d[k][j];
            d[i][j] -= sub;
        }
        for j in 0..u[0].len() {
            let sub = q * &u[k][j];
            u[i][j] -= sub;
        }
    }
    // col_j -= q * col_k on (d, v)
    fn col_op(d: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in d.iter_mut() {
            let sub = q * &row[k];
            row[j] -= sub;
        }
        for row in v.iter_mut() {
            let sub = q * &row[k];
            row[j] -= sub;
        }
    }
    fn col_swap(d: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], a: usize, b: usize) {
        for row in d.iter_mut() {
            row.swap(a, b);
        }
        for row in v.iter_mut() {
            row.swap(a, b);
        }
    }

    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot of minimal absolute value in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && best.map_or(true, |(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        if pi != t {
            d.swap(t, pi);
            u.swap(t, pi);
        }
        if pj != t {
            col_swap(&mut d, &mut v, t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = div_round(&d[i][t], &d[t][t]);
                row_op(&mut d, &mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    d.swap(t, i);
                    u.swap(t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = div_round(&d[t][j], &d[t][t]);
                col_op(&mut d, &mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    col_swap(&mut d, &mut v, t, j);
                    clean = false;
                }
            }
            let col_clear = (t + 1..rows).all(|i| d[i][t].is_zero());
            let row_clear = (t + 1..cols).all(|j| d[t][j].is_zero());
            if clean && col_clear && row_clear {
                break;
            }
        }
        t += 1;
    }

    let rank = (0..rows.min(cols))
        .take_while(|&i| !d[i][i].is_zero())
        .count();

    // Divisibility chain d_i | d_{i+1} via the 2x2 gcd/lcm fix. Off-diagonal
    // entries outside the (i, j) block stay zero because both rows and both
    // columns involved are zero away from the diagonal.
    for i in 0..rank {
        for j in i + 1..rank {
            if (&d[j][j] % &d[i][i]).is_zero() {
                continue;
            }
            let minus_one = BigInt::from(-1);
            col_op(&mut d, &mut v, i, j, &minus_one); // col_i += col_j
            loop {
                if d[j][i].is_zero() {
                    break;
                }
                let q = div_round(&d[i][i], &d[j][i]);
                row_op(&mut d, &mut u, i, j, &q);
                d.swap(i, j);
                u.swap(i, j);
            }
            let q = &d[i][j] / &d[i][i];
            col_op(&mut d, &mut v, j, i, &q);
        }
    }
    // Sign normalization.
    for i in 0..rank {
        if d[i][i].is_negative() {
            for j in 0..cols {
                d[i][j] = -d[i][j].clone();
            }
            for j in 0..rows {
                u[i][j] = -u[i][j].clone();
            }
        }
    }
    Snf { d, u, v, rank }
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // Rounded division keeps remainders small.
    let (q, r) = a.div_rem(b);
    let two_r: BigInt = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// A basis of the integer kernel of `a` (as the set of `x` with `a x = 0`).
pub fn integer_kernel(a: &[Vec<i64>], cols: usize) -> Vec<Vec<BigInt>> {
    let big: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    if big.is_empty() {
        return (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| BigInt::from(i64::from(i == j)))
                    .collect()
            })
            .collect();
    }
    let snf = smith_normal_form(&big);
    // a = U^{-1} D V^{-1}; a x = 0 iff D (V^{-1} x) = 0 iff V^{-1}x has
    // support on zero-diagonal coordinates; kernel basis = columns of V at
    // those coordinates.
    let mut basis = Vec::new();
    for j in snf.rank..cols {
        basis.push(snf.v.iter().map(|row| row[j].clone()).collect());
    }
    basis
}
