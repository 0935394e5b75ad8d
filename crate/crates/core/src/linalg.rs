//! Exact rational scalars and square-matrix linear algebra.
//!
//! Determinants use fraction-free (Bareiss) elimination over the integers
//! after each row is scaled by the lcm of its denominators. Inertia is
//! computed by symmetric congruence diagonalization, so no eigenvalues are
//! ever approximated.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact fraction in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num/den`, reduced. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `p/q` or `-p/q`. Rejects a zero denominator.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Dense square matrix of rationals, row-major, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![Rational::zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RatMatrix { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::domain("matrix rows must all have length n"));
        }
        Ok(RatMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rows and columns `idx` (0-based, in the given order).
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    pub fn row_sum(&self, i: usize) -> Rational {
        (0..self.n).map(|j| self.get(i, j)).sum()
    }

    /// Exact determinant; the 0x0 determinant is 1.
    pub fn det(&self) -> Rational {
        let n = self.n;
        if n == 0 {
            return Rational::one();
        }
        // Clear denominators row by row: det(A) = det(B) / prod(scale_i).
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            let l = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            m.push(
                row.iter()
                    .map(|x| x.numer() * (&l / x.denom()))
                    .collect(),
            );
            scale *= l;
        }
        Rational::new(bareiss(m), scale)
    }
}

/// Fraction-free Gaussian elimination; returns the exact integer determinant.
fn bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // Sylvester's identity guarantees exact division.
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Symmetric square matrix of rationals. The 0x0 matrix is valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymRatMatrix(RatMatrix);

impl SymRatMatrix {
    pub fn new(m: RatMatrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::domain("matrix is not symmetric"));
        }
        Ok(SymRatMatrix(m))
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        Self::new(RatMatrix::from_rows(rows)?)
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::new(RatMatrix::from_i64_rows(rows)?)
    }

    /// Builds from the lower triangle of `f`; `f(i, j)` is only called with `j <= i`.
    pub fn from_lower(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = RatMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                if i != j {
                    m.set(j, i, v.clone());
                }
                m.set(i, j, v);
            }
        }
        SymRatMatrix(m)
    }

    pub fn empty() -> Self {
        SymRatMatrix(RatMatrix::zeros(0))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }

    pub fn as_matrix(&self) -> &RatMatrix {
        &self.0
    }

    /// Principal submatrix on rows/columns `idx`.
    pub fn principal(&self, idx: &[usize]) -> Self {
        SymRatMatrix(self.0.submatrix(idx))
    }

    /// `U^T A U`.
    pub fn congruent(&self, u: &RatMatrix) -> Self {
        let n = self.dim();
        assert_eq!(u.dim(), n, "dimension mismatch");
        let au = RatMatrix::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k) * u.get(k, j)).sum());
        SymRatMatrix(RatMatrix::from_fn(n, |i, j| {
            (0..n).map(|k| u.get(k, i) * au.get(k, j)).sum()
        }))
    }

    pub fn det(&self) -> Rational {
        self.0.det()
    }

    pub fn inertia(&self) -> Inertia {
        inertia(self)
    }
}

/// Counts of positive, negative and zero eigenvalues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }
}

pub fn det_exact(m: &SymRatMatrix) -> Rational {
    m.det()
}

/// Inertia by congruence diagonalization (Sylvester's law of inertia).
///
/// A nonzero diagonal pivot is eliminated directly. When every remaining
/// diagonal entry is zero but some off-diagonal entry `c = M[a][b]` is not,
/// the block `[[0, c], [c, 0]]` is split off instead; it has one positive and
/// one negative eigenvalue.
pub fn inertia(m: &SymRatMatrix) -> Inertia {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut live: Vec<usize> = (0..n).collect();
    let mut out = Inertia {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };

    while !live.is_empty() {
        if let Some(pos) = live.iter().position(|&r| !a[r][r].is_zero()) {
            let p = live.swap_remove(pos);
            let pivot = a[p][p].clone();
            if pivot.is_positive() {
                out.n_plus += 1;
            } else {
                out.n_minus += 1;
            }
            for &i in &live {
                if a[i][p].is_zero() {
                    continue;
                }
                let f = &a[i][p] / &pivot;
                for &j in &live {
                    let d = &f * &a[p][j];
                    a[i][j] -= d;
                }
            }
            continue;
        }

        let pair = live.iter().enumerate().find_map(|(x, &r)| {
            live[x + 1..]
                .iter()
                .find(|&&s| !a[r][s].is_zero())
                .map(|&s| (r, s))
        });
        let Some((p, q)) = pair else {
            out.n_zero += live.len();
            break;
        };
        out.n_plus += 1;
        out.n_minus += 1;
        let c = a[p][q].clone();
        live.retain(|&r| r != p && r != q);
        // Schur complement of [[0, c], [c, 0]].
        let old: Vec<(Rational, Rational)> = live
            .iter()
            .map(|&i| (a[i][p].clone(), a[i][q].clone()))
            .collect();
        for (x, &i) in live.iter().enumerate() {
            for (y, &j) in live.iter().enumerate() {
                let d = (&old[x].0 * &old[y].1 + &old[x].1 * &old[y].0) / &c;
                a[i][j] -= d;
            }
        }
    }
    out
}

/// `(-1)^{n_minus}`.
pub fn matrix_sign(m: &SymRatMatrix) -> i32 {
    if inertia(m).n_minus.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `n_plus - n_minus`.
pub fn signature(m: &SymRatMatrix) -> i64 {
    let i = inertia(m);
    i.n_plus as i64 - i.n_minus as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(rows: &[&[i64]]) -> SymRatMatrix {
        SymRatMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn empty_conventions() {
        let e = SymRatMatrix::empty();
        assert_eq!(det_exact(&e), int(1));
        assert_eq!(matrix_sign(&e), 1);
        assert_eq!(signature(&e), 0);
        assert_eq!(inertia(&e).dim(), 0);
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_exact(&sym(&[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]])), int(4));
        assert_eq!(det_exact(&sym(&[&[3, 1], &[1, -3]])), int(-10));
        let m = SymRatMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 3), ratio(-5, 7)],
        ])
        .unwrap();
        // -5/14 - 1/9
        assert_eq!(det_exact(&m), ratio(-59, 126));
    }

    #[test]
    fn det_needs_row_swap() {
        let m = RatMatrix::from_i64_rows(&[&[0, 1], &[2, 3]]).unwrap();
        assert_eq!(m.det(), int(-2));
        let z = RatMatrix::from_i64_rows(&[&[0, 1], &[0, 3]]).unwrap();
        assert_eq!(z.det(), int(0));
    }

    #[test]
    fn inertia_examples() {
        let i = inertia(&sym(&[&[2, 1], &[1, 2]]));
        assert_eq!((i.n_plus, i.n_minus, i.n_zero), (2, 0, 0));
        let i = inertia(&sym(&[&[5, 2], &[2, -5]]));
        assert_eq!((i.n_plus, i.n_minus, i.n_zero), (1, 1, 0));
        let i = inertia(&sym(&[&[0]]));
        assert_eq!((i.n_plus, i.n_minus, i.n_zero), (0, 0, 1));
        assert_eq!(matrix_sign(&sym(&[&[5, 2], &[2, -5]])), -1);
        assert_eq!(matrix_sign(&sym(&[&[2, 1], &[1, 2]])), 1);
        assert_eq!(signature(&sym(&[&[2, 1], &[1, 2]])), 2);
        assert_eq!(signature(&sym(&[&[4, 1], &[1, -4]])), 0);
    }

    #[test]
    fn inertia_hyperbolic_block() {
        // Zero diagonal throughout: eigenvalues 2, -1, -1.
        let i = inertia(&sym(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]]));
        assert_eq!((i.n_plus, i.n_minus, i.n_zero), (1, 2, 0));
        let i = inertia(&sym(&[&[0, 0], &[0, 0]]));
        assert_eq!((i.n_plus, i.n_minus, i.n_zero), (0, 0, 2));
        // Eigenvalues 0, +-sqrt(2).
        let i = inertia(&sym(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]));
        assert_eq!((i.n_plus, i.n_minus, i.n_zero), (1, 1, 1));
    }

    #[test]
    fn rejects_asymmetric() {
        assert!(SymRatMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]).is_err());
        assert!(RatMatrix::from_i64_rows(&[&[1, 2], &[3]]).is_err());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("4/2"), Some(int(2)));
        assert_eq!(parse_rational("-7/2"), Some(ratio(-7, 2)));
        assert_eq!(parse_rational("5"), Some(int(5)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(int(3).to_string(), "3");
        assert_eq!(ratio(6, -4).to_string(), "-3/2");
    }
}
