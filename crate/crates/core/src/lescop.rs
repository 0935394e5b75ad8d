//! Lescop's surgery formula for framed links in S^3.
//!
//! Indices here are 1-based component labels, as in [`crate::link`]; the
//! matrix passed to [`path_sum`], [`lk_c`] and [`theta_b`] is the full
//! surgery matrix, whose row `i - 1` belongs to component `i`.
//!
//! The `Theta_b` chain sums are evaluated with a Held-Karp style subset DP:
//! `P(i, j, S)` is the sum over all orderings `g` of `S` of
//! `A(i, g1) A(g1, g2) ... A(gm, j)`, with `P(i, j, {}) = A(i, j)` including
//! the diagonal. Memoizing on `(i, j, S)` replaces `m!` orderings with
//! `O(2^m m^2)` work.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dedekind::dedekind_fast;
use crate::error::{Error, Result};
use crate::link::{FramedLink, SubsetIndex};
use crate::linalg::{det_exact, inertia, int, Rational, SymRatMatrix};

/// Dedekind-sum evaluator used by the surgery formula.
pub type DedekindFn = fn(&BigInt, &BigInt) -> Result<Rational>;

/// Memo for [`path_sum`] over one fixed matrix.
pub struct PathSumCache<'a> {
    a: &'a SymRatMatrix,
    memo: HashMap<(usize, usize, u64), Rational>,
}

impl<'a> PathSumCache<'a> {
    pub fn new(a: &'a SymRatMatrix) -> Self {
        PathSumCache {
            a,
            memo: HashMap::new(),
        }
    }

    pub fn matrix(&self) -> &SymRatMatrix {
        self.a
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    fn entry(&self, i: usize, j: usize) -> &Rational {
        self.a.get(i - 1, j - 1)
    }

    /// `P(i, j, S)`; `S` must avoid `i` and `j`.
    pub fn path_sum(&mut self, i: usize, j: usize, s: SubsetIndex) -> Result<Rational> {
        let n = self.a.dim();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::domain(format!("path endpoints ({i}, {j}) out of range 1..{n}")));
        }
        if !s.is_subset_of(&SubsetIndex::full(n)) {
            return Err(Error::domain(format!("subset {{{s}}} out of range 1..{n}")));
        }
        if s.contains(i) || s.contains(j) {
            return Err(Error::domain(format!(
                "intermediate set {{{s}}} must not contain the endpoints {i}, {j}"
            )));
        }
        Ok(self.path_sum_unchecked(i, j, s))
    }

    fn path_sum_unchecked(&mut self, i: usize, j: usize, s: SubsetIndex) -> Rational {
        if s.is_empty() {
            return self.entry(i, j).clone();
        }
        let key = (i, j, s.mask());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let mut total = Rational::zero();
        for k in s.members() {
            let a_ik = self.entry(i, k).clone();
            if a_ik.is_zero() {
                continue;
            }
            total += a_ik * self.path_sum_unchecked(k, j, s.remove(k));
        }
        self.memo.insert(key, total.clone());
        total
    }

    fn lk_c_unchecked(&mut self, j: SubsetIndex) -> Rational {
        let m = j.first().expect("nonempty");
        self.path_sum_unchecked(m, m, j.remove(m))
    }

    fn theta_b_unchecked(&mut self, subset: SubsetIndex) -> Rational {
        let mut total = Rational::zero();
        for j in subset.subsets().filter(|j| !j.is_empty()) {
            let cyc = self.lk_c_unchecked(j);
            if cyc.is_zero() {
                continue;
            }
            let rest = subset.difference(&j);
            let members: Vec<usize> = j.members().collect();
            let mut chains = Rational::zero();
            for &a in &members {
                for &b in &members {
                    chains += self.path_sum_unchecked(a, b, rest);
                }
            }
            total += cyc * chains;
        }
        total
    }
}

fn check_nonempty_in(a: &SymRatMatrix, s: &SubsetIndex, what: &str) -> Result<()> {
    if s.is_empty() {
        return Err(Error::domain(format!("{what} needs a nonempty index set")));
    }
    if !s.is_subset_of(&SubsetIndex::full(a.dim())) {
        return Err(Error::domain(format!(
            "subset {{{s}}} out of range 1..{}",
            a.dim()
        )));
    }
    Ok(())
}

/// `P(i, j, S)` with a fresh cache.
pub fn path_sum(a: &SymRatMatrix, i: usize, j: usize, s: &SubsetIndex) -> Result<Rational> {
    PathSumCache::new(a).path_sum(i, j, *s)
}

/// Cyclic linking sum `Lk_c(A_J) = P(m, m, J \ {m})`, `m = min J`.
///
/// Each cyclic ordering of `J` is counted once; a singleton gives its
/// diagonal entry.
pub fn lk_c(a: &SymRatMatrix, j: &SubsetIndex) -> Result<Rational> {
    check_nonempty_in(a, j, "Lk_c")?;
    Ok(PathSumCache::new(a).lk_c_unchecked(*j))
}

/// `Theta_b(A_I) = sum_{J} Lk_c(A_J) sum_{(i,j) in J^2} P(i, j, I \ J)`
/// over nonempty `J` within `I`.
pub fn theta_b(a: &SymRatMatrix, subset: &SubsetIndex) -> Result<Rational> {
    check_nonempty_in(a, subset, "Theta_b")?;
    Ok(PathSumCache::new(a).theta_b_unchecked(*subset))
}

fn theta_with(cache: &mut PathSumCache<'_>, link: &FramedLink, subset: SubsetIndex) -> Rational {
    let base = cache.theta_b_unchecked(subset);
    let members: Vec<usize> = subset.members().collect();
    match members[..] {
        [i] => {
            let q = link.framing(i).denom();
            let q2 = q * q;
            base + Rational::new(&q2 + BigInt::one(), q2)
        }
        [i, j] => base - int(2 * link.linking(i, j)),
        _ => base,
    }
}

/// `Theta(A_I)`: `Theta_b` plus `(q_i^2 + 1)/q_i^2` for a singleton, minus
/// `2 n_ij` for a pair.
pub fn theta(link: &FramedLink, subset: &SubsetIndex) -> Result<Rational> {
    let a = link.surgery_matrix();
    check_nonempty_in(&a, subset, "Theta")?;
    let mut cache = PathSumCache::new(&a);
    Ok(theta_with(&mut cache, link, *subset))
}

/// `A((L, s)_{N \ I}; I)`: the restriction to the complement of `I`, with
/// diagonal `s_i + sum_{k in I} n_ki`.
pub fn reduced_matrix(link: &FramedLink, subset: &SubsetIndex) -> Result<SymRatMatrix> {
    let n = link.n();
    let full = SubsetIndex::full(n);
    if !subset.is_subset_of(&full) {
        return Err(Error::domain(format!("subset {{{subset}}} out of range 1..{n}")));
    }
    let rest: Vec<usize> = full.difference(subset).members().collect();
    Ok(SymRatMatrix::from_lower(rest.len(), |x, y| {
        let (i, j) = (rest[x], rest[y]);
        if i == j {
            let shift: i64 = subset.members().map(|k| link.linking(k, i)).sum();
            link.framing(i) + int(shift)
        } else {
            int(link.linking(i, j))
        }
    }))
}

/// Plain principal restriction of the surgery matrix to the complement of `I`.
fn complement_matrix(a: &SymRatMatrix, subset: &SubsetIndex) -> SymRatMatrix {
    let rest = SubsetIndex::full(a.dim()).difference(subset).rows();
    a.principal(&rest)
}

/// `|H_1|` of the surgered manifold, 0 when it is infinite.
pub fn h1_order(link: &FramedLink) -> BigInt {
    let a = link.surgery_matrix();
    h1_from(link, &a, crate::linalg::matrix_sign(&a))
}

fn h1_from(link: &FramedLink, a: &SymRatMatrix, sign: i32) -> BigInt {
    let v = det_exact(a) * Rational::from_integer(link.denominator_product()) * int(sign as i64);
    debug_assert!(v.is_integer() && v >= Rational::zero(), "|H_1| = {v}");
    v.to_integer()
}

/// The Casson-Walker-Lescop invariant `lambda` of surgery on `link`.
pub fn lescop_lambda(link: &FramedLink) -> Rational {
    lescop_lambda_with(link, dedekind_fast)
}

/// [`lescop_lambda`] with an explicit Dedekind-sum evaluator.
pub fn lescop_lambda_with(link: &FramedLink, dedekind: DedekindFn) -> Rational {
    let n = link.n();
    let a = link.surgery_matrix();
    let inert = inertia(&a);
    let sign: i32 = if inert.n_minus.is_multiple_of(2) { 1 } else { -1 };
    let q_prod = Rational::from_integer(link.denominator_product());
    let mut cache = PathSumCache::new(&a);

    let mut conway = Rational::zero();
    let mut theta_sum = Rational::zero();
    for subset in SubsetIndex::nonempty_subsets(n) {
        let a1 = link.a1(&subset);
        if a1 != 0 {
            let reduced = reduced_matrix(link, &subset).expect("subset in range");
            conway += det_exact(&reduced) * int(a1);
        }
        let d = det_exact(&complement_matrix(&a, &subset));
        if d.is_zero() {
            continue;
        }
        let th = theta_with(&mut cache, link, subset);
        if subset.len() % 2 == 0 {
            theta_sum += d * th;
        } else {
            theta_sum -= d * th;
        }
    }

    let scale = &q_prod * int(sign as i64);
    let h1 = Rational::from_integer(h1_from(link, &a, sign));
    let sig = inert.n_plus as i64 - inert.n_minus as i64;
    let dedekind_total: Rational = link
        .framings()
        .iter()
        .map(|s| dedekind(s.numer(), s.denom()).expect("framing denominators are positive"))
        .sum();

    &scale * conway
        + &scale * theta_sum / int(24)
        + h1 * (Rational::new(BigInt::from(sig), BigInt::from(8)) + dedekind_total / int(2))
}

/// The Casson-Walker invariant `lambda_w = 2 lambda / |H_1|`.
pub fn walker_lambda(link: &FramedLink) -> Result<Rational> {
    let h1 = h1_order(link);
    if h1.is_zero() {
        return Err(Error::NotRationalHomologySphere);
    }
    Ok(int(2) * lescop_lambda(link) / Rational::from_integer(h1))
}
