//! Independent reference implementations used only by the test suites.
//!
//! None of these call the elimination, inertia or subset-DP code paths of
//! the library.

#![allow(dead_code)]

use cwl::link::SubsetIndex;
use cwl::{dedekind_direct, reduced_matrix, FramedLink, RatMatrix, Rational, SymRatMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Laplace expansion along the first row.
pub fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    if n == 0 {
        return Rational::one();
    }
    let mut total = Rational::zero();
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * cofactor_det(&minor);
        if col % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

pub fn rows_of(m: &RatMatrix) -> Vec<Vec<Rational>> {
    (0..m.dim())
        .map(|i| (0..m.dim()).map(|j| m.get(i, j).clone()).collect())
        .collect()
}

pub fn sym_rows(m: &SymRatMatrix) -> Vec<Vec<Rational>> {
    rows_of(m.as_matrix())
}

/// Characteristic polynomial coefficients `c[0..=n]` of `det(xI - A)`,
/// lowest degree first, by Faddeev-LeVerrier.
pub fn char_poly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut v: Rational = (0..n).map(|t| &a[i][t] * &m[t][j]).sum();
                if i == j {
                    v += &c[n - k + 1];
                }
                next[i][j] = v;
            }
        }
        m = next;
        let tr: Rational = (0..n)
            .map(|i| (0..n).map(|t| &a[i][t] * &m[t][i]).sum::<Rational>())
            .sum();
        c[n - k] = -tr / int(k as i64);
    }
    c
}

fn sign_changes(coeffs: &[Rational]) -> usize {
    let signs: Vec<bool> = coeffs
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `(n_plus, n_minus, n_zero)` from the characteristic polynomial. It has
/// only real roots, so Descartes' rule of signs counts exactly.
pub fn inertia_oracle(a: &[Vec<Rational>]) -> (usize, usize, usize) {
    let c = char_poly(a);
    let n_zero = c.iter().take_while(|v| v.is_zero()).count();
    let stripped = &c[n_zero..];
    let n_plus = sign_changes(stripped);
    let flipped: Vec<Rational> = stripped
        .iter()
        .enumerate()
        .map(|(k, v)| if k % 2 == 1 { -v.clone() } else { v.clone() })
        .collect();
    let n_minus = sign_changes(&flipped);
    (n_plus, n_minus, n_zero)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// `Theta_b(A_I)` by literal enumeration of `(J, i, j, g)`: every
/// permutation of `J` is enumerated and the cyclic product divided by `#J`
/// (each cyclic order appears `#J` times), and every ordering `g` of
/// `I \ J` is walked explicitly. Indices are 0-based matrix rows.
pub fn theta_b_bruteforce(a: &[Vec<Rational>], subset: &[usize]) -> Rational {
    let mut total = Rational::zero();
    let k = subset.len();
    for bits in 1u32..(1 << k) {
        let j: Vec<usize> = (0..k).filter(|b| bits & (1 << b) != 0).map(|b| subset[b]).collect();
        let rest: Vec<usize> = (0..k).filter(|b| bits & (1 << b) == 0).map(|b| subset[b]).collect();
        let mut cyc = Rational::zero();
        for sigma in permutations(&j) {
            let mut prod = Rational::one();
            for t in 0..sigma.len() {
                prod *= &a[sigma[t]][sigma[(t + 1) % sigma.len()]];
            }
            cyc += prod;
        }
        cyc /= int(j.len() as i64);
        let orderings = permutations(&rest);
        let mut chains = Rational::zero();
        for &i in &j {
            for &jj in &j {
                for g in &orderings {
                    let mut walk = vec![i];
                    walk.extend(g);
                    walk.push(jj);
                    let mut prod = Rational::one();
                    for w in walk.windows(2) {
                        prod *= &a[w[0]][w[1]];
                    }
                    chains += prod;
                }
            }
        }
        total += cyc * chains;
    }
    total
}

/// Surgery-formula reference built from the oracles above.
pub fn lambda_reference(link: &FramedLink) -> Rational {
    let n = link.n();
    let a = sym_rows(&link.surgery_matrix());
    let (n_plus, n_minus, _) = inertia_oracle(&a);
    let sign = if n_minus % 2 == 0 { int(1) } else { int(-1) };
    let qprod = Rational::from_integer(link.denominator_product());
    let mut first = Rational::zero();
    let mut second = Rational::zero();
    for mask in 1u64..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|b| mask & (1 << b) != 0).collect();
        let rest: Vec<usize> = (0..n).filter(|b| mask & (1 << b) == 0).collect();
        let subset = SubsetIndex::from_members(&members.iter().map(|m| m + 1).collect::<Vec<_>>()).unwrap();
        let reduced = reduced_matrix(link, &subset).unwrap();
        first += cofactor_det(&sym_rows(&reduced)) * int(link.a1(&subset));
        let plain: Vec<Vec<Rational>> = rest
            .iter()
            .map(|&i| rest.iter().map(|&j| a[i][j].clone()).collect())
            .collect();
        let mut theta = theta_b_bruteforce(&a, &members);
        if members.len() == 1 {
            let q = link.framing(members[0] + 1).denom().clone();
            theta += Rational::new(&q * &q + 1, &q * &q);
        } else if members.len() == 2 {
            theta -= int(2 * link.linking(members[0] + 1, members[1] + 1));
        }
        let term = cofactor_det(&plain) * theta / int(24);
        if members.len().is_multiple_of(2) {
            second += term;
        } else {
            second -= term;
        }
    }
    let h1 = &sign * &qprod * cofactor_det(&a);
    let ded: Rational = link
        .framings()
        .iter()
        .map(|s| dedekind_direct(s.numer(), s.denom()).unwrap())
        .sum();
    &sign * &qprod * (first + second)
        + h1 * (ratio(n_plus as i64 - n_minus as i64, 8) + ded / int(2))
}

/// Lens closed form evaluated with the definitional Dedekind sum.
pub fn lens_reference(p: i64, q: i64) -> Rational {
    let s = dedekind_direct(&BigInt::from(p), &BigInt::from(q)).unwrap();
    let (p, q) = (int(p), int(q));
    &q * (ratio(-1, 24) - (&p * &p + int(1)) / (int(24) * &q * &q)) + &p / int(8) + &p * s / int(2)
}

pub fn random_link(r: &mut StdRng, n: usize, lk_range: i64, max_q: i64, frame_range: i64) -> FramedLink {
    let framings = (0..n)
        .map(|_| {
            let q = r.gen_range(1..=max_q);
            ratio(r.gen_range(-frame_range..=frame_range), q)
        })
        .collect();
    let mut link = FramedLink::new(framings).unwrap();
    for i in 1..=n {
        for j in i + 1..=n {
            link.set_linking(i, j, r.gen_range(-lk_range..=lk_range)).unwrap();
        }
    }
    link
}

pub fn random_sym(r: &mut StdRng, n: usize, range: i64) -> SymRatMatrix {
    SymRatMatrix::from_lower(n, |_, _| int(r.gen_range(-range..=range)))
}

/// Product of random elementary integer operations; determinant +-1.
pub fn random_unimodular(r: &mut StdRng, n: usize, ops: usize) -> RatMatrix {
    let mut u = RatMatrix::from_fn(n, |i, j| if i == j { int(1) } else { int(0) });
    if n < 2 {
        return u;
    }
    for _ in 0..ops {
        let i = r.gen_range(0..n);
        let mut j = r.gen_range(0..n);
        while j == i {
            j = r.gen_range(0..n);
        }
        match r.gen_range(0..3) {
            0 => {
                let f = int(r.gen_range(-3..=3));
                for c in 0..n {
                    let v = u.get(i, c) + &f * u.get(j, c);
                    u.set(i, c, v);
                }
            }
            1 => {
                for c in 0..n {
                    let (a, b) = (u.get(i, c).clone(), u.get(j, c).clone());
                    u.set(i, c, b);
                    u.set(j, c, a);
                }
            }
            _ => {
                for c in 0..n {
                    let v = -u.get(i, c).clone();
                    u.set(i, c, v);
                }
            }
        }
    }
    u
}

pub fn bigint(v: i64) -> BigInt {
    BigInt::from(v)
}
