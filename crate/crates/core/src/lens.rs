//! Lens spaces: the closed-form `lambda(L(p, q))`, the chain-to-lens
//! continued fraction, and sweep checks of the lens-space families.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::dedekind::{dedekind_direct, dedekind_fast};
use crate::error::{Error, Result};
use crate::lescop::{lescop_lambda_with, DedekindFn};
use crate::link::FramedLink;
use crate::linalg::{int, Rational};
use crate::moves::{mirror_lambda, tn_path};

/// `L(p, q)` with `p, q >= 1` coprime and `q <= p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LensSpace {
    p: BigInt,
    q: BigInt,
}

impl LensSpace {
    /// Validates coprimality. `q > p` is reduced mod `p`.
    pub fn new(p: BigInt, q: BigInt) -> Result<Self> {
        if !p.is_positive() || !q.is_positive() {
            return Err(Error::domain(format!("L({p}, {q}) needs positive p and q")));
        }
        if !p.gcd(&q).is_one() {
            return Err(Error::domain(format!("L({p}, {q}): p and q are not coprime")));
        }
        let q = if q > p {
            let r = q.mod_floor(&p);
            if r.is_zero() {
                BigInt::one()
            } else {
                r
            }
        } else {
            q
        };
        Ok(LensSpace { p, q })
    }

    pub fn from_i64(p: i64, q: i64) -> Result<Self> {
        Self::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({}, {})", self.p, self.q)
    }
}

/// `q (-1/24 - (p^2 + 1)/(24 q^2)) + p/8 + p s(p, q)/2`.
pub fn lens_lambda(lens: &LensSpace) -> Rational {
    lens_lambda_with(lens, dedekind_fast)
}

pub fn lens_lambda_with(lens: &LensSpace, dedekind: DedekindFn) -> Rational {
    let p = Rational::from_integer(lens.p.clone());
    let q = Rational::from_integer(lens.q.clone());
    let s = dedekind(&lens.p, &lens.q).expect("q >= 1");
    let two = int(2);
    &q * (Rational::new(BigInt::from(-1), BigInt::from(24))
        - (&p * &p + int(1)) / (int(24) * &q * &q))
        + &p / int(8)
        + &p * s / two
}

/// `-p s(q, p) / 2`, an equivalent form via Dedekind reciprocity. Uses the
/// definitional Dedekind sum, so its cost is linear in `p`.
pub fn lens_lambda_alt(lens: &LensSpace) -> Result<Rational> {
    let s = dedekind_direct(&lens.q, &lens.p)?;
    Ok(-Rational::from_integer(lens.p.clone()) * s / int(2))
}

/// Integer chain `a_1, ..., a_k` with an optional rational tail `t`,
/// read as `a_1 - 1/(a_2 - 1/(... - 1/(a_k - t)))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPresentation {
    pub coeffs: Vec<BigInt>,
    pub tail: Option<Rational>,
}

impl ChainPresentation {
    pub fn new(coeffs: Vec<BigInt>, tail: Option<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a chain needs at least one coefficient"));
        }
        Ok(ChainPresentation { coeffs, tail })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| BigInt::from(a)).collect(), None)
    }

    /// The chain link itself (integer coefficients only).
    pub fn to_link(&self) -> Result<FramedLink> {
        if self.tail.is_some() {
            return Err(Error::domain("chain link with a rational tail is not built"));
        }
        FramedLink::chain(
            self.coeffs
                .iter()
                .map(|a| Rational::from_integer(a.clone()))
                .collect(),
        )
    }
}

/// Evaluates the continued fraction and returns `(p, q)` reduced, `q > 0`.
/// A negative `p` is reported rather than reoriented.
pub fn chain_to_lens(chain: &ChainPresentation) -> Result<(BigInt, BigInt)> {
    let last = chain.coeffs.last().expect("nonempty chain");
    let mut x = Rational::from_integer(last.clone());
    if let Some(t) = &chain.tail {
        x -= t;
    }
    for (k, a) in chain.coeffs.iter().enumerate().rev().skip(1) {
        if x.is_zero() {
            return Err(Error::DegenerateChain(format!(
                "partial fraction after coefficient {} is 0",
                k + 2
            )));
        }
        x = Rational::from_integer(a.clone()) - x.recip();
    }
    if x.is_negative() {
        return Err(Error::DegenerateChain(format!(
            "chain evaluates to {x} < 0; orientation reversal is not applied"
        )));
    }
    Ok((x.numer().clone(), x.denom().clone()))
}

/// For `T(n)` with framings `(a/b, -a/b)`: the lens space it presents when
/// `a = n b + 1`, namely `L(2n^2 b^2 + 2nb + 1, 2nb^2)`.
pub fn tn_lens_condition(n: i64, s: &Rational) -> Option<LensSpace> {
    if n < 1 {
        return None;
    }
    let (a, b) = (s.numer(), s.denom());
    let nb = BigInt::from(n) * b;
    if *a != &nb + 1 {
        return None;
    }
    let p = BigInt::from(2) * &nb * &nb + BigInt::from(2) * &nb + 1;
    let q = BigInt::from(2) * &nb * b;
    LensSpace::new(p, q).ok()
}

/// `b^2 (n^3 - n) / 12`.
pub fn tn_closed_form(n: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(b * b) * (n * n * n - n), BigInt::from(12))
}

/// Outcome of one sweep family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepCheck {
    pub name: &'static str,
    pub instances: usize,
    /// Instance label and a description of the mismatch.
    pub first_failure: Option<(String, String)>,
}

impl SweepCheck {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub checks: Vec<SweepCheck>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(SweepCheck::passed)
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.first_failure {
                None => writeln!(f, "PASS {} ({} instances)", c.name, c.instances)?,
                Some((at, why)) => writeln!(
                    f,
                    "FAIL {} ({} instances): first failure at {at}: {why}",
                    c.name, c.instances
                )?,
            }
        }
        let failed = self.checks.iter().filter(|c| !c.passed()).count();
        if failed == 0 {
            write!(f, "all {} checks passed", self.checks.len())
        } else {
            write!(f, "{failed} of {} checks failed", self.checks.len())
        }
    }
}

struct Sweep {
    check: SweepCheck,
}

impl Sweep {
    fn new(name: &'static str) -> Self {
        Sweep {
            check: SweepCheck {
                name,
                instances: 0,
                first_failure: None,
            },
        }
    }

    fn expect_eq(&mut self, at: impl FnOnce() -> String, got: &Rational, want: &Rational) {
        self.check.instances += 1;
        if got != want && self.check.first_failure.is_none() {
            self.check.first_failure = Some((at(), format!("got {got}, expected {want}")));
        }
    }

    fn fail(&mut self, at: String, why: String) {
        self.check.instances += 1;
        if self.check.first_failure.is_none() {
            self.check.first_failure = Some((at, why));
        }
    }
}

/// Highest `r` for the Hopf family run through the general surgery formula.
pub const HOPF_SWEEP_MAX: i64 = 30;
/// Highest `p` in the unknot-vs-lens calibration sweep.
pub const UNKNOT_SWEEP_MAX: i64 = 30;
/// Chain framings range over `2..=CHAIN_SWEEP_MAX`.
pub const CHAIN_SWEEP_MAX: i64 = 6;

/// Runs the lens-space family checks with the default Dedekind evaluator.
pub fn verify_sweeps(max_r: i64, max_nb: i64) -> SweepReport {
    verify_sweeps_with(max_r, max_nb, dedekind_fast)
}

/// Runs every family with `dedekind` substituted for the Dedekind sum in
/// all closed forms and in the surgery formula.
pub fn verify_sweeps_with(max_r: i64, max_nb: i64, dedekind: DedekindFn) -> SweepReport {
    let ded = |p: &BigInt, q: &BigInt| dedekind(p, q).expect("q >= 1");
    let lens = |p: i64, q: i64| lens_lambda_with(&LensSpace::from_i64(p, q).unwrap(), dedekind);
    let mut checks = Vec::new();

    let mut t2 = Sweep::new("lambda(L(r^2+1, r)) = 0");
    for r in 1..=max_r {
        t2.expect_eq(|| format!("r = {r}"), &lens(r * r + 1, r), &int(0));
    }
    for r in 1..=max_r.min(HOPF_SWEEP_MAX) {
        let hopf = FramedLink::two_component(int(r), int(-r), 1);
        t2.expect_eq(
            || format!("r = {r} (surgery formula)"),
            &lescop_lambda_with(&hopf, dedekind),
            &int(0),
        );
    }
    checks.push(t2.check);

    let mut c1 = Sweep::new("s(r^2+1, r) = (r^2-3r+2)/(12r)");
    for r in 1..=max_r {
        let got = ded(&BigInt::from(r * r + 1), &BigInt::from(r));
        let want = Rational::new(BigInt::from(r * r - 3 * r + 2), BigInt::from(12 * r));
        c1.expect_eq(|| format!("r = {r}"), &got, &want);
    }
    checks.push(c1.check);

    let mut t3 = Sweep::new("lambda(L(2n^2b^2+2nb+1, 2nb^2)) = b^2(n^3-n)/12");
    for n in 1..=max_nb {
        for b in 1..=max_nb {
            let at = || format!("(n, b) = ({n}, {b})");
            let want = tn_closed_form(n, b);
            let p = 2 * n * n * b * b + 2 * n * b + 1;
            let q = 2 * n * b * b;
            t3.expect_eq(at, &lens(p, q), &want);
            let s = Rational::new(BigInt::from(n * b + 1), BigInt::from(b));
            match tn_path(n, s).and_then(|path| mirror_lambda(&path)) {
                Ok(v) => t3.expect_eq(|| format!("(n, b) = ({n}, {b}) (mirror path)"), &v, &want),
                Err(e) => t3.fail(at(), e.to_string()),
            }
        }
    }
    checks.push(t3.check);

    let mut c2 = Sweep::new("s(2n^2b^2+2nb+1, 2nb^2) = (2n^2b^2-3nb^2+1)/(12nb^2)");
    for n in 1..=max_nb {
        for b in 1..=max_nb {
            let p = 2 * n * n * b * b + 2 * n * b + 1;
            let q = 2 * n * b * b;
            let got = ded(&BigInt::from(p), &BigInt::from(q));
            let want = Rational::new(
                BigInt::from(2 * n * n * b * b - 3 * n * b * b + 1),
                BigInt::from(12 * n * b * b),
            );
            c2.expect_eq(|| format!("(n, b) = ({n}, {b})"), &got, &want);
        }
    }
    checks.push(c2.check);

    let mut unknot = Sweep::new("surgery formula on p/q unknot = lambda(L(p, q))");
    for p in 2..=UNKNOT_SWEEP_MAX {
        for q in (1..p).filter(|q| q.gcd(&p) == 1) {
            let link = FramedLink::unknot(Rational::new(BigInt::from(p), BigInt::from(q)));
            unknot.expect_eq(
                || format!("p/q = {p}/{q}"),
                &lescop_lambda_with(&link, dedekind),
                &lens(p, q),
            );
        }
    }
    checks.push(unknot.check);

    let mut chains = Sweep::new("surgery formula on chain = lambda(chain lens space)");
    for len in 1..=3u32 {
        for coeffs in framing_tuples(len as usize, 2, CHAIN_SWEEP_MAX) {
            let at = || format!("chain {coeffs:?}");
            let chain = ChainPresentation::from_i64(&coeffs).unwrap();
            let link = chain.to_link().unwrap();
            match chain_to_lens(&chain).and_then(|(p, q)| LensSpace::new(p, q)) {
                Ok(l) => chains.expect_eq(
                    at,
                    &lescop_lambda_with(&link, dedekind),
                    &lens_lambda_with(&l, dedekind),
                ),
                Err(e) => chains.fail(at(), e.to_string()),
            }
        }
    }
    checks.push(chains.check);

    SweepReport { checks }
}

/// All `len`-tuples over `lo..=hi`, lexicographic.
pub fn framing_tuples(len: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (lo..=hi).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}
