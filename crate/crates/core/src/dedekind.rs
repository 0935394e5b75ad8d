//! Sawtooth function and Dedekind sums.
//!
//! `s(p, q) = sum_{i=1}^{q} ((i/q)) ((p i/q))`, where `((x))` is 0 on the
//! integers and `x - floor(x) - 1/2` elsewhere.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Rational;

/// Largest modulus the direct sum accepts; keeps the i128 accumulator exact.
pub const DIRECT_MAX_Q: u64 = 1 << 40;

pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        Rational::zero()
    } else {
        x - x.floor() - Rational::new(BigInt::one(), BigInt::from(2))
    }
}

/// Definitional evaluation, O(q).
///
/// Each factor `((k/q))` with `0 < k < q` is `(2k - q) / 2q`, so the sum is
/// an integer over `4q^2`.
pub fn dedekind_direct(p: &BigInt, q: &BigInt) -> Result<Rational> {
    if !q.is_positive() {
        return Err(Error::domain(format!("Dedekind sum needs q >= 1, got {q}")));
    }
    let qq = q
        .to_u64()
        .filter(|&v| v <= DIRECT_MAX_Q)
        .ok_or_else(|| Error::domain(format!("modulus {q} too large for direct summation")))?;
    let pr = p.mod_floor(q).to_u64().expect("reduced residue fits");
    let (q128, p128) = (qq as i128, pr as i128);
    let mut acc: i128 = 0;
    let mut r: i128 = 0;
    for i in 1..q128 {
        r += p128;
        if r >= q128 {
            r -= q128;
        }
        if r != 0 {
            acc += (2 * i - q128) * (2 * r - q128);
        }
    }
    Ok(Rational::new(BigInt::from(acc), BigInt::from(4) * q * q))
}

/// Reciprocity-based evaluation, O(log q) steps.
///
/// For coprime `0 < p < q`,
/// `s(p, q) = -s(q mod p, p) - 1/4 + (p/q + q/p + 1/(pq)) / 12`.
/// Non-coprime arguments fall back to [`dedekind_direct`].
pub fn dedekind_fast(p: &BigInt, q: &BigInt) -> Result<Rational> {
    if !q.is_positive() {
        return Err(Error::domain(format!("Dedekind sum needs q >= 1, got {q}")));
    }
    let mut a = p.mod_floor(q);
    if !a.gcd(q).is_one() {
        return dedekind_direct(p, q);
    }
    let mut b = q.clone();
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    let twelve = BigInt::from(12);
    let mut acc = Rational::zero();
    let mut sign = 1i32;
    // Invariant: s(p, q) = acc + sign * s(a, b), with 0 <= a < b coprime.
    while !a.is_zero() {
        let ab = &a * &b;
        let term = Rational::new(&a * &a + &b * &b + BigInt::one(), ab * &twelve) - &quarter;
        if sign > 0 {
            acc += term;
        } else {
            acc -= term;
        }
        sign = -sign;
        let next = b.mod_floor(&a);
        b = a;
        a = next;
    }
    // s(0, 1) = 0
    Ok(acc)
}
