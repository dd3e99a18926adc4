//! Dense univariate polynomials, coefficient `i` is the coefficient of `x^i`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Exact quotient of integer polynomials, `divisor` monic.
pub(crate) fn div_exact_monic(dividend: &[BigInt], divisor: &[BigInt]) -> Vec<BigInt> {
    let dd = divisor.len() - 1;
    debug_assert!(divisor[dd].is_one());
    let mut rem = dividend.to_vec();
    trim(&mut rem);
    if rem.len() <= dd {
        return vec![];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in divisor.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    trim(&mut rem);
    debug_assert!(rem.is_empty(), "inexact polynomial division");
    quot
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            match b.get(i) {
                Some(y) => x - y,
                None => x,
            }
        })
        .collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, d) in b.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

/// Extended Euclid: returns `(g, s)` with `s*a ≡ g (mod b)` and `g` the
/// monic gcd of `a` and `b`.
pub(crate) fn ext_gcd_left(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![Rational::one()], vec![]);
    while !r1.is_empty() {
        let (q, r) = divmod(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if let Some(lead) = r0.last().cloned() {
        let inv = lead.recip();
        r0.iter_mut().for_each(|c| *c *= &inv);
        s0.iter_mut().for_each(|c| *c *= &inv);
    }
    (r0, s0)
}
