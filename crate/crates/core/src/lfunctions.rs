//! Special values `L(1-m, χ)` at nonpositive integers.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Pow;

use crate::characters::DirichletCharacter;
use crate::error::{domain, Result};
use crate::exactnum::{bernoulli_number, BernoulliCache, CycNum, Rational};

/// Memo key: character label, `m`, and the field the value is expressed in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LValueKey {
    pub modulus: u64,
    pub label: u64,
    pub m: u32,
    pub field: u64,
}

fn memo() -> &'static RwLock<HashMap<LValueKey, CycNum>> {
    static MEMO: OnceLock<RwLock<HashMap<LValueKey, CycNum>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `L(1-m, χ) = -(q^{m-1}/m) Σ_{a=1}^{q} χ(a) B_m(a/q)` in `Q(ζ_{ord χ})`.
///
/// The sum runs over `a = 1..=q`, so the trivial character modulo 1 gives
/// `ζ(0) = -B_1(1) = -1/2`.
pub fn l_value_nonpositive(chi: &DirichletCharacter, m: u32) -> Result<CycNum> {
    l_value_nonpositive_in(chi, m, chi.order())
}

/// As [`l_value_nonpositive`], expressed in `Q(ζ_field)`.
pub fn l_value_nonpositive_in(chi: &DirichletCharacter, m: u32, field: u64) -> Result<CycNum> {
    if m == 0 {
        return Err(domain("L(1-m, χ) needs m ≥ 1"));
    }
    let key = LValueKey {
        modulus: chi.modulus(),
        label: chi.label(),
        m,
        field,
    };
    if let Some(v) = memo().read().unwrap().get(&key) {
        return Ok(v.clone());
    }
    // validates ord χ | field
    chi.evaluate(1, field)?;
    let q = chi.modulus();
    let bern = BernoulliCache::global();
    // Σ_a χ(a) B_m(a/q), accumulated as a polynomial in ζ_field
    let mut poly = vec![Rational::from_integer(0.into()); field as usize];
    for a in 1..=q {
        if let Some(j) = chi.exponent_in(a as i64, field) {
            let x = Rational::new(BigInt::from(a), BigInt::from(q));
            poly[j as usize] += bern.eval(m, &x);
        }
    }
    let factor = -Rational::new(Pow::pow(BigInt::from(q), m - 1), BigInt::from(m));
    let value = CycNum::from_poly(field, &poly).scale(&factor);
    memo().write().unwrap().insert(key, value.clone());
    Ok(value)
}

/// `ζ(1-m) = -B_m/m` for `m ≥ 2`.
pub fn zeta_nonpositive(m: u32) -> Result<Rational> {
    if m < 2 {
        return Err(domain(
            "zeta_nonpositive needs m ≥ 2 (use l_value_nonpositive for ζ(0))",
        ));
    }
    Ok(-bernoulli_number(m) / BigInt::from(m))
}
