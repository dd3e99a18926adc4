use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Rational;

/// Exact binomial coefficient (zero when `k > n`).
pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Memo tables for `B_m` and the coefficient vectors of `B_m(x)`, using the
/// convention `t e^{xt}/(e^t - 1) = Σ B_n(x) t^n/n!` (so `B_1 = -1/2`).
#[derive(Debug, Default)]
pub struct BernoulliCache {
    numbers: RwLock<Vec<Rational>>,
    polynomials: RwLock<HashMap<u32, Vec<Rational>>>,
}

impl BernoulliCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The process-wide cache used by the free functions.
    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    pub fn number(&self, m: u32) -> Rational {
        if let Some(b) = self.numbers.read().unwrap().get(m as usize) {
            return b.clone();
        }
        let mut table = self.numbers.write().unwrap();
        while table.len() <= m as usize {
            let n = table.len() as u64;
            if n == 0 {
                table.push(Rational::one());
                continue;
            }
            // Σ_{k=0}^{n} C(n+1, k) B_k = 0
            let mut s = Rational::zero();
            for (k, b) in table.iter().enumerate() {
                if !b.is_zero() {
                    s += b * binomial(n + 1, k as u64);
                }
            }
            table.push(-s / BigInt::from(n + 1));
        }
        table[m as usize].clone()
    }

    /// Coefficients of `B_m(x)`, index `j` holding the coefficient of `x^j`.
    pub fn polynomial(&self, m: u32) -> Vec<Rational> {
        if let Some(p) = self.polynomials.read().unwrap().get(&m) {
            return p.clone();
        }
        // B_m(x) = Σ_k C(m, k) B_k x^{m-k}
        let poly: Vec<Rational> = (0..=m)
            .map(|j| self.number(m - j) * binomial(m as u64, j as u64))
            .collect();
        self.polynomials.write().unwrap().insert(m, poly.clone());
        poly
    }

    pub fn eval(&self, m: u32, x: &Rational) -> Rational {
        self.polynomial(m)
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Largest `m` with `B_m` cached, if any.
    pub fn cached_len(&self) -> usize {
        self.numbers.read().unwrap().len()
    }
}

pub fn bernoulli_number(m: u32) -> Rational {
    BernoulliCache::global().number(m)
}

pub fn bernoulli_poly(m: u32, x: &Rational) -> Rational {
    BernoulliCache::global().eval(m, x)
}
