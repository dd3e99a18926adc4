//! The convolution coefficients `a_{D,ℓ,k,e}(n; χ)` and everything built on
//! them: the tau identities, the closed form for `L(-3, χ_p)`, and the
//! exploration tools for non-vanishing and eigenform behaviour.
//!
//! ```text
//! a(n) = Σ_{D=D1·D2} χ̄2(-1) D2^{-e} Σ_{a1+a2 = n·D2} σ_{ℓ-1,χ1,χ̄2}(a1) σ_{k-1,χ̄1,χ2}(a2) c_{e,a1,a2}
//! c_{e,a1,a2} = Σ_r (-1)^r a1^r a2^{e-r} C(e+ℓ-1, e-r) C(e+k-1, r)
//! ```

mod closed_form;
mod conjectures;
mod tables;
mod theorem;

use num_bigint::BigInt;
use num_traits::{Pow, Zero};
use rayon::prelude::*;

use crate::characters::{divisors, factor_character, quadratic_character, DirichletCharacter};
use crate::error::{domain, Error, Result};
use crate::exactnum::{binomial, CycNum, Rational};
use crate::kernel::ScaledRows;

pub use closed_form::l_minus3_closed_form;
pub use conjectures::{
    a1_scan, cusp_form_dimension, hecke_eigenform_probe, HeckeProbeReport, HeckeViolation,
    ScanEntry, ScanOutcome,
};
pub use tables::{FreshTables, TableCache, TableProvider};
pub use theorem::{
    verify_theorem, verify_theorem_with, IdentityCase, VerificationReport, VerificationRow,
};

/// `(χ, ℓ, k, e)` with `χ` primitive modulo `D = modulus(χ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConstructionParams {
    pub chi: DirichletCharacter,
    pub ell: u32,
    pub k: u32,
    pub e: u32,
}

impl ConstructionParams {
    pub fn new(chi: DirichletCharacter, ell: u32, k: u32, e: u32) -> Self {
        ConstructionParams { chi, ell, k, e }
    }

    pub fn modulus(&self) -> u64 {
        self.chi.modulus()
    }

    /// Field order the coefficients live in: `ord χ`.
    pub fn field(&self) -> u64 {
        self.chi.order()
    }

    pub fn weight(&self) -> u32 {
        self.ell + self.k + 2 * self.e
    }

    /// All hypotheses that fail, in a fixed order.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (ell, k, e) = (self.ell, self.k, self.e);
        if !self.chi.is_primitive() {
            out.push(format!(
                "χ = {} is not primitive (conductor {})",
                self.chi,
                self.chi.conductor()
            ));
        }
        if ell < 3 {
            out.push(format!("ℓ = {ell} must be at least 3"));
        }
        if ell > k {
            out.push(format!("ℓ = {ell} exceeds k = {k}"));
        }
        if (ell + k) % 2 != 0 {
            out.push(format!("ℓ = {ell} and k = {k} differ in parity"));
        }
        if e == 0 {
            out.push("e must be at least 1".into());
        }
        let sign = if ell % 2 == 0 { 1 } else { -1 };
        if self.chi.parity() != sign {
            out.push(format!("χ(-1) = {} but (-1)^ℓ = {sign}", self.chi.parity()));
        }
        if ell == k {
            if let Ok(quad) = quadratic_character(self.modulus()) {
                if quad != self.chi {
                    out.push(format!(
                        "ℓ = k requires the quadratic character {quad}, got {}",
                        self.chi
                    ));
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(domain(v.join("; ")))
        }
    }
}

/// `c_{e,a1,a2}` for weights `ℓ`, `k`; `0^0 = 1`.
pub fn c_coefficient(e: u32, ell: u32, k: u32, a1: u64, a2: u64) -> BigInt {
    let (a1, a2) = (BigInt::from(a1), BigInt::from(a2));
    let mut acc = BigInt::zero();
    for r in 0..=e {
        let term = Pow::pow(&a1, r)
            * Pow::pow(&a2, e - r)
            * binomial((e + ell - 1) as u64, (e - r) as u64)
            * binomial((e + k - 1) as u64, r as u64);
        if r % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

struct Term {
    d2: u64,
    factor: Rational,
    left: ScaledRows,
    right: ScaledRows,
}

/// Precomputed divisor tables for one construction, good for every
/// `1 ≤ n ≤ nmax`.
pub struct Construction {
    params: ConstructionParams,
    nmax: u64,
    terms: Vec<Term>,
}

impl Construction {
    pub fn new(params: &ConstructionParams, nmax: u64) -> Result<Self> {
        Self::with_tables(params, nmax, &FreshTables)
    }

    pub fn with_tables(
        params: &ConstructionParams,
        nmax: u64,
        tables: &dyn TableProvider,
    ) -> Result<Self> {
        params.validate()?;
        let field = params.field();
        let mut terms = Vec::new();
        for d1 in divisors(params.modulus()) {
            let pair = factor_character(&params.chi, d1)?;
            let d2 = pair.d2;
            let len = nmax * d2;
            let left = tables.table(params.ell, &pair.chi1, &pair.chi2.conj(), len, field)?;
            let right = tables.table(params.k, &pair.chi1.conj(), &pair.chi2, len, field)?;
            // χ̄2(-1) = χ2(-1)
            let factor = Rational::new(
                BigInt::from(pair.chi2.parity()),
                Pow::pow(BigInt::from(d2), params.e),
            );
            terms.push(Term {
                d2,
                factor,
                left: ScaledRows::new(&left.values[..=len as usize]),
                right: ScaledRows::new(&right.values[..=len as usize]),
            });
        }
        Ok(Construction {
            params: params.clone(),
            nmax,
            terms,
        })
    }

    pub fn params(&self) -> &ConstructionParams {
        &self.params
    }

    pub fn nmax(&self) -> u64 {
        self.nmax
    }

    /// `a_{D,ℓ,k,e}(n; χ)` for `1 ≤ n ≤ nmax`.
    pub fn coefficient(&self, n: u64) -> Result<CycNum> {
        if n == 0 || n > self.nmax {
            return Err(domain(format!("n = {n} outside 1..={}", self.nmax)));
        }
        let ConstructionParams { ell, k, e, .. } = self.params;
        let mut total = CycNum::zero(self.params.field());
        for term in &self.terms {
            let inner = term
                .left
                .weighted_sum(&term.right, (n * term.d2) as usize, |a1, a2| {
                    c_coefficient(e, ell, k, a1, a2)
                });
            total += &inner.scale(&term.factor);
        }
        Ok(total)
    }

    /// `a(1), …, a(nmax)`, computed in parallel.
    pub fn coefficients(&self) -> Vec<CycNum> {
        (1..=self.nmax)
            .into_par_iter()
            .map(|n| self.coefficient(n).expect("index in range"))
            .collect()
    }
}

/// `a_{D,ℓ,k,e}(n; χ)` by the direct double sum.
pub fn a_coefficient(params: &ConstructionParams, n: u64) -> Result<CycNum> {
    Construction::new(params, n.max(1))?.coefficient(n)
}

/// `ã(n) = a(n)/a(1)`.
pub fn a_tilde(params: &ConstructionParams, n: u64) -> Result<CycNum> {
    let c = Construction::new(params, n.max(1))?;
    let a1 = c.coefficient(1)?;
    if a1.is_zero() {
        return Err(Error::NormalizationUndefined);
    }
    Ok(c.coefficient(n)? * a1.inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::quadratic_character;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn params(label: &str, ell: u32, k: u32, e: u32) -> ConstructionParams {
        ConstructionParams::new(label.parse().unwrap(), ell, k, e)
    }

    #[test]
    fn c_coefficient_closed_forms() {
        for n in 0..12u64 {
            for m in 0..=n {
                let lhs = c_coefficient(1, 4, 6, m, n - m);
                assert_eq!(lhs, BigInt::from(4 * n as i64 - 10 * m as i64));
            }
        }
        for p in [5u64, 7] {
            for n in 1..5u64 {
                for m in 0..=n * p {
                    assert_eq!(
                        c_coefficient(1, 3, 7, m, n * p - m),
                        BigInt::from(3 * (n * p) as i64 - 10 * m as i64)
                    );
                    let lhs = c_coefficient(2, 4, 4, m, n * p - m);
                    let (m, n, p) = (m as i64, n as i64, p as i64);
                    assert_eq!(
                        lhs,
                        BigInt::from(45 * m * m - 45 * m * n * p + 10 * n * n * p * p)
                    );
                }
            }
        }
    }

    #[test]
    fn level_one_first_coefficient() {
        let a1 = a_coefficient(&params("1.1", 4, 6, 1), 1).unwrap();
        assert_eq!(a1.as_rational(), Some(&q(1, 35)));
    }

    #[test]
    fn example_tables_first_rows() {
        let a = a_coefficient(&params("7.6", 3, 7, 1), 1).unwrap();
        assert_eq!(a.as_rational(), Some(&q(66816, 7)));
        let phi = a_coefficient(&params("7.3", 3, 7, 1), 1).unwrap();
        assert_eq!(
            phi,
            CycNum::from_coords(6, vec![q(76896, 7), q(-93600, 7)]).unwrap()
        );
        let phibar = a_coefficient(&params("7.5", 3, 7, 1), 1).unwrap();
        assert_eq!(
            phibar,
            CycNum::from_coords(6, vec![q(-16704, 7), q(93600, 7)]).unwrap()
        );
        assert_eq!(phibar, phi.conj());
    }

    #[test]
    fn normalized_values() {
        let p = params("7.6", 3, 7, 1);
        assert_eq!(a_tilde(&p, 2).unwrap(), CycNum::from_integer(2, -24));
        assert!(a_tilde(&p, 1).unwrap().is_one());
        assert_eq!(
            a_tilde(&params("7.3", 3, 7, 1), 3).unwrap(),
            CycNum::from_integer(6, 252)
        );
    }

    #[test]
    fn hypotheses() {
        assert!(params("7.6", 4, 6, 1).validate().is_err());
        assert!(params("7.3", 3, 3, 2).validate().is_err());
        assert!(
            ConstructionParams::new(quadratic_character(7).unwrap(), 3, 3, 2)
                .validate()
                .is_ok()
        );
        assert!(params("7.6", 3, 6, 1).validate().is_err());
        assert!(params("7.6", 3, 7, 0).validate().is_err());
        assert!(params("15.11", 3, 7, 1).validate().is_err());
        assert_eq!(params("7.6", 5, 3, 0).violations().len(), 2);
    }
}
