//! Truncated q-expansions over cyclotomic fields.
//!
//! A [`QSeries`] knows the coefficients of `q^0, …, q^N`; everything above
//! the precision `N` is unknown rather than zero, and binary operations
//! return the smaller of the two precisions.

use num_bigint::BigInt;
use num_traits::Pow;

use crate::characters::{divisors, DirichletCharacter};
use crate::divisors::{divisor_table, ParityMode};
use crate::error::{usage, Result};
use crate::exactnum::{binomial, CycNum, Rational};
use crate::identities::ConstructionParams;
use crate::kernel::ScaledRows;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<CycNum>,
    /// Modular weight tag. Products add weights; brackets add `2e` on top.
    pub weight: Option<Rational>,
    pub level: Option<u64>,
    pub nebentypus: Option<String>,
}

impl QSeries {
    /// Wraps coefficients `a_0, …, a_N`; all must share one field.
    pub fn new(coeffs: Vec<CycNum>) -> Result<Self> {
        let Some(first) = coeffs.first() else {
            return Err(usage("a q-series needs at least the constant coefficient"));
        };
        let m = first.m();
        if coeffs.iter().any(|c| c.m() != m) {
            return Err(usage(
                "q-series coefficients must share one cyclotomic field",
            ));
        }
        Ok(QSeries {
            coeffs,
            weight: None,
            level: None,
            nebentypus: None,
        })
    }

    pub fn zero(m: u64, precision: usize) -> Self {
        QSeries::new(vec![CycNum::zero(m); precision + 1]).unwrap()
    }

    pub fn with_weight(mut self, weight: impl Into<Option<Rational>>) -> Self {
        self.weight = weight.into();
        self
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field_order(&self) -> u64 {
        self.coeffs[0].m()
    }

    /// Coefficient of `q^n`, or `None` beyond the precision.
    pub fn coeff(&self, n: usize) -> Option<&CycNum> {
        self.coeffs.get(n)
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<CycNum> {
        self.coeffs
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let mut out = self.clone();
        out.coeffs.truncate(precision + 1);
        out
    }

    fn check_field(&self, other: &Self) -> Result<()> {
        if self.field_order() != other.field_order() {
            return Err(usage(format!(
                "q-series over Q(ζ_{}) and Q(ζ_{}) cannot be combined",
                self.field_order(),
                other.field_order()
            )));
        }
        Ok(())
    }

    fn merged_weight(&self, other: &Self) -> Option<Rational> {
        (self.weight == other.weight)
            .then(|| self.weight.clone())
            .flatten()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let prec = self.precision().min(other.precision());
        let coeffs = (0..=prec)
            .map(|n| &self.coeffs[n] + &other.coeffs[n])
            .collect();
        Ok(QSeries {
            coeffs,
            weight: self.merged_weight(other),
            level: None,
            nebentypus: None,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let prec = self.precision().min(other.precision());
        let coeffs = (0..=prec)
            .map(|n| &self.coeffs[n] - &other.coeffs[n])
            .collect();
        Ok(QSeries {
            coeffs,
            weight: self.merged_weight(other),
            level: None,
            nebentypus: None,
        })
    }

    /// Cauchy product truncated to the smaller precision.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_field(other)?;
        let prec = self.precision().min(other.precision());
        let coeffs = ScaledRows::new(&self.coeffs[..=prec])
            .convolve(&ScaledRows::new(&other.coeffs[..=prec]), prec);
        let weight = match (&self.weight, &other.weight) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Ok(QSeries {
            coeffs,
            weight,
            level: None,
            nebentypus: None,
        })
    }

    pub fn scale(&self, c: &CycNum) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.checked_mul(c))
            .collect::<Result<_>>()?;
        Ok(QSeries {
            coeffs,
            ..self.clone()
        })
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(|x| x.scale(r)).collect(),
            ..self.clone()
        }
    }

    /// Conjugates every coefficient.
    pub fn conj(&self) -> Self {
        QSeries {
            coeffs: self.coeffs.iter().map(CycNum::conj).collect(),
            ..self.clone()
        }
    }

    pub fn embed(&self, m: u64) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.embed(m))
            .collect::<Result<_>>()?;
        Ok(QSeries {
            coeffs,
            ..self.clone()
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = QSeries::one(self.field_order(), self.precision());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base).unwrap();
            }
        }
        acc
    }

    fn one(m: u64, precision: usize) -> Self {
        let mut s = QSeries::zero(m, precision);
        s.coeffs[0] = CycNum::one(m);
        s
    }
}

/// `G_{k,χ1,χ2} = Σ σ_{k-1,χ1,χ2}(n) q^n` to precision `precision`, with
/// coefficients in `Q(ζ_field)`.
pub fn eisenstein(
    k: u32,
    chi1: &DirichletCharacter,
    chi2: &DirichletCharacter,
    precision: usize,
    field: u64,
) -> Result<QSeries> {
    let table = divisor_table(k, chi1, chi2, precision as u64, field, ParityMode::Strict)?;
    let mut series = QSeries::new(table.values)?;
    series.weight = Some(Rational::from_integer(k.into()));
    series.level = Some(chi1.modulus() * chi2.modulus());
    series.nebentypus = Some(chi1.crt_product(chi2)?.label_string());
    Ok(series)
}

/// Normalized derivative `(2πi)^{-r} d^r/dz^r`: `a_n ↦ n^r a_n`.
pub fn derivative(f: &QSeries, r: u32) -> QSeries {
    if r == 0 {
        return f.clone();
    }
    let coeffs = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c.scale_integer(&Pow::pow(BigInt::from(n), r)))
        .collect();
    QSeries {
        coeffs,
        weight: f
            .weight
            .as_ref()
            .map(|w| w + Rational::from_integer((2 * r).into())),
        level: f.level,
        nebentypus: f.nebentypus.clone(),
    }
}

/// `[f, g]_e = Σ_r (-1)^r C(e+a-1, e-r) C(e+b-1, r) f^{(r)} g^{(e-r)}` for
/// `f`, `g` of weights `a`, `b`.
pub fn rankin_cohen(f: &QSeries, g: &QSeries, a: u32, b: u32, e: u32) -> Result<QSeries> {
    if a == 0 || b == 0 {
        return Err(usage("Rankin–Cohen weights must be positive"));
    }
    f.check_field(g)?;
    let prec = f.precision().min(g.precision());
    let mut acc = QSeries::zero(f.field_order(), prec);
    for r in 0..=e {
        let coef =
            binomial((e + a - 1) as u64, (e - r) as u64) * binomial((e + b - 1) as u64, r as u64);
        let coef = if r % 2 == 1 { -coef } else { coef };
        let term = derivative(f, r).checked_mul(&derivative(g, e - r))?;
        let term = term.scale_rational(&Rational::from_integer(coef));
        acc = acc.checked_add(&QSeries {
            weight: None,
            ..term
        })?;
    }
    acc.weight = Some(Rational::from_integer((a + b + 2 * e).into()));
    acc.level = match (f.level, g.level) {
        (Some(x), Some(y)) if x == y => Some(x),
        _ => None,
    };
    Ok(acc)
}

/// `U_m f = Σ a_f(mn) q^n`; the result has precision `⌊N/m⌋`.
pub fn u_operator(m: usize, f: &QSeries) -> Result<QSeries> {
    if m == 0 {
        return Err(usage("U_m needs m ≥ 1"));
    }
    let prec = f.precision() / m;
    let coeffs = (0..=prec).map(|n| f.coeffs[m * n].clone()).collect();
    Ok(QSeries {
        coeffs,
        ..f.clone()
    })
}

/// `Δ = q ∏ (1 - q^n)^24 = Σ τ(n) q^n` to precision `precision`.
///
/// The product `∏(1 - q^n)` comes from the pentagonal number theorem and is
/// raised to the 24th power by repeated squaring.
pub fn delta_series(precision: usize) -> Result<QSeries> {
    if precision == 0 {
        return Err(usage("Δ needs precision ≥ 1"));
    }
    let inner = precision - 1;
    let mut euler = vec![BigInt::from(0); inner + 1];
    // exponents k(3k-1)/2 for k = 0, ±1, ±2, …
    for k in 0i64.. {
        let mut any = false;
        for kk in if k == 0 { vec![0] } else { vec![k, -k] } {
            let e = (kk * (3 * kk - 1) / 2) as usize;
            if e <= inner {
                euler[e] += if kk % 2 == 0 { 1 } else { -1 };
                any = true;
            }
        }
        if !any {
            break;
        }
    }
    let euler = QSeries::new(
        euler
            .into_iter()
            .map(|c| CycNum::from_integer(1, c))
            .collect(),
    )?;
    let p8 = euler.checked_mul(&euler)?;
    let p8 = p8.checked_mul(&p8)?;
    let p8 = p8.checked_mul(&p8)?;
    let p16 = p8.checked_mul(&p8)?;
    let p24 = p16.checked_mul(&p8)?;
    let mut coeffs = Vec::with_capacity(precision + 1);
    coeffs.push(CycNum::zero(1));
    coeffs.extend(p24.into_coeffs());
    let mut delta = QSeries::new(coeffs)?;
    delta.weight = Some(Rational::from_integer(12.into()));
    delta.level = Some(1);
    Ok(delta)
}

/// `Σ_{D=D1·D2} χ̄2(-1)·D2^{-e}·U_{D2}([G_{ℓ,χ1,χ̄2}, G_{k,χ̄1,χ2}]_e)` to
/// precision `precision`, computed entirely on q-expansions.
pub fn trace_series(params: &ConstructionParams, precision: usize) -> Result<QSeries> {
    params.validate()?;
    let field = params.field();
    let d = params.modulus();
    let (ell, k, e) = (params.ell, params.k, params.e);
    let mut total = QSeries::zero(field, precision);
    for d1 in divisors(d) {
        let pair = crate::characters::factor_character(&params.chi, d1)?;
        let d2 = pair.d2 as usize;
        let inner = precision * d2;
        let f = eisenstein(ell, &pair.chi1, &pair.chi2.conj(), inner, field)?;
        let g = eisenstein(k, &pair.chi1.conj(), &pair.chi2, inner, field)?;
        let bracket = rankin_cohen(&f, &g, ell, k, e)?;
        let image = u_operator(d2, &bracket)?;
        let sign = pair.chi2.parity();
        let factor = Rational::new(BigInt::from(sign), Pow::pow(BigInt::from(d2), e));
        total = total.checked_add(&image.scale_rational(&factor).with_weight(None))?;
    }
    total.weight = Some(Rational::from_integer((ell + k + 2 * e).into()));
    total.level = Some(1);
    total.nebentypus = Some(DirichletCharacter::trivial().label_string());
    debug_assert!(total.coeffs[0].is_zero() || precision == 0);
    Ok(total)
}
