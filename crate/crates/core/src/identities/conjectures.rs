//! Exploration tools: non-vanishing scans of `a(1)` and a Hecke eigenform
//! probe. These report data; they prove nothing.

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use super::{Construction, ConstructionParams, TableCache};
use crate::characters::{quadratic_character, DirichletCharacter};
use crate::error::{domain, usage, Result};
use crate::exactnum::CycNum;
use crate::qseries::QSeries;

/// `dim S_K` for level one.
pub fn cusp_form_dimension(weight: u32) -> u32 {
    if weight % 2 == 1 || weight < 12 {
        return 0;
    }
    let modular = if weight % 12 == 2 {
        weight / 12
    } else {
        weight / 12 + 1
    };
    modular - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeViolation {
    pub p: u64,
    pub n: u64,
    pub lhs: CycNum,
    pub rhs: CycNum,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeProbeReport {
    pub weight: u32,
    pub primes: Vec<u64>,
    pub nmax: u64,
    pub checks: usize,
    pub first_violation: Option<HeckeViolation>,
}

impl HeckeProbeReport {
    pub fn consistent(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Tests `a(1)a(pn) + p^{K-1}a(1)a(n/p) = a(p)a(n)` for `pn ≤ nmax`; the
/// `a(n/p)` term appears only when `p | n`.
pub fn hecke_eigenform_probe(
    series: &QSeries,
    weight: u32,
    primes: &[u64],
    nmax: u64,
) -> Result<HeckeProbeReport> {
    let max_p = primes.iter().copied().max().unwrap_or(1);
    if (series.precision() as u64) < nmax {
        return Err(usage(format!(
            "series precision {} is below nmax = {nmax}",
            series.precision()
        )));
    }
    if nmax < 2 * max_p {
        return Err(usage(format!(
            "nmax = {nmax} must be at least twice the largest prime {max_p}"
        )));
    }
    if weight == 0 {
        return Err(usage("weight must be positive"));
    }
    let a = |n: u64| series.coeff(n as usize).expect("within precision");
    let a1 = a(1);
    let mut checks = 0;
    for &p in primes {
        let pk = CycNum::from_integer(series.field_order(), Pow::pow(BigInt::from(p), weight - 1));
        for n in 1..=nmax / p {
            let mut lhs = a1 * a(p * n);
            if n % p == 0 {
                lhs += &(&(&pk * a1) * a(n / p));
            }
            let rhs = a(p) * a(n);
            checks += 1;
            if lhs != rhs {
                return Ok(HeckeProbeReport {
                    weight,
                    primes: primes.to_vec(),
                    nmax,
                    checks,
                    first_violation: Some(HeckeViolation { p, n, lhs, rhs }),
                });
            }
        }
    }
    Ok(HeckeProbeReport {
        weight,
        primes: primes.to_vec(),
        nmax,
        checks,
        first_violation: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ScanOutcome {
    Evaluated {
        a1: CycNum,
        zero: bool,
        /// Set when the construction vanishes for a structural reason.
        forced_zero: Option<String>,
    },
    Skipped {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub ell: u32,
    pub k: u32,
    pub e: u32,
    pub weight: u32,
    #[serde(flatten)]
    pub outcome: ScanOutcome,
}

impl ScanEntry {
    pub fn unexplained_zero(&self) -> bool {
        matches!(
            &self.outcome,
            ScanOutcome::Evaluated {
                zero: true,
                forced_zero: None,
                ..
            }
        )
    }
}

/// `a_{D,ℓ,k,e}(1; χ)` for every `3 ≤ ℓ ≤ k`, `e ≥ 1` with
/// `8 ≤ ℓ+k+2e ≤ kmax`, ordered by weight then `(ℓ, k)`.
pub fn a1_scan(d: u64, chi: &DirichletCharacter, kmax: u32) -> Result<Vec<ScanEntry>> {
    if chi.modulus() != d {
        return Err(domain(format!("character {chi} is not modulo D = {d}")));
    }
    if !chi.is_primitive() {
        return Err(domain(format!("character {chi} is not primitive")));
    }
    let quad = quadratic_character(d)?;
    let cache = TableCache::new();
    let mut out = Vec::new();
    for weight in (8..=kmax).step_by(2) {
        for ell in 3..=weight {
            for k in ell..=weight {
                if ell + k + 2 > weight || (weight - ell - k) % 2 != 0 {
                    continue;
                }
                let e = (weight - ell - k) / 2;
                let mut entry = ScanEntry {
                    ell,
                    k,
                    e,
                    weight,
                    outcome: ScanOutcome::Skipped {
                        reason: String::new(),
                    },
                };
                let sign = if ell % 2 == 0 { 1 } else { -1 };
                if (ell + k) % 2 != 0 {
                    entry.outcome = ScanOutcome::Skipped {
                        reason: "ℓ and k differ in parity".into(),
                    };
                } else if chi.parity() != sign {
                    entry.outcome = ScanOutcome::Skipped {
                        reason: format!("χ(-1) = {} ≠ (-1)^ℓ = {sign}", chi.parity()),
                    };
                } else if ell == k && chi != &quad {
                    entry.outcome = ScanOutcome::Skipped {
                        reason: format!("ℓ = k is defined only for the quadratic character {quad}"),
                    };
                } else {
                    let params = ConstructionParams::new(chi.clone(), ell, k, e);
                    let a1 = Construction::with_tables(&params, 1, &cache)?.coefficient(1)?;
                    let forced_zero = if cusp_form_dimension(weight) == 0 {
                        Some(format!("no nonzero cusp forms of weight {weight}"))
                    } else if ell == k && e % 2 == 1 {
                        Some("bracket of a series with itself at odd e vanishes".to_string())
                    } else {
                        None
                    };
                    entry.outcome = ScanOutcome::Evaluated {
                        zero: a1.is_zero(),
                        a1,
                        forced_zero,
                    };
                }
                out.push(entry);
            }
        }
    }
    Ok(out)
}
