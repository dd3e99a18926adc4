use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Construction, ConstructionParams, FreshTables, TableProvider};
use crate::characters::{is_prime, quadratic_character, DirichletCharacter};
use crate::error::{domain, Error, Result};
use crate::exactnum::{bigint_str, CycNum};
use crate::qseries::delta_series;

/// The four weight-12 identity families for `τ(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityCase {
    A1,
    A2,
    B,
    C,
}

impl IdentityCase {
    pub const ALL: [IdentityCase; 4] = [
        IdentityCase::A1,
        IdentityCase::A2,
        IdentityCase::B,
        IdentityCase::C,
    ];

    /// `(ℓ, k, e)`.
    pub fn weights(self) -> (u32, u32, u32) {
        match self {
            IdentityCase::A1 => (3, 5, 2),
            IdentityCase::A2 => (3, 7, 1),
            IdentityCase::B => (4, 6, 1),
            IdentityCase::C => (4, 4, 2),
        }
    }

    /// Required `χ(-1)`.
    pub fn parity(self) -> i32 {
        match self {
            IdentityCase::A1 | IdentityCase::A2 => -1,
            IdentityCase::B | IdentityCase::C => 1,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            IdentityCase::A1 => "a1",
            IdentityCase::A2 => "a2",
            IdentityCase::B => "b",
            IdentityCase::C => "c",
        }
    }

    /// Checks the case hypotheses for `(D, χ)`.
    pub fn check(self, d: u64, chi: &DirichletCharacter) -> Result<ConstructionParams> {
        let mut failures = Vec::new();
        if chi.modulus() != d {
            failures.push(format!("character {chi} is not modulo D = {d}"));
        }
        if chi.parity() != self.parity() {
            failures.push(format!(
                "case {self} needs χ(-1) = {}, but {chi} has χ(-1) = {}",
                self.parity(),
                chi.parity()
            ));
        }
        if self == IdentityCase::C {
            if !(d == 1 || (is_prime(d) && d % 8 == 5)) {
                failures.push(format!(
                    "case c needs D = 1 or a prime ≡ 5 (mod 8), got D = {d} ≡ {} (mod 8)",
                    d % 8
                ));
            }
            if let Ok(quad) = quadratic_character(d) {
                if &quad != chi {
                    failures.push(format!(
                        "case c uses the quadratic character {quad}, got {chi}"
                    ));
                }
            }
        }
        let (ell, k, e) = self.weights();
        let params = ConstructionParams::new(chi.clone(), ell, k, e);
        for v in params.violations() {
            if !failures.contains(&v) && !v.starts_with("χ(-1)") {
                failures.push(v);
            }
        }
        if failures.is_empty() {
            Ok(params)
        } else {
            Err(domain(failures.join("; ")))
        }
    }
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for IdentityCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a1" | "a.1" => Ok(IdentityCase::A1),
            "a2" | "a.2" => Ok(IdentityCase::A2),
            "b" => Ok(IdentityCase::B),
            "c" => Ok(IdentityCase::C),
            other => Err(Error::Parse(format!(
                "unknown case {other:?}; expected a1, a2, b or c"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRow {
    pub n: u64,
    #[serde(with = "bigint_str")]
    pub tau: BigInt,
    pub a: CycNum,
    pub a1: CycNum,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub case: IdentityCase,
    #[serde(rename = "D")]
    pub d: u64,
    pub chi: String,
    pub nmax: u64,
    pub rows: Vec<VerificationRow>,
    /// `a(1) = 0`: every check degenerates to `a(n) = 0`.
    pub normalization_undefined: bool,
    pub pass: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Checks `a(n) = τ(n)·a(1)` exactly for `1 ≤ n ≤ nmax`.
pub fn verify_theorem(
    case: IdentityCase,
    d: u64,
    chi: &DirichletCharacter,
    nmax: u64,
) -> Result<VerificationReport> {
    verify_theorem_with(case, d, chi, nmax, &FreshTables)
}

pub fn verify_theorem_with(
    case: IdentityCase,
    d: u64,
    chi: &DirichletCharacter,
    nmax: u64,
    tables: &dyn TableProvider,
) -> Result<VerificationReport> {
    let start = Instant::now();
    if nmax == 0 {
        return Err(domain("nmax must be at least 1"));
    }
    let params = case.check(d, chi)?;
    let construction = Construction::with_tables(&params, nmax, tables)?;
    let delta = delta_series(nmax as usize)?;
    let a1 = construction.coefficient(1)?;
    let rows: Vec<VerificationRow> = (1..=nmax)
        .into_par_iter()
        .map(|n| {
            let a = construction.coefficient(n).expect("n within table range");
            let tau_c = delta.coeff(n as usize).expect("Δ precision");
            let tau = tau_c.as_rational().expect("τ is rational").to_integer();
            let expected = a1.scale_integer(&tau);
            VerificationRow {
                n,
                pass: a == expected,
                tau,
                a,
                a1: a1.clone(),
            }
        })
        .collect();
    let normalization_undefined = a1.is_zero();
    let pass = !normalization_undefined && rows.iter().all(|r| r.pass);
    Ok(VerificationReport {
        case,
        d,
        chi: chi.label_string(),
        nmax,
        rows,
        normalization_undefined,
        pass,
        elapsed: start.elapsed(),
    })
}
