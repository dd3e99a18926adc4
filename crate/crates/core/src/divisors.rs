//! Twisted divisor functions `σ_{l-1,φ,ψ}(n) = Σ_{d1·d2=n} φ(d1)ψ(d2)·d1^{l-1}`
//! with the L-value convention at `n = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::characters::DirichletCharacter;
use crate::error::{domain, Error, Result};
use crate::exactnum::{CycNum, Rational};
use crate::lfunctions::l_value_nonpositive_in;

/// Whether `φ(-1)ψ(-1) = (-1)^l` is enforced (`Strict`) or only recorded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ParityMode {
    #[default]
    Strict,
    Lenient,
}

/// Checks the hypotheses on `(l, φ, ψ)`; returns whether the parity
/// condition holds.
fn check_pair(
    l: u32,
    phi: &DirichletCharacter,
    psi: &DirichletCharacter,
    mode: ParityMode,
) -> Result<bool> {
    if l < 3 {
        return Err(domain(format!("weight l = {l} must be at least 3")));
    }
    for chi in [phi, psi] {
        if !chi.is_primitive() {
            return Err(domain(format!("character {chi} is not primitive")));
        }
    }
    if phi.modulus().gcd(&psi.modulus()) != 1 {
        return Err(domain(format!("moduli of {phi} and {psi} are not coprime")));
    }
    let sign = if l.is_multiple_of(2) { 1 } else { -1 };
    let parity_ok = phi.parity() * psi.parity() == sign;
    if !parity_ok && mode == ParityMode::Strict {
        return Err(Error::ParityViolation(format!(
            "{phi}(-1)·{psi}(-1) = {} but (-1)^{l} = {sign}",
            phi.parity() * psi.parity()
        )));
    }
    Ok(parity_ok)
}

fn default_field(phi: &DirichletCharacter, psi: &DirichletCharacter) -> u64 {
    phi.order().lcm(&psi.order())
}

fn constant_term(
    l: u32,
    phi: &DirichletCharacter,
    psi: &DirichletCharacter,
    field: u64,
) -> Result<CycNum> {
    // -L(1-l, φ)·L(0, ψ)
    let lphi = l_value_nonpositive_in(phi, l, field)?;
    let lpsi = l_value_nonpositive_in(psi, 1, field)?;
    Ok(-(&lphi * &lpsi))
}

/// `σ_{l-1,φ,ψ}(n)` in `Q(ζ_{lcm(ord φ, ord ψ)})`.
pub fn sigma_twisted(
    l: u32,
    phi: &DirichletCharacter,
    psi: &DirichletCharacter,
    n: u64,
    mode: ParityMode,
) -> Result<CycNum> {
    sigma_twisted_in(l, phi, psi, n, default_field(phi, psi), mode)
}

/// `σ_{l-1,φ,ψ}(n)` in `Q(ζ_field)`.
pub fn sigma_twisted_in(
    l: u32,
    phi: &DirichletCharacter,
    psi: &DirichletCharacter,
    n: u64,
    field: u64,
    mode: ParityMode,
) -> Result<CycNum> {
    check_pair(l, phi, psi, mode)?;
    phi.evaluate(1, field)?;
    psi.evaluate(1, field)?;
    if n == 0 {
        return constant_term(l, phi, psi, field);
    }
    let mut poly = vec![BigInt::zero(); field as usize];
    for d1 in crate::characters::divisors(n) {
        let d2 = n / d1;
        if let (Some(j1), Some(j2)) = (
            phi.exponent_in(d1 as i64, field),
            psi.exponent_in(d2 as i64, field),
        ) {
            poly[((j1 + j2) % field) as usize] += Pow::pow(BigInt::from(d1), l - 1);
        }
    }
    let coords: Vec<Rational> = poly.into_iter().map(Rational::from_integer).collect();
    Ok(CycNum::from_poly(field, &coords))
}

/// `σ_{1-l,ψ}(n) = Σ_{m|n} ψ(m)·m^{1-l}` for `n ≥ 1`, in `Q(ζ_{ord ψ})`.
pub fn sigma_negative(l: u32, psi: &DirichletCharacter, n: u64) -> Result<CycNum> {
    if n == 0 {
        return Err(domain("σ_{1-l,ψ}(0) is not defined"));
    }
    if l < 1 {
        return Err(domain("l must be positive"));
    }
    let field = psi.order();
    let mut poly = vec![Rational::zero(); field as usize];
    for m in crate::characters::divisors(n) {
        if let Some(j) = psi.exponent_in(m as i64, field) {
            poly[j as usize] += Rational::new(1.into(), Pow::pow(BigInt::from(m), l - 1));
        }
    }
    Ok(CycNum::from_poly(field, &poly))
}

/// Values `σ_{l-1,φ,ψ}(n)` for `0 ≤ n ≤ nmax`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorTable {
    pub l: u32,
    pub phi: String,
    pub psi: String,
    pub field: u64,
    pub parity_ok: bool,
    pub values: Vec<CycNum>,
}

impl DivisorTable {
    pub fn nmax(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> Option<&CycNum> {
        self.values.get(n as usize)
    }
}

/// Sieves `σ_{l-1,φ,ψ}(n)` for all `n ≤ nmax` over pairs `(d1, d2)`.
pub fn divisor_table(
    l: u32,
    phi: &DirichletCharacter,
    psi: &DirichletCharacter,
    nmax: u64,
    field: u64,
    mode: ParityMode,
) -> Result<DivisorTable> {
    let parity_ok = check_pair(l, phi, psi, mode)?;
    phi.evaluate(1, field)?;
    psi.evaluate(1, field)?;
    let f = crate::exactnum::CyclotomicField::get(field);
    let degree = f.degree();
    let n = nmax as usize;
    let mut acc = vec![BigInt::zero(); (n + 1) * degree];
    for d1 in 1..=n {
        let Some(j1) = phi.exponent_in(d1 as i64, field) else {
            continue;
        };
        let power: BigInt = Pow::pow(BigInt::from(d1), l - 1);
        for d2 in 1..=n / d1 {
            let Some(j2) = psi.exponent_in(d2 as i64, field) else {
                continue;
            };
            let target = &mut acc[d1 * d2 * degree..(d1 * d2 + 1) * degree];
            for (t, &c) in target.iter_mut().zip(f.zeta_power_coords((j1 + j2) as i64)) {
                match c {
                    0 => {}
                    1 => *t += &power,
                    -1 => *t -= &power,
                    _ => *t += &power * c,
                }
            }
        }
    }
    let one = BigInt::from(1);
    let mut values = Vec::with_capacity(n + 1);
    values.push(constant_term(l, phi, psi, field)?);
    for k in 1..=n {
        values.push(CycNum::from_integer_coords(
            &f,
            acc[k * degree..(k + 1) * degree].to_vec(),
            &one,
        ));
    }
    Ok(DivisorTable {
        l,
        phi: phi.label_string(),
        psi: psi.label_string(),
        field,
        parity_ok,
        values,
    })
}
