use num_bigint::BigInt;

use crate::characters::{is_prime, quadratic_character, DirichletCharacter};
use crate::divisors::{divisor_table, ParityMode};
use crate::error::{domain, Result};
use crate::exactnum::Rational;

/// `L(-3, χ_p)` for a prime `p ≡ 5 (mod 8)` without Bernoulli polynomials:
///
/// ```text
/// -1/8 + 1/40 Σ_{m<2p} (45m²/p² - 90m/p + 40) σ(m)σ(2p-m)
///      + 3/5  Σ_{m<p}  (45m²/p² - 45m/p + 10) σ(m)σ(p-m)
/// ```
/// with `σ = σ_{3,1,χ_p}`.
pub fn l_minus3_closed_form(p: u64) -> Result<Rational> {
    if !is_prime(p) || p % 8 != 5 {
        return Err(domain(format!("p = {p} must be a prime ≡ 5 (mod 8)")));
    }
    let chi = quadratic_character(p)?;
    let table = divisor_table(
        4,
        &DirichletCharacter::trivial(),
        &chi,
        2 * p,
        2,
        ParityMode::Strict,
    )?;
    let sigma: Vec<Rational> = table
        .values
        .iter()
        .map(|v| {
            v.as_rational()
                .expect("quadratic values are rational")
                .clone()
        })
        .collect();
    let r = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
    let pp = p as i64;
    let mut long = Rational::from_integer(0.into());
    for m in 1..2 * pp {
        let w = r(45 * m * m, pp * pp) - r(90 * m, pp) + r(40, 1);
        long += w * &sigma[m as usize] * &sigma[(2 * pp - m) as usize];
    }
    let mut short = Rational::from_integer(0.into());
    for m in 1..pp {
        let w = r(45 * m * m, pp * pp) - r(45 * m, pp) + r(10, 1);
        short += w * &sigma[m as usize] * &sigma[(pp - m) as usize];
    }
    Ok(r(-1, 8) + long * r(1, 40) + short * r(3, 5))
}
