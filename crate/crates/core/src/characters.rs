//! Dirichlet characters modulo odd squarefree integers, labelled by Conrey
//! index.
//!
//! For an odd prime `p` with smallest primitive root `g_p`, the character
//! with Conrey label `c` sends `g_p^b ↦ e(ν_p(c)·b/(p-1))`, where `ν_p` is
//! the discrete logarithm to base `g_p`. A character mod squarefree `D` is
//! the product of its components at the primes dividing `D`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{domain, usage, Error, Result};
use crate::exactnum::CycNum;

/// Prime factors of an odd squarefree `d ≥ 1`, or a domain error.
pub fn odd_squarefree_primes(d: u64) -> Result<Vec<u64>> {
    if d == 0 {
        return Err(domain("modulus must be positive"));
    }
    if d.is_multiple_of(2) {
        return Err(domain(format!(
            "modulus {d} is even; only odd squarefree moduli are supported"
        )));
    }
    let mut primes = Vec::new();
    let mut n = d;
    let mut p = 3;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return Err(domain(format!(
                    "modulus {d} is not squarefree ({p}^2 divides it)"
                )));
            }
            primes.push(p);
        }
        p += 2;
    }
    if n > 1 {
        primes.push(n);
    }
    Ok(primes)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Smallest primitive root modulo an odd prime.
pub fn primitive_root(p: u64) -> u64 {
    let n = p - 1;
    let mut factors = Vec::new();
    let mut r = n;
    let mut q = 2;
    while q * q <= r {
        if r.is_multiple_of(q) {
            factors.push(q);
            while r.is_multiple_of(q) {
                r /= q;
            }
        }
        q += 1;
    }
    if r > 1 {
        factors.push(r);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, n / q, p) != 1))
        .unwrap_or(1)
}

// log[x] = ν(x) for 1 <= x < p
fn discrete_logs(p: u64, g: u64) -> Vec<u64> {
    let mut log = vec![0; p as usize];
    let mut x = 1;
    for k in 0..p - 1 {
        log[x as usize] = k;
        x = x * g % p;
    }
    log
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "Jacobi symbol needs an odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// A Dirichlet character modulo an odd squarefree integer.
#[derive(Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    label: u64,
    primes: Vec<u64>,
    gens: Vec<u64>,
    exps: Vec<u64>,
    order: u64,
    // table[n] = k with χ(n) = ζ_order^k, None when gcd(n, D) > 1
    table: Arc<Vec<Option<u64>>>,
}

impl DirichletCharacter {
    /// The unique character modulo 1.
    pub fn trivial() -> Self {
        Self::from_label(1, 1).unwrap()
    }

    /// The character `D.c` in Conrey labelling.
    pub fn from_label(modulus: u64, label: u64) -> Result<Self> {
        let primes = odd_squarefree_primes(modulus)?;
        let label = if modulus == 1 { 1 } else { label % modulus };
        if label.gcd(&modulus) != 1 {
            return Err(domain(format!(
                "Conrey label {label} is not a unit modulo {modulus}"
            )));
        }
        let gens: Vec<u64> = primes.iter().map(|&p| primitive_root(p)).collect();
        let logs: Vec<Vec<u64>> = primes
            .iter()
            .zip(&gens)
            .map(|(&p, &g)| discrete_logs(p, g))
            .collect();
        let exps: Vec<u64> = primes
            .iter()
            .zip(&logs)
            .map(|(&p, log)| log[(label % p) as usize])
            .collect();
        let order = primes
            .iter()
            .zip(&exps)
            .map(|(&p, &e)| (p - 1) / e.gcd(&(p - 1)))
            .fold(1, |acc: u64, o| acc.lcm(&o));
        let table = (0..modulus)
            .map(|n| {
                if n.gcd(&modulus) != 1 {
                    return None;
                }
                let k = primes
                    .iter()
                    .zip(&exps)
                    .zip(&logs)
                    .fold(0u64, |acc, ((&p, &e), log)| {
                        // exact: (p-1)/gcd(e, p-1) divides the order
                        let step = e * order / (p - 1);
                        (acc + step * log[(n % p) as usize]) % order
                    });
                Some(k)
            })
            .collect();
        Ok(DirichletCharacter {
            modulus,
            label,
            primes,
            gens,
            exps,
            order,
            table: Arc::new(table),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn label(&self) -> u64 {
        self.label
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Per-prime primitive roots, aligned with [`primes`](Self::primes).
    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    /// Per-prime exponents: `g_p ↦ ζ_{p-1}^{exp_p}`.
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// `χ(-1)` as `±1`.
    pub fn parity(&self) -> i32 {
        if self.exps.iter().sum::<u64>() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == -1
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn conductor(&self) -> u64 {
        self.primes
            .iter()
            .zip(&self.exps)
            .filter(|(_, &e)| e != 0)
            .map(|(&p, _)| p)
            .product()
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    /// `Some(k)` with `χ(n) = ζ_ord^k`, or `None` when `χ(n) = 0`.
    pub fn exponent(&self, n: i64) -> Option<u64> {
        self.table[n.rem_euclid(self.modulus as i64) as usize]
    }

    /// Exponent of `χ(n)` as a power of `ζ_m`; `ord χ` must divide `m`.
    pub fn exponent_in(&self, n: i64, m: u64) -> Option<u64> {
        debug_assert_eq!(m % self.order, 0);
        self.exponent(n).map(|k| k * (m / self.order))
    }

    /// `χ(n)` as an element of `Q(ζ_m)`.
    pub fn evaluate(&self, n: i64, m: u64) -> Result<CycNum> {
        if m == 0 || !m.is_multiple_of(self.order) {
            return Err(usage(format!(
                "character {self} has order {} which does not divide field order {m}",
                self.order
            )));
        }
        Ok(match self.exponent_in(n, m) {
            Some(j) => CycNum::zeta_power(m, j as i64),
            None => CycNum::zero(m),
        })
    }

    pub fn conj(&self) -> Self {
        if self.modulus == 1 {
            return self.clone();
        }
        let inv = mod_inverse(self.label, self.modulus);
        Self::from_label(self.modulus, inv).unwrap()
    }

    /// Product with a character of coprime modulus.
    pub fn crt_product(&self, other: &Self) -> Result<Self> {
        let (m1, m2) = (self.modulus, other.modulus);
        if m1.gcd(&m2) != 1 {
            return Err(domain(format!("moduli {m1} and {m2} are not coprime")));
        }
        let m = m1 * m2;
        // c ≡ c1 (mod m1), c ≡ c2 (mod m2)
        let c = if m == 1 {
            1
        } else {
            let (c1, c2) = (self.label % m1, other.label % m2);
            let inv = if m2 == 1 { 0 } else { mod_inverse(m1 % m2, m2) };
            let t = ((c2 + m2 - c1 % m2) % m2) * inv % m2;
            (c1 + m1 * t) % m
        };
        Self::from_label(m, c)
    }

    /// The restriction of a primitive character to its component modulo `d1`.
    fn component(&self, d1: u64) -> Self {
        Self::from_label(d1, self.label % d1).unwrap()
    }

    /// `D.c`.
    pub fn label_string(&self) -> String {
        format!("{}.{}", self.modulus, self.label)
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i64) as u64
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.label == other.label
    }
}

impl Eq for DirichletCharacter {}

impl Hash for DirichletCharacter {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.modulus.hash(state);
        self.label.hash(state);
    }
}

impl fmt::Display for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.modulus, self.label)
    }
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "DirichletCharacter({}.{}, order {})",
            self.modulus, self.label, self.order
        )
    }
}

impl FromStr for DirichletCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::Parse(format!(
                "malformed character label {s:?}; expected D.c, e.g. 7.6"
            ))
        };
        let (d, c) = s.trim().split_once('.').ok_or_else(bad)?;
        let d: u64 = d.parse().map_err(|_| bad())?;
        let c: u64 = c.parse().map_err(|_| bad())?;
        Self::from_label(d, c)
    }
}

/// All `φ(D)` characters modulo `D`, sorted by Conrey label.
pub fn enumerate_characters(modulus: u64) -> Result<Vec<DirichletCharacter>> {
    odd_squarefree_primes(modulus)?;
    if modulus == 1 {
        return Ok(vec![DirichletCharacter::trivial()]);
    }
    (1..modulus)
        .filter(|c| c.gcd(&modulus) == 1)
        .map(|c| DirichletCharacter::from_label(modulus, c))
        .collect()
}

/// The Jacobi-symbol character `n ↦ (n/D)`.
pub fn quadratic_character(modulus: u64) -> Result<DirichletCharacter> {
    odd_squarefree_primes(modulus)?;
    // ν_p(-1) = (p-1)/2 at every prime, so the label is -1 mod D.
    DirichletCharacter::from_label(modulus, modulus.saturating_sub(1).max(1))
}

/// A factorization `χ = χ1·χ2` into primitive characters modulo `D1` and
/// `D2 = D/D1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorPair {
    pub d1: u64,
    pub d2: u64,
    pub chi1: DirichletCharacter,
    pub chi2: DirichletCharacter,
}

impl FactorPair {
    pub fn reconstruct(&self) -> DirichletCharacter {
        self.chi1
            .crt_product(&self.chi2)
            .expect("coprime factor moduli")
    }
}

pub fn factor_character(chi: &DirichletCharacter, d1: u64) -> Result<FactorPair> {
    let d = chi.modulus();
    if d1 == 0 || !d.is_multiple_of(d1) {
        return Err(domain(format!("{d1} does not divide the modulus {d}")));
    }
    if !chi.is_primitive() {
        return Err(domain(format!(
            "character {chi} is not primitive (conductor {})",
            chi.conductor()
        )));
    }
    let d2 = d / d1;
    Ok(FactorPair {
        d1,
        d2,
        chi1: chi.component(d1),
        chi2: chi.component(d2),
    })
}

/// Positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
