use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, poly, Rational};
use crate::error::{usage, Error, Result};

/// Euler's totient.
pub fn euler_phi(mut m: u64) -> u64 {
    let mut result = m;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Φ_m(x)` by dividing `x^m - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    fn go(m: u64, memo: &mut HashMap<u64, Vec<BigInt>>) -> Vec<BigInt> {
        if let Some(p) = memo.get(&m) {
            return p.clone();
        }
        let mut acc = vec![BigInt::zero(); m as usize + 1];
        acc[0] = BigInt::from(-1);
        acc[m as usize] = BigInt::one();
        for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
            let phi_d = go(d, memo);
            acc = poly::div_exact_monic(&acc, &phi_d);
        }
        memo.insert(m, acc.clone());
        acc
    }
    assert!(m >= 1, "cyclotomic polynomial of order 0");
    go(m, &mut HashMap::new())
}

/// The field `Q(ζ_m) = Q[x]/Φ_m(x)` with `ζ_m ↦ e^{2πi/m}`.
///
/// Instances are interned; use [`CyclotomicField::get`].
#[derive(Debug)]
pub struct CyclotomicField {
    m: u64,
    degree: usize,
    modulus: Vec<BigInt>,
    // powers[j] = coordinates of ζ^j, j < m
    powers: Vec<Vec<i64>>,
}

fn registry() -> &'static RwLock<HashMap<u64, Arc<CyclotomicField>>> {
    static REGISTRY: OnceLock<RwLock<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
    REGISTRY.get_or_init(Default::default)
}

impl CyclotomicField {
    pub fn get(m: u64) -> Arc<CyclotomicField> {
        assert!(m >= 1, "cyclotomic field of order 0");
        if let Some(f) = registry().read().unwrap().get(&m) {
            return f.clone();
        }
        let field = Arc::new(Self::build(m));
        registry()
            .write()
            .unwrap()
            .entry(m)
            .or_insert(field)
            .clone()
    }

    fn build(m: u64) -> Self {
        let modulus = cyclotomic_polynomial(m);
        let degree = modulus.len() - 1;
        let low: Vec<i64> = modulus[..degree]
            .iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
            .collect();
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x, then subtract lead * Φ_m
            let lead = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if lead != 0 {
                for (c, &p) in cur.iter_mut().zip(&low) {
                    *c = c
                        .checked_sub(lead.checked_mul(p).unwrap())
                        .expect("overflow in ζ powers");
                }
            }
        }
        CyclotomicField {
            m,
            degree,
            modulus,
            powers,
        }
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    /// `φ(m)`, the length of a coordinate vector.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Coordinates of `ζ_m^j` (any integer `j`).
    pub fn zeta_power_coords(&self, j: i64) -> &[i64] {
        &self.powers[j.rem_euclid(self.m as i64) as usize]
    }

    /// Reduces a polynomial in `ζ` (coefficient `i` of `ζ^i`) to coordinates.
    pub fn reduce_rational(&self, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.degree];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < self.degree {
                out[i] += c;
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&self.powers[i % self.m as usize]) {
                if p != 0 {
                    *o += c * Rational::from_integer(p.into());
                }
            }
        }
        out
    }

    /// Integer counterpart of [`reduce_rational`](Self::reduce_rational).
    pub fn reduce_integer(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i < self.degree {
                out[i] += c;
                continue;
            }
            for (o, &p) in out.iter_mut().zip(&self.powers[i % self.m as usize]) {
                match p {
                    0 => {}
                    1 => *o += c,
                    -1 => *o -= c,
                    _ => *o += c * p,
                }
            }
        }
        out
    }
}

/// An element of `Q(ζ_m)` in canonical power-basis coordinates.
#[derive(Clone)]
pub struct CycNum {
    field: Arc<CyclotomicField>,
    coords: Vec<Rational>,
}

impl CycNum {
    pub fn zero(m: u64) -> Self {
        Self::zero_in(&CyclotomicField::get(m))
    }

    pub fn zero_in(field: &Arc<CyclotomicField>) -> Self {
        CycNum {
            field: field.clone(),
            coords: vec![Rational::zero(); field.degree],
        }
    }

    pub fn one(m: u64) -> Self {
        Self::from_rational(m, Rational::one())
    }

    pub fn from_rational(m: u64, r: Rational) -> Self {
        let mut x = Self::zero(m);
        x.coords[0] = r;
        x
    }

    pub fn from_integer(m: u64, n: impl Into<BigInt>) -> Self {
        Self::from_rational(m, Rational::from_integer(n.into()))
    }

    /// `ζ_m^j`.
    pub fn zeta_power(m: u64, j: i64) -> Self {
        let field = CyclotomicField::get(m);
        let coords = field
            .zeta_power_coords(j)
            .iter()
            .map(|&c| Rational::from_integer(c.into()))
            .collect();
        CycNum { field, coords }
    }

    /// Builds from exact power-basis coordinates.
    pub fn from_coords(m: u64, coords: Vec<Rational>) -> Result<Self> {
        let field = CyclotomicField::get(m);
        if coords.len() != field.degree {
            return Err(usage(format!(
                "Q(ζ_{m}) needs {} coordinates, got {}",
                field.degree,
                coords.len()
            )));
        }
        Ok(CycNum { field, coords })
    }

    /// Reduces an arbitrary polynomial in `ζ_m`.
    pub fn from_poly(m: u64, poly: &[Rational]) -> Self {
        let field = CyclotomicField::get(m);
        let coords = field.reduce_rational(poly);
        CycNum { field, coords }
    }

    pub(crate) fn from_integer_coords(
        field: &Arc<CyclotomicField>,
        coords: Vec<BigInt>,
        denom: &BigInt,
    ) -> Self {
        debug_assert_eq!(coords.len(), field.degree);
        let coords = coords
            .into_iter()
            .map(|c| Rational::new(c, denom.clone()))
            .collect();
        CycNum {
            field: field.clone(),
            coords,
        }
    }

    pub fn m(&self) -> u64 {
        self.field.m
    }

    pub fn field(&self) -> &Arc<CyclotomicField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field.m == other.field.m {
            Ok(())
        } else {
            Err(usage(format!(
                "mismatched cyclotomic fields Q(ζ_{}) and Q(ζ_{}); embed into a common field first",
                self.field.m, other.field.m
            )))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycNum {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycNum {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = self.field.degree;
        if d == 1 {
            return Ok(CycNum {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &other.coords[0]],
            });
        }
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(CycNum {
            field: self.field.clone(),
            coords: self.field.reduce_rational(&prod),
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coords = self.coords.iter().map(|c| c * r).collect();
        CycNum {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn scale_integer(&self, n: &BigInt) -> Self {
        let coords = self.coords.iter().map(|c| c * n).collect();
        CycNum {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = CycNum::one(self.m());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The Galois automorphism `ζ ↦ ζ^t`, `gcd(t, m) = 1`.
    pub fn galois(&self, t: i64) -> Self {
        let m = self.field.m as i64;
        assert_eq!(t.gcd(&m), 1, "ζ ↦ ζ^{t} is not an automorphism of Q(ζ_{m})");
        let mut poly = vec![Rational::zero(); m as usize];
        for (i, c) in self.coords.iter().enumerate() {
            poly[(i as i64 * t).rem_euclid(m) as usize] += c;
        }
        CycNum {
            field: self.field.clone(),
            coords: self.field.reduce_rational(&poly),
        }
    }

    /// Complex conjugation `ζ ↦ ζ^{m-1}`.
    pub fn conj(&self) -> Self {
        self.galois(self.field.m as i64 - 1)
    }

    /// The same number viewed in `Q(ζ_target)`; `m` must divide `target`.
    pub fn embed(&self, target: u64) -> Result<Self> {
        let m = self.field.m;
        if target == 0 || !target.is_multiple_of(m) {
            return Err(usage(format!("cannot embed Q(ζ_{m}) into Q(ζ_{target})")));
        }
        if target == m {
            return Ok(self.clone());
        }
        let step = (target / m) as usize;
        let mut poly = vec![Rational::zero(); (self.coords.len() - 1) * step + 1];
        for (i, c) in self.coords.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Ok(CycNum::from_poly(target, &poly))
    }

    /// Inverse of [`embed`](Self::embed): expresses this number in the
    /// subfield `Q(ζ_target)` when it lies there.
    pub fn restrict(&self, target: u64) -> Option<Self> {
        let m = self.field.m;
        if target == 0 || !m.is_multiple_of(target) {
            return None;
        }
        let small = CyclotomicField::get(target);
        let basis: Vec<CycNum> = (0..small.degree)
            .map(|i| CycNum::zeta_power(target, i as i64).embed(m).unwrap())
            .collect();
        let solution = solve_linear(&basis, &self.coords)?;
        Some(CycNum {
            field: small,
            coords: solution,
        })
    }

    /// Multiplicative inverse via extended Euclid against `Φ_m`.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree == 1 {
            return Ok(CycNum {
                field: self.field.clone(),
                coords: vec![self.coords[0].recip()],
            });
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let (g, s) = poly::ext_gcd_left(&self.coords, &modulus);
        // Φ_m is irreducible, so the gcd with a nonzero reduced element is 1.
        debug_assert_eq!(g, vec![Rational::one()]);
        let (_, rem) = poly::divmod(&s, &modulus);
        Ok(CycNum::from_poly(self.field.m, &rem))
    }
}

// Gaussian elimination for `Σ y_j basis_j = target`, returning `None` when
// inconsistent.
fn solve_linear(basis: &[CycNum], target: &[Rational]) -> Option<Vec<Rational>> {
    let rows = target.len();
    let cols = basis.len();
    let mut a: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b.coords[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        a[r].iter_mut().for_each(|x| *x *= &inv);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot = a[r][c..=cols].to_vec();
                for (x, y) in a[i][c..=cols].iter_mut().zip(&pivot) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut y = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        y[c] = a[i][cols].clone();
    }
    Some(y)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.m == other.field.m && self.coords == other.coords
    }
}

impl Eq for CycNum {}

impl Hash for CycNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.m.hash(state);
        self.coords.hash(state);
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &CycNum) -> CycNum {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        self.same_field(rhs).unwrap_or_else(|e| panic!("{e}"));
        self.coords
            .iter_mut()
            .zip(&rhs.coords)
            .for_each(|(a, b)| *a += b);
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        self.same_field(rhs).unwrap_or_else(|e| panic!("{e}"));
        self.coords
            .iter_mut()
            .zip(&rhs.coords)
            .for_each(|(a, b)| *a -= b);
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum(m={}, {})", self.field.m, self)
    }
}

/// Human-readable form such as `76896/7 - 93600/7*z`, where `z = ζ_m`.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 if mag.is_one() => f.write_str("z")?,
                1 => write!(f, "{mag}*z")?,
                _ if mag.is_one() => write!(f, "z^{i}")?,
                _ => write!(f, "{mag}*z^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    m: u64,
    coords: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr {
            m: self.field.m,
            coords: self.coords.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(d)?;
        if repr.m == 0 {
            return Err(D::Error::custom("cyclotomic order must be positive"));
        }
        let coords = repr
            .coords
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CycNum::from_coords(repr.m, coords).map_err(D::Error::custom)
    }
}
