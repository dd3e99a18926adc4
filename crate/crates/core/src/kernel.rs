//! Integer convolution kernels.
//!
//! Sequences of cyclotomic numbers are scaled by a common denominator so the
//! inner loops run on integer coordinates; products are accumulated
//! unreduced (degree `2φ(m) - 2`) and reduced modulo `Φ_m` once per output.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exactnum::{CycNum, CyclotomicField};

pub(crate) struct ScaledRows {
    field: Arc<CyclotomicField>,
    degree: usize,
    denom: BigInt,
    data: Vec<BigInt>,
    nonzero: Vec<bool>,
}

impl ScaledRows {
    pub(crate) fn new(values: &[CycNum]) -> Self {
        assert!(!values.is_empty(), "empty sequence");
        let field = values[0].field().clone();
        let degree = field.degree();
        let denom = values
            .iter()
            .flat_map(|v| v.coords())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut data = Vec::with_capacity(values.len() * degree);
        let mut nonzero = Vec::with_capacity(values.len());
        for v in values {
            assert_eq!(v.m(), field.order(), "mixed fields in one sequence");
            nonzero.push(!v.is_zero());
            for c in v.coords() {
                data.push(c.numer() * (&denom / c.denom()));
            }
        }
        ScaledRows {
            field,
            degree,
            denom,
            data,
            nonzero,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.nonzero.len()
    }

    fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    fn accumulate(&self, acc: &mut [BigInt], x: &[BigInt], y: &[BigInt], weight: Option<&BigInt>) {
        if self.degree == 1 {
            let p = &x[0] * &y[0];
            match weight {
                Some(w) => acc[0] += p * w,
                None => acc[0] += p,
            }
            return;
        }
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let a = match weight {
                Some(w) => a * w,
                None => a.clone(),
            };
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    acc[i + j] += &a * b;
                }
            }
        }
    }

    fn finish(&self, other: &Self, acc: Vec<BigInt>) -> CycNum {
        let coords = self.field.reduce_integer(&acc);
        CycNum::from_integer_coords(&self.field, coords, &(&self.denom * &other.denom))
    }

    /// `Σ_{a1+a2=n} w(a1, a2)·self[a1]·other[a2]`.
    pub(crate) fn weighted_sum(
        &self,
        other: &Self,
        n: usize,
        weight: impl Fn(u64, u64) -> BigInt,
    ) -> CycNum {
        assert_eq!(
            self.field.order(),
            other.field.order(),
            "mixed fields in convolution"
        );
        assert!(
            n < self.len() && n < other.len(),
            "convolution index beyond table length"
        );
        let mut acc = vec![BigInt::zero(); 2 * self.degree - 1];
        for a1 in 0..=n {
            let a2 = n - a1;
            if !self.nonzero[a1] || !other.nonzero[a2] {
                continue;
            }
            let w = weight(a1 as u64, a2 as u64);
            if w.is_zero() {
                continue;
            }
            self.accumulate(&mut acc, self.row(a1), other.row(a2), Some(&w));
        }
        self.finish(other, acc)
    }

    /// Cauchy product truncated at `prec` (inclusive).
    pub(crate) fn convolve(&self, other: &Self, prec: usize) -> Vec<CycNum> {
        assert_eq!(
            self.field.order(),
            other.field.order(),
            "mixed fields in convolution"
        );
        assert!(prec < self.len() && prec < other.len());
        (0..=prec)
            .into_par_iter()
            .map(|n| {
                let mut acc = vec![BigInt::zero(); 2 * self.degree - 1];
                for a1 in 0..=n {
                    let a2 = n - a1;
                    if self.nonzero[a1] && other.nonzero[a2] {
                        self.accumulate(&mut acc, self.row(a1), other.row(a2), None);
                    }
                }
                self.finish(other, acc)
            })
            .collect()
    }
}
