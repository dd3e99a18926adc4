//! Exact rational and cyclotomic arithmetic plus Bernoulli numbers.

mod bernoulli;
mod cyclotomic;
pub(crate) mod poly;
mod rational;

pub(crate) use bernoulli::binomial;
pub use bernoulli::{bernoulli_number, bernoulli_poly, BernoulliCache};
pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CycNum, CyclotomicField};
pub use rational::{bigint_str, parse_rational, rational_str, Rational};
