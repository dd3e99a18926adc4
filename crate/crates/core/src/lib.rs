//! Exact computation of twisted divisor convolutions that represent
//! Ramanujan's tau function, with the q-series machinery used to
//! cross-check them.

pub mod characters;
pub mod divisors;
pub mod error;
pub mod exactnum;
pub mod identities;
pub(crate) mod kernel;
pub mod lfunctions;
pub mod qseries;

pub use characters::{
    enumerate_characters, factor_character, quadratic_character, DirichletCharacter, FactorPair,
};
pub use divisors::{divisor_table, sigma_negative, sigma_twisted, DivisorTable, ParityMode};
pub use error::{Error, Result};
pub use exactnum::{bernoulli_number, bernoulli_poly, CycNum, CyclotomicField, Rational};
pub use identities::{
    a1_scan, a_coefficient, a_tilde, c_coefficient, hecke_eigenform_probe, l_minus3_closed_form,
    verify_theorem, Construction, ConstructionParams, IdentityCase, VerificationReport,
};
pub use lfunctions::{l_value_nonpositive, zeta_nonpositive};
pub use qseries::{delta_series, eisenstein, rankin_cohen, trace_series, u_operator, QSeries};
