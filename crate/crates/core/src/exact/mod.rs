//! Exact scalars: rationals, sparse multivariate polynomials over Q, and
//! elements of cyclotomic fields.

mod cyclotomic;
mod parse;
mod poly;
mod rational;

pub use cyclotomic::{
    canonical_cmp, cyc_arith, cyc_conj, cyc_embed, cyc_galois, cyc_make, cyc_min_poly,
    cyclotomic_polynomial, euler_phi, units_mod, Complex64, CycOp, Cyclotomic,
};
pub use parse::parse_poly;
pub use poly::{
    is_monic_integral, poly_arith, poly_reduce, ArithOp, Monomial, MonomialOrder, Poly,
    VarRegistry, MAX_VARS,
};
pub use rational::{common_denominator, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("polynomials belong to different variable registries or orders")]
    RegistryMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero polynomial used as a divisor")]
    ZeroDivisor,
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("duplicate variable {0:?}")]
    DuplicateVariable(String),
    #[error("{0} variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid conductor {0}")]
    InvalidConductor(u32),
    #[error("conductor {conductor} needs {expected} coefficients, found {found}")]
    CoeffLength {
        conductor: u32,
        expected: usize,
        found: usize,
    },
    #[error("exponent {k} is not a unit modulo {conductor}")]
    NotCoprime { k: i64, conductor: u32 },
}
