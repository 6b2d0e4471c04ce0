//! Modular data: Verlinde fusion rules, Frobenius–Schur indicators, Galois
//! actions, and the admissibility conditions (i)–(vii).

mod data;
mod fusion;
mod galois;
mod verify;

pub use data::{complex_matmul, derive_scalars, kronecker_product, DerivedScalars, ModularData};
pub use fusion::{
    balancing_check, char_poly_coeffs, char_polys, dual_map, fs_indicator, int_matmul, int_poly,
    parse_x_poly, stilde_diagonalizes, verlinde, Check, FusionRules,
};
pub use galois::{
    cycle_notation, exponents_by_permutation, galois_group, galois_permutations,
    permutation_sign, sign_function_extract, t_spectrum_check, GaloisPermutation, SignFunction,
    TSpectrum,
};
pub use verify::{admissibility_check, numeric_residual, AdmissibilityReport, ConditionReport};

use crate::exact::{Cyclotomic, ExactError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("malformed modular data: {0}")]
    Shape(String),
    #[error("d_{0} = 0")]
    ZeroDimension(usize),
    #[error("D^2 = 0")]
    ZeroDsq,
    #[error("N_({i},{j})^{k} = {value} is not a nonnegative integer")]
    NonIntegralFusion {
        i: usize,
        j: usize,
        k: usize,
        value: Cyclotomic,
    },
    #[error("label {0} has no well-defined dual")]
    NoDual(usize),
    #[error("zeta -> zeta^{exponent} does not permute the columns of S-tilde (column {column})")]
    NotPermutation { exponent: u32, column: usize },
    #[error("no sign function satisfies the Galois sign identity")]
    NoConsistentSigns,
    #[error("no root of unity gamma makes the t-spectrum Galois symmetric")]
    GaloisSymmetryViolated,
    #[error(transparent)]
    Exact(#[from] ExactError),
}
