//! Degree-capped Gröbner bases and the factor-extend-rerun saturation
//! workflow used to rule out degenerate T-spectra.

mod buchberger;
mod modp;
mod saturation;
mod spec;

pub use buchberger::{
    buchberger_capped, groebner_basis, normal_form, s_polynomial, BuchbergerStats, Budget,
    CappedBasis, Strategy,
};
pub use saturation::{
    divide_out_atoms, saturation_loop, AtomDivision, Outcome, RoundRecord, SaturationTrace,
};
pub use modp::{buchberger_mod_p, ModBasis, ModPoly};
pub use spec::{Arithmetic, IdealSpec};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("polynomials belong to different variable registries or orders")]
    RegistryMismatch,
    #[error("zero polynomial where a nonzero one is required")]
    ZeroInput,
    #[error("resource cap exceeded: {0}")]
    Budget(String),
    #[error("malformed ideal spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
