//! Exact computational algebra for rank-6 modular data with Galois group
//! `<(012)(345)>`.

pub mod exact;
pub mod groebner;
pub mod modular;
pub mod classify;
pub mod cli;
