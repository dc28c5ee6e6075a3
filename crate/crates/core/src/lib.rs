//! Tropical data, the combinatorial wrapped Fukaya category, the matrix-factorization
//! mirror, and a finite A-infinity toolkit over F2.

pub mod ainfinity;
pub mod fukaya;
pub mod linalg;
pub mod mirror;
pub mod tropical;
