//! Algebraic attacks on Rank Decoding (RD) and MinRank.

pub mod galois;
pub mod matlin;
pub mod instances;
pub mod modelings;
pub mod solver;
pub mod hybrid;
pub mod estimator;
pub mod labkit;
