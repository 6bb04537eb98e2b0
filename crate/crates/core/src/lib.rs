//! Exact Gröbner-basis machinery, Knutson ideal families, and verification
//! suites for determinantal ideals of generic Hankel matrices.

pub mod combinatorics;
pub mod field;
pub mod groebner;
pub mod hankel;
pub mod ideal_ops;
pub mod knutson;
pub mod modp;
pub mod poly;
pub mod report;
pub mod suite;
