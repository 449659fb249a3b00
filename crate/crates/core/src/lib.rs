//! Exact computations around Kummer surfaces built from the multiplicative
//! group scheme μ₂ acting on the self-product of the rational cuspidal curve
//! in characteristic 2.

pub mod gf2k;
pub mod liealg;
pub mod kummer;
pub mod f2quad;
pub mod lattice;
pub mod curveconfig;
pub mod selftest;
