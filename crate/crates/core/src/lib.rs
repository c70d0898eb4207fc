//! Exact tools for Cameron-Liebler line classes in PG(n,q) and AG(n,q):
//! a parameter feasibility sieve over the known modular conditions and
//! brute-force verifiers for the counting identities behind them.

pub mod bitset;
pub mod exactmath;
pub mod galois;
pub mod geometry;
pub mod classfile;
pub mod cli;
pub mod clkit;
pub mod linalg;
pub mod sieve;
pub mod verifiers;
