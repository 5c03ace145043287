pub mod cache;
mod calculus;
pub mod error;
pub mod expand;
pub mod groth_a;
pub mod hecke;
pub mod kn;
pub mod partition;
pub mod rings;
pub mod suite;
pub mod tableaux;
pub mod weyl;
