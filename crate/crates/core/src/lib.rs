//! Exact-arithmetic tools for purely non-symplectic automorphisms of K3 surfaces.

pub mod classify;
pub mod cli_io;
pub mod cyclotomic;
pub mod fibration;
pub mod fixedlocus;
pub mod intsolve;
pub mod lattices;
pub mod lefschetz;
pub mod numtheory;
pub mod poly;
