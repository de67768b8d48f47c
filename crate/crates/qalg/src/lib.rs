//! Exact symbolic engine for quantized loop algebras, Drinfeldians and
//! their Yangian degenerations.
//!
//! All arithmetic is exact: coefficients live in a ring of rational
//! functions of `q` (on a fractional lattice `q^(1/6)`) that are
//! polynomial in the deformation parameter `eta` and in any declared
//! symbolic parameters.

pub mod catalog;
pub mod freealg;
pub mod hopf;
pub mod rewrite;
pub mod scalar;
pub mod weights;
