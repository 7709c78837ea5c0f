//! Difference-algebraic relations among solutions of first-order linear
//! differential equations over k(x) equipped with a shift, q-dilation or
//! Mahler endomorphism.
//!
//! The σ-Galois group of δ(y) = a·y (and of diagonal systems) is a σ-closed
//! subgroup of a torus, cut out by a ℤ[σ]-module of multiplicative functions.
//! This crate computes that module up to a chosen σ-order, with
//! certificates, Zariski-closure data, σ-dimension and structural
//! predicates. Additive equations δ(y) = b are handled the same way with a
//! rational relation space in place of the lattice.
//!
//! Module map:
//! - [`ratfield`]: polynomial and rational-function kernel, operators.
//! - [`factor`]: squarefree and irreducible factorization over ℚ.
//! - [`lattice`]: integer lattices in Hermite normal form.
//! - [`jets`]: σ-jet prolongation of linear systems.
//! - [`logderiv`]: logarithmic-derivative and exactness deciders.
//! - [`sigmalattice`]: σ-closed subgroups of tori and their invariants.
//! - [`galois`]: relation lattices and full group reports.
//! - [`expr`]: expression parser and printer.

pub mod error;
pub mod expr;
pub mod factor;
pub mod galois;
pub mod jets;
pub mod lattice;
pub mod logderiv;
pub mod ratfield;
pub mod sigmalattice;

pub use error::{Error, Result};
