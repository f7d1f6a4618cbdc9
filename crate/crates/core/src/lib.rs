//! Profinite genus of torus-bundle groups `(Z × Z) ⋊_A Z`.
//!
//! The genus of `G_A` equals the class number of `Q(λ)`, `λ` an eigenvalue
//! of the monodromy `A`. This crate computes it exactly: geometry of the
//! bundle, class numbers of quadratic orders by form reduction, one matrix per
//! GL2(Z)-conjugacy class via Latimer–MacDuffee, and checkable evidence
//! (integral non-conjugacy, conjugacy witnesses modulo `m`).

pub mod arith;
pub mod conjugacy;
pub mod error;
pub mod exec;
pub mod forms;
pub mod genus;
pub mod json;
pub mod latimer;
pub mod matrix;
pub mod modular;
pub mod order;
pub mod render;
pub mod survey;
pub mod text;

pub use error::{Error, Result};
pub use exec::Exec;
pub use matrix::IntMat2;
