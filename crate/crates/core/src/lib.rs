//! # qergodic
//!
//! Finite quantum groups realised as multi-matrix C*-Hopf algebras, random walks driven by
//! states on them, and a classifier that decides whether a walk is ergodic, reducible onto a
//! quasi-subgroup, or periodic on a cyclic coset.
//!
//! Layers, bottom up:
//!
//! - [`multimatrix`]: direct sums of complex matrix blocks, positivity, spectral projections,
//!   tracial `L^p` norms, tensor products and linear maps in canonical coordinates.
//! - [`hopf`]: comultiplication, counit and antipode; axiom residuals; the Haar state found by
//!   a linear solve; group-like projections and the density-level convolution product.
//! - [`catalog`]: function algebras `F(G)`, group algebras `CG`, the Kac–Paljutkin algebra,
//!   finite-group utilities and state builders.
//! - [`walks`]: states as walks, convolution powers, stochastic operators, distances to the
//!   Haar state, Cesàro limits and supports.
//! - [`ergodicity`]: irreducibility, cyclic partitions and the ergodic / reducible / periodic
//!   verdict, plus the Zhang, Freslon and Baraquin partial criteria.
//!
//! All values are immutable after construction and every operation is a pure function.

#![forbid(unsafe_code)]

pub mod catalog;
pub mod ergodicity;
mod error;
pub mod hopf;
pub mod multimatrix;
pub mod walks;

pub use error::{Error, Result};
pub use nalgebra::Complex;

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
