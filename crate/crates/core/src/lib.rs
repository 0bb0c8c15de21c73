//! Spectral machinery for average-case k-fold Cheeger constants.
//!
//! This crate computes, for undirected simple graphs:
//!
//! - Cheeger ratios, the average-case k-fold partition quality
//!   `h(S) = (1/k) Σ_{i<j} e(S_i,S_j)/min{vol S_i, vol S_j}`, and the
//!   worst-case variant `max_i h(S_i)`;
//! - the normalized Laplacian `L = D^{-1/2}(D - A)D^{-1/2}`, its full
//!   eigendecomposition (cyclic Jacobi), and harmonic eigenvectors
//!   `x_i = D^{-1/2} v_i`;
//! - linear eigenvalue bounds on the k-fold constant, in both the
//!   per-eigenvector ∞-norm and summed ∞-norm flavors;
//! - the randomized spectral rounding scheme that assigns vertices to parts
//!   with probabilities shifted by harmonic eigenvector entries, together
//!   with its exact expectation identities and concentration diagnostics;
//! - exhaustive exact-rational oracles (`h_G`, `h_G^(k)`, worst-case
//!   `ĥ_G^(k)`) for desk-scale graphs, used to validate everything else.
//!
//! The crate is `no_std` (with `alloc`); file and process concerns live in
//! the companion `kcheeger` crate. All randomized operations take explicit
//! seeds and use a counter-based generator, so results are reproducible
//! bit-for-bit across platforms and thread schedules.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod cheeger;
pub mod edgelist;
mod error;
mod fmath;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod rounding;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use graph::{Graph, Partition, VertexSet};
