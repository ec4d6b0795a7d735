//! Arithmetic and spectral computations around Maass waveforms on the
//! congruence subgroup Γ₀(9) and its relatives Γ₀(3), Γ(3), Γ³ and PSL₂(Z).
//!
//! The crate is organised by subsystem:
//!
//! - [`group`]: exact matrix arithmetic in PGL₂(Q), subgroup membership,
//!   coset enumeration and signatures.
//! - [`special`]: K-Bessel functions of imaginary order, digamma, the
//!   completed Riemann zeta function, Dirichlet characters and Gauss sums.
//! - [`trace`]: identity, elliptic and parabolic terms of the Selberg trace
//!   formula, scattering determinants and the genuinely-new cancellation.
//! - [`hecke`]: Hecke operators, character twists and the `T^{1/3}` / `J`
//!   actions on Fourier coefficients, and the paired-newform construction.
//! - [`rep`]: the PGL₂(F₃) ≅ S₄ character theory behind the decomposition.
//! - [`maass`]: a collocation solver for Maass cusp forms on Γ₀(N), N ∈ {1, 3, 9}.
//! - [`holo`]: exact q-expansion checks for holomorphic cusp forms.
//! - [`selftest`]: the invariant suite run by `modspec selftest`.
//! - [`cli`]: the command-line front end used by the `modspec` binary.

pub mod cli;
pub mod group;
pub mod hecke;
pub mod holo;
pub mod maass;
pub mod quad;
pub mod rep;
pub mod selftest;
pub mod special;
pub mod trace;

mod error;

pub use error::{Error, Result};
