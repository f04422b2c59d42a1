//! Superpositions of harmonic-oscillator coherent states whose coefficients
//! are quadratic Gauss sums.
//!
//! For a coprime fraction `M/N` the state `e^{-iφ n(n-1)/2}`-dressed coherent
//! state with `φ = 2πM/N` collapses to a finite superposition of `N` rotated
//! coherent states. This crate builds those superpositions exactly, evaluates
//! their coefficients by three independent routes and checks the defining
//! operator and integral equations numerically.
//!
//! Layout:
//! - [`number`]: gcd, modular inverse, Jacobi symbol
//! - [`phase`]: exact phases `e^{iπ·p/q}`
//! - [`gauss_sums`]: coefficient evaluation (direct sums and closed forms)
//! - [`superposition`]: the kitten-state descriptor and its DFT cross-checks
//! - [`fock`]: truncated Fock-space vectors and operator residuals
//! - [`wavefunc`]: coordinate-space wavefunctions and the fractional Fourier transform
//! - [`verify`]: the aggregated verification report

pub mod error;
pub mod fock;
pub mod gauss_sums;
pub mod number;
pub mod phase;
pub mod superposition;
pub mod tolerances;
pub mod verify;
pub mod wavefunc;

pub use error::{Error, Result};
pub use gauss_sums::{CoprimeFraction, ExactCoefficient};
pub use num_complex::Complex64 as C64;
pub use phase::RationalAngle;
pub use superposition::{Component, KittenDescriptor, Parity};
