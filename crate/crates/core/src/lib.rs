//! Steklov spectra of balls and annuli and their first-order response to
//! smooth boundary deformations.

pub mod error;
pub mod experiment;
pub mod harmonics;
pub mod mps;
pub mod perturbation;
pub mod spectra;

pub use error::{Error, Result};
