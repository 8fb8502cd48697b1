//! Numerical toolkit for genus-two hyperelliptic curves.
//!
//! The crate covers curve models and Igusa invariants, period and
//! quasi-period matrices by quadrature, genus-two theta functions, the
//! Kleinian sigma and wp functions, Bergman and Schiffer kernels, the mirror
//! curve of the resolved C^3/Z_6 orbifold, and Eynard-Orantin topological
//! recursion on it.

pub mod curve;
pub mod error;
pub mod jacobian;
pub mod numerics;
pub mod theta;
pub mod kernels;
pub mod mirror;
pub mod modularity;
pub mod periods;
pub mod recursion;
pub mod sample;

pub use error::{Error, Result};
