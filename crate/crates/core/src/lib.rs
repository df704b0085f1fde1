//! Strict deformation quantization over a parameter space, at desk scale.
//!
//! The crate works entirely in the Fourier picture. Elements of the
//! (deformed) torus algebra are finitely supported coefficient maps on the
//! dual lattice `Z^n`; finite abelian groups `(Z/N)^n` provide exact models
//! for the Rieffel integral product and the Landstad–Kasprzak crossed
//! product, where every integral becomes a finite sum.
//!
//! Module map:
//!
//! * [`abelian`]: group contexts, character pairings, unitary Fourier transform.
//! * [`cocycles`]: bicharacters, cohomology tests, the `σ¹`, `e¹`, `T`, `T*` maps.
//! * [`deform`]: star products, involution, Poisson bracket, semiclassical defect,
//!   translations and the finite Rieffel product.
//! * [`crossed`]: crossed product `A ⋊ V`, dual and deformed dual actions,
//!   spectral fixed points and the `I` map.
//! * [`paramdeform`]: cocycle fields over a sampled base, fibrewise products,
//!   Heisenberg field and symplectic monodromy.
//! * [`norms`]: window compressions of left multiplication and their norms.
//! * [`automorphy`]: `τ` cocycles on group actions and factors of automorphy.
//! * [`sampling`]: seeded random elements and cocycles for experiments.

pub mod abelian;
pub mod automorphy;
pub mod cocycles;
pub mod crossed;
pub mod deform;
mod error;
pub mod linalg;
pub mod norms;
pub mod paramdeform;
pub mod sampling;

pub use error::{Error, Result};

pub use num_complex::Complex64;

/// Outcome of an identity check evaluated on a finite sample set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckReport {
    pub passed: bool,
    pub max_deviation: f64,
    pub samples: usize,
}

impl CheckReport {
    pub fn new(max_deviation: f64, samples: usize, tolerance: f64) -> Self {
        Self {
            passed: max_deviation <= tolerance,
            max_deviation,
            samples,
        }
    }
}
