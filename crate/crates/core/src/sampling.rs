//! Seeded random inputs for experiments and property checks.
//!
//! Every generator takes the caller's RNG so one 64-bit seed determines a
//! whole run.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::abelian::{DualPoint, FiniteVector, GroupContext, GroupPoint};
use crate::cocycles::{Bicharacter, SkewForm};
use crate::deform::FourierElement;
use crate::linalg::IntMatrix;
use crate::Result;

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Uniform on the closed unit disc.
pub fn unit_disc<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    loop {
        let z = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    }
}

pub fn unit_phase<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::cis(rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Lattice coordinates in `[-radius, radius]`; finite coordinates uniform.
pub fn point<R: Rng + ?Sized>(rng: &mut R, ctx: &GroupContext, radius: i64) -> GroupPoint {
    let coords = match ctx.moduli() {
        Some(m) => m.iter().map(|&n| rng.gen_range(0..n as i64)).collect(),
        None => (0..ctx.rank()).map(|_| rng.gen_range(-radius..=radius)).collect(),
    };
    GroupPoint::new(coords)
}

/// Between 1 and `max_support` random points, coefficients in the unit disc.
pub fn element<R: Rng + ?Sized>(rng: &mut R, ctx: &GroupContext, max_support: usize, radius: i64) -> FourierElement {
    let k = rng.gen_range(1..=max_support.max(1));
    let coeffs: Vec<_> = (0..k).map(|_| (point(rng, ctx, radius), unit_disc(rng))).collect();
    FourierElement::from_coeffs(ctx, coeffs).expect("sampled points lie in the context")
}

pub fn finite_vector<R: Rng + ?Sized>(rng: &mut R, ctx: &GroupContext) -> Result<FiniteVector> {
    FiniteVector::from_fn(ctx, |_| unit_disc(rng))
}

/// Real skew matrix with entries in `[-scale, scale]`.
pub fn skew_form<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> SkewForm {
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.gen_range(-scale..=scale);
            m[(i, j)] = x;
            m[(j, i)] = -x;
        }
    }
    SkewForm::real(m).expect("constructed skew")
}

/// `exp(-πiℏ pᵀAq)` with `A` skew (or arbitrary) and `ℏ ∈ [-1, 1]`.
pub fn lattice_bicharacter<R: Rng + ?Sized>(rng: &mut R, ctx: &GroupContext, skew: bool) -> Result<Bicharacter> {
    let n = ctx.rank();
    let hbar = rng.gen_range(-1.0..=1.0);
    if skew {
        return Bicharacter::from_skew(ctx, &skew_form(rng, n, 1.0), hbar);
    }
    Bicharacter::lattice(ctx, DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..=1.0)), hbar)
}

/// Integer exponent matrix mod `N`; the context must have one modulus.
pub fn finite_bicharacter<R: Rng + ?Sized>(rng: &mut R, ctx: &GroupContext, skew: bool) -> Result<Bicharacter> {
    let n = ctx.rank();
    let modulus = ctx.uniform_modulus().unwrap_or(1) as i64;
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if skew {
                if i < j {
                    let x = rng.gen_range(0..modulus.max(1));
                    m.set(i, j, x);
                    m.set(j, i, -x);
                }
            } else {
                m.set(i, j, rng.gen_range(0..modulus.max(1)));
            }
        }
    }
    Bicharacter::finite(ctx, &m)
}

pub fn torus_point<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.0..1.0)).collect()
}

/// Torus point for lattice contexts, group point for finite ones.
pub fn dual_point<R: Rng + ?Sized>(rng: &mut R, ctx: &GroupContext) -> DualPoint {
    if ctx.is_finite() {
        DualPoint::Group(point(rng, ctx, 0))
    } else {
        DualPoint::Torus(torus_point(rng, ctx.rank()))
    }
}
