#![allow(dead_code)]

use ncdeform::abelian::{GroupContext, GroupPoint};
use ncdeform::cocycles::{Bicharacter, SkewForm};
use ncdeform::deform::FourierElement;
use ncdeform::Complex64;
use proptest::prelude::*;

pub fn lattice(n: usize) -> GroupContext {
    GroupContext::lattice(n).unwrap()
}

pub fn pt(v: &[i64]) -> GroupPoint {
    GroupPoint::new(v.to_vec())
}

/// Complex numbers in the unit disc.
pub fn disc() -> impl Strategy<Value = Complex64> {
    (0.0..1.0f64, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r.sqrt(), t))
}

/// Sparse elements of `Z^n` with at most `max_support` points of radius ≤ 3.
pub fn element(n: usize, max_support: usize) -> impl Strategy<Value = FourierElement> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, n), disc()), 1..=max_support)
        .prop_map(move |terms| FourierElement::from_coeffs(&lattice(n), terms.into_iter().map(|(p, c)| (GroupPoint::new(p), c))).unwrap())
}

pub fn skew(n: usize) -> impl Strategy<Value = SkewForm> {
    prop::collection::vec(-2.0..2.0f64, n * (n - 1) / 2).prop_map(move |upper| {
        let mut m = nalgebra::DMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m[(i, j)] = upper[k];
                m[(j, i)] = -upper[k];
                k += 1;
            }
        }
        SkewForm::real(m).unwrap()
    })
}

/// `exp(-πiℏ γ(p, q))` with random skew `γ` and `ℏ ∈ [-1, 1]`.
pub fn skew_bicharacter(n: usize) -> impl Strategy<Value = Bicharacter> {
    (skew(n), -1.0..1.0f64).prop_map(move |(g, h)| Bicharacter::from_skew(&lattice(n), &g, h).unwrap())
}

/// Arbitrary (not necessarily skew) real exponent matrix.
pub fn general_bicharacter(n: usize) -> impl Strategy<Value = Bicharacter> {
    (prop::collection::vec(-2.0..2.0f64, n * n), -1.0..1.0f64)
        .prop_map(move |(a, h)| Bicharacter::lattice(&lattice(n), nalgebra::DMatrix::from_row_slice(n, n, &a), h).unwrap())
}
