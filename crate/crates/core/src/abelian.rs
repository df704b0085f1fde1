//! Group contexts, character pairings and the unitary Fourier transform.
//!
//! Two kinds of group appear. In lattice mode the group is `Z^n`, whose dual
//! is the torus `T^n = R^n / Z^n`; torus points only ever enter through
//! pairings, so nothing is discretised. In finite mode the group is
//! `Z/N_1 × … × Z/N_n`, which is self-dual through
//! `e(u, ξ) = exp(2πi Σ u_j ξ_j / N_j)`; the same coordinates serve for the
//! group and its dual.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use num_integer::Integer;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupMode {
    Lattice,
    Finite(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupContext {
    rank: usize,
    mode: GroupMode,
}

/// A point of `Z^n` or of a finite group, stored as integer coordinates.
///
/// Finite-mode points produced by a [`GroupContext`] are always reduced into
/// `[0, N_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupPoint(Vec<i64>);

/// Argument of a translation: a torus point for lattice contexts, a group
/// point for finite ones.
#[derive(Debug, Clone, PartialEq)]
pub enum DualPoint {
    Torus(Vec<f64>),
    Group(GroupPoint),
}

impl GroupPoint {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest absolute coordinate (sup norm).
    pub fn radius(&self) -> usize {
        self.0.iter().map(|c| c.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

impl From<Vec<i64>> for GroupPoint {
    fn from(coords: Vec<i64>) -> Self {
        Self(coords)
    }
}

impl fmt::Display for GroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `exp(2πi · numer / denom)` with the numerator reduced exactly first.
pub fn root_of_unity(numer: i64, denom: u64) -> Complex64 {
    let r = numer.rem_euclid(denom as i64);
    Complex64::cis(2.0 * PI * r as f64 / denom as f64)
}

impl GroupContext {
    pub fn lattice(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidContext("rank must be at least 1".into()));
        }
        Ok(Self {
            rank,
            mode: GroupMode::Lattice,
        })
    }

    pub fn finite(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidContext("rank must be at least 1".into()));
        }
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidContext(format!("modulus {m} < 2")));
        }
        Ok(Self {
            rank: moduli.len(),
            mode: GroupMode::Finite(moduli),
        })
    }

    /// `(Z/N)^rank`.
    pub fn uniform(rank: usize, modulus: u64) -> Result<Self> {
        Self::finite(vec![modulus; rank])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mode(&self) -> &GroupMode {
        &self.mode
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.mode, GroupMode::Finite(_))
    }

    pub fn is_lattice(&self) -> bool {
        matches!(self.mode, GroupMode::Lattice)
    }

    pub fn moduli(&self) -> Option<&[u64]> {
        match &self.mode {
            GroupMode::Finite(m) => Some(m),
            GroupMode::Lattice => None,
        }
    }

    /// The common modulus when every factor has the same order.
    pub fn uniform_modulus(&self) -> Option<u64> {
        let m = self.moduli()?;
        if m.iter().all(|&x| x == m[0]) {
            Some(m[0])
        } else {
            None
        }
    }

    /// Group order `|V|` (finite mode only).
    pub fn order(&self) -> Option<usize> {
        self.moduli().map(|m| m.iter().map(|&x| x as usize).product())
    }

    /// `|V|^{-1/2}`, the constant that makes the finite Fourier transform unitary.
    pub fn norm_const(&self) -> Result<f64> {
        let order = self.order().ok_or(Error::UnsupportedMode { required: "finite" })?;
        Ok((order as f64).powf(-0.5))
    }

    pub fn require_finite(&self) -> Result<&[u64]> {
        self.moduli().ok_or(Error::UnsupportedMode { required: "finite" })
    }

    pub fn require_lattice(&self) -> Result<()> {
        if self.is_lattice() {
            Ok(())
        } else {
            Err(Error::UnsupportedMode { required: "lattice" })
        }
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: len,
            });
        }
        Ok(())
    }

    /// Builds a point, reducing coordinates in finite mode.
    pub fn point(&self, coords: Vec<i64>) -> Result<GroupPoint> {
        self.check_len(coords.len())?;
        Ok(self.reduce(GroupPoint(coords)))
    }

    pub fn zero(&self) -> GroupPoint {
        GroupPoint(vec![0; self.rank])
    }

    /// The `j`-th standard basis vector.
    pub fn basis(&self, j: usize) -> GroupPoint {
        let mut c = vec![0; self.rank];
        c[j] = 1;
        self.reduce(GroupPoint(c))
    }

    fn reduce(&self, mut p: GroupPoint) -> GroupPoint {
        if let GroupMode::Finite(m) = &self.mode {
            for (c, &n) in p.0.iter_mut().zip(m) {
                *c = c.rem_euclid(n as i64);
            }
        }
        p
    }

    /// Whether `p` has the right length and (finite mode) reduced coordinates.
    pub fn contains(&self, p: &GroupPoint) -> bool {
        if p.len() != self.rank {
            return false;
        }
        match &self.mode {
            GroupMode::Lattice => true,
            GroupMode::Finite(m) => p.0.iter().zip(m).all(|(&c, &n)| c >= 0 && c < n as i64),
        }
    }

    pub fn add(&self, p: &GroupPoint, q: &GroupPoint) -> GroupPoint {
        self.reduce(GroupPoint(p.0.iter().zip(&q.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, p: &GroupPoint, q: &GroupPoint) -> GroupPoint {
        self.reduce(GroupPoint(p.0.iter().zip(&q.0).map(|(a, b)| a - b).collect()))
    }

    pub fn neg(&self, p: &GroupPoint) -> GroupPoint {
        self.reduce(GroupPoint(p.0.iter().map(|a| -a).collect()))
    }

    pub fn scale(&self, k: i64, p: &GroupPoint) -> GroupPoint {
        self.reduce(GroupPoint(p.0.iter().map(|a| k * a).collect()))
    }

    /// Row-major index of a reduced finite-mode point (last coordinate fastest).
    pub fn index_of(&self, p: &GroupPoint) -> usize {
        let m = self.moduli().expect("index_of requires a finite context");
        p.0.iter()
            .zip(m)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c.rem_euclid(n as i64) as usize)
    }

    pub fn point_at(&self, mut index: usize) -> GroupPoint {
        let m = self.moduli().expect("point_at requires a finite context");
        let mut coords = vec![0i64; m.len()];
        for (c, &n) in coords.iter_mut().zip(m).rev() {
            *c = (index % n as usize) as i64;
            index /= n as usize;
        }
        GroupPoint(coords)
    }

    /// All points of a finite context in index order.
    pub fn points(&self) -> impl Iterator<Item = GroupPoint> + '_ {
        let order = self.order().expect("points requires a finite context");
        (0..order).map(move |i| self.point_at(i))
    }

    /// Exact turn count of `e(u, ξ)` over the common denominator `lcm(N_j)`.
    fn pairing_turns(&self, moduli: &[u64], u: &GroupPoint, xi: &GroupPoint) -> (i64, u64) {
        let l = moduli.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        let mut total: i64 = 0;
        for ((&a, &b), &n) in u.0.iter().zip(&xi.0).zip(moduli) {
            let term = (a as i128 * b as i128).rem_euclid(n as i128) as i64;
            total = (total + term * (l / n) as i64).rem_euclid(l as i64);
        }
        (total, l)
    }
}

/// Finite-mode character pairing `e(u, ξ) = exp(2πi Σ u_j ξ_j / N_j)`.
///
/// For lattice contexts the dual argument is a torus point; use
/// [`torus_pairing`] or [`character`].
pub fn pairing(ctx: &GroupContext, u: &GroupPoint, xi: &GroupPoint) -> Result<Complex64> {
    let moduli = ctx.require_finite()?;
    ctx.check_len(u.len())?;
    ctx.check_len(xi.len())?;
    let (turns, denom) = ctx.pairing_turns(moduli, u, xi);
    Ok(root_of_unity(turns, denom))
}

/// Lattice/torus duality `p ↦ exp(2πi Σ p_j t_j)`.
pub fn torus_pairing(ctx: &GroupContext, p: &GroupPoint, t: &[f64]) -> Result<Complex64> {
    ctx.require_lattice()?;
    ctx.check_len(p.len())?;
    ctx.check_len(t.len())?;
    let phase: f64 = p.0.iter().zip(t).map(|(&a, &b)| a as f64 * b).sum();
    Ok(Complex64::cis(2.0 * PI * phase.rem_euclid(1.0)))
}

/// Dispatches to [`pairing`] or [`torus_pairing`] according to the dual point.
pub fn character(ctx: &GroupContext, p: &GroupPoint, v: &DualPoint) -> Result<Complex64> {
    match v {
        DualPoint::Torus(t) => torus_pairing(ctx, p, t),
        DualPoint::Group(g) => pairing(ctx, p, g),
    }
}

/// A complex-valued function on a finite group, stored in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteVector {
    ctx: GroupContext,
    values: Vec<Complex64>,
}

impl FiniteVector {
    pub fn new(ctx: &GroupContext, values: Vec<Complex64>) -> Result<Self> {
        let order = ctx.order().ok_or(Error::UnsupportedMode { required: "finite" })?;
        if values.len() != order {
            return Err(Error::DimensionMismatch {
                expected: order,
                found: values.len(),
            });
        }
        if values.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite value".into()));
        }
        Ok(Self {
            ctx: ctx.clone(),
            values,
        })
    }

    pub fn zeros(ctx: &GroupContext) -> Result<Self> {
        let order = ctx.order().ok_or(Error::UnsupportedMode { required: "finite" })?;
        Self::new(ctx, vec![Complex64::new(0.0, 0.0); order])
    }

    pub fn constant(ctx: &GroupContext, c: Complex64) -> Result<Self> {
        let order = ctx.order().ok_or(Error::UnsupportedMode { required: "finite" })?;
        Self::new(ctx, vec![c; order])
    }

    pub fn delta(ctx: &GroupContext, p: &GroupPoint) -> Result<Self> {
        let mut v = Self::zeros(ctx)?;
        if !ctx.contains(p) {
            return Err(Error::InvalidArgument(format!("point {p} not in context")));
        }
        let i = ctx.index_of(p);
        v.values[i] = Complex64::new(1.0, 0.0);
        Ok(v)
    }

    pub fn from_fn(ctx: &GroupContext, mut f: impl FnMut(&GroupPoint) -> Complex64) -> Result<Self> {
        let values = ctx.points().map(|p| f(&p)).collect();
        Self::new(ctx, values)
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn get(&self, p: &GroupPoint) -> Complex64 {
        self.values[self.ctx.index_of(p)]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `x ↦ f(x + w)`.
    pub fn translate(&self, w: &GroupPoint) -> Self {
        let values = self
            .ctx
            .points()
            .map(|x| self.get(&self.ctx.add(&x, w)))
            .collect();
        Self {
            ctx: self.ctx.clone(),
            values,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|z| z * c)
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            ctx: self.ctx.clone(),
            values: self.values.iter().map(|&z| f(z)).collect(),
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(Self {
            ctx: self.ctx.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: Complex64) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        for (a, &b) in self.values.iter_mut().zip(&other.values) {
            *a += b * c;
        }
        Ok(())
    }

    pub fn norm_l2(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn norm_l1(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).sum()
    }

    /// Sup-norm distance; `+∞` on context mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.ctx != other.ctx {
            return f64::INFINITY;
        }
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn transform(ctx: &GroupContext, f: &FiniteVector, sign: i64) -> Result<FiniteVector> {
    let moduli = ctx.require_finite()?;
    if f.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    let points: Vec<GroupPoint> = ctx.points().collect();
    let c = ctx.norm_const()?;
    let values = points
        .iter()
        .map(|v| {
            let s: Complex64 = points
                .iter()
                .zip(f.values())
                .map(|(xi, &fx)| {
                    let (turns, denom) = ctx.pairing_turns(moduli, v, xi);
                    root_of_unity(sign * turns, denom) * fx
                })
                .sum();
            s * c
        })
        .collect();
    FiniteVector::new(ctx, values)
}

/// `f̂(v) = |V|^{-1/2} Σ_ξ e(v, ξ) f(ξ)`.
pub fn fourier(ctx: &GroupContext, f: &FiniteVector) -> Result<FiniteVector> {
    transform(ctx, f, 1)
}

/// `f(ξ) = |V|^{-1/2} Σ_v conj(e(v, ξ)) f̂(v)`.
pub fn inverse_fourier(ctx: &GroupContext, f: &FiniteVector) -> Result<FiniteVector> {
    transform(ctx, f, -1)
}
