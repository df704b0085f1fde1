//! Star products on finitely supported Fourier elements.
//!
//! The deformed product of two coefficient maps is the twisted convolution
//!
//! ```text
//! (a ⋆ b)(p) = Σ_{p₁+p₂=p} a(p₁) b(p₂) σ(p₁, p₂)
//! ```
//!
//! evaluated as an exact finite double sum. For the torus the cocycle is
//! `σ_ℏ(p, q) = exp(-πiℏ γ(p, q))` with `γ` a real skew form; with this
//! unimodular convention the first-order term of `(a ⋆_ℏ b - ab)/(iℏ)` is
//! [`BRACKET_SCALE`] times the Fourier-side Poisson bracket
//! `{a, b}(p) = -4π² Σ a(p₁) b(p₂) γ(p₁, p₂)`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::abelian::{character, DualPoint, FiniteVector, GroupContext, GroupPoint};
use crate::cocycles::{t_map, Bicharacter, BicharacterForm, LinearMap, SkewForm, TwoCocycle};
use crate::norms::{op_norm_estimate, Window};
use crate::{Error, Result};

/// Coefficients below this magnitude are dropped after arithmetic.
pub const CANONICAL_THRESHOLD: f64 = 1e-15;

/// Ratio between the `ℏ`-derivative of `⋆_ℏ` at zero and the `-4π²`
/// Fourier-side bracket: `d/dℏ exp(-πiℏγ) |₀ / (i · -4π²γ) = 1/(4π)`.
///
/// Equivalently, the bracket-normalised deformation parameter is `4π·ℏ`.
pub const BRACKET_SCALE: f64 = 1.0 / (4.0 * PI);

/// Finitely supported map from a dual lattice (or finite dual group) to `C`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierElement {
    ctx: GroupContext,
    coeffs: BTreeMap<GroupPoint, Complex64>,
}

impl FourierElement {
    pub fn zero(ctx: &GroupContext) -> Self {
        Self {
            ctx: ctx.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// Sums duplicate points and drops negligible coefficients.
    pub fn from_coeffs(ctx: &GroupContext, coeffs: impl IntoIterator<Item = (GroupPoint, Complex64)>) -> Result<Self> {
        let mut out = Self::zero(ctx);
        for (p, c) in coeffs {
            if !ctx.contains(&p) {
                return Err(Error::InvalidArgument(format!("point {p} is not in the context")));
            }
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite coefficient at {p}")));
            }
            *out.coeffs.entry(p).or_default() += c;
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn delta(ctx: &GroupContext, p: &GroupPoint) -> Result<Self> {
        Self::from_coeffs(ctx, [(p.clone(), Complex64::new(1.0, 0.0))])
    }

    pub fn scalar(ctx: &GroupContext, c: Complex64) -> Self {
        let mut out = Self::zero(ctx);
        out.coeffs.insert(ctx.zero(), c);
        out.canonicalize();
        out
    }

    fn canonicalize(&mut self) {
        self.coeffs.retain(|_, c| c.norm() >= CANONICAL_THRESHOLD);
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn get(&self, p: &GroupPoint) -> Complex64 {
        self.coeffs.get(p).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupPoint, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupPoint> {
        self.coeffs.keys()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest sup-norm of a support point (0 for the zero element).
    pub fn support_radius(&self) -> usize {
        self.coeffs.keys().map(GroupPoint::radius).max().unwrap_or(0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            *out.coeffs.entry(p.clone()).or_default() += c;
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        };
        out.canonicalize();
        out
    }

    /// Maps each coefficient, keeping the support.
    pub fn map_coeffs(&self, f: impl Fn(&GroupPoint, Complex64) -> Complex64) -> Self {
        let mut out = Self {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|(p, &v)| (p.clone(), f(p, v))).collect(),
        };
        out.canonicalize();
        out
    }

    pub fn norm_l1(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// `‖self - other‖₁` without canonicalising the difference.
    pub fn distance_l1(&self, other: &Self) -> f64 {
        if self.ctx != other.ctx {
            return f64::INFINITY;
        }
        let mut total = 0.0;
        for (p, c) in &self.coeffs {
            total += (c - other.get(p)).norm();
        }
        for (p, c) in &other.coeffs {
            if !self.coeffs.contains_key(p) {
                total += c.norm();
            }
        }
        total
    }

    /// `‖self - other‖_∞` over the union of supports.
    pub fn distance_sup(&self, other: &Self) -> f64 {
        if self.ctx != other.ctx {
            return f64::INFINITY;
        }
        self.coeffs
            .keys()
            .chain(other.coeffs.keys())
            .map(|p| (self.get(p) - other.get(p)).norm())
            .fold(0.0, f64::max)
    }
}

fn twisted_sum(a: &FourierElement, b: &FourierElement, phase: impl Fn(&GroupPoint, &GroupPoint) -> Complex64) -> FourierElement {
    let ctx = &a.ctx;
    let mut acc: BTreeMap<GroupPoint, Complex64> = BTreeMap::new();
    for (p1, x) in &a.coeffs {
        for (p2, y) in &b.coeffs {
            *acc.entry(ctx.add(p1, p2)).or_default() += x * y * phase(p1, p2);
        }
    }
    let mut out = FourierElement {
        ctx: ctx.clone(),
        coeffs: acc,
    };
    out.canonicalize();
    out
}

/// Twisted convolution `(a ⋆ b)(p) = Σ_{p₁+p₂=p} a(p₁)b(p₂)σ(p₁,p₂)`.
pub fn star<C: TwoCocycle + ?Sized>(a: &FourierElement, b: &FourierElement, sigma: &C) -> Result<FourierElement> {
    a.check_same(b)?;
    if sigma.context() != &a.ctx {
        return Err(Error::ContextMismatch);
    }
    Ok(twisted_sum(a, b, |p, q| sigma.value(p, q)))
}

/// Undeformed (commutative) convolution.
pub fn convolve(a: &FourierElement, b: &FourierElement) -> Result<FourierElement> {
    a.check_same(b)?;
    Ok(twisted_sum(a, b, |_, _| Complex64::new(1.0, 0.0)))
}

/// `a*(ξ) = σ(ξ, ξ) conj(a(-ξ))`.
pub fn involution<C: TwoCocycle + ?Sized>(a: &FourierElement, sigma: &C) -> Result<FourierElement> {
    if sigma.context() != &a.ctx {
        return Err(Error::ContextMismatch);
    }
    let ctx = &a.ctx;
    let coeffs = a.coeffs.iter().map(|(p, c)| {
        let q = ctx.neg(p);
        let phase = sigma.value(&q, &q);
        (q, phase * c.conj())
    });
    FourierElement::from_coeffs(ctx, coeffs)
}

/// `{a, b}(p) = -4π² Σ_{p₁+p₂=p} a(p₁) b(p₂) γ(p₁, p₂)`.
pub fn poisson_bracket(a: &FourierElement, b: &FourierElement, gamma: &SkewForm) -> Result<FourierElement> {
    a.check_same(b)?;
    a.ctx.require_lattice()?;
    let g = gamma.as_real()?;
    if g.nrows() != a.ctx.rank() {
        return Err(Error::DimensionMismatch {
            expected: a.ctx.rank(),
            found: g.nrows(),
        });
    }
    let mut acc: BTreeMap<GroupPoint, Complex64> = BTreeMap::new();
    for (p1, x) in &a.coeffs {
        for (p2, y) in &b.coeffs {
            let w = gamma.apply(p1, p2)?;
            if w != 0.0 {
                *acc.entry(a.ctx.add(p1, p2)).or_default() += x * y * (-4.0 * PI * PI * w);
            }
        }
    }
    let mut out = FourierElement {
        ctx: a.ctx.clone(),
        coeffs: acc,
    };
    out.canonicalize();
    Ok(out)
}

/// Element `(a ⋆_ℏ b - a ⋆_0 b)/(iℏ) - scale·{a, b}` whose norm is the defect.
pub fn semiclassical_difference(
    a: &FourierElement,
    b: &FourierElement,
    gamma: &SkewForm,
    hbar: f64,
    scale: f64,
) -> Result<FourierElement> {
    if hbar == 0.0 {
        return Err(Error::InvalidArgument("hbar must be nonzero".into()));
    }
    let sigma = Bicharacter::from_skew(&a.ctx, gamma, hbar)?;
    let deformed = star(a, b, &sigma)?;
    let commutative = convolve(a, b)?;
    let quotient = deformed.sub(&commutative)?.scale(Complex64::new(0.0, -1.0 / hbar));
    let bracket = poisson_bracket(a, b, gamma)?;
    quotient.sub(&bracket.scale(Complex64::new(scale, 0.0)))
}

/// `‖(a ⋆_ℏ b - ab)/(iℏ) - {a, b}‖` with the bracket rescaled by
/// [`BRACKET_SCALE`]; the norm is the window estimate of the `ℏ`-deformed
/// operator norm. Vanishes linearly as `ℏ → 0`.
pub fn semiclassical_defect(
    a: &FourierElement,
    b: &FourierElement,
    gamma: &SkewForm,
    hbar: f64,
    window: Window,
) -> Result<f64> {
    semiclassical_defect_scaled(a, b, gamma, hbar, window, BRACKET_SCALE)
}

/// [`semiclassical_defect`] with an explicit bracket scale.
pub fn semiclassical_defect_scaled(
    a: &FourierElement,
    b: &FourierElement,
    gamma: &SkewForm,
    hbar: f64,
    window: Window,
    scale: f64,
) -> Result<f64> {
    let diff = semiclassical_difference(a, b, gamma, hbar, scale)?;
    let sigma = Bicharacter::from_skew(&a.ctx, gamma, hbar)?;
    op_norm_estimate(&diff, &sigma, window)
}

/// Bicharacter whose exponent is the sum of the two exponents (`σ₁σ₂`).
pub fn compose_cocycles(s1: &Bicharacter, s2: &Bicharacter) -> Result<Bicharacter> {
    if s1.context() != s2.context() {
        return Err(Error::ContextMismatch);
    }
    let ctx = s1.context();
    match (s1.form(), s2.form()) {
        (
            BicharacterForm::Lattice { matrix: a1, hbar: h1 },
            BicharacterForm::Lattice { matrix: a2, hbar: h2 },
        ) => {
            if h1 == h2 {
                Bicharacter::lattice(ctx, a1 + a2, *h1)
            } else {
                Bicharacter::lattice(ctx, a1 * *h1 + a2 * *h2, 1.0)
            }
        }
        (BicharacterForm::Finite { matrix: b1 }, BicharacterForm::Finite { matrix: b2 }) => {
            Bicharacter::finite(ctx, &b1.add(b2)?.to_int())
        }
        _ => Err(Error::ContextMismatch),
    }
}

/// Pointwise product of two phase functions: the structure constants of
/// deforming `A_{σ₁}` once more by `σ₂`.
pub struct IteratedCocycle<'a, A: ?Sized, B: ?Sized> {
    pub first: &'a A,
    pub second: &'a B,
}

impl<A: TwoCocycle + ?Sized, B: TwoCocycle + ?Sized> TwoCocycle for IteratedCocycle<'_, A, B> {
    fn context(&self) -> &GroupContext {
        self.first.context()
    }

    fn value(&self, x: &GroupPoint, y: &GroupPoint) -> Complex64 {
        self.first.value(x, y) * self.second.value(x, y)
    }
}

/// `‖a ⋆_{(σ₁)σ₂} b - a ⋆_{σ₁σ₂} b‖₁`: iterated deformation against the
/// single deformation by the exponent-sum cocycle.
pub fn iterated_star_check(a: &FourierElement, b: &FourierElement, s1: &Bicharacter, s2: &Bicharacter) -> Result<f64> {
    if s1.context() != s2.context() {
        return Err(Error::ContextMismatch);
    }
    let iterated = star(a, b, &IteratedCocycle { first: s1, second: s2 })?;
    let composed = star(a, b, &compose_cocycles(s1, s2)?)?;
    Ok(iterated.distance_l1(&composed))
}

/// Translation automorphism in the Fourier picture: the coefficient at `p`
/// is multiplied by the character `p(v)`.
pub fn translate(a: &FourierElement, v: &DualPoint) -> Result<FourierElement> {
    let ctx = &a.ctx;
    let mut coeffs = Vec::with_capacity(a.coeffs.len());
    for (p, c) in &a.coeffs {
        coeffs.push((p.clone(), c * character(ctx, p, v)?));
    }
    FourierElement::from_coeffs(ctx, coeffs)
}

/// `‖α_v[a] ⋆ α_v[b] - α_v[a ⋆ b]‖₁`.
pub fn automorphism_check<C: TwoCocycle + ?Sized>(
    a: &FourierElement,
    b: &FourierElement,
    sigma: &C,
    v: &DualPoint,
) -> Result<f64> {
    let lhs = star(&translate(a, v)?, &translate(b, v)?, sigma)?;
    let rhs = translate(&star(a, b, sigma)?, v)?;
    Ok(lhs.distance_l1(&rhs))
}

/// Rieffel's product on functions over a finite `V`:
///
/// ```text
/// (a ⋆ b)(v) = |V|⁻¹ Σ_{u,w} conj(e(u, w)) a(v + T*u) b(v + w)
/// ```
///
/// with `T*` the `e`-adjoint of `t`. Under the unitary transform this is dual
/// to twisted convolution: `fourier(star(f, g, σ)) = |V|^{1/2} · (f̂ ⋆ ĝ)`
/// when `t = σ¹∘e¹`. For `t = 0` it reduces to the pointwise product.
pub fn rieffel_product_finite(a: &FiniteVector, b: &FiniteVector, e: &Bicharacter, t: &LinearMap) -> Result<FiniteVector> {
    let ctx = a.context();
    if b.context() != ctx || e.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    let order = ctx.order().ok_or(Error::UnsupportedMode { required: "finite" })?;
    if t.dim() != ctx.rank() {
        return Err(Error::DimensionMismatch {
            expected: ctx.rank(),
            found: t.dim(),
        });
    }
    // adjoint of t with respect to e (t_map's second component for a given T)
    let e_one = crate::cocycles::sigma_one(e);
    if !e_one.is_invertible() {
        return Err(Error::Degenerate("e must be nondegenerate"));
    }
    let t_star = e_one.inverse()?.compose(&t.transpose())?.compose(&e_one)?;

    let points: Vec<GroupPoint> = ctx.points().collect();
    let shifted_a: Vec<FiniteVector> = points
        .iter()
        .map(|u| Ok(a.translate(&t_star.apply_point(ctx, u)?)))
        .collect::<Result<_>>()?;
    let shifted_b: Vec<FiniteVector> = points.iter().map(|w| b.translate(w)).collect();

    let mut out = vec![Complex64::new(0.0, 0.0); order];
    for (u, au) in points.iter().zip(&shifted_a) {
        for (w, bw) in points.iter().zip(&shifted_b) {
            let k = e.value(u, w).conj();
            for ((o, x), y) in out.iter_mut().zip(au.values()).zip(bw.values()) {
                *o += k * x * y;
            }
        }
    }
    let inv = 1.0 / order as f64;
    FiniteVector::new(ctx, out.into_iter().map(|z| z * inv).collect())
}

/// [`rieffel_product_finite`] with `T = σ¹∘e¹` derived from `σ`.
pub fn rieffel_product_for(a: &FiniteVector, b: &FiniteVector, sigma: &Bicharacter, e: &Bicharacter) -> Result<FiniteVector> {
    let (t, _) = t_map(sigma, e)?;
    rieffel_product_finite(a, b, e, &t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{fourier, inverse_fourier};
    use crate::linalg::IntMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lat2() -> GroupContext {
        GroupContext::lattice(2).unwrap()
    }

    fn pt(v: &[i64]) -> GroupPoint {
        GroupPoint::new(v.to_vec())
    }

    fn std_sigma(hbar: f64) -> Bicharacter {
        Bicharacter::from_skew(&lat2(), &SkewForm::symplectic(1, 1.0), hbar).unwrap()
    }

    #[test]
    fn delta_products() {
        let ctx = lat2();
        let e1 = FourierElement::delta(&ctx, &pt(&[1, 0])).unwrap();
        let e2 = FourierElement::delta(&ctx, &pt(&[0, 1])).unwrap();
        let triv = Bicharacter::trivial(&ctx).unwrap();
        assert_eq!(star(&e1, &e2, &triv).unwrap(), FourierElement::delta(&ctx, &pt(&[1, 1])).unwrap());
        let prod = star(&e1, &e2, &std_sigma(0.5)).unwrap();
        assert_eq!(prod.support_len(), 1);
        assert!((prod.get(&pt(&[1, 1])) - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn star_rejects_mixed_contexts() {
        let a = FourierElement::delta(&lat2(), &pt(&[1, 0])).unwrap();
        let l3 = GroupContext::lattice(3).unwrap();
        let b = FourierElement::delta(&l3, &pt(&[1, 0, 0])).unwrap();
        assert_eq!(star(&a, &b, &std_sigma(1.0)), Err(Error::ContextMismatch));
    }

    #[test]
    fn involution_examples() {
        let ctx = lat2();
        let s = std_sigma(0.3);
        let a = FourierElement::scalar(&ctx, c(2.5, 0.0));
        assert_eq!(involution(&a, &s).unwrap(), a);
        let d = FourierElement::from_coeffs(&ctx, [(pt(&[2, -1]), c(1.0, 2.0))]).unwrap();
        let expect = FourierElement::from_coeffs(&ctx, [(pt(&[-2, 1]), c(1.0, -2.0))]).unwrap();
        assert_eq!(involution(&d, &s).unwrap(), expect);
    }

    #[test]
    fn bracket_examples() {
        let ctx = lat2();
        let theta = 0.7;
        let gamma = SkewForm::symplectic(1, theta);
        let e1 = FourierElement::delta(&ctx, &pt(&[1, 0])).unwrap();
        let e2 = FourierElement::delta(&ctx, &pt(&[0, 1])).unwrap();
        let br = poisson_bracket(&e1, &e2, &gamma).unwrap();
        assert!((br.get(&pt(&[1, 1])) - c(-4.0 * PI * PI * theta, 0.0)).norm() < 1e-12);
        let a = e1.add(&e2.scale(c(0.5, 0.5))).unwrap();
        assert!(poisson_bracket(&a, &a, &gamma).unwrap().is_zero());
        let unit = FourierElement::scalar(&ctx, c(1.0, 0.0));
        assert!(poisson_bracket(&a, &unit, &gamma).unwrap().is_zero());

        let z5 = GroupContext::finite(vec![5, 5]).unwrap();
        let f = FourierElement::delta(&z5, &pt(&[1, 0])).unwrap();
        assert!(matches!(poisson_bracket(&f, &f, &gamma), Err(Error::UnsupportedMode { .. })));
    }

    #[test]
    fn defect_on_commuting_pair_is_zero() {
        let ctx = lat2();
        let gamma = SkewForm::symplectic(1, 1.0);
        let a = FourierElement::from_coeffs(&ctx, [(pt(&[1, 0]), c(1.0, 0.0)), (pt(&[-2, 0]), c(0.0, 1.0))]).unwrap();
        let b = FourierElement::from_coeffs(&ctx, [(pt(&[3, 0]), c(0.5, 0.0))]).unwrap();
        for hbar in [1.0, 0.1, 1e-3] {
            assert_eq!(semiclassical_defect(&a, &b, &gamma, hbar, Window::new(4)).unwrap(), 0.0);
        }
        assert!(semiclassical_defect(&a, &b, &gamma, 0.0, Window::new(4)).is_err());
    }

    #[test]
    fn defect_delta_pair_closed_form() {
        let ctx = lat2();
        let gamma = SkewForm::symplectic(1, 1.0);
        let a = FourierElement::delta(&ctx, &pt(&[1, 0])).unwrap();
        let b = FourierElement::delta(&ctx, &pt(&[0, 1])).unwrap();
        for hbar in [0.5, 1e-1, 1e-2, 1e-3] {
            let expect = ((Complex64::cis(-PI * hbar) - 1.0) / c(0.0, hbar) + PI).norm();
            let got = semiclassical_defect(&a, &b, &gamma, hbar, Window::new(2)).unwrap();
            assert!((got - expect).abs() < 1e-12, "hbar={hbar}: {got} vs {expect}");
        }
        let d1 = semiclassical_defect(&a, &b, &gamma, 1e-2, Window::new(2)).unwrap();
        let d2 = semiclassical_defect(&a, &b, &gamma, 5e-3, Window::new(2)).unwrap();
        assert!((0.45..=0.55).contains(&(d2 / d1)));
    }

    #[test]
    fn composition_examples() {
        let ctx = lat2();
        let s = std_sigma(1.0);
        let doubled = compose_cocycles(&s, &s).unwrap();
        let two = std_sigma(2.0);
        for p in [pt(&[1, 0]), pt(&[2, -3])] {
            for q in [pt(&[0, 1]), pt(&[5, 1])] {
                assert!((doubled.value(&p, &q) - two.value(&p, &q)).norm() < 1e-12);
            }
        }
        // undeformation by the conjugate cocycle is exactly the convolution
        let s = std_sigma(0.37);
        let a = FourierElement::from_coeffs(&ctx, [(pt(&[1, 2]), c(0.3, 0.1)), (pt(&[-1, 0]), c(0.2, -0.6))]).unwrap();
        let b = FourierElement::from_coeffs(&ctx, [(pt(&[0, 1]), c(0.5, 0.5)), (pt(&[3, -1]), c(-0.1, 0.0))]).unwrap();
        let undeformed = star(&a, &b, &compose_cocycles(&s, &s.conjugate()).unwrap()).unwrap();
        assert_eq!(undeformed, convolve(&a, &b).unwrap());
        assert!(iterated_star_check(&a, &b, &s, &s.conjugate()).unwrap() < 1e-15);
    }

    #[test]
    fn translation_examples() {
        let ctx = lat2();
        let a = FourierElement::from_coeffs(&ctx, [(pt(&[1, 2]), c(0.3, 0.1))]).unwrap();
        assert_eq!(translate(&a, &DualPoint::Torus(vec![0.0, 0.0])).unwrap(), a);
        let t = translate(&a, &DualPoint::Torus(vec![0.25, 0.0])).unwrap();
        assert!((t.get(&pt(&[1, 2])) - c(0.3, 0.1) * c(0.0, 1.0)).norm() < 1e-15);
        assert!(translate(&a, &DualPoint::Torus(vec![0.25])).is_err());
    }

    #[test]
    fn rieffel_trivial_sigma_is_pointwise() {
        let z5 = GroupContext::finite(vec![5]).unwrap();
        let e = Bicharacter::standard_pairing(&z5).unwrap();
        let t = LinearMap::Modular(crate::linalg::ModMatrix::new(&IntMatrix::zeros(1, 1), 5).unwrap());
        let a = FiniteVector::from_fn(&z5, |p| c(p.coords()[0] as f64, 1.0)).unwrap();
        let b = FiniteVector::from_fn(&z5, |p| c(1.0, -(p.coords()[0] as f64))).unwrap();
        let prod = rieffel_product_finite(&a, &b, &e, &t).unwrap();
        assert!(prod.max_abs_diff(&a.mul(&b).unwrap()) < 1e-12);
        let one = FiniteVector::constant(&z5, c(1.0, 0.0)).unwrap();
        assert!(rieffel_product_finite(&one, &b, &e, &t).unwrap().max_abs_diff(&b) < 1e-12);
    }

    #[test]
    fn rieffel_matches_fourier_star_on_z5() {
        let z5 = GroupContext::finite(vec![5]).unwrap();
        let sigma = Bicharacter::finite_from_rows(&z5, &[vec![1]]).unwrap();
        let e = Bicharacter::standard_pairing(&z5).unwrap();
        let f = FiniteVector::from_fn(&z5, |p| c(0.1 * p.coords()[0] as f64, 0.3 - 0.05 * p.coords()[0] as f64)).unwrap();
        let g = FiniteVector::from_fn(&z5, |p| c((p.coords()[0] as f64).sin(), 0.2)).unwrap();
        let fe = FourierElement::from_coeffs(&z5, z5.points().map(|p| (p.clone(), f.get(&p)))).unwrap();
        let ge = FourierElement::from_coeffs(&z5, z5.points().map(|p| (p.clone(), g.get(&p)))).unwrap();
        let prod = star(&fe, &ge, &sigma).unwrap();
        let prod_vec = FiniteVector::from_fn(&z5, |p| prod.get(p)).unwrap();
        let lhs = rieffel_product_for(&fourier(&z5, &f).unwrap(), &fourier(&z5, &g).unwrap(), &sigma, &e).unwrap();
        let rhs = fourier(&z5, &prod_vec).unwrap().scale(c(z5.norm_const().unwrap(), 0.0));
        assert!(lhs.max_abs_diff(&rhs) < 1e-12, "{}", lhs.max_abs_diff(&rhs));
        let back = inverse_fourier(&z5, &lhs).unwrap().scale(c(5f64.sqrt(), 0.0));
        assert!(back.max_abs_diff(&prod_vec) < 1e-12);
    }
}
