//! Exact model of `B = A ⋊ V` for a finite abelian `V = (Z/N)^n`.
//!
//! `A` is the algebra of functions on `V̂` (coordinates identified with those
//! of `V` through the standard pairing), with `V` acting by translation
//! `α_u f(x) = f(x + u)`. An element of `B` is a table `v ↦ a(v) ∈ A` and the
//! product is `(a * b)(v) = Σ_u a(u) α_u[b(v - u)]`.
//!
//! Given a cocycle `σ` on `V̂` and a nondegenerate bicharacter `e` on `V`,
//! with `T = σ¹∘e¹`, the deformed dual action
//! `α̂^σ_ξ[a](v) = ξ(v) α_{σ¹ξ}⁻¹[a(v)]` has fixed points characterised by
//! `α_{Tu}[a(v)] = e(u, v) a(v)`. Summing fibres, `I(a) = Σ_v a(v)`, is then
//! multiplicative from the fixed-point algebra onto `A` with the Rieffel
//! product built from `σᵒᵖ`; for symmetric exponent matrices (every `n = 1`
//! case) this is the Rieffel product of `σ` itself.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::abelian::{pairing, FiniteVector, GroupContext, GroupPoint};
use crate::cocycles::{sigma_one, t_map, Bicharacter, LinearMap, TwoCocycle};
use crate::deform::rieffel_product_finite;
use crate::{CheckReport, Error, Result};

/// Tolerance used to decide that inputs of the `I` map are fixed points.
pub const FIXED_POINT_TOLERANCE: f64 = 1e-10;

/// A table `v ↦ a(v)` of functions on `V̂`, one per point of `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossedElement {
    ctx: GroupContext,
    fibres: Vec<FiniteVector>,
}

impl CrossedElement {
    pub fn zeros(ctx: &GroupContext) -> Result<Self> {
        let order = ctx.order().ok_or(Error::UnsupportedMode { required: "finite" })?;
        let zero = FiniteVector::zeros(ctx)?;
        Ok(Self {
            ctx: ctx.clone(),
            fibres: vec![zero; order],
        })
    }

    /// Fibres listed in point-index order.
    pub fn from_fibres(ctx: &GroupContext, fibres: Vec<FiniteVector>) -> Result<Self> {
        let order = ctx.order().ok_or(Error::UnsupportedMode { required: "finite" })?;
        if fibres.len() != order {
            return Err(Error::DimensionMismatch {
                expected: order,
                found: fibres.len(),
            });
        }
        if fibres.iter().any(|f| f.context() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self {
            ctx: ctx.clone(),
            fibres,
        })
    }

    /// `f(v, x)` is the value of fibre `v` at `x ∈ V̂`.
    pub fn from_fn(ctx: &GroupContext, mut f: impl FnMut(&GroupPoint, &GroupPoint) -> Complex64) -> Result<Self> {
        let fibres = ctx
            .points()
            .map(|v| FiniteVector::from_fn(ctx, |x| f(&v, x)))
            .collect::<Result<_>>()?;
        Self::from_fibres(ctx, fibres)
    }

    /// `λ_v`: unit fibre at `v`, zero elsewhere.
    pub fn lambda(ctx: &GroupContext, v: &GroupPoint) -> Result<Self> {
        Self::supported_at(ctx, v, FiniteVector::constant(ctx, Complex64::new(1.0, 0.0))?)
    }

    /// Single nonzero fibre `f` at `v`.
    pub fn supported_at(ctx: &GroupContext, v: &GroupPoint, f: FiniteVector) -> Result<Self> {
        if !ctx.contains(v) || f.context() != ctx {
            return Err(Error::ContextMismatch);
        }
        let mut out = Self::zeros(ctx)?;
        let i = ctx.index_of(v);
        out.fibres[i] = f;
        Ok(out)
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn fibre(&self, v: &GroupPoint) -> &FiniteVector {
        &self.fibres[self.ctx.index_of(v)]
    }

    pub fn fibres(&self) -> &[FiniteVector] {
        &self.fibres
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let fibres = self.fibres.iter().zip(&other.fibres).map(|(a, b)| a.add(b)).collect::<Result<_>>()?;
        Self::from_fibres(&self.ctx, fibres)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            ctx: self.ctx.clone(),
            fibres: self.fibres.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Largest entrywise difference over all fibres.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.ctx != other.ctx {
            return f64::INFINITY;
        }
        self.fibres
            .iter()
            .zip(&other.fibres)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }

    /// Whether every fibre away from `v = 0` vanishes.
    pub fn is_supported_at_zero(&self) -> bool {
        self.ctx
            .points()
            .filter(|v| *v != self.ctx.zero())
            .all(|v| self.fibre(&v).values().iter().all(|z| *z == Complex64::new(0.0, 0.0)))
    }
}

/// `(a * b)(v) = Σ_u a(u) α_u[b(v - u)]`.
pub fn crossed_conv(a: &CrossedElement, b: &CrossedElement) -> Result<CrossedElement> {
    twisted_sum(a, b, |_, _| Complex64::new(1.0, 0.0))
}

fn twisted_sum(
    a: &CrossedElement,
    b: &CrossedElement,
    phase: impl Fn(&GroupPoint, &GroupPoint) -> Complex64,
) -> Result<CrossedElement> {
    a.check_same(b)?;
    let ctx = &a.ctx;
    let points: Vec<GroupPoint> = ctx.points().collect();
    let mut out = CrossedElement::zeros(ctx)?;
    for v in &points {
        let acc = &mut out.fibres[ctx.index_of(v)];
        for u in &points {
            let au = a.fibre(u);
            if au.values().iter().all(|z| z.norm() == 0.0) {
                continue;
            }
            let shifted = b.fibre(&ctx.sub(v, u)).translate(u);
            acc.add_assign_scaled(&au.mul(&shifted)?, phase(u, v))?;
        }
    }
    Ok(out)
}

/// `α̂_ξ[a](v) = ξ(v) a(v)`.
pub fn dual_action(xi: &GroupPoint, a: &CrossedElement) -> Result<CrossedElement> {
    let ctx = &a.ctx;
    if !ctx.contains(xi) {
        return Err(Error::ContextMismatch);
    }
    let fibres = ctx
        .points()
        .map(|v| Ok(a.fibre(&v).scale(pairing(ctx, &v, xi)?)))
        .collect::<Result<_>>()?;
    CrossedElement::from_fibres(ctx, fibres)
}

/// Cocycle `σ` on `V̂`, nondegenerate `e` on `V`, and the maps `T`, `T*`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedActionData {
    pub sigma: Bicharacter,
    pub e: Bicharacter,
    pub t: LinearMap,
    pub t_star: LinearMap,
}

impl DeformedActionData {
    pub fn new(sigma: Bicharacter, e: Bicharacter) -> Result<Self> {
        sigma.context().require_finite()?;
        let (t, t_star) = t_map(&sigma, &e)?;
        Ok(Self { sigma, e, t, t_star })
    }

    /// `e` is the standard pairing.
    pub fn standard(sigma: Bicharacter) -> Result<Self> {
        let e = Bicharacter::standard_pairing(sigma.context())?;
        Self::new(sigma, e)
    }

    pub fn context(&self) -> &GroupContext {
        self.sigma.context()
    }

    /// `max |e(T*u, w) - e(u, Tw)|` over all pairs.
    pub fn adjoint_deviation(&self) -> Result<f64> {
        let ctx = self.context();
        let mut worst: f64 = 0.0;
        for u in ctx.points() {
            let tsu = self.t_star.apply_point(ctx, &u)?;
            for w in ctx.points() {
                let tw = self.t.apply_point(ctx, &w)?;
                worst = worst.max((self.e.value(&tsu, &w) - self.e.value(&u, &tw)).norm());
            }
        }
        Ok(worst)
    }
}

/// `α̂^σ_ξ[a](v) = ξ(v) α_{-σ¹ξ}[a(v)]`.
pub fn deformed_dual_action(data: &DeformedActionData, xi: &GroupPoint, a: &CrossedElement) -> Result<CrossedElement> {
    let ctx = &a.ctx;
    if data.context() != ctx || !ctx.contains(xi) {
        return Err(Error::ContextMismatch);
    }
    let shift = ctx.neg(&sigma_one(&data.sigma).apply_point(ctx, xi)?);
    let fibres = ctx
        .points()
        .map(|v| Ok(a.fibre(&v).translate(&shift).scale(pairing(ctx, &v, xi)?)))
        .collect::<Result<_>>()?;
    CrossedElement::from_fibres(ctx, fibres)
}

/// `max |α_{Tu}[a(v)] - e(u, v) a(v)|` over all `u`, `v`.
pub fn fixed_point_test(a: &CrossedElement, data: &DeformedActionData, tolerance: f64) -> Result<CheckReport> {
    let ctx = &a.ctx;
    if data.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for u in ctx.points() {
        let tu = data.t.apply_point(ctx, &u)?;
        for v in ctx.points() {
            let f = a.fibre(&v);
            worst = worst.max(f.translate(&tu).max_abs_diff(&f.scale(data.e.value(&u, &v))));
            samples += 1;
        }
    }
    Ok(CheckReport::new(worst, samples, tolerance))
}

/// Fibre `v ↦ |V|⁻¹ Σ_u conj(e(u, v)) α_{Tu}[a(v)]`.
pub fn spectral_project(a: &CrossedElement, data: &DeformedActionData) -> Result<CrossedElement> {
    let ctx = &a.ctx;
    if data.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    let points: Vec<GroupPoint> = ctx.points().collect();
    let shifts: Vec<GroupPoint> = points.iter().map(|u| data.t.apply_point(ctx, u)).collect::<Result<_>>()?;
    let inv = Complex64::new(1.0 / points.len() as f64, 0.0);
    let mut fibres = Vec::with_capacity(points.len());
    for v in &points {
        let f = a.fibre(v);
        let mut acc = FiniteVector::zeros(ctx)?;
        for (u, tu) in points.iter().zip(&shifts) {
            acc.add_assign_scaled(&f.translate(tu), data.e.value(u, v).conj())?;
        }
        fibres.push(acc.scale(inv));
    }
    CrossedElement::from_fibres(ctx, fibres)
}

/// Dimension of the fixed-point subspace: the sum over fibres of the rank
/// of the projection computed by [`spectral_project`].
pub fn fixed_point_dimension(data: &DeformedActionData) -> Result<usize> {
    let ctx = data.context();
    let order = ctx.order().ok_or(Error::UnsupportedMode { required: "finite" })?;
    let mut total = 0;
    for v in ctx.points() {
        let mut proj = DMatrix::from_element(order, order, Complex64::new(0.0, 0.0));
        for col in 0..order {
            let basis = FiniteVector::delta(ctx, &ctx.point_at(col))?;
            let image = spectral_project(&CrossedElement::supported_at(ctx, &v, basis)?, data)?;
            for (row, z) in image.fibre(&v).values().iter().enumerate() {
                proj[(row, col)] = *z;
            }
        }
        // singular values of a projection are 0 or 1
        total += proj.singular_values().iter().filter(|&&s| s > 0.5).count();
    }
    Ok(total)
}

/// `I(a) = Σ_v a(v)`.
pub fn i_map(a: &CrossedElement) -> Result<FiniteVector> {
    let mut acc = FiniteVector::zeros(&a.ctx)?;
    for f in &a.fibres {
        acc = acc.add(f)?;
    }
    Ok(acc)
}

/// `‖I(a * b) - I(a) ⋆ I(b)‖_∞` with `⋆` the Rieffel product for `σᵒᵖ`.
pub fn verify_i_homomorphism(a: &CrossedElement, b: &CrossedElement, data: &DeformedActionData) -> Result<f64> {
    a.check_same(b)?;
    if !data.t.is_invertible() {
        return Err(Error::Singular("T must be invertible"));
    }
    for (name, x) in [("first", a), ("second", b)] {
        let report = fixed_point_test(x, data, FIXED_POINT_TOLERANCE)?;
        if !report.passed {
            return Err(Error::Precondition(format!(
                "{name} operand is not a fixed point (deviation {:e})",
                report.max_deviation
            )));
        }
    }
    let (t_op, _) = t_map(&data.sigma.transpose(), &data.e)?;
    let lhs = i_map(&crossed_conv(a, b)?)?;
    let rhs = rieffel_product_finite(&i_map(a)?, &i_map(b)?, &data.e, &t_op)?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// `(a ⋆ b)(v) = Σ_u σ̂(u - v, u) a(u) α_u[b(v - u)]` for a cocycle `σ̂` on `V`.
pub fn twisted_crossed_dual<C: TwoCocycle + ?Sized>(a: &CrossedElement, b: &CrossedElement, sigma_hat: &C) -> Result<CrossedElement> {
    let ctx = a.ctx.clone();
    if sigma_hat.context() != &ctx {
        return Err(Error::ContextMismatch);
    }
    twisted_sum(a, b, |u, v| sigma_hat.value(&ctx.sub(u, v), u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn z(n: u64) -> GroupContext {
        GroupContext::finite(vec![n]).unwrap()
    }

    fn random_element(ctx: &GroupContext, seed: u64) -> CrossedElement {
        let mut rng = sampling::seeded(seed);
        CrossedElement::from_fn(ctx, |_, _| sampling::unit_disc(&mut rng)).unwrap()
    }

    fn data(ctx: &GroupContext, b: i64) -> DeformedActionData {
        DeformedActionData::standard(Bicharacter::finite_from_rows(ctx, &[vec![b]]).unwrap()).unwrap()
    }

    #[test]
    fn lambda_group_law() {
        let ctx = z(5);
        let p = |k| ctx.point(vec![k]).unwrap();
        let prod = crossed_conv(&CrossedElement::lambda(&ctx, &p(2)).unwrap(), &CrossedElement::lambda(&ctx, &p(4)).unwrap()).unwrap();
        assert_eq!(prod, CrossedElement::lambda(&ctx, &p(1)).unwrap());
        let a = random_element(&ctx, 3);
        let one = CrossedElement::lambda(&ctx, &ctx.zero()).unwrap();
        assert!(crossed_conv(&one, &a).unwrap().max_abs_diff(&a) < 1e-15);
        assert!(crossed_conv(&a, &one).unwrap().max_abs_diff(&a) < 1e-15);
    }

    #[test]
    fn dual_action_on_lambdas() {
        let ctx = z(7);
        let v = ctx.point(vec![3]).unwrap();
        let xi = ctx.point(vec![2]).unwrap();
        let lv = CrossedElement::lambda(&ctx, &v).unwrap();
        let expect = lv.scale(pairing(&ctx, &v, &xi).unwrap());
        assert!(dual_action(&xi, &lv).unwrap().max_abs_diff(&expect) < 1e-15);
        let d = data(&ctx, 3);
        assert!(deformed_dual_action(&d, &xi, &lv).unwrap().max_abs_diff(&expect) < 1e-15);
    }

    #[test]
    fn trivial_sigma_reduces_to_dual_action() {
        let ctx = z(5);
        let d = data(&ctx, 0);
        let a = random_element(&ctx, 11);
        for xi in ctx.points() {
            assert_eq!(deformed_dual_action(&d, &xi, &a).unwrap(), dual_action(&xi, &a).unwrap());
        }
    }

    #[test]
    fn projection_properties() {
        let ctx = z(7);
        let d = data(&ctx, 3);
        let a = random_element(&ctx, 5);
        assert!(!fixed_point_test(&a, &d, 1e-12).unwrap().passed);
        let p = spectral_project(&a, &d).unwrap();
        assert!(fixed_point_test(&p, &d, 1e-12).unwrap().passed);
        assert!(spectral_project(&p, &d).unwrap().max_abs_diff(&p) < 1e-12);
        for xi in ctx.points() {
            assert!(deformed_dual_action(&d, &xi, &p).unwrap().max_abs_diff(&p) < 1e-12);
        }
        assert!(fixed_point_test(&CrossedElement::zeros(&ctx).unwrap(), &d, 0.0).unwrap().passed);
    }

    #[test]
    fn dimension_count() {
        let ctx = z(5);
        assert_eq!(fixed_point_dimension(&data(&ctx, 1)).unwrap(), 5);
        // undeformed: only fibres at v = 0 survive, all of A
        assert_eq!(fixed_point_dimension(&data(&ctx, 0)).unwrap(), 5);
    }

    #[test]
    fn i_homomorphism_small_cases() {
        for (n, b) in [(5, 1), (7, 3), (5, 2)] {
            let ctx = z(n);
            let d = data(&ctx, b);
            let x = spectral_project(&random_element(&ctx, 1), &d).unwrap();
            let y = spectral_project(&random_element(&ctx, 2), &d).unwrap();
            assert!(verify_i_homomorphism(&x, &y, &d).unwrap() < 1e-10);
            let zero = CrossedElement::zeros(&ctx).unwrap();
            assert_eq!(verify_i_homomorphism(&x, &zero, &d).unwrap(), 0.0);
        }
    }

    #[test]
    fn i_homomorphism_preconditions() {
        let ctx = z(5);
        let d = data(&ctx, 0);
        let zero = CrossedElement::zeros(&ctx).unwrap();
        assert!(matches!(verify_i_homomorphism(&zero, &zero, &d), Err(Error::Singular(_))));
        let d = data(&ctx, 1);
        let raw = random_element(&ctx, 9);
        assert!(matches!(verify_i_homomorphism(&raw, &zero, &d), Err(Error::Precondition(_))));
    }

    #[test]
    fn i_map_examples() {
        let ctx = z(5);
        assert_eq!(i_map(&CrossedElement::lambda(&ctx, &ctx.zero()).unwrap()).unwrap(), FiniteVector::constant(&ctx, c(1.0, 0.0)).unwrap());
        let f = FiniteVector::from_fn(&ctx, |x| c(x.coords()[0] as f64, 1.0)).unwrap();
        let v = ctx.point(vec![2]).unwrap();
        assert_eq!(i_map(&CrossedElement::supported_at(&ctx, &v, f.clone()).unwrap()).unwrap(), f);
    }

    #[test]
    fn twisted_dual_examples() {
        let ctx = z(5);
        let triv = Bicharacter::trivial(&ctx).unwrap();
        let a = random_element(&ctx, 1);
        let b = random_element(&ctx, 2);
        assert_eq!(twisted_crossed_dual(&a, &b, &triv).unwrap(), crossed_conv(&a, &b).unwrap());
        let s = Bicharacter::finite_from_rows(&ctx, &[vec![2]]).unwrap();
        let u = ctx.point(vec![1]).unwrap();
        let w = ctx.point(vec![3]).unwrap();
        let prod = twisted_crossed_dual(&CrossedElement::lambda(&ctx, &u).unwrap(), &CrossedElement::lambda(&ctx, &w).unwrap(), &s).unwrap();
        let expect = CrossedElement::lambda(&ctx, &ctx.add(&u, &w)).unwrap().scale(s.value(&ctx.neg(&w), &u));
        assert!(prod.max_abs_diff(&expect) < 1e-15);
    }
}
