//! Deformations parametrised by a sampled one-dimensional base.
//!
//! A [`CocycleField`] assigns a skew form to each sample of a [`BaseGrid`];
//! a [`ParamElement`] assigns a Fourier element to each sample. Products are
//! taken fibre by fibre, so every algebraic law of [`crate::deform`] holds at
//! every sample, and scalar fields act centrally.
//!
//! Torus bundles over an interval or circle are trivial, so the total space
//! is modelled as `X × T^n` with the torus grading carried by frequency.
//! Non-principal bundles over the circle are modelled on one fundamental
//! domain `[0, 1]` of the cover with a symplectic monodromy `ρ` gluing the
//! end fibres: `fibre(1)(p) = fibre(0)(ρ⁻ᵀp)`.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::abelian::{DualPoint, GroupContext, GroupPoint};
use crate::cocycles::{Bicharacter, SkewForm, TwoCocycle};
use crate::deform::{iterated_star_check, star, translate, FourierElement};
use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// Equivariance tolerance required of inputs to [`equivariant_product_closure`].
pub const EQUIVARIANCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    Interval,
    /// `0 ~ 1`; the endpoint `1` is never stored.
    Circle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BaseGrid {
    topology: Topology,
    samples: Vec<f64>,
}

impl BaseGrid {
    pub fn new(topology: Topology, samples: Vec<f64>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidArgument("base grid needs at least one sample".into()));
        }
        if samples.iter().any(|y| !(0.0..=1.0).contains(y)) {
            return Err(Error::InvalidArgument("samples must lie in [0, 1]".into()));
        }
        if samples.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("samples must be strictly increasing".into()));
        }
        if topology == Topology::Circle && samples.last() == Some(&1.0) {
            return Err(Error::InvalidArgument("circle grids store 0 and never 1".into()));
        }
        Ok(Self { topology, samples })
    }

    /// `j / k` for `j < k`.
    pub fn uniform_circle(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("grid size must be positive".into()));
        }
        Self::new(Topology::Circle, (0..k).map(|j| j as f64 / k as f64).collect())
    }

    /// `k ≥ 2` equally spaced samples including both endpoints.
    pub fn uniform_interval(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument("interval grids need both endpoints".into()));
        }
        Self::new(Topology::Interval, (0..k).map(|j| j as f64 / (k - 1) as f64).collect())
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Adjacent sample index pairs, wrapping around on a circle.
    fn neighbours(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if self.topology == Topology::Circle && n > 1 {
            out.push((n - 1, 0));
        }
        out
    }
}

/// One real skew form per sample together with a deformation parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct CocycleField {
    grid: BaseGrid,
    forms: Vec<SkewForm>,
    hbar: f64,
}

/// Largest entrywise change of the form between adjacent samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariationReport {
    pub max_step: f64,
    pub bound: f64,
    pub within_bound: bool,
}

impl CocycleField {
    pub fn new(grid: BaseGrid, forms: Vec<SkewForm>, hbar: f64) -> Result<Self> {
        if forms.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: forms.len(),
            });
        }
        let dim = forms[0].dim();
        for f in &forms {
            f.as_real()?;
            if f.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: f.dim(),
                });
            }
        }
        if !hbar.is_finite() {
            return Err(Error::InvalidArgument("hbar must be finite".into()));
        }
        Ok(Self { grid, forms, hbar })
    }

    pub fn from_fn(grid: BaseGrid, hbar: f64, mut f: impl FnMut(f64) -> SkewForm) -> Result<Self> {
        let forms = grid.samples.iter().map(|&y| f(y)).collect();
        Self::new(grid, forms, hbar)
    }

    pub fn constant(grid: BaseGrid, form: SkewForm, hbar: f64) -> Result<Self> {
        Self::from_fn(grid, hbar, |_| form.clone())
    }

    pub fn grid(&self) -> &BaseGrid {
        &self.grid
    }

    pub fn forms(&self) -> &[SkewForm] {
        &self.forms
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn dim(&self) -> usize {
        self.forms[0].dim()
    }

    /// The cocycle at sample `i`.
    pub fn bicharacter_at(&self, ctx: &GroupContext, i: usize) -> Result<Bicharacter> {
        Bicharacter::from_skew(ctx, &self.forms[i], self.hbar)
    }

    pub fn variation(&self, bound: f64) -> Result<VariationReport> {
        let mut max_step: f64 = 0.0;
        for (i, j) in self.grid.neighbours() {
            let d = (self.forms[i].as_real()? - self.forms[j].as_real()?).amax();
            max_step = max_step.max(d);
        }
        Ok(VariationReport {
            max_step,
            bound,
            within_bound: max_step <= bound,
        })
    }

    /// Samplewise product `σ₁σ₂`: the forms (weighted by `ℏ`) add.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let same = self.hbar == other.hbar;
        let forms = self
            .forms
            .iter()
            .zip(&other.forms)
            .map(|(a, b)| {
                let (ha, hb) = if same { (1.0, 1.0) } else { (self.hbar, other.hbar) };
                SkewForm::real(a.as_real()? * ha + b.as_real()? * hb)
            })
            .collect::<Result<_>>()?;
        Self::new(self.grid.clone(), forms, if same { self.hbar } else { 1.0 })
    }
}

/// `ℏ · y · J` on `Z²` over a circle: the integer Heisenberg group algebra.
pub fn heisenberg_field(hbar: f64, grid: BaseGrid) -> Result<CocycleField> {
    if grid.topology() != Topology::Circle {
        return Err(Error::InvalidArgument("the Heisenberg field lives on a circle grid".into()));
    }
    CocycleField::from_fn(grid, hbar, |y| SkewForm::symplectic(1, y))
}

/// Complex value per sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: BaseGrid,
    values: Vec<Complex64>,
}

impl ScalarField {
    pub fn new(grid: BaseGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: BaseGrid, c: Complex64) -> Self {
        let values = vec![c; grid.len()];
        Self { grid, values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// One Fourier element per sample, all in one lattice context.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamElement {
    grid: BaseGrid,
    fibres: Vec<FourierElement>,
}

impl ParamElement {
    pub fn new(grid: BaseGrid, fibres: Vec<FourierElement>) -> Result<Self> {
        if fibres.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: fibres.len(),
            });
        }
        let ctx = fibres[0].context();
        ctx.require_lattice()?;
        if fibres.iter().any(|f| f.context() != ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(Self { grid, fibres })
    }

    pub fn constant(grid: BaseGrid, a: &FourierElement) -> Result<Self> {
        let fibres = vec![a.clone(); grid.len()];
        Self::new(grid, fibres)
    }

    pub fn from_fn(grid: BaseGrid, f: impl FnMut(f64) -> FourierElement) -> Result<Self> {
        let fibres = grid.samples.iter().copied().map(f).collect();
        Self::new(grid, fibres)
    }

    pub fn grid(&self) -> &BaseGrid {
        &self.grid
    }

    pub fn context(&self) -> &GroupContext {
        self.fibres[0].context()
    }

    pub fn fibres(&self) -> &[FourierElement] {
        &self.fibres
    }

    pub fn fibre(&self, i: usize) -> &FourierElement {
        &self.fibres[i]
    }

    /// Largest fibre support: the uniform bound standing in for Schwartz decay.
    pub fn support_bound(&self) -> usize {
        self.fibres.iter().map(FourierElement::support_len).max().unwrap_or(0)
    }

    /// The coefficient field `y ↦ fibre(y)(p)`: the degree-`p` component.
    pub fn component(&self, p: &GroupPoint) -> Vec<Complex64> {
        self.fibres.iter().map(|f| f.get(p)).collect()
    }

    /// Largest fibrewise `ℓ¹` distance.
    pub fn distance(&self, other: &Self) -> f64 {
        if self.grid != other.grid {
            return f64::INFINITY;
        }
        self.fibres
            .iter()
            .zip(&other.fibres)
            .map(|(a, b)| a.distance_l1(b))
            .fold(0.0, f64::max)
    }
}

fn check_field(a: &ParamElement, sigma: &CocycleField) -> Result<()> {
    if a.grid != sigma.grid {
        return Err(Error::GridMismatch);
    }
    if sigma.dim() != a.context().rank() {
        return Err(Error::DimensionMismatch {
            expected: a.context().rank(),
            found: sigma.dim(),
        });
    }
    Ok(())
}

/// `(a ⋆ b)(y) = a(y) ⋆_{σ(y)} b(y)`.
pub fn param_star(a: &ParamElement, b: &ParamElement, sigma: &CocycleField) -> Result<ParamElement> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    check_field(a, sigma)?;
    let ctx = a.context();
    let fibres = (0..a.grid.len())
        .map(|i| star(&a.fibres[i], &b.fibres[i], &sigma.bicharacter_at(ctx, i)?))
        .collect::<Result<_>>()?;
    ParamElement::new(a.grid.clone(), fibres)
}

/// `(F.a)(y) = F(y) a(y)`.
pub fn c0x_action(f: &ScalarField, a: &ParamElement) -> Result<ParamElement> {
    if f.grid != a.grid {
        return Err(Error::GridMismatch);
    }
    let fibres = a.fibres.iter().zip(&f.values).map(|(x, &c)| x.scale(c)).collect();
    ParamElement::new(a.grid.clone(), fibres)
}

/// Largest pairwise distance among `F.(a⋆b)`, `(F.a)⋆b`, `a⋆(F.b)`.
pub fn linearity_check(f: &ScalarField, a: &ParamElement, b: &ParamElement, sigma: &CocycleField) -> Result<f64> {
    let x = c0x_action(f, &param_star(a, b, sigma)?)?;
    let y = param_star(&c0x_action(f, a)?, b, sigma)?;
    let z = param_star(a, &c0x_action(f, b)?, sigma)?;
    Ok(x.distance(&y).max(x.distance(&z)).max(y.distance(&z)))
}

/// Fibrewise translation by a torus point `t`.
pub fn torus_action(t: &[f64], a: &ParamElement) -> Result<ParamElement> {
    let v = DualPoint::Torus(t.to_vec());
    let fibres = a.fibres.iter().map(|x| translate(x, &v)).collect::<Result<_>>()?;
    ParamElement::new(a.grid.clone(), fibres)
}

/// Largest fibrewise deviation of iterated deformation by `σ₁` then `σ₂`
/// from deformation by the composed field.
pub fn iterated_field_check(a: &ParamElement, b: &ParamElement, s1: &CocycleField, s2: &CocycleField) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    check_field(a, s1)?;
    check_field(a, s2)?;
    let ctx = a.context();
    let mut worst: f64 = 0.0;
    for i in 0..a.grid.len() {
        let d = iterated_star_check(&a.fibres[i], &b.fibres[i], &s1.bicharacter_at(ctx, i)?, &s2.bicharacter_at(ctx, i)?)?;
        worst = worst.max(d);
    }
    Ok(worst)
}

/// `σ(p, q) / σ(q, p)`, the phase in `δ_p ⋆ δ_q = phase · δ_q ⋆ δ_p`.
pub fn commutation_phase<C: TwoCocycle + ?Sized>(sigma: &C, p: &GroupPoint, q: &GroupPoint) -> Complex64 {
    sigma.value(p, q) / sigma.value(q, p)
}

/// Per-sample `(y, phase)` for `δ_{e₁}`, `δ_{e₂}`, read off the products.
pub fn heisenberg_phases(field: &CocycleField) -> Result<Vec<(f64, Complex64)>> {
    if field.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: field.dim(),
        });
    }
    let ctx = GroupContext::lattice(2)?;
    let e1 = FourierElement::delta(&ctx, &ctx.basis(0))?;
    let e2 = FourierElement::delta(&ctx, &ctx.basis(1))?;
    let target = ctx.add(&ctx.basis(0), &ctx.basis(1));
    let mut out = Vec::with_capacity(field.grid.len());
    for (i, &y) in field.grid.samples.iter().enumerate() {
        let sigma = field.bicharacter_at(&ctx, i)?;
        let forward = star(&e1, &e2, &sigma)?.get(&target);
        let backward = star(&e2, &e1, &sigma)?.get(&target);
        out.push((y, forward / backward));
    }
    Ok(out)
}

/// Commutation phase `exp(-2πiℏy)` held exactly as a rational number of
/// turns in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactPhase {
    pub turns: Rational64,
}

impl ExactPhase {
    pub fn heisenberg(hbar: Rational64, y: Rational64) -> Self {
        let t = -(hbar * y);
        Self {
            turns: t - t.floor(),
        }
    }

    /// Smallest `q ≥ 1` with `phase^q = 1`.
    pub fn order(&self) -> i64 {
        *self.turns.denom()
    }

    pub fn is_root_of_unity_of_order_dividing(&self, q: i64) -> bool {
        q != 0 && (self.turns * Rational64::from_integer(q)).is_integer()
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::cis(std::f64::consts::TAU * *self.turns.numer() as f64 / *self.turns.denom() as f64)
    }
}

/// Integer `2n × 2n` matrix describing the gluing of the end fibres.
#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyData {
    rho: IntMatrix,
}

impl MonodromyData {
    pub fn new(rho: IntMatrix) -> Result<Self> {
        if !rho.is_square() || !rho.rows().is_multiple_of(2) || rho.rows() == 0 {
            return Err(Error::InvalidArgument("monodromy must be a square matrix of even size".into()));
        }
        Ok(Self { rho })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    /// Pushes coefficients forward along `q ↦ ρᵀq`, so that
    /// `result(p) = a(ρ⁻ᵀp)` for symplectic `ρ`.
    pub fn push(&self, a: &FourierElement) -> Result<FourierElement> {
        a.context().check_len(self.dim())?;
        let rt = self.rho.transpose();
        let coeffs = a.iter().map(|(q, c)| (GroupPoint::new(rt.apply(q.coords())), *c));
        FourierElement::from_coeffs(a.context(), coeffs)
    }
}

/// `ρᵀJρ = J` exactly.
pub fn monodromy_check(rho: &MonodromyData) -> bool {
    let j = IntMatrix::standard_symplectic(rho.dim() / 2);
    rho.rho
        .transpose()
        .mul(&j)
        .and_then(|m| m.mul(&rho.rho))
        .map(|m| m == j)
        .unwrap_or(false)
}

fn endpoint_indices(a: &ParamElement) -> Result<(usize, usize)> {
    let s = a.grid.samples();
    if a.grid.topology() != Topology::Interval || s.len() < 2 || s[0] != 0.0 || s[s.len() - 1] != 1.0 {
        return Err(Error::InvalidArgument("equivariance is tested on an interval grid sampling both 0 and 1".into()));
    }
    Ok((0, s.len() - 1))
}

/// `‖fibre(1) - ρ·fibre(0)‖₁`, with `(ρ·f)(p) = f(ρ⁻ᵀp)`.
pub fn equivariant_test(a: &ParamElement, rho: &MonodromyData) -> Result<f64> {
    if !monodromy_check(rho) {
        return Err(Error::InvalidArgument("monodromy is not symplectic".into()));
    }
    let (first, last) = endpoint_indices(a)?;
    Ok(a.fibres[last].distance_l1(&rho.push(&a.fibres[first])?))
}

/// Replaces the fibre at `1` by the monodromy image of the fibre at `0`.
pub fn equivariant_closure_of(a: &ParamElement, rho: &MonodromyData) -> Result<ParamElement> {
    let (first, last) = endpoint_indices(a)?;
    let mut fibres = a.fibres.clone();
    fibres[last] = rho.push(&a.fibres[first])?;
    ParamElement::new(a.grid.clone(), fibres)
}

/// Equivariance defect of `a ⋆ b` for equivariant `a`, `b`.
///
/// Vanishes when the end forms satisfy `ρ γ(1) ρᵀ = γ(0)`, in particular for
/// periodic fields of multiples of `J`.
pub fn equivariant_product_closure(a: &ParamElement, b: &ParamElement, rho: &MonodromyData, sigma: &CocycleField) -> Result<f64> {
    for (name, x) in [("first", a), ("second", b)] {
        let d = equivariant_test(x, rho)?;
        if d > EQUIVARIANCE_TOLERANCE {
            return Err(Error::Precondition(format!("{name} operand is not equivariant (deviation {d:e})")));
        }
    }
    equivariant_test(&param_star(a, b, sigma)?, rho)
}
