//! Bicharacters and 2-cocycles on dual groups.
//!
//! Every multiplier on an abelian group is cohomologous to a bicharacter, so
//! cocycles are carried in exponent form:
//!
//! * lattice `Z^n`: `σ(p, q) = exp(-πiℏ pᵀAq)` for a real matrix `A`;
//! * finite `(Z/N)^n`: `σ(ξ, η) = exp(2πi ξᵀBη / N)` for an integer matrix `B`.
//!
//! Internally both are described by an exponent matrix measured in turns
//! (`σ(x, y) = exp(2πi xᵀMy)`, so `M = -ℏA/2` or `M = B/N`). The maps `σ¹`,
//! `e¹`, `T = σ¹∘e¹` and its `e`-adjoint `T*` are matrices acting on
//! coordinates, with the dual of `V` identified through the standard pairing.
//!
//! Antisymmetrization uses the matrix skew part `(A - Aᵀ)/2` rather than
//! `σ(ξ, η/2)/σ(η, ξ/2)`, which needs `2V̂ = V̂` and therefore fails on `Z^n`.
//! The two agree whenever the latter is defined.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::abelian::{root_of_unity, GroupContext, GroupPoint};
use crate::linalg::{IntMatrix, ModMatrix};
use crate::{CheckReport, Error, Result};

/// Default tolerance for identity checks on exponent-form cocycles.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

/// Anything that can be evaluated as a (possibly non-multiplicative) phase
/// function on pairs of dual-group points.
pub trait TwoCocycle {
    fn context(&self) -> &GroupContext;
    /// Value at a pair of points already known to lie in [`Self::context`].
    fn value(&self, x: &GroupPoint, y: &GroupPoint) -> Complex64;
}

#[derive(Debug, Clone, PartialEq)]
pub enum BicharacterForm {
    Lattice { matrix: DMatrix<f64>, hbar: f64 },
    Finite { matrix: ModMatrix },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bicharacter {
    ctx: GroupContext,
    form: BicharacterForm,
}

/// Real skew matrix `γ` (lattice mode) or integer skew matrix mod `N`.
#[derive(Debug, Clone, PartialEq)]
pub enum SkewForm {
    Real(DMatrix<f64>),
    Modular(ModMatrix),
}

impl SkewForm {
    /// Requires `γᵀ = -γ` exactly.
    pub fn real(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidArgument("skew form must be square".into()));
        }
        let n = matrix.nrows();
        for i in 0..n {
            for j in 0..n {
                if matrix[(i, j)] != -matrix[(j, i)] {
                    return Err(Error::InvalidArgument(format!(
                        "form is not skew at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self::Real(matrix))
    }

    pub fn real_from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("skew form must be square".into()));
        }
        Self::real(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn modular(matrix: &IntMatrix, modulus: u64) -> Result<Self> {
        let m = ModMatrix::new(matrix, modulus)?;
        if m.add(&m.transpose())?.is_zero() {
            Ok(Self::Modular(m))
        } else {
            Err(Error::InvalidArgument("form is not skew mod N".into()))
        }
    }

    /// `θ·J` on `Z^{2n}`, `J` the standard symplectic form.
    pub fn symplectic(n: usize, theta: f64) -> Self {
        let j = IntMatrix::standard_symplectic(n);
        Self::Real(DMatrix::from_fn(2 * n, 2 * n, |r, c| theta * j.get(r, c) as f64))
    }

    pub fn zero(n: usize) -> Self {
        Self::Real(DMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Real(m) => m.nrows(),
            Self::Modular(m) => m.dim(),
        }
    }

    pub fn as_real(&self) -> Result<&DMatrix<f64>> {
        match self {
            Self::Real(m) => Ok(m),
            Self::Modular(_) => Err(Error::UnsupportedMode { required: "lattice" }),
        }
    }

    /// `γ(p, q) = Σ γ_ij p_i q_j` for a real form.
    pub fn apply(&self, p: &GroupPoint, q: &GroupPoint) -> Result<f64> {
        let m = self.as_real()?;
        Ok(real_bilinear(m, p.coords(), q.coords()))
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Ok(Self::Real(self.as_real()? * c))
    }
}

fn real_bilinear(m: &DMatrix<f64>, p: &[i64], q: &[i64]) -> f64 {
    let mut s = 0.0;
    for (i, &pi) in p.iter().enumerate() {
        if pi == 0 {
            continue;
        }
        let mut row = 0.0;
        for (j, &qj) in q.iter().enumerate() {
            row += m[(i, j)] * qj as f64;
        }
        s += pi as f64 * row;
    }
    s
}

fn modular_bilinear(m: &ModMatrix, p: &[i64], q: &[i64]) -> i64 {
    let n = m.modulus() as i128;
    let mut s: i128 = 0;
    for (i, &pi) in p.iter().enumerate() {
        for (j, &qj) in q.iter().enumerate() {
            s += pi as i128 * m.get(i, j) as i128 * qj as i128;
        }
    }
    s.rem_euclid(n) as i64
}

impl Bicharacter {
    /// `σ(p, q) = exp(-πiℏ pᵀAq)` on `Z^n`.
    pub fn lattice(ctx: &GroupContext, matrix: DMatrix<f64>, hbar: f64) -> Result<Self> {
        ctx.require_lattice()?;
        if matrix.nrows() != ctx.rank() || matrix.ncols() != ctx.rank() {
            return Err(Error::DimensionMismatch {
                expected: ctx.rank(),
                found: matrix.nrows(),
            });
        }
        if !hbar.is_finite() || matrix.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite exponent".into()));
        }
        Ok(Self {
            ctx: ctx.clone(),
            form: BicharacterForm::Lattice { matrix, hbar },
        })
    }

    pub fn lattice_from_rows(ctx: &GroupContext, rows: &[Vec<f64>], hbar: f64) -> Result<Self> {
        let n = ctx.rank();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        Self::lattice(ctx, DMatrix::from_fn(n, n, |i, j| rows[i][j]), hbar)
    }

    /// The deformation cocycle `σ_ℏ(p, q) = exp(-πiℏ γ(p, q))` of a skew form.
    pub fn from_skew(ctx: &GroupContext, gamma: &SkewForm, hbar: f64) -> Result<Self> {
        Self::lattice(ctx, gamma.as_real()?.clone(), hbar)
    }

    /// `σ(ξ, η) = exp(2πi ξᵀBη / N)`; the context must have a single modulus.
    pub fn finite(ctx: &GroupContext, matrix: &IntMatrix) -> Result<Self> {
        let n = ctx
            .uniform_modulus()
            .ok_or_else(|| Error::InvalidContext("finite bicharacters need equal moduli".into()))?;
        if matrix.rows() != ctx.rank() || matrix.cols() != ctx.rank() {
            return Err(Error::DimensionMismatch {
                expected: ctx.rank(),
                found: matrix.rows(),
            });
        }
        Ok(Self {
            ctx: ctx.clone(),
            form: BicharacterForm::Finite {
                matrix: ModMatrix::new(matrix, n)?,
            },
        })
    }

    pub fn finite_from_rows(ctx: &GroupContext, rows: &[Vec<i64>]) -> Result<Self> {
        Self::finite(ctx, &IntMatrix::from_rows(rows)?)
    }

    pub fn trivial(ctx: &GroupContext) -> Result<Self> {
        match ctx.uniform_modulus() {
            Some(_) => Self::finite(ctx, &IntMatrix::zeros(ctx.rank(), ctx.rank())),
            None if ctx.is_lattice() => Self::lattice(ctx, DMatrix::zeros(ctx.rank(), ctx.rank()), 0.0),
            None => Err(Error::InvalidContext("finite bicharacters need equal moduli".into())),
        }
    }

    /// The standard pairing `e(u, w) = exp(2πi uᵀw / N)` as a bicharacter on `V`.
    pub fn standard_pairing(ctx: &GroupContext) -> Result<Self> {
        Self::finite(ctx, &IntMatrix::identity(ctx.rank()))
    }

    pub fn context(&self) -> &GroupContext {
        &self.ctx
    }

    pub fn form(&self) -> &BicharacterForm {
        &self.form
    }

    pub fn hbar(&self) -> Option<f64> {
        match &self.form {
            BicharacterForm::Lattice { hbar, .. } => Some(*hbar),
            BicharacterForm::Finite { .. } => None,
        }
    }

    pub fn eval(&self, x: &GroupPoint, y: &GroupPoint) -> Result<Complex64> {
        if !self.ctx.contains(x) || !self.ctx.contains(y) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.value(x, y))
    }

    /// Lattice bicharacters extend to real arguments (the vector-group lift).
    pub fn eval_real(&self, x: &[f64], y: &[f64]) -> Result<Complex64> {
        match &self.form {
            BicharacterForm::Lattice { matrix, hbar } => {
                self.ctx.check_len(x.len())?;
                self.ctx.check_len(y.len())?;
                let q = (DMatrix::from_row_slice(1, x.len(), x) * matrix * DMatrix::from_column_slice(y.len(), 1, y))[(0, 0)];
                Ok(Complex64::cis(-PI * hbar * q))
            }
            BicharacterForm::Finite { .. } => Err(Error::UnsupportedMode { required: "lattice" }),
        }
    }

    /// Exponent matrix in turns: `σ(x, y) = exp(2πi xᵀMy)`.
    pub fn exponent_turns(&self) -> DMatrix<f64> {
        match &self.form {
            BicharacterForm::Lattice { matrix, hbar } => matrix * (-hbar / 2.0),
            BicharacterForm::Finite { matrix } => {
                let n = matrix.modulus() as f64;
                DMatrix::from_fn(matrix.dim(), matrix.dim(), |i, j| matrix.get(i, j) as f64 / n)
            }
        }
    }

    /// `σ(x, y)⁻¹`, the undeforming cocycle.
    pub fn conjugate(&self) -> Self {
        let form = match &self.form {
            BicharacterForm::Lattice { matrix, hbar } => BicharacterForm::Lattice {
                matrix: -matrix,
                hbar: *hbar,
            },
            BicharacterForm::Finite { matrix } => BicharacterForm::Finite {
                matrix: matrix.scale(-1),
            },
        };
        Self {
            ctx: self.ctx.clone(),
            form,
        }
    }

    /// `σᵒᵖ(x, y) = σ(y, x)`.
    pub fn transpose(&self) -> Self {
        let form = match &self.form {
            BicharacterForm::Lattice { matrix, hbar } => BicharacterForm::Lattice {
                matrix: matrix.transpose(),
                hbar: *hbar,
            },
            BicharacterForm::Finite { matrix } => BicharacterForm::Finite {
                matrix: matrix.transpose(),
            },
        };
        Self {
            ctx: self.ctx.clone(),
            form,
        }
    }

    /// Exact skew-ness of the exponent matrix.
    pub fn is_antisymmetric(&self) -> bool {
        match &self.form {
            BicharacterForm::Lattice { matrix, .. } => matrix == &(-matrix.transpose()),
            BicharacterForm::Finite { matrix } => matrix
                .add(&matrix.transpose())
                .map(|m| m.is_zero())
                .unwrap_or(false),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match &self.form {
            BicharacterForm::Lattice { matrix, .. } => matrix == &matrix.transpose(),
            BicharacterForm::Finite { matrix } => matrix.is_symmetric(),
        }
    }

    /// `σ(x, y) = 1` identically.
    pub fn is_trivial(&self) -> bool {
        match &self.form {
            BicharacterForm::Lattice { matrix, hbar } => *hbar == 0.0 || matrix.iter().all(|&x| x == 0.0),
            BicharacterForm::Finite { matrix } => matrix.is_zero(),
        }
    }
}

impl TwoCocycle for Bicharacter {
    fn context(&self) -> &GroupContext {
        &self.ctx
    }

    fn value(&self, x: &GroupPoint, y: &GroupPoint) -> Complex64 {
        match &self.form {
            BicharacterForm::Lattice { matrix, hbar } => {
                let q = real_bilinear(matrix, x.coords(), y.coords());
                let phase = -hbar * q;
                if phase == 0.0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::cis(PI * phase)
                }
            }
            BicharacterForm::Finite { matrix } => {
                root_of_unity(modular_bilinear(matrix, x.coords(), y.coords()), matrix.modulus())
            }
        }
    }
}

/// Arbitrary phase function on a finite dual group, stored as a table.
///
/// Used for counterexamples: a bicharacter multiplied by a random
/// non-multiplicative phase table is generically not a cocycle.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTable {
    ctx: GroupContext,
    order: usize,
    values: Vec<Complex64>,
}

impl PhaseTable {
    pub fn from_fn(ctx: &GroupContext, mut f: impl FnMut(&GroupPoint, &GroupPoint) -> Complex64) -> Result<Self> {
        let order = ctx.order().ok_or(Error::UnsupportedMode { required: "finite" })?;
        let points: Vec<GroupPoint> = ctx.points().collect();
        let mut values = Vec::with_capacity(order * order);
        for x in &points {
            for y in &points {
                values.push(f(x, y));
            }
        }
        Ok(Self {
            ctx: ctx.clone(),
            order,
            values,
        })
    }
}

impl TwoCocycle for PhaseTable {
    fn context(&self) -> &GroupContext {
        &self.ctx
    }

    fn value(&self, x: &GroupPoint, y: &GroupPoint) -> Complex64 {
        self.values[self.ctx.index_of(x) * self.order + self.ctx.index_of(y)]
    }
}

/// Checks `σ(ξ,η)σ(ξ+η,ζ) = σ(ξ,η+ζ)σ(η,ζ)` on the given triples.
pub fn cocycle_check<C: TwoCocycle + ?Sized>(
    sigma: &C,
    triples: &[(GroupPoint, GroupPoint, GroupPoint)],
    tolerance: f64,
) -> Result<CheckReport> {
    if triples.is_empty() {
        return Err(Error::InvalidArgument("cocycle_check needs at least one triple".into()));
    }
    let ctx = sigma.context();
    let mut worst: f64 = 0.0;
    for (x, y, z) in triples {
        if !ctx.contains(x) || !ctx.contains(y) || !ctx.contains(z) {
            return Err(Error::ContextMismatch);
        }
        let lhs = sigma.value(x, y) * sigma.value(&ctx.add(x, y), z);
        let rhs = sigma.value(x, &ctx.add(y, z)) * sigma.value(y, z);
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(CheckReport::new(worst, triples.len(), tolerance))
}

/// Every triple of a finite context.
pub fn exhaustive_triples(ctx: &GroupContext) -> Result<Vec<(GroupPoint, GroupPoint, GroupPoint)>> {
    ctx.require_finite()?;
    let points: Vec<GroupPoint> = ctx.points().collect();
    let mut out = Vec::with_capacity(points.len().pow(3));
    for x in &points {
        for y in &points {
            for z in &points {
                out.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    Ok(out)
}

/// Replaces the exponent matrix by its skew part.
pub fn antisymmetrize(sigma: &Bicharacter) -> Result<Bicharacter> {
    let form = match &sigma.form {
        BicharacterForm::Lattice { matrix, hbar } => BicharacterForm::Lattice {
            matrix: (matrix - matrix.transpose()) * 0.5,
            hbar: *hbar,
        },
        BicharacterForm::Finite { matrix } => {
            let n = matrix.modulus();
            if n % 2 == 0 {
                return Err(Error::EvenModulus(n));
            }
            let half = (n as i64 + 1) / 2;
            BicharacterForm::Finite {
                matrix: matrix.sub(&matrix.transpose())?.scale(half),
            }
        }
    };
    Ok(Bicharacter {
        ctx: sigma.ctx.clone(),
        form,
    })
}

/// Whether two bicharacters define the same cohomology class.
///
/// The quotient `σ₁σ₂⁻¹` must be symmetric. On `Z^n` a bicharacter is only
/// determined by its exponent modulo integer matrices (in turns), so the
/// lattice test asks for `D - Dᵀ` to be an integer matrix, `D` the exponent
/// difference in turns; a symmetric difference is the special case `D = Dᵀ`.
pub fn cohomologous(s1: &Bicharacter, s2: &Bicharacter) -> Result<bool> {
    if s1.ctx != s2.ctx {
        return Err(Error::ContextMismatch);
    }
    match (&s1.form, &s2.form) {
        (BicharacterForm::Finite { matrix: a }, BicharacterForm::Finite { matrix: b }) => {
            Ok(a.sub(b)?.is_symmetric())
        }
        (BicharacterForm::Lattice { .. }, BicharacterForm::Lattice { .. }) => {
            let d = s1.exponent_turns() - s2.exponent_turns();
            let skew = &d - d.transpose();
            let scale = 1.0 + d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            Ok(skew.iter().all(|x| (x - x.round()).abs() <= 1e-12 * scale))
        }
        _ => Err(Error::ContextMismatch),
    }
}

/// A linear map between the coordinate groups `V` and `V̂`.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearMap {
    Real(DMatrix<f64>),
    Modular(ModMatrix),
}

impl LinearMap {
    pub fn dim(&self) -> usize {
        match self {
            Self::Real(m) => m.nrows(),
            Self::Modular(m) => m.dim(),
        }
    }

    pub fn transpose(&self) -> Self {
        match self {
            Self::Real(m) => Self::Real(m.transpose()),
            Self::Modular(m) => Self::Modular(m.transpose()),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (Self::Real(a), Self::Real(b)) => Ok(Self::Real(a * b)),
            (Self::Modular(a), Self::Modular(b)) => Ok(Self::Modular(a.mul(b)?)),
            _ => Err(Error::ContextMismatch),
        }
    }

    pub fn is_invertible(&self) -> bool {
        match self {
            Self::Real(m) => real_is_invertible(m),
            Self::Modular(m) => m.is_invertible(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match self {
            Self::Real(m) => {
                if !real_is_invertible(m) {
                    return Err(Error::Singular("real matrix is singular"));
                }
                m.clone()
                    .try_inverse()
                    .map(Self::Real)
                    .ok_or(Error::Singular("real matrix is singular"))
            }
            Self::Modular(m) => m.inverse().map(Self::Modular),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Self::Real(m) => m.iter().all(|&x| x == 0.0),
            Self::Modular(m) => m.is_zero(),
        }
    }

    /// Applies a modular map to a point of a finite context.
    pub fn apply_point(&self, ctx: &GroupContext, p: &GroupPoint) -> Result<GroupPoint> {
        match self {
            Self::Modular(m) => ctx.point(m.apply(p.coords())),
            Self::Real(_) => Err(Error::UnsupportedMode { required: "finite" }),
        }
    }

    pub fn apply_real(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            Self::Real(m) => {
                if x.len() != m.ncols() {
                    return Err(Error::DimensionMismatch {
                        expected: m.ncols(),
                        found: x.len(),
                    });
                }
                Ok((m * DMatrix::from_column_slice(x.len(), 1, x)).iter().copied().collect())
            }
            Self::Modular(_) => Err(Error::UnsupportedMode { required: "lattice" }),
        }
    }

    /// Entrywise distance; modular maps compare exactly (0 or ∞).
    pub fn distance(&self, other: &Self) -> f64 {
        match (self, other) {
            (Self::Real(a), Self::Real(b)) if a.shape() == b.shape() => (a - b).amax(),
            (Self::Modular(a), Self::Modular(b)) if a == b => 0.0,
            _ => f64::INFINITY,
        }
    }

    pub fn negate(&self) -> Self {
        match self {
            Self::Real(m) => Self::Real(-m),
            Self::Modular(m) => Self::Modular(m.scale(-1)),
        }
    }
}

fn real_is_invertible(m: &DMatrix<f64>) -> bool {
    let n = m.nrows();
    let scale = m.amax();
    if scale == 0.0 {
        return false;
    }
    m.determinant().abs() > 1e-12 * scale.powi(n as i32)
}

/// `σ¹: ξ ↦ σ(ξ, ·)` as a matrix from dual coordinates into `V`.
///
/// Lattice mode: `σ¹_p` is the torus point `-(ℏ/2)Aᵀp`. Finite mode: `Bᵀ mod N`.
/// The same construction gives `e¹: V → V̂` for a bicharacter `e` on `V`.
pub fn sigma_one(sigma: &Bicharacter) -> LinearMap {
    match &sigma.form {
        BicharacterForm::Lattice { matrix, hbar } => LinearMap::Real(matrix.transpose() * (-hbar / 2.0)),
        BicharacterForm::Finite { matrix } => LinearMap::Modular(matrix.transpose()),
    }
}

pub fn is_nondegenerate(sigma: &Bicharacter) -> bool {
    sigma_one(sigma).is_invertible()
}

/// `T = σ¹∘e¹` and its adjoint with respect to `e`, `e(T*u, w) = e(u, Tw)`.
pub fn t_map(sigma: &Bicharacter, e: &Bicharacter) -> Result<(LinearMap, LinearMap)> {
    if sigma.ctx != e.ctx {
        return Err(Error::ContextMismatch);
    }
    let e_one = sigma_one(e);
    if !e_one.is_invertible() {
        return Err(Error::Degenerate("e must be nondegenerate"));
    }
    let t = sigma_one(sigma).compose(&e_one)?;
    let t_star = e_one.inverse()?.compose(&t.transpose())?.compose(&e_one)?;
    Ok((t, t_star))
}
