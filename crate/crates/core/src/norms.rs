//! Window compressions of left multiplication on `ℓ²(Z^n)`.
//!
//! Left multiplication `b ↦ a ⋆ b` compressed to the box `max|p_j| ≤ W` has
//! entries `M[p + r, r] = a(p)σ(p, r)`. Its largest singular value is a lower
//! bound for the deformed operator norm of `a`, nondecreasing in `W`.
//!
//! Monomials are handled exactly (one entry of modulus `|c|` per column, all
//! in distinct rows). Small windows use a dense SVD; larger ones iterate on
//! the Gram operator `MᴴM` applied sparsely (restarted Lanczos).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::abelian::{GroupContext, GroupPoint};
use crate::cocycles::{Bicharacter, SkewForm, TwoCocycle};
use crate::deform::{star, FourierElement};
use crate::{Error, Result};

/// Window dimensions up to this size use a dense decomposition.
pub const DENSE_MAX_DIM: usize = 289;
/// Relative Ritz residual at which the iterative estimate stops.
pub const POWER_TOLERANCE: f64 = 1e-10;
/// Cap on Gram operator applications.
pub const POWER_MAX_ITERATIONS: usize = 10_000;
/// Minimum Krylov steps between restarts.
pub const LANCZOS_CYCLE: usize = 80;
/// Stored basis entries allowed per cycle; longer cycles when `dim` is small.
pub const LANCZOS_BASIS_BUDGET: usize = 1 << 21;
/// Slack allowed when asserting that estimates grow with the window.
pub const MONOTONE_SLACK: f64 = 1e-12;

/// Coefficient box `max|p_j| ≤ radius`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Window {
    pub radius: usize,
}

impl Window {
    pub fn new(radius: usize) -> Self {
        Self { radius }
    }

    pub fn side(&self) -> usize {
        2 * self.radius + 1
    }

    /// `(2W + 1)^rank`.
    pub fn dim(&self, rank: usize) -> usize {
        self.side().pow(rank as u32)
    }

    pub fn contains(&self, p: &GroupPoint) -> bool {
        p.radius() <= self.radius
    }

    /// Row-major index of a point inside the box.
    pub fn index_of(&self, p: &GroupPoint) -> Option<usize> {
        if !self.contains(p) {
            return None;
        }
        let side = self.side();
        Some(p.coords().iter().fold(0, |acc, &c| acc * side + (c + self.radius as i64) as usize))
    }

    pub fn point_at(&self, mut index: usize, rank: usize) -> GroupPoint {
        let side = self.side();
        let mut coords = vec![0i64; rank];
        for c in coords.iter_mut().rev() {
            *c = (index % side) as i64 - self.radius as i64;
            index /= side;
        }
        GroupPoint::new(coords)
    }
}

/// How an estimate was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormMethod {
    Exact,
    Dense,
    Iterative { iterations: usize },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormEstimate {
    pub value: f64,
    pub window: Window,
    pub method: NormMethod,
}

fn validate<C: TwoCocycle + ?Sized>(a: &FourierElement, sigma: &C, window: Window) -> Result<()> {
    let ctx: &GroupContext = a.context();
    ctx.require_lattice()?;
    if sigma.context() != ctx {
        return Err(Error::ContextMismatch);
    }
    if window.radius == 0 {
        return Err(Error::InvalidArgument("window radius must be positive".into()));
    }
    let support = a.support_radius();
    if support > window.radius {
        return Err(Error::WindowTooSmall {
            radius: window.radius,
            support,
        });
    }
    Ok(())
}

/// Nonzero entries `(row, col, value)` of the compressed matrix.
fn entries<C: TwoCocycle + ?Sized>(a: &FourierElement, sigma: &C, window: Window) -> Vec<(usize, usize, Complex64)> {
    let ctx = a.context();
    let rank = ctx.rank();
    let dim = window.dim(rank);
    let mut out = Vec::with_capacity(dim * a.support_len());
    for col in 0..dim {
        let r = window.point_at(col, rank);
        for (p, c) in a.iter() {
            if let Some(row) = window.index_of(&ctx.add(p, &r)) {
                out.push((row, col, c * sigma.value(p, &r)));
            }
        }
    }
    out
}

/// Dense compression of `b ↦ a ⋆ b` to the window.
pub fn left_mult_matrix<C: TwoCocycle + ?Sized>(a: &FourierElement, sigma: &C, window: Window) -> Result<DMatrix<Complex64>> {
    validate(a, sigma, window)?;
    let dim = window.dim(a.context().rank());
    let mut m = DMatrix::from_element(dim, dim, Complex64::new(0.0, 0.0));
    for (row, col, v) in entries(a, sigma, window) {
        m[(row, col)] += v;
    }
    Ok(m)
}

/// Largest singular value of the window compression, with provenance.
pub fn op_norm_report<C: TwoCocycle + ?Sized>(a: &FourierElement, sigma: &C, window: Window) -> Result<NormEstimate> {
    validate(a, sigma, window)?;
    let report = |value, method| NormEstimate { value, window, method };
    if a.support_len() <= 1 {
        let value = a.iter().next().map(|(_, c)| c.norm()).unwrap_or(0.0);
        return Ok(report(value, NormMethod::Exact));
    }
    let dim = window.dim(a.context().rank());
    if dim <= DENSE_MAX_DIM {
        let m = left_mult_matrix(a, sigma, window)?;
        let value = m.singular_values().iter().copied().fold(0.0, f64::max);
        return Ok(report(value, NormMethod::Dense));
    }
    let (value, iterations) = gram_iteration(dim, &entries(a, sigma, window))?;
    Ok(report(value, NormMethod::Iterative { iterations }))
}

/// Largest singular value of the window compression of `b ↦ a ⋆ b`.
pub fn op_norm_estimate<C: TwoCocycle + ?Sized>(a: &FourierElement, sigma: &C, window: Window) -> Result<f64> {
    op_norm_report(a, sigma, window).map(|r| r.value)
}

/// Lanczos-accelerated power iteration on `MᴴM`, restarted from the top
/// Ritz vector once the basis reaches [`LANCZOS_BASIS_BUDGET`] entries (and
/// at least [`LANCZOS_CYCLE`] steps). Windows truncate a continuous spectrum,
/// so the top of `MᴴM` is clustered and short restarts stall.
///
/// Stops once the Ritz residual `‖MᴴM y - θy‖` is below `POWER_TOLERANCE·θ`.
/// Ritz values plateau on clustered spectra, so stagnation is not a stop.
/// Returns `sqrt(θ)` and the number of operator applications.
fn gram_iteration(dim: usize, entries: &[(usize, usize, Complex64)]) -> Result<(f64, usize)> {
    let zero = Complex64::new(0.0, 0.0);
    // deterministic start with all components nonzero and no symmetry
    let mut start: Vec<Complex64> = (0..dim)
        .map(|k| Complex64::from_polar(1.0, 0.618_033_988_749_895 * (k as f64 + 1.0).powf(1.3)))
        .collect();
    normalize(&mut start);
    let cycle = dim.min(LANCZOS_CYCLE.max(LANCZOS_BASIS_BUDGET / dim));
    let mut mid = vec![zero; dim];
    let mut applications = 0;
    loop {
        let mut basis = vec![start.clone()];
        let mut alpha: Vec<f64> = Vec::with_capacity(cycle);
        let mut beta: Vec<f64> = Vec::with_capacity(cycle);
        let mut ritz: Vec<f64> = vec![1.0];
        for j in 0..cycle {
            let mut w = vec![zero; dim];
            mid.iter_mut().for_each(|v| *v = zero);
            for &(row, col, v) in entries {
                mid[row] += v * basis[j][col];
            }
            for &(row, col, v) in entries {
                w[col] += v.conj() * mid[row];
            }
            applications += 1;
            alpha.push(basis[j].iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum());
            // two passes of full reorthogonalisation
            for _ in 0..2 {
                for q in &basis {
                    let c: Complex64 = q.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                    w.iter_mut().zip(q).for_each(|(x, y)| *x -= c * y);
                }
            }
            let b_j = w.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
            let last = j + 1 == cycle || applications >= POWER_MAX_ITERATIONS;
            // each check is a dense k×k eigensolve; spacing them geometrically
            // keeps the cycle O(k³) at the price of ~12% extra steps
            if !last && b_j > 0.0 && (j + 1) % (j / 8).max(1) != 0 {
                beta.push(b_j);
                w.iter_mut().for_each(|v| *v /= b_j);
                basis.push(w);
                continue;
            }
            let (theta, s) = top_ritz(&alpha, &beta);
            ritz = s;
            let residual = b_j * ritz.last().copied().unwrap_or(0.0).abs();
            if theta <= 0.0 || residual <= POWER_TOLERANCE * theta {
                return Ok((theta.max(0.0).sqrt(), applications));
            }
            if applications >= POWER_MAX_ITERATIONS {
                return Err(Error::NoConvergence {
                    iterations: applications,
                    estimate: theta.sqrt(),
                });
            }
            if j + 1 == cycle {
                break;
            }
            beta.push(b_j);
            w.iter_mut().for_each(|v| *v /= b_j);
            basis.push(w);
        }
        start = vec![zero; dim];
        for (q, &c) in basis.iter().zip(&ritz) {
            start.iter_mut().zip(q).for_each(|(x, y)| *x += y * c);
        }
        normalize(&mut start);
    }
}
/// Largest eigenvalue of the Lanczos tridiagonal and its eigenvector.
fn top_ritz(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let k = alpha.len();
    let t = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            alpha[i]
        } else if i.abs_diff(j) == 1 {
            beta[i.min(j)]
        } else {
            0.0
        }
    });
    let eig = t.symmetric_eigen();
    let top = eig.eigenvalues.imax();
    (eig.eigenvalues[top], eig.eigenvectors.column(top).iter().copied().collect())
}

fn normalize(x: &mut [Complex64]) {
    let n = x.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if n > 0.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
}

/// Estimates for increasing windows; fails if an estimate drops.
///
/// Iterative estimates are only accurate to [`POWER_TOLERANCE`] relative, so
/// the allowed drop is widened by that amount when either side iterated.
pub fn norm_convergence(a: &FourierElement, sigma: &Bicharacter, windows: &[Window]) -> Result<Vec<NormEstimate>> {
    if windows.is_empty() {
        return Err(Error::InvalidArgument("window list is empty".into()));
    }
    if windows.windows(2).any(|w| w[0].radius >= w[1].radius) {
        return Err(Error::InvalidArgument("window radii must be strictly increasing".into()));
    }
    let mut out: Vec<NormEstimate> = Vec::with_capacity(windows.len());
    for &w in windows {
        let est = op_norm_report(a, sigma, w)?;
        if let Some(prev) = out.last() {
            let iterative = |m: NormMethod| matches!(m, NormMethod::Iterative { .. });
            let mut slack = MONOTONE_SLACK;
            if iterative(prev.method) || iterative(est.method) {
                slack += POWER_TOLERANCE * prev.value;
            }
            if est.value + slack < prev.value {
                return Err(Error::NotMonotone {
                    radius: w.radius,
                    previous: prev.value,
                    estimate: est.value,
                });
            }
        }
        out.push(est);
    }
    Ok(out)
}

/// Norms of `a ⋆_ℏ b` along a list of deformation parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityScan {
    /// `(ℏ, ‖a ⋆_ℏ b‖_W)` in input order.
    pub rows: Vec<(f64, f64)>,
    /// Largest `|Δnorm|` between adjacent rows.
    pub max_jump: f64,
    /// Largest `|Δnorm| / |Δℏ|` between adjacent rows.
    pub lipschitz: f64,
}

pub fn field_continuity_scan(
    a: &FourierElement,
    b: &FourierElement,
    gamma: &SkewForm,
    hbars: &[f64],
    window: Window,
) -> Result<ContinuityScan> {
    if hbars.is_empty() {
        return Err(Error::InvalidArgument("hbar list is empty".into()));
    }
    let mut rows = Vec::with_capacity(hbars.len());
    for &hbar in hbars {
        let sigma = Bicharacter::from_skew(a.context(), gamma, hbar)?;
        let prod = star(a, b, &sigma)?;
        rows.push((hbar, op_norm_estimate(&prod, &sigma, window)?));
    }
    let mut max_jump: f64 = 0.0;
    let mut lipschitz: f64 = 0.0;
    for pair in rows.windows(2) {
        let (h0, n0) = pair[0];
        let (h1, n1) = pair[1];
        let jump = (n1 - n0).abs();
        max_jump = max_jump.max(jump);
        if h1 != h0 {
            lipschitz = lipschitz.max(jump / (h1 - h0).abs());
        }
    }
    Ok(ContinuityScan {
        rows,
        max_jump,
        lipschitz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(v: &[i64]) -> GroupPoint {
        GroupPoint::new(v.to_vec())
    }

    fn ctx() -> GroupContext {
        GroupContext::lattice(2).unwrap()
    }

    fn sigma(hbar: f64) -> Bicharacter {
        Bicharacter::from_skew(&ctx(), &SkewForm::symplectic(1, 1.0), hbar).unwrap()
    }

    fn cos_element() -> FourierElement {
        FourierElement::from_coeffs(&ctx(), [(pt(&[1, 0]), c(1.0, 0.0)), (pt(&[-1, 0]), c(1.0, 0.0))]).unwrap()
    }

    #[test]
    fn window_indexing_round_trip() {
        let w = Window::new(3);
        for i in 0..w.dim(2) {
            assert_eq!(w.index_of(&w.point_at(i, 2)), Some(i));
        }
        assert_eq!(w.index_of(&pt(&[4, 0])), None);
    }

    #[test]
    fn scalar_matrix_is_scaled_identity() {
        let a = FourierElement::scalar(&ctx(), c(0.5, -2.0));
        let m = left_mult_matrix(&a, &sigma(0.3), Window::new(2)).unwrap();
        assert_eq!(m, DMatrix::identity(25, 25) * c(0.5, -2.0));
    }

    #[test]
    fn delta_matrix_carries_phases() {
        let a = FourierElement::delta(&ctx(), &pt(&[1, 0])).unwrap();
        let s = sigma(0.5);
        let w = Window::new(2);
        let m = left_mult_matrix(&a, &s, w).unwrap();
        for col in 0..w.dim(2) {
            let r = w.point_at(col, 2);
            let target = pt(&[r.coords()[0] + 1, r.coords()[1]]);
            for row in 0..w.dim(2) {
                let expect = if Some(row) == w.index_of(&target) {
                    Complex64::cis(-PI * 0.5 * r.coords()[1] as f64)
                } else {
                    c(0.0, 0.0)
                };
                assert!((m[(row, col)] - expect).norm() < 1e-15);
            }
        }
        let triv = Bicharacter::trivial(&ctx()).unwrap();
        let shift = left_mult_matrix(&a, &triv, w).unwrap();
        assert!(shift.iter().all(|v| *v == c(0.0, 0.0) || *v == c(1.0, 0.0)));
        assert_eq!(shift.iter().filter(|v| **v == c(1.0, 0.0)).count(), 20);
    }

    #[test]
    fn window_too_small_rejected() {
        let a = FourierElement::delta(&ctx(), &pt(&[3, 0])).unwrap();
        assert_eq!(
            op_norm_estimate(&a, &sigma(1.0), Window::new(2)),
            Err(Error::WindowTooSmall { radius: 2, support: 3 })
        );
    }

    #[test]
    fn monomial_estimates_are_exact() {
        for w in [1, 4, 20] {
            let a = FourierElement::from_coeffs(&ctx(), [(pt(&[1, -1]), c(0.6, 0.8))]).unwrap();
            assert_eq!(op_norm_estimate(&a, &sigma(0.7), Window::new(w)).unwrap(), 1.0);
        }
    }

    #[test]
    fn dense_and_power_iteration_agree() {
        let a = FourierElement::from_coeffs(
            &ctx(),
            [(pt(&[1, 0]), c(1.0, 0.2)), (pt(&[0, 1]), c(-0.5, 0.0)), (pt(&[-1, -1]), c(0.0, 0.3))],
        )
        .unwrap();
        let s = sigma(0.37);
        let w = Window::new(6);
        let dense = op_norm_estimate(&a, &s, w).unwrap();
        let (iter, _) = gram_iteration(w.dim(2), &entries(&a, &s, w)).unwrap();
        assert!((dense - iter).abs() < 1e-6 * dense, "{dense} vs {iter}");
    }

    #[test]
    fn commutative_cos_matches_tridiagonal_oracle() {
        // the compression is a path-graph adjacency: top eigenvalue 2cos(π/(2W+2))
        let triv = Bicharacter::trivial(&ctx()).unwrap();
        for w in [3, 8, 12] {
            let est = op_norm_estimate(&cos_element(), &triv, Window::new(w)).unwrap();
            let oracle = 2.0 * (PI / (2.0 * w as f64 + 2.0)).cos();
            assert!((est - oracle).abs() < 1e-7, "W={w}: {est} vs {oracle}");
        }
    }

    #[test]
    fn convergence_table_checks_order() {
        let triv = Bicharacter::trivial(&ctx()).unwrap();
        let rows = norm_convergence(&cos_element(), &triv, &[Window::new(2), Window::new(4), Window::new(8)]).unwrap();
        assert!(rows.windows(2).all(|r| r[0].value <= r[1].value));
        assert!(norm_convergence(&cos_element(), &triv, &[Window::new(4), Window::new(2)]).is_err());
        assert!(norm_convergence(&cos_element(), &triv, &[]).is_err());
    }

    #[test]
    fn continuity_scan_delta_pair_is_flat() {
        let e1 = FourierElement::delta(&ctx(), &pt(&[1, 0])).unwrap();
        let e2 = FourierElement::delta(&ctx(), &pt(&[0, 1])).unwrap();
        let scan = field_continuity_scan(&e1, &e2, &SkewForm::symplectic(1, 1.0), &[0.0, 0.25, 0.5, 1.0], Window::new(3)).unwrap();
        assert!(scan.rows.iter().all(|&(_, n)| n == 1.0));
        assert_eq!(scan.max_jump, 0.0);
    }
}
