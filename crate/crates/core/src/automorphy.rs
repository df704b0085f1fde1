//! Factors of automorphy for a finite group acting on a finite set.
//!
//! Conventions: `Γ` acts on `X` on the left, `k·x`, and on functions by
//! `α_k f(x) = f(k⁻¹x)`, so `α_k⁻¹[f](x) = f(kx)`. Then
//!
//! * `τ` is a cocycle when `τ(k₁k₂, k₃, x) τ(k₁, k₂, k₃x) = τ(k₁, k₂k₃, x) τ(k₂, k₃, x)`;
//! * `ĵ` is a factor of automorphy for `τ` when `ĵ(k₁, k₂x) ĵ(k₂, x) = τ(k₁, k₂, x) ĵ(k₁k₂, x)`;
//! * `U(k)(x) = ĵ(k, k⁻¹x)` satisfies
//!   `U(k₁)(x) U(k₂)(k₁⁻¹x) = τ(k₁, k₂, (k₁k₂)⁻¹x) U(k₁k₂)(x)`.
//!
//! For `τ` with values in the `M`-th roots of unity, `ĵ = exp(2πi J/M)` and
//! the automorphy condition is a linear system for `J` over `Z/M`.

use num_complex::Complex64;
use num_integer::Integer;

use crate::abelian::root_of_unity;
use crate::linalg::mod_inverse;
use crate::{CheckReport, Error, Result};

/// Distance from a root of unity still accepted when reading exponents.
pub const ROOT_TOLERANCE: f64 = 1e-9;
/// Largest search space `M^(|Γ|·|X|)` the exhaustive solver will enumerate.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 22;

/// Multiplication table of a finite group on `0..order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidArgument("group table must be square with entries in range".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidArgument("group table has no identity".into()))?;
        let mut inverses = vec![0; n];
        for g in 0..n {
            inverses[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidArgument(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidArgument("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(Self {
            table,
            identity,
            inverses,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
    }

    /// Permutations of three letters, composed right to left.
    pub fn symmetric3() -> Self {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
            .collect();
        Self::from_table(table).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }
}

/// A left action of a finite group on `0..points`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaAction {
    group: FiniteGroup,
    points: usize,
    /// `act[k][x] = k·x`.
    act: Vec<Vec<usize>>,
}

impl GammaAction {
    pub fn new(group: FiniteGroup, points: usize, act: Vec<Vec<usize>>) -> Result<Self> {
        let g = group.order();
        if points == 0 || act.len() != g || act.iter().any(|r| r.len() != points || r.iter().any(|&y| y >= points)) {
            return Err(Error::InvalidArgument("action table must be |Γ| × |X| with entries in X".into()));
        }
        for x in 0..points {
            if act[group.identity()][x] != x {
                return Err(Error::InvalidArgument("identity must act trivially".into()));
            }
            for a in 0..g {
                for b in 0..g {
                    if act[group.mul(a, b)][x] != act[a][act[b][x]] {
                        return Err(Error::InvalidArgument("action is not compatible with the group law".into()));
                    }
                }
            }
        }
        Ok(Self { group, points, act })
    }

    pub fn from_fn(group: FiniteGroup, points: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let act = (0..group.order()).map(|k| (0..points).map(|x| f(k, x)).collect()).collect();
        Self::new(group, points, act)
    }

    pub fn trivial(group: FiniteGroup, points: usize) -> Result<Self> {
        Self::from_fn(group, points, |_, x| x)
    }

    /// Left multiplication of the group on itself.
    pub fn regular(group: FiniteGroup) -> Result<Self> {
        let n = group.order();
        let g2 = group.clone();
        Self::from_fn(group, n, move |k, x| g2.mul(k, x))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn apply(&self, k: usize, x: usize) -> usize {
        self.act[k][x]
    }
}

/// Table `τ(k₁, k₂, x)` of unit complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct TauCocycle {
    g: usize,
    points: usize,
    values: Vec<Complex64>,
}

impl TauCocycle {
    pub fn from_fn(act: &GammaAction, mut f: impl FnMut(usize, usize, usize) -> Complex64) -> Result<Self> {
        let g = act.group.order();
        let mut values = Vec::with_capacity(g * g * act.points);
        for a in 0..g {
            for b in 0..g {
                for x in 0..act.points {
                    let v = f(a, b, x);
                    if (v.norm() - 1.0).abs() > ROOT_TOLERANCE {
                        return Err(Error::InvalidArgument(format!("τ({a},{b},{x}) is not unimodular")));
                    }
                    values.push(v);
                }
            }
        }
        Ok(Self {
            g,
            points: act.points,
            values,
        })
    }

    pub fn trivial(act: &GammaAction) -> Self {
        Self::from_fn(act, |_, _, _| Complex64::new(1.0, 0.0)).expect("unimodular")
    }

    pub fn get(&self, a: usize, b: usize, x: usize) -> Complex64 {
        self.values[(a * self.g + b) * self.points + x]
    }

    pub fn set(&mut self, a: usize, b: usize, x: usize, v: Complex64) {
        self.values[(a * self.g + b) * self.points + x] = v;
    }

    fn matches(&self, act: &GammaAction) -> bool {
        self.g == act.group.order() && self.points == act.points
    }
}

/// Table `ĵ(k, x)` of unit complex numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct AutomorphyFactor {
    points: usize,
    values: Vec<Complex64>,
}

impl AutomorphyFactor {
    pub fn from_fn(act: &GammaAction, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        let mut values = Vec::with_capacity(act.group.order() * act.points);
        for k in 0..act.group.order() {
            for x in 0..act.points {
                let v = f(k, x);
                if (v.norm() - 1.0).abs() > ROOT_TOLERANCE {
                    return Err(Error::InvalidArgument(format!("ĵ({k},{x}) is not unimodular")));
                }
                values.push(v);
            }
        }
        Ok(Self {
            points: act.points,
            values,
        })
    }

    pub fn get(&self, k: usize, x: usize) -> Complex64 {
        self.values[k * self.points + x]
    }

    fn matches(&self, act: &GammaAction) -> bool {
        self.points == act.points && self.values.len() == act.group.order() * act.points
    }
}

/// Exhaustive check of the cocycle identity over `Γ³ × X`.
pub fn tau_cocycle_check(act: &GammaAction, tau: &TauCocycle, tolerance: f64) -> Result<CheckReport> {
    if !tau.matches(act) {
        return Err(Error::InvalidArgument("τ table does not match the action".into()));
    }
    let grp = &act.group;
    let g = grp.order();
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for a in 0..g {
        for b in 0..g {
            for c in 0..g {
                for x in 0..act.points {
                    let lhs = tau.get(grp.mul(a, b), c, x) * tau.get(a, b, act.apply(c, x));
                    let rhs = tau.get(a, grp.mul(b, c), x) * tau.get(b, c, x);
                    worst = worst.max((lhs - rhs).norm());
                    samples += 1;
                }
            }
        }
    }
    Ok(CheckReport::new(worst, samples, tolerance))
}

/// Exhaustive check of `ĵ(k₁, k₂x) ĵ(k₂, x) = τ(k₁, k₂, x) ĵ(k₁k₂, x)`.
pub fn automorphy_check(act: &GammaAction, tau: &TauCocycle, j: &AutomorphyFactor, tolerance: f64) -> Result<CheckReport> {
    if !tau.matches(act) || !j.matches(act) {
        return Err(Error::InvalidArgument("tables do not match the action".into()));
    }
    let grp = &act.group;
    let g = grp.order();
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for a in 0..g {
        for b in 0..g {
            for x in 0..act.points {
                let lhs = j.get(a, act.apply(b, x)) * j.get(b, x);
                let rhs = tau.get(a, b, x) * j.get(grp.mul(a, b), x);
                worst = worst.max((lhs - rhs).norm());
                samples += 1;
            }
        }
    }
    Ok(CheckReport::new(worst, samples, tolerance))
}

/// `τ_ĵ(k₁, k₂, x) = ĵ(k₁, k₂x) ĵ(k₂, x) ĵ(k₁k₂, x)⁻¹`.
pub fn coboundary(act: &GammaAction, j: &AutomorphyFactor) -> Result<TauCocycle> {
    if !j.matches(act) {
        return Err(Error::InvalidArgument("ĵ table does not match the action".into()));
    }
    let grp = &act.group;
    TauCocycle::from_fn(act, |a, b, x| j.get(a, act.apply(b, x)) * j.get(b, x) / j.get(grp.mul(a, b), x))
}

#[derive(Debug, Clone, PartialEq)]
pub enum Solution {
    Factor(AutomorphyFactor),
    /// The exponent system is inconsistent over `Z/M`.
    Unsolvable,
}

/// Exponent of `z` as an `M`-th root of unity, if it is one.
fn root_exponent(z: Complex64, m: u64) -> Option<i64> {
    let turns = z.arg() / std::f64::consts::TAU * m as f64;
    let k = turns.round() as i64;
    let k = k.rem_euclid(m as i64);
    ((z - root_of_unity(k, m)).norm() <= ROOT_TOLERANCE).then_some(k)
}

/// Linear system `A J ≡ b (mod M)` for the exponents `J[k·|X| + x]`.
fn exponent_system(act: &GammaAction, tau: &TauCocycle, m: u64) -> Result<(Vec<Vec<i64>>, Vec<i64>)> {
    if m < 2 {
        return Err(Error::InvalidArgument("modulus must be at least 2".into()));
    }
    if !tau.matches(act) {
        return Err(Error::InvalidArgument("τ table does not match the action".into()));
    }
    if !tau_cocycle_check(act, tau, ROOT_TOLERANCE)?.passed {
        return Err(Error::Precondition("τ is not a cocycle".into()));
    }
    let grp = &act.group;
    let (g, p) = (grp.order(), act.points);
    let var = |k: usize, x: usize| k * p + x;
    let mut rows = Vec::with_capacity(g * g * p);
    let mut rhs = Vec::with_capacity(g * g * p);
    for a in 0..g {
        for b in 0..g {
            for x in 0..p {
                let t = root_exponent(tau.get(a, b, x), m).ok_or_else(|| {
                    Error::InvalidArgument(format!("τ({a},{b},{x}) is not an {m}-th root of unity"))
                })?;
                let mut row = vec![0i64; g * p];
                row[var(a, act.apply(b, x))] += 1;
                row[var(b, x)] += 1;
                row[var(grp.mul(a, b), x)] -= 1;
                rows.push(row.into_iter().map(|c| c.rem_euclid(m as i64)).collect());
                rhs.push(t);
            }
        }
    }
    Ok((rows, rhs))
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b)`; `(a, 1, 0)` when `a | b`,
/// so that elimination under a dividing pivot leaves the pivot row intact.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b % a == 0 {
        return (a, 1, 0);
    }
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Solves `A x ≡ b (mod m)` by diagonalising `A` with unimodular integer
/// row and column operations; `None` when inconsistent.
// row pairs are updated in lockstep, so index loops read clearest here
#[allow(clippy::needless_range_loop)]
pub fn solve_mod(a: &[Vec<i64>], b: &[i64], m: u64) -> Option<Vec<i64>> {
    let mi = m as i64;
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let red = |x: i64| x.rem_euclid(mi);
    let mut a: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|&x| red(x)).collect()).collect();
    let mut b: Vec<i64> = b.iter().map(|&x| red(x)).collect();
    // column transform: x = v · y
    let mut v: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| i64::from(i == j)).collect()).collect();

    let mut rank = 0;
    while rank < rows.min(cols) {
        let Some((pr, pc)) = (rank..rows)
            .flat_map(|i| (rank..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] != 0)
        else {
            break;
        };
        a.swap(rank, pr);
        b.swap(rank, pr);
        for row in a.iter_mut() {
            row.swap(rank, pc);
        }
        v.iter_mut().for_each(|row| row.swap(rank, pc));
        let t = rank;
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                if a[i][t] == 0 {
                    continue;
                }
                let (p, q) = (a[t][t], a[i][t]);
                let (g, s, u) = ext_gcd(p, q);
                let (pg, qg) = (p / g, q / g);
                for j in 0..cols {
                    let (x, y) = (a[t][j], a[i][j]);
                    a[t][j] = red(s * x + u * y);
                    a[i][j] = red(-qg * x + pg * y);
                }
                let (x, y) = (b[t], b[i]);
                b[t] = red(s * x + u * y);
                b[i] = red(-qg * x + pg * y);
                changed = true;
            }
            for j in t + 1..cols {
                if a[t][j] == 0 {
                    continue;
                }
                let (p, q) = (a[t][t], a[t][j]);
                let (g, s, u) = ext_gcd(p, q);
                let (pg, qg) = (p / g, q / g);
                for row in a.iter_mut() {
                    let (x, y) = (row[t], row[j]);
                    row[t] = red(s * x + u * y);
                    row[j] = red(-qg * x + pg * y);
                }
                for row in v.iter_mut() {
                    let (x, y) = (row[t], row[j]);
                    row[t] = red(s * x + u * y);
                    row[j] = red(-qg * x + pg * y);
                }
                changed = true;
            }
            if !changed {
                break;
            }
        }
        rank += 1;
    }

    let mut y = vec![0i64; cols];
    for i in 0..rows {
        let d = if i < rank { a[i][i] } else { 0 };
        let g = d.gcd(&mi);
        if b[i] % g != 0 {
            return None;
        }
        if i < rank {
            let mg = mi / g;
            let inv = if mg == 1 { 0 } else { mod_inverse((d / g).rem_euclid(mg), mg as u64)? };
            y[i] = ((b[i] / g) % mg * inv).rem_euclid(mg);
        }
    }
    Some(
        (0..cols)
            .map(|i| red((0..cols).map(|j| v[i][j] * y[j] % mi).sum::<i64>()))
            .collect(),
    )
}

fn factor_from_exponents(act: &GammaAction, exps: &[i64], m: u64) -> Result<AutomorphyFactor> {
    let p = act.points;
    AutomorphyFactor::from_fn(act, |k, x| root_of_unity(exps[k * p + x], m))
}

/// Solves for `ĵ` with values in the `M`-th roots of unity.
///
/// Elimination over `Z/M`; the solution is verified with
/// [`automorphy_check`], and tiny systems fall back to
/// [`solve_automorphy_exhaustive`] should verification fail.
pub fn solve_automorphy(act: &GammaAction, tau: &TauCocycle, m: u64) -> Result<Solution> {
    let (a, b) = exponent_system(act, tau, m)?;
    if let Some(x) = solve_mod(&a, &b, m) {
        let j = factor_from_exponents(act, &x, m)?;
        if automorphy_check(act, tau, &j, 1e-12)?.passed {
            return Ok(Solution::Factor(j));
        }
    }
    let unknowns = act.group.order() * act.points;
    if unknowns <= 16 && search_space(m, unknowns).is_some() {
        return solve_automorphy_exhaustive(act, tau, m);
    }
    Ok(Solution::Unsolvable)
}

fn search_space(m: u64, unknowns: usize) -> Option<u64> {
    m.checked_pow(unknowns as u32).filter(|&s| s <= EXHAUSTIVE_LIMIT)
}

/// Enumerates all exponent tables; usable when `M^(|Γ|·|X|)` is small.
pub fn solve_automorphy_exhaustive(act: &GammaAction, tau: &TauCocycle, m: u64) -> Result<Solution> {
    let (a, b) = exponent_system(act, tau, m)?;
    let unknowns = act.group.order() * act.points;
    let total = search_space(m, unknowns)
        .ok_or_else(|| Error::InvalidArgument(format!("search space {m}^{unknowns} is too large")))?;
    let mi = m as i64;
    let mut x = vec![0i64; unknowns];
    for mut code in 0..total {
        for xi in x.iter_mut() {
            *xi = (code % m) as i64;
            code /= m;
        }
        let ok = a
            .iter()
            .zip(&b)
            .all(|(row, &t)| row.iter().zip(&x).map(|(c, v)| c * v).sum::<i64>().rem_euclid(mi) == t);
        if ok {
            return factor_from_exponents(act, &x, m).map(Solution::Factor);
        }
    }
    Ok(Solution::Unsolvable)
}

/// `U(k)(x) = ĵ(k, k⁻¹x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct UTransform {
    points: usize,
    values: Vec<Complex64>,
}

impl UTransform {
    pub fn get(&self, k: usize, x: usize) -> Complex64 {
        self.values[k * self.points + x]
    }

    pub fn set(&mut self, k: usize, x: usize, v: Complex64) {
        self.values[k * self.points + x] = v;
    }
}

pub fn u_transform(act: &GammaAction, j: &AutomorphyFactor) -> Result<UTransform> {
    if !j.matches(act) {
        return Err(Error::InvalidArgument("ĵ table does not match the action".into()));
    }
    let grp = &act.group;
    let mut values = Vec::with_capacity(grp.order() * act.points);
    for k in 0..grp.order() {
        for x in 0..act.points {
            values.push(j.get(k, act.apply(grp.inv(k), x)));
        }
    }
    Ok(UTransform {
        points: act.points,
        values,
    })
}

/// `U(k₁)(x) U(k₂)(k₁⁻¹x) = τ(k₁, k₂, (k₁k₂)⁻¹x) U(k₁k₂)(x)` over `Γ² × X`.
pub fn u_cocycle_check(act: &GammaAction, tau: &TauCocycle, u: &UTransform, tolerance: f64) -> Result<CheckReport> {
    if !tau.matches(act) || u.points != act.points || u.values.len() != act.group.order() * act.points {
        return Err(Error::InvalidArgument("tables do not match the action".into()));
    }
    let grp = &act.group;
    let g = grp.order();
    let mut worst: f64 = 0.0;
    let mut samples = 0;
    for a in 0..g {
        for b in 0..g {
            let ab = grp.mul(a, b);
            for x in 0..act.points {
                let lhs = u.get(a, x) * u.get(b, act.apply(grp.inv(a), x));
                let rhs = tau.get(a, b, act.apply(grp.inv(ab), x)) * u.get(ab, x);
                worst = worst.max((lhs - rhs).norm());
                samples += 1;
            }
        }
    }
    Ok(CheckReport::new(worst, samples, tolerance))
}
