//! The thirteen acceptance criteria as runnable checks.
//!
//! Every criterion draws from its own seeded generator, so a partial run
//! reproduces exactly the numbers of a full run.

use std::f64::consts::PI;

use ncdeform::abelian::{fourier, DualPoint, FiniteVector, GroupContext, GroupPoint};
use ncdeform::automorphy::{
    automorphy_check, coboundary, solve_automorphy, tau_cocycle_check, u_cocycle_check, u_transform, AutomorphyFactor,
    FiniteGroup, GammaAction, Solution, TauCocycle,
};
use ncdeform::cocycles::{Bicharacter, SkewForm, TwoCocycle};
use ncdeform::crossed::{fixed_point_dimension, spectral_project, verify_i_homomorphism, CrossedElement, DeformedActionData};
use ncdeform::deform::{
    automorphism_check, compose_cocycles, convolve, involution, iterated_star_check, rieffel_product_for,
    semiclassical_defect_scaled, star, FourierElement, BRACKET_SCALE,
};
use ncdeform::norms::{norm_convergence, op_norm_report, NormMethod, Window};
use ncdeform::paramdeform::{
    equivariant_closure_of, equivariant_product_closure, heisenberg_field, heisenberg_phases, linearity_check,
    monodromy_check, BaseGrid, CocycleField, ExactPhase, MonodromyData, ParamElement, ScalarField,
};
use ncdeform::{abelian, sampling, Complex64};
use num_rational::Rational64;
use rand::rngs::StdRng;
use rand::Rng;

use crate::error::CliResult;

pub const CRITERIA: [(usize, &str); 13] = [
    (1, "delta-relation"),
    (2, "associativity"),
    (3, "involution"),
    (4, "semiclassical-limit"),
    (5, "iterated-deformation"),
    (6, "translation-automorphisms"),
    (7, "fixed-point-equivalence"),
    (8, "rieffel-duality"),
    (9, "c0x-linearity"),
    (10, "heisenberg-field"),
    (11, "non-principal-monodromy"),
    (12, "norm-oracle"),
    (13, "automorphy"),
];

/// Window for the semiclassical pair; its defect lives on `(±1, ±1)`.
pub const SEMICLASSICAL_WINDOW: usize = 8;
/// Criterion 9 compares three association orders of the same complex
/// products; agreement is asserted at rounding level.
pub const LINEARITY_ROUNDING: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Bracket normalisation used by the semiclassical criterion; changing it
    /// is the mutation control.
    pub bracket_scale: f64,
    /// Criterion ids to run; `None` runs all.
    pub only: Option<Vec<usize>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { seed: 0, bracket_scale: BRACKET_SCALE, only: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Collects bounded measurements; any violated bound fails the criterion.
#[derive(Default)]
struct Tally {
    notes: Vec<String>,
    failed: bool,
}

impl Tally {
    fn at_most(&mut self, what: &str, value: f64, bound: f64) {
        let ok = value <= bound;
        self.failed |= !ok;
        self.notes.push(format!("{what}={value:.3e}{}{bound:.0e}", if ok { "<=" } else { ">" }));
    }

    fn at_least(&mut self, what: &str, value: f64, bound: f64) {
        let ok = value > bound;
        self.failed |= !ok;
        self.notes.push(format!("{what}={value:.3e}{}{bound:.0e}", if ok { ">" } else { "<=" }));
    }

    fn within(&mut self, what: &str, value: f64, lo: f64, hi: f64) {
        let ok = (lo..=hi).contains(&value);
        self.failed |= !ok;
        self.notes.push(format!("{what}={value:.6}{}[{lo},{hi}]", if ok { " in " } else { " not in " }));
    }

    fn holds(&mut self, what: &str, ok: bool) {
        self.failed |= !ok;
        self.notes.push(format!("{what}={ok}"));
    }
}

fn rng_for(seed: u64, id: usize) -> StdRng {
    sampling::seeded(seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn lattice(n: usize) -> GroupContext {
    GroupContext::lattice(n).expect("positive rank")
}

fn pt(v: &[i64]) -> GroupPoint {
    GroupPoint::new(v.to_vec())
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

pub fn run_criterion(id: usize, cfg: &SuiteConfig) -> Outcome {
    let name = CRITERIA.iter().find(|(i, _)| *i == id).map_or("unknown", |(_, n)| n);
    let mut t = Tally::default();
    let mut rng = rng_for(cfg.seed, id);
    let run = match id {
        1 => delta_relation(&mut t, &mut rng),
        2 => associativity(&mut t, &mut rng),
        3 => involution_laws(&mut t, &mut rng),
        4 => semiclassical(&mut t, cfg.bracket_scale),
        5 => iterated(&mut t, &mut rng),
        6 => translations(&mut t, &mut rng),
        7 => fixed_point_equivalence(&mut t, &mut rng),
        8 => rieffel_duality(&mut t, &mut rng),
        9 => c0x_linearity(&mut t, &mut rng),
        10 => heisenberg(&mut t),
        11 => monodromy(&mut t, &mut rng),
        12 => norm_oracle(&mut t),
        13 => automorphy(&mut t, &mut rng),
        _ => {
            t.holds("known-criterion", false);
            Ok(())
        }
    };
    if let Err(e) = run {
        t.failed = true;
        t.notes.push(format!("error: {e}"));
    }
    Outcome { id, name, passed: !t.failed, detail: t.notes.join("; ") }
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<Outcome> {
    CRITERIA
        .iter()
        .filter(|(id, _)| cfg.only.as_ref().is_none_or(|o| o.contains(id)))
        .map(|(id, _)| run_criterion(*id, cfg))
        .collect()
}

/// CSV `criterion,name,status,detail`.
pub fn summary_csv(outcomes: &[Outcome]) -> CliResult<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(["criterion", "name", "status", "detail"])?;
    for o in outcomes {
        w.write_record([o.id.to_string(), o.name.to_string(), if o.passed { "PASS" } else { "FAIL" }.to_string(), o.detail.clone()])?;
    }
    let bytes = w.into_inner().map_err(|e| crate::error::CliError::validation(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

fn delta_relation(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    let ctx = lattice(2);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let s = sampling::lattice_bicharacter(rng, &ctx, false)?;
        let (p, q) = (sampling::point(rng, &ctx, 10), sampling::point(rng, &ctx, 10));
        let lhs = star(&FourierElement::delta(&ctx, &p)?, &FourierElement::delta(&ctx, &q)?, &s)?;
        let rhs = FourierElement::delta(&ctx, &ctx.add(&p, &q))?.scale(s.value(&p, &q));
        worst = worst.max(lhs.distance_l1(&rhs));
    }
    t.at_most("max_l1", worst, 1e-12);
    Ok(())
}

/// Five cocycles: symplectic, irrational symplectic, random skew, non-skew
/// exponent, trivial.
fn battery(rng: &mut StdRng) -> CliResult<Vec<(&'static str, Bicharacter)>> {
    let ctx = lattice(2);
    Ok(vec![
        ("symplectic", Bicharacter::from_skew(&ctx, &SkewForm::symplectic(1, 1.0), 0.37)?),
        ("irrational", Bicharacter::from_skew(&ctx, &SkewForm::symplectic(1, 2f64.sqrt()), 1.0)?),
        ("random-skew", sampling::lattice_bicharacter(rng, &ctx, true)?),
        ("non-skew", Bicharacter::lattice_from_rows(&ctx, &[vec![0.3, -1.2], vec![0.7, 0.5]], 0.8)?),
        ("trivial", Bicharacter::trivial(&ctx)?),
    ])
}

fn associativity(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    let ctx = lattice(2);
    for (name, s) in battery(rng)? {
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let a = sampling::element(rng, &ctx, 9, 3);
            let b = sampling::element(rng, &ctx, 9, 3);
            let c = sampling::element(rng, &ctx, 9, 3);
            let lhs = star(&star(&a, &b, &s)?, &c, &s)?;
            let rhs = star(&a, &star(&b, &c, &s)?, &s)?;
            worst = worst.max(lhs.distance_l1(&rhs));
        }
        t.at_most(name, worst, 1e-10);
    }
    Ok(())
}

fn involution_laws(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    let ctx = lattice(2);
    let (mut anti, mut twice) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let s = sampling::lattice_bicharacter(rng, &ctx, true)?;
        let a = sampling::element(rng, &ctx, 9, 3);
        let b = sampling::element(rng, &ctx, 9, 3);
        let lhs = involution(&star(&a, &b, &s)?, &s)?;
        let rhs = star(&involution(&b, &s)?, &involution(&a, &s)?, &s)?;
        anti = anti.max(lhs.distance_l1(&rhs));
        twice = twice.max(involution(&involution(&a, &s)?, &s)?.distance_l1(&a));
    }
    t.at_most("anti_multiplicative", anti, 1e-12);
    t.at_most("involutive", twice, 1e-12);
    Ok(())
}

/// `|(e^{-πiℏ} - 1)/(iℏ) + π|`, the defect of `δ_{e₁}`, `δ_{e₂}` under the
/// library bracket normalisation.
pub fn delta_pair_defect(hbar: f64) -> f64 {
    ((Complex64::cis(-PI * hbar) - 1.0) / Complex64::new(0.0, hbar) + PI).norm()
}

fn semiclassical(t: &mut Tally, scale: f64) -> CliResult<()> {
    let ctx = lattice(2);
    let gamma = SkewForm::symplectic(1, 1.0);
    let pair = |p: [i64; 2]| FourierElement::from_coeffs(&ctx, [(pt(&p), one()), (pt(&[-p[0], -p[1]]), one())]);
    let (a, b) = (pair([1, 0])?, pair([0, 1])?);
    let w = Window::new(SEMICLASSICAL_WINDOW);
    for h in [1e-2, 1e-3] {
        let full = semiclassical_defect_scaled(&a, &b, &gamma, h, w, scale)?;
        let half = semiclassical_defect_scaled(&a, &b, &gamma, h / 2.0, w, scale)?;
        t.within(&format!("ratio@{h}"), half / full, 0.45, 0.55);
    }
    let (e1, e2) = (FourierElement::delta(&ctx, &pt(&[1, 0]))?, FourierElement::delta(&ctx, &pt(&[0, 1]))?);
    let mut worst: f64 = 0.0;
    for h in [0.5, 1e-1, 1e-2, 1e-3] {
        let d = semiclassical_defect_scaled(&e1, &e2, &gamma, h, Window::new(1), scale)?;
        worst = worst.max((d - delta_pair_defect(h)).abs());
    }
    t.at_most("closed_form", worst, 1e-12);
    Ok(())
}

fn iterated(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    let ctx = lattice(2);
    let (mut worst, mut mismatches) = (0.0f64, 0);
    for _ in 0..50 {
        let s1 = sampling::lattice_bicharacter(rng, &ctx, true)?;
        let s2 = sampling::lattice_bicharacter(rng, &ctx, true)?;
        let a = sampling::element(rng, &ctx, 9, 3);
        let b = sampling::element(rng, &ctx, 9, 3);
        worst = worst.max(iterated_star_check(&a, &b, &s1, &s2)?);
        if star(&a, &b, &compose_cocycles(&s1, &s1.conjugate())?)? != convolve(&a, &b)? {
            mismatches += 1;
        }
    }
    t.at_most("iterated", worst, 1e-12);
    t.holds("undeformation_exact", mismatches == 0);
    Ok(())
}

fn translations(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    let ctx = lattice(2);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s = sampling::lattice_bicharacter(rng, &ctx, false)?;
        let a = sampling::element(rng, &ctx, 9, 3);
        let b = sampling::element(rng, &ctx, 9, 3);
        let v = DualPoint::Torus(sampling::torus_point(rng, 2));
        worst = worst.max(automorphism_check(&a, &b, &s, &v)?);
    }
    t.at_most("max_l1", worst, 1e-12);
    Ok(())
}

fn fixed_point_equivalence(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    for (n, b) in [(5u64, 1i64), (7, 3)] {
        let ctx = GroupContext::finite(vec![n])?;
        let data = DeformedActionData::standard(Bicharacter::finite_from_rows(&ctx, &[vec![b]])?)?;
        let (mut hom, mut idem) = (0.0f64, 0.0f64);
        for _ in 0..50 {
            let x = spectral_project(&CrossedElement::from_fn(&ctx, |_, _| sampling::unit_disc(rng))?, &data)?;
            let y = spectral_project(&CrossedElement::from_fn(&ctx, |_, _| sampling::unit_disc(rng))?, &data)?;
            idem = idem.max(spectral_project(&x, &data)?.max_abs_diff(&x));
            hom = hom.max(verify_i_homomorphism(&x, &y, &data)?);
        }
        t.at_most(&format!("Z{n}_homomorphism"), hom, 1e-10);
        t.at_most(&format!("Z{n}_idempotent"), idem, 1e-12);
        t.holds(&format!("Z{n}_dimension_is_{n}"), fixed_point_dimension(&data)? == n as usize);
    }
    Ok(())
}

fn rieffel_duality(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    for moduli in [vec![5u64], vec![7], vec![3, 3], vec![5, 5]] {
        let ctx = GroupContext::finite(moduli.clone())?;
        let e = Bicharacter::standard_pairing(&ctx)?;
        let c = Complex64::new(ctx.norm_const()?, 0.0);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let s = sampling::finite_bicharacter(rng, &ctx, false)?;
            let f = sampling::finite_vector(rng, &ctx)?;
            let g = sampling::finite_vector(rng, &ctx)?;
            let as_element = |v: &FiniteVector| FourierElement::from_coeffs(&ctx, ctx.points().map(|p| (p.clone(), v.get(&p))));
            let prod = star(&as_element(&f)?, &as_element(&g)?, &s)?;
            let prod = FiniteVector::from_fn(&ctx, |p| prod.get(p))?;
            let lhs = rieffel_product_for(&fourier(&ctx, &f)?, &fourier(&ctx, &g)?, &s, &e)?;
            worst = worst.max(lhs.max_abs_diff(&fourier(&ctx, &prod)?.scale(c)));
        }
        t.at_most(&format!("{moduli:?}"), worst, 1e-10);
    }
    Ok(())
}

fn c0x_linearity(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    let grid = BaseGrid::uniform_circle(8)?;
    let ctx = lattice(2);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let field = CocycleField::from_fn(grid.clone(), 0.7, |_| sampling::skew_form(rng, 2, 1.5))?;
        let f = ScalarField::new(grid.clone(), (0..grid.len()).map(|_| sampling::unit_disc(rng)).collect())?;
        let a = ParamElement::from_fn(grid.clone(), |_| sampling::element(rng, &ctx, 6, 3))?;
        let b = ParamElement::from_fn(grid.clone(), |_| sampling::element(rng, &ctx, 6, 3))?;
        worst = worst.max(linearity_check(&f, &a, &b, &field)?);
    }
    t.at_most("max_l1", worst, LINEARITY_ROUNDING);
    Ok(())
}

fn heisenberg(t: &mut Tally) -> CliResult<()> {
    let q = 32usize;
    for hbar in [0.5, 1.0] {
        let field = heisenberg_field(hbar, BaseGrid::uniform_circle(q)?)?;
        let worst = heisenberg_phases(&field)?
            .into_iter()
            .map(|(y, z)| (z - Complex64::cis(-2.0 * PI * hbar * y)).norm())
            .fold(0.0, f64::max);
        t.at_most(&format!("phase@hbar={hbar}"), worst, 1e-12);
    }
    // ℏ = 1, y = k/32 = p/r in lowest terms: the phase is a primitive r-th root
    let field = heisenberg_field(1.0, BaseGrid::uniform_circle(q)?)?;
    let (mut exact_ok, mut drift) = (true, 0.0f64);
    for (k, (_, z)) in heisenberg_phases(&field)?.into_iter().enumerate() {
        let y = Rational64::new(k as i64, q as i64);
        let r = *y.denom();
        let exact = ExactPhase::heisenberg(Rational64::from_integer(1), y);
        exact_ok &= exact.order() == r && exact.is_root_of_unity_of_order_dividing(r);
        drift = drift.max((z - exact.to_complex()).norm()).max((z.powi(r as i32) - one()).norm());
    }
    t.holds("exact_roots", exact_ok);
    t.at_most("float_vs_exact", drift, 1e-12);
    Ok(())
}

fn monodromy(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    t.holds("accepts_[[1,1],[0,1]]", monodromy_check(&MonodromyData::from_rows(&[vec![1, 1], vec![0, 1]])?));
    t.holds("rejects_diag(2,1)", !monodromy_check(&MonodromyData::from_rows(&[vec![2, 0], vec![0, 1]])?));

    let grid = BaseGrid::uniform_interval(5)?;
    let rho = MonodromyData::from_rows(&[vec![1, 1], vec![0, 1]])?;
    let field = CocycleField::from_fn(grid.clone(), 0.8, |y| SkewForm::symplectic(1, 1.0 + 0.5 * (2.0 * PI * y).cos()))?;
    let ctx = lattice(2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let a = equivariant_closure_of(&ParamElement::from_fn(grid.clone(), |_| sampling::element(rng, &ctx, 6, 3))?, &rho)?;
        let b = equivariant_closure_of(&ParamElement::from_fn(grid.clone(), |_| sampling::element(rng, &ctx, 6, 3))?, &rho)?;
        worst = worst.max(equivariant_product_closure(&a, &b, &rho, &field)?);
    }
    t.at_most("closure", worst, 1e-12);

    // ρ = [[I,0],[I,I]] is symplectic but moves e₁∧e₂ to (e₁+e₃)∧(e₂+e₄)
    let rho4 = MonodromyData::from_rows(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 0, 1, 0], vec![0, 1, 0, 1]])?;
    let mut wedge = vec![vec![0.0; 4]; 4];
    wedge[0][1] = 1.0;
    wedge[1][0] = -1.0;
    let field4 = CocycleField::constant(grid.clone(), SkewForm::real_from_rows(&wedge)?, 0.8)?;
    let ctx4 = lattice(4);
    let mut control: f64 = 0.0;
    for _ in 0..5 {
        let a = ParamElement::from_fn(grid.clone(), |_| sampling::element(rng, &ctx4, 4, 2).add(&FourierElement::delta(&ctx4, &pt(&[0, 0, 1, 0])).expect("in Z^4")).expect("same context"))?;
        let b = ParamElement::from_fn(grid.clone(), |_| sampling::element(rng, &ctx4, 4, 2).add(&FourierElement::delta(&ctx4, &pt(&[0, 0, 0, 1])).expect("in Z^4")).expect("same context"))?;
        let a = equivariant_closure_of(&a, &rho4)?;
        let b = equivariant_closure_of(&b, &rho4)?;
        control = control.max(equivariant_product_closure(&a, &b, &rho4, &field4)?);
    }
    t.at_least("negative_control", control, 1e-3);
    Ok(())
}

fn norm_oracle(t: &mut Tally) -> CliResult<()> {
    let ctx = lattice(2);
    let a = FourierElement::from_coeffs(&ctx, [(pt(&[1, 0]), one()), (pt(&[-1, 0]), one())])?;
    let triv = Bicharacter::trivial(&ctx)?;
    let windows: Vec<Window> = [4, 8, 16, 32, 64].into_iter().map(Window::new).collect();
    // norm_convergence refuses a decreasing column
    let rows = norm_convergence(&a, &triv, &windows)?;
    t.holds("monotone", true);
    t.at_most("|W64-2|", (rows[rows.len() - 1].value - 2.0).abs(), 1e-3);
    let s = Bicharacter::from_skew(&ctx, &SkewForm::symplectic(1, 2f64.sqrt()), 0.6)?;
    let mut exact = true;
    for p in [[0, 0], [3, -2], [-7, 7]] {
        let d = FourierElement::delta(&ctx, &pt(&p))?;
        for w in [7, 20, 64] {
            let r = op_norm_report(&d, &s, Window::new(w))?;
            exact &= r.value == 1.0 && r.method == NormMethod::Exact;
        }
    }
    t.holds("delta_norm_is_1", exact);
    Ok(())
}

/// Actions with `|Γ| ≤ 6` and `|X| ≤ 8`.
fn small_actions() -> CliResult<Vec<GammaAction>> {
    let s3 = FiniteGroup::symmetric3();
    let s3b = s3.clone();
    Ok(vec![
        GammaAction::trivial(FiniteGroup::cyclic(2)?, 1)?,
        GammaAction::regular(FiniteGroup::cyclic(5)?)?,
        GammaAction::from_fn(FiniteGroup::cyclic(4)?, 8, |k, x| 4 * (x / 4) + (x % 4 + k) % 4)?,
        GammaAction::regular(s3.clone())?,
        GammaAction::trivial(s3.clone(), 8)?,
        GammaAction::from_fn(s3, 8, move |k, x| if x < 6 { s3b.mul(k, x) } else { x })?,
    ])
}

fn automorphy(t: &mut Tally, rng: &mut StdRng) -> CliResult<()> {
    let mut cocycles_ok = true;
    let mut u_worst: f64 = 0.0;
    let mut solved = 0;
    for act in small_actions()? {
        let (g, n) = (act.group().order(), act.points());
        for m in [2u64, 3, 4, 6] {
            let exps: Vec<i64> = (0..g * n).map(|_| rng.gen_range(0..m as i64)).collect();
            let j = AutomorphyFactor::from_fn(&act, |k, x| abelian::root_of_unity(exps[k * n + x], m))?;
            let tau = coboundary(&act, &j)?;
            cocycles_ok &= tau_cocycle_check(&act, &tau, 1e-12)?.passed;
            if let Solution::Factor(found) = solve_automorphy(&act, &tau, m)? {
                solved += 1;
                u_worst = u_worst.max(automorphy_check(&act, &tau, &found, 1e-12)?.max_deviation);
                u_worst = u_worst.max(u_cocycle_check(&act, &tau, &u_transform(&act, &found)?, 1e-12)?.max_deviation);
            } else {
                cocycles_ok = false;
            }
        }
        // unit-modulus ĵ that are not roots of unity
        let phases: Vec<f64> = (0..g * n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        let j = AutomorphyFactor::from_fn(&act, |k, x| Complex64::cis(phases[k * n + x]))?;
        cocycles_ok &= tau_cocycle_check(&act, &coboundary(&act, &j)?, 1e-12)?.passed;
    }
    t.holds("coboundaries_are_cocycles", cocycles_ok);

    let act = GammaAction::trivial(FiniteGroup::cyclic(2)?, 1)?;
    let tau = TauCocycle::from_fn(&act, |a, b, _| if a == 1 && b == 1 { -one() } else { one() })?;
    t.holds("Z2_unsolvable_at_M=2", solve_automorphy(&act, &tau, 2)? == Solution::Unsolvable);
    match solve_automorphy(&act, &tau, 4)? {
        Solution::Factor(j) => {
            solved += 1;
            t.at_most("Z2_automorphy@M=4", automorphy_check(&act, &tau, &j, 1e-12)?.max_deviation, 1e-12);
            u_worst = u_worst.max(u_cocycle_check(&act, &tau, &u_transform(&act, &j)?, 1e-12)?.max_deviation);
        }
        Solution::Unsolvable => t.holds("Z2_solvable_at_M=4", false),
    }
    t.at_most(&format!("u_identity_over_{solved}_solutions"), u_worst, 1e-12);
    Ok(())
}
