//! Subcommand bodies. Each takes the raw input document and returns the
//! text to emit; the binary only handles I/O and exit codes.

use ncdeform::abelian::GroupContext;
use ncdeform::automorphy::{
    automorphy_check, solve_automorphy, u_cocycle_check, u_transform, FiniteGroup, GammaAction, Solution, TauCocycle,
};
use ncdeform::cocycles::Bicharacter;
use ncdeform::crossed::{fixed_point_dimension, spectral_project, verify_i_homomorphism, CrossedElement, DeformedActionData};
use ncdeform::deform::{semiclassical_defect_scaled, star, BRACKET_SCALE};
use ncdeform::norms::{norm_convergence, Window};
use ncdeform::paramdeform::{heisenberg_field, heisenberg_phases, BaseGrid};
use ncdeform::{abelian, sampling};
use serde::{Deserialize, Serialize};

use crate::document::{format_decimal, parse_skew, CocycleDocument, ElementDocument};
use crate::error::{CliError, CliResult};

/// Flags shared by all subcommands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Overrides the config's seed when given.
    pub seed: Option<u64>,
    pub tolerance: f64,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: None, tolerance: 1e-10 }
    }
}

impl Options {
    fn seed_or(&self, config: Option<u64>) -> u64 {
        self.seed.or(config).unwrap_or(0)
    }
}

fn parse<T: for<'de> Deserialize<'de>>(input: &str) -> CliResult<T> {
    Ok(serde_json::from_str(input)?)
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

fn csv_finish(w: csv::Writer<Vec<u8>>) -> CliResult<String> {
    let bytes = w.into_inner().map_err(|e| CliError::validation(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StarConfig {
    pub a: ElementDocument,
    pub b: ElementDocument,
    pub sigma: CocycleDocument,
}

/// `a ⋆ b` as an element document.
pub fn cmd_star(input: &str) -> CliResult<String> {
    let cfg: StarConfig = parse(input)?;
    let a = cfg.a.parse().map_err(|e| e.context("a"))?;
    let b = cfg.b.parse().map_err(|e| e.context("b"))?;
    if a.context() != b.context() {
        return Err(CliError::validation("b: context differs from a"));
    }
    let sigma = cfg.sigma.parse(a.context())?;
    let prod = star(&a, &b, &sigma)?;
    Ok(crate::document::element_to_json(&prod) + "\n")
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemiclassicalConfig {
    pub a: ElementDocument,
    pub b: ElementDocument,
    pub gamma: Vec<Vec<f64>>,
    pub hbars: Vec<f64>,
    pub window: usize,
    /// Bracket normalisation; defaults to the library convention.
    #[serde(default)]
    pub scale: Option<f64>,
}

/// CSV `hbar,defect`, rows in descending `ℏ`.
pub fn cmd_semiclassical(input: &str) -> CliResult<String> {
    let cfg: SemiclassicalConfig = parse(input)?;
    let a = cfg.a.parse().map_err(|e| e.context("a"))?;
    let b = cfg.b.parse().map_err(|e| e.context("b"))?;
    let gamma = parse_skew(&cfg.gamma, "gamma")?;
    if cfg.hbars.is_empty() {
        return Err(CliError::validation("hbars: empty list"));
    }
    if let Some(i) = cfg.hbars.iter().position(|h| !h.is_finite() || *h == 0.0) {
        return Err(CliError::validation(format!("hbars[{i}]: must be finite and nonzero")));
    }
    let mut hbars = cfg.hbars.clone();
    hbars.sort_by(|x, y| y.total_cmp(x));
    let scale = cfg.scale.unwrap_or(BRACKET_SCALE);
    let mut w = csv_writer();
    w.write_record(["hbar", "defect"])?;
    for h in hbars {
        let d = semiclassical_defect_scaled(&a, &b, &gamma, h, Window::new(cfg.window), scale)?;
        w.write_record([format_decimal(h), format_decimal(d)])?;
    }
    csv_finish(w)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KasprzakConfig {
    pub moduli: Vec<u64>,
    pub matrix: Vec<Vec<i64>>,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_trials() -> usize {
    50
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KasprzakReport {
    pub moduli: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
    pub max_deviation: f64,
    pub max_idempotence_deviation: f64,
    pub fixed_point_dimension: usize,
    pub group_order: usize,
    pub tolerance: f64,
    pub passed: bool,
}

/// Projects random pairs onto the deformed fixed-point algebra and measures
/// how far `I` is from multiplicative.
pub fn kasprzak_report(cfg: &KasprzakConfig, seed: u64, tolerance: f64) -> CliResult<KasprzakReport> {
    let ctx = GroupContext::finite(cfg.moduli.clone()).map_err(|e| CliError::from(e).context("moduli"))?;
    let sigma = Bicharacter::finite_from_rows(&ctx, &cfg.matrix).map_err(|e| CliError::from(e).context("matrix"))?;
    let data = DeformedActionData::standard(sigma)?;
    let mut rng = sampling::seeded(seed);
    let mut random = || CrossedElement::from_fn(&ctx, |_, _| sampling::unit_disc(&mut rng));
    let (mut worst, mut idem) = (0.0f64, 0.0f64);
    for _ in 0..cfg.trials {
        let a = spectral_project(&random()?, &data)?;
        let b = spectral_project(&random()?, &data)?;
        idem = idem.max(spectral_project(&a, &data)?.max_abs_diff(&a));
        worst = worst.max(verify_i_homomorphism(&a, &b, &data)?);
    }
    let dim = fixed_point_dimension(&data)?;
    let order = ctx.order().expect("finite context");
    Ok(KasprzakReport {
        moduli: cfg.moduli.clone(),
        trials: cfg.trials,
        seed,
        max_deviation: worst,
        max_idempotence_deviation: idem,
        fixed_point_dimension: dim,
        group_order: order,
        tolerance,
        passed: worst <= tolerance && dim == order,
    })
}

/// JSON report; a tolerance failure carries the report in its message.
pub fn cmd_kasprzak_verify(input: &str, opts: Options) -> CliResult<String> {
    let cfg: KasprzakConfig = parse(input)?;
    let seed = opts.seed_or(cfg.seed);
    let report = kasprzak_report(&cfg, seed, opts.tolerance)?;
    let text = serde_json::to_string_pretty(&report).expect("reports serialise") + "\n";
    if report.passed {
        Ok(text)
    } else {
        Err(CliError::tolerance(text))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeisenbergConfig {
    pub samples: usize,
    pub hbar: f64,
}

/// CSV `y,phase_re,phase_im` on the uniform circle grid.
pub fn cmd_heisenberg(input: &str) -> CliResult<String> {
    let cfg: HeisenbergConfig = parse(input)?;
    if cfg.samples == 0 {
        return Err(CliError::validation("samples: grid size must be positive"));
    }
    if !cfg.hbar.is_finite() {
        return Err(CliError::validation("hbar: must be finite"));
    }
    let field = heisenberg_field(cfg.hbar, BaseGrid::uniform_circle(cfg.samples)?)?;
    let mut w = csv_writer();
    w.write_record(["y", "phase_re", "phase_im"])?;
    for (y, z) in heisenberg_phases(&field)? {
        w.write_record([format_decimal(y), format_decimal(z.re), format_decimal(z.im)])?;
    }
    csv_finish(w)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormConfig {
    pub element: ElementDocument,
    pub gamma: Vec<Vec<f64>>,
    pub hbar: f64,
    pub windows: Vec<usize>,
}

/// CSV `window,estimate`; refuses to emit a column that decreases.
pub fn cmd_norm(input: &str) -> CliResult<String> {
    let cfg: NormConfig = parse(input)?;
    let a = cfg.element.parse().map_err(|e| e.context("element"))?;
    let gamma = parse_skew(&cfg.gamma, "gamma")?;
    let sigma = Bicharacter::from_skew(a.context(), &gamma, cfg.hbar).map_err(|e| CliError::from(e).context("gamma"))?;
    let windows: Vec<Window> = cfg.windows.iter().map(|&r| Window::new(r)).collect();
    let rows = norm_convergence(&a, &sigma, &windows)?;
    let mut w = csv_writer();
    w.write_record(["window", "estimate"])?;
    for r in rows {
        w.write_record([r.window.radius.to_string(), format_decimal(r.value)])?;
    }
    csv_finish(w)
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupDocument {
    Cyclic { order: usize },
    Symmetric3,
    /// Multiplication table with the identity at index 0.
    Table { table: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ActionDocument {
    Trivial { points: usize },
    Regular,
    /// `table[k][x] = k·x`.
    Table { table: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphyConfig {
    pub group: GroupDocument,
    pub action: ActionDocument,
    pub modulus: u64,
    /// `τ(a, b, x) = exp(2πi·tau[a][b][x]/M)`.
    pub tau: Vec<Vec<Vec<i64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AutomorphyReport {
    pub modulus: u64,
    pub solvable: bool,
    /// `ĵ(k, x) = exp(2πi·factor[k][x]/M)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factor: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub automorphy_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u_identity_deviation: Option<f64>,
}

fn build_action(cfg: &AutomorphyConfig) -> CliResult<GammaAction> {
    let group = match &cfg.group {
        GroupDocument::Cyclic { order } => FiniteGroup::cyclic(*order),
        GroupDocument::Symmetric3 => Ok(FiniteGroup::symmetric3()),
        GroupDocument::Table { table } => FiniteGroup::from_table(table.clone()),
    }
    .map_err(|e| CliError::from(e).context("group"))?;
    match &cfg.action {
        ActionDocument::Trivial { points } => GammaAction::trivial(group, *points),
        ActionDocument::Regular => GammaAction::regular(group),
        ActionDocument::Table { table } => GammaAction::new(group, table.first().map_or(0, Vec::len), table.clone()),
    }
    .map_err(|e| CliError::from(e).context("action"))
}

fn exponent_of(z: ncdeform::Complex64, m: u64) -> i64 {
    let turns = z.arg() / std::f64::consts::TAU * m as f64;
    (turns.round() as i64).rem_euclid(m as i64)
}

pub fn automorphy_report(cfg: &AutomorphyConfig, tolerance: f64) -> CliResult<AutomorphyReport> {
    if cfg.modulus == 0 {
        return Err(CliError::validation("modulus: must be positive"));
    }
    let act = build_action(cfg)?;
    let (g, n) = (act.group().order(), act.points());
    if cfg.tau.len() != g || cfg.tau.iter().any(|r| r.len() != g || r.iter().any(|c| c.len() != n)) {
        return Err(CliError::validation(format!("tau: expected a {g}×{g}×{n} exponent table")));
    }
    let tau = TauCocycle::from_fn(&act, |a, b, x| abelian::root_of_unity(cfg.tau[a][b][x], cfg.modulus))?;
    Ok(match solve_automorphy(&act, &tau, cfg.modulus)? {
        Solution::Unsolvable => AutomorphyReport {
            modulus: cfg.modulus,
            solvable: false,
            factor: None,
            automorphy_deviation: None,
            u_identity_deviation: None,
        },
        Solution::Factor(j) => {
            let check = automorphy_check(&act, &tau, &j, tolerance)?;
            let u = u_cocycle_check(&act, &tau, &u_transform(&act, &j)?, tolerance)?;
            AutomorphyReport {
                modulus: cfg.modulus,
                solvable: true,
                factor: Some((0..g).map(|k| (0..n).map(|x| exponent_of(j.get(k, x), cfg.modulus)).collect()).collect()),
                automorphy_deviation: Some(check.max_deviation),
                u_identity_deviation: Some(u.max_deviation),
            }
        }
    })
}

/// JSON report. Unsolvable systems are a valid answer (exit 0); a returned
/// factor that fails its own checks is a tolerance failure.
pub fn cmd_automorphy_solve(input: &str, opts: Options) -> CliResult<String> {
    let cfg: AutomorphyConfig = parse(input)?;
    let report = automorphy_report(&cfg, opts.tolerance)?;
    let text = serde_json::to_string_pretty(&report).expect("reports serialise") + "\n";
    let bad = [report.automorphy_deviation, report.u_identity_deviation].iter().flatten().any(|d| *d > opts.tolerance);
    if bad {
        Err(CliError::tolerance(text))
    } else {
        Ok(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponents_of_roots_of_unity() {
        for m in [2u64, 3, 4, 12] {
            for k in 0..m as i64 {
                assert_eq!(exponent_of(abelian::root_of_unity(k, m), m), k);
            }
        }
    }

    #[test]
    fn seed_precedence() {
        assert_eq!(Options::default().seed_or(None), 0);
        assert_eq!(Options::default().seed_or(Some(4)), 4);
        assert_eq!(Options { seed: Some(1), tolerance: 0.0 }.seed_or(Some(4)), 1);
    }
}
