//! JSON documents for elements, contexts and cocycles.
//!
//! Coefficients travel as decimal strings. Serialisation prints the shortest
//! decimal that parses back to the same `f64`, so `parse ∘ serialize` is the
//! identity bit for bit on finite coefficients.

use ncdeform::abelian::{GroupContext, GroupMode, GroupPoint};
use ncdeform::cocycles::{Bicharacter, SkewForm};
use ncdeform::deform::FourierElement;
use ncdeform::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Lattice,
    Finite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextDocument {
    pub rank: usize,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientDocument {
    pub point: Vec<i64>,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementDocument {
    pub context: ContextDocument,
    pub coefficients: Vec<CoefficientDocument>,
}

/// `kind = "lattice"`: `exp(-πiℏ pᵀAq)`; `kind = "finite"`: `exp(2πi ξᵀBη/N)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CocycleDocument {
    Lattice { matrix: Vec<Vec<f64>>, hbar: f64 },
    Finite { matrix: Vec<Vec<i64>> },
}

impl ContextDocument {
    pub fn parse(&self) -> CliResult<GroupContext> {
        let ctx = match (&self.mode, &self.moduli) {
            (Mode::Lattice, None) => GroupContext::lattice(self.rank),
            (Mode::Lattice, Some(_)) => return Err(CliError::validation("context.moduli: lattice contexts take no moduli")),
            (Mode::Finite, Some(m)) if m.len() == self.rank => GroupContext::finite(m.clone()),
            (Mode::Finite, Some(m)) => {
                return Err(CliError::validation(format!("context.moduli: expected {} moduli, found {}", self.rank, m.len())))
            }
            (Mode::Finite, None) => return Err(CliError::validation("context.moduli: finite contexts need moduli")),
        };
        ctx.map_err(|e| CliError::from(e).context("context"))
    }

    pub fn of(ctx: &GroupContext) -> Self {
        match ctx.mode() {
            GroupMode::Lattice => Self { rank: ctx.rank(), mode: Mode::Lattice, moduli: None },
            GroupMode::Finite(_) => Self {
                rank: ctx.rank(),
                mode: Mode::Finite,
                moduli: ctx.moduli().map(<[u64]>::to_vec),
            },
        }
    }
}

fn parse_decimal(text: &str, at: &str) -> CliResult<f64> {
    let x: f64 = text
        .trim()
        .parse()
        .map_err(|_| CliError::validation(format!("{at}: not a decimal number: {text:?}")))?;
    if !x.is_finite() {
        return Err(CliError::validation(format!("{at}: coefficient must be finite")));
    }
    Ok(x)
}

/// Shortest round-trip decimal; never uses exponent notation.
pub fn format_decimal(x: f64) -> String {
    format!("{x}")
}

impl ElementDocument {
    pub fn parse(&self) -> CliResult<FourierElement> {
        let ctx = self.context.parse()?;
        let mut terms = Vec::with_capacity(self.coefficients.len());
        for (i, c) in self.coefficients.iter().enumerate() {
            let at = format!("coefficients[{i}]");
            if c.point.len() != ctx.rank() {
                return Err(CliError::validation(format!(
                    "{at}.point: expected length {}, found {}",
                    ctx.rank(),
                    c.point.len()
                )));
            }
            let p = GroupPoint::new(c.point.clone());
            if !ctx.contains(&p) {
                return Err(CliError::validation(format!("{at}.point: {:?} lies outside the group", c.point)));
            }
            let z = Complex64::new(parse_decimal(&c.re, &format!("{at}.re"))?, parse_decimal(&c.im, &format!("{at}.im"))?);
            terms.push((p, z));
        }
        Ok(FourierElement::from_coeffs(&ctx, terms)?)
    }

    /// Canonical document: coefficients in point order.
    pub fn of(a: &FourierElement) -> Self {
        Self {
            context: ContextDocument::of(a.context()),
            coefficients: a
                .iter()
                .map(|(p, c)| CoefficientDocument {
                    point: p.coords().to_vec(),
                    re: format_decimal(c.re),
                    im: format_decimal(c.im),
                })
                .collect(),
        }
    }
}

impl CocycleDocument {
    pub fn parse(&self, ctx: &GroupContext) -> CliResult<Bicharacter> {
        let r = match self {
            CocycleDocument::Lattice { matrix, hbar } => Bicharacter::lattice_from_rows(ctx, matrix, *hbar),
            CocycleDocument::Finite { matrix } => Bicharacter::finite_from_rows(ctx, matrix),
        };
        r.map_err(|e| CliError::from(e).context("sigma"))
    }
}

pub fn parse_skew(rows: &[Vec<f64>], at: &str) -> CliResult<SkewForm> {
    SkewForm::real_from_rows(rows).map_err(|e| CliError::from(e).context(at))
}

pub fn element_from_json(text: &str) -> CliResult<FourierElement> {
    serde_json::from_str::<ElementDocument>(text)?.parse()
}

pub fn element_to_json(a: &FourierElement) -> String {
    serde_json::to_string_pretty(&ElementDocument::of(a)).expect("documents serialise")
}
