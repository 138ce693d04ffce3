//! The JSON problem description.
//!
//! Polynomials are ascending coefficient arrays. A coefficient is an integer
//! (reduced into the prime field) or an array of coordinates over the next
//! field down, so `[0, 0, 1]` is `y^2` in `L = F_q[y]/(f)` and `[[1, 2]]` is
//! the constant `1 + 2z` when `F_q = F_p[z]/(h)`.

use std::path::Path;

use drinfeld_endo::prelude::{DrinfeldModule, ExtField, Fq, FqElem, FqSpec, Poly, SkewPoly, WeilCubic};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    List(Vec<Coeff>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldConfig {
    pub p: u32,
    #[serde(default = "one")]
    pub e: u32,
    /// Monic modulus over `F_p`, ascending; required when `e > 1`.
    #[serde(default)]
    pub modulus: Vec<i64>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeilConfig {
    pub a1: Vec<Coeff>,
    pub a2: Vec<Coeff>,
    pub mu: Coeff,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtConfig {
    /// Monic modulus over `F_q`, ascending.
    pub modulus: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    pub name: String,
    /// Coefficients of `phi_T` in `tau`, ascending, each an element of `L`.
    #[serde(rename = "phi_T")]
    pub phi_t: Vec<Coeff>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub candidate_bound: Option<u128>,
    #[serde(default)]
    pub output_format: Option<OutputFormat>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub field: FieldConfig,
    pub pv: Vec<Coeff>,
    pub m: u32,
    pub weil: WeilConfig,
    #[serde(rename = "L", default)]
    pub l: Option<ExtConfig>,
    #[serde(default)]
    pub modules: Vec<ModuleConfig>,
    #[serde(default)]
    pub options: Options,
}

impl ProblemConfig {
    pub fn from_json(text: &str) -> Result<ProblemConfig, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<ProblemConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        ProblemConfig::from_json(&text)
    }

    pub fn module(&self, name: &str) -> Option<&ModuleConfig> {
        self.modules.iter().find(|m| m.name == name)
    }
}

/// The config turned into library values.
#[derive(Clone, Debug)]
pub struct Problem {
    pub field: Fq,
    pub weil: WeilCubic,
    pub ext: Option<ExtField>,
    pub modules: Vec<(String, DrinfeldModule)>,
}

fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

/// Resolves a coefficient to an element of `f`.
pub fn elem(f: &Fq, c: &Coeff) -> Result<FqElem, CliError> {
    match c {
        Coeff::Int(n) => Ok(f.from_int(*n)),
        Coeff::List(coords) => {
            let base = f
                .base()
                .ok_or_else(|| config_err(format!("nested coefficient over the prime field F_{}", f.p())))?;
            if coords.len() > f.relative_degree() {
                return Err(config_err(format!(
                    "element has {} coordinates, field has degree {}",
                    coords.len(),
                    f.relative_degree()
                )));
            }
            let cs = coords.iter().map(|c| elem(base, c)).collect::<Result<Vec<_>, _>>()?;
            f.from_coords(&cs).map_err(config_err)
        }
    }
}

pub fn poly(f: &Fq, cs: &[Coeff]) -> Result<Poly, CliError> {
    Ok(Poly::new(f.clone(), cs.iter().map(|c| elem(f, c)).collect::<Result<_, _>>()?))
}

impl Problem {
    pub fn build(cfg: &ProblemConfig) -> Result<Problem, CliError> {
        let spec = FqSpec { p: cfg.field.p, e: cfg.field.e, modulus: cfg.field.modulus.clone() };
        let field = if spec.e == 1 && spec.modulus.is_empty() {
            Fq::prime(spec.p)
        } else {
            Fq::from_spec(&spec)
        }
        .map_err(config_err)?;
        let pv = poly(&field, &cfg.pv)?;
        if pv.deg().unwrap_or(0) == 0 {
            return Err(config_err("pv must be a nonconstant polynomial"));
        }
        if cfg.m == 0 {
            return Err(config_err("m must be positive"));
        }
        let mu = elem(&field, &cfg.weil.mu)?;
        let weil = WeilCubic::new(
            poly(&field, &cfg.weil.a1)?,
            poly(&field, &cfg.weil.a2)?,
            mu,
            pv.monic(),
            cfg.m,
        )
        .map_err(config_err)?;
        let ext = match &cfg.l {
            Some(l) => {
                let modulus = l.modulus.iter().map(|c| elem(&field, c)).collect::<Result<Vec<_>, _>>()?;
                Some(ExtField::new(&field, &modulus).map_err(config_err)?)
            }
            None => None,
        };
        let mut modules = Vec::new();
        if !cfg.modules.is_empty() {
            let l = ext
                .as_ref()
                .ok_or_else(|| config_err("modules need the extension L"))?;
            let n = cfg.m as usize * weil.pv().deg().unwrap_or(0);
            if l.degree() != n {
                return Err(config_err(format!("[L : F_q] = {} but m deg pv = {n}", l.degree())));
            }
            for mc in &cfg.modules {
                if modules.iter().any(|(name, _)| name == &mc.name) {
                    return Err(config_err(format!("duplicate module name {}", mc.name)));
                }
                let coeffs = mc.phi_t.iter().map(|c| elem(l.field(), c)).collect::<Result<Vec<_>, _>>()?;
                let phi = DrinfeldModule::new(SkewPoly::new(l, coeffs))
                    .map_err(|e| config_err(format!("module {}: {e}", mc.name)))?;
                modules.push((mc.name.clone(), phi));
            }
        }
        Ok(Problem { field, weil, ext, modules })
    }
}
