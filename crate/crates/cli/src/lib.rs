//! Command-line front end: reads a JSON problem description, runs the
//! pipeline stage by stage and renders a [`Report`].

pub mod config;
pub mod report;

use drinfeld_endo::cubic::{
    field_discriminant, index, integral_basis, maximal_order, standard_form, validate_weil_necessary,
    MaximalOrderData,
};
use drinfeld_endo::factor::factor;
use drinfeld_endo::order::{mult_table, Analysis, OrderHnf};
use drinfeld_endo::prelude::{DrinfeldModule, Poly, WeilCubic, DEFAULT_CANDIDATE_BOUND};
use drinfeld_endo::skew::{class_check, identify_endo_ring, ClassVerdict};
use drinfeld_endo::Error;
use thiserror::Error as ThisError;

pub use config::{OutputFormat, Problem, ProblemConfig};
pub use report::Report;

/// Environment variable that overrides the configured candidate bound.
pub const BOUND_ENV: &str = "DRINFELD_ENDO_CANDIDATE_BOUND";

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("config: no module named {0:?}")]
    UnknownModule(String),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::UnknownModule(_) => 2,
            CliError::Stage { source, .. } => match source {
                Error::Reducible(_)
                | Error::NotWeilAtV(_)
                | Error::BadConstantTerm
                | Error::UnsupportedCharacteristic(_) => 3,
                Error::CandidateBound { .. } => 5,
                _ => 4,
            },
        }
    }
}

fn stage(stage: &'static str) -> impl FnOnce(Error) -> CliError {
    move |source| CliError::Stage { stage, source }
}

/// `M(x)` written out with `x` as the variable.
pub fn weil_polynomial_string(w: &WeilCubic) -> String {
    let mut terms = vec!["x^3".to_string()];
    for (c, mono) in [(w.a1(), "x^2"), (w.a2(), "x"), (&w.a0(), "")] {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        terms.push(match (mono, s.contains(' ')) {
            ("", _) => s,
            (_, true) => format!("({s})*{mono}"),
            _ if s == "1" => mono.to_string(),
            _ => format!("{s}*{mono}"),
        });
    }
    terms.join(" + ")
}

/// `unit (f1)^e1 (f2)^e2 ...`, with the unit omitted when it is 1.
pub fn factored(p: &Poly) -> Result<String, CliError> {
    if p.is_one() {
        return Ok("1".into());
    }
    let fac = factor(p).map_err(stage("report"))?;
    let mut parts = Vec::new();
    if fac.unit != p.field().one() {
        parts.push(p.field().fmt_elem(fac.unit));
    }
    for (f, e) in &fac.factors {
        parts.push(if *e == 1 { format!("({f})") } else { format!("({f})^{e}") });
    }
    Ok(parts.join(" "))
}

/// Runs every stage up to the multiplication table.
pub fn analyze_class(w: &WeilCubic) -> Result<Analysis, CliError> {
    let local = validate_weil_necessary(w).map_err(stage("validate"))?;
    let standard = standard_form(w).map_err(stage("standard_form"))?;
    let disc = field_discriminant(&standard).map_err(stage("discriminant"))?;
    let idx = index(&standard, &disc.delta).map_err(stage("index"))?;
    let (alpha2, beta2) = integral_basis(&standard, &idx).map_err(stage("integral_basis"))?;
    let maximal = MaximalOrderData {
        delta: disc.delta,
        delta_unit: disc.unit,
        index: idx,
        alpha2,
        beta2,
        disc_m0: disc.disc_m0,
    };
    // the combined routine repeats the I^2 Delta = disc(M0) consistency check
    let again = maximal_order(&standard).map_err(stage("index"))?;
    if again != maximal {
        return Err(stage("integral_basis")(Error::Inconsistent("stage results disagree".into())));
    }
    let mult = mult_table(&standard, &maximal.index, &maximal.alpha2, &maximal.beta2).map_err(stage("mult_table"))?;
    Ok(Analysis { weil: w.clone(), local, standard, maximal, mult })
}

/// Flag, then environment, then config, then the default.
pub fn resolve_bound(flag: Option<u128>, env: Option<&str>, cfg: &ProblemConfig) -> Result<u128, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    if let Some(v) = env {
        return v
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("{BOUND_ENV}={v:?} is not a nonnegative integer")));
    }
    Ok(cfg.options.candidate_bound.unwrap_or(DEFAULT_CANDIDATE_BOUND))
}

fn label(o: &OrderHnf, an: &Analysis) -> &'static str {
    if o.is_maximal() {
        "O_max"
    } else if *o == an.frobenius_order() {
        "A[pi]"
    } else {
        ""
    }
}

fn identify(
    name: &str,
    m: &DrinfeldModule,
    orders: &[OrderHnf],
    an: &Analysis,
) -> Result<report::IdentificationEntry, CliError> {
    let verdict = class_check(m, &an.weil);
    let mut entry = report::IdentificationEntry {
        module: name.to_string(),
        phi_t: m.phi_t().to_string(),
        in_class: verdict == ClassVerdict::InClass,
        class_verdict: verdict.describe().to_string(),
        order: None,
        label: String::new(),
        witnesses: Vec::new(),
    };
    if verdict != ClassVerdict::InClass {
        return Ok(entry);
    }
    let id = identify_endo_ring(m, orders, an).map_err(stage("identify"))?;
    entry.label = label(&id.order, an).to_string();
    entry.order = Some(id.order.to_string());
    entry.witnesses = id
        .verdicts
        .iter()
        .map(|v| report::WitnessEntry { order: v.order.to_string(), generators_in_end: v.generators_in_end })
        .collect();
    Ok(entry)
}

/// The full report for a problem.
pub fn run_analysis(problem: &Problem, bound: u128) -> Result<Report, CliError> {
    let an = analyze_class(&problem.weil)?;
    let candidates = an.candidates(bound).map_err(stage("enumerate"))?;
    let examined = candidates.len();
    let rings: Vec<_> = candidates.into_iter().filter(|r| r.is_endo_ring).collect();
    if !rings.iter().any(|r| r.order.is_maximal()) {
        return Err(stage("enumerate")(Error::Inconsistent("the maximal order did not qualify".into())));
    }
    let orders: Vec<OrderHnf> = rings.iter().map(|r| r.order.clone()).collect();
    let identifications = problem
        .modules
        .iter()
        .map(|(name, m)| identify(name, m, &orders, &an))
        .collect::<Result<Vec<_>, _>>()?;
    let w = &problem.weil;
    let sf = &an.standard;
    let show = |p: &Poly| p.to_string();
    Ok(Report {
        input: report::InputSummary {
            q: problem.field.order(),
            pv: show(w.pv()),
            m: w.m(),
            weil_polynomial: weil_polynomial_string(w),
        },
        local_data: report::LocalDataReport {
            height: an.local.height,
            etale_degree: an.local.etale_degree,
            residue_pattern: an.local.residue_pattern.clone(),
            supersingular: an.local.supersingular,
            v_splits_a2: an.local.v_splits_a2,
        },
        standard_form: report::StandardFormReport {
            shift: show(&sf.shift),
            b1: show(&sf.b1),
            b2: show(&sf.b2),
            g1: show(&sf.g1),
            g2: show(&sf.g2),
            g: show(&sf.g),
            c1: show(&sf.c1),
            c2: show(&sf.c2),
            disc_m0: show(&sf.disc_m0()),
            disc_m0_factored: factored(&sf.disc_m0())?,
        },
        delta: show(&an.maximal.delta),
        delta_factored: factored(&an.maximal.delta)?,
        index: show(&an.maximal.index),
        alpha2: show(&an.maximal.alpha2),
        beta2: show(&an.maximal.beta2),
        frobenius_order: an.frobenius_order().to_string(),
        candidates_examined: examined,
        orders: rings
            .iter()
            .map(|r| report::OrderEntry {
                hnf: r.order.to_string(),
                label: label(&r.order, &an).to_string(),
                is_closed: r.is_closed,
                contains_pi: r.contains_pi,
                v_maximal: r.v_maximal,
                is_endo_ring: r.is_endo_ring,
                disc: show(&r.disc),
                conductor_norm: show(&r.conductor_norm),
            })
            .collect(),
        identifications,
    })
}

/// One-line verdict for a named module.
pub fn check_module(problem: &Problem, name: &str, bound: u128) -> Result<String, CliError> {
    let (_, m) = problem
        .modules
        .iter()
        .find(|(n, _)| n == name)
        .ok_or_else(|| CliError::UnknownModule(name.to_string()))?;
    let verdict = class_check(m, &problem.weil);
    if verdict != ClassVerdict::InClass {
        return Ok(format!("in class: no ({})", verdict.describe()));
    }
    let an = analyze_class(&problem.weil)?;
    let orders: Vec<OrderHnf> = an
        .endo_rings(bound)
        .map_err(stage("enumerate"))?
        .into_iter()
        .map(|r| r.order)
        .collect();
    let entry = identify(name, m, &orders, &an)?;
    Ok(format!("in class: yes; End = {}{}", entry.label, entry.order.unwrap_or_default()))
}
