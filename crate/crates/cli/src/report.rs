//! The analysis report and its two renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSummary {
    pub q: u32,
    pub pv: String,
    pub m: u32,
    pub weil_polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalDataReport {
    pub height: u32,
    pub etale_degree: u32,
    /// `(degree, multiplicity)` of the factors of `M mod pv`.
    pub residue_pattern: Vec<(usize, u32)>,
    pub supersingular: bool,
    pub v_splits_a2: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardFormReport {
    pub shift: String,
    pub b1: String,
    pub b2: String,
    pub g1: String,
    pub g2: String,
    pub g: String,
    pub c1: String,
    pub c2: String,
    pub disc_m0: String,
    pub disc_m0_factored: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderEntry {
    /// `(a,b,c)`.
    pub hnf: String,
    /// `O_max`, `A[pi]` or empty.
    pub label: String,
    pub is_closed: bool,
    pub contains_pi: bool,
    pub v_maximal: bool,
    pub is_endo_ring: bool,
    pub disc: String,
    pub conductor_norm: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntry {
    pub order: String,
    pub generators_in_end: [bool; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentificationEntry {
    pub module: String,
    pub phi_t: String,
    pub in_class: bool,
    pub class_verdict: String,
    /// HNF of `End(phi)`, absent when the module is not in the class.
    pub order: Option<String>,
    pub label: String,
    pub witnesses: Vec<WitnessEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub input: InputSummary,
    pub local_data: LocalDataReport,
    pub standard_form: StandardFormReport,
    pub delta: String,
    pub delta_factored: String,
    pub index: String,
    pub alpha2: String,
    pub beta2: String,
    pub frobenius_order: String,
    pub candidates_examined: usize,
    pub orders: Vec<OrderEntry>,
    pub identifications: Vec<IdentificationEntry>,
}

impl Report {
    /// Pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        let _ = writeln!(out, "A = F_{}[T], pv = {}, m = {}", i.q, i.pv, i.m);
        let _ = writeln!(out, "M(x) = {}", i.weil_polynomial);
        let l = &self.local_data;
        let pattern: Vec<String> = l.residue_pattern.iter().map(|(d, e)| format!("{d}^{e}")).collect();
        let _ = writeln!(
            out,
            "height {} (etale degree {}), M mod pv factors as [{}]{}",
            l.height,
            l.etale_degree,
            pattern.join(", "),
            if l.supersingular { ", supersingular" } else { "" }
        );
        let s = &self.standard_form;
        let _ = writeln!(out);
        let _ = writeln!(out, "pi~ = (pi + {}) / {}", s.shift, s.g);
        let _ = writeln!(out, "b1 = {}, b2 = {}", s.b1, s.b2);
        let _ = writeln!(out, "g1 = {}, g2 = {}, g = {}", s.g1, s.g2, s.g);
        let _ = writeln!(out, "M0(x) = x^3 + ({})x + ({})", s.c1, s.c2);
        let _ = writeln!(out, "disc(M0) = {} = {}", s.disc_m0_factored, s.disc_m0);
        let _ = writeln!(out, "Delta = {} = {}", self.delta_factored, self.delta);
        let _ = writeln!(out, "I = {}", self.index);
        let _ = writeln!(out, "beta2 = {}, alpha2 = {}", self.beta2, self.alpha2);
        let _ = writeln!(out, "w2 = ({} + ({})pi~ + pi~^2) / ({})", self.alpha2, self.beta2, self.index);
        let _ = writeln!(out, "A[pi] = {}", self.frobenius_order);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{} candidate orders examined, {} are endomorphism rings:",
            self.candidates_examined,
            self.orders.len()
        );
        let width = self.orders.iter().map(|o| o.hnf.len()).max().unwrap_or(0).max(9);
        let _ = writeln!(out, "  {:<width$}  {:<6}  {:<12}  disc(O)", "(a,b,c)", "label", "N(conductor)");
        for o in &self.orders {
            let _ = writeln!(
                out,
                "  {:<width$}  {:<6}  {:<12}  {}",
                o.hnf, o.label, o.conductor_norm, o.disc
            );
        }
        if !self.identifications.is_empty() {
            let _ = writeln!(out);
            for id in &self.identifications {
                let _ = writeln!(out, "{}: phi_T = {}", id.module, id.phi_t);
                match &id.order {
                    Some(o) => {
                        let _ = writeln!(out, "  End = {}{}", id.label, o);
                        for w in &id.witnesses {
                            let mark = |b: bool| if b { "in End" } else { "not in End" };
                            let _ = writeln!(
                                out,
                                "    {}: generators {}, {}",
                                w.order,
                                mark(w.generators_in_end[0]),
                                mark(w.generators_in_end[1])
                            );
                        }
                    }
                    None => {
                        let _ = writeln!(out, "  not in the isogeny class ({})", id.class_verdict);
                    }
                }
            }
        }
        out
    }
}
