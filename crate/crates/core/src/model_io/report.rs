//! Reports for the command front end, rendered either as human-readable
//! text or as JSON with a fixed field order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::classify::{ClassificationVerdict, HeightSpectrum};
use crate::exterior::GradedForm;
use crate::geometry::RankOrbitReport;
use crate::liealg::Covector;
use crate::poly::{Poly, PolyRing};
use crate::spinor::bundle::{BundleVerdict, FibreSample};
use crate::spinor::line::{DictionaryReport, LineCheck};
use crate::spinor::order::{AggregateOrder, CertificateReason, Nonvanishing, OrderCertificate};
use crate::spinor::verdict::{CheckStatus, CrossCheck};
use crate::spinor::BlowupChart;

use super::catalog::{CatalogEntry, Metadata};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Machine,
}

pub trait Render: Serialize {
    fn human(&self) -> String;
}

/// Deterministic text for a report: identical inputs give identical bytes.
pub fn emit_report<R: Render>(report: &R, format: OutputFormat) -> String {
    match format {
        OutputFormat::Human => report.human(),
        OutputFormat::Machine => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// A chart form printed with chart coordinate names.
pub fn chart_form_string(form: &GradedForm<Poly>, chart: &BlowupChart, ring: &PolyRing) -> String {
    let names = chart.chart_names(ring);
    let coeff = |p: &Poly| p.display_with(&names).to_string();
    let dnames: Vec<String> = names.iter().map(|n| format!("d{n}")).collect();
    form.display_named(&coeff, &dnames).to_string()
}

pub fn ambient_form_string(form: &GradedForm<Poly>, ring: &PolyRing) -> String {
    let coeff = |p: &Poly| p.display_with(ring.names()).to_string();
    let dnames: Vec<String> = ring.names().iter().map(|n| format!("d{n}")).collect();
    form.display_named(&coeff, &dnames).to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChartSummary {
    pub chart: usize,
    pub order: u32,
    pub leading: String,
    pub nonvanishing: Nonvanishing,
    pub transverse_like: bool,
}

impl ChartSummary {
    pub fn from_certificate(c: &OrderCertificate, ring: &PolyRing) -> Self {
        ChartSummary {
            chart: c.chart.chart_var() + 1,
            order: c.order,
            leading: chart_form_string(&c.leading, &c.chart, ring),
            nonvanishing: c.status.clone(),
            transverse_like: c.transverse_like,
        }
    }

    fn human_line(&self) -> String {
        let status = match &self.nonvanishing {
            Nonvanishing::Certified { certificate } => {
                let comp: Vec<String> = certificate.component.iter().map(|i| i.to_string()).collect();
                let comp = if comp.is_empty() { "degree 0".to_string() } else { format!("[{}]", comp.join(",")) };
                let reason = match &certificate.reason {
                    CertificateReason::NonzeroConstant(q) => format!("nonzero constant {q}"),
                    CertificateReason::Definite(s) => format!("{s} definite"),
                };
                format!("Certified ({reason} on component {comp})")
            }
            Nonvanishing::Falsified { point } => format!("Falsified at divisor point {point}"),
            Nonvanishing::Undetermined => "Undetermined".to_string(),
        };
        let mut s = format!(
            "  U_{}: order {}, leading form {}, {status}",
            self.chart, self.order, self.leading
        );
        if self.transverse_like {
            s.push_str(" [transverse-like]");
        }
        s
    }
}

fn aggregate_line(a: &AggregateOrder) -> String {
    match a {
        AggregateOrder::Constant { order } => format!("constant order {order}"),
        AggregateOrder::NonConstant { chart: Some(c), point: Some(p) } => {
            format!("non-constant (leading form vanishes in U_{c} at {p})")
        }
        AggregateOrder::NonConstant { .. } => "non-constant".to_string(),
        AggregateOrder::Inconclusive => "inconclusive".to_string(),
    }
}

fn checks_block(out: &mut String, checks: &[CrossCheck]) {
    out.push_str("cross-checks:\n");
    for c in checks {
        let tag = match c.status {
            CheckStatus::Agree => "ok",
            CheckStatus::Disagree => "DISAGREE",
            CheckStatus::Inconclusive => "inconclusive",
        };
        let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.detail);
    }
}

fn set_string<T: std::fmt::Display>(s: &BTreeSet<T>) -> String {
    let v: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DictionarySummary {
    pub samples: usize,
    pub violations: usize,
    pub observed_orders: BTreeSet<u32>,
    pub failures: Vec<LineCheck>,
}

impl From<&DictionaryReport> for DictionarySummary {
    fn from(r: &DictionaryReport) -> Self {
        DictionarySummary {
            samples: r.checks.len(),
            violations: r.violations,
            observed_orders: r.observed_orders.clone(),
            failures: r.checks.iter().filter(|c| !c.holds).cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankOrbitSummary {
    pub samples: usize,
    pub violations: Vec<Covector>,
    pub observed_heights: BTreeSet<usize>,
    pub observed_ranks: BTreeSet<usize>,
    pub status: String,
}

impl From<&RankOrbitReport> for RankOrbitSummary {
    fn from(r: &RankOrbitReport) -> Self {
        RankOrbitSummary {
            samples: r.rows.len(),
            violations: r.violations.clone(),
            observed_heights: r.observed_heights.clone(),
            observed_ranks: r.observed_ranks.clone(),
            status: r.status.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub name: String,
    pub dimension: usize,
    pub seed: u64,
    pub samples: usize,
    pub verdict: String,
    pub constant_height: Option<usize>,
    pub classification: ClassificationVerdict,
    pub spectrum: HeightSpectrum,
    pub charts: Vec<ChartSummary>,
    pub spinor_order: AggregateOrder,
    pub line_dictionary: DictionarySummary,
    pub rank_orbit: RankOrbitSummary,
    pub cross_checks: Vec<CrossCheck>,
    pub metadata: Metadata,
}

impl AnalysisReport {
    pub fn disagreements(&self) -> usize {
        self.cross_checks
            .iter()
            .filter(|c| c.status == CheckStatus::Disagree)
            .count()
    }
}

impl Render for AnalysisReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra: {} (dimension {})", self.name, self.dimension);
        let _ = writeln!(out, "seed: {}, samples: {}", self.seed, self.samples);
        match self.constant_height {
            Some(k) => {
                let _ = writeln!(out, "verdict: {} (constant height {k})", self.verdict);
            }
            None => {
                let _ = writeln!(out, "verdict: {}", self.verdict);
            }
        }
        let _ = writeln!(out, "classification: {}", self.classification.variant_name());
        if let Some(w) = self.classification.witnesses() {
            for wi in w {
                let _ = writeln!(out, "  witness {} has height {}", wi.covector, wi.height);
            }
        }
        let heights: BTreeSet<usize> = self.spectrum.heights.keys().copied().collect();
        let _ = writeln!(
            out,
            "height spectrum over {} covectors: {}",
            self.spectrum.samples,
            set_string(&heights)
        );
        out.push_str("spinor vanishing order per chart:\n");
        for c in &self.charts {
            out.push_str(&c.human_line());
            out.push('\n');
        }
        let _ = writeln!(out, "spinor order along the divisor: {}", aggregate_line(&self.spinor_order));
        let _ = writeln!(
            out,
            "line dictionary: {} samples, {} violations, orders {}",
            self.line_dictionary.samples,
            self.line_dictionary.violations,
            set_string(&self.line_dictionary.observed_orders)
        );
        let _ = writeln!(
            out,
            "rank/orbit checks: {} samples, {} violations, heights {}, D ranks {} ({})",
            self.rank_orbit.samples,
            self.rank_orbit.violations.len(),
            set_string(&self.rank_orbit.observed_heights),
            set_string(&self.rank_orbit.observed_ranks),
            self.rank_orbit.status
        );
        checks_block(&mut out, &self.cross_checks);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BundleReport {
    pub name: String,
    pub f: String,
    pub fibre_dim: usize,
    pub base_dim: usize,
    pub seed: u64,
    pub verdict: String,
    pub bundle_verdict: BundleVerdict,
    pub charts: Vec<ChartSummary>,
    pub spinor_order: AggregateOrder,
    pub fibres: Vec<FibreSample>,
    pub cross_checks: Vec<CrossCheck>,
}

impl BundleReport {
    pub fn disagreements(&self) -> usize {
        self.cross_checks
            .iter()
            .filter(|c| c.status == CheckStatus::Disagree)
            .count()
    }
}

impl Render for BundleReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "bundle: {} with f = {} (fibre dimension {}, base dimension {})",
            self.name, self.f, self.fibre_dim, self.base_dim
        );
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "verdict: {}", self.verdict);
        match &self.bundle_verdict {
            BundleVerdict::Lifts { order, poisson } => {
                let _ = writeln!(out, "  constant order {order}, Poisson: {poisson}");
            }
            BundleVerdict::DoesNotLiftFibre { base_point, witnesses } => {
                let _ = writeln!(out, "  fibre over {base_point} has non-constant height:");
                for w in witnesses {
                    let _ = writeln!(out, "    witness {} has height {}", w.covector, w.height);
                }
            }
            BundleVerdict::DoesNotLiftAcrossFibres { fibres } => {
                for f in fibres {
                    let _ = writeln!(
                        out,
                        "  fibre over {} is {} with height {}",
                        f.base_point,
                        f.classification,
                        f.height.map_or("-".to_string(), |h| h.to_string())
                    );
                }
            }
        }
        out.push_str("spinor vanishing order per chart (zero section):\n");
        for c in &self.charts {
            out.push_str(&c.human_line());
            out.push('\n');
        }
        let _ = writeln!(out, "spinor order along the divisor: {}", aggregate_line(&self.spinor_order));
        let _ = writeln!(out, "fibres sampled: {}", self.fibres.len());
        checks_block(&mut out, &self.cross_checks);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinorChart {
    pub chart: usize,
    pub pullback: String,
    pub certificate: ChartSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinorReport {
    pub name: String,
    pub spinor: String,
    pub charts: Vec<SpinorChart>,
    /// Present when every chart was computed.
    pub spinor_order: Option<AggregateOrder>,
}

impl Render for SpinorReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: phi = {}", self.name, self.spinor);
        for c in &self.charts {
            let _ = writeln!(out, "chart U_{}:", c.chart);
            let _ = writeln!(out, "  p*phi = {}", c.pullback);
            out.push_str(&c.certificate.human_line());
            out.push('\n');
        }
        if let Some(a) = &self.spinor_order {
            let _ = writeln!(out, "order along the divisor: {}", aggregate_line(a));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub name: String,
    pub seed: u64,
    pub samples: usize,
    pub line_dictionary: DictionaryReport,
    pub rank_orbit: RankOrbitReport,
    pub constancy: String,
}

impl CrosscheckReport {
    pub fn violations(&self) -> usize {
        self.line_dictionary.violations + self.rank_orbit.violations.len()
    }
}

impl Render for CrosscheckReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algebra: {}, seed {}, samples {}", self.name, self.seed, self.samples);
        out.push_str("line dictionary (order = dim - 1 - height):\n");
        let _ = writeln!(out, "  {:<28} {:>5} {:>6} {:>6} {:>8}  ok", "covector", "chart", "order", "height", "expected");
        for c in &self.line_dictionary.checks {
            let _ = writeln!(
                out,
                "  {:<28} {:>5} {:>6} {:>6} {:>8}  {}",
                c.covector.to_string(),
                c.chart,
                c.order,
                c.height,
                c.expected,
                if c.holds { "yes" } else { "NO" }
            );
        }
        out.push_str("rank and orbit relations:\n");
        let _ = writeln!(
            out,
            "  {:<28} {:>6} {:>6} {:>4} {:>5} {:>5} {:>6}  ok",
            "point", "rank D", "height", "type", "class", "orbit", "radial"
        );
        for r in &self.rank_orbit.rows {
            let _ = writeln!(
                out,
                "  {:<28} {:>6} {:>6} {:>4} {:>5} {:>5} {:>6}  {}",
                r.point.to_string(),
                r.rank_d,
                r.height,
                r.element_type.code(),
                r.cartan_class,
                r.orbit_dim,
                r.radial_in_orbit,
                if r.ok() { "yes" } else { "NO" }
            );
        }
        let _ = writeln!(
            out,
            "summary: {} line violations, {} rank/orbit violations; {}",
            self.line_dictionary.violations,
            self.rank_orbit.violations.len(),
            self.constancy
        );
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<CatalogEntry>,
}

impl Render for CatalogReport {
    fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<20} {:>4}  {:<7} {:<18} {:>6}  note", "name", "dim", "kind", "expected", "height");
        for e in &self.entries {
            let _ = writeln!(
                out,
                "{:<20} {:>4}  {:<7} {:<18} {:>6}  {}",
                e.name,
                e.dimension,
                e.kind,
                e.metadata.expected_verdict.as_deref().unwrap_or("-"),
                e.metadata
                    .expected_height
                    .map_or("-".to_string(), |h| h.to_string()),
                e.metadata.note.as_deref().unwrap_or("")
            );
        }
        out
    }
}
