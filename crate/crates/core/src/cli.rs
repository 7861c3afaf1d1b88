//! Command front end. `run` parses arguments, executes a subcommand and
//! returns the exit code together with everything that would be printed,
//! so the binary stays a thin wrapper and tests can drive it directly.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 Jacobi violation,
//! 3 internal disagreement between independent checks, 64 usage error.

use std::collections::BTreeSet;
use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::{sample_height_spectrum, DEFAULT_SEED};
use crate::error::{Error, Result};
use crate::geometry::rank_orbit_crosscheck;
use crate::liealg::LieAlgebra;
use crate::model_io::catalog::{self, CatalogItem, Metadata};
use crate::model_io::document::parse_algebra;
use crate::model_io::report::{
    ambient_form_string, chart_form_string, emit_report, AnalysisReport, BundleReport, CatalogReport,
    ChartSummary, CrosscheckReport, DictionarySummary, OutputFormat, RankOrbitSummary, SpinorChart,
    SpinorReport,
};
use crate::poly::PolyRing;
use crate::spinor::bundle::{analyze_bundle, LieBundle};
use crate::spinor::line::dictionary_suite;
use crate::spinor::order::{aggregate, chart_certificates};
use crate::spinor::verdict::{lift_verdict_with, CheckStatus, CrossCheck, VerdictConfig};
use crate::spinor::{blowup_pullback, linear_poisson, spinor, volume, BlowupChart};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_JACOBI: i32 = 2;
pub const EXIT_DISAGREEMENT: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

pub const SEED_ENV: &str = "BLOWUPLAB_SEED";
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "blowuplab",
    version,
    about = "Lifts of linear Poisson structures through the blowup at the origin"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify an algebra or bundle and report whether its Poisson structure lifts.
    Analyze(AnalyzeArgs),
    /// Print the pulled-back spinor and its vanishing order in each chart.
    Spinor(SpinorArgs),
    /// Tabulate the line-restriction and rank/orbit identities over sampled covectors.
    Crosscheck(CrosscheckArgs),
    /// List the built-in algebras and bundles.
    Catalog(CatalogArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Machine,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Human => OutputFormat::Human,
            Format::Machine => OutputFormat::Machine,
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in entry, e.g. so3, sl2, heis3, abelian4, diagonal_affine(2), scaled_so3_bundle.
    #[arg(long)]
    catalog: Option<String>,
    /// Algebra document (TOML).
    #[arg(long)]
    input: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
struct Common {
    /// RNG seed; defaults to $BLOWUPLAB_SEED, then 1729.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Scaling function for scaled_so3_bundle, a polynomial in y1, y2.
    #[arg(long = "f", value_name = "POLY")]
    f: Option<String>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
    /// Random covectors drawn by the sampling checks.
    #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = positive)]
    samples: usize,
}

#[derive(Debug, Args)]
struct SpinorArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
    /// Restrict to one chart (1-based).
    #[arg(long)]
    chart: Option<usize>,
}

#[derive(Debug, Args)]
struct CrosscheckArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = DEFAULT_SAMPLES, value_parser = positive)]
    samples: usize,
}

#[derive(Debug, Args)]
struct CatalogArgs {
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// dim=N, name=TEXT, kind=algebra|bundle or verdict=NAME; repeatable.
    #[arg(long)]
    filter: Vec<String>,
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout, stderr: String::new() }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::IndexRange(..) | Error::Io(..) => EXIT_PARSE,
        Error::Jacobi(_) | Error::NotAntisymmetric { .. } => EXIT_JACOBI,
        Error::InvariantViolation(_) | Error::Internal(_) | Error::WitnessNotFound { .. } => EXIT_DISAGREEMENT,
        Error::Usage(_) | Error::Domain(_) | Error::DimensionMismatch { .. } => EXIT_USAGE,
    }
}

/// Runs with the seed default taken from the process environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_env(args, std::env::var(SEED_ENV).ok())
}

/// `env_seed` stands in for `$BLOWUPLAB_SEED`; an explicit `--seed` wins.
pub fn run_with_env<I, T>(args: I, env_seed: Option<String>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    match execute(cli, env_seed) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn execute(cli: Cli, env_seed: Option<String>) -> Result<Outcome> {
    match cli.command {
        Command::Analyze(a) => {
            let seed = resolve_seed(a.common.seed, env_seed)?;
            let (item, metadata) = load(&a.source, a.common.f.as_deref())?;
            let format = a.common.format.into();
            match item {
                CatalogItem::Algebra(l) => {
                    let r = analyze_algebra(&l, metadata, seed, a.samples)?;
                    Ok(finish(emit_report(&r, format), r.disagreements()))
                }
                CatalogItem::Bundle(b) => {
                    let r = analyze_bundle_report(&b, a.common.f.as_deref().unwrap_or("1"), seed)?;
                    Ok(finish(emit_report(&r, format), r.disagreements()))
                }
            }
        }
        Command::Spinor(a) => {
            let seed = resolve_seed(a.common.seed, env_seed)?;
            let (item, _) = load(&a.source, a.common.f.as_deref())?;
            let r = spinor_report(&item, a.chart, seed)?;
            Ok(Outcome::ok(emit_report(&r, a.common.format.into())))
        }
        Command::Crosscheck(a) => {
            let seed = resolve_seed(a.common.seed, env_seed)?;
            let (item, _) = load(&a.source, a.common.f.as_deref())?;
            let CatalogItem::Algebra(l) = item else {
                return Err(Error::Usage("crosscheck expects a Lie algebra, not a bundle".into()));
            };
            let r = crosscheck_report(&l, seed, a.samples)?;
            Ok(finish(emit_report(&r, a.common.format.into()), r.violations()))
        }
        Command::Catalog(a) => {
            let r = catalog_report(&a.filter)?;
            Ok(Outcome::ok(emit_report(&r, a.format.into())))
        }
    }
}

fn finish(stdout: String, disagreements: usize) -> Outcome {
    if disagreements == 0 {
        Outcome::ok(stdout)
    } else {
        Outcome {
            code: EXIT_DISAGREEMENT,
            stdout,
            stderr: format!("error: {disagreements} independent check(s) disagree\n"),
        }
    }
}

pub fn resolve_seed(flag: Option<u64>, env_seed: Option<String>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match env_seed {
        None => Ok(DEFAULT_SEED),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{SEED_ENV} must be an unsigned integer, got '{s}'"))),
    }
}

fn load(source: &Source, f: Option<&str>) -> Result<(CatalogItem, Metadata)> {
    if let Some(name) = &source.catalog {
        let item = catalog::resolve(name, f)?;
        return Ok((item, catalog::metadata_for(name)));
    }
    let path = source.input.as_ref().ok_or_else(|| Error::Usage("no input given".into()))?;
    if f.is_some() {
        return Err(Error::Usage("--f only applies to scaled_so3_bundle".into()));
    }
    let text = std::fs::read_to_string(path).map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    let loaded = parse_algebra(&text)?;
    Ok((CatalogItem::Algebra(loaded.algebra), loaded.metadata))
}

fn display_name(l: &LieAlgebra) -> String {
    l.name().unwrap_or("unnamed").to_string()
}

/// Full analysis of one algebra: verdict, chart certificates, spectrum
/// sampling and the pointwise identities, with every independent
/// comparison recorded as a cross-check.
pub fn analyze_algebra(l: &LieAlgebra, metadata: Metadata, seed: u64, samples: usize) -> Result<AnalysisReport> {
    let verdict = lift_verdict_with(l, &VerdictConfig::with_seed(seed))?;
    let ring = PolyRing::new((1..=l.dim()).map(|i| format!("x{i}")).collect());
    let spectrum = sample_height_spectrum(l, samples, seed)?;
    let dictionary = dictionary_suite(l, samples, seed)?;
    let rank_orbit = rank_orbit_crosscheck(l, samples, seed)?;
    let constant = verdict.classification.constant_height();

    let mut checks = verdict.cross_checks.clone();
    let heights: BTreeSet<usize> = spectrum.heights.keys().copied().collect();
    checks.push(match constant {
        Some(k) => CrossCheck::agreement(
            "height spectrum",
            heights == BTreeSet::from([k]),
            format!("sampled heights {heights:?}, classification says {k}"),
        ),
        None if heights.len() > 1 => {
            CrossCheck::new("height spectrum", CheckStatus::Agree, format!("sampled heights {heights:?}"))
        }
        None => CrossCheck::new(
            "height spectrum",
            CheckStatus::Inconclusive,
            format!("sampling saw only {heights:?}"),
        ),
    });
    checks.push(CrossCheck::agreement(
        "line dictionary",
        dictionary.violations == 0,
        format!("{} of {} lines violate order = dim - 1 - height", dictionary.violations, dictionary.checks.len()),
    ));
    checks.push(CrossCheck::agreement(
        "rank and orbit identities",
        rank_orbit.pointwise_consistent(),
        format!("{} of {} points violate", rank_orbit.violations.len(), rank_orbit.rows.len()),
    ));
    if let Some(k) = constant {
        let ranks = BTreeSet::from([2 * k]);
        checks.push(CrossCheck::agreement(
            "rank of D",
            rank_orbit.observed_ranks == ranks,
            format!("observed ranks {:?}, expected {{{}}}", rank_orbit.observed_ranks, 2 * k),
        ));
    }
    if let Some(expected) = &metadata.expected_verdict {
        checks.push(CrossCheck::agreement(
            "catalog expectation",
            expected == verdict.kind.name(),
            format!("expected {expected}, got {}", verdict.kind.name()),
        ));
    }
    if let (Some(h), Some(k)) = (metadata.expected_height, constant) {
        checks.push(CrossCheck::agreement(
            "catalog height",
            h == k,
            format!("expected {h}, got {k}"),
        ));
    }

    Ok(AnalysisReport {
        name: display_name(l),
        dimension: l.dim(),
        seed,
        samples,
        verdict: verdict.kind.name().to_string(),
        constant_height: constant,
        classification: verdict.classification.clone(),
        spectrum,
        charts: verdict
            .charts
            .iter()
            .map(|c| ChartSummary::from_certificate(c, &ring))
            .collect(),
        spinor_order: verdict.aggregate.clone(),
        line_dictionary: DictionarySummary::from(&dictionary),
        rank_orbit: RankOrbitSummary::from(&rank_orbit),
        cross_checks: checks,
        metadata,
    })
}

pub fn analyze_bundle_report(b: &LieBundle, f: &str, seed: u64) -> Result<BundleReport> {
    let a = analyze_bundle(b, &VerdictConfig::with_seed(seed))?;
    let ring = b.ring();
    Ok(BundleReport {
        name: b.name().unwrap_or("bundle").to_string(),
        f: f.to_string(),
        fibre_dim: b.fibre_dim(),
        base_dim: b.base_dim(),
        seed,
        verdict: a.verdict.name().to_string(),
        bundle_verdict: a.verdict.clone(),
        charts: a.charts.iter().map(|c| ChartSummary::from_certificate(c, &ring)).collect(),
        spinor_order: a.aggregate.clone(),
        fibres: a.fibres.clone(),
        cross_checks: a.cross_checks.clone(),
    })
}

pub fn spinor_report(item: &CatalogItem, chart: Option<usize>, seed: u64) -> Result<SpinorReport> {
    let (name, ring, phi, charts) = match item {
        CatalogItem::Algebra(l) => {
            let m = l.dim();
            let ring = PolyRing::new((1..=m).map(|i| format!("x{i}")).collect());
            let phi = spinor(&linear_poisson(l)?, &volume(m))?;
            let normal: Vec<usize> = (0..m).collect();
            (display_name(l), ring, phi, BlowupChart::all(m, &normal)?)
        }
        CatalogItem::Bundle(b) => (
            b.name().unwrap_or("bundle").to_string(),
            b.ring(),
            b.spinor()?,
            b.zero_section_charts()?,
        ),
    };
    let selected: Vec<BlowupChart> = match chart {
        None => charts,
        Some(c) => {
            if c == 0 || c > charts.len() {
                return Err(Error::Usage(format!("--chart must be between 1 and {}", charts.len())));
            }
            vec![charts[c - 1].clone()]
        }
    };
    let search = VerdictConfig::with_seed(seed).search;
    let certs = chart_certificates(&phi, &selected, &search)?;
    let mut out = Vec::new();
    for (ch, cert) in selected.iter().zip(&certs) {
        let pulled = blowup_pullback(&phi, ch)?;
        out.push(SpinorChart {
            chart: ch.chart_var() + 1,
            pullback: chart_form_string(&pulled.form, ch, &ring),
            certificate: ChartSummary::from_certificate(cert, &ring),
        });
    }
    Ok(SpinorReport {
        name,
        spinor: ambient_form_string(&phi, &ring),
        charts: out,
        spinor_order: chart.is_none().then(|| aggregate(&certs)),
    })
}

pub fn crosscheck_report(l: &LieAlgebra, seed: u64, samples: usize) -> Result<CrosscheckReport> {
    let dictionary = dictionary_suite(l, samples, seed)?;
    let rank_orbit = rank_orbit_crosscheck(l, samples, seed)?;
    let constancy = rank_orbit.status.clone();
    Ok(CrosscheckReport {
        name: display_name(l),
        seed,
        samples,
        line_dictionary: dictionary,
        rank_orbit,
        constancy,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Filter {
    Dim(usize),
    Name(String),
    Kind(String),
    Verdict(String),
}

fn parse_filter(s: &str) -> Result<Filter> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| Error::Usage(format!("filter '{s}' is not key=value")))?;
    let value = value.trim();
    match key.trim() {
        "dim" | "dimension" => value
            .parse()
            .map(Filter::Dim)
            .map_err(|_| Error::Usage(format!("dim filter needs an integer, got '{value}'"))),
        "name" => Ok(Filter::Name(value.to_string())),
        "kind" => Ok(Filter::Kind(value.to_string())),
        "verdict" => Ok(Filter::Verdict(value.to_string())),
        other => Err(Error::Usage(format!("unknown filter key '{other}'"))),
    }
}

pub fn catalog_report(filters: &[String]) -> Result<CatalogReport> {
    let filters = filters.iter().map(|s| parse_filter(s)).collect::<Result<Vec<_>>>()?;
    let entries = catalog::entries()
        .into_iter()
        .filter(|e| {
            filters.iter().all(|f| match f {
                Filter::Dim(n) => e.dimension == *n,
                Filter::Name(s) => e.name.contains(s.as_str()),
                Filter::Kind(k) => e.kind.eq_ignore_ascii_case(k),
                Filter::Verdict(v) => e
                    .metadata
                    .expected_verdict
                    .as_deref()
                    .is_some_and(|x| x.eq_ignore_ascii_case(v)),
            })
        })
        .collect();
    Ok(CatalogReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        let mut v = vec!["blowuplab"];
        v.extend_from_slice(args);
        run_with_env(v, None)
    }

    #[test]
    fn help_and_version_exit_zero() {
        assert_eq!(run_args(&["--help"]).code, 0);
        assert_eq!(run_args(&["--version"]).code, 0);
    }

    #[test]
    fn usage_errors_exit_64() {
        assert_eq!(run_args(&["analyze"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["analyze", "--catalog", "so3", "--samples", "0"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["analyze", "--catalog", "nope"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["catalog", "--filter", "colour=red"]).code, EXIT_USAGE);
        assert_eq!(run_args(&["spinor", "--catalog", "so3", "--chart", "4"]).code, EXIT_USAGE);
    }

    #[test]
    fn seed_precedence() {
        assert_eq!(resolve_seed(None, None).unwrap(), 1729);
        assert_eq!(resolve_seed(None, Some("7".into())).unwrap(), 7);
        assert_eq!(resolve_seed(Some(3), Some("7".into())).unwrap(), 3);
        assert!(resolve_seed(None, Some("x".into())).is_err());
    }

    #[test]
    fn so3_analysis_is_dirac_only() {
        let o = run_args(&["analyze", "--catalog", "so3", "--samples", "20"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.contains("LiftsAsDiracOnly"));
    }

    #[test]
    fn filters_select_entries() {
        let r = catalog_report(&["dim=3".into()]).unwrap();
        assert!(r.entries.iter().all(|e| e.dimension == 3));
        assert!(r.entries.iter().any(|e| e.name == "so3"));
        let r = catalog_report(&["verdict=DoesNotLift".into()]).unwrap();
        let names: Vec<_> = r.entries.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["sl2", "heis3"]);
    }
}
