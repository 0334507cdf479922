//! Command-line driver. Exit codes: 0 success, 1 runtime failure, 2 bad
//! flags or config, 3 when a run whose hypotheses all hold fails the
//! monotone-decay assertion.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use specmeans::hypotheses::{Target, TheoremId};
use specmeans::spaces::{besov_norm_lp_traced, besov_norm_modulus_traced, build_partition, classical_besov_traced};
use specmeans::{BesovParams, CompactDistribution, GridSpec, MultiplierPlan, NormSpec};

use crate::config::{ExperimentConfig, ExperimentKind, NormRoute, OutputFormat};
use crate::error::{HarnessError, HarnessResult};
use crate::experiments::{run_conditions, run_convergence_distribution, run_convergence_function, run_equivalence};
use crate::output;
use crate::signals::make_signal;

#[derive(Parser, Debug)]
#[command(name = "specmeans", version, about = "Spectral-mean convergence experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sweep t for a function signal and report the error per t.
    Converge(Overrides),
    /// Sweep t for a compactly supported distribution.
    ConvergeDist {
        #[command(flatten)]
        common: Overrides,
        /// Distribution as JSON, or `@path` to a JSON file.
        #[arg(long)]
        distribution: Option<String>,
    },
    /// Compare Besov norm routes on a random band-limited corpus.
    Equivalence {
        #[command(flatten)]
        common: Overrides,
        #[arg(long)]
        corpus: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Evaluate the hypothesis checks and print a JSON report.
    Conditions {
        #[command(flatten)]
        common: Overrides,
        /// Space dimension.
        #[arg(long = "N")]
        dim: Option<usize>,
        /// Degree of the radial symbol `|y|^m`.
        #[arg(long)]
        m: Option<f64>,
    },
    /// Evaluate one norm of a signal.
    Norm {
        #[command(flatten)]
        common: Overrides,
        /// Norm in text form, e.g. `besov:0.7:2:2`.
        #[arg(long)]
        space: String,
        /// Route for Besov norms: lp, modulus or classical.
        #[arg(long)]
        via: Option<String>,
    },
    /// Apply `p(tA)` to a signal and print the samples.
    Apply {
        #[command(flatten)]
        common: Overrides,
        #[arg(long)]
        t: f64,
    },
}

#[derive(Args, Debug, Default)]
struct Overrides {
    /// JSON experiment configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    ratio: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// `N:n:L`, e.g. `1:256:2pi`.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<GridSpec>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    p: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    q: Option<f64>,
    #[arg(long, value_parser = parse_exponent)]
    p0: Option<f64>,
    #[arg(long)]
    alpha0: Option<f64>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    tau: Option<f64>,
    /// gaussian, unit, riesz:s or cutoff:tau.
    #[arg(long)]
    mean: Option<String>,
    /// laplacian, radial:m or quartic.
    #[arg(long)]
    symbol: Option<String>,
    /// bump, truncated_cone, random_bandlimited:seed:band or fractional:gamma.
    #[arg(long)]
    signal: Option<String>,
    /// T1 or T2.
    #[arg(long)]
    theorem: Option<String>,
    /// liouville, besov or distribution.
    #[arg(long)]
    target: Option<String>,
    /// Besov route for converge runs: lp, modulus or classical.
    #[arg(long)]
    route: Option<String>,
    /// Radius of the set M the error is measured on.
    #[arg(long)]
    window: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = ["csv", "json"])]
    format: Option<String>,
}

fn parse_exponent(s: &str) -> Result<f64, String> {
    match s {
        "inf" | "infinity" => Ok(f64::INFINITY),
        _ => s.parse().map_err(|_| format!("bad exponent {s:?}")),
    }
}

fn parse_length(s: &str) -> Result<f64, String> {
    if let Some(k) = s.strip_suffix("pi") {
        let k: f64 = if k.is_empty() { 1.0 } else { k.parse().map_err(|_| format!("bad length {s:?}"))? };
        return Ok(k * std::f64::consts::PI);
    }
    s.parse().map_err(|_| format!("bad length {s:?}"))
}

fn parse_grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid must be N:n:L, got {s:?}"));
    }
    let dim = parts[0].parse().map_err(|_| format!("bad N in {s:?}"))?;
    let n = parts[1].parse().map_err(|_| format!("bad n in {s:?}"))?;
    GridSpec::new(dim, n, parse_length(parts[2])?).map_err(|e| e.to_string())
}

fn parse_theorem(s: &str) -> HarnessResult<TheoremId> {
    match s {
        "T1" | "t1" => Ok(TheoremId::T1),
        "T2" | "t2" => Ok(TheoremId::T2),
        _ => Err(HarnessError::config(format!("unknown theorem {s:?}"))),
    }
}

fn parse_target(s: &str) -> HarnessResult<Target> {
    serde_json::from_value(serde_json::Value::String(s.into()))
        .map_err(|_| HarnessError::config(format!("unknown target {s:?}")))
}

impl Overrides {
    fn load(&self, kind: ExperimentKind) -> HarnessResult<ExperimentConfig> {
        let mut c = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| HarnessError::config(format!("cannot read {}: {e}", path.display())))?;
                ExperimentConfig::from_json(&text)?
            }
            None => ExperimentConfig {
                kind,
                ..ExperimentConfig::default()
            },
        };
        if let Some(v) = self.t0 {
            c.schedule.t0 = v;
        }
        if let Some(v) = self.ratio {
            c.schedule.ratio = v;
        }
        if let Some(v) = self.steps {
            c.schedule.steps = v;
        }
        if let Some(v) = self.grid {
            c.grid = v;
        }
        let sp = &mut c.space;
        if let Some(v) = self.alpha {
            sp.alpha = v;
        }
        if let Some(v) = self.beta {
            sp.beta = v;
        }
        if let Some(v) = self.p {
            sp.p = v;
        }
        if let Some(v) = self.q {
            sp.q = v;
        }
        if self.p0.is_some() {
            sp.p0 = self.p0;
        }
        if self.alpha0.is_some() {
            sp.alpha0 = self.alpha0;
        }
        if self.l.is_some() {
            sp.l = self.l;
        }
        if self.tau.is_some() {
            sp.tau = self.tau;
        }
        if let Some(v) = &self.target {
            sp.target = parse_target(v)?;
        }
        if let Some(v) = &self.route {
            sp.route = v.parse()?;
        }
        if let Some(v) = &self.mean {
            c.mean = v.clone();
        }
        if let Some(v) = &self.symbol {
            c.symbol = v.clone();
        }
        if let Some(v) = &self.signal {
            c.signal = v.parse()?;
        }
        if let Some(v) = &self.theorem {
            c.theorem = parse_theorem(v)?;
        }
        if self.window.is_some() {
            c.window_radius = self.window;
        }
        if self.out.is_some() {
            c.out = self.out.clone();
        }
        if let Some(v) = &self.format {
            c.format = if v == "json" { OutputFormat::Json } else { OutputFormat::Csv };
        }
        Ok(c)
    }
}

fn sink(path: &Option<PathBuf>) -> HarnessResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).map_err(|e| HarnessError::Runtime(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    })
}

fn read_distribution(arg: &str) -> HarnessResult<CompactDistribution> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| HarnessError::config(format!("{path}: {e}")))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| HarnessError::config(format!("distribution: {e}")))
}

fn execute(cli: Cli) -> HarnessResult<i32> {
    match cli.command {
        Command::Converge(o) => {
            let c = o.load(ExperimentKind::ConvergeFunction)?;
            let report = run_convergence_function(&c)?;
            write_convergence(&c, &report)?;
            Ok(if report.is_regression() { 3 } else { 0 })
        }
        Command::ConvergeDist { common, distribution } => {
            let mut c = common.load(ExperimentKind::ConvergeDistribution)?;
            c.kind = ExperimentKind::ConvergeDistribution;
            if common.target.is_none() && common.config.is_none() {
                c.space.target = Target::Distribution;
            }
            if let Some(d) = distribution {
                c.distribution = Some(read_distribution(&d)?);
            }
            if c.distribution.is_none() {
                c.distribution = Some(CompactDistribution::delta(&vec![0.0; c.grid.dim()]));
            }
            let report = run_convergence_distribution(&c)?;
            write_convergence(&c, &report)?;
            Ok(if report.is_regression() { 3 } else { 0 })
        }
        Command::Equivalence { common, corpus, seed } => {
            let mut c = common.load(ExperimentKind::Equivalence)?;
            if let Some(v) = corpus {
                c.equivalence.corpus = v;
            }
            if let Some(v) = seed {
                c.equivalence.seed = v;
            }
            if let Some(v) = common.alpha {
                c.equivalence.s = v;
            }
            if let Some(v) = common.p {
                c.equivalence.p = v;
            }
            if let Some(v) = common.q {
                c.equivalence.q = v;
            }
            let report = run_equivalence(&c)?;
            let out = sink(&c.out)?;
            match c.format {
                OutputFormat::Csv => output::equivalence_csv(&report, out)?,
                OutputFormat::Json => output::json(&serde_json::to_value(&report).expect("serializable"), out)?,
            }
            Ok(0)
        }
        Command::Conditions { common, dim, m } => {
            let mut c = common.load(ExperimentKind::Conditions)?;
            if let Some(d) = dim {
                c.grid = GridSpec::new(d, c.grid.points_per_axis(), c.grid.period())?;
            }
            if let Some(m) = m {
                c.symbol = format!("radial:{m}");
            }
            let report = run_conditions(&c)?;
            output::json(&report.to_json(), sink(&c.out)?)?;
            Ok(0)
        }
        Command::Norm { common, space, via } => {
            let c = common.load(ExperimentKind::Equivalence)?;
            let mut norm: NormSpec = space.parse()?;
            if let (Some(v), NormSpec::Besov { s, p, q }) = (&via, &norm) {
                let route: NormRoute = v.parse()?;
                norm = route.besov(*s, *p, *q, 2);
            }
            let f = make_signal(&c.signal, c.grid)?;
            let value = norm.evaluate(&f)?;
            let trace = match &norm {
                NormSpec::Besov { s, p, q } => {
                    let part = build_partition(c.grid)?;
                    serde_json::to_value(besov_norm_lp_traced(&f, &BesovParams::new(*s, *p, *q)?, &part)?)
                }
                NormSpec::BesovModulus { s, p, q, m, n1 } => serde_json::to_value(besov_norm_modulus_traced(
                    &f,
                    &BesovParams::new(*s, *p, *q)?,
                    *m,
                    *n1,
                )?),
                NormSpec::Classical { s, p, q } => {
                    serde_json::to_value(classical_besov_traced(&f, &BesovParams::new(*s, *p, *q)?)?)
                }
                _ => Ok(serde_json::Value::Null),
            }
            .expect("traces serialize");
            let doc = serde_json::json!({
                "value": value,
                "space": norm.to_string(),
                "signal": c.signal.to_string(),
                "grid": c.grid,
                "trace": trace,
            });
            let mut out = sink(&c.out)?;
            writeln!(out, "{value}")?;
            output::json(&doc, out)?;
            Ok(0)
        }
        Command::Apply { common, t } => {
            let c = common.load(ExperimentKind::ConvergeFunction)?;
            c.validate()?;
            let f = make_signal(&c.signal, c.grid)?;
            let plan = MultiplierPlan::spectral_mean(c.grid, &c.mean()?, t, &c.symbol()?)?;
            let g = plan.apply(&f)?;
            let out = sink(&c.out)?;
            match c.format {
                OutputFormat::Csv => {
                    let mut w = csv::Writer::from_writer(out);
                    let dim = c.grid.dim();
                    let mut header: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
                    header.extend(["u".into(), "mean_re".into(), "mean_im".into()]);
                    w.write_record(&header)?;
                    for i in 0..c.grid.len() {
                        let x = c.grid.point(i);
                        let mut row: Vec<String> = x[..dim].iter().map(|v| v.to_string()).collect();
                        row.push(f.values()[i].re.to_string());
                        row.push(g.values()[i].re.to_string());
                        row.push(g.values()[i].im.to_string());
                        w.write_record(&row)?;
                    }
                    w.flush()?;
                }
                OutputFormat::Json => {
                    let doc = serde_json::json!({
                        "provenance": plan.provenance(),
                        "t": t,
                        "signal": c.signal.to_string(),
                        "grid": c.grid,
                        "input": f.real_parts(),
                        "output": g.values().iter().map(|v| [v.re, v.im]).collect::<Vec<_>>(),
                    });
                    output::json(&doc, out)?;
                }
            }
            Ok(0)
        }
    }
}

fn write_convergence(c: &ExperimentConfig, report: &crate::experiments::ConvergenceReport) -> HarnessResult<()> {
    let out = sink(&c.out)?;
    match c.format {
        OutputFormat::Csv => output::convergence_csv(report, out),
        OutputFormat::Json => output::json(&report.to_json(), out),
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("specmeans: {e}");
            e.exit_code()
        }
    }
}
