//! `riffle`: exact laws, simulation and limit-law checks for the one-time
//! riffle shuffle guessing game.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};

use riffle_core::exact::{first_card_pmf, MixtureSpec, DEFAULT_POLY_CAP};
use riffle_core::gf::{GfVerifier, DEFAULT_SERIES_CAP};
use riffle_core::limits::{gg_moment, ks_fit, FitData, LawDescriptor};
use riffle_core::pmf::ratio_string;
use riffle_core::sim::{simulate, simulate_two_color, DistSummary};
use riffle_core::{Error, ExactEngine, Pmf};

use output::{emit, render_csv, render_json, Artifact, Header};

const EXIT_VALIDATION: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

/// Every flag that influences the output; its hash goes into the header.
#[derive(Parser, Debug, Serialize)]
#[command(
    name = "riffle",
    version,
    about = "Card guessing after one riffle shuffle"
)]
struct RunConfig {
    /// Master seed for simulations.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads for simulations.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    #[serde(skip)]
    out: Option<PathBuf>,
    /// Largest deck (or two-color total) for full polynomial tables.
    #[arg(long, global = true, default_value_t = DEFAULT_POLY_CAP)]
    poly_cap: usize,
    /// Largest series order for the generating-function check.
    #[arg(long, global = true, default_value_t = DEFAULT_SERIES_CAP)]
    series_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Exact law of one statistic.
    Exact(ExactArgs),
    /// Monte Carlo summaries of X_n and P_n.
    Simulate(SimulateArgs),
    /// Checks the closed-form generating functions against the recurrences.
    GfCheck(GfArgs),
    /// Kolmogorov–Smirnov distance between a statistic and a limit law.
    Compare(CompareArgs),
    /// Moments of (X_n - n/2) / sqrt(n) against the limit moments.
    Moments(MomentArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum Kind {
    /// Correct guesses on an n-card deck.
    X,
    /// Correct guesses in the two-color game (m1, m2).
    C,
    /// Half-count at the first tie of the two-color game (m1, m2).
    H,
    /// Half-count at the first pure-luck guess on an n-card deck.
    P,
    /// Label of the top card.
    Firstcard,
    /// Split of the remaining cards in the mixture decomposition of X_n.
    J,
}

#[derive(Args, Debug, Serialize)]
struct ExactArgs {
    #[arg(long, value_enum, ignore_case = true)]
    kind: Kind,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m1: Option<usize>,
    #[arg(long)]
    m2: Option<usize>,
}

#[derive(Args, Debug, Serialize)]
struct SimulateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
}

#[derive(Args, Debug, Serialize)]
struct GfArgs {
    /// Highest power of z to compare.
    #[arg(long, default_value_t = 30)]
    order: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Source {
    Exact,
    Sim,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
enum Statistic {
    X,
    P,
    C,
    H,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum LawName {
    /// Generalized gamma.
    Gg,
    /// 1 - exp(-z (rho + z)); needs --rho.
    Linexp,
    /// Levy with scale --c.
    Levy,
    /// 1 / (1 + Levy(c)); needs --c.
    R,
    Arcsine,
}

#[derive(Args, Debug, Serialize)]
struct CompareArgs {
    #[arg(long, value_enum)]
    source: Source,
    #[arg(long, value_enum, ignore_case = true)]
    statistic: Statistic,
    #[arg(long, value_enum)]
    law: LawName,
    #[arg(long)]
    rho: Option<f64>,
    #[arg(long)]
    c: Option<f64>,
    /// Values are rescaled to (v - a) / b.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m1: Option<usize>,
    #[arg(long)]
    m2: Option<usize>,
    /// Games to simulate with `--source sim`.
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    /// Fail with exit code 3 when the distance exceeds this.
    #[arg(long)]
    threshold: Option<f64>,
}

#[derive(Args, Debug, Serialize)]
struct MomentArgs {
    /// Comma-separated deck sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    r_max: usize,
}

/// Why a command stopped.
enum Failure {
    Validation(String),
    Check(Artifact, String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Numeric(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

fn need(v: Option<usize>, flag: &str) -> Result<usize, Failure> {
    v.ok_or_else(|| Failure::Validation(format!("--{flag} is required here")))
}

fn pmf_artifact(pmf: &Pmf, extra: Value) -> Artifact {
    let mut json = json!({
        "pmf": pmf,
        "mean": pmf.mean_f64(),
        "var": pmf.variance_f64(),
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    let mut csv = vec![vec!["value".into(), "prob".into(), "prob_float".into()]];
    for (v, p) in pmf.iter() {
        let f = p.to_f64().unwrap_or(f64::NAN);
        csv.push(vec![v.to_string(), ratio_string(p), f.to_string()]);
    }
    Artifact { json, csv }
}

fn cmd_exact(cfg: &RunConfig, a: &ExactArgs) -> Result<Artifact, Failure> {
    let engine = ExactEngine::new(cfg.poly_cap);
    let pmf = match a.kind {
        Kind::X => engine.pgf_x(need(a.n, "n")?)?,
        Kind::P => engine.p_dist(need(a.n, "n")?)?,
        Kind::C => engine.pgf_c(need(a.m1, "m1")?, need(a.m2, "m2")?)?,
        Kind::H => engine.h_dist(need(a.m1, "m1")?, need(a.m2, "m2")?)?,
        Kind::Firstcard => first_card_pmf(need(a.n, "n")?)?,
        Kind::J => MixtureSpec::new(need(a.n, "n")?)?.j_pmf,
    };
    Ok(pmf_artifact(&pmf, json!({ "kind": a.kind })))
}

fn summary_rows(csv: &mut Vec<Vec<String>>, name: &str, s: &DistSummary) {
    for (v, c) in &s.hist {
        csv.push(vec![name.into(), v.to_string(), c.to_string()]);
    }
}

fn cmd_simulate(cfg: &RunConfig, a: &SimulateArgs) -> Result<Artifact, Failure> {
    let (x, p) = simulate(a.n, a.trials, cfg.seed, cfg.workers)?;
    let mut csv = vec![vec!["statistic".into(), "value".into(), "count".into()]];
    summary_rows(&mut csv, "X", &x);
    summary_rows(&mut csv, "P", &p);
    Ok(Artifact {
        json: json!({ "n": a.n, "x": x, "p": p }),
        csv,
    })
}

fn cmd_gf_check(cfg: &RunConfig, a: &GfArgs) -> Result<Artifact, Failure> {
    let report =
        GfVerifier::new(cfg.series_order).verify(&ExactEngine::new(cfg.poly_cap), a.order)?;
    let opt = |v: Option<usize>| v.map_or(String::new(), |k| k.to_string());
    let mut csv = vec![[
        "n",
        "d_equal",
        "d_mismatch_power",
        "f_equal",
        "f_mismatch_power",
        "relation_equal",
        "relation_mismatch_power",
    ]
    .map(String::from)
    .to_vec()];
    for ((d, f), r) in report
        .d_checks
        .iter()
        .zip(&report.f_diagonal_checks)
        .zip(&report.relation_checks)
    {
        csv.push(vec![
            d.n.to_string(),
            d.equal.to_string(),
            opt(d.first_mismatch_power),
            f.equal.to_string(),
            opt(f.first_mismatch_power),
            r.equal.to_string(),
            opt(r.first_mismatch_power),
        ]);
    }
    let artifact = Artifact {
        json: serde_json::to_value(&report).expect("report serialises"),
        csv,
    };
    if report.all_equal {
        Ok(artifact)
    } else {
        Err(Failure::Check(
            artifact,
            "closed form and recurrence disagree".into(),
        ))
    }
}

fn law_of(a: &CompareArgs) -> Result<LawDescriptor, Failure> {
    let param = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| Failure::Validation(format!("--{flag} is required for this law")))
    };
    let law = match a.law {
        LawName::Gg => LawDescriptor::GeneralizedGamma,
        LawName::Linexp => LawDescriptor::LinExp {
            rho: param(a.rho, "rho")?,
        },
        LawName::Levy => LawDescriptor::Levy {
            c: param(a.c, "c")?,
        },
        LawName::R => LawDescriptor::ReciprocalShiftedLevy {
            c: param(a.c, "c")?,
        },
        LawName::Arcsine => LawDescriptor::Arcsine,
    };
    law.validate()?;
    Ok(law)
}

fn cmd_compare(cfg: &RunConfig, a: &CompareArgs) -> Result<Artifact, Failure> {
    let law = law_of(a)?;
    let report = match a.source {
        Source::Exact => {
            let engine = ExactEngine::new(cfg.poly_cap);
            let pmf = match a.statistic {
                Statistic::X => engine.pgf_x(need(a.n, "n")?)?,
                Statistic::P => engine.p_dist(need(a.n, "n")?)?,
                Statistic::C => engine.pgf_c(need(a.m1, "m1")?, need(a.m2, "m2")?)?,
                Statistic::H => engine.h_dist(need(a.m1, "m1")?, need(a.m2, "m2")?)?,
            };
            ks_fit(FitData::Exact(&pmf), a.a, a.b, &law)?
        }
        Source::Sim => {
            let summary = match a.statistic {
                Statistic::X | Statistic::P => {
                    let (x, p) = simulate(need(a.n, "n")?, a.trials, cfg.seed, cfg.workers)?;
                    if a.statistic == Statistic::X {
                        x
                    } else {
                        p
                    }
                }
                Statistic::C | Statistic::H => {
                    let (m1, m2) = (need(a.m1, "m1")?, need(a.m2, "m2")?);
                    let (c, h) = simulate_two_color(m1, m2, a.trials, cfg.seed, cfg.workers)?;
                    if a.statistic == Statistic::C {
                        c
                    } else {
                        h
                    }
                }
            };
            ks_fit(FitData::Simulated(&summary), a.a, a.b, &law)?
        }
    };
    let pass = a.threshold.is_none_or(|t| report.ks_stat <= t);
    let csv = vec![
        ["law", "ks_stat", "size", "threshold", "pass"]
            .map(String::from)
            .to_vec(),
        vec![
            law.name(),
            report.ks_stat.to_string(),
            report.sample_or_support_size.to_string(),
            a.threshold.map_or(String::new(), |t| t.to_string()),
            pass.to_string(),
        ],
    ];
    let artifact = Artifact {
        json: json!({ "fit": report, "threshold": a.threshold, "pass": pass }),
        csv,
    };
    if pass {
        Ok(artifact)
    } else {
        let msg = format!(
            "KS distance {} exceeds {}",
            report.ks_stat,
            a.threshold.unwrap_or_default()
        );
        Err(Failure::Check(artifact, msg))
    }
}

fn cmd_moments(a: &MomentArgs) -> Result<Artifact, Failure> {
    let engine = ExactEngine::default();
    let mut rows = Vec::new();
    let mut csv = vec![["n", "r", "moment", "limit", "abs_diff"]
        .map(String::from)
        .to_vec()];
    for &n in &a.n_list {
        let m = engine.centered_moments_y(n, a.r_max)?;
        for (r, &v) in m.iter().enumerate() {
            let limit = gg_moment(r as u32);
            rows.push(json!({ "n": n, "r": r, "moment": v, "limit": limit, "abs_diff": (v - limit).abs() }));
            csv.push(vec![
                n.to_string(),
                r.to_string(),
                v.to_string(),
                limit.to_string(),
                (v - limit).abs().to_string(),
            ]);
        }
    }
    Ok(Artifact {
        json: Value::Array(rows),
        csv,
    })
}

fn run(cfg: &RunConfig) -> Result<Artifact, Failure> {
    if cfg.workers == 0 {
        return Err(Failure::Validation("--workers must be at least 1".into()));
    }
    match &cfg.command {
        Command::Exact(a) => cmd_exact(cfg, a),
        Command::Simulate(a) => cmd_simulate(cfg, a),
        Command::GfCheck(a) => cmd_gf_check(cfg, a),
        Command::Compare(a) => cmd_compare(cfg, a),
        Command::Moments(a) => cmd_moments(a),
    }
}

fn write(cfg: &RunConfig, artifact: &Artifact) -> Result<(), String> {
    let header = Header::new(cfg, cfg.seed);
    let text = match cfg.format {
        Format::Json => render_json(&header, cfg, artifact),
        Format::Csv => render_csv(&header, artifact),
    };
    emit(&text, cfg.out.as_deref()).map_err(|e| format!("cannot write output: {e}"))
}

fn main() -> ExitCode {
    let cfg = RunConfig::parse();
    let outcome = run(&cfg);
    let artifact = match &outcome {
        Ok(a) | Err(Failure::Check(a, _)) => Some(a),
        _ => None,
    };
    if let Some(a) = artifact {
        if let Err(e) = write(&cfg, a) {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match outcome {
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Validation(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Check(_, m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(EXIT_CHECK_FAILED)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::FAILURE
        }
    }
}
