use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use adcode_core::adverify::{verify_t_code, ErrorModel, VerifyConfig};
use adcode_core::concat::{concatenate, dual_rail};
use adcode_core::oracle::{
    erasure_lemma_check, fidelity_experiment, random_inner_state, DampingParameter, InnerKind, DEFAULT_GAMMAS,
};
use adcode_core::stabcode::{bacon_shor_ad, database_names, distance, get_code, parse_code, CodeJson};
use adcode_core::tables::{table, RowSource};
use adcode_core::{Error, StabilizerCode};
use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

const LEMMA_TOLERANCE: f64 = 1e-12;

/// Amplitude-damping codes: build, check and simulate.
///
/// CODE arguments accept a code file, a built-in name, or `bacon_shor:<t>`.
#[derive(Parser)]
#[command(name = "adcode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check commutation, independence and logical pairing.
    Validate { code: String },
    /// Encode every qubit of OUTER with the inner code.
    Concat {
        outer: String,
        #[arg(long, value_enum, default_value_t = Inner::Dualrail)]
        inner: Inner,
        /// Output code file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the error-detection conditions for t damping errors.
    Verify {
        code: String,
        #[arg(long)]
        t: usize,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
        /// Write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Cap on expanded Pauli terms, e.g. 1e9.
        #[arg(long, value_parser = parse_budget, default_value = "1e9")]
        budget: u128,
        #[arg(long, default_value_t = ErrorModel::KnillLaflamme)]
        model: ErrorModel,
    },
    /// Brute-force minimum distance up to a weight.
    Distance {
        code: String,
        /// Largest weight searched; defaults to n.
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Shortest constructible t-code per (k, t) against the reference lengths.
    Tables {
        #[arg(long, value_delimiter = ',', default_values_t = 1..=6)]
        k: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = 1..=10)]
        t: Vec<usize>,
        #[arg(long, value_parser = parse_budget, default_value = "1e9")]
        budget: u128,
        #[arg(long)]
        jobs: Option<usize>,
        /// Print rows as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check that damping an inner-code state is an erasure.
    Channel {
        #[arg(long, value_enum)]
        lemma: Lemma,
        #[arg(long, value_delimiter = ',', required = true)]
        gamma: Vec<f64>,
        /// Random code states per damping rate.
        #[arg(long, default_value_t = 100)]
        states: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Infidelity after transpose-channel recovery and its exponent in γ.
    Fidelity {
        #[arg(long)]
        code: String,
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',')]
        gammas: Option<Vec<f64>>,
        /// Write `gamma,infidelity` rows.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the summary as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print a code as JSON.
    ExportJson { code: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Inner {
    Dualrail,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    Dualrail,
    Qutrit3,
}

impl From<Lemma> for InnerKind {
    fn from(l: Lemma) -> Self {
        match l {
            Lemma::Dualrail => InnerKind::DualRail,
            Lemma::Qutrit3 => InnerKind::Qutrit3,
        }
    }
}

fn parse_budget(s: &str) -> Result<u128, String> {
    if let Ok(v) = s.parse::<u128>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.fract() == 0.0 && v < 3.4e38 => Ok(v as u128),
        _ => Err(format!("{s:?} is not a non-negative integer")),
    }
}

/// Error raised for bad input rather than a failed check.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn load_code(arg: &str) -> Result<StabilizerCode> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
        return parse_code(&text).map_err(|e| Usage(format!("{arg}: {e}")).into());
    }
    if let Some(t) = arg.strip_prefix("bacon_shor:") {
        let t = t.parse().map_err(|_| Usage(format!("{arg:?}: expected bacon_shor:<t>")))?;
        return Ok(bacon_shor_ad(t)?);
    }
    match get_code(arg) {
        Err(Error::UnknownCode(_)) => Err(Usage(format!(
            "{arg:?} is neither a file nor a built-in code ({}, bacon_shor:<t>)",
            database_names().join(", ")
        ))
        .into()),
        other => Ok(other?),
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// `Ok(true)` maps to exit 0, `Ok(false)` to exit 1.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Validate { code } => {
            let code = load_code(&code)?;
            let report = code.validate();
            match &report.violation {
                None => println!("{} [[{},{}]]: valid", code.name(), code.n(), code.k()),
                Some(v) => println!("{} [[{},{}]]: invalid: {v}", code.name(), code.n(), code.k()),
            }
            Ok(report.is_pass())
        }
        Command::Concat { outer, inner, out } => {
            let outer = load_code(&outer)?;
            let inner = match inner {
                Inner::Dualrail => dual_rail(),
            };
            let code = concatenate(&outer, &inner)?;
            write_or_print(out.as_deref(), &code.to_string())?;
            if out.is_some() {
                eprintln!("wrote {} [[{},{}]]", code.name(), code.n(), code.k());
            }
            Ok(true)
        }
        Command::Verify { code, t, jobs, json, budget, model } => {
            let code = load_code(&code)?;
            let config = VerifyConfig { model, budget, jobs, ..VerifyConfig::default() };
            let report = verify_t_code(&code, t, &config)?;
            print!("{report}");
            if let Some(path) = json {
                fs::write(&path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(report.passed())
        }
        Command::Distance { code, max_weight } => {
            let code = load_code(&code)?;
            let d = distance(&code, max_weight.unwrap_or(code.n()))?;
            println!("{} [[{},{}]]: d = {d}", code.name(), code.n(), code.k());
            Ok(true)
        }
        Command::Tables { k, t, budget, jobs, json } => {
            let config = VerifyConfig { budget, jobs, ..VerifyConfig::default() };
            let rows = table(&k, &t, &config)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&rows)?);
            } else {
                println!("{:>4} {:>2} {:>3}  {:<28} {:<15} {:>5}", "n", "k", "t", "outer", "source", "ref n");
                for r in &rows {
                    let source = match r.source {
                        RowSource::Constructed => "constructed",
                        RowSource::ReferenceOnly => "reference-only",
                    };
                    let reference = r.reference_n.map_or("-".into(), |n| n.to_string());
                    let outer = r.outer_code.as_deref().unwrap_or("-");
                    println!("{:>4} {:>2} {:>3}  {outer:<28} {source:<15} {reference:>5}", r.n, r.k, r.t);
                }
            }
            Ok(rows.iter().all(|r| r.matches_reference() != Some(false)))
        }
        Command::Channel { lemma, gamma, states, seed } => {
            let inner = InnerKind::from(lemma);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ok = true;
            for g in gamma {
                let g = DampingParameter::new(g)?;
                let mut worst = 0.0f64;
                for _ in 0..states {
                    let psi = random_inner_state(inner, &mut rng);
                    worst = worst.max(erasure_lemma_check(g, &(&psi * psi.adjoint()), inner)?);
                }
                let pass = worst <= LEMMA_TOLERANCE;
                ok &= pass;
                println!(
                    "{inner} gamma={}: max residual {worst:.3e} over {states} states: {}",
                    g.gamma(),
                    if pass { "pass" } else { "fail" }
                );
            }
            Ok(ok)
        }
        Command::Fidelity { code, t, gammas, csv, json } => {
            let code = load_code(&code)?;
            let gammas = gammas.unwrap_or_else(|| DEFAULT_GAMMAS.to_vec());
            let result = fidelity_experiment(&code, t, &gammas)?;
            print!("{}", result.to_csv());
            println!(
                "{} t={}: exponent {:.4} (rms residual {:.2e})",
                result.code, result.t, result.fitted_exponent, result.fit_residual
            );
            if let Some(path) = csv {
                fs::write(&path, result.to_csv()).with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = json {
                fs::write(&path, result.summary_json()).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(true)
        }
        Command::ExportJson { code } => {
            let code = load_code(&code)?;
            println!("{}", serde_json::to_string_pretty(&CodeJson::from(&code))?);
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.is::<Usage>() || e.is::<std::io::Error>() || e.chain().any(|c| c.is::<std::io::Error>());
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
