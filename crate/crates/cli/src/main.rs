use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cohcat::catalyst::{self, SelfCatalysisResult};
use cohcat::kraus::{self, KrausSet};
use cohcat::renyi::{self, Decision};
use cohcat::{ent_assist, majorize, stochastic, tol, AlphaGrid, Error, FeasibilityVerdict, ProbVector};
use cohcat_cli::report::{ConversionReport, Settings};
use cohcat_cli::{num, parse_pure_state, parse_spec, parse_state};

/// Coherence conversions between pure states under incoherent operations.
///
/// States are given as comma-separated weights (`0.4,0.4,0.2`) or as
/// `@file.json` holding `{"weights": [...]}`. Exit status: 0 when the
/// answer is yes, 1 when it is no, 2 on bad input.
///
/// COHCAT_TOL scales the comparison tolerance (testing only).
#[derive(Parser)]
#[command(name = "cohcat", version)]
struct Cli {
    /// Decimals in human-readable output.
    #[arg(long, global = true, default_value_t = 4)]
    precision: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Pair {
    /// Source state.
    #[arg(long, value_name = "W")]
    from: String,
    /// Target state.
    #[arg(long, value_name = "W")]
    to: String,
}

impl Pair {
    fn states(&self) -> cohcat::Result<(ProbVector, ProbVector)> {
        Ok((parse_state(&self.from)?, parse_state(&self.to)?))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Closure,
    Nonneg,
    Shortcut,
}

#[derive(Subcommand)]
enum Command {
    /// Deterministic conversion (majorization).
    Check {
        #[command(flatten)]
        pair: Pair,
    },
    /// Optimal conversion probability, optionally with a catalyst.
    Prob {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_name = "W")]
        catalyst: Option<String>,
    },
    /// Catalytic conversion over the Rényi family.
    Catalytic {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, value_enum, default_value = "strict")]
        mode: Mode,
        /// Smoothing parameter for shortcut mode.
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
    },
    /// Qubit-catalyst interval (dimension 4) and brute-force search.
    FindCatalyst {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
    },
    /// Copies of the source needed as catalyst.
    SelfCat {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Entanglement-assisted conversion.
    EntAssist {
        #[command(flatten)]
        pair: Pair,
        /// Strict entropy decrease with rank gate (default).
        #[arg(long, conflicts_with = "closure")]
        strict: bool,
        /// Perturbed-source variant: entropy may tie.
        #[arg(long)]
        closure: bool,
    },
    /// Check a Kraus-set JSON file, optionally applying it to a state.
    KrausVerify {
        #[arg(long)]
        file: PathBuf,
        /// Input state, weights in basis order.
        #[arg(long, value_name = "W")]
        apply: Option<String>,
        /// Report the probability of landing on this state.
        #[arg(long, value_name = "W", requires = "apply")]
        target: Option<String>,
    },
    /// Build an explicit channel for a deterministic conversion.
    KrausBuild {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        out: PathBuf,
    },
    /// Δ(α) over the default grid as CSV.
    Curve {
        #[command(flatten)]
        pair: Pair,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every verdict for the pair as one JSON report.
    Report {
        #[command(flatten)]
        pair: Pair,
        /// Output file; stdout when omitted.
        #[arg(long, value_name = "F")]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
    },
}

fn write(path: &PathBuf, text: &str) -> cohcat::Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn print_verdict(v: &FeasibilityVerdict, prec: usize) {
    println!("decision: {:?}", v.decision);
    match v.witness_alpha {
        Some(a) => println!("witness_alpha: {}", num(a, prec)),
        None => println!("witness_alpha: none"),
    }
    println!("margin: {}", num(v.margin, prec));
}

fn run(cli: Cli) -> cohcat::Result<bool> {
    let prec = cli.precision;
    match cli.command {
        Command::Check { pair } => {
            let (p, q) = pair.states()?;
            let out = majorize::compare(&p, &q);
            println!("{:?}", out.tag);
            if let Some(i) = out.forward_witness {
                println!("forward_witness: {i}");
            }
            if let Some(i) = out.backward_witness {
                println!("backward_witness: {i}");
            }
            Ok(out.convertible())
        }
        Command::Prob { pair, catalyst } => {
            let (p, q) = pair.states()?;
            let prob = match catalyst {
                Some(c) => stochastic::catalytic_probability(&p, &q, &parse_state(&c)?),
                None => stochastic::optimal_probability(&p, &q),
            };
            println!("{}", num(prob, prec));
            Ok(true)
        }
        Command::Catalytic { pair, mode, eps } => {
            let (p, q) = pair.states()?;
            let g = AlphaGrid::default();
            let v = match mode {
                Mode::Strict => renyi::catalytic_feasible_strict(&p, &q, &g)?,
                Mode::Closure => renyi::catalytic_feasible_closure(&p, &q, &g),
                Mode::Nonneg => renyi::catalytic_feasible_nonneg(&p, &q, &g),
                Mode::Shortcut => renyi::shortcut_check(&p, &q, eps)?,
            };
            print_verdict(&v, prec);
            Ok(v.decision == Decision::Feasible)
        }
        Command::FindCatalyst { pair, max_dim, resolution } => {
            let (p, q) = pair.states()?;
            let mut found = false;
            if p.dim().max(q.dim()) <= 4 {
                let iv = catalyst::qubit_interval_d4(&p, &q)?;
                if iv.nonempty {
                    println!("interval: [{}, {}]", num(iv.lower, prec), num(iv.upper, prec));
                    found = true;
                } else {
                    let why = iv.gate_failure.as_deref().unwrap_or("bounds cross");
                    println!("interval: empty ({why})");
                }
            }
            match catalyst::grid_search_catalyst(&p, &q, max_dim, resolution)? {
                Some(c) => {
                    println!("witness: {c:.prec$}");
                    found = true;
                }
                None => println!("witness: none"),
            }
            Ok(found)
        }
        Command::SelfCat { pair, n_max } => {
            let (p, q) = pair.states()?;
            let SelfCatalysisResult { order, searched_up_to } = catalyst::self_catalysis_order(&p, &q, n_max)?;
            match order {
                Some(n) => println!("order: {n}"),
                None => println!("order: none (searched up to {searched_up_to})"),
            }
            Ok(order.is_some())
        }
        Command::EntAssist { pair, closure, .. } => {
            let (p, q) = pair.states()?;
            if closure {
                let ok = ent_assist::ent_assisted_closure(&p, &q);
                println!("feasible: {ok}");
                return Ok(ok);
            }
            let v = ent_assist::ent_assisted_feasible(&p, &q);
            println!("feasible: {}", v.feasible);
            println!("rank_ok: {}", v.rank_ok);
            println!("entropy_ok: {}", v.entropy_ok);
            println!("entropy_gap: {}", num(v.entropy_gap, prec));
            Ok(v.feasible)
        }
        Command::KrausVerify { file, apply, target } => {
            let text =
                fs::read_to_string(&file).map_err(|e| Error::InvalidArgument(format!("{}: {e}", file.display())))?;
            let ks = KrausSet::from_json(&text)?;
            let v = ks.verify();
            println!("valid: {}", v.valid);
            println!("operators: {}", ks.len());
            println!("completeness_defect: {:.3e}", v.completeness_defect);
            for (n, c) in &v.incoherence_violations {
                println!("incoherence_violation: operator {n} column {c}");
            }
            if !v.valid {
                return Ok(false);
            }
            if let Some(w) = apply {
                let psi = parse_pure_state(&w)?;
                for (n, b) in ks.apply(&psi)?.iter().enumerate() {
                    println!("branch {n}: {}", num(b.probability, prec));
                }
                if let Some(t) = target {
                    let prob = kraus::stochastic_subset_probability(&ks, &psi, &parse_pure_state(&t)?)?;
                    println!("target_probability: {}", num(prob, prec));
                }
            }
            Ok(true)
        }
        Command::KrausBuild { pair, out } => {
            let (p, q) = pair.states()?;
            match kraus::realize_deterministic(&p, &q) {
                Ok(ks) => {
                    write(&out, &ks.to_json())?;
                    println!("wrote {} operators to {}", ks.len(), out.display());
                    Ok(true)
                }
                Err(Error::NotMajorized) => {
                    println!("not convertible: source is not majorized by target");
                    Ok(false)
                }
                Err(e) => Err(e),
            }
        }
        Command::Curve { pair, out } => {
            let (p, q) = pair.states()?;
            let csv = renyi::curve_to_csv(&renyi::delta_curve(&p, &q, &AlphaGrid::default()));
            match out {
                Some(path) => write(&path, &csv)?,
                None => print!("{csv}"),
            }
            Ok(true)
        }
        Command::Report { pair, json, eps, n_max, max_dim, resolution } => {
            let settings = Settings { eps, n_max, max_dim, resolution, ..Settings::default() };
            let report = ConversionReport::build(parse_spec(&pair.from)?, parse_spec(&pair.to)?, settings)?;
            let text = report.to_json();
            match json {
                Some(path) => {
                    write(&path, &text)?;
                    println!("wrote report to {}", path.display());
                }
                None => println!("{text}"),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(raw) = std::env::var("COHCAT_TOL") {
        match raw.trim().parse::<f64>() {
            Ok(s) if s.is_finite() && s > 0.0 => tol::set_cmp_scale(s),
            _ => {
                eprintln!("error: COHCAT_TOL must be a positive number, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
