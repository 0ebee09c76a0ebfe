//! Command-line surface.
//!
//! Exit codes: 0 success (or entanglement detected), 1 clean run with
//! nothing detected / no threshold, 2 usage or input errors.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::factory::FamilySpec;
use crate::measure::gme_concurrence_pure;
use crate::ppt::ppt_classify;
use crate::scan::{run_scan, to_csv, ScanSpec};
use crate::statefile::{self, LoadedState};
use crate::witness::{maximize_bound, noise_threshold, OptimizerConfig, ThresholdOutcome};

#[derive(Parser)]
#[command(
    name = "gmec",
    version,
    about = "Quantify genuine multipartite entanglement: gme-concurrence, computable lower bounds, PPT classification"
)]
struct Cli {
    /// JSON config file with `state`, `optimizer` and `scan` sections.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Per-cut concurrences and the gme-concurrence of a pure state
    Pure(StateArgs),
    /// Maximize the biseparability bound; exit 0 when entanglement is certified
    Bound {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Scan the GHZ/W-mixture simplex and write a CSV of bounds
    Scan {
        /// Grid step h (0 < h <= 0.25)
        #[arg(long)]
        step: Option<f64>,
        /// Output CSV path
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Disable warm-starting from the neighboring grid point
        #[arg(long)]
        no_warm_start: bool,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Locate the white-noise threshold of a named family
    Noise {
        /// Family with a visibility parameter: ghz | product
        #[arg(long)]
        family: String,
        /// Number of parties
        #[arg(short = 'n', long, default_value_t = 3)]
        parties: usize,
        /// Local dimension
        #[arg(short = 'd', long, default_value_t = 2)]
        dim: usize,
        #[command(flatten)]
        optimizer: OptimizerArgs,
    },
    /// Classify a state as PPT or NPT for every bipartition
    Ppt(StateArgs),
    /// State-file utilities
    State {
        #[command(subcommand)]
        action: StateAction,
    },
}

#[derive(Subcommand)]
enum StateAction {
    /// Generate a named family and write it as a state file
    Gen {
        #[command(flatten)]
        state: StateArgs,
        /// Output path
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
}

#[derive(Args, Clone)]
struct StateArgs {
    /// Named family: ghz | w | gghz | ghz_w_noise
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,
    /// Number of parties
    #[arg(short = 'n', long)]
    parties: Option<usize>,
    /// Local dimension (ghz, gghz)
    #[arg(short = 'd', long)]
    dim: Option<usize>,
    /// gghz branch amplitude alpha (real); beta defaults to sqrt(1 - alpha^2)
    #[arg(long)]
    alpha: Option<f64>,
    /// gghz branch amplitude beta (real)
    #[arg(long)]
    beta: Option<f64>,
    /// GHZ weight of the ghz_w_noise family
    #[arg(long)]
    c1: Option<f64>,
    /// W weight of the ghz_w_noise family
    #[arg(long)]
    c2: Option<f64>,
    /// Seed for random gghz local frames
    #[arg(long)]
    frame_seed: Option<u64>,
    /// Load the state from a state file instead of a named family
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct OptimizerArgs {
    /// Search restarts
    #[arg(long)]
    restarts: Option<usize>,
    /// Objective-evaluation budget per restart
    #[arg(long)]
    max_evals: Option<usize>,
    /// Seed for the restart schedule
    #[arg(long)]
    seed: Option<u64>,
    /// Absolute objective improvement below which a sweep stops
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    state: Option<FamilySpec>,
    optimizer: Option<OptimizerConfig>,
    scan: Option<ScanSection>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ScanSection {
    step: Option<f64>,
    out: Option<PathBuf>,
    warm_start: Option<bool>,
}

/// Parse the process arguments, execute, and return the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn execute(cli: Cli) -> Result<i32> {
    let config = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Pure(state) => cmd_pure(&state, &config),
        Command::Bound { state, optimizer } => cmd_bound(&state, &optimizer, &config),
        Command::Scan {
            step,
            out,
            no_warm_start,
            optimizer,
        } => cmd_scan(step, out, no_warm_start, &optimizer, &config),
        Command::Noise {
            family,
            parties,
            dim,
            optimizer,
        } => cmd_noise(&family, parties, dim, &optimizer, &config),
        Command::Ppt(state) => cmd_ppt(&state, &config),
        Command::State { action } => match action {
            StateAction::Gen { state, out } => cmd_state_gen(&state, &out, &config),
        },
    }
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Domain(format!("config {}: {e}", path.display())))
}

fn resolve_state(args: &StateArgs, config: &ConfigFile) -> Result<LoadedState> {
    if let Some(file) = &args.file {
        return statefile::load(file);
    }
    if let Some(spec) = family_from_args(args)? {
        return statefile::realize(&spec);
    }
    if let Some(spec) = &config.state {
        return statefile::realize(spec);
    }
    Err(Error::Domain(
        "no state given: pass --family or --file, or set `state` in the config".into(),
    ))
}

fn family_from_args(args: &StateArgs) -> Result<Option<FamilySpec>> {
    let Some(family) = &args.family else {
        return Ok(None);
    };
    let n = args.parties.unwrap_or(3);
    let d = args.dim.unwrap_or(2);
    let spec = match family.as_str() {
        "ghz" => FamilySpec::Ghz { n, d },
        "w" => {
            if d != 2 {
                return Err(Error::Unsupported(format!(
                    "the w family is defined for qubits only, got dimension {d}"
                )));
            }
            FamilySpec::W { n }
        }
        "gghz" => {
            let alpha = args.alpha.unwrap_or(std::f64::consts::FRAC_1_SQRT_2);
            let beta = args
                .beta
                .unwrap_or_else(|| (1.0 - alpha * alpha).max(0.0).sqrt());
            FamilySpec::Gghz {
                n,
                d,
                alpha: [alpha, 0.0],
                beta: [beta, 0.0],
                frames: None,
                seed: args.frame_seed,
            }
        }
        "ghz_w_noise" => {
            if args.parties.is_some_and(|n| n != 3) || args.dim.is_some_and(|d| d != 2) {
                return Err(Error::Domain(
                    "the ghz_w_noise family is a 3-qubit mixture; -n/-d do not apply".into(),
                ));
            }
            FamilySpec::GhzWNoise {
                c1: args.c1.unwrap_or(0.0),
                c2: args.c2.unwrap_or(0.0),
            }
        }
        other => {
            return Err(Error::Domain(format!(
                "unknown family `{other}` (expected ghz, w, gghz or ghz_w_noise)"
            )))
        }
    };
    Ok(Some(spec))
}

fn resolve_optimizer(args: &OptimizerArgs, config: &ConfigFile) -> OptimizerConfig {
    let mut cfg = config.optimizer.clone().unwrap_or_default();
    if let Some(r) = args.restarts {
        cfg.restarts = r;
    }
    if let Some(m) = args.max_evals {
        cfg.max_evals = m;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(t) = args.tol {
        cfg.tol = t;
    }
    cfg
}

fn cmd_pure(args: &StateArgs, config: &ConfigFile) -> Result<i32> {
    let state = resolve_state(args, config)?;
    let LoadedState::Pure(psi) = state else {
        eprintln!("error: input is a mixed state; the gme-concurrence itself is only computed for pure states. Use `gmec bound` for the certified lower bound.");
        return Ok(2);
    };
    let report = gme_concurrence_pure(&psi)?;
    for (gamma, c) in &report.per_bipartition {
        println!("cut {:<12} concurrence {:.6}", gamma.cut_string(), c);
    }
    println!("gme-concurrence {:.6}", report.gme_value);
    println!(
        "minimizing cut {}",
        report.minimizing_bipartition.cut_string()
    );
    Ok(0)
}

fn cmd_bound(args: &StateArgs, opt: &OptimizerArgs, config: &ConfigFile) -> Result<i32> {
    let rho = resolve_state(args, config)?.to_density();
    let cfg = resolve_optimizer(opt, config);
    let result = maximize_bound(&rho, &cfg)?;
    println!("raw 2I      {:.6}", result.raw_2i);
    println!("lower bound {:.6}", result.lower_bound);
    println!(
        "witness     x={} y={} ({} evaluations, {})",
        result.witness.x(),
        result.witness.y(),
        result.evaluations,
        if result.converged {
            "converged"
        } else {
            "budget exhausted"
        }
    );
    for (party, angles) in result.witness.frame().iter().enumerate() {
        let joined: Vec<String> = angles.iter().map(|a| format!("{a:.6}")).collect();
        println!("frame party {}: [{}]", party + 1, joined.join(", "));
    }
    if result.lower_bound > 0.0 {
        println!("genuine multipartite entanglement certified");
        Ok(0)
    } else {
        println!("not detected");
        Ok(1)
    }
}

fn cmd_scan(
    step: Option<f64>,
    out: Option<PathBuf>,
    no_warm_start: bool,
    opt: &OptimizerArgs,
    config: &ConfigFile,
) -> Result<i32> {
    let section = config.scan.as_ref();
    let spec = ScanSpec {
        step: step
            .or_else(|| section.and_then(|s| s.step))
            .unwrap_or_else(|| ScanSpec::default().step),
        optimizer: resolve_optimizer(opt, config),
        warm_start: !no_warm_start && section.and_then(|s| s.warm_start).unwrap_or(true),
    };
    let out = out
        .or_else(|| section.and_then(|s| s.out.clone()))
        .unwrap_or_else(|| PathBuf::from("scan.csv"));
    let rows = run_scan(&spec)?;
    std::fs::write(&out, to_csv(&rows))?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    Ok(0)
}

fn cmd_noise(
    family: &str,
    parties: usize,
    dim: usize,
    opt: &OptimizerArgs,
    config: &ConfigFile,
) -> Result<i32> {
    let cfg = resolve_optimizer(opt, config);
    let outcome = match family {
        "ghz" => noise_threshold(|p| crate::factory::ghz_white_noise(parties, dim, p), &cfg)?,
        "product" => {
            let dims = crate::hilbert::HilbertDims::uniform(parties, dim)?;
            noise_threshold(
                move |_| {
                    let mut amp = vec![num_complex::Complex64::ZERO; dims.total()];
                    amp[0] = num_complex::Complex64::ONE;
                    Ok(crate::state::StateVector::new(dims.clone(), amp)?.to_density())
                },
                &cfg,
            )?
        }
        other => {
            return Err(Error::Domain(format!(
                "unknown noise family `{other}` (expected ghz or product)"
            )))
        }
    };
    match outcome {
        ThresholdOutcome::Threshold { p_star } => {
            println!("critical visibility p* = {p_star:.3}");
            println!("noise resistance 1 - p* = {:.3}", 1.0 - p_star);
            Ok(0)
        }
        ThresholdOutcome::NeverPositive => {
            println!("never positive: the bound does not detect this family for any p in [0, 1]");
            Ok(1)
        }
        ThresholdOutcome::AlwaysPositive => {
            println!("always positive: the bound detects this family even at p = 0");
            Ok(1)
        }
    }
}

fn cmd_ppt(args: &StateArgs, config: &ConfigFile) -> Result<i32> {
    let rho = resolve_state(args, config)?.to_density();
    let report = ppt_classify(&rho)?;
    for (gamma, min_eig) in &report.per_bipartition {
        let tag = if *min_eig >= -crate::ppt::PPT_SLACK {
            "PPT"
        } else {
            "NPT"
        };
        println!(
            "cut {:<12} min eigenvalue {:>12.6}  {}",
            gamma.cut_string(),
            min_eig,
            tag
        );
    }
    println!("ppt_all {}", report.ppt_all);
    Ok(0)
}

fn cmd_state_gen(args: &StateArgs, out: &Path, config: &ConfigFile) -> Result<i32> {
    let state = resolve_state(args, config)?;
    statefile::save(out, &state)?;
    println!("wrote {}", out.display());
    Ok(0)
}
