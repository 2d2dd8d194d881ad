//! `boson-bounds`: evaluate capacity bounds, sweep them to CSV, run the
//! self-checks.
//!
//! Exit status: 0 on success, 2 when a bound's hypotheses fail for the
//! given parameters, 1 for any other error.

// `!(x > y)` style checks are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use boson_bounds::verify::{run_suite, Suite, VerifyOptions};
use boson_bounds::{evaluate, BoundKind, Error, PhaseInsensitiveChannel};

use config::SweepConfig;

#[derive(Parser)]
#[command(
    name = "boson-bounds",
    version,
    about = "Capacity bounds for phase-insensitive bosonic Gaussian channels"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChannelArg {
    Thermal,
    Amplifier,
    Additive,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Core,
    Bounds,
    All,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one bound and print it as JSON.
    Bound {
        #[arg(long, value_enum)]
        channel: ChannelArg,
        /// Transmissivity (thermal).
        #[arg(long)]
        eta: Option<f64>,
        /// Gain (amplifier).
        #[arg(long)]
        g: Option<f64>,
        /// Added noise (additive).
        #[arg(long)]
        nbar: Option<f64>,
        /// Environment photons.
        #[arg(long, default_value_t = 0.0)]
        nb: f64,
        /// Input energy constraint; PLOB and RMG ignore it.
        #[arg(long)]
        ns: Option<f64>,
        /// QL, QU1..QU4, PU1..PU3, PL, PLOB or RMG.
        #[arg(long)]
        bound: BoundKind,
        /// Fix ε′ instead of optimizing it (QU2, QU3, PU2, PU3).
        #[arg(long)]
        eps_prime: Option<f64>,
    },
    /// Evaluate bounds over a one-dimensional grid and write CSV.
    Sweep {
        /// Built-in configuration (3a..3d, 4a, 4b, 5a..5d, 6a, 6b).
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        fig: Option<String>,
        /// Configuration file of `key = value` lines.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the numerical self-checks.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = VerifyOptions::default().samples)]
        samples: usize,
        #[arg(long, hide = true, default_value_t = 0.0)]
        perturb_kappa: f64,
    },
}

enum Failure {
    Infeasible(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible(_) => Self::Infeasible(e.to_string()),
            _ => Self::Other(e.to_string()),
        }
    }
}

fn other(msg: impl ToString) -> Failure {
    Failure::Other(msg.to_string())
}

fn param(v: Option<f64>, flag: &str) -> Result<f64, Failure> {
    v.ok_or_else(|| other(format!("--{flag} is required for this channel")))
}

#[allow(clippy::too_many_arguments)]
fn bound(
    channel: ChannelArg,
    eta: Option<f64>,
    g: Option<f64>,
    nbar: Option<f64>,
    nb: f64,
    ns: Option<f64>,
    kind: BoundKind,
    eps_prime: Option<f64>,
) -> Result<(), Failure> {
    let ch = match channel {
        ChannelArg::Thermal => PhaseInsensitiveChannel::thermal(param(eta, "eta")?, nb)?,
        ChannelArg::Amplifier => PhaseInsensitiveChannel::amplifier(param(g, "g")?, nb)?,
        ChannelArg::Additive => PhaseInsensitiveChannel::additive_noise(param(nbar, "nbar")?)?,
    };
    let ns = match (ns, kind) {
        (Some(ns), _) => ns,
        (None, BoundKind::PLOB | BoundKind::RMG) => 0.0,
        (None, _) => return Err(other(format!("--ns is required for {kind}"))),
    };
    let r = evaluate(&ch, ns, kind, eps_prime)?;
    println!("{}", serde_json::to_string(&r).map_err(other)?);
    Ok(())
}

fn thread_pool() -> Result<rayon::ThreadPool, Failure> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("BOSON_BOUNDS_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| other(format!("BOSON_BOUNDS_THREADS='{v}' is not a thread count")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(other)
}

fn sweep_cmd(
    fig: Option<String>,
    config: Option<PathBuf>,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let cfg = match (fig, config) {
        (Some(name), _) => config::fig(&name)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| other(format!("{}: {e}", path.display())))?;
            SweepConfig::parse(&text)?
        }
        (None, None) => return Err(other("one of --fig or --config is required")),
    };
    let csv = thread_pool()?.install(|| sweep::run(&cfg))?;
    match out {
        Some(path) => {
            std::fs::write(&path, csv).map_err(|e| other(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn verify_cmd(
    suite: SuiteArg,
    seed: u64,
    samples: usize,
    perturb_kappa: f64,
) -> Result<(), Failure> {
    let suite = match suite {
        SuiteArg::Core => Suite::Core,
        SuiteArg::Bounds => Suite::Bounds,
        SuiteArg::All => Suite::All,
    };
    let opts = VerifyOptions {
        seed,
        samples,
        kappa_perturbation: perturb_kappa,
    };
    let report = run_suite(suite, &opts);
    println!("{report}");
    if report.passed() {
        Ok(())
    } else {
        Err(other("verification failed"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let res = match cli.cmd {
        Cmd::Bound {
            channel,
            eta,
            g,
            nbar,
            nb,
            ns,
            bound: kind,
            eps_prime,
        } => bound(channel, eta, g, nbar, nb, ns, kind, eps_prime),
        Cmd::Sweep { fig, config, out } => sweep_cmd(fig, config, out),
        Cmd::Verify {
            suite,
            seed,
            samples,
            perturb_kappa,
        } => verify_cmd(suite, seed, samples, perturb_kappa),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Infeasible(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::FAILURE
        }
    }
}
