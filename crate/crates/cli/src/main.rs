use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qboson_core::config::SuiteConfig;
use qboson_core::fock::Params;
use qboson_core::realizations::{catalog, expected_qdet, make_realization, spec};
use qboson_core::suite::{dump_matrix, run_suite};
use qboson_core::{AlgebraMode, Error, Number};

/// Verifies q-oscillator realizations of the quantum group GL_q(2).
#[derive(Parser)]
#[command(name = "qboson", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the realization catalog.
    List {
        /// Emit JSON instead of a table.
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Dump one entry of a realization as a dense Fock matrix (JSON).
    DumpMatrix(DumpArgs),
    /// Print a realization's entries in normal form.
    Explain {
        name: String,
        /// Algebra mode used for normal ordering.
        #[arg(long, default_value = "generic")]
        mode: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Config file (flat key = value, with [realization.<name>] sections).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Realization names, or "all". Repeatable; commas allowed.
    #[arg(long)]
    realization: Vec<String>,
    /// generic, fock. Repeatable.
    #[arg(long)]
    mode: Vec<String>,
    /// symbolic, numeric, qdiff. Repeatable.
    #[arg(long)]
    backend: Vec<String>,
    /// Truncation dimension per oscillator.
    #[arg(long)]
    dim: Option<String>,
    /// Values of q: rationals like 3/2, floats, complex like 0.9+0.3i, or "random".
    #[arg(long)]
    q: Vec<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Check T^n with q replaced by q^n.
    #[arg(long = "q-power")]
    q_power: Option<String>,
    /// Parameter values, e.g. --param alpha=2. Repeatable.
    #[arg(long)]
    param: Vec<String>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also list passing checks.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct DumpArgs {
    #[arg(long)]
    realization: String,
    /// a, b, c, d (or u, z, A, B for factor realizations).
    #[arg(long, default_value = "a")]
    entry: String,
    #[arg(long, default_value = "generic")]
    mode: String,
    #[arg(long, default_value_t = 4)]
    dim: usize,
    #[arg(long, default_value = "3/2")]
    q: String,
    /// Write to this file instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("configuration error: {msg}");
    ExitCode::from(2)
}

fn build_config(a: &VerifyArgs) -> Result<SuiteConfig, Vec<String>> {
    let mut cfg = SuiteConfig::default();
    if let Some(path) = &a.config {
        let text =
            std::fs::read_to_string(path).map_err(|e| vec![format!("{}: {e}", path.display())])?;
        cfg.apply_text(&text).map_err(|errs| {
            errs.iter()
                .map(|e| format!("{}: {e}", path.display()))
                .collect::<Vec<_>>()
        })?;
    }
    let mut errors = Vec::new();
    let mut set = |key: &str, value: &str| {
        if let Err(m) = cfg.set(None, key, value) {
            errors.push(format!("--{key}: {m}"));
        }
    };
    let joined = |v: &[String]| v.join(",");
    if !a.realization.is_empty() {
        set("realizations", &joined(&a.realization));
    }
    if !a.mode.is_empty() {
        set("modes", &joined(&a.mode));
    }
    if !a.backend.is_empty() {
        set("backends", &joined(&a.backend));
    }
    if !a.q.is_empty() {
        set("q", &joined(&a.q));
    }
    for (key, value) in [
        ("dim", &a.dim),
        ("tolerance", &a.tol),
        ("seed", &a.seed),
        ("q_power", &a.q_power),
    ] {
        if let Some(v) = value {
            set(key, v);
        }
    }
    for p in &a.param {
        match p.split_once('=') {
            Some((k, v)) => set(k, v),
            None => set("param", p),
        }
    }
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(errors)
    }
}

fn verify(a: VerifyArgs) -> ExitCode {
    let cfg = match build_config(&a) {
        Ok(c) => c,
        Err(errs) => {
            for e in &errs {
                eprintln!("configuration error: {e}");
            }
            return ExitCode::from(2);
        }
    };
    let report = run_suite(&cfg);
    print!("{}", report.render(a.verbose));
    if let Some(path) = &a.json {
        if let Err(e) = std::fs::write(path, report.to_json() + "\n") {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn list(json: bool) -> ExitCode {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(catalog()).expect("catalog serializes")
        );
        return ExitCode::SUCCESS;
    }
    println!(
        "{:<10} {:>4}  {:<8} {:<13} {:<8} entries",
        "name", "osc", "mode", "backend", "shape"
    );
    for s in catalog() {
        println!(
            "{:<10} {:>4}  {:<8} {:<13} {:<8} {}",
            s.name,
            s.oscillators,
            s.expected_mode.name(),
            s.backend.name(),
            format!("{:?}", s.shape).to_lowercase(),
            s.source
        );
    }
    ExitCode::SUCCESS
}

fn parse_mode(s: &str) -> Result<AlgebraMode, Error> {
    AlgebraMode::from_name(s)
        .ok_or_else(|| Error::Parse(format!("unknown mode {s:?}; use generic or fock")))
}

fn explain(name: &str, mode: &str) -> Result<(), Error> {
    let mode = parse_mode(mode)?;
    let s = spec(name)?;
    let r = make_realization(name, mode)?;
    println!(
        "{} ({} oscillator(s), {} backend)",
        s.name,
        s.oscillators,
        s.backend.name()
    );
    println!("as printed: {}", s.source);
    println!("normal form in {} mode:", mode.name());
    print!("{r}");
    if let Some(t) = r.matrix() {
        let (det, _) = qboson_core::quantum_matrix::qdet(&t);
        println!("qdet = {det}");
    }
    if let Some(exp) = expected_qdet(name, mode)? {
        println!("stated qdet = {exp}");
    }
    Ok(())
}

fn dump(a: DumpArgs) -> ExitCode {
    let run = || -> Result<String, Error> {
        let mode = parse_mode(&a.mode)?;
        let q: Number = a.q.parse()?;
        let m = dump_matrix(
            &a.realization,
            &a.entry,
            mode,
            a.dim,
            &q,
            &Params::default(),
        )?;
        Ok(serde_json::to_string(&m).expect("matrix serializes"))
    };
    match run() {
        Ok(text) => match &a.json {
            Some(path) => match std::fs::write(path, text + "\n") {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => config_error(format!("cannot write {}: {e}", path.display())),
            },
            None => {
                println!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(e) => config_error(e),
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List { json } => list(json),
        Command::Verify(a) => verify(a),
        Command::DumpMatrix(a) => dump(a),
        Command::Explain { name, mode } => match explain(&name, &mode) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => config_error(e),
        },
    }
}
