use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use poisson_forge::{fixtures, run, seed_from_env, CliError, CliResult, Command, Report, Session, SpecFile, Workspace};

/// Exact checks of Lie bialgebras, Poisson-Lie groups, momentum maps, Hopf algebras and
/// quantum actions declared in JSON spec files.
#[derive(Parser)]
#[command(name = "poisson-forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Jacobi, cocycle, dual, Yang-Baxter and double checks for each cobracket.
    CheckBialgebra(Opts),
    /// Poisson-Lie bivector from an r-matrix, table comparison, multiplicativity, Casimirs.
    PoissonGroup(Opts),
    /// Jacobi identity and Casimirs of polynomial bivectors.
    CheckPoisson(Opts),
    /// Classical and infinitesimal momentum maps, Maurer-Cartan forms, dressing fields.
    CheckMm(Opts),
    /// Hopf axioms, Δ-homomorphism, co-Poisson compatibility and stated relations.
    CheckHopf(Opts),
    /// Quantum actions: relations, module-algebra, Lie relations and stated brackets.
    CheckAction(Opts),
    /// Classical Poisson reduction by an ideal.
    Reduce(Opts),
    /// Quantum reduction: ideal invariance and invariant subalgebras.
    Qreduce(Opts),
}

#[derive(Args)]
struct Opts {
    /// JSON spec file; merged with the fixtures when --fixtures is given.
    spec: Option<PathBuf>,
    /// Run only the entry with this name.
    #[arg(long)]
    name: Option<String>,
    /// ħ truncation order.
    #[arg(long, default_value_t = 6)]
    order: usize,
    /// Monomial degree bound.
    #[arg(long, default_value_t = 3)]
    degree: usize,
    /// Include the shipped fixtures.
    #[arg(long)]
    fixtures: bool,
    /// Write the report as JSON lines to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Record per-entry runtimes in the report.
    #[arg(long)]
    timings: bool,
}

fn load(o: &Opts) -> CliResult<SpecFile> {
    let mut spec = if o.fixtures { fixtures::spec()? } else { SpecFile::default() };
    match &o.spec {
        Some(p) => spec.merge(SpecFile::parse(&std::fs::read_to_string(p)?)?)?,
        None if !o.fixtures => return Err(CliError::Input("give a spec file or --fixtures".into())),
        None => {}
    }
    Ok(spec)
}

fn execute(cmd: Command, o: &Opts) -> CliResult<Report> {
    if o.order == 0 {
        return Err(CliError::Input("--order must be at least 1".into()));
    }
    let session = Session { order: o.order, degree: o.degree, seed: seed_from_env()? };
    let ws = Workspace::new(load(o)?, session);
    let report = run(&ws, cmd, o.name.as_deref(), o.timings)?;
    if let Some(p) = &o.json {
        std::fs::write(p, report.to_jsonl())?;
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (cmd, opts) = match &cli.command {
        Cmd::CheckBialgebra(o) => (Command::CheckBialgebra, o),
        Cmd::PoissonGroup(o) => (Command::PoissonGroup, o),
        Cmd::CheckPoisson(o) => (Command::CheckPoisson, o),
        Cmd::CheckMm(o) => (Command::CheckMm, o),
        Cmd::CheckHopf(o) => (Command::CheckHopf, o),
        Cmd::CheckAction(o) => (Command::CheckAction, o),
        Cmd::Reduce(o) => (Command::Reduce, o),
        Cmd::Qreduce(o) => (Command::Qreduce, o),
    };
    match execute(cmd, opts) {
        Ok(r) => {
            print!("{}", r.summary());
            ExitCode::from(r.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
