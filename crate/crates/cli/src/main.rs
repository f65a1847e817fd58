use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ercd_cli::{
    check_out_dir, cmd_charges, cmd_poincare, cmd_verify_algebra, cmd_verify_duality, init_threads, CliError,
    OrderingChoice, Report, RunConfig,
};

#[derive(Parser)]
#[command(name = "ercd", version, about = "Verify the extended real Clifford-Dirac algebra and Fermi-Bose duality")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gamma orts, SO(8), ort rank, SO(6) FW invariance, W conjugation, breve spin.
    VerifyAlgebra(Flags),
    /// FW link, solution families, duality commuting square, U matrices, RK4 oracle.
    VerifyDuality(Flags),
    /// Spin conservation sweeps and the conservation-law bookkeeping table.
    Charges(Flags),
    /// Poincaré generators: FW commutation, algebra, Casimirs, refinement.
    Poincare(Flags),
}

#[derive(Args, Clone, Default)]
struct Flags {
    /// Flat JSON config; flags given here override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Run only the named suite (repeatable).
    #[arg(long = "suite")]
    suites: Vec<String>,
    /// Comma-separated evolution times.
    #[arg(long, value_delimiter = ',')]
    times: Option<Vec<f64>>,
    #[arg(long)]
    refine: Option<usize>,
    #[arg(long)]
    ordering: Option<OrderingChoice>,
    /// `random`, `single:k=0` or `single:k=x,y,z`.
    #[arg(long)]
    modes: Option<String>,
    /// Number of random amplitude sets.
    #[arg(long)]
    sets: Option<usize>,
    /// Nodes per axis (odd).
    #[arg(long)]
    count: Option<usize>,
    #[arg(long)]
    dk: Option<f64>,
    #[arg(long)]
    mass: Option<f64>,
    #[arg(long)]
    tau_alg: Option<f64>,
    #[arg(long)]
    tau_prop: Option<f64>,
    #[arg(long)]
    tau_unitary: Option<f64>,
    #[arg(long)]
    tau_cons: Option<f64>,
    #[arg(long)]
    tau_spec: Option<f64>,
    #[arg(long)]
    tau_exact: Option<f64>,
}

impl Flags {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        macro_rules! set {
            ($($f:ident),*) => {$(if let Some(v) = self.$f { cfg.$f = v; })*};
        }
        set!(seed, times, refine, ordering, modes, mass, tau_alg, tau_prop, tau_unitary, tau_cons, tau_spec, tau_exact);
        if self.out.is_some() {
            cfg.out = self.out;
        }
        if !self.suites.is_empty() {
            cfg.suites = self.suites;
        }
        if self.sets.is_some() {
            cfg.sets = self.sets;
        }
        if let Some(n) = self.count {
            cfg.counts = Some([n; 3]);
        }
        if self.dk.is_some() {
            cfg.dk = self.dk;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

type CommandFn = fn(&RunConfig) -> Result<Report, CliError>;

fn run(cli: Cli) -> Result<Report, CliError> {
    init_threads()?;
    let (flags, cmd): (Flags, CommandFn) = match cli.command {
        Command::VerifyAlgebra(f) => (f, cmd_verify_algebra),
        Command::VerifyDuality(f) => (f, cmd_verify_duality),
        Command::Charges(f) => (f, cmd_charges),
        Command::Poincare(f) => (f, cmd_poincare),
    };
    let cfg = flags.resolve()?;
    check_out_dir(&cfg)?;
    let report = cmd(&cfg)?;
    report.write()?;
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            if report.config.out.is_none() {
                match report.to_json() {
                    Ok(s) => println!("{s}"),
                    Err(e) => {
                        eprintln!("ercd: {e}");
                        return ExitCode::from(2);
                    }
                }
            }
            for s in &report.suites {
                eprintln!(
                    "{:<16} {} ({} checks, {} failed, max residual {:.3e})",
                    s.name,
                    if s.pass { "pass" } else { "FAIL" },
                    s.summary.checks,
                    s.summary.failed,
                    s.summary.max_residual
                );
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("ercd: {e}");
            ExitCode::from(2)
        }
    }
}
