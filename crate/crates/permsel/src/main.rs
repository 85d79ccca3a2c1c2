//! Thin command-line front end over the `permsel` library: each subcommand
//! builds one report payload and writes it as JSON or CSV. All computations
//! are deterministic; rerunning with identical flags reproduces the output
//! byte for byte.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use permsel::bell::EnsembleMode;
use permsel::report::{
    BellReport, DecomposeReport, DemosReport, EntanglementCliReport, EntanglementMode,
    ErrorReport, RecoverReport, RefframeReport, Report,
};
use permsel::{Error, Result};

#[derive(Parser)]
#[command(
    name = "permsel",
    about = "Bipartite entanglement, reference frames, and Bell tests under \
             the symmetric-group superselection rule",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Reserved for forward compatibility; every computation is
    /// deterministic and ignores it.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum EntMode {
    #[default]
    Closed,
    Brute,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum BellMode {
    #[default]
    Exact,
    Approx,
}

#[derive(Subcommand)]
enum Command {
    /// Total-spin sector decomposition of N spin-1/2 molecules.
    Decompose {
        /// Number of molecules.
        #[arg(long)]
        n: usize,
    },
    /// Constrained entanglement of N shared pairs α|↑↓⟩ + β|↓↑⟩.
    Entanglement {
        /// Number of shared pairs.
        #[arg(long)]
        n: usize,
        /// Weight α² of the |↑↓⟩ branch.
        #[arg(long)]
        alpha_sq: f64,
        /// Closed-form sector sum or explicit twirl-and-decompose.
        #[arg(long, value_enum, default_value_t)]
        mode: EntMode,
    },
    /// Entanglement recovered from C copies of a perfect Bell pair.
    Recover {
        /// Largest copy count tabulated.
        #[arg(long)]
        c_max: u32,
    },
    /// Gram diagnostics of the permutation reference frame for local
    /// dimension d.
    Refframe {
        /// Number of molecules.
        #[arg(long)]
        n: usize,
        /// Local dimension carried by each molecule.
        #[arg(long)]
        d: usize,
    },
    /// Activation, distillation, and shared-frame PPT demonstrations.
    Demos,
    /// Bell-violation scan for an ensemble of 2J singlets.
    Bell {
        /// Spin bound J (N = 2J pairs).
        #[arg(long)]
        big_j: f64,
        /// Number of θ grid points over (0, π/2].
        #[arg(long, default_value_t = 400)]
        grid: usize,
        /// Which quantity defines the reported window and depth.
        #[arg(long, value_enum, default_value_t)]
        mode: BellMode,
    },
}

fn pick<R: Report>(format: Format, report: &R) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

fn render(cli: &Cli) -> Result<String> {
    let f = cli.format;
    Ok(match &cli.command {
        Command::Decompose { n } => pick(f, &DecomposeReport::new(*n)?),
        Command::Entanglement { n, alpha_sq, mode } => {
            let mode = match mode {
                EntMode::Closed => EntanglementMode::Closed,
                EntMode::Brute => EntanglementMode::Brute,
            };
            pick(f, &EntanglementCliReport::new(*n, *alpha_sq, mode)?)
        }
        Command::Recover { c_max } => pick(f, &RecoverReport::new(*c_max)?),
        Command::Refframe { n, d } => pick(f, &RefframeReport::new(*n, *d)?),
        Command::Demos => pick(f, &DemosReport::new()?),
        Command::Bell { big_j, grid, mode } => {
            let mode = match mode {
                BellMode::Exact => EnsembleMode::Exact,
                BellMode::Approx => EnsembleMode::Approx,
            };
            pick(f, &BellReport::new(*big_j, *grid, mode)?)
        }
    })
}

fn write_out(path: Option<&PathBuf>, payload: &str) -> Result<()> {
    match path {
        None => {
            std::io::stdout()
                .write_all(payload.as_bytes())
                .map_err(|e| Error::Validation(format!("cannot write to stdout: {e}")))
        }
        Some(p) => std::fs::write(p, payload)
            .map_err(|e| Error::Validation(format!("cannot write {}: {e}", p.display()))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match render(&cli).and_then(|payload| write_out(cli.output.as_ref(), &payload)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let report = ErrorReport::new(&err);
            eprintln!("{}", report.to_json_line());
            ExitCode::from(report.exit_code() as u8)
        }
    }
}
