mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CommandError;
use crate::report::Verdict;

/// Exact spectra of parity-restricted Strichartz quadratic forms.
#[derive(Debug, Parser)]
#[command(name = "strichartz", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock time in the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

/// A parity class, or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KSel {
    All,
    One(usize),
}

impl KSel {
    pub fn classes(self, max: usize) -> Vec<usize> {
        match self {
            KSel::All => (0..=max).collect(),
            KSel::One(k) => vec![k],
        }
    }
}

fn parse_ksel(s: &str) -> Result<KSel, String> {
    if s == "all" {
        return Ok(KSel::All);
    }
    s.parse().map(KSel::One).map_err(|_| format!("expected an integer or `all`, got `{s}`"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues lambda_{d,kappa,n} for n <= max-n.
    Spectra {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, value_parser = parse_ksel, default_value = "all")]
        k: KSel,
        #[arg(long, default_value_t = 20)]
        max_n: usize,
    },
    /// Certified largest and second-largest eigenvalue in dimension three.
    Certify {
        #[arg(long, value_parser = parse_ksel, default_value = "all")]
        k: KSel,
        #[arg(long, default_value_t = strichartz_core::spectrum::DEFAULT_CUTOFF)]
        cutoff: usize,
    },
    /// Search for coefficients of G_kappa equal to 1/4.
    QuarterSearch {
        #[arg(long, value_parser = parse_ksel, default_value = "all")]
        k: KSel,
        #[arg(long, default_value_t = 100_000)]
        max_n: usize,
    },
    /// The first COUNT nonzero coefficients of G_0 and G_1, plot-ready.
    Figure1 {
        #[arg(long, default_value_t = 501)]
        count: usize,
    },
    /// Harmonic eigenvector polynomial P_{d,kappa,n}.
    Eigenvector {
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Test a three-variable series for specialness.
    SpecialCheck {
        /// Sparse series file (`order: N` header, then `a b c p/q` lines).
        file: Option<PathBuf>,
        /// Built-in series instead of a file: identity, f0, f1, f2, f3.
        #[arg(long, conflicts_with = "file")]
        builtin: Option<String>,
        /// Truncation order for built-in series.
        #[arg(long, default_value_t = 12)]
        order: usize,
        /// Print the two-variable image H in sparse format as well.
        #[arg(long)]
        emit_h: bool,
    },
    /// Compare the Gram matrices with the closed eigenvalues e_n.
    BridgeVerify {
        #[arg(long, value_parser = parse_ksel, default_value = "all")]
        k: KSel,
        #[arg(long, default_value_t = 4)]
        s_max: usize,
    },
    /// Numerical checks against explicit Schrodinger solutions.
    Oracle {
        #[arg(value_enum)]
        check: OracleCheck,
        /// Relative tolerance (absolute for the kernel check).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the acceptance suite.
    Selftest {
        /// Only these criteria (1..=11).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleCheck {
    Strichartz,
    Qform,
    Kernel,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let start = Instant::now();
    let mut report = match commands::run(&cli.command) {
        Ok(r) => r,
        Err(CommandError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `strichartz --help` for usage");
            return ExitCode::from(2);
        }
        Err(CommandError::Failed(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    if cli.global.timing {
        report.timing_secs = Some(start.elapsed().as_secs_f64());
    }
    let text = match cli.global.format {
        Format::Text => report.render_text(),
        Format::Csv => report.render_csv(),
        Format::Json => report.render_json(),
    };
    print!("{text}");
    if cli.global.format == Format::Csv {
        eprintln!("verdict: {}", report.verdict.as_str());
    }
    if let Some(path) = &cli.global.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    match report.verdict {
        Verdict::Pass => ExitCode::SUCCESS,
        _ => ExitCode::from(1),
    }
}
