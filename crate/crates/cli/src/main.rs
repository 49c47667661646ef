//! `cr-lab`: exact verification reports for CR geometry on the 3-sphere.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cr_lab::StandardOp;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "cr-lab", version, about = "Exact checks of Kohn, Paneitz and deformation identities on S^3")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Also print decimal approximations (non-authoritative).
    #[arg(long, global = true)]
    approx: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Kohn,
    ConjKohn,
    Sublap,
    Paneitz,
}

impl From<OpArg> for StandardOp {
    fn from(o: OpArg) -> Self {
        match o {
            OpArg::Kohn => StandardOp::Kohn,
            OpArg::ConjKohn => StandardOp::ConjKohn,
            OpArg::Sublap => StandardOp::Sublap,
            OpArg::Paneitz => StandardOp::Paneitz,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues of the standard operators on H(p,q) against their closed forms.
    Spectrum {
        #[arg(long, default_value_t = 4)]
        pmax: u32,
        #[arg(long, default_value_t = 4)]
        qmax: u32,
        /// Operator to tabulate; all four when omitted.
        #[arg(long, value_enum)]
        op: Option<OpArg>,
    },
    /// Harmonic decomposition of phi and the embeddability verdict.
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// Torsion of the structure deformed by phi, optionally at a rational t.
    Torsion {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Webster curvature and torsion of the Rossi structure.
    Rossi {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Residual of the Bochner formula for phi.
    Bochner {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
    },
    /// First or second variation of the Paneitz operator as a Hermitian form.
    Variation {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        order: u8,
        #[arg(long, default_value_t = 4)]
        pmax: u32,
    },
    /// Exact integral of an expression over the sphere.
    Integrate {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("CR_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("CR_LAB_THREADS must be an integer >= 1, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn shell_word(s: &str) -> String {
    if !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "-_./^=+*,".contains(c)) {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\'', r"'\''"))
    }
}

fn run(cmd: &Command) -> commands::Result<Vec<report::Record>> {
    match cmd {
        Command::Spectrum { pmax, qmax, op } => {
            let ops: Vec<StandardOp> = match op {
                Some(o) => vec![(*o).into()],
                None => StandardOp::ALL.to_vec(),
            };
            commands::spectrum(*pmax, *qmax, &ops)
        }
        Command::Decompose { phi } => commands::decompose(phi),
        Command::Torsion { phi, t } => commands::torsion_cmd(phi, t.as_deref()),
        Command::Rossi { t } => commands::rossi_cmd(t),
        Command::Bochner { phi } => commands::bochner(phi),
        Command::Variation { phi, order, pmax } => commands::variation(phi, *order, *pmax),
        Command::Integrate { expr } => commands::integrate_cmd(expr),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let echo = std::env::args().skip(1).map(|a| shell_word(&a)).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    let records = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let report = Report::new(echo, records, cli.approx, elapsed_ms);
    let out = match cli.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    print!("{out}");
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed checks: {}", report.failures.join(", "));
        ExitCode::from(1)
    }
}
