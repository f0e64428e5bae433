//! The `qdeform` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 configuration error,
//! 3 I/O error.

mod commands;
mod table;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::QError;
use crate::fockspace::{FockRealization, DEFAULT_DIM};
use crate::qcore::{Mode, QParam};

pub use table::{fmt_f64, Cell, Table};

#[derive(Parser, Debug)]
#[command(name = "qdeform", version, about = "q-deformed oscillator calculus: tables and identity checks")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// ⟨n⟩, [n] and [n]! for a range of n.
    Qnum {
        #[arg(long, default_value_t = 0)]
        from: i64,
        #[arg(long, default_value_t = 10)]
        to: i64,
    },
    /// Run identity suites: all, core, algebra, fock, ground, fourier, delta.
    Verify {
        #[arg(default_value = "all")]
        selector: String,
    },
    /// Fock energies ½(amp(n)² + amp(n+1)²) for n < N.
    Spectrum,
    /// Ground-state product on a lattice with its equation residual.
    Ground,
    /// Position-space image of the momentum ground state.
    Transform,
    /// |δ_q(x, 0)| profile with the classical 2 sin(Px)/x column.
    Delta,
    /// Uncertainty products in the Fock states.
    Uncertainty,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Float,
    Exact,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RealizationArg {
    Asym,
    Sym,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(clap::Args, Debug, Clone, Serialize)]
pub struct RunConfig {
    /// Deformation parameter, 0 < q < 1.
    #[arg(long, global = true, default_value_t = 0.9, allow_negative_numbers = true)]
    pub q: f64,
    /// Exact keeps q symbolic; only qnum, spectrum and verify support it.
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Float)]
    pub mode: ModeArg,
    /// Fock-space dimension.
    #[arg(long = "N", global = true, default_value_t = DEFAULT_DIM)]
    pub n: usize,
    /// Coupling ratio α⁻¹β.
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Lattice anchor: points are ±x0·q^k.
    #[arg(long, global = true, default_value_t = 1.0, allow_negative_numbers = true)]
    pub x0: f64,
    /// Outermost lattice shell.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub kmin: Option<i32>,
    /// Innermost lattice shell.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub kmax: Option<i32>,
    /// Ladder amplitudes √⟨n⟩ (asym) or √[n] (sym).
    #[arg(long, global = true, value_enum, default_value_t = RealizationArg::Asym)]
    pub realization: RealizationArg,
    /// Cutoff P = q^(-m) for the delta profile.
    #[arg(long = "P-exponent", global = true, default_value_t = 8, allow_negative_numbers = true)]
    pub p_exponent: i32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        QParam::numeric(self.q)?;
        if self.n < 2 {
            return Err(CliError::Config(format!("N must be at least 2, got {}", self.n)));
        }
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return Err(CliError::Config(format!("lambda must be non-negative, got {}", self.lambda)));
        }
        if !(self.x0.is_finite() && self.x0 > 0.0) {
            return Err(CliError::Config(format!("x0 must be positive, got {}", self.x0)));
        }
        if let (Some(a), Some(b)) = (self.kmin, self.kmax) {
            if a > b {
                return Err(CliError::Config(format!("kmin {a} exceeds kmax {b}")));
            }
        }
        Ok(())
    }

    pub fn mode(&self) -> Mode {
        match self.mode {
            ModeArg::Float => Mode::Float,
            ModeArg::Exact => Mode::Exact,
        }
    }

    pub fn qparam(&self) -> QParam {
        match self.mode {
            ModeArg::Float => QParam::Numeric(self.q),
            ModeArg::Exact => QParam::Formal,
        }
    }

    pub fn realization(&self) -> FockRealization {
        match self.realization {
            RealizationArg::Asym => FockRealization::Asym,
            RealizationArg::Sym => FockRealization::Sym,
        }
    }

    /// The config echo written as the first CSV line.
    pub fn echo(&self, command: &str) -> String {
        let opt = |v: Option<i32>| v.map_or("default".to_string(), |k| k.to_string());
        format!(
            "qdeform {command} q={} mode={} N={} lambda={} x0={} kmin={} kmax={} realization={} P-exponent={} hbar=1 (dimensionless units)",
            self.q,
            self.mode(),
            self.n,
            self.lambda,
            self.x0,
            opt(self.kmin),
            opt(self.kmax),
            self.realization(),
            self.p_exponent,
        )
    }
}

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(io::Error),
    /// Asserted checks failed; the report has been written.
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "I/O error: {e}"),
            CliError::VerifyFailed(n) => write!(f, "{n} check(s) failed"),
        }
    }
}

impl From<QError> for CliError {
    fn from(e: QError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Output produced by a subcommand.
pub enum Output {
    Table(Table),
    /// Plain text in CSV mode, JSON otherwise.
    Report { text: String, json: serde_json::Value, failed: usize },
}

pub fn write_output(cli: &Cli, name: &str, output: &Output) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match &cli.config.out {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    let config = serde_json::to_value(&cli.config).expect("config serializes");
    match (output, cli.config.format) {
        (Output::Table(t), Format::Csv) => t.write_csv(&cli.config.echo(name), &mut sink)?,
        (Output::Table(t), Format::Json) => {
            serde_json::to_writer_pretty(&mut sink, &t.to_json(name, config)).map_err(io::Error::from)?;
            writeln!(sink)?;
        }
        (Output::Report { text, .. }, Format::Csv) => {
            writeln!(sink, "# {}", cli.config.echo(name))?;
            writeln!(sink, "{text}")?;
        }
        (Output::Report { json, .. }, Format::Json) => {
            serde_json::to_writer_pretty(&mut sink, json).map_err(io::Error::from)?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    cli.config.validate()?;
    let (name, output) = commands::dispatch(&cli.command, &cli.config)?;
    write_output(cli, name, &output)?;
    match output {
        Output::Report { failed, .. } if failed > 0 => Err(CliError::VerifyFailed(failed)),
        _ => Ok(()),
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed pipe downstream is not our failure
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdeform: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("qdeform").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn global_flags_after_the_subcommand() {
        let cli = parse(&["ground", "--q", "0.5", "--kmin", "-3", "--realization", "sym"]);
        assert_eq!(cli.config.q, 0.5);
        assert_eq!(cli.config.kmin, Some(-3));
        assert_eq!(cli.config.realization(), FockRealization::Sym);
        assert!(cli.config.validate().is_ok());
    }

    #[test]
    fn bad_configs_map_to_exit_two() {
        for args in [&["--q", "1.0", "qnum"][..], &["--N", "1", "qnum"], &["--lambda", "-1", "qnum"], &["--kmin", "3", "--kmax", "1", "ground"]] {
            let err = parse(args).config.validate().unwrap_err();
            assert_eq!(err.exit_code(), 2, "{args:?}");
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::VerifyFailed(3).exit_code(), 1);
        assert_eq!(CliError::Io(io::Error::other("x")).exit_code(), 3);
        assert_eq!(CliError::from(QError::Domain("x".into())).exit_code(), 2);
    }

    #[test]
    fn echo_names_the_config() {
        let cli = parse(&["--mode", "exact", "qnum"]);
        let echo = cli.config.echo("qnum");
        assert!(echo.starts_with("qdeform qnum q=0.9 mode=exact N=40"), "{echo}");
    }
}
