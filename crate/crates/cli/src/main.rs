use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use sftgroup_cli::{emit_report, parse_job_value, run_job, CliError, Command, OutputFormat};

#[derive(Parser)]
#[command(name = "sftgroup", version, about = "Finite group actions on shifts of finite type")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
    /// Job document (JSON); standard input when omitted or "-".
    #[arg(long, global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Enumeration cap for brute-force counts.
    #[arg(long, global = true, value_name = "N")]
    cap: Option<usize>,
    /// Size limit for group closures and homomorphism searches.
    #[arg(long, global = true, value_name = "N")]
    limit: Option<usize>,
    /// Largest period or sequence index to compute.
    #[arg(long = "max-n", global = true, value_name = "N")]
    max_n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Subcommand)]
enum Sub {
    /// Right and left reduced shifts of an action.
    Reduce,
    /// Zeta polynomial, Bowen-Franks group and traces.
    Invariants,
    /// Constant-to-one or nonexpansive quotient.
    Classify,
    /// Nonexpansivity witness points and windows.
    Witness,
    /// Orbit counts of periodic points via Burnside's lemma.
    Burnside,
    /// Periodic point counts of the quotient.
    QuotientCounts,
    /// Check a strong shift equivalence certificate.
    VerifySse,
    /// Carry splittings or a block recoding to the reduced shifts.
    Transport,
    /// Apply action-compatible state splittings.
    Split,
    /// Representation shift of HNN data or a preset.
    Repshift,
    /// Reduced matrix of the conjugation action on a representation shift.
    Tqft,
    /// Flat bundle counts over cyclic branched covers.
    BundleCounts,
}

impl Sub {
    fn command(self) -> Command {
        match self {
            Sub::Reduce => Command::Reduce,
            Sub::Invariants => Command::Invariants,
            Sub::Classify => Command::Classify,
            Sub::Witness => Command::Witness,
            Sub::Burnside => Command::Burnside,
            Sub::QuotientCounts => Command::QuotientCounts,
            Sub::VerifySse => Command::VerifySse,
            Sub::Transport => Command::Transport,
            Sub::Split => Command::Split,
            Sub::Repshift => Command::Repshift,
            Sub::Tqft => Command::Tqft,
            Sub::BundleCounts => Command::BundleCounts,
        }
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => text = std::fs::read_to_string(p)?,
        _ => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let text = read_input(&cli.input)?;
    let mut doc: Value = if text.trim().is_empty() {
        Value::Object(Default::default())
    } else {
        serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed document: {e}")))?
    };
    let command = cli.command.command();
    let obj = doc.as_object_mut().ok_or_else(|| CliError::Input("$: expected an object".into()))?;
    match obj.get("command").and_then(Value::as_str) {
        Some(c) if c != command.as_str() => {
            return Err(CliError::Input(format!(
                "command: document says {c:?} but {command:?} was requested",
                command = command.as_str()
            )));
        }
        _ => {
            obj.insert("command".into(), command.as_str().into());
        }
    }
    let mut job = parse_job_value(&doc)?;
    job.cap = cli.cap.or(job.cap);
    job.limit = cli.limit.or(job.limit);
    job.max_n = cli.max_n.or(job.max_n);
    let report = run_job(&job)?;
    let format = match cli.format {
        Format::Json => OutputFormat::Json,
        Format::Text => OutputFormat::Text,
    };
    Ok(emit_report(&report, format))
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
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("sftgroup: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
