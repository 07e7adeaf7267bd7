use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spinlab::registry::CHECKS;
use spinlab::report::{self, Format};
use spinlab::runner::{self, RunOptions, EXIT_CONFIG};
use spinlab::scenario::Scenario;
use spinlab::space_forms::StructurePairing;

#[derive(Parser)]
#[command(name = "spinlab", version, about = "Residual checks for spin^c hypersurface geometry")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    AntiFirst,
    AntiSecond,
}

impl From<PairingArg> for StructurePairing {
    fn from(p: PairingArg) -> Self {
        match p {
            PairingArg::AntiFirst => StructurePairing::AntiFirst,
            PairingArg::AntiSecond => StructurePairing::AntiSecond,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario file.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the scenario seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Which factor carries the anti-canonical structure in the second spin^c structure.
        #[arg(long, value_enum)]
        structure_pairing: Option<PairingArg>,
    },
    /// Run every built-in scenario.
    Catalog {
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "anti-first")]
        structure_pairing: PairingArg,
    },
    /// List check identifiers, default tolerances and anchors.
    ListChecks,
}

fn write_out(text: &str, out: Option<&PathBuf>) -> spinlab::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> spinlab::Result<i32> {
    match cli.command {
        Command::Run { scenario, format, out, seed, structure_pairing } => {
            let mut sc = Scenario::load(&scenario)?;
            if let Some(s) = seed {
                sc.seed = s;
            }
            if let Some(p) = structure_pairing {
                sc.pairing = p.into();
            }
            let rep = runner::run_scenario(&sc, RunOptions::from_env()?)?;
            write_out(&report::render(&rep, format.into())?, out.as_ref())?;
            Ok(runner::exit_code(std::slice::from_ref(&rep)))
        }
        Command::Catalog { format, out, structure_pairing } => {
            let reps = runner::run_catalog(RunOptions::from_env()?, structure_pairing.into())?;
            let text = match Format::from(format) {
                Format::Json => serde_json::to_string_pretty(&reps)? + "\n",
                Format::Csv => {
                    let mut s = String::new();
                    for (i, r) in reps.iter().enumerate() {
                        let body = report::to_csv(r);
                        s.push_str(if i == 0 { &body } else { body.split_once('\n').map_or("", |x| x.1) });
                    }
                    s
                }
                Format::Text => reps.iter().map(report::to_text).collect::<Vec<_>>().join("\n"),
            };
            write_out(&text, out.as_ref())?;
            Ok(runner::exit_code(&reps))
        }
        Command::ListChecks => {
            let mut s = String::new();
            for c in CHECKS {
                s.push_str(&format!("{:<26} {:>8.1e}  {}\n", c.id, c.tolerance, c.anchor));
            }
            write_out(&s, None)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("spinlab: {e}");
            ExitCode::from(EXIT_CONFIG as u8)
        }
    }
}
