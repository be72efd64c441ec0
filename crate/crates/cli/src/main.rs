use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::json;

use rtorsion::commands::{self, Command};
use rtorsion::document::InputDocument;
use rtorsion::fixtures;
use rtorsion::selftest::{self, Fault};
use rtorsion::Error;

/// Exact sign-refined torsion computations on simplicial and CW complexes.
///
/// Reports are JSON on stdout (or `--output`). Exit status: 0 on success or
/// pass, 1 when a verification fails, 2 on invalid input or unmet hypotheses.
#[derive(Parser, Debug)]
#[command(name = "rtorsion", version)]
struct Args {
    /// Command to run (also accepted as `--command`).
    #[arg(value_name = "COMMAND")]
    command_pos: Option<String>,

    /// Theorem id for `verify`: 6.2, 6.4, 7.1, 7.2, 9.4, 4.4 or 11.2.
    #[arg(value_name = "THEOREM")]
    theorem: Option<String>,

    #[arg(long, value_name = "NAME", conflicts_with = "command_pos")]
    command: Option<String>,

    /// Input document (JSON).
    #[arg(long, value_name = "FILE", conflicts_with = "fixture")]
    input: Option<PathBuf>,

    /// Bundled fixture name, or `circle:<n>:<t>`.
    #[arg(long, value_name = "NAME")]
    fixture: Option<String>,

    /// Seed for the randomized suites of `selftest`.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Replace the Euler offset by this multiple of the document's loop.
    #[arg(long, allow_hyphen_values = true)]
    offset: Option<i64>,

    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Instances per randomized suite.
    #[arg(long, default_value_t = 1000)]
    instances: usize,

    /// Deliberately break one sign in the randomized suites.
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,

    /// List the bundled fixtures and exit.
    #[arg(long)]
    list_fixtures: bool,

    /// Write every bundled fixture as a JSON document into this directory.
    #[arg(long, value_name = "DIR")]
    write_fixtures: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FaultArg {
    FusionSign,
    DualitySign,
}

impl From<FaultArg> for Fault {
    fn from(f: FaultArg) -> Fault {
        match f {
            FaultArg::FusionSign => Fault::FusionSign,
            FaultArg::DualitySign => Fault::DualitySign,
        }
    }
}

enum Failure {
    Input(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Internal(_) => Failure::Math(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn load(args: &Args) -> Result<InputDocument, Failure> {
    match (&args.input, &args.fixture) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(InputDocument::from_json(&text)?)
        }
        (None, Some(name)) => Ok(fixtures::fixture(name)?),
        (None, None) => Err(Failure::Input("no document: pass --input <file> or --fixture <name>".into())),
    }
}

fn emit(args: &Args, text: &str) -> Result<(), Failure> {
    match &args.output {
        Some(path) => fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => match writeln!(io::stdout().lock(), "{text}") {
            Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Input(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn write_fixtures(dir: &PathBuf) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    for (name, _) in fixtures::NAMES {
        let doc = fixtures::fixture(name)?;
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, format!("{}\n", doc.to_json())).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn main_inner(args: &Args) -> Result<bool, Failure> {
    if args.list_fixtures {
        let list: Vec<_> = fixtures::NAMES.iter().map(|(n, d)| json!({ "name": n, "description": d })).collect();
        emit(args, &serde_json::to_string_pretty(&list).expect("json"))?;
        return Ok(true);
    }
    if let Some(dir) = &args.write_fixtures {
        write_fixtures(dir)?;
        return Ok(true);
    }
    let name = args
        .command
        .as_deref()
        .or(args.command_pos.as_deref())
        .ok_or_else(|| Failure::Input(format!("no command given; expected one of {}", Command::names().join(", "))))?;
    let cmd = Command::parse(name, args.theorem.as_deref())?;
    let outcome = if cmd == Command::Selftest {
        let cfg = selftest::Config { seed: args.seed, instances: args.instances, fault: args.inject_fault.map(Into::into) };
        commands::selftest_report(&cfg)?
    } else {
        commands::run(cmd, &load(args)?, args.offset)?
    };
    emit(args, &serde_json::to_string_pretty(&outcome.report).expect("json"))?;
    Ok(outcome.pass.unwrap_or(true))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match main_inner(&args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Input(m) => (2, "input", m),
                Failure::Math(m) => (1, "internal", m),
            };
            let report = json!({ "error": { "kind": kind, "message": msg } });
            println!("{}", serde_json::to_string_pretty(&report).expect("json"));
            eprintln!("rtorsion: {msg}");
            ExitCode::from(code)
        }
    }
}
