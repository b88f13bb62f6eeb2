//! Command-line front end.
//!
//! Exit status: 0 when every request is certified, 1 when a result fails
//! certification, 2 on input or solver errors.

mod request;
mod run;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use hyperint::Caps;

use request::{parse_batch, Command, Request};
use run::{run, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "hyperint", version, about = "Integration and decomposition of hyperexponential functions and 1-forms")]
struct Cli {
    /// Algorithm to run (omit with --batch)
    #[arg(value_enum, required_unless_present = "batch")]
    command: Option<Command>,
    /// Inputs as `key=expr`, e.g. `omega='form(1/x1, 0)'`
    inputs: Vec<String>,
    /// Read `key = expr` lines from a file (`-` for stdin)
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Algebraic constant, e.g. `alpha: t^2-2`
    #[arg(long = "with", value_name = "DECL")]
    with: Option<String>,
    /// Number of variables x1..xn (default: inferred from the input form)
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=9))]
    vars: Option<u16>,
    /// Largest total degree of an ansatz numerator
    #[arg(long, default_value_t = Caps::default().max_num_degree, value_parser = clap::value_parser!(u32).range(0..=400))]
    max_num_degree: u32,
    /// Largest power of a candidate factor in an ansatz denominator
    #[arg(long, default_value_t = Caps::default().max_den_power, value_parser = clap::value_parser!(u32).range(0..=64))]
    max_den_power: u32,
    /// Largest splitting-field degree
    #[arg(long, default_value_t = Caps::default().field_cap as u32, value_parser = clap::value_parser!(u32).range(1..=720))]
    field_cap: u32,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run every `[command]` section of a file, independently and in parallel
    #[arg(long, conflicts_with_all = ["command", "input", "with"])]
    batch: Option<PathBuf>,
}

fn read(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn requests(cli: &Cli) -> Result<Vec<Request>, String> {
    if let Some(b) = &cli.batch {
        return parse_batch(&read(b)?);
    }
    let mut r = Request::new(cli.command.expect("clap enforces a command"));
    if let Some(p) = &cli.input {
        r.add_text(&read(p)?)?;
    }
    for a in &cli.inputs {
        r.add_assignment(a)?;
    }
    if let Some(d) = &cli.with {
        r.with = Some(d.clone());
    }
    Ok(vec![r])
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = Caps { max_den_power: cli.max_den_power, max_num_degree: cli.max_num_degree, field_cap: cli.field_cap as usize };
    let reqs = match requests(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let vars = cli.vars.map(usize::from);
    let timed = |r: &Request| {
        let t = Instant::now();
        let rep = run(r, &caps, vars);
        (rep, t.elapsed())
    };
    let results: Vec<(Report, std::time::Duration)> = if reqs.len() == 1 {
        vec![timed(&reqs[0])]
    } else {
        std::thread::scope(|s| {
            let hs: Vec<_> = reqs.iter().map(|r| s.spawn(move || timed(r))).collect();
            hs.into_iter().map(|h| h.join().expect("request thread panicked")).collect()
        })
    };
    for (i, (rep, t)) in results.iter().enumerate() {
        eprintln!("time [{}] {}: {:.3?}", i + 1, rep.command, t);
    }
    match cli.format {
        Format::Text => {
            let texts: Vec<String> = results.iter().map(|(r, _)| r.to_text()).collect();
            print!("{}", texts.join("\n"));
        }
        Format::Json => {
            let docs: Vec<_> = results.iter().map(|(r, _)| r.to_json()).collect();
            let v = if cli.batch.is_some() { serde_json::Value::Array(docs) } else { docs.into_iter().next().unwrap() };
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
        }
    }
    let reports = results.iter().map(|(r, _)| r);
    if reports.clone().any(|r| r.error.is_some()) {
        ExitCode::from(2)
    } else if reports.clone().all(|r| r.certified) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
