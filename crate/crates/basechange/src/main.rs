//! Command-line driver: validate instance files, construct derived
//! structures, run theorem-check suites, and render reports.
//!
//! Exit codes: 0 when everything passes, 1 on a law failure, 2 on a
//! structural or parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use basechange::inst::{self, InstanceFile, MonVCatDef, MonVCatSec, Section};
use basechange::report::LawReport;
use basechange::suites::{reports_to_json, reports_to_text, run_suite, Status, ALL_CHECKS};
use basechange::Limits;

#[derive(Parser)]
#[command(name = "basechange", about = "Finite enriched-category engine")]
struct Cli {
    /// Cap on candidate component families during exhaustive enumeration.
    #[arg(long, global = true)]
    max_candidates: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a file, resolve every reference, and check structure laws.
    Validate { file: PathBuf },
    /// Build a derived structure and print the resulting file.
    Construct {
        #[command(subcommand)]
        op: ConstructOp,
    },
    /// Run a check suite over a file.  The suite is `all` or a
    /// comma-separated list of check ids.
    Check {
        suite: String,
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Re-render a JSON report produced by `check --format json`.
    Report {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Report file; stdin when omitted.
        file: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ConstructOp {
    /// Print the bundled instance file in canonical form.
    Bundled,
    /// Reserialize a file in canonical form.
    Canonical { file: PathBuf },
    /// Add the self-enrichment of a declared base as a new monvcat section.
    Autoenrich {
        file: PathBuf,
        base: String,
        name: String,
    },
    /// Add the pushforward of a declared monvcat along a declared functor.
    Push {
        file: PathBuf,
        functor: String,
        monvcat: String,
        name: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Structural/parse problems exit with 2, law failures with 1.
enum Failure {
    Structural(String),
    Law,
}

impl From<basechange::report::EngineError> for Failure {
    fn from(e: basechange::report::EngineError) -> Self {
        Failure::Structural(format!("{e}"))
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Structural(format!("{e}"))
    }
}

fn limits(max_candidates: Option<usize>) -> Result<Limits, Failure> {
    let mut l = Limits::default();
    if let Ok(cells) = std::env::var("BASECHANGE_MAX_CELLS") {
        l.max_morphisms = cells
            .parse()
            .map_err(|_| Failure::Structural(format!("BASECHANGE_MAX_CELLS: bad value `{cells}`")))?;
    }
    if let Some(c) = max_candidates {
        l.max_candidates = c;
    }
    Ok(l)
}

fn load(path: &PathBuf) -> Result<InstanceFile, Failure> {
    let text = std::fs::read_to_string(path)?;
    Ok(inst::parse(&text)?)
}

fn validate(path: &PathBuf, l: &Limits) -> Result<(), Failure> {
    let file = load(path)?;
    let r = inst::resolve(&file, l)?;
    let mut rep = LawReport::new();
    for (name, v) in &r.smccs {
        rep.absorb(name, basechange::smcc::check_smcc(v));
    }
    for (name, c) in &r.cats {
        rep.absorb(name, basechange::fincat::check_category(c));
    }
    for (name, (base, v)) in &r.vcats {
        rep.absorb(name, basechange::enriched::check_vcat(&r.smccs[base], v));
    }
    for (name, f) in &r.functors {
        rep.absorb(name, basechange::smcc::check_monoidal_functor(f));
    }
    for (name, n) in &r.nats {
        rep.absorb(name, basechange::smcc::check_monoidal_nat(n));
    }
    for (name, (base, m)) in &r.monvcats {
        rep.absorb(name, basechange::enriched::check_symmonclosed(&r.smccs[base], m));
    }
    let rep = rep.canonicalize();
    if !rep.structural.is_empty() {
        return Err(Failure::Structural(rep.structural.join("\n")));
    }
    if !rep.violations.is_empty() {
        print!("{rep}");
        return Err(Failure::Law);
    }
    println!("ok");
    Ok(())
}

fn construct(op: &ConstructOp, l: &Limits) -> Result<(), Failure> {
    let file = match op {
        ConstructOp::Bundled => inst::bundled_instance_file(),
        ConstructOp::Canonical { file } => load(file)?,
        ConstructOp::Autoenrich { file, base, name } => {
            let mut f = load(file)?;
            f.sections.push(Section::MonVCat(MonVCatSec {
                name: name.clone(),
                def: MonVCatDef::Autoenrich(base.clone()),
            }));
            inst::resolve(&f, l)?;
            f
        }
        ConstructOp::Push {
            file,
            functor,
            monvcat,
            name,
        } => {
            let mut f = load(file)?;
            f.sections.push(Section::MonVCat(MonVCatSec {
                name: name.clone(),
                def: MonVCatDef::Push(functor.clone(), monvcat.clone()),
            }));
            inst::resolve(&f, l)?;
            f
        }
    };
    print!("{}", inst::serialize(&file)?);
    Ok(())
}

fn check(suite: &str, path: &PathBuf, format: Format, l: &Limits) -> Result<(), Failure> {
    let ids: Vec<String> = if suite == "all" {
        ALL_CHECKS.iter().map(|s| s.to_string()).collect()
    } else {
        suite.split(',').map(|s| s.trim().to_string()).collect()
    };
    let file = load(path)?;
    let r = inst::resolve(&file, l)?;
    let reports = run_suite(&r, &ids, l)?;
    match format {
        Format::Text => print!("{}", reports_to_text(&reports)),
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&reports_to_json(&reports)).unwrap())
        }
    }
    if reports.iter().any(|rep| rep.status == Status::Fail) {
        return Err(Failure::Law);
    }
    Ok(())
}

fn report(format: Format, path: &Option<PathBuf>) -> Result<(), Failure> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => std::io::read_to_string(std::io::stdin())?,
    };
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Structural(format!("report: {e}")))?;
    let checks = value
        .get("checks")
        .and_then(|c| c.as_array())
        .ok_or_else(|| Failure::Structural("report: missing checks array".into()))?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
        Format::Text => {
            for c in checks {
                let id = c.get("id").and_then(|v| v.as_str()).unwrap_or("?");
                let status = c.get("status").and_then(|v| v.as_str()).unwrap_or("?");
                print!("{id:<26} {status:<8}");
                if let Some(cx) = c.get("counterexample").and_then(|v| v.as_str()) {
                    print!("  {cx}");
                }
                println!();
            }
        }
    }
    let failed = checks
        .iter()
        .any(|c| c.get("status").and_then(|v| v.as_str()) == Some("fail"));
    if failed {
        return Err(Failure::Law);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> Result<(), Failure> {
        let l = limits(cli.max_candidates)?;
        match &cli.cmd {
            Cmd::Validate { file } => validate(file, &l),
            Cmd::Construct { op } => construct(op, &l),
            Cmd::Check {
                suite,
                file,
                format,
            } => check(suite, file, *format, &l),
            Cmd::Report { format, file } => report(*format, file),
        }
    };
    match run() {
        Ok(()) => ExitCode::from(0),
        Err(Failure::Law) => ExitCode::from(1),
        Err(Failure::Structural(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
