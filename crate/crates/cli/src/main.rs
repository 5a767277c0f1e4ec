use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kzdyn_cli::{dump_object, exit_code, parse_factors, parse_nu, run_suite, CliResult, DumpParams, SuiteConfig, Verdict, SUITES};

#[derive(Parser)]
#[command(name = "kzdyn", version, about = "Exact and numeric verification of KZ dynamical difference equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and print (or write) its JSON report.
    Verify {
        /// One of the registered suites, or `all`.
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        /// Weight-space depth in simple-root coordinates, `m1,m2,…`.
        #[arg(long)]
        nu: Option<String>,
        /// Comma-separated tensor factors: `verma` or `lp:P`.
        #[arg(long)]
        factors: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        /// Largest `a, b` for the sl3 closed forms.
        #[arg(long)]
        max_ab: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Print one summary line instead of the JSON report.
        #[arg(long)]
        summary: bool,
    },
    /// Serialize an object: order, sigma, operator, fusion, phi-vector or forest.
    Dump {
        kind: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        nu: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        factors: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the registered suites.
    List,
}

fn run(cli: Cli) -> CliResult<i32> {
    match cli.command {
        Command::List => {
            for s in SUITES {
                println!("{s}");
            }
            Ok(0)
        }
        Command::Dump { kind, n, h, nu, depth, factors, out } => {
            let factors = factors.as_deref().map(parse_factors).transpose()?;
            let nu = nu.as_deref().map(parse_nu).transpose()?;
            let text = dump_object(&kind, &DumpParams { n, h, nu, depth, factors })?;
            match out {
                Some(p) => std::fs::write(p, text + "\n")?,
                None => println!("{text}"),
            }
            Ok(0)
        }
        Command::Verify { suite, n, nu, factors, depth, tol, max_ab, out, jobs, summary } => {
            let factors = factors.as_deref().map(parse_factors).transpose()?;
            let nu = nu.as_deref().map(parse_nu).transpose()?;
            let names: Vec<String> = if suite == "all" { SUITES.iter().map(|s| s.to_string()).collect() } else { vec![suite] };
            let mut reports = Vec::new();
            for name in names {
                let cfg = SuiteConfig {
                    suite: name,
                    n,
                    nu: nu.clone(),
                    factors: factors.clone(),
                    depth,
                    tol,
                    max_ab,
                    out: if reports.is_empty() { out.clone() } else { None },
                    jobs,
                };
                let r = run_suite(&cfg)?;
                if summary {
                    println!("{}", r.summary());
                } else {
                    println!("{}", r.to_json()?);
                }
                if r.verdict == Verdict::Flagged {
                    for w in &r.warnings {
                        eprintln!("warning: {}: {w}", r.suite);
                    }
                }
                reports.push(r);
            }
            Ok(exit_code(&reports))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
