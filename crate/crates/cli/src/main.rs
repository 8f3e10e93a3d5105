//! `curlab`: scenario runner for the experiment suites.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use curlab_cli::catalog;
use curlab_cli::scenario::{self, Scenario};
use curlab_cli::suites;

#[derive(Parser)]
#[command(name = "curlab", about = "Run desk-scale experiments on metric currents and Lipschitz map topologies", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and write its report; exits nonzero if any verdict fails.
    Run {
        /// Scenario JSON file.
        #[arg(long)]
        scenario: PathBuf,
        /// Output directory for report.json and the per-suite CSV; falls
        /// back to the scenario's own `output` field.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the registered suites with their parameter schemas.
    List,
    /// Validate a scenario file against its suite's schema.
    Validate {
        #[arg(long)]
        scenario: PathBuf,
    },
}

/// Write to stdout, tolerating a closed pipe (`curlab list | head`).
fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { scenario, out } => {
            let sc = Scenario::from_file(&scenario)
                .with_context(|| format!("loading {}", scenario.display()))?;
            let out = out
                .or_else(|| sc.output.as_ref().map(PathBuf::from))
                .context("no output directory: pass --out or set `output` in the scenario")?;
            let report = suites::run_scenario(&sc)?;
            report
                .write_to(&out)
                .with_context(|| format!("writing report to {}", out.display()))?;
            let mut lines = String::new();
            for v in &report.verdicts {
                lines.push_str(&format!(
                    "{} {} (measured {:+.3e}, bound {:+.3e})\n",
                    if v.pass { "PASS" } else { "FAIL" },
                    v.name,
                    v.measured,
                    v.tolerance
                ));
            }
            lines.push_str(&format!(
                "report: {} ({} rows, {} verdicts)\n",
                out.join("report.json").display(),
                report.rows.len(),
                report.verdicts.len()
            ));
            emit(&lines);
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::List => {
            let mut text = String::new();
            for entry in catalog::SUITES {
                text.push_str(&format!("{}\n", entry.name));
                text.push_str(&format!("  {}\n", entry.description));
                text.push_str(&format!("  exercises: {}\n", entry.reference));
                text.push_str(&format!("  columns: {}\n", entry.columns.join(", ")));
                if entry.schema.is_empty() {
                    text.push_str("  parameters: none\n");
                } else {
                    text.push_str("  parameters:\n");
                    for p in entry.schema {
                        text.push_str(&format!(
                            "    {} ({}, {}; default {}) — {}\n",
                            p.name,
                            p.kind,
                            if p.required { "required" } else { "optional" },
                            p.default,
                            p.description
                        ));
                    }
                }
                text.push_str(&format!("  example: {}\n", entry.example));
            }
            emit(&text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate { scenario } => {
            let sc = Scenario::from_file(&scenario)
                .with_context(|| format!("loading {}", scenario.display()))?;
            let entry = catalog::find(&sc.suite)
                .ok_or_else(|| scenario::ScenarioError::UnknownSuite(sc.suite.clone()))?;
            sc.validate(entry.schema)?;
            emit(&format!("ok: scenario for suite `{}` is valid\n", sc.suite));
            Ok(ExitCode::SUCCESS)
        }
    }
}
