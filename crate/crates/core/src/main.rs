use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use axial_core::harness::report::{build_report, export_graphs, Overrides};
use axial_core::harness::{audit_axial_pair, verify_lemma, Scenario, Session, Verdict};
use axial_core::Result;

#[derive(Parser)]
#[command(name = "axial", version, about = "Audit axial pairs and build truncated quasi-trees")]
struct Cli {
    /// Scenario file (TOML).
    #[arg(long, short, global = true, default_value = "scenario.toml")]
    config: PathBuf,
    /// Override the truncation radius.
    #[arg(long, global = true)]
    radius: Option<u32>,
    /// Override the output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write DOT and TSV exports.
    #[arg(long, global = true)]
    dot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check both axioms and estimate the constants.
    Audit,
    /// Run one lemma suite.
    Verify { suite: String },
    /// Build the projection complex and quasi-tree diagnostics.
    Complex,
    /// Run every configured suite and write report.json.
    Report,
}

fn session(cli: &Cli) -> Result<Session> {
    let mut scenario = Scenario::from_path(&cli.config)?;
    Overrides {
        radius: cli.radius,
        out: cli.out.clone(),
        dot: cli.dot,
    }
    .apply(&mut scenario);
    Session::new(scenario)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn run(cli: &Cli) -> Result<Verdict> {
    let session = session(cli)?;
    let dir = session.scenario().output.dir.clone();
    match &cli.command {
        Command::Audit => {
            let audit = audit_axial_pair(&session);
            print_json(&audit);
            Ok(Verdict::combine([audit.axiom1.status, audit.axiom2.status]))
        }
        Command::Verify { suite } => {
            let r = verify_lemma(&session, suite)?;
            print_json(&r);
            Ok(r.status)
        }
        Command::Complex => {
            let r = verify_lemma(&session, "complex_diag")?;
            print_json(&r);
            if session.scenario().output.dot {
                std::fs::create_dir_all(&dir)?;
                for p in export_graphs(&session, &dir)? {
                    eprintln!("wrote {}", p.display());
                }
            }
            Ok(r.status)
        }
        Command::Report => {
            let report = build_report(&session)?;
            std::fs::create_dir_all(&dir)?;
            let path = dir.join("report.json");
            std::fs::write(&path, report.to_json())?;
            if session.scenario().output.dot {
                export_graphs(&session, &dir)?;
            }
            for s in &report.suites {
                println!("{:<18} {:?}", s.suite, s.status);
            }
            eprintln!("wrote {}", path.display());
            Ok(report.verdict)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(v) => ExitCode::from(v.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
