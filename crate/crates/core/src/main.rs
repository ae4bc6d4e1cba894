use clap::{Parser, Subcommand, ValueEnum};
use lgipdaf::bench::{run_monte_carlo, run_table, to_csv, ModelKind, Row, RunOptions, TPD_THRESHOLD};
use lgipdaf::scenario::Scenario;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "lgipdaf", version, about = "LG-IPDAF tracking benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Se2cv,
    Lticv,
}

impl From<Model> for ModelKind {
    fn from(m: Model) -> Self {
        match m {
            Model::Se2cv => ModelKind::Se2Cv,
            Model::Lticv => ModelKind::LtiCv,
        }
    }
}

#[derive(clap::Args)]
struct Common {
    /// Base seed; run i uses seed + i.
    #[arg(long)]
    seed: Option<u64>,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Distance in metres within which a confirmed track counts as tracking.
    #[arg(long, default_value_t = TPD_THRESHOLD)]
    tpd_threshold: f64,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Append a wall_s column (not reproducible).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Monte-Carlo runs of one model on one scenario file.
    Sim {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long, default_value_t = 100)]
        runs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// All four trajectories with both models at the benchmark settings.
    Table {
        #[arg(long, default_value_t = 100)]
        runs: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Quick numerical self-checks of the library.
    Selftest,
}

fn emit(rows: &[Row], common: &Common) -> Result<(), String> {
    for r in rows {
        eprintln!(
            "{:<9} {:<6} wall {:>8.2} s",
            r.scenario,
            r.model.name(),
            r.aggregate.wall_time
        );
    }
    let csv = to_csv(rows, common.timing);
    match &common.out {
        Some(path) => std::fs::write(path, csv).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), String> {
    match cli.command {
        Command::Sim {
            scenario,
            model,
            runs,
            common,
        } => {
            let s = Scenario::load(&scenario).map_err(|e| e.to_string())?;
            let opts = RunOptions {
                runs,
                seed: common.seed.unwrap_or(s.seed),
                tpd_threshold: common.tpd_threshold,
                workers: common.workers,
            };
            let mc = run_monte_carlo(&s, model.into(), &opts).map_err(|e| e.to_string())?;
            let name = scenario
                .file_stem()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| s.kind.name().to_string());
            let row = Row {
                scenario: name,
                model: model.into(),
                aggregate: mc.aggregate,
            };
            emit(&[row], &common)
        }
        Command::Table { runs, common } => {
            let opts = RunOptions {
                runs,
                seed: common.seed.unwrap_or(0),
                tpd_threshold: common.tpd_threshold,
                workers: common.workers,
            };
            let rows = run_table(&opts).map_err(|e| e.to_string())?;
            emit(&rows, &common)
        }
        Command::Selftest => {
            let results = lgipdaf::selftest::run();
            let mut ok = true;
            for r in &results {
                println!("{} {:<28} {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
                ok &= r.passed;
            }
            if ok {
                Ok(())
            } else {
                Err("self-test failed".into())
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
