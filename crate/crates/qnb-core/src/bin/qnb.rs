//! Command line interface: noise curves, strategy comparison, parameter
//! sweeps, and feasibility checks for a scenario config.
//!
//! Exit codes: 0 success, 2 config error, 3 numerical error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qnb_core::report::{self, SweepSpec};
use qnb_core::scenario::{GridScale, GridSpec, Scenario};
use qnb_core::Error;

#[derive(Parser)]
#[command(name = "qnb", version, about = "Quantum noise budget calculator and squeezing optimizer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scale {
    Lin,
    Log,
}

#[derive(clap::Args)]
struct Common {
    /// Scenario config file (JSON).
    #[arg(long)]
    config: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Frequency grid override, min:max:count:lin|log.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the noise budget over the frequency grid (CSV).
    Spectrum {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run the configured strategies and report minima and ratios (JSON).
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Sweep one scalar scenario field and tabulate the noise (CSV).
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Dotted path of the swept field, e.g. laser.intensity.
        #[arg(long)]
        param: String,
        #[arg(long)]
        min: f64,
        #[arg(long)]
        max: f64,
        #[arg(long, default_value = "25")]
        count: usize,
        #[arg(long, value_enum, default_value = "lin")]
        scale: Scale,
    },
    /// Signal-fidelity and Heisenberg-feasibility report (JSON).
    Check {
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common) -> Result<(Scenario, Option<GridSpec>), Error> {
    let text = fs::read_to_string(&common.config).map_err(|e| Error::Config {
        path: common.config.display().to_string(),
        message: e.to_string(),
    })?;
    let scenario = Scenario::from_json(&text)?;
    let grid = common.grid.as_deref().map(GridSpec::parse).transpose()?;
    Ok((scenario, grid))
}

fn emit(common: &Common, text: &str) -> Result<(), Error> {
    match &common.out {
        Some(path) => fs::write(path, text).map_err(|e| Error::Config {
            path: path.display().to_string(),
            message: e.to_string(),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Spectrum { common, format } => {
            let (scenario, grid) = load(&common)?;
            let csv = report::run_spectrum(&scenario, grid)?;
            let text = match format {
                Format::Csv => csv,
                Format::Json => spectrum_csv_to_json(&csv)?,
            };
            emit(&common, &text)
        }
        Command::Compare { common, format } => {
            let (scenario, _) = load(&common)?;
            let value = report::run_compare(&scenario)?;
            let text = match format {
                Format::Json => report::to_json_string(&value)?,
                Format::Csv => compare_to_csv(&value),
            };
            emit(&common, &text)
        }
        Command::Sweep {
            common,
            param,
            min,
            max,
            count,
            scale,
        } => {
            let (scenario, _) = load(&common)?;
            let sweep = SweepSpec {
                param,
                min,
                max,
                count,
                scale: match scale {
                    Scale::Lin => GridScale::Lin,
                    Scale::Log => GridScale::Log,
                },
            };
            let csv = report::run_sweep(&scenario, &sweep)?;
            emit(&common, &csv)
        }
        Command::Check { common } => {
            let (scenario, grid) = load(&common)?;
            let value = report::run_check(&scenario, grid)?;
            emit(&common, &report::to_json_string(&value)?)
        }
    }
}

fn spectrum_csv_to_json(csv: &str) -> Result<String, Error> {
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap_or("").split(',').collect();
    let rows: Vec<serde_json::Value> = lines
        .map(|line| {
            let obj: serde_json::Map<String, serde_json::Value> = header
                .iter()
                .zip(line.split(','))
                .map(|(k, v)| {
                    (
                        k.to_string(),
                        serde_json::json!(v.parse::<f64>().unwrap_or(f64::NAN)),
                    )
                })
                .collect();
            serde_json::Value::Object(obj)
        })
        .collect();
    report::to_json_string(&serde_json::json!({ "rows": rows }))
}

fn compare_to_csv(value: &serde_json::Value) -> String {
    let mut out = String::from("strategy,delta_s2_min,attained,ratio_to_sql\n");
    if let (Some(results), Some(ratios)) = (
        value["results"].as_object(),
        value["ratios_to_sql"].as_object(),
    ) {
        for (name, r) in results {
            out.push_str(&format!(
                "{},{},{},{}\n",
                name,
                report::fmt_float(r["delta_s2_min"].as_f64().unwrap_or(f64::NAN)),
                r["attained"].as_bool().unwrap_or(false),
                report::fmt_float(ratios[name].as_f64().unwrap_or(f64::NAN)),
            ));
        }
    }
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
