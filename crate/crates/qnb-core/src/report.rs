//! Batch operations over a scenario: spectrum tabulation, strategy
//! comparison, parameter sweeps, and feasibility checks, emitted as CSV
//! or JSON text. Output is deterministic: fixed row order, fixed float
//! formatting, no timestamps.

use serde::Serialize;
use serde_json::{json, Value};

use crate::bandavg::filtered_noise;
use crate::error::{Error, Result};
use crate::mechanics::{signal_fidelity_check, FIDELITY_GRID_POINTS};
use crate::noise::interferometer_noise_spectrum;
use crate::optimize::{broadband_optimum, caves, per_frequency_optimum, sql, StrategyResult};
use crate::scenario::{GridScale, GridSpec, Scenario, StrategyName};
use crate::spectra::EPS_FEAS;

/// 17 significant digits; round-trips any f64.
pub fn fmt_float(x: f64) -> String {
    format!("{:.16e}", x)
}

struct SigFigFormatter;

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{:.16e}", value)
    }
}

/// Serialize to JSON with sorted keys and 17-significant-digit floats.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    // round-trip through Value so map keys come out sorted
    let value = serde_json::to_value(value).map_err(|e| Error::Inconsistent(e.to_string()))?;
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Inconsistent(e.to_string()))?;
    out.push(b'\n');
    String::from_utf8(out).map_err(|e| Error::Inconsistent(e.to_string()))
}

fn required_grid(scenario: &Scenario, cli_grid: Option<GridSpec>) -> Result<GridSpec> {
    cli_grid.or(scenario.grid).ok_or_else(|| Error::Config {
        path: "grid".into(),
        message: "a frequency grid is required (config `grid` or --grid)".into(),
    })
}

/// Tabulate the noise budget over the frequency grid as CSV with header
/// `omega,pc,xc,rp,ef,total`.
pub fn run_spectrum(scenario: &Scenario, cli_grid: Option<GridSpec>) -> Result<String> {
    let grid = required_grid(scenario, cli_grid)?;
    let laser = scenario.laser()?;
    let mut out = String::from("omega,pc,xc,rp,ef,total\n");
    for w in grid.points() {
        let n = interferometer_noise_spectrum(
            &laser,
            &scenario.mechanics,
            &scenario.port_b,
            &scenario.extra_force,
            w,
        )?;
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_float(w),
            fmt_float(n.pc),
            fmt_float(n.xc),
            fmt_float(n.rp),
            fmt_float(n.ef),
            fmt_float(n.total)
        ));
    }
    Ok(out)
}

fn run_strategy(scenario: &Scenario, name: StrategyName) -> Result<StrategyResult> {
    let laser = scenario.laser()?;
    let cfg = scenario.optimize_config();
    match name {
        StrategyName::Fixed => {
            let n = filtered_noise(
                &laser,
                &scenario.mechanics,
                &scenario.port_b,
                &scenario.extra_force,
                &scenario.filter,
            )?;
            Ok(StrategyResult {
                strategy: "fixed".into(),
                delta_s2_min: n.total,
                attained: true,
                delta_s2_r_max: None,
                optimal_intensity: Some(laser.intensity),
                equivalent_tau: scenario
                    .mechanics
                    .mass()
                    .map(|m| crate::optimize::equivalent_tau(n.total, m, laser.hbar)),
                squeeze_state: crate::optimize::SqueezeState::None,
                diagnostic: None,
            })
        }
        StrategyName::Sql => sql(&laser, &scenario.mechanics, &scenario.filter),
        StrategyName::Caves => caves(
            &laser,
            &scenario.mechanics,
            &scenario.filter,
            scenario.caves_k.unwrap_or(1.0),
        ),
        StrategyName::PerFrequency => {
            per_frequency_optimum(&laser, &scenario.mechanics, &scenario.filter, &cfg)
        }
        StrategyName::Broadband => {
            broadband_optimum(&laser, &scenario.mechanics, &scenario.filter, &cfg)
        }
    }
}

fn strategy_key(name: StrategyName) -> &'static str {
    match name {
        StrategyName::Fixed => "fixed",
        StrategyName::Sql => "sql",
        StrategyName::Caves => "caves",
        StrategyName::PerFrequency => "per_frequency",
        StrategyName::Broadband => "broadband",
    }
}

/// Run the requested strategies and emit one JSON object with a
/// `StrategyResult` per strategy plus each strategy's ratio to the SQL.
pub fn run_compare(scenario: &Scenario) -> Result<Value> {
    let sql_result = run_strategy(scenario, StrategyName::Sql)?;
    let mut results = serde_json::Map::new();
    let mut ratios = serde_json::Map::new();
    for &name in &scenario.strategies {
        let r = if name == StrategyName::Sql {
            sql_result.clone()
        } else {
            run_strategy(scenario, name)?
        };
        ratios.insert(
            strategy_key(name).to_string(),
            json!(r.delta_s2_min / sql_result.delta_s2_min),
        );
        results.insert(
            strategy_key(name).to_string(),
            serde_json::to_value(&r).map_err(|e| Error::Inconsistent(e.to_string()))?,
        );
    }
    Ok(json!({
        "results": Value::Object(results),
        "ratios_to_sql": Value::Object(ratios),
    }))
}

/// One swept parameter: a dotted path into the scenario document and a
/// range of values.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: GridScale,
}

impl SweepSpec {
    fn values(&self) -> Result<Vec<f64>> {
        if self.count < 2 {
            return Err(Error::Config {
                path: "sweep.count".into(),
                message: format!("must be >= 2, got {}", self.count),
            });
        }
        let n = self.count;
        Ok(match self.scale {
            GridScale::Lin => (0..n)
                .map(|i| self.min + (self.max - self.min) * i as f64 / (n - 1) as f64)
                .collect(),
            GridScale::Log => {
                if !(self.min > 0.0 && self.max > 0.0) {
                    return Err(Error::Config {
                        path: "sweep".into(),
                        message: "log scale needs positive bounds".into(),
                    });
                }
                let (lo, hi) = (self.min.ln(), self.max.ln());
                (0..n)
                    .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
                    .collect()
            }
        })
    }
}

fn set_path(doc: &mut Value, path: &str, value: f64) -> Result<()> {
    let pointer = format!("/{}", path.replace('.', "/"));
    match doc.pointer_mut(&pointer) {
        Some(slot) if slot.is_number() || slot.is_null() => {
            *slot = json!(value);
            Ok(())
        }
        Some(_) => Err(Error::Config {
            path: path.to_string(),
            message: "sweep path must address a scalar field".into(),
        }),
        None => {
            // optional scalars (e.g. caves_k) are absent from the
            // serialized document; insert into the parent object
            let (parent, key) = match pointer.rfind('/') {
                Some(0) => ("".to_string(), &pointer[1..]),
                Some(i) => (pointer[..i].to_string(), &pointer[i + 1..]),
                None => unreachable!(),
            };
            match doc.pointer_mut(&parent).and_then(Value::as_object_mut) {
                Some(obj) => {
                    obj.insert(key.to_string(), json!(value));
                    Ok(())
                }
                None => Err(Error::Config {
                    path: path.to_string(),
                    message: "no such scenario field".into(),
                }),
            }
        }
    }
}

/// Sweep one scalar scenario field and tabulate the resulting noise as
/// CSV `value,delta_s2[,pc,xc,rp,ef]`. The quantity swept is the first
/// configured strategy (default: the fixed-configuration filtered noise).
pub fn run_sweep(scenario: &Scenario, sweep: &SweepSpec) -> Result<String> {
    let base =
        serde_json::to_value(scenario).map_err(|e| Error::Inconsistent(e.to_string()))?;
    let strategy = scenario
        .strategies
        .first()
        .copied()
        .unwrap_or(StrategyName::Fixed);
    let fixed = strategy == StrategyName::Fixed;
    let mut out = String::from(if fixed {
        "value,delta_s2,pc,xc,rp,ef\n"
    } else {
        "value,delta_s2\n"
    });
    for v in sweep.values()? {
        let mut doc = base.clone();
        set_path(&mut doc, &sweep.param, v)?;
        let varied: Scenario =
            serde_json::from_value(doc).map_err(|e| Error::Config {
                path: sweep.param.clone(),
                message: e.to_string(),
            })?;
        varied.validate()?;
        if fixed {
            let laser = varied.laser()?;
            let n = filtered_noise(
                &laser,
                &varied.mechanics,
                &varied.port_b,
                &varied.extra_force,
                &varied.filter,
            )?;
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                fmt_float(v),
                fmt_float(n.total),
                fmt_float(n.pc),
                fmt_float(n.xc),
                fmt_float(n.rp),
                fmt_float(n.ef)
            ));
        } else {
            let r = run_strategy(&varied, strategy)?;
            out.push_str(&format!("{},{}\n", fmt_float(v), fmt_float(r.delta_s2_min)));
        }
    }
    Ok(out)
}

/// Signal-fidelity and Heisenberg-feasibility report over the grid.
pub fn run_check(scenario: &Scenario, cli_grid: Option<GridSpec>) -> Result<Value> {
    let grid = required_grid(scenario, cli_grid)?;
    let tol = scenario.fidelity_tol.unwrap_or(1e-2);
    let bandwidth = scenario.filter.bandwidth();
    let omega_s = scenario.filter.omega_s();
    let fidelity = signal_fidelity_check(
        &scenario.mechanics,
        omega_s,
        bandwidth,
        tol,
        FIDELITY_GRID_POINTS,
    )?;

    let mut min_margin = f64::INFINITY;
    let mut worst_omega = grid.min;
    for w in grid.points() {
        let s = scenario.port_b.evaluate(w)?;
        let margin = s.heisenberg_margin() / (s.spp * s.sqq).max(1.0);
        if margin < min_margin {
            min_margin = margin;
            worst_omega = w;
        }
    }
    Ok(json!({
        "signal_fidelity": {
            "omega_s": omega_s,
            "bandwidth": bandwidth,
            "tolerance": tol,
            "max_deviation": fidelity.max_deviation,
            "worst_omega": fidelity.worst_omega,
            "pass": fidelity.pass,
        },
        "heisenberg": {
            "min_normalized_margin": min_margin,
            "worst_omega": worst_omega,
            "feasible": min_margin >= -EPS_FEAS,
        },
    }))
}
