//! Scenario configuration: one JSON document per run, describing laser,
//! mechanics, input-port spectra, extra force, detection filter, and the
//! strategies to evaluate.

use serde::{Deserialize, Serialize};

use crate::bandavg::BandFilter;
use crate::error::{Error, Result};
use crate::mechanics::Susceptibility;
use crate::noise::{ExtraForceSpectrum, LaserParams};
use crate::optimize::OptimizeConfig;
use crate::spectra::QuadratureSpectra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Units {
    /// hbar = 1.0545718e-34 J s, c = 299792458 m/s; laser specified by
    /// omega0.
    #[default]
    Si,
    /// hbar = c = 1; laser specified by k0.
    Natural,
}

/// Laser block of the config; resolved against `units`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaserConfig {
    pub intensity: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<f64>,
}

impl LaserConfig {
    pub fn resolve(&self, units: Units) -> Result<LaserParams> {
        match units {
            Units::Si => {
                let omega0 = self.omega0.ok_or_else(|| Error::Config {
                    path: "laser.omega0".into(),
                    message: "required in SI units".into(),
                })?;
                LaserParams::si(omega0, self.intensity)
            }
            Units::Natural => {
                let k0 = self
                    .k0
                    .or(self.omega0)
                    .ok_or_else(|| Error::Config {
                        path: "laser.k0".into(),
                        message: "required in natural units".into(),
                    })?;
                LaserParams::natural(k0, self.intensity)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridScale {
    Lin,
    Log,
}

/// Frequency grid: `count` points from `min` to `max`, linear or log
/// spaced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub scale: GridScale,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.min > 0.0) {
            return Err(Error::Config {
                path: "grid.min".into(),
                message: format!("must be > 0, got {}", self.min),
            });
        }
        if !(self.max > self.min) {
            return Err(Error::Config {
                path: "grid.max".into(),
                message: format!("must exceed grid.min, got {}", self.max),
            });
        }
        if self.count < 2 {
            return Err(Error::Config {
                path: "grid.count".into(),
                message: format!("must be >= 2, got {}", self.count),
            });
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<f64> {
        let n = self.count;
        match self.scale {
            GridScale::Lin => (0..n)
                .map(|i| self.min + (self.max - self.min) * i as f64 / (n - 1) as f64)
                .collect(),
            GridScale::Log => {
                let (lo, hi) = (self.min.ln(), self.max.ln());
                (0..n)
                    .map(|i| (lo + (hi - lo) * i as f64 / (n - 1) as f64).exp())
                    .collect()
            }
        }
    }

    /// Parse "min:max:count:lin|log".
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Config {
                path: "grid".into(),
                message: format!("expected min:max:count:lin|log, got {s:?}"),
            });
        }
        let bad = |field: &str, what: &str| Error::Config {
            path: format!("grid.{field}"),
            message: format!("cannot parse {what:?}"),
        };
        let spec = GridSpec {
            min: parts[0].parse().map_err(|_| bad("min", parts[0]))?,
            max: parts[1].parse().map_err(|_| bad("max", parts[1]))?,
            count: parts[2].parse().map_err(|_| bad("count", parts[2]))?,
            scale: match parts[3] {
                "lin" => GridScale::Lin,
                "log" => GridScale::Log,
                other => return Err(bad("scale", other)),
            },
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyName {
    /// Filtered noise at the configured intensity and spectra, no
    /// optimization.
    Fixed,
    Sql,
    Caves,
    PerFrequency,
    Broadband,
}

fn default_strategies() -> Vec<StrategyName> {
    vec![
        StrategyName::Sql,
        StrategyName::Caves,
        StrategyName::PerFrequency,
        StrategyName::Broadband,
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub units: Units,
    pub laser: LaserConfig,
    pub mechanics: Susceptibility,
    pub port_b: QuadratureSpectra,
    #[serde(default)]
    pub extra_force: ExtraForceSpectrum,
    pub filter: BandFilter,
    #[serde(default = "default_strategies")]
    pub strategies: Vec<StrategyName>,
    /// Squeeze factor for the caves strategy; defaults to 1 (vacuum).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caves_k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    /// Tolerance for the signal-fidelity check; defaults to 1e-2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fidelity_tol: Option<f64>,
    /// Squeeze budget for the optimizers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<f64>,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let scenario: Scenario =
            serde_path_to_error::deserialize(de).map_err(|e| Error::Config {
                path: e.path().to_string(),
                message: e.inner().to_string(),
            })?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        self.laser()?;
        self.mechanics.validate()?;
        self.port_b.validate()?;
        self.extra_force.validate()?;
        self.filter.validate()?;
        if let Some(k) = self.caves_k {
            if !(k > 0.0) || !k.is_finite() {
                return Err(Error::Config {
                    path: "caves_k".into(),
                    message: format!("must be finite and > 0, got {k}"),
                });
            }
        }
        if let Some(grid) = &self.grid {
            grid.validate()?;
        }
        if let Some(r) = self.r_max {
            if !(r > 0.0) || !r.is_finite() {
                return Err(Error::Config {
                    path: "r_max".into(),
                    message: format!("must be finite and > 0, got {r}"),
                });
            }
        }
        Ok(())
    }

    pub fn laser(&self) -> Result<LaserParams> {
        self.laser.resolve(self.units)
    }

    pub fn optimize_config(&self) -> OptimizeConfig {
        OptimizeConfig {
            r_max: self.r_max.unwrap_or(12.0),
            ..OptimizeConfig::default()
        }
    }
}
