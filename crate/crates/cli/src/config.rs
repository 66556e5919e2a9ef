//! Run configuration. Values come from, in decreasing priority, the TOML
//! config file, command-line flags and built-in defaults.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use subord_core::admissibility::SearchConfig;
use subord_core::verifier::GridConfig;

use crate::CliError;

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "SUBORD_CONFIG";

/// Everything that can be set from the config file or flags. Unset fields
/// fall through to the next layer.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub trials: Option<usize>,
    /// Boundary points of the admissibility search.
    pub theta_points: Option<usize>,
    /// Multiplier grid of the admissibility search.
    pub m_points: Option<usize>,
    /// Angles of the polar grid used by the verifiers.
    pub angles: Option<usize>,
    pub radii: Option<Vec<f64>>,
    pub tol: Option<f64>,
    /// Truncation degree for series built from expressions.
    pub degree: Option<usize>,
    /// Not echoed in reports, so that runs differing only in output path match.
    #[serde(skip_serializing)]
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// `self` wins wherever it is set.
    pub fn over(self, lower: RunConfig) -> RunConfig {
        RunConfig {
            seed: self.seed.or(lower.seed),
            samples: self.samples.or(lower.samples),
            trials: self.trials.or(lower.trials),
            theta_points: self.theta_points.or(lower.theta_points),
            m_points: self.m_points.or(lower.m_points),
            angles: self.angles.or(lower.angles),
            radii: self.radii.or(lower.radii),
            tol: self.tol.or(lower.tol),
            degree: self.degree.or(lower.degree),
            output: self.output.or(lower.output),
        }
    }

    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// The file named by `--config`, else by the environment variable.
    pub fn from_file_or_env(explicit: Option<&Path>) -> Result<RunConfig, CliError> {
        match explicit {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(RunConfig::default()),
            },
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("trials", self.trials),
            ("theta_points", self.theta_points),
            ("m_points", self.m_points),
            ("angles", self.angles),
            ("degree", self.degree),
        ];
        for (name, v) in positive {
            if v == Some(0) {
                return Err(CliError::Usage(format!("{name} must be positive")));
            }
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Usage("tol must be positive".into()));
            }
        }
        if let Some(r) = &self.radii {
            if r.is_empty() || r.iter().any(|&x| !(x > 0.0 && x < 1.0)) {
                return Err(CliError::Usage("radii must be nonempty and lie in (0, 1)".into()));
            }
        }
        Ok(())
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.degree.unwrap_or(subord_core::series::DEFAULT_DEGREE)
    }

    pub fn search(&self, base: SearchConfig) -> SearchConfig {
        SearchConfig {
            theta_points: self.theta_points.unwrap_or(base.theta_points),
            m_points: self.m_points.unwrap_or(base.m_points),
            tol: self.tol.unwrap_or(base.tol),
            ..base
        }
    }

    pub fn grid(&self) -> GridConfig {
        let base = GridConfig::default();
        GridConfig {
            radii: self.radii.clone().unwrap_or(base.radii),
            angles: self.angles.unwrap_or(base.angles),
            tol: self.tol.unwrap_or(base.tol),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layering() {
        let file = RunConfig {
            seed: Some(7),
            ..RunConfig::default()
        };
        let flags = RunConfig {
            seed: Some(1),
            samples: Some(10),
            ..RunConfig::default()
        };
        let merged = file.over(flags);
        assert_eq!(merged.seed, Some(7));
        assert_eq!(merged.samples, Some(10));
    }

    #[test]
    fn parses_toml() {
        let c: RunConfig = toml::from_str("seed = 3\nangles = 64\nradii = [0.5, 0.9]\n").unwrap();
        assert_eq!(c.seed, Some(3));
        assert_eq!(c.grid().angles, 64);
        assert!(toml::from_str::<RunConfig>("bogus = 1").is_err());
        let bad = RunConfig {
            angles: Some(0),
            ..RunConfig::default()
        };
        assert!(bad.validate().is_err());
    }
}
