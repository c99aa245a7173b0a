//! Config-file schema and flag precedence.

use std::fs;
use std::path::Path;

use ifs_cavity::ifs::{parse_table_values, WeightFamily, DEFAULT_N_MAX, TABLE_MARGIN};
use ifs_cavity::sweep::{SweepConfig, SweepMode, Witness};
use serde::{Deserialize, Serialize};

use crate::args::{ModeArg, ModelFlags};
use crate::error::{CliError, CliResult};

/// q used when a q-bracket family is chosen without `--q`.
pub const DEFAULT_Q: f64 = 0.5;

/// Contents of a `--config` file. Every key is optional and mirrors a flag.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Settings {
    pub lambda: Option<String>,
    pub q: Option<f64>,
    pub nbar: Option<f64>,
    pub zeta: Option<f64>,
    pub g: Option<f64>,
    pub k: Option<f64>,
    pub gt_min: Option<f64>,
    pub gt_max: Option<f64>,
    pub points: Option<usize>,
    pub nmax: Option<usize>,
    pub mode: Option<ModeArg>,
}

impl Settings {
    pub fn from_json(text: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config file: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_json(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Values set in `top` win.
    pub fn overlay(self, top: Settings) -> Settings {
        Settings {
            lambda: top.lambda.or(self.lambda),
            q: top.q.or(self.q),
            nbar: top.nbar.or(self.nbar),
            zeta: top.zeta.or(self.zeta),
            g: top.g.or(self.g),
            k: top.k.or(self.k),
            gt_min: top.gt_min.or(self.gt_min),
            gt_max: top.gt_max.or(self.gt_max),
            points: top.points.or(self.points),
            nmax: top.nmax.or(self.nmax),
            mode: top.mode.or(self.mode),
        }
    }

    /// Reads `--config` if given and lays the explicit flags over it.
    pub fn from_flags(flags: &ModelFlags) -> CliResult<Settings> {
        let file = match &flags.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        Ok(file.overlay(Settings {
            lambda: flags.lambda.clone(),
            q: flags.q,
            nbar: flags.nbar,
            zeta: flags.zeta,
            g: flags.g,
            k: flags.k,
            gt_min: flags.gt_min,
            gt_max: flags.gt_max,
            points: flags.points,
            nmax: flags.nmax,
            mode: flags.mode,
        }))
    }

    pub fn modes(&self) -> Vec<SweepMode> {
        match self.mode.unwrap_or(ModeArg::Paper) {
            ModeArg::Paper => vec![SweepMode::Paper],
            ModeArg::Oracle => vec![SweepMode::Oracle],
            ModeArg::Both => vec![SweepMode::Paper, SweepMode::Oracle],
        }
    }

    /// The fully resolved sweep configuration.
    pub fn resolve(&self, witnesses: Vec<Witness>) -> CliResult<SweepConfig> {
        let defaults = SweepConfig::default();
        let (weights, custom_table) = parse_lambda(self.lambda.as_deref().unwrap_or("factorial"), self.q)?;
        let n_max = match (self.nmax, &custom_table) {
            (Some(n), _) => n,
            (None, Some(table)) => table.len().saturating_sub(TABLE_MARGIN + 1).min(DEFAULT_N_MAX),
            (None, None) => DEFAULT_N_MAX,
        };
        let config = SweepConfig {
            weights,
            custom_table,
            nbar: self.nbar.unwrap_or(defaults.nbar),
            zeta: self.zeta.unwrap_or(defaults.zeta),
            g: self.g.unwrap_or(defaults.g),
            k: self.k.unwrap_or(defaults.k),
            gt_min: self.gt_min.unwrap_or(defaults.gt_min),
            gt_max: self.gt_max.unwrap_or(defaults.gt_max),
            points: self.points.unwrap_or(defaults.points),
            witnesses,
            modes: self.modes(),
            n_max,
            ..defaults
        };
        config.validate()?;
        Ok(config)
    }
}

/// Parses a `--lambda` value. `q` only matters for the q-bracket families.
pub fn parse_lambda(spec: &str, q: Option<f64>) -> CliResult<(WeightFamily, Option<Vec<f64>>)> {
    let q = q.unwrap_or(DEFAULT_Q);
    let family = match spec {
        "factorial" => WeightFamily::Factorial,
        "factorial2" => WeightFamily::FactorialSquared,
        "qbracket" => WeightFamily::QBracket { q },
        "qbracket-factorial" => WeightFamily::QBracketFactorial { q },
        other => {
            let Some(path) = other.strip_prefix("file:") else {
                return Err(CliError::Config(format!(
                    "unknown weight family {other:?}; expected factorial, factorial2, qbracket, \
                     qbracket-factorial or file:PATH"
                )));
            };
            let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            return Ok((WeightFamily::Custom, Some(parse_table_values(&text)?)));
        }
    };
    Ok((family, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file = Settings::from_json(r#"{"lambda": "qbracket", "q": 0.3, "nbar": 0.2, "points": 11}"#).unwrap();
        let merged = file.overlay(Settings {
            nbar: Some(0.7),
            ..Settings::default()
        });
        assert_eq!(merged.nbar, Some(0.7));
        assert_eq!(merged.q, Some(0.3));
        assert_eq!(merged.points, Some(11));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(matches!(
            Settings::from_json(r#"{"nbaar": 1}"#),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn defaults_match_figure_window() {
        let c = Settings::default().resolve(vec![Witness::Mandel]).unwrap();
        assert_eq!(c, SweepConfig::default());
    }

    #[test]
    fn lambda_names() {
        assert_eq!(
            parse_lambda("factorial2", None).unwrap().0,
            WeightFamily::FactorialSquared
        );
        assert_eq!(
            parse_lambda("qbracket-factorial", Some(0.2)).unwrap().0,
            WeightFamily::QBracketFactorial { q: 0.2 }
        );
        assert_eq!(
            parse_lambda("qbracket", None).unwrap().0,
            WeightFamily::QBracket { q: 0.5 }
        );
        assert!(matches!(parse_lambda("bosons", None), Err(CliError::Config(_))));
        assert!(matches!(
            parse_lambda("file:/nonexistent/table", None),
            Err(CliError::Io { .. })
        ));
    }

    #[test]
    fn both_modes() {
        let s = Settings {
            mode: Some(ModeArg::Both),
            ..Settings::default()
        };
        assert_eq!(s.modes(), vec![SweepMode::Paper, SweepMode::Oracle]);
    }

    #[test]
    fn invalid_grid_is_a_config_error() {
        let s = Settings {
            gt_max: Some(-1.0),
            ..Settings::default()
        };
        let err = s.resolve(vec![Witness::Mandel]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
