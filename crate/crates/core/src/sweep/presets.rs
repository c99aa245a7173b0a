use std::fmt;
use std::str::FromStr;

use super::{SweepConfig, Witness};
use crate::error::{Error, Result};
use crate::ifs::WeightFamily;

/// q used by every q-bracket panel.
pub const PRESET_Q: f64 = 0.5;

/// The twelve figure panels: four figures × three weight families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FigurePreset {
    figure: u8,
    panel: char,
}

impl FigurePreset {
    pub fn all() -> Vec<FigurePreset> {
        (2..=5)
            .flat_map(|figure| ['a', 'b', 'c'].map(|panel| FigurePreset { figure, panel }))
            .collect()
    }

    pub fn name(&self) -> String {
        format!("fig{}{}", self.figure, self.panel)
    }

    pub fn config(&self) -> SweepConfig {
        let weights = match self.panel {
            'a' => WeightFamily::Factorial,
            'b' => WeightFamily::FactorialSquared,
            _ => WeightFamily::QBracket { q: PRESET_Q },
        };
        let (witness, nbar, k) = match self.figure {
            2 => (Witness::Mandel, 0.5, 0.0),
            3 => (Witness::Mandel, 0.5, 0.1),
            4 => (Witness::Squeezing, 0.3, 0.0),
            _ => (Witness::Squeezing, 0.3, 0.5),
        };
        SweepConfig {
            weights,
            nbar,
            k,
            witnesses: vec![witness],
            ..SweepConfig::default()
        }
    }
}

impl fmt::Display for FigurePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for FigurePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::Config(format!("unknown figure preset {s:?} (expected fig2a..fig5c)"));
        let rest = s.strip_prefix("fig").ok_or_else(unknown)?;
        let mut chars = rest.chars();
        let (Some(digit), Some(panel), None) = (chars.next(), chars.next(), chars.next()) else {
            return Err(unknown());
        };
        let figure = digit.to_digit(10).ok_or_else(unknown)? as u8;
        if !(2..=5).contains(&figure) || !matches!(panel, 'a' | 'b' | 'c') {
            return Err(unknown());
        }
        Ok(FigurePreset { figure, panel })
    }
}

/// Sweep configuration for a named panel such as `fig3b`.
pub fn figure_preset(name: &str) -> Result<SweepConfig> {
    Ok(name.parse::<FigurePreset>()?.config())
}
