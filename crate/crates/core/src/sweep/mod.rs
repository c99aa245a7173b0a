//! Time-grid scans of the witnesses.

mod compare;
mod presets;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evolution::{
    default_steps, evolve, integrate_from, integrate_ode, AmplitudeSet, EvolutionMode, FieldAlignment, ModelParams,
};
use crate::ifs::{initial_amplitudes, CoherentSpec, CoherentStyle, WeightFamily, WeightSequence, DEFAULT_N_MAX};
use crate::witnesses::{MomentSource, WitnessSample};

pub use compare::{compare_modes, DeviationReport, DeviationRow};
pub use presets::{figure_preset, FigurePreset};

/// Default number of grid points over the figure window.
pub const DEFAULT_POINTS: usize = 1001;
pub const DEFAULT_GT_MAX: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Witness {
    Mandel,
    Squeezing,
}

impl Witness {
    pub fn label(self) -> &'static str {
        match self {
            Witness::Mandel => "mandel",
            Witness::Squeezing => "squeezing",
        }
    }

    pub fn value(self, sample: &WitnessSample) -> Option<f64> {
        match self {
            Witness::Mandel => sample.q,
            Witness::Squeezing => Some(sample.s_opt),
        }
    }
}

impl FromStr for Witness {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mandel" => Ok(Witness::Mandel),
            "squeezing" => Ok(Witness::Squeezing),
            _ => Err(Error::Config(format!("unknown witness {s:?}"))),
        }
    }
}

/// Printed closed forms or the ODE oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    Paper,
    Oracle,
}

impl SweepMode {
    pub fn label(self) -> &'static str {
        match self {
            SweepMode::Paper => "paper",
            SweepMode::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SweepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Everything needed to reproduce a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub weights: WeightFamily,
    /// Raw λ table for [`WeightFamily::Custom`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom_table: Option<Vec<f64>>,
    pub nbar: f64,
    pub zeta: f64,
    pub g: f64,
    pub k: f64,
    pub gt_min: f64,
    pub gt_max: f64,
    pub points: usize,
    pub witnesses: Vec<Witness>,
    pub modes: Vec<SweepMode>,
    pub n_max: usize,
    pub coherent_style: CoherentStyle,
    pub alignment: FieldAlignment,
    pub moments: MomentSource,
    /// Re-integrate the oracle from t = 0 at every grid point instead of continuing
    /// from the previous point.
    pub independent_oracle: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            weights: WeightFamily::Factorial,
            custom_table: None,
            nbar: 0.5,
            zeta: 0.0,
            g: 1.0,
            k: 0.0,
            gt_min: 0.0,
            gt_max: DEFAULT_GT_MAX,
            points: DEFAULT_POINTS,
            witnesses: vec![Witness::Mandel],
            modes: vec![SweepMode::Paper],
            n_max: DEFAULT_N_MAX,
            coherent_style: CoherentStyle::PaperAmplitudes,
            alignment: FieldAlignment::Paper,
            moments: MomentSource::PaperDiagonal,
            independent_oracle: false,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.nbar, self.zeta, self.g, self.k, self.gt_min, self.gt_max];
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(Error::Config("sweep parameters must be finite".into()));
        }
        if self.points == 0 {
            return Err(Error::Config("points must be >= 1".into()));
        }
        if self.points == 1 {
            if self.gt_min != self.gt_max {
                return Err(Error::Config("a single-point sweep needs gt_min = gt_max".into()));
            }
        } else if self.gt_min >= self.gt_max {
            return Err(Error::Config(format!(
                "gt_min = {} must be below gt_max = {}",
                self.gt_min, self.gt_max
            )));
        }
        if self.g <= 0.0 {
            return Err(Error::Config(format!("coupling g = {} must be positive", self.g)));
        }
        if self.k < 0.0 {
            return Err(Error::Config(format!("decay rate k = {} must be >= 0", self.k)));
        }
        if self.nbar < 0.0 {
            return Err(Error::Config(format!("nbar = {} must be >= 0", self.nbar)));
        }
        if self.witnesses.is_empty() || self.modes.is_empty() {
            return Err(Error::Config("at least one witness and one mode are required".into()));
        }
        if (self.weights == WeightFamily::Custom) != self.custom_table.is_some() {
            return Err(Error::Config(
                "a custom weight table goes with, and only with, the custom family".into(),
            ));
        }
        Ok(())
    }

    /// Grid point i; shared points of refined grids are bitwise identical.
    pub fn gt_at(&self, i: usize) -> f64 {
        if self.points == 1 {
            return self.gt_min;
        }
        self.gt_min + (self.gt_max - self.gt_min) * i as f64 / (self.points - 1) as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.gt_at(i)).collect()
    }

    pub fn weight_sequence(&self) -> Result<WeightSequence> {
        match &self.custom_table {
            Some(table) => WeightSequence::from_table(table),
            None => WeightSequence::new(self.weights, self.n_max),
        }
    }

    /// Model parameters for this sweep: resonant, g1 = g2 = g, atom in (|a⟩+|b⟩)/√2.
    pub fn model(&self) -> Result<ModelParams> {
        self.validate()?;
        let seq = self.weight_sequence()?;
        let spec = CoherentSpec {
            nbar: self.nbar,
            zeta: self.zeta,
            style: self.coherent_style,
        };
        let field = initial_amplitudes(&spec, &seq, self.n_max)?;
        let params = ModelParams::new(seq, field, self.g)?
            .with_decay(self.k)
            .with_alignment(self.alignment);
        params.validate()?;
        Ok(params)
    }

    /// The closed form used for the paper mode: lossy whenever k > 0.
    pub fn paper_mode(&self) -> EvolutionMode {
        if self.k > 0.0 {
            EvolutionMode::PaperLossy
        } else {
            EvolutionMode::PaperClosedForm
        }
    }
}

/// Summary statistics of one series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesSummary {
    pub min: Option<f64>,
    pub argmin_gt: Option<f64>,
    /// Fraction of grid points whose value is defined and negative.
    pub fraction_below_zero: f64,
}

/// One witness evaluated in one mode over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessSeries {
    pub witness: Witness,
    pub mode: SweepMode,
    pub config: SweepConfig,
    pub rows: Vec<WitnessSample>,
    pub summary: SeriesSummary,
}

impl WitnessSeries {
    pub fn new(witness: Witness, mode: SweepMode, config: SweepConfig, rows: Vec<WitnessSample>) -> Self {
        let summary = summarize(witness, &rows);
        Self {
            witness,
            mode,
            config,
            rows,
            summary,
        }
    }

    /// `(gt, value)` pairs; undefined values are `None`.
    pub fn values(&self) -> impl Iterator<Item = (f64, Option<f64>)> + '_ {
        self.rows.iter().map(move |s| (s.gt, self.witness.value(s)))
    }

    /// Fraction of points with gt > `after` whose value is defined and negative.
    pub fn fraction_below_zero_after(&self, after: f64) -> f64 {
        let tail: Vec<_> = self.values().filter(|(gt, _)| *gt > after).collect();
        if tail.is_empty() {
            return 0.0;
        }
        tail.iter().filter(|(_, v)| v.is_some_and(|v| v < 0.0)).count() as f64 / tail.len() as f64
    }
}

fn summarize(witness: Witness, rows: &[WitnessSample]) -> SeriesSummary {
    let mut min: Option<(f64, f64)> = None;
    let mut below = 0usize;
    for s in rows {
        if let Some(v) = witness.value(s) {
            if v < 0.0 {
                below += 1;
            }
            if min.is_none_or(|(m, _)| v < m) {
                min = Some((v, s.gt));
            }
        }
    }
    SeriesSummary {
        min: min.map(|m| m.0),
        argmin_gt: min.map(|m| m.1),
        fraction_below_zero: if rows.is_empty() {
            0.0
        } else {
            below as f64 / rows.len() as f64
        },
    }
}

fn paper_samples(config: &SweepConfig, params: &ModelParams) -> Result<Vec<WitnessSample>> {
    let mode = config.paper_mode();
    config
        .grid()
        .into_par_iter()
        .map(|gt| {
            let amps = evolve(mode, params, gt / config.g).map_err(|e| e.at_time(gt))?;
            WitnessSample::evaluate(&amps, params.seq(), gt, config.moments).map_err(|e| e.at_time(gt))
        })
        .collect()
}

fn oracle_samples(config: &SweepConfig, params: &ModelParams) -> Result<Vec<WitnessSample>> {
    let grid = config.grid();
    let sample = |amps: &AmplitudeSet, gt: f64| {
        WitnessSample::evaluate(amps, params.seq(), gt, config.moments).map_err(|e| e.at_time(gt))
    };
    if config.independent_oracle {
        return grid
            .into_par_iter()
            .map(|gt| {
                let t = gt / config.g;
                let amps = integrate_ode(params, t, default_steps(params, t)).map_err(|e| e.at_time(gt))?;
                sample(&amps, gt)
            })
            .collect();
    }
    let mut state = AmplitudeSet::initial(params);
    let mut out = Vec::with_capacity(grid.len());
    for gt in grid {
        let t = gt / config.g;
        let dt = t - state.t;
        if dt != 0.0 {
            state = integrate_from(params, &state, dt, default_steps(params, dt)).map_err(|e| e.at_time(gt))?;
        } else {
            state.mode = EvolutionMode::OracleOde;
        }
        out.push(sample(&state, gt)?);
    }
    Ok(out)
}

/// Witness samples for one mode over the configured grid.
pub fn sample_mode(config: &SweepConfig, mode: SweepMode) -> Result<Vec<WitnessSample>> {
    let params = config.model()?;
    match mode {
        SweepMode::Paper => paper_samples(config, &params),
        SweepMode::Oracle => oracle_samples(config, &params),
    }
}

/// Runs every requested witness × mode, ordered by witness then mode.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<WitnessSeries>> {
    config.validate()?;
    let mut modes = config.modes.clone();
    modes.dedup();
    let per_mode: Vec<Vec<WitnessSample>> = modes
        .par_iter()
        .map(|&mode| sample_mode(config, mode))
        .collect::<Result<_>>()?;
    let mut witnesses = config.witnesses.clone();
    witnesses.dedup();
    let mut out = Vec::with_capacity(witnesses.len() * modes.len());
    for &witness in &witnesses {
        for (mode, rows) in modes.iter().zip(&per_mode) {
            out.push(WitnessSeries::new(witness, *mode, config.clone(), rows.clone()));
        }
    }
    Ok(out)
}
