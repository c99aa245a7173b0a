use rayon::join;
use serde::Serialize;

use super::{sample_mode, SweepConfig, SweepMode};
use crate::error::Result;

/// Paper-vs-oracle differences at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeviationRow {
    pub gt: f64,
    pub q_paper: Option<f64>,
    pub q_oracle: Option<f64>,
    /// |Q_paper - Q_oracle|, `None` if either is undefined.
    pub q_deviation: Option<f64>,
    pub s_paper: f64,
    pub s_oracle: f64,
    pub s_deviation: f64,
    /// Total norm of the paper-mode amplitudes minus its t = 0 value.
    pub paper_norm_drift: f64,
    /// Same for the oracle.
    pub oracle_norm_drift: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationReport {
    pub rows: Vec<DeviationRow>,
    pub max_q_deviation: f64,
    pub argmax_q_gt: f64,
    pub max_s_deviation: f64,
    pub argmax_s_gt: f64,
    pub max_oracle_norm_drift: f64,
}

/// Evaluates both modes on the grid and reports their pointwise disagreement.
pub fn compare_modes(config: &SweepConfig) -> Result<DeviationReport> {
    config.validate()?;
    let (paper, oracle) = join(
        || sample_mode(config, SweepMode::Paper),
        || sample_mode(config, SweepMode::Oracle),
    );
    let (paper, oracle) = (paper?, oracle?);
    let initial_norm = config
        .model()?
        .field()
        .iter()
        .skip(1)
        .map(|f| f.norm_sqr())
        .sum::<f64>();
    let rows: Vec<DeviationRow> = paper
        .iter()
        .zip(&oracle)
        .map(|(p, o)| DeviationRow {
            gt: p.gt,
            q_paper: p.q,
            q_oracle: o.q,
            q_deviation: p.q.zip(o.q).map(|(a, b)| (a - b).abs()),
            s_paper: p.s_opt,
            s_oracle: o.s_opt,
            s_deviation: (p.s_opt - o.s_opt).abs(),
            paper_norm_drift: p.block_norm - initial_norm,
            oracle_norm_drift: o.block_norm - initial_norm,
        })
        .collect();

    let argmax = |f: &dyn Fn(&DeviationRow) -> f64| {
        rows.iter()
            .map(|r| (f(r), r.gt))
            .fold((0.0, config.gt_min), |acc, x| if x.0 > acc.0 { x } else { acc })
    };
    let (max_q_deviation, argmax_q_gt) = argmax(&|r| r.q_deviation.unwrap_or(0.0));
    let (max_s_deviation, argmax_s_gt) = argmax(&|r| r.s_deviation);
    let max_oracle_norm_drift = rows.iter().map(|r| r.oracle_norm_drift.abs()).fold(0.0, f64::max);
    Ok(DeviationReport {
        rows,
        max_q_deviation,
        argmax_q_gt,
        max_s_deviation,
        argmax_s_gt,
        max_oracle_norm_drift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::WeightFamily;

    #[test]
    fn deviations_vanish_at_zero_time() {
        for weights in [WeightFamily::Factorial, WeightFamily::QBracket { q: 0.5 }] {
            let config = SweepConfig {
                weights,
                points: 2,
                gt_max: 1.0,
                ..SweepConfig::default()
            };
            let report = compare_modes(&config).unwrap();
            let first = report.rows[0];
            assert_eq!(first.gt, 0.0);
            assert_eq!(first.q_deviation, Some(0.0));
            assert_eq!(first.s_deviation, 0.0);
            assert!(first.paper_norm_drift.abs() < 1e-15);
        }
    }

    #[test]
    fn modes_disagree_at_quarter_century() {
        let config = SweepConfig {
            gt_min: 25.0,
            gt_max: 25.0,
            points: 1,
            ..SweepConfig::default()
        };
        let report = compare_modes(&config).unwrap();
        assert!(report.rows[0].q_deviation.unwrap() > 0.0);
    }

    #[test]
    fn oracle_norm_is_conserved_without_decay() {
        let report = compare_modes(&SweepConfig::default()).unwrap();
        assert!(report.max_oracle_norm_drift < 1e-8);
        // The printed form grows the norm as Σ|F_n|²(5 - 4 cos β_n t) - 1.
        let worst = report.rows.iter().map(|r| r.paper_norm_drift).fold(0.0, f64::max);
        assert!(worst > 1.0);
    }
}
