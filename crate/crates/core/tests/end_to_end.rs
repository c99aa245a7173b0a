use ifs_cavity::evolution::{default_steps, evolve, integrate_ode, AmplitudeSet, EvolutionMode, ModelParams};
use ifs_cavity::ifs::{initial_amplitudes, CoherentSpec, WeightFamily, WeightSequence};
use ifs_cavity::sweep::{compare_modes, run_sweep, FigurePreset, SweepConfig, SweepMode, Witness};
use ifs_cavity::witnesses::{mandel_q, mandel_q_closed, moments_exact, moments_paper};
use proptest::prelude::*;

// tests/golden/squeezing_factorial.py
const GOLDEN_Q0: f64 = 0.2402115896489615;

fn family() -> impl Strategy<Value = WeightFamily> {
    prop_oneof![
        Just(WeightFamily::Factorial),
        Just(WeightFamily::FactorialSquared),
        (0.1f64..0.9).prop_map(|q| WeightFamily::QBracket { q }),
        (0.1f64..0.9).prop_map(|q| WeightFamily::QBracketFactorial { q }),
    ]
}

fn model(family: WeightFamily, nbar: f64) -> ModelParams {
    let seq = WeightSequence::new(family, 40).unwrap();
    let field = initial_amplitudes(&CoherentSpec::paper(nbar, 0.0), &seq, 40).unwrap();
    ModelParams::new(seq, field, 1.0).unwrap()
}

#[test]
fn golden_mandel_at_start() {
    let seq = WeightSequence::new(WeightFamily::Factorial, 40).unwrap();
    let q = mandel_q_closed(&seq, 0.5, 0.0, 40).unwrap().unwrap();
    assert!((q - GOLDEN_Q0).abs() < 1e-12);
}

#[test]
fn every_preset_sweeps_the_full_grid() {
    for preset in FigurePreset::all() {
        let config = preset.config();
        let series = run_sweep(&config).unwrap();
        assert_eq!(series.len(), 1, "{}", preset.name());
        let rows = &series[0].rows;
        assert_eq!(rows.len(), 1001);
        assert_eq!(rows[0].gt, 0.0);
        assert_eq!(rows[1000].gt, 50.0);
        assert!(rows.windows(2).all(|w| w[0].gt < w[1].gt));
    }
}

#[test]
fn paper_and_oracle_share_the_start_and_then_part() {
    let config = SweepConfig {
        points: 201,
        gt_max: 25.0,
        witnesses: vec![Witness::Mandel, Witness::Squeezing],
        modes: vec![SweepMode::Paper, SweepMode::Oracle],
        ..SweepConfig::default()
    };
    let report = compare_modes(&config).unwrap();
    assert_eq!(report.rows[0].q_deviation, Some(0.0));
    assert_eq!(report.rows[0].s_deviation, 0.0);
    assert!(report.rows[200].q_deviation.unwrap() > 0.0);
    assert!(report.max_oracle_norm_drift < 1e-8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn closed_form_q_matches_moment_route(family in family(), nbar in 0.05f64..0.5, gt in 0.0f64..50.0) {
        let p = model(family, nbar);
        let amps = evolve(EvolutionMode::PaperClosedForm, &p, gt).unwrap();
        let via_moments = mandel_q(&moments_paper(&amps, p.seq()).unwrap()).unwrap();
        let direct = mandel_q_closed(p.seq(), nbar, gt, 40).unwrap().unwrap();
        prop_assert!((via_moments - direct).abs() < 1e-10);
    }

    #[test]
    fn lossless_oracle_conserves_norm(family in family(), nbar in 0.05f64..0.5, t in 0.1f64..10.0) {
        let p = model(family, nbar).with_couplings(1.0, 0.4).with_detuning(0.7);
        let start = AmplitudeSet::initial(&p).total_norm();
        let end = integrate_ode(&p, t, default_steps(&p, t)).unwrap().total_norm();
        prop_assert!((end - start).abs() < 1e-10);
    }

    #[test]
    fn mean_photon_number_is_engine_independent(family in family(), nbar in 0.05f64..0.5, gt in 0.0f64..50.0) {
        let p = model(family, nbar);
        let amps = evolve(EvolutionMode::PaperClosedForm, &p, gt).unwrap();
        let a = moments_paper(&amps, p.seq()).unwrap();
        let b = moments_exact(&amps, p.seq()).unwrap();
        prop_assert!((a.m1 - b.m1).abs() < 1e-12 * (1.0 + a.m1));
        prop_assert!((a.m2 - b.m2).abs() < 1e-12 * (1.0 + a.m2));
    }
}
