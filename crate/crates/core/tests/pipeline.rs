use proptest::prelude::*;
use sensorval::pipeline::{Validator, ACCEPT_SLACK};
use sensorval::simulate::{fault_suite, generate, inject, FaultKind, FaultSpec, LabeledStream, SignalProfile};
use sensorval::{Flag, PipelineConfig, Sample, SensorPipeline, ValidationOutcome};

const SPIKE_CONFIDENCE: f64 = 0.24002787858489996;

fn run(samples: &[Sample], cfg: PipelineConfig) -> (Vec<ValidationOutcome>, usize) {
    let mut p = SensorPipeline::new(cfg, "sensor").unwrap();
    let mut reports = 0;
    let outcomes = samples
        .iter()
        .map(|s| {
            let out = p.step(s);
            reports += out.report.is_some() as usize;
            out.outcome
        })
        .collect();
    (outcomes, reports + p.finalize().is_some() as usize)
}

fn noisy(n: usize, noise_std: f64, seed: u64) -> Vec<Sample> {
    generate(&SignalProfile { noise_std, seed, ..Default::default() }, n).unwrap()
}

fn steady_then(tail: &[f64]) -> Vec<Sample> {
    let mut s: Vec<Sample> = (0..20).map(|i| Sample::new(i as f64, "sensor", 200.0)).collect();
    s.extend(tail.iter().enumerate().map(|(i, &v)| Sample::new(20.0 + i as f64, "sensor", v)));
    s
}

#[test]
fn clean_stream_passes_through_unchanged() {
    for seed in 0..5 {
        let samples = noisy(300, 0.5, seed);
        let (outcomes, reports) = run(&samples, PipelineConfig::default());
        assert_eq!(reports, 0);
        for (s, o) in samples.iter().zip(&outcomes) {
            assert!(o.confidence >= 0.5 - ACCEPT_SLACK);
            assert!(!o.reconstructed);
            assert_eq!(o.accepted.to_bits(), s.value.to_bits());
        }
    }
}

#[test]
fn spike_is_scored_low_and_reconstructed() {
    let clean = LabeledStream::clean(noisy(80, 0.5, 7));
    let stream = inject(&clean, &FaultSpec::new(FaultKind::Spike, 50, 1, 5.0), 1).unwrap();
    let mut p = SensorPipeline::new(PipelineConfig::default(), "sensor").unwrap();
    let mut before = None;
    for (i, s) in stream.samples.iter().enumerate() {
        if i == 50 {
            before = p.estimate();
        }
        let o = p.step(s).outcome;
        if i == 50 {
            assert!((o.confidence - SPIKE_CONFIDENCE).abs() < 1e-9, "{}", o.confidence);
            assert!(o.reconstructed);
            assert_eq!(Some(o.accepted), before);
            assert!((o.accepted - 200.0).abs() < 1.0);
        } else {
            assert!(!o.reconstructed, "sample {i}");
        }
    }
}

#[test]
fn flags_and_reconstruction_agree_with_thresholds() {
    for case in fault_suite() {
        let (outcomes, _) = run(&case.stream.samples, PipelineConfig::default());
        for (s, o) in case.stream.samples.iter().zip(&outcomes) {
            if o.reconstructed {
                assert!(o.confidence < 0.5);
            } else {
                assert_eq!(o.accepted, s.value);
            }
            assert!((0.0..=1.0).contains(&o.confidence));
        }
    }
}

#[test]
fn reconstruction_stays_inside_the_accepted_envelope() {
    for case in fault_suite() {
        let (outcomes, _) = run(&case.stream.samples, PipelineConfig::default());
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for o in &outcomes {
            if o.reconstructed {
                assert!(o.accepted >= lo && o.accepted <= hi, "{} outside [{lo}, {hi}]", o.accepted);
            } else {
                lo = lo.min(o.accepted);
                hi = hi.max(o.accepted);
            }
        }
    }
}

#[test]
fn reports_match_run_lengths_of_faulty_scores() {
    let cfg = PipelineConfig::default();
    for case in fault_suite() {
        let (outcomes, reports) = run(&case.stream.samples, cfg.clone());
        let mut expected = 0;
        let mut run_len = 0;
        for o in &outcomes {
            if !o.flags.contains(Flag::Warmup) && o.confidence < cfg.fault_threshold {
                run_len += 1;
            } else {
                expected += (run_len >= cfg.report_after) as usize;
                run_len = 0;
            }
        }
        expected += (run_len >= cfg.report_after) as usize;
        assert_eq!(reports, expected, "{:?} seed {}", case.kind, case.seed);
    }
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let case = &fault_suite()[7];
    let encode = || {
        let (outcomes, _) = run(&case.stream.samples, PipelineConfig::default());
        serde_json::to_string(&outcomes).unwrap()
    };
    assert_eq!(encode(), encode());
}

#[test]
fn sensors_are_validated_independently() {
    let a = noisy(120, 0.5, 1);
    let b: Vec<Sample> = inject(&LabeledStream::clean(noisy(120, 0.5, 2)), &FaultSpec::new(FaultKind::NoiseBurst, 40, 80, 8.0), 3)
        .unwrap()
        .samples
        .into_iter()
        .map(|s| Sample { sensor_id: "other".into(), ..s })
        .collect();
    let mut v = Validator::new(PipelineConfig::default()).unwrap();
    let mut mixed_a = Vec::new();
    for (x, y) in a.iter().zip(&b) {
        mixed_a.push(v.process(x).outcome);
        v.process(y);
    }
    let (alone, _) = run(&a, PipelineConfig::default());
    assert_eq!(mixed_a, alone);
}

#[test]
fn ten_faulty_samples_report_when_the_run_closes() {
    let mut samples = steady_then(&[f64::NAN; 10]);
    samples.push(Sample::new(30.0, "sensor", 200.0));
    let mut p = SensorPipeline::new(PipelineConfig::default(), "sensor").unwrap();
    let emitted: Vec<usize> = samples.iter().enumerate().filter_map(|(i, s)| p.step(s).report.map(|_| i)).collect();
    assert_eq!(emitted, vec![30]);
}

#[test]
fn open_episode_flushes_at_end_of_stream() {
    let mut p = SensorPipeline::new(PipelineConfig::default(), "sensor").unwrap();
    for s in steady_then(&[f64::NAN; 12]) {
        assert!(p.step(&s).report.is_none());
    }
    let r = p.finalize().unwrap();
    assert_eq!(r.sample_count, 12);
    assert_eq!((r.start, r.end), (20.0, 31.0));
    assert!(p.finalize().is_none());
}

#[test]
fn short_episode_is_not_reported() {
    let mut samples = steady_then(&[f64::NAN; 3]);
    samples.push(Sample::new(23.0, "sensor", 200.0));
    let (_, reports) = run(&samples, PipelineConfig::default());
    assert_eq!(reports, 0);
    let (_, reports) = run(&steady_then(&[]), PipelineConfig::default());
    assert_eq!(reports, 0);
}

#[test]
fn non_finite_values_are_rejected_with_zero_confidence() {
    let (outcomes, _) = run(&steady_then(&[f64::INFINITY, f64::NAN, 200.0]), PipelineConfig::default());
    for o in &outcomes[20..22] {
        assert_eq!(o.confidence, 0.0);
        assert!(o.reconstructed);
        assert_eq!(o.accepted, 200.0);
    }
    assert!(!outcomes[22].reconstructed);
}

#[test]
fn time_regression_does_not_advance_the_stream() {
    let mut samples = steady_then(&[]);
    samples.push(Sample::new(5.0, "sensor", 900.0));
    samples.push(Sample::new(20.0, "sensor", 200.0));
    let (outcomes, _) = run(&samples, PipelineConfig::default());
    assert!(outcomes[20].flags.contains(Flag::NonMonotonicTime));
    assert_eq!(outcomes[20].accepted, 200.0);
    assert!(!outcomes[21].reconstructed);
    assert!(outcomes[21].confidence > 0.5);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn confident_samples_are_never_altered(values in prop::collection::vec(150.0..250.0f64, 1..120)) {
        let samples: Vec<Sample> = values.iter().enumerate().map(|(i, &v)| Sample::new(i as f64, "sensor", v)).collect();
        let (outcomes, _) = run(&samples, PipelineConfig::default());
        for (s, o) in samples.iter().zip(&outcomes) {
            if o.confidence >= 0.5 {
                prop_assert_eq!(o.accepted.to_bits(), s.value.to_bits());
            }
            if !o.reconstructed {
                prop_assert_eq!(o.accepted.to_bits(), s.value.to_bits());
            }
        }
    }
}
