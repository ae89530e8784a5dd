//! Seed-fixed fault streams used by the detection-quality checks.

use super::{generate, inject, FaultKind, FaultSpec, LabeledStream, SignalProfile};

/// Streams per fault kind in [`fault_suite`].
pub const STREAMS_PER_KIND: usize = 5;
pub const SUITE_LEN: usize = 200;
pub const SUITE_NOISE_STD: f64 = 0.5;
pub const SPIKE_MAGNITUDE: f64 = 8.0;
pub const BURST_MAGNITUDE: f64 = 8.0;

#[derive(Debug, Clone)]
pub struct SuiteCase {
    pub kind: FaultKind,
    pub seed: u64,
    pub faults: Vec<FaultSpec>,
    pub stream: LabeledStream,
}

fn faults_for(kind: FaultKind, i: usize) -> Vec<FaultSpec> {
    match kind {
        FaultKind::Spike => (0..4)
            .map(|k| {
                let sign = if (k + i) % 2 == 0 { 1.0 } else { -1.0 };
                FaultSpec::new(kind, 40 + 40 * k + 3 * i, 1, sign * SPIKE_MAGNITUDE)
            })
            .collect(),
        FaultKind::NoiseBurst => {
            let start = 100 + 5 * i;
            vec![FaultSpec::new(kind, start, SUITE_LEN - start, BURST_MAGNITUDE)]
        }
        FaultKind::StuckAt => vec![FaultSpec::new(kind, 100, 60, 0.0)],
        FaultKind::Drift => vec![FaultSpec::new(kind, 100, 100, if i % 2 == 0 { 20.0 } else { -20.0 })],
    }
}

/// Twenty labelled streams, five per fault kind, at a steady 200 cm level.
pub fn fault_suite() -> Vec<SuiteCase> {
    let kinds = [FaultKind::Spike, FaultKind::NoiseBurst, FaultKind::StuckAt, FaultKind::Drift];
    let mut out = Vec::new();
    for (ki, &kind) in kinds.iter().enumerate() {
        for i in 0..STREAMS_PER_KIND {
            let seed = 1000 + (ki * STREAMS_PER_KIND + i) as u64;
            let profile = SignalProfile { noise_std: SUITE_NOISE_STD, seed, ..Default::default() };
            let mut stream = LabeledStream::clean(generate(&profile, SUITE_LEN).expect("valid profile"));
            let faults = faults_for(kind, i);
            for (j, f) in faults.iter().enumerate() {
                stream = inject(&stream, f, seed.wrapping_mul(31).wrapping_add(j as u64)).expect("fault in range");
            }
            out.push(SuiteCase { kind, seed, faults, stream });
        }
    }
    out
}

/// 120 samples whose noise standard deviation triples from sample 60 on:
/// independent noise of `sqrt(8) * noise_std` is added to the second half.
pub fn burst_after_60(noise_std: f64, seed: u64) -> LabeledStream {
    let profile = SignalProfile { noise_std, seed, ..Default::default() };
    let clean = LabeledStream::clean(generate(&profile, 120).expect("valid profile"));
    inject(&clean, &FaultSpec::new(FaultKind::NoiseBurst, 60, 60, 8f64.sqrt() * noise_std), seed ^ 0x5EED).expect("in range")
}
