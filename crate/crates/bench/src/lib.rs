//! Criterion benchmarks for the inference engine and the validation
//! pipeline; see `benches/`.
