//! Type-1 Mamdani inference.
//!
//! Inputs are clamped to their declared ranges and fuzzified, each rule's
//! firing strength clips (or scales) its consequent term, the clipped terms
//! are aggregated pointwise over a uniform output grid, and the aggregate is
//! reduced to a crisp value by its centroid.

mod default_rulebase;
mod engine;
mod membership;
mod rule;
mod surface;
mod system;
mod variable;

use thiserror::Error;

pub use default_rulebase::{default_rulebase, CONFIDENCE_RANGE, DISTANCE_RANGE, ROC_RANGE, STD_RANGE};
pub use engine::{defuzzify_centroid, infer, AggregatedOutput, Engine, Inference, Scratch};
pub use membership::MembershipFunction;
pub use rule::{Connective, Rule};
pub use surface::{control_surface, Surface};
pub use system::{
    firing_strength, Aggregation, AndMethod, Defuzzification, FuzzySystem, Implication, Location, OrMethod,
    Violation, DEFAULT_RESOLUTION,
};
pub use variable::{Domain, LinguisticVariable, Term};

#[derive(Debug, Error)]
pub enum FuzzyError {
    #[error("invalid fuzzy system: {}", join(.0))]
    InvalidSystem(Vec<Violation>),
    #[error("expected {expected} inputs, got {got}")]
    InputCount { expected: usize, got: usize },
    #[error("input {0} is not finite")]
    NonFiniteInput(usize),
    #[error("aggregated output has zero area")]
    ZeroArea,
    #[error("output index {0} out of range")]
    OutputIndex(usize),
    #[error("surface axes {axis_i} and {axis_j} must be distinct inputs below {inputs}")]
    Axes { axis_i: usize, axis_j: usize, inputs: usize },
    #[error("surface grid must be at least 2x2, got {0}x{1}")]
    Grid(usize, usize),
}

fn join(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
