//! Detection quality of reconstruction decisions against ground truth.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Score {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
    pub true_negatives: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Scores `predicted[i]` (reconstructed) against `actual[i]` (labelled
/// faulty). Empty denominators count as a perfect 1.0 and add a note.
///
/// # Panics
/// If the slices differ in length.
pub fn score(predicted: &[bool], actual: &[bool]) -> Score {
    assert_eq!(predicted.len(), actual.len(), "score inputs must be aligned");
    let (mut tp, mut fp, mut fneg, mut tn) = (0, 0, 0, 0);
    for (&p, &a) in predicted.iter().zip(actual) {
        match (p, a) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fneg += 1,
            (false, false) => tn += 1,
        }
    }
    let mut notes = Vec::new();
    let precision = if tp + fp == 0 {
        notes.push("no positive predictions; precision is vacuously 1");
        1.0
    } else {
        tp as f64 / (tp + fp) as f64
    };
    let recall = if tp + fneg == 0 {
        notes.push("no labelled faults; recall is vacuously 1");
        1.0
    } else {
        tp as f64 / (tp + fneg) as f64
    };
    let f1 = if precision + recall > 0.0 { 2.0 * precision * recall / (precision + recall) } else { 0.0 };
    Score {
        precision,
        recall,
        f1,
        true_positives: tp,
        false_positives: fp,
        false_negatives: fneg,
        true_negatives: tn,
        note: (!notes.is_empty()).then(|| notes.join("; ")),
    }
}
