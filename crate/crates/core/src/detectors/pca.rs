use serde::{Deserialize, Serialize};

use super::jacobi::symmetric_eigen;
use super::DetectorError;

pub const DEFAULT_SPE_PERCENTILE: f64 = 99.0;

/// Principal subspace of a sensor fusion and its SPE alarm level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel {
    pub mean: Vec<f64>,
    /// `k` orthonormal rows, ordered by decreasing explained variance.
    pub components: Vec<Vec<f64>>,
    pub k: usize,
    pub spe_threshold: f64,
}

/// Fits a `k`-component model to `calibration` (rows are time steps,
/// columns are fused sensors). The SPE threshold is the `percentile`
/// (0..=100, linear interpolation) of the calibration rows' SPE.
pub fn pca_fit(calibration: &[Vec<f64>], k: usize, percentile: f64) -> Result<PcaModel, DetectorError> {
    let n = calibration.len();
    let m = calibration.first().map_or(0, Vec::len);
    if m < 2 {
        return Err(DetectorError::DegenerateData(format!("need at least 2 sensors, got {m}")));
    }
    if let Some((i, row)) = calibration.iter().enumerate().find(|(_, r)| r.len() != m) {
        return Err(DetectorError::DimensionMismatch { expected: m, got: row.len(), row: Some(i) });
    }
    if k == 0 || k >= m {
        return Err(DetectorError::InvalidComponents { k, sensors: m });
    }
    if n < m {
        return Err(DetectorError::DegenerateData(format!("{n} rows is fewer than {m} sensors")));
    }
    if !(0.0..=100.0).contains(&percentile) {
        return Err(DetectorError::InvalidPercentile(percentile));
    }
    if calibration.iter().flatten().any(|x| !x.is_finite()) {
        return Err(DetectorError::DegenerateData("calibration contains non-finite values".into()));
    }

    let mean: Vec<f64> = (0..m).map(|j| calibration.iter().map(|r| r[j]).sum::<f64>() / n as f64).collect();
    let mut cov = vec![vec![0.0; m]; m];
    for row in calibration {
        for i in 0..m {
            let di = row[i] - mean[i];
            for j in i..m {
                cov[i][j] += di * (row[j] - mean[j]);
            }
        }
    }
    let denom = (n - 1).max(1) as f64;
    for i in 0..m {
        for j in i..m {
            cov[i][j] /= denom;
            cov[j][i] = cov[i][j];
        }
    }
    if let Some(j) = (0..m).find(|&j| cov[j][j] <= 0.0) {
        return Err(DetectorError::DegenerateData(format!("sensor column {j} is constant")));
    }

    let (_, vectors) = symmetric_eigen(&cov);
    let components: Vec<Vec<f64>> = vectors
        .into_iter()
        .take(k)
        .map(|mut v| {
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let lead = v.iter().copied().fold(0.0f64, |a, x| if x.abs() > a.abs() { x } else { a });
            let sign = if lead < 0.0 { -1.0 } else { 1.0 };
            v.iter_mut().for_each(|x| *x *= sign / norm);
            v
        })
        .collect();

    let mut model = PcaModel { mean, components, k, spe_threshold: 0.0 };
    let mut spes: Vec<f64> = calibration.iter().map(|r| model.spe_unchecked(r)).collect();
    model.spe_threshold = percentile_of(&mut spes, percentile);
    Ok(model)
}

/// Linear-interpolated percentile (`p` in 0..=100) of `values`.
pub fn percentile_of(values: &mut [f64], p: f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    let rank = p / 100.0 * (values.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let frac = rank - lo as f64;
    values[lo] + (values[hi] - values[lo]) * frac
}

impl PcaModel {
    pub fn sensors(&self) -> usize {
        self.mean.len()
    }

    /// Squared norm of the part of `x - mean` outside the retained subspace.
    pub fn spe(&self, x: &[f64]) -> Result<f64, DetectorError> {
        if x.len() != self.mean.len() {
            return Err(DetectorError::DimensionMismatch { expected: self.mean.len(), got: x.len(), row: None });
        }
        Ok(self.spe_unchecked(x))
    }

    fn spe_unchecked(&self, x: &[f64]) -> f64 {
        let mut residual: Vec<f64> = x.iter().zip(&self.mean).map(|(a, b)| a - b).collect();
        let centered = residual.clone();
        for p in &self.components {
            let t: f64 = p.iter().zip(&centered).map(|(a, b)| a * b).sum();
            residual.iter_mut().zip(p).for_each(|(r, pi)| *r -= t * pi);
        }
        residual.iter().map(|r| r * r).sum()
    }

    /// Same model restricted to its first `k` components.
    pub fn truncated(&self, k: usize) -> Self {
        let k = k.min(self.components.len());
        Self { components: self.components[..k].to_vec(), k, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DetectorError> {
        let model: Self = serde_json::from_str(text).map_err(|e| DetectorError::Model(e.to_string()))?;
        let m = model.mean.len();
        if model.components.len() != model.k || model.k == 0 || model.k >= m {
            return Err(DetectorError::Model(format!("k={} inconsistent with {} components over {m} sensors", model.k, model.components.len())));
        }
        if model.components.iter().any(|c| c.len() != m) {
            return Err(DetectorError::Model("component length differs from mean length".into()));
        }
        if !(model.spe_threshold >= 0.0) {
            return Err(DetectorError::Model("spe_threshold must be nonnegative".into()));
        }
        Ok(model)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_data_has_zero_spe() {
        let data: Vec<Vec<f64>> = (0..50).map(|i| vec![i as f64 * 0.3, i as f64 * 0.6]).collect();
        let model = pca_fit(&data, 1, 99.0).unwrap();
        for row in &data {
            assert!(model.spe(row).unwrap() < 1e-18);
        }
        assert!(model.spe_threshold < 1e-18);
        let h = 1.0 / 5f64.sqrt();
        assert!((model.components[0][0] - h).abs() < 1e-12);
        assert!((model.components[0][1] - 2.0 * h).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_shapes() {
        let data: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, (i * i) as f64, 1.0 + i as f64 * 0.5]).collect();
        assert!(matches!(pca_fit(&data, 3, 99.0), Err(DetectorError::InvalidComponents { k: 3, sensors: 3 })));
        assert!(matches!(pca_fit(&data, 0, 99.0), Err(DetectorError::InvalidComponents { .. })));
        let constant: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64, 4.0]).collect();
        assert!(matches!(pca_fit(&constant, 1, 99.0), Err(DetectorError::DegenerateData(_))));
        let short = vec![vec![1.0, 2.0, 3.0], vec![2.0, 1.0, 0.0]];
        assert!(matches!(pca_fit(&short, 1, 99.0), Err(DetectorError::DegenerateData(_))));
        let ragged = vec![vec![1.0, 2.0], vec![2.0]];
        assert!(matches!(pca_fit(&ragged, 1, 99.0), Err(DetectorError::DimensionMismatch { row: Some(1), .. })));
    }

    #[test]
    fn spe_checks_dimension() {
        let data: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, (i % 7) as f64]).collect();
        let model = pca_fit(&data, 1, 99.0).unwrap();
        assert!(model.spe(&[1.0]).is_err());
        assert_eq!(model.spe(&model.mean.clone()).unwrap(), 0.0);
    }

    #[test]
    fn percentile_interpolates() {
        let mut v = vec![4.0, 1.0, 3.0, 2.0];
        assert_eq!(percentile_of(&mut v, 0.0), 1.0);
        assert_eq!(percentile_of(&mut v, 100.0), 4.0);
        assert_eq!(percentile_of(&mut v, 50.0), 2.5);
    }

    #[test]
    fn json_reload_is_exact() {
        let data: Vec<Vec<f64>> =
            (0..30).map(|i| vec![(i as f64).sin() * 3.0, (i as f64 * 0.7).cos() + i as f64 * 0.01, i as f64 / 7.0]).collect();
        let model = pca_fit(&data, 2, 95.0).unwrap();
        let back = PcaModel::from_json(&model.to_json()).unwrap();
        assert_eq!(back, model);
        assert!(PcaModel::from_json(r#"{"mean":[0,0],"components":[[1,0],[0,1]],"k":2,"spe_threshold":0}"#).is_err());
    }
}
