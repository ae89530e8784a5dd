use proptest::prelude::*;
use sensorval::detectors::{pca_fit, symmetric_eigen, uncertainty_index, window_variance, DetectorError};
use sensorval::simulate::{burst_after_60, SplitMix64};
use sensorval::{PcaModel, Window};

fn window_of(values: &[f64]) -> Window {
    let mut w = Window::new(values.len().max(2));
    values.iter().for_each(|&x| w.push(x));
    w
}

/// Closed-form eigenpairs of `[[a, b], [b, d]]`, larger eigenvalue first.
fn eigen_2x2(a: f64, b: f64, d: f64) -> [(f64, [f64; 2]); 2] {
    let mean = (a + d) / 2.0;
    let r = (((a - d) / 2.0).powi(2) + b * b).sqrt();
    let vector = |l: f64| {
        let v = if b.abs() > 1e-300 { [b, l - a] } else if (l - a).abs() < (l - d).abs() { [1.0, 0.0] } else { [0.0, 1.0] };
        let n = (v[0] * v[0] + v[1] * v[1]).sqrt();
        [v[0] / n, v[1] / n]
    };
    [(mean + r, vector(mean + r)), (mean - r, vector(mean - r))]
}

/// Squared distance from `x - mean` to the span of `basis`, via classical
/// Gram-Schmidt on the basis.
fn distance_sq(basis: &[Vec<f64>], mean: &[f64], x: &[f64]) -> f64 {
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for b in basis {
        let mut v = b.clone();
        for q in &ortho {
            let dot: f64 = q.iter().zip(b).map(|(a, c)| a * c).sum();
            v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= dot * qi);
        }
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        ortho.push(v.into_iter().map(|a| a / n).collect());
    }
    let mut r: Vec<f64> = x.iter().zip(mean).map(|(a, m)| a - m).collect();
    for q in &ortho {
        let dot: f64 = q.iter().zip(&r).map(|(a, c)| a * c).sum();
        r.iter_mut().zip(q).for_each(|(ri, qi)| *ri -= dot * qi);
    }
    r.iter().map(|a| a * a).sum()
}

/// Rows scattered around a random `dims`-dimensional affine subspace of R^m.
fn correlated_rows(rng: &mut SplitMix64, n: usize, m: usize, dims: usize, noise: f64) -> Vec<Vec<f64>> {
    let dirs: Vec<Vec<f64>> = (0..dims).map(|_| (0..m).map(|_| rng.next_normal()).collect()).collect();
    (0..n)
        .map(|_| {
            let mut row: Vec<f64> = (0..m).map(|j| 10.0 * j as f64 + noise * rng.next_normal()).collect();
            for d in &dirs {
                let s = 5.0 * rng.next_normal();
                row.iter_mut().zip(d).for_each(|(r, di)| *r += s * di);
            }
            row
        })
        .collect()
}

#[test]
fn two_sensor_eigenvectors_match_closed_form() {
    let mut rng = SplitMix64::new(3);
    for _ in 0..50 {
        let (a, d) = (1.0 + 5.0 * rng.next_f64(), 1.0 + 5.0 * rng.next_f64());
        let b = 4.0 * rng.next_f64() - 2.0;
        let (values, vectors) = symmetric_eigen(&[vec![a, b], vec![b, d]]);
        for (i, (l, v)) in eigen_2x2(a, b, d).iter().enumerate() {
            assert!((values[i] - l).abs() < 1e-10, "{values:?} vs {l}");
            let dot = (vectors[i][0] * v[0] + vectors[i][1] * v[1]).abs();
            assert!((dot - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn pca_directions_match_closed_form_on_toy_fusion() {
    let mut rng = SplitMix64::new(8);
    let rows: Vec<Vec<f64>> = (0..400)
        .map(|_| {
            let s = 3.0 * rng.next_normal();
            vec![100.0 + s + 0.3 * rng.next_normal(), 50.0 + 0.5 * s + 0.3 * rng.next_normal()]
        })
        .collect();
    let model = pca_fit(&rows, 1, 99.0).unwrap();
    let n = rows.len() as f64;
    let c = |i: usize, j: usize| {
        rows.iter().map(|r| (r[i] - model.mean[i]) * (r[j] - model.mean[j])).sum::<f64>() / (n - 1.0)
    };
    let [(_, v), _] = eigen_2x2(c(0, 0), c(0, 1), c(1, 1));
    let p = &model.components[0];
    assert!(((p[0] * v[0] + p[1] * v[1]).abs() - 1.0).abs() < 1e-9);
}

#[test]
fn components_are_orthonormal() {
    let mut rng = SplitMix64::new(21);
    let rows = correlated_rows(&mut rng, 300, 6, 3, 0.5);
    let model = pca_fit(&rows, 4, 99.0).unwrap();
    for (i, a) in model.components.iter().enumerate() {
        for (j, b) in model.components.iter().enumerate() {
            let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            assert!((dot - if i == j { 1.0 } else { 0.0 }).abs() < 1e-9);
        }
    }
}

#[test]
fn spe_is_the_squared_distance_to_the_subspace() {
    let mut rng = SplitMix64::new(4);
    for m in 2..=6 {
        let rows = correlated_rows(&mut rng, 200, m, m - 1, 0.4);
        for k in 1..m {
            let model = pca_fit(&rows, k, 99.0).unwrap();
            for _ in 0..20 {
                let x: Vec<f64> = (0..m).map(|j| 10.0 * j as f64 + 8.0 * rng.next_normal()).collect();
                let want = distance_sq(&model.components, &model.mean, &x);
                let got = model.spe(&x).unwrap();
                assert!((got - want).abs() <= 1e-9 * want.max(1.0), "m={m} k={k}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn spe_vanishes_on_the_retained_subspace() {
    let mut rng = SplitMix64::new(6);
    let rows = correlated_rows(&mut rng, 200, 5, 2, 0.3);
    let model = pca_fit(&rows, 2, 99.0).unwrap();
    assert_eq!(model.spe(&model.mean).unwrap(), 0.0);
    for _ in 0..50 {
        let (s, t) = (20.0 * rng.next_normal(), 20.0 * rng.next_normal());
        let x: Vec<f64> = (0..5).map(|j| model.mean[j] + s * model.components[0][j] + t * model.components[1][j]).collect();
        assert!(model.spe(&x).unwrap() < 1e-9);
    }
}

#[test]
fn more_components_never_raise_spe() {
    let mut rng = SplitMix64::new(12);
    let rows = correlated_rows(&mut rng, 200, 6, 3, 1.0);
    let full = pca_fit(&rows, 5, 99.0).unwrap();
    for _ in 0..100 {
        let x: Vec<f64> = (0..6).map(|j| 10.0 * j as f64 + 10.0 * rng.next_normal()).collect();
        let spes: Vec<f64> = (1..=5).map(|k| full.truncated(k).spe(&x).unwrap()).collect();
        assert!(spes.iter().all(|&s| s >= 0.0));
        assert!(spes.windows(2).all(|w| w[1] <= w[0] + 1e-12), "{spes:?}");
    }
}

#[test]
fn k_must_be_below_sensor_count() {
    let rows = vec![vec![1.0, 2.0, 4.0], vec![2.0, 1.0, 0.0], vec![0.0, 3.0, 1.0], vec![5.0, 1.0, 2.0]];
    assert!(matches!(pca_fit(&rows, 3, 99.0), Err(DetectorError::InvalidComponents { k: 3, sensors: 3 })));
    assert!(pca_fit(&rows, 2, 99.0).is_ok());
}

#[test]
fn model_reloads_from_json_exactly() {
    let mut rng = SplitMix64::new(17);
    let rows = correlated_rows(&mut rng, 150, 4, 2, 0.7);
    let model = pca_fit(&rows, 2, 95.0).unwrap();
    let back = PcaModel::from_json(&model.to_json()).unwrap();
    assert_eq!(back, model);
    let x = [1.0, 12.0, 19.0, 33.0];
    assert_eq!(back.spe(&x).unwrap().to_bits(), model.spe(&x).unwrap().to_bits());
}

#[test]
fn uncertainty_of_one_to_four() {
    let u = uncertainty_index(&window_of(&[1.0, 2.0, 3.0, 4.0])).unwrap();
    assert!((u - 0.6455).abs() < 1e-4);
    assert!((u - (5.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-15);
}

#[test]
fn variance_of_standard_normals() {
    let mut rng = SplitMix64::new(2024);
    let xs: Vec<f64> = (0..1000).map(|_| rng.next_normal()).collect();
    let v = window_variance(&window_of(&xs)).unwrap();
    assert!((0.8..=1.2).contains(&v), "{v}");
}

#[test]
fn doubling_noise_doubles_mean_uncertainty() {
    let mean_u = |std: f64| {
        let mut rng = SplitMix64::new(77);
        let mut w = Window::new(20);
        let mut total = 0.0;
        for i in 0..4000 {
            w.push(std * rng.next_normal());
            if i >= 19 {
                total += uncertainty_index(&w).unwrap();
            }
        }
        total / 3981.0
    };
    let ratio = mean_u(2.0) / mean_u(1.0);
    assert!((ratio - 2.0).abs() < 1e-9, "{ratio}");
}

#[test]
fn uncertainty_rises_after_the_noise_burst() {
    let stream = burst_after_60(0.5, 42);
    let mut w = Window::new(20);
    let u: Vec<f64> = stream
        .samples
        .iter()
        .map(|s| {
            w.push(s.value);
            uncertainty_index(&w).unwrap_or(0.0)
        })
        .collect();
    let before = u[..60].iter().sum::<f64>() / 60.0;
    let after = u[60..].iter().sum::<f64>() / 60.0;
    assert!(after > 2.0 * before, "{after} vs {before}");
}

proptest! {
    #[test]
    fn uncertainty_is_root_variance_over_n(values in prop::collection::vec(-1e3..1e3f64, 2..40)) {
        let w = window_of(&values);
        let u = uncertainty_index(&w).unwrap();
        let v = window_variance(&w).unwrap();
        prop_assert!((u - (v / values.len() as f64).sqrt()).abs() <= 1e-12 * u.max(1.0));
    }

    #[test]
    fn windowed_variance_matches_two_pass(values in prop::collection::vec(-1e4..1e4f64, 2..200), cap in 2usize..30) {
        let mut w = Window::new(cap);
        for (i, &x) in values.iter().enumerate() {
            w.push(x);
            let tail = &values[(i + 1).saturating_sub(cap)..=i];
            if tail.len() < 2 {
                continue;
            }
            let mean = tail.iter().sum::<f64>() / tail.len() as f64;
            let two_pass = tail.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (tail.len() - 1) as f64;
            let v = window_variance(&w).unwrap();
            prop_assert!((v - two_pass).abs() <= 1e-9 * two_pass.max(1e-6), "{v} vs {two_pass}");
        }
    }
}
