use serde::{Deserialize, Serialize};

/// Shape of a linguistic term over a variable's domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MembershipFunction {
    /// `exp(-(x - center)^2 / (2 sigma^2))`, `sigma > 0`.
    Gaussian { sigma: f64, center: f64 },
    /// Feet at `a` and `c`, peak at `b`; `a <= b <= c`.
    Triangular { a: f64, b: f64, c: f64 },
    /// Feet at `a` and `d`, shoulders at `b` and `c`; `a <= b <= c <= d`.
    Trapezoidal { a: f64, b: f64, c: f64, d: f64 },
}

impl MembershipFunction {
    pub fn gaussian(sigma: f64, center: f64) -> Self {
        Self::Gaussian { sigma, center }
    }

    pub fn triangular(a: f64, b: f64, c: f64) -> Self {
        Self::Triangular { a, b, c }
    }

    pub fn trapezoidal(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::Trapezoidal { a, b, c, d }
    }

    /// Degree of membership of `x`, always in `[0, 1]`.
    #[inline]
    pub fn degree(&self, x: f64) -> f64 {
        match *self {
            Self::Gaussian { sigma, center } => {
                let z = (x - center) / sigma;
                (-0.5 * z * z).exp()
            }
            Self::Triangular { a, b, c } => {
                if x == b {
                    1.0
                } else if x <= a || x >= c {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else {
                    (c - x) / (c - b)
                }
            }
            Self::Trapezoidal { a, b, c, d } => {
                if (b..=c).contains(&x) {
                    1.0
                } else if x <= a || x >= d {
                    0.0
                } else if x < b {
                    (x - a) / (b - a)
                } else {
                    (d - x) / (d - c)
                }
            }
        }
    }

    /// Parameters in `.fis` order.
    pub fn params(&self) -> Vec<f64> {
        match *self {
            Self::Gaussian { sigma, center } => vec![sigma, center],
            Self::Triangular { a, b, c } => vec![a, b, c],
            Self::Trapezoidal { a, b, c, d } => vec![a, b, c, d],
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Self::Gaussian { .. } => "gaussian",
            Self::Triangular { .. } => "triangular",
            Self::Trapezoidal { .. } => "trapezoidal",
        }
    }

    /// Describes the first broken parameter constraint, if any.
    pub fn check(&self) -> Result<(), String> {
        let params = self.params();
        if let Some(p) = params.iter().find(|p| !p.is_finite()) {
            return Err(format!("{} parameter {p} is not finite", self.kind_name()));
        }
        match *self {
            Self::Gaussian { sigma, .. } if sigma <= 0.0 => {
                Err(format!("gaussian sigma must be > 0, got {sigma}"))
            }
            Self::Gaussian { .. } => Ok(()),
            Self::Triangular { .. } | Self::Trapezoidal { .. } => {
                if params.windows(2).all(|w| w[0] <= w[1]) {
                    Ok(())
                } else {
                    Err(format!(
                        "{} parameters must be non-decreasing, got {params:?}",
                        self.kind_name()
                    ))
                }
            }
        }
    }
}
