use crate::error::{BeltwayError, Result};

/// Numerical thresholds shared by every operation.
///
/// `eps_match` is relative to the scale of the quantities being compared
/// (never smaller than 1), `eps_psd` and `eps_rank` are relative to the
/// largest eigenvalue magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub eps_match: f64,
    pub eps_psd: f64,
    pub eps_rank: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_match: 1e-9,
            eps_psd: 1e-8,
            eps_rank: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn new(eps_match: f64, eps_psd: f64, eps_rank: f64) -> Result<Self> {
        for (name, v) in [
            ("eps_match", eps_match),
            ("eps_psd", eps_psd),
            ("eps_rank", eps_rank),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(BeltwayError::InvalidTolerances(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(Tolerances {
            eps_match,
            eps_psd,
            eps_rank,
        })
    }

    /// `|a - b| <= eps_match * max(1, |a|, |b|)`.
    pub fn matches(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.eps_match * 1f64.max(a.abs()).max(b.abs())
    }

    /// `|a - b| <= eps_match * max(1, scale)`, for quantities whose natural
    /// size is set by the surrounding data rather than by `a` and `b`.
    pub fn matches_scaled(&self, a: f64, b: f64, scale: f64) -> bool {
        (a - b).abs() <= self.eps_match * 1f64.max(scale.abs())
    }
}
