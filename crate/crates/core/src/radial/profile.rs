use serde::{Deserialize, Serialize};

use crate::error::{NilError, Result};

/// A sampled radial function with its derivative.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    pub nodes: Vec<f64>,
    pub values: Vec<f64>,
    pub derivs: Vec<f64>,
}

impl RadialProfile {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>, derivs: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() || nodes.len() != derivs.len() {
            return Err(NilError::InvalidParameter("profile columns differ in length".into()));
        }
        if nodes.windows(2).any(|w| w[1] <= w[0]) {
            return Err(NilError::InvalidParameter("profile nodes must be strictly increasing".into()));
        }
        Ok(Self { nodes, values, derivs })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Cubic Hermite interpolation using the stored derivatives.
    pub fn interpolate(&self, r: f64) -> Option<f64> {
        let n = self.nodes.len();
        if n == 0 || r < self.nodes[0] || r > self.nodes[n - 1] {
            return None;
        }
        let i = match self.nodes.partition_point(|&x| x <= r) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        };
        if n == 1 {
            return Some(self.values[0]);
        }
        let (x0, x1) = (self.nodes[i], self.nodes[i + 1]);
        let h = x1 - x0;
        let t = (r - x0) / h;
        let (y0, y1, d0, d1) = (self.values[i], self.values[i + 1], self.derivs[i], self.derivs[i + 1]);
        if !(d0.is_finite() && d1.is_finite()) {
            return Some(y0 + t * (y1 - y0));
        }
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        Some(h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1)
    }
}
