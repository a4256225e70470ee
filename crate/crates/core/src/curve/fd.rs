//! Finite-difference weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weights for derivatives `0..=max_order` at `x0` over arbitrary `nodes`
/// (Fornberg's recursion). `out[m][j]` multiplies `f(nodes[j])`.
pub fn fornberg_weights(x0: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Central-difference configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FdConfig {
    /// Accuracy order: 2, 4 or 6.
    pub order: usize,
    pub step: f64,
    /// Combine steps `h` and `h/2` to cancel the leading error term.
    #[serde(default)]
    pub richardson: bool,
}

impl FdConfig {
    pub fn new(order: usize, step: f64) -> Result<Self> {
        if !matches!(order, 2 | 4 | 6) {
            return Err(Error::InvalidInput(format!(
                "finite-difference order must be 2, 4 or 6, got {order}"
            )));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "finite-difference step must be positive, got {step}"
            )));
        }
        Ok(FdConfig {
            order,
            step,
            richardson: false,
        })
    }

    /// Order 4 with `h = (t_max − t_min)·10⁻³`.
    pub fn default_for(t_min: f64, t_max: f64) -> Self {
        FdConfig {
            order: 4,
            step: (t_max - t_min).abs() * 1e-3,
            richardson: false,
        }
    }

    pub fn with_richardson(mut self, on: bool) -> Self {
        self.richardson = on;
        self
    }

    pub fn stencil(&self) -> CentralStencil {
        CentralStencil::new(self.order)
    }
}

/// Integer-offset central stencils for derivatives 1..=4 at a fixed accuracy
/// order. The widest stencil spans `±half_width`.
#[derive(Clone, Debug)]
pub struct CentralStencil {
    pub order: usize,
    pub half_width: usize,
    /// `weights[m-1][k + half_width]` for offset `k`.
    pub weights: Vec<Vec<f64>>,
}

impl CentralStencil {
    pub fn new(order: usize) -> Self {
        let half_for = |m: usize| (order + 2 * m.div_ceil(2) - 2) / 2;
        let half_width = half_for(4);
        let mut weights = Vec::with_capacity(4);
        for m in 1..=4 {
            let p = half_for(m) as i64;
            let nodes: Vec<f64> = (-p..=p).map(|k| k as f64).collect();
            let w = fornberg_weights(0.0, &nodes, m);
            let mut row = vec![0.0; 2 * half_width + 1];
            for (j, k) in (-p..=p).enumerate() {
                row[(k + half_width as i64) as usize] = w[m][j];
            }
            weights.push(row);
        }
        CentralStencil {
            order,
            half_width,
            weights,
        }
    }

    /// Derivatives 1..=4 from values at `t + k h`, `k ∈ [−half_width, half_width]`.
    pub fn apply<T>(&self, values: &[T], h: f64) -> [T; 4]
    where
        T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    {
        let mut out = [T::default(); 4];
        for (m, row) in self.weights.iter().enumerate() {
            let scale = h.powi(m as i32 + 1);
            let mut acc = T::default();
            for (w, v) in row.iter().zip(values) {
                if *w != 0.0 {
                    acc = acc + *v * (*w / scale);
                }
            }
            out[m] = acc;
        }
        out
    }
}
