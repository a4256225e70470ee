//! Composite Simpson quadrature on uniform grids.

/// Running integral of uniformly spaced samples `f` with spacing `h`.
///
/// Even nodes use composite Simpson from the left end; odd nodes add the
/// one-interval rule `h/12 (5f₀ + 8f₁ − f₂)` to the previous even node, which
/// keeps every partial sum fourth-order accurate.
pub fn cumulative_simpson(f: &[f64], h: f64) -> Vec<f64> {
    let n = f.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * h * (f[0] + f[1]);
        return out;
    }
    for i in 1..n {
        out[i] = if i % 2 == 0 {
            out[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i])
        } else if i + 1 < n {
            out[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1])
        } else {
            out[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i])
        };
    }
    out
}

/// Simpson's rule on `[a, b]` with a single midpoint.
pub fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_low_degree() {
        let h = 0.1;
        let cubic: Vec<f64> = (0..11).map(|i| (i as f64 * h).powi(3)).collect();
        let quad: Vec<f64> = (0..11).map(|i| (i as f64 * h).powi(2)).collect();
        let (c, q) = (cumulative_simpson(&cubic, h), cumulative_simpson(&quad, h));
        for i in 0..11 {
            let x = i as f64 * h;
            assert!((q[i] - x.powi(3) / 3.0).abs() < 1e-14, "{i}");
            if i % 2 == 0 {
                assert!((c[i] - x.powi(4) / 4.0).abs() < 1e-14, "{i}");
            }
        }
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |n: usize| {
            let h = 2.0 / (n - 1) as f64;
            let f: Vec<f64> = (0..n).map(|i| (i as f64 * h).cos()).collect();
            let out = cumulative_simpson(&f, h);
            out.iter()
                .enumerate()
                .map(|(i, v)| (v - (i as f64 * h).sin()).abs())
                .fold(0.0, f64::max)
        };
        let ratio = err(21) / err(41);
        assert!(ratio > 12.0, "ratio {ratio}");
    }
}
