//! Gauss–Legendre quadrature on fixed panels.

use std::f64::consts::PI;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on [−1, 1].
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..(n + 1) / 2 {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// Nodes and weights mapped to panels of width `width` tiling [a, b].
    pub fn panels(&self, a: f64, b: f64, width: f64) -> Vec<(f64, f64)> {
        let count = ((b - a) / width).ceil().max(1.0) as usize;
        let w = (b - a) / count as f64;
        let mut out = Vec::with_capacity(count * self.nodes.len());
        for k in 0..count {
            let lo = a + k as f64 * w;
            for (x, wt) in self.nodes.iter().zip(&self.weights) {
                out.push((lo + 0.5 * w * (x + 1.0), 0.5 * w * wt));
            }
        }
        out
    }

    pub fn integrate(&self, a: f64, b: f64, width: f64, f: impl Fn(f64) -> f64) -> f64 {
        self.panels(a, b, width).into_iter().map(|(x, w)| w * f(x)).sum()
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (1.0, 0.0);
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_exact() {
        let gl = GaussLegendre::new(8);
        let s: f64 = gl.weights.iter().sum();
        assert!((s - 2.0).abs() < 1e-14);
        // degree 15 is integrated exactly
        let v = gl.integrate(0.0, 1.0, 1.0, |x| x.powi(15));
        assert!((v - 1.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn smooth_function() {
        let gl = GaussLegendre::new(16);
        let v = gl.integrate(0.0, PI, 0.5, f64::sin);
        assert!((v - 2.0).abs() < 1e-14);
    }
}
