//! One-dimensional quadrature rules.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::system::gamma_half;

/// Nodes and weights of a one-dimensional rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Generalized Gauss–Laguerre rule for `∫₀^∞ x^α e^{-x} f(x) dx`, α a
/// half-integer > -1, via the Golub–Welsch eigenproblem.
pub fn gauss_laguerre(n: usize, alpha: f64) -> Rule {
    let two_a = (2.0 * alpha).round();
    assert!((two_a - 2.0 * alpha).abs() < 1e-12 && alpha > -1.0);
    let mut j = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        let fi = i as f64;
        j[(i, i)] = 2.0 * fi + 1.0 + alpha;
        if i + 1 < n {
            let off = ((fi + 1.0) * (fi + 1.0 + alpha)).sqrt();
            j[(i, i + 1)] = off;
            j[(i + 1, i)] = off;
        }
    }
    let eig = SymmetricEigen::new(j);
    let mu0 = gamma_half((two_a + 2.0) as u32);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v0 = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Rule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
    }
}

/// Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

/// Tanh–sinh node on `[0, 1]`: the abscissa, its complement, and the weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitNode {
    pub x: f64,
    pub xc: f64,
    pub w: f64,
}

/// Half-width of the tanh–sinh parameter interval; the weights at the ends are below 1e-35.
const TANH_SINH_SPAN: f64 = 4.0;

/// Tanh–sinh rule with `n` equally spaced parameters on `[-4, 4]`.
///
/// The complement `1 - x` is formed directly so endpoint singularities are
/// resolved without cancellation.
pub fn tanh_sinh_unit(n: usize) -> Vec<UnitNode> {
    assert!(n >= 2);
    let h = 2.0 * TANH_SINH_SPAN / (n as f64 - 1.0);
    (0..n)
        .map(|k| {
            let t = -TANH_SINH_SPAN + k as f64 * h;
            let q = std::f64::consts::PI * t.sinh();
            let x = 1.0 / (1.0 + (-q).exp());
            let xc = 1.0 / (1.0 + q.exp());
            let w = h * std::f64::consts::FRAC_PI_2 * t.cosh() * 2.0 * x * xc;
            UnitNode { x, xc, w }
        })
        .collect()
}
