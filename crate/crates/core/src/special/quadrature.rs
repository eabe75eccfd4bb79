//! Gauss rules and the integral identity
//! `Γ(λ) / (s + t)^λ = ∫₀^∞ e^{-sw} e^{-tw} w^{λ-1} dw`.

use super::gamma::gamma;
use crate::error::{Error, Result};

const NEWTON_MAX_ITER: usize = 100;

/// Nodes per panel of the graded Gauss–Legendre mesh on `[0, 1]`.
pub const HEAD_PANEL_NODES: usize = 20;
/// Geometric grading ratio of the head mesh.
pub const HEAD_GRADING: f64 = 0.15;
/// Minimum Gauss–Laguerre node count accepted by the identity check.
pub const MIN_LAGUERRE_NODES: usize = 64;

/// A quadrature rule as parallel node/weight vectors.
#[derive(Debug, Clone)]
pub struct Rule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl Rule {
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// `n`-point Gauss–Legendre rule on `[-1, 1]` (Newton on the Legendre recurrence).
pub fn gauss_legendre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let half = n.div_ceil(2);
    for i in 0..half {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..NEWTON_MAX_ITER {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                p1 = ((2 * j + 1) as f64 * z * p2 - j as f64 * p3) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() <= 1e-16 * z.abs().max(1.0) {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    Rule { nodes, weights }
}

/// `n`-point Gauss–Laguerre rule for `∫₀^∞ e^{-x} f(x) dx`.
pub fn gauss_laguerre(n: usize) -> Rule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    let mut z = 0.0f64;
    for i in 0..n {
        // Initial guesses follow the classic asymptotic node spacing.
        z = match i {
            0 => 3.0 / (1.0 + 2.4 * nf),
            1 => z + 15.0 / (1.0 + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - nodes[i - 2])
            }
        };
        let mut p2 = 0.0;
        let mut pp = 0.0;
        for _ in 0..NEWTON_MAX_ITER {
            let (mut p1, mut q2) = (1.0, 0.0);
            for j in 0..n {
                let p3 = q2;
                q2 = p1;
                p1 =
                    ((2 * j + 1) as f64 - z) * q2 / (j + 1) as f64 - j as f64 * p3 / (j + 1) as f64;
            }
            p2 = q2;
            pp = (nf * p1 - nf * p2) / z;
            let dz = p1 / pp;
            z -= dz;
            if dz.abs() <= 1e-15 * z.abs() {
                break;
            }
        }
        nodes[i] = z;
        weights[i] = -1.0 / (pp * nf * p2);
    }
    Rule { nodes, weights }
}

/// `∫₀^∞ e^{-x} x^{λ-1} dx` by quadrature.
///
/// The range is split at `x = 1`:
/// * `[0, 1]`: composite Gauss–Legendre on the geometric mesh
///   `0, σ^K, …, σ², σ, 1` with `σ = HEAD_GRADING`. The innermost panel
///   carries at most `σ^{Kλ}/λ` of the mass, so `K` is the smallest integer
///   making that below `1e-17` (capped at 400 panels).
/// * `[1, ∞)`: `e^{-1} ∫₀^∞ e^{-y} (1 + y)^{λ-1} dy` with an `n_laguerre`-point
///   Gauss–Laguerre rule; the integrand is analytic on `y > -1`.
pub fn gamma_integral(order: f64, n_laguerre: usize) -> f64 {
    let head_rule = gauss_legendre(HEAD_PANEL_NODES);
    let integrand = |x: f64| (-x).exp() * x.powf(order - 1.0);
    let layers = ((1e-17 * order).ln() / (order * HEAD_GRADING.ln()))
        .ceil()
        .clamp(1.0, 400.0) as usize;
    let mut head = 0.0;
    let mut hi = 1.0;
    for k in 0..=layers {
        let lo = if k == layers { 0.0 } else { hi * HEAD_GRADING };
        let (mid, half) = ((hi + lo) / 2.0, (hi - lo) / 2.0);
        head += half * head_rule.apply(|z| integrand(mid + half * z));
        hi = lo;
    }
    let tail = (-1.0f64).exp() * gauss_laguerre(n_laguerre).apply(|y| (1.0 + y).powf(order - 1.0));
    head + tail
}

/// Relative error between the quadrature of
/// `∫₀^∞ e^{-sw} e^{-tw} w^{λ-1} dw` and `Γ(λ) / (s + t)^λ`.
///
/// The substitution `x = (s + t) w` absorbs both exponentials into the
/// Laguerre weight; see [`gamma_integral`] for the truncation rule.
pub fn stieltjes_kernel_identity_check(order: f64, s: f64, t: f64, n_quad: usize) -> Result<f64> {
    for (name, value) in [("lambda", order), ("s", s), ("t", t)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::domain(format!(
                "{name} must be positive, got {value}"
            )));
        }
    }
    if n_quad < MIN_LAGUERRE_NODES {
        return Err(Error::argument(format!(
            "n_quad must be at least {MIN_LAGUERRE_NODES}, got {n_quad}"
        )));
    }
    let scale = (s + t).powf(-order);
    let quadrature = gamma_integral(order, n_quad) * scale;
    let exact = gamma(order) * scale;
    Ok((quadrature - exact).abs() / exact)
}
