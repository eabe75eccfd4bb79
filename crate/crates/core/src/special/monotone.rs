use serde::Serialize;

use crate::error::{Error, Result};

pub const MAX_CM_ORDER: usize = 8;
/// Relative tolerance; the absolute tolerance is this times `max |f|` on the grid.
pub const CM_RELATIVE_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Serialize)]
pub struct OrderCheck {
    pub order: usize,
    /// Smallest value of `(-1)^n f[x_i, …, x_{i+n}]` over the grid.
    pub min_signed: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub orders: Vec<OrderCheck>,
    pub tolerance: f64,
    pub first_violation: Option<usize>,
}

impl MonotonicityReport {
    pub fn pass(&self) -> bool {
        self.first_violation.is_none()
    }
}

/// Divided-difference test of complete monotonicity on an increasing grid.
///
/// An order-`n` divided difference equals `f^{(n)}(ξ) / n!` for some `ξ` in
/// its span, so `(-1)^n f[x_i, …, x_{i+n}] ≥ 0` must hold for every window.
pub fn check_complete_monotonicity(
    f: impl Fn(f64) -> f64,
    grid: &[f64],
    max_order: usize,
) -> Result<MonotonicityReport> {
    if max_order == 0 || max_order > MAX_CM_ORDER {
        return Err(Error::argument(format!(
            "max_order must lie in 1..={MAX_CM_ORDER}, got {max_order}"
        )));
    }
    if grid.len() < max_order + 1 {
        return Err(Error::argument(format!(
            "order {max_order} needs at least {} grid points, got {}",
            max_order + 1,
            grid.len()
        )));
    }
    if grid.windows(2).any(|w| !(w[0] < w[1])) || grid[0] <= 0.0 {
        return Err(Error::argument(
            "grid must be positive and strictly increasing",
        ));
    }

    let mut table: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    if table.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("function is not finite on the grid".into()));
    }
    let tolerance = CM_RELATIVE_TOLERANCE * table.iter().fold(0.0f64, |m, v| m.max(v.abs()));

    let mut orders = Vec::with_capacity(max_order);
    let mut first_violation = None;
    for order in 1..=max_order {
        // table[i] holds f[x_i, …, x_{i+order}] after this update
        for i in 0..grid.len() - order {
            table[i] = (table[i + 1] - table[i]) / (grid[i + order] - grid[i]);
        }
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        let min_signed = table[..grid.len() - order]
            .iter()
            .map(|d| sign * d)
            .fold(f64::INFINITY, f64::min);
        let pass = min_signed >= -tolerance;
        if !pass && first_violation.is_none() {
            first_violation = Some(order);
        }
        orders.push(OrderCheck {
            order,
            min_signed,
            pass,
        });
    }
    Ok(MonotonicityReport {
        orders,
        tolerance,
        first_violation,
    })
}

/// `n` points evenly spaced on `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}
