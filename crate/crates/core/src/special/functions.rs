use serde::{Deserialize, Serialize};

use super::measure::DiscreteMeasure;
use crate::error::{Error, Result};

fn check_order(order: f64) -> Result<()> {
    if order.is_finite() && order > 0.0 {
        Ok(())
    } else {
        Err(Error::parameter(format!(
            "order must be positive, got {order}"
        )))
    }
}

fn check_nonnegative(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::parameter(format!(
            "{name} must be a nonnegative finite real, got {value}"
        )))
    }
}

fn check_positive_argument(w: f64) -> Result<()> {
    if w.is_finite() && w > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("argument must be positive, got {w}")))
    }
}

/// Generalized Stieltjes function of order λ:
///
/// ```text
/// f(w) = C + D / w^λ + Σ_i w_i / (w + s_i)^λ,   w > 0
/// ```
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StieltjesFunction {
    order: f64,
    c: f64,
    d: f64,
    measure: DiscreteMeasure,
}

impl StieltjesFunction {
    pub fn new(order: f64, c: f64, d: f64, measure: DiscreteMeasure) -> Result<Self> {
        check_order(order)?;
        check_nonnegative("C", c)?;
        check_nonnegative("D", d)?;
        Ok(Self {
            order,
            c,
            d,
            measure,
        })
    }

    /// `w ↦ w^{-λ}`.
    pub fn power(order: f64) -> Result<Self> {
        Self::new(order, 0.0, 1.0, DiscreteMeasure::zero())
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new(1.0, c, 0.0, DiscreteMeasure::zero())
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    /// Limit at infinity.
    pub fn c(&self) -> f64 {
        self.c
    }

    /// Coefficient of the singular part `w^{-λ}`.
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn measure(&self) -> &DiscreteMeasure {
        &self.measure
    }

    /// Discrete measures always have finite `∫ s^{-λ} dμ`, so boundedness
    /// reduces to the absence of the singular part.
    pub fn is_bounded(&self) -> bool {
        self.d == 0.0
    }

    pub fn is_constant(&self) -> bool {
        self.d == 0.0 && self.measure.is_zero()
    }

    pub fn eval(&self, w: f64) -> Result<f64> {
        check_positive_argument(w)?;
        let lam = self.order;
        let singular = if self.d == 0.0 {
            0.0
        } else {
            self.d * w.powf(-lam)
        };
        Ok(self.c + singular + self.measure.integrate(|s| (w + s).powf(-lam)))
    }

    /// `f(0⁺)` for bounded members.
    pub fn value_at_zero(&self) -> Option<f64> {
        self.is_bounded()
            .then(|| self.c + self.measure.integrate(|s| s.powf(-self.order)))
    }

    /// [`eval`](Self::eval) extended to `w = 0` by continuity when bounded.
    pub fn eval_extended(&self, w: f64) -> Result<f64> {
        if w == 0.0 {
            self.value_at_zero()
                .ok_or_else(|| Error::domain("pole at 0 of an unbounded Stieltjes function"))
        } else {
            self.eval(w)
        }
    }
}

/// Generalized complete Bernstein function of order λ:
///
/// ```text
/// f(w) = A + B w^λ + Σ_i w_i (w / (w + s_i))^λ,   w > 0
/// ```
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompleteBernsteinFunction {
    order: f64,
    a: f64,
    b: f64,
    measure: DiscreteMeasure,
}

impl CompleteBernsteinFunction {
    pub fn new(order: f64, a: f64, b: f64, measure: DiscreteMeasure) -> Result<Self> {
        check_order(order)?;
        check_nonnegative("A", a)?;
        check_nonnegative("B", b)?;
        Ok(Self {
            order,
            a,
            b,
            measure,
        })
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn measure(&self) -> &DiscreteMeasure {
        &self.measure
    }

    pub fn is_constant(&self) -> bool {
        self.b == 0.0 && self.measure.is_zero()
    }

    pub fn eval(&self, w: f64) -> Result<f64> {
        check_positive_argument(w)?;
        let lam = self.order;
        let growth = if self.b == 0.0 {
            0.0
        } else {
            self.b * w.powf(lam)
        };
        Ok(self.a + growth + self.measure.integrate(|s| (w / (w + s)).powf(lam)))
    }

    /// Extended to `w = 0` by continuity, where the value is `A`.
    pub fn eval_extended(&self, w: f64) -> Result<f64> {
        if w == 0.0 {
            Ok(self.a)
        } else {
            self.eval(w)
        }
    }
}

/// Bernstein function `f(w) = a + b w + Σ_i w_i (1 - e^{-s_i w})`, `w ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BernsteinFunction {
    a: f64,
    b: f64,
    measure: DiscreteMeasure,
}

impl BernsteinFunction {
    pub fn new(a: f64, b: f64, measure: DiscreteMeasure) -> Result<Self> {
        check_nonnegative("a", a)?;
        check_nonnegative("b", b)?;
        Ok(Self { a, b, measure })
    }

    pub fn identity() -> Self {
        Self {
            a: 0.0,
            b: 1.0,
            measure: DiscreteMeasure::zero(),
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn measure(&self) -> &DiscreteMeasure {
        &self.measure
    }

    pub fn is_identically_zero(&self) -> bool {
        self.a == 0.0 && self.b == 0.0 && self.measure.is_zero()
    }

    /// Positive on `(0, ∞)`.
    pub fn is_positive_valued(&self) -> bool {
        !self.is_identically_zero()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.b > 0.0 || !self.measure.is_zero()
    }

    pub fn eval(&self, w: f64) -> Result<f64> {
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::domain(format!(
                "Bernstein argument must be nonnegative, got {w}"
            )));
        }
        let jumps = self.measure.integrate(|s| -(-s * w).exp_m1());
        Ok(self.a + self.b * w + jumps)
    }
}

/// Bernstein–Widder mixture `Σ_i w_i e^{-s_i w}` with `s_i ≥ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(f64, f64)>", into = "Vec<(f64, f64)>")]
pub struct ExponentialMixture {
    atoms: Vec<(f64, f64)>,
}

impl ExponentialMixture {
    pub fn new(atoms: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut parsed: Vec<(f64, f64)> = Vec::new();
        for (rate, weight) in atoms {
            check_nonnegative("mixture rate", rate)?;
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::parameter(format!(
                    "mixture weight must be positive, got {weight}"
                )));
            }
            parsed.push((rate, weight));
        }
        parsed.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(parsed.len());
        for (rate, weight) in parsed {
            match merged.last_mut() {
                Some(last) if last.0 == rate => last.1 += weight,
                _ => merged.push((rate, weight)),
            }
        }
        Ok(Self { atoms: merged })
    }

    /// `e^{-w}`.
    pub fn exp_decay() -> Self {
        Self {
            atoms: vec![(1.0, 1.0)],
        }
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }

    pub fn is_constant(&self) -> bool {
        self.atoms.iter().all(|&(rate, _)| rate == 0.0)
    }

    pub fn eval(&self, w: f64) -> f64 {
        self.atoms
            .iter()
            .map(|&(rate, weight)| weight * (-rate * w).exp())
            .sum()
    }
}

impl TryFrom<Vec<(f64, f64)>> for ExponentialMixture {
    type Error = Error;

    fn try_from(atoms: Vec<(f64, f64)>) -> Result<Self> {
        Self::new(atoms)
    }
}

impl From<ExponentialMixture> for Vec<(f64, f64)> {
    fn from(mixture: ExponentialMixture) -> Self {
        mixture.atoms
    }
}

/// Completely monotone function used as an outer function of the product model.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum CompletelyMonotoneFunction {
    Stieltjes(StieltjesFunction),
    Mixture(ExponentialMixture),
}

impl CompletelyMonotoneFunction {
    pub fn eval(&self, w: f64) -> Result<f64> {
        match self {
            Self::Stieltjes(f) => f.eval(w),
            Self::Mixture(m) => {
                check_positive_argument(w)?;
                Ok(m.eval(w))
            }
        }
    }

    /// Evaluation on `[0, ∞)`; fails at 0 only for unbounded members.
    pub fn eval_extended(&self, w: f64) -> Result<f64> {
        match self {
            Self::Stieltjes(f) => f.eval_extended(w),
            Self::Mixture(m) => {
                if !(w.is_finite() && w >= 0.0) {
                    return Err(Error::domain(format!(
                        "argument must be nonnegative, got {w}"
                    )));
                }
                Ok(m.eval(w))
            }
        }
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            Self::Stieltjes(f) => f.is_bounded(),
            Self::Mixture(_) => true,
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Self::Stieltjes(f) => f.is_constant(),
            Self::Mixture(m) => m.is_constant(),
        }
    }
}

impl From<StieltjesFunction> for CompletelyMonotoneFunction {
    fn from(f: StieltjesFunction) -> Self {
        Self::Stieltjes(f)
    }
}

impl From<ExponentialMixture> for CompletelyMonotoneFunction {
    fn from(m: ExponentialMixture) -> Self {
        Self::Mixture(m)
    }
}
