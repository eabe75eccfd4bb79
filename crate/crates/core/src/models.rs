//! Kernel models on products of metric spaces, their strict positive
//! definiteness reports, and two-point singular configurations.
//!
//! Every three-space model reads distances `(t, u, v)`: `g` consumes `t` on
//! the first factor `X`, and `h` consumes `(u, v)` on `Y × Z`.
//!
//! The complete Bernstein models reduce to the Stieltjes ones: with
//! `f̃(w) = f(1/w)`, `I_r[f] = H_r[f̃]` and `J_r[f] = G_r[f̃]`, where `f̃` has
//! `C = A_f`, `D = B_f` and a nonzero measure iff `ν_f` is nonzero. The
//! condition report is therefore one decision table, stated in terms of the
//! side that feeds the argument of `f` (the "numerator" side).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cnd::{diameter_grid, strictness_check, CndFunction};
use crate::error::{Error, Result};
use crate::linalg::SymMatrix;
use crate::spaces::{ProductPoint, ProductSpace};
use crate::special::{CompleteBernsteinFunction, CompletelyMonotoneFunction, StieltjesFunction};
use crate::validation::gram;

/// Samples per factor used when strictness is checked on a grid.
pub const STRICTNESS_GRID_PER_AXIS: usize = 24;

/// `F_r(t, u) = h(u)^{-r} f(g(t) / h(u))` on `X × Y`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoSpaceGneiting {
    f: StieltjesFunction,
    g: CndFunction,
    h: CndFunction,
    r: f64,
}

impl TwoSpaceGneiting {
    pub fn new(f: StieltjesFunction, g: CndFunction, h: CndFunction, r: f64) -> Result<Self> {
        check_exponent(r, f.order())?;
        check_single(&g, "g")?;
        check_single(&h, "h")?;
        check_inner(&g, "g", !f.is_bounded())?;
        check_inner(&h, "h", true)?;
        Ok(Self { f, g, h, r })
    }

    pub fn f(&self) -> &StieltjesFunction {
        &self.f
    }

    pub fn g(&self) -> &CndFunction {
        &self.g
    }

    pub fn h(&self) -> &CndFunction {
        &self.h
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn eval(&self, d: &[f64]) -> Result<f64> {
        if d.len() != 2 {
            return Err(Error::argument(format!(
                "F_r takes 2 distances, got {}",
                d.len()
            )));
        }
        let (gt, hu) = (self.g.eval(&d[..1])?, self.h.eval(&d[1..])?);
        Ok(hu.powf(-self.r) * self.f.eval_extended(gt / hu)?)
    }
}

fn check_exponent(r: f64, order: f64) -> Result<()> {
    if !(r.is_finite() && r >= order) {
        return Err(Error::parameter(format!(
            "r = {r} must satisfy r >= lambda = {order}"
        )));
    }
    Ok(())
}

fn check_single(phi: &CndFunction, name: &str) -> Result<()> {
    if phi.arity() != 1 {
        return Err(Error::argument(format!(
            "{name} must read a single distance"
        )));
    }
    Ok(())
}

fn check_inner(phi: &CndFunction, name: &str, positive: bool) -> Result<()> {
    let flags = phi.flags();
    if positive && !flags.positive_valued {
        return Err(Error::construction(format!(
            "{name} must be positive-valued here"
        )));
    }
    if !flags.nonnegative_valued {
        return Err(Error::construction(format!(
            "{name} must be nonnegative-valued"
        )));
    }
    Ok(())
}

/// Model family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "product")]
    Product,
    #[serde(rename = "F_r")]
    Fr,
    #[serde(rename = "G_r")]
    Gr,
    #[serde(rename = "H_r")]
    Hr,
    #[serde(rename = "I_r")]
    Ir,
    #[serde(rename = "J_r")]
    Jr,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Product => "product",
            Variant::Fr => "F_r",
            Variant::Gr => "G_r",
            Variant::Hr => "H_r",
            Variant::Ir => "I_r",
            Variant::Jr => "J_r",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            Variant::Product,
            Variant::Fr,
            Variant::Gr,
            Variant::Hr,
            Variant::Ir,
            Variant::Jr,
        ]
        .into_iter()
        .find(|v| v.name() == s)
        .ok_or_else(|| Error::Config(format!("unknown model variant {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
enum Outer {
    Stieltjes(StieltjesFunction),
    CompleteBernstein(CompleteBernsteinFunction),
    Pair {
        f1: CompletelyMonotoneFunction,
        f2: CompletelyMonotoneFunction,
    },
}

/// A kernel model together with the product space it lives on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KernelModel {
    variant: Variant,
    outer: Outer,
    g: CndFunction,
    h: CndFunction,
    r: Option<f64>,
    spaces: ProductSpace,
}

impl KernelModel {
    /// `F(t, u, v) = f1(g(t)) f2(h(u, v))`.
    pub fn product(
        f1: CompletelyMonotoneFunction,
        f2: CompletelyMonotoneFunction,
        g: CndFunction,
        h: CndFunction,
        spaces: ProductSpace,
    ) -> Result<Self> {
        check_inner(&g, "g", !f1.is_bounded())?;
        check_inner(&h, "h", !f2.is_bounded())?;
        Self::assemble(Variant::Product, Outer::Pair { f1, f2 }, g, h, None, spaces)
    }

    /// `F_r` on a two-factor product.
    pub fn two_space(model: TwoSpaceGneiting, spaces: ProductSpace) -> Result<Self> {
        let TwoSpaceGneiting { f, g, h, r } = model;
        Self::assemble(Variant::Fr, Outer::Stieltjes(f), g, h, Some(r), spaces)
    }

    /// `G_r = h^{-r} f(g/h)` or, mirrored, `H_r = g^{-r} f(h/g)`.
    pub fn stieltjes(
        variant: Variant,
        f: StieltjesFunction,
        g: CndFunction,
        h: CndFunction,
        r: f64,
        spaces: ProductSpace,
    ) -> Result<Self> {
        check_exponent(r, f.order())?;
        match variant {
            Variant::Gr => check_inner(&g, "g", !f.is_bounded())?,
            Variant::Hr => check_inner(&g, "g", true)?,
            other => return Err(Error::argument(format!("{other} is not a Stieltjes model"))),
        }
        check_inner(&h, "h", true)?;
        Self::assemble(variant, Outer::Stieltjes(f), g, h, Some(r), spaces)
    }

    /// `I_r = g^{-r} f(g/h)` or, mirrored, `J_r = h^{-r} f(h/g)`.
    pub fn complete_bernstein(
        variant: Variant,
        f: CompleteBernsteinFunction,
        g: CndFunction,
        h: CndFunction,
        r: f64,
        spaces: ProductSpace,
    ) -> Result<Self> {
        if !matches!(variant, Variant::Ir | Variant::Jr) {
            return Err(Error::argument(format!(
                "{variant} is not a complete Bernstein model"
            )));
        }
        check_exponent(r, f.order())?;
        check_inner(&g, "g", true)?;
        check_inner(&h, "h", true)?;
        Self::assemble(variant, Outer::CompleteBernstein(f), g, h, Some(r), spaces)
    }

    fn assemble(
        variant: Variant,
        outer: Outer,
        g: CndFunction,
        h: CndFunction,
        r: Option<f64>,
        spaces: ProductSpace,
    ) -> Result<Self> {
        let expected = if variant == Variant::Fr { 2 } else { 3 };
        if spaces.arity() != expected {
            return Err(Error::argument(format!(
                "{variant} needs {expected} spaces, got {}",
                spaces.arity()
            )));
        }
        check_single(&g, "g")?;
        if h.arity() != expected - 1 {
            return Err(Error::argument(format!(
                "h must read {} distances, reads {}",
                expected - 1,
                h.arity()
            )));
        }
        g.check_spaces(&spaces.factors()[..1])?;
        h.check_spaces(&spaces.factors()[1..])?;
        Ok(Self {
            variant,
            outer,
            g,
            h,
            r,
            spaces,
        })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn spaces(&self) -> &ProductSpace {
        &self.spaces
    }

    pub fn g(&self) -> &CndFunction {
        &self.g
    }

    pub fn h(&self) -> &CndFunction {
        &self.h
    }

    pub fn r(&self) -> Option<f64> {
        self.r
    }

    pub fn arity(&self) -> usize {
        self.spaces.arity()
    }

    /// Model value at a distance tuple `(t, u[, v])`.
    pub fn eval(&self, d: &[f64]) -> Result<f64> {
        if d.len() != self.arity() {
            return Err(Error::argument(format!(
                "{} takes {} distances, got {}",
                self.variant,
                self.arity(),
                d.len()
            )));
        }
        let gt = self.g.eval(&d[..1])?;
        let hv = self.h.eval(&d[1..])?;
        let r = self.r.unwrap_or(0.0);
        match (&self.outer, self.variant) {
            (Outer::Pair { f1, f2 }, _) => Ok(f1.eval_extended(gt)? * f2.eval_extended(hv)?),
            (Outer::Stieltjes(f), Variant::Gr | Variant::Fr) => {
                Ok(hv.powf(-r) * f.eval_extended(gt / hv)?)
            }
            (Outer::Stieltjes(f), _) => Ok(gt.powf(-r) * f.eval_extended(hv / gt)?),
            (Outer::CompleteBernstein(f), Variant::Ir) => {
                Ok(gt.powf(-r) * f.eval_extended(gt / hv)?)
            }
            (Outer::CompleteBernstein(f), _) => Ok(hv.powf(-r) * f.eval_extended(hv / gt)?),
        }
    }

    pub fn value_at_origin(&self) -> Result<f64> {
        self.eval(&vec![0.0; self.arity()])
    }
}

impl fmt::Display for KernelModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.r {
            Some(r) => write!(f, "{}(r={r}) on {}", self.variant, self.spaces),
            None => write!(f, "{} on {}", self.variant, self.spaces),
        }
    }
}

/// Overall strict positive definiteness verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "SPD_guaranteed")]
    SpdGuaranteed,
    #[serde(rename = "PD_only")]
    PdOnly,
    #[serde(rename = "necessary_condition_violated")]
    NecessaryConditionViolated,
    #[serde(rename = "open_case")]
    OpenCase,
}

/// Prints the serialized name, e.g. `SPD_guaranteed`.
fn serde_name(value: &impl Serialize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => f.write_str(&s),
        _ => Err(fmt::Error),
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        serde_name(self, f)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        serde_name(self, f)
    }
}

/// A necessary condition for strict positive definiteness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `g(t) > g(0)` for `t ≠ 0`.
    GNotStrict,
    /// `h(u, v) > h(0, 0)` for `u + v > 0`.
    HNotStrict,
    /// The argument side is nontrivial but the outer function is constant.
    ConstantOuter,
    /// `r = λ` and the outer function is a pure power with the weight side nontrivial.
    PurePowerOuter,
}

impl FromStr for Clause {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Config(format!("unknown clause {s:?}")))
    }
}

/// A violated clause with a distance tuple realizing it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    pub witness: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One result of the decision table with the hypotheses it needs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionEntry {
    pub id: &'static str,
    pub statement: &'static str,
    pub hypotheses: Vec<Hypothesis>,
    pub applies: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpdConditionReport {
    pub model: String,
    pub verdict: Verdict,
    pub entries: Vec<ConditionEntry>,
    pub violations: Vec<Violation>,
}

impl SpdConditionReport {
    pub fn violation(&self, clause: Clause) -> Option<&Violation> {
        self.violations.iter().find(|v| v.clause == clause)
    }
}

fn hyp(name: impl Into<String>, holds: bool) -> Hypothesis {
    Hypothesis {
        name: name.into(),
        holds,
        detail: None,
    }
}

fn entry(id: &'static str, statement: &'static str, hypotheses: Vec<Hypothesis>) -> ConditionEntry {
    let applies = hypotheses.iter().all(|h| h.holds);
    ConditionEntry {
        id,
        statement,
        hypotheses,
        applies,
    }
}

/// Outer-function data the decision table reads, after the complete
/// Bernstein models are rewritten as Stieltjes ones.
struct OuterView {
    names: [&'static str; 3],
    c: f64,
    d: f64,
    measure_nonzero: bool,
    order: f64,
    r: f64,
    /// Whether `g` (the `X` side) feeds the argument of the outer function.
    numerator_is_x: bool,
}

impl KernelModel {
    fn outer_view(&self) -> Option<OuterView> {
        let r = self.r?;
        match &self.outer {
            Outer::Stieltjes(f) => Some(OuterView {
                names: ["C_f", "D_f", "mu_f"],
                c: f.c(),
                d: f.d(),
                measure_nonzero: !f.measure().is_zero(),
                order: f.order(),
                r,
                numerator_is_x: matches!(self.variant, Variant::Gr | Variant::Fr),
            }),
            Outer::CompleteBernstein(f) => Some(OuterView {
                names: ["A_f", "B_f", "nu_f"],
                c: f.a(),
                d: f.b(),
                measure_nonzero: !f.measure().is_zero(),
                order: f.order(),
                r,
                numerator_is_x: self.variant == Variant::Jr,
            }),
            Outer::Pair { .. } => None,
        }
    }

    /// Factor indices of the `X` side and the `Y × Z` side.
    fn sides(&self) -> (std::ops::Range<usize>, std::ops::Range<usize>) {
        (0..1, 1..self.arity())
    }

    fn side_nontrivial(&self, side: &std::ops::Range<usize>) -> bool {
        self.spaces.factors()[side.clone()]
            .iter()
            .any(|s| s.is_nontrivial())
    }

    /// Nonzero tuple on the given side, zero elsewhere, from the first nontrivial factor.
    fn side_witness(&self, side: &std::ops::Range<usize>) -> Option<Vec<f64>> {
        let mut d = vec![0.0; self.arity()];
        for i in side.clone() {
            if let Some(&x) = self.spaces.factors()[i].diameter_samples(2).first() {
                d[i] = x;
                return Some(d);
            }
        }
        None
    }

    /// Strictness of `g` (or `h`) from its flag, else from a diameter grid.
    fn strictness(
        &self,
        which: &str,
        side: std::ops::Range<usize>,
    ) -> Result<(Hypothesis, Option<Vec<f64>>)> {
        let phi = if which == "g" { &self.g } else { &self.h };
        let name = format!("{which} strictly exceeds its value at the origin");
        if phi.flags().strict_at_zero {
            return Ok((
                Hypothesis {
                    name,
                    holds: true,
                    detail: Some("structural flag".into()),
                },
                None,
            ));
        }
        let grid = diameter_grid(
            &self.spaces.factors()[side.clone()],
            STRICTNESS_GRID_PER_AXIS,
        );
        let report = strictness_check(phi, &grid)?;
        let detail = Some(format!(
            "grid check over {} tuples, min margin {:e}",
            report.samples, report.min_margin
        ));
        let witness = (!report.pass).then(|| {
            let mut d = vec![0.0; self.arity()];
            for (slot, x) in side.zip(&report.worst) {
                d[slot] = *x;
            }
            d
        });
        Ok((
            Hypothesis {
                name,
                holds: report.pass,
                detail,
            },
            witness,
        ))
    }
}

/// Decision table for strict positive definiteness.
///
/// Precedence: any violated necessary clause wins; otherwise the
/// unresolved configuration (`C·D > 0`, `r = λ`, zero measure) is reported
/// as open; otherwise a sufficiency result gives `SPD_guaranteed`;
/// everything else is `PD_only`.
pub fn spd_report(model: &KernelModel) -> Result<SpdConditionReport> {
    let (x_side, yz_side) = model.sides();
    let metric = model.spaces.factors().iter().all(|s| s.is_metric());
    let g_pos = model.g.flags().positive_valued;
    let h_pos = model.h.flags().positive_valued;
    let (g_strict, g_witness) = model.strictness("g", x_side.clone())?;
    let (h_strict, h_witness) = model.strictness("h", yz_side.clone())?;

    let mut violations = Vec::new();
    if let Some(witness) = g_witness {
        violations.push(Violation {
            clause: Clause::GNotStrict,
            witness,
        });
    }
    if let Some(witness) = h_witness {
        violations.push(Violation {
            clause: Clause::HNotStrict,
            witness,
        });
    }

    let mut entries = vec![entry(
        "strictness_necessary",
        "two points differing only where g (or h) fails to increase give a singular Gram matrix",
        vec![g_strict.clone(), h_strict.clone()],
    )];

    let (sufficient, open) = match model.outer_view() {
        None => {
            let Outer::Pair { f1, f2 } = &model.outer else {
                unreachable!()
            };
            entries.push(entry(
                "product_positive_definite",
                "f1(g) f2(h) is positive definite",
                vec![hyp(
                    "g and h are CND with the positivity their outer functions need",
                    true,
                )],
            ));
            let e = entry(
                "product_characterization",
                "with nonconstant f1, f2 and positive-valued g, h on metric spaces: SPD iff g and h are strict",
                vec![
                    hyp("all factors are metric spaces", metric),
                    hyp("f1 is nonconstant", !f1.is_constant()),
                    hyp("f2 is nonconstant", !f2.is_constant()),
                    hyp("g is positive-valued", g_pos),
                    hyp("h is positive-valued", h_pos),
                    g_strict,
                    h_strict,
                ],
            );
            let sufficient = e.applies;
            entries.push(e);
            (sufficient, false)
        }
        Some(v) => {
            let [c_name, d_name, mu_name] = v.names;
            let (num_side, den_side) = if v.numerator_is_x {
                (x_side, yz_side)
            } else {
                (yz_side, x_side)
            };
            let num_nontrivial = model.side_nontrivial(&num_side);
            let den_nontrivial = model.side_nontrivial(&den_side);
            let (num_label, den_label) = if v.numerator_is_x {
                ("X is nontrivial", "Y or Z is nontrivial")
            } else {
                ("Y or Z is nontrivial", "X is nontrivial")
            };
            let d_pos = hyp(format!("{d_name} > 0"), v.d > 0.0);
            let d_zero = hyp(format!("{d_name} = 0"), v.d == 0.0);
            let r_gt = hyp("r > lambda", v.r > v.order);
            let r_eq = hyp("r = lambda", v.r == v.order);
            let mu_nonzero = hyp(format!("{mu_name} is nonzero"), v.measure_nonzero);
            let mu_zero = hyp(format!("{mu_name} is zero"), !v.measure_nonzero);
            let base = || {
                vec![
                    hyp("all factors are metric spaces", metric),
                    hyp("g is positive-valued", g_pos),
                    hyp("h is positive-valued", h_pos),
                ]
            };

            entries.push(entry(
                "positive_definite",
                "the model is positive definite for r >= lambda",
                vec![
                    hyp("r >= lambda", v.r >= v.order),
                    hyp("g and h are nonnegative CND functions", true),
                ],
            ));

            let constant_outer = entry(
                "constant_outer_necessary",
                "with the argument side nontrivial, SPD needs a singular part or a nonzero measure",
                vec![
                    hyp(num_label, num_nontrivial),
                    d_zero.clone(),
                    mu_zero.clone(),
                ],
            );
            if constant_outer.applies {
                if let Some(witness) = model.side_witness(&num_side) {
                    violations.push(Violation {
                        clause: Clause::ConstantOuter,
                        witness,
                    });
                }
            }
            entries.push(constant_outer);

            let pure_power = entry(
                "pure_power_outer_necessary",
                "at r = lambda with a singular part and the weight side nontrivial, SPD needs a positive limit or a nonzero measure",
                vec![
                    r_eq.clone(),
                    d_pos.clone(),
                    hyp(den_label, den_nontrivial),
                    hyp(format!("{c_name} = 0"), v.c == 0.0),
                    mu_zero.clone(),
                ],
            );
            if pure_power.applies {
                if let Some(witness) = model.side_witness(&den_side) {
                    violations.push(Violation {
                        clause: Clause::PurePowerOuter,
                        witness,
                    });
                }
            }
            entries.push(pure_power);

            let strict_pair = [g_strict, h_strict];
            let with = |mut hs: Vec<Hypothesis>, extra: Vec<Hypothesis>| {
                hs.extend(extra);
                hs.extend(strict_pair.iter().cloned());
                hs
            };
            let singular = entry(
                "singular_part_sufficient",
                "a singular part with r > lambda: SPD iff g and h are strict",
                with(base(), vec![d_pos.clone(), r_gt]),
            );
            let bounded = entry(
                "bounded_outer_sufficient",
                "no singular part, argument side nontrivial: SPD iff f is nonconstant and g, h are strict",
                with(
                    base(),
                    vec![
                        hyp(num_label, num_nontrivial),
                        d_zero,
                        hyp("f is nonconstant", v.d > 0.0 || v.measure_nonzero),
                    ],
                ),
            );
            let critical = entry(
                "critical_order_sufficient",
                "a singular part at r = lambda with a nonzero measure: SPD iff g and h are strict",
                with(base(), vec![d_pos.clone(), r_eq.clone(), mu_nonzero]),
            );
            let open_entry = entry(
                "open_case",
                "a positive limit and a singular part at r = lambda with a zero measure: SPD status unresolved",
                vec![hyp(format!("{c_name} * {d_name} > 0"), v.c * v.d > 0.0), r_eq, mu_zero],
            );
            let sufficient = singular.applies || bounded.applies || critical.applies;
            let open = open_entry.applies;
            entries.extend([singular, bounded, critical, open_entry]);
            (sufficient, open)
        }
    };

    let verdict = if !violations.is_empty() {
        Verdict::NecessaryConditionViolated
    } else if open {
        Verdict::OpenCase
    } else if sufficient {
        Verdict::SpdGuaranteed
    } else {
        Verdict::PdOnly
    };
    Ok(SpdConditionReport {
        model: model.to_string(),
        verdict,
        entries,
        violations,
    })
}

/// Two points whose Gram matrix is singular because of a violated clause.
#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub clause: Clause,
    pub distances: Vec<f64>,
    pub points: Vec<ProductPoint>,
    pub matrix: [[f64; 2]; 2],
    pub det: f64,
    pub scale: f64,
}

/// Builds the two-point configuration from the witness of `clause`: the
/// points agree in every factor except those where the witness is nonzero.
pub fn counterexample_2x2(model: &KernelModel, clause: Clause) -> Result<Counterexample> {
    let report = spd_report(model)?;
    let violation = report
        .violation(clause)
        .ok_or_else(|| Error::argument(format!("clause {clause:?} is not violated by {model}")))?;
    let mut first = Vec::with_capacity(model.arity());
    let mut second = Vec::with_capacity(model.arity());
    for (space, &d) in model.spaces.factors().iter().zip(&violation.witness) {
        let (p, q) = space.point_pair_at_distance(d)?;
        first.push(p);
        second.push(q);
    }
    let points = vec![
        ProductPoint { components: first },
        ProductPoint { components: second },
    ];
    let a: SymMatrix = gram(model, &points)?;
    let matrix = [[a.get(0, 0), a.get(0, 1)], [a.get(1, 0), a.get(1, 1)]];
    let det = matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0];
    Ok(Counterexample {
        clause,
        distances: model.spaces.distances(&points[0], &points[1])?,
        points,
        matrix,
        det,
        scale: a.max_abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::Space;
    use crate::special::{BernsteinFunction, DiscreteMeasure, ExponentialMixture};
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4};

    fn example_one_spaces() -> ProductSpace {
        ProductSpace::new(vec![
            Space::sphere(2).unwrap(),
            Space::interval(FRAC_PI_2).unwrap(),
            Space::euclidean(2).unwrap(),
        ])
        .unwrap()
    }

    fn sum(g: CndFunction, h: CndFunction) -> CndFunction {
        CndFunction::bernstein_compose(BernsteinFunction::identity(), g, h).unwrap()
    }

    /// `1 + sin u + v^s`.
    fn example_one_h(s: f64) -> CndFunction {
        sum(CndFunction::sine(), CndFunction::power(s).unwrap())
            .shift(1.0)
            .unwrap()
    }

    fn example_one(f: StieltjesFunction, r: f64) -> KernelModel {
        KernelModel::stieltjes(
            Variant::Gr,
            f,
            CndFunction::three_minus_cos(),
            example_one_h(1.5),
            r,
            example_one_spaces(),
        )
        .unwrap()
    }

    fn measure(atoms: &[(f64, f64)]) -> DiscreteMeasure {
        DiscreteMeasure::new(atoms.iter().copied()).unwrap()
    }

    #[test]
    fn example_one_origin_value() {
        let model = example_one(StieltjesFunction::power(1.0).unwrap(), 1.0);
        assert_eq!(model.value_at_origin().unwrap(), 0.5);
    }

    #[test]
    fn constant_stieltjes_reduces_to_power_of_h() {
        let model = example_one(StieltjesFunction::constant(2.5).unwrap(), 1.7);
        for t in [0.0, 1.0, 3.0] {
            for u in [0.0, 0.7, FRAC_PI_2] {
                for v in [0.0f64, 0.3, 4.0] {
                    let h = 1.0 + u.sin() + v.powf(1.5);
                    let expect = 2.5 * h.powf(-1.7);
                    assert_relative_eq!(
                        model.eval(&[t, u, v]).unwrap(),
                        expect,
                        max_relative = 1e-15
                    );
                }
            }
        }
    }

    #[test]
    fn example_two_value() {
        // f = 1 + 2/(w+1), r = 2, g = 1 + t^1.5, h = 1 + u + v at (1, π/4, π/3);
        // mpmath: 0.27073731070128253046
        let f = StieltjesFunction::new(1.0, 1.0, 0.0, measure(&[(1.0, 2.0)])).unwrap();
        let spaces = ProductSpace::new(vec![
            Space::euclidean(1).unwrap(),
            Space::sphere(2).unwrap(),
            Space::sphere(2).unwrap(),
        ])
        .unwrap();
        let model = KernelModel::stieltjes(
            Variant::Gr,
            f,
            CndFunction::power(1.5).unwrap().shift(1.0).unwrap(),
            sum(CndFunction::linear(), CndFunction::linear())
                .shift(1.0)
                .unwrap(),
            2.0,
            spaces,
        )
        .unwrap();
        let value = model.eval(&[1.0, FRAC_PI_4, FRAC_PI_3]).unwrap();
        assert_relative_eq!(value, 0.270_737_310_701_282_530_46, max_relative = 1e-14);
    }

    #[test]
    fn product_examples() {
        let spaces = ProductSpace::new(vec![
            Space::euclidean(1).unwrap(),
            Space::interval(2.0).unwrap(),
            Space::interval(2.0).unwrap(),
        ])
        .unwrap();
        let exp = CompletelyMonotoneFunction::from(ExponentialMixture::exp_decay());
        let model = KernelModel::product(
            exp.clone(),
            exp.clone(),
            CndFunction::linear(),
            sum(CndFunction::linear(), CndFunction::linear()),
            spaces.clone(),
        )
        .unwrap();
        assert_eq!(model.value_at_origin().unwrap(), 1.0);

        // f1 = 1/w, g = 1 + t, f2 = e^{-w}, h = 1 + u + v at (1, 1, 1): e^{-3}/2
        let model = KernelModel::product(
            StieltjesFunction::power(1.0).unwrap().into(),
            exp,
            CndFunction::linear().shift(1.0).unwrap(),
            sum(CndFunction::linear(), CndFunction::linear())
                .shift(1.0)
                .unwrap(),
            spaces.clone(),
        )
        .unwrap();
        assert_relative_eq!(
            model.eval(&[1.0, 1.0, 1.0]).unwrap(),
            0.5 * (-3.0f64).exp(),
            max_relative = 1e-15
        );

        // unbounded f1 needs a positive-valued g
        let err = KernelModel::product(
            StieltjesFunction::power(1.0).unwrap().into(),
            ExponentialMixture::exp_decay().into(),
            CndFunction::linear(),
            sum(CndFunction::linear(), CndFunction::linear()),
            spaces,
        );
        assert!(matches!(err, Err(Error::Construction(_))));
    }

    #[test]
    fn mirrored_models() {
        let spaces = ProductSpace::new(vec![
            Space::euclidean(1).unwrap(),
            Space::interval(2.0).unwrap(),
            Space::interval(2.0).unwrap(),
        ])
        .unwrap();
        let g = CndFunction::linear().shift(1.0).unwrap();
        let h = sum(CndFunction::linear(), CndFunction::linear())
            .shift(1.0)
            .unwrap();

        // identity in B_1: I_1 = g^{-1} g/h = 1/h
        let id = CompleteBernsteinFunction::new(1.0, 0.0, 1.0, DiscreteMeasure::zero()).unwrap();
        let i = KernelModel::complete_bernstein(
            Variant::Ir,
            id,
            g.clone(),
            h.clone(),
            1.0,
            spaces.clone(),
        )
        .unwrap();
        for (t, u, v) in [(0.0, 0.0, 0.0), (1.0, 0.5, 2.0), (3.0, 1.0, 0.0)] {
            assert_relative_eq!(
                i.eval(&[t, u, v]).unwrap(),
                1.0 / (1.0 + u + v),
                max_relative = 1e-15
            );
        }

        // H_r with constant f: C g^{-r}
        let hr = KernelModel::stieltjes(
            Variant::Hr,
            StieltjesFunction::constant(3.0).unwrap(),
            g.clone(),
            h.clone(),
            2.0,
            spaces.clone(),
        )
        .unwrap();
        assert_relative_eq!(
            hr.eval(&[2.0, 1.0, 1.0]).unwrap(),
            3.0 / 9.0,
            max_relative = 1e-15
        );

        // J_1 with ν = δ_1 at (1, 1, 1): h = 3, g = 2, f(3/2) = (3/2)/(5/2) = 3/5, J = 1/5
        let f = CompleteBernsteinFunction::new(1.0, 0.0, 0.0, measure(&[(1.0, 1.0)])).unwrap();
        let j = KernelModel::complete_bernstein(Variant::Jr, f, g, h, 1.0, spaces).unwrap();
        assert_relative_eq!(j.eval(&[1.0, 1.0, 1.0]).unwrap(), 0.2, max_relative = 1e-15);
    }

    #[test]
    fn h_is_g_with_roles_swapped() {
        // H_r(f, g, h)(t, u) = G_r(f, h', g')(u, t) on two-factor analogues
        let f = StieltjesFunction::new(0.7, 0.3, 1.2, measure(&[(0.5, 1.0), (2.0, 0.4)])).unwrap();
        let spaces = ProductSpace::new(vec![
            Space::interval(3.0).unwrap(),
            Space::interval(3.0).unwrap(),
            Space::interval(3.0).unwrap(),
        ])
        .unwrap();
        let a = CndFunction::power(1.5).unwrap().shift(0.5).unwrap();
        let b = sum(CndFunction::linear(), CndFunction::linear())
            .shift(2.0)
            .unwrap();
        let hr = KernelModel::stieltjes(
            Variant::Hr,
            f.clone(),
            a.clone(),
            b.clone(),
            1.1,
            spaces.clone(),
        )
        .unwrap();
        for (t, u, v) in [(0.0, 0.0, 0.0), (1.0, 2.0, 0.5), (2.5, 0.1, 3.0)] {
            let (gt, hv) = (a.eval(&[t]).unwrap(), b.eval(&[u, v]).unwrap());
            // G_r with inner roles swapped: hv plays g, gt plays h
            let swapped = gt.powf(-1.1) * f.eval(hv / gt).unwrap();
            assert_eq!(hr.eval(&[t, u, v]).unwrap(), swapped);
        }
    }

    #[test]
    fn construction_errors() {
        let f = StieltjesFunction::power(2.0).unwrap();
        let build = |r: f64, g: CndFunction| {
            KernelModel::stieltjes(
                Variant::Gr,
                f.clone(),
                g,
                example_one_h(1.0),
                r,
                example_one_spaces(),
            )
        };
        assert!(matches!(
            build(1.5, CndFunction::three_minus_cos()),
            Err(Error::Parameter(_))
        ));
        // unbounded f with a g that reaches zero
        assert!(matches!(
            build(2.0, CndFunction::linear()),
            Err(Error::Construction(_))
        ));
        // power 2 atom is not CND on the sphere
        let g = CndFunction::power(2.0).unwrap().shift(1.0).unwrap();
        assert!(matches!(build(2.0, g), Err(Error::Construction(_))));
        // wrong arity
        let err = KernelModel::stieltjes(
            Variant::Gr,
            f.clone(),
            CndFunction::three_minus_cos(),
            CndFunction::linear().shift(1.0).unwrap(),
            2.0,
            example_one_spaces(),
        );
        assert!(err.is_err());
    }

    #[test]
    fn report_examples() {
        // f = 1/w, r = λ: C_f = 0 and μ_f = 0 with Y, Z nontrivial
        let report = spd_report(&example_one(StieltjesFunction::power(1.0).unwrap(), 1.0)).unwrap();
        assert_eq!(report.verdict, Verdict::NecessaryConditionViolated);
        assert!(report.violation(Clause::PurePowerOuter).is_some());

        let report = spd_report(&example_one(StieltjesFunction::power(1.0).unwrap(), 2.0)).unwrap();
        assert_eq!(report.verdict, Verdict::SpdGuaranteed);

        // h = 1 + sin u ignores v
        let h = sum(CndFunction::sine(), CndFunction::constant(0.0).unwrap())
            .shift(1.0)
            .unwrap();
        let model = KernelModel::stieltjes(
            Variant::Gr,
            StieltjesFunction::power(1.0).unwrap(),
            CndFunction::three_minus_cos(),
            h,
            2.0,
            example_one_spaces(),
        )
        .unwrap();
        let report = spd_report(&model).unwrap();
        assert_eq!(report.verdict, Verdict::NecessaryConditionViolated);
        let v = report.violation(Clause::HNotStrict).unwrap();
        assert_eq!(v.witness[0], 0.0);
        assert_eq!(v.witness[1], 0.0);
        assert!(v.witness[2] > 0.0);

        // open configuration
        let f = StieltjesFunction::new(1.0, 1.0, 1.0, DiscreteMeasure::zero()).unwrap();
        assert_eq!(
            spd_report(&example_one(f, 1.0)).unwrap().verdict,
            Verdict::OpenCase
        );
    }

    #[test]
    fn complete_bernstein_reports_mirror() {
        let f = CompleteBernsteinFunction::new(1.0, 0.0, 1.0, DiscreteMeasure::zero()).unwrap();
        let build = |variant, f: CompleteBernsteinFunction, r| {
            KernelModel::complete_bernstein(
                variant,
                f,
                CndFunction::three_minus_cos(),
                example_one_h(1.0),
                r,
                example_one_spaces(),
            )
            .unwrap()
        };
        assert_eq!(
            spd_report(&build(Variant::Ir, f.clone(), 2.0))
                .unwrap()
                .verdict,
            Verdict::SpdGuaranteed
        );
        // B_f > 0, r = λ, A_f = 0, ν_f = 0, X nontrivial
        let report = spd_report(&build(Variant::Ir, f, 1.0)).unwrap();
        assert_eq!(report.verdict, Verdict::NecessaryConditionViolated);
        assert_eq!(report.violations[0].clause, Clause::PurePowerOuter);
        let a = CompleteBernsteinFunction::new(1.0, 2.0, 0.0, DiscreteMeasure::zero()).unwrap();
        let report = spd_report(&build(Variant::Jr, a, 1.5)).unwrap();
        assert_eq!(report.violations[0].clause, Clause::ConstantOuter);
    }

    #[test]
    fn counterexamples_are_singular() {
        let g_const = KernelModel::stieltjes(
            Variant::Gr,
            StieltjesFunction::power(1.0).unwrap(),
            CndFunction::constant(2.0).unwrap(),
            example_one_h(1.0),
            2.0,
            example_one_spaces(),
        )
        .unwrap();
        let cex = counterexample_2x2(&g_const, Clause::GNotStrict).unwrap();
        assert!(cex.det.abs() <= 1e-12 * cex.scale * cex.scale);
        assert!(cex.matrix.iter().flatten().all(|&x| x == cex.matrix[0][0]));
        assert!(counterexample_2x2(&g_const, Clause::HNotStrict).is_err());

        let constant = example_one(StieltjesFunction::constant(3.0).unwrap(), 1.0);
        let cex = counterexample_2x2(&constant, Clause::ConstantOuter).unwrap();
        assert!(cex.det.abs() <= 1e-12 * cex.scale * cex.scale);
        // C_f / h(0,0)^r with h(0,0) = 1
        assert_eq!(cex.matrix[0][1], 3.0);
    }

    #[test]
    fn reports_are_deterministic() {
        let model = example_one(StieltjesFunction::power(1.0).unwrap(), 1.0);
        let a = serde_json::to_string(&spd_report(&model).unwrap()).unwrap();
        let b = serde_json::to_string(&spd_report(&model).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn construction_rejects_small_r(order in 0.1f64..3.0, gap in 1e-6f64..2.0) {
            let f = StieltjesFunction::new(order, 1.0, 0.0, DiscreteMeasure::zero()).unwrap();
            let low = KernelModel::stieltjes(Variant::Gr, f.clone(), CndFunction::three_minus_cos(),
                example_one_h(1.0), order - gap, example_one_spaces());
            prop_assert!(matches!(low, Err(Error::Parameter(_))));
            let high = KernelModel::stieltjes(Variant::Gr, f, CndFunction::three_minus_cos(),
                example_one_h(1.0), order + gap, example_one_spaces());
            prop_assert!(high.is_ok());
        }
    }
}
