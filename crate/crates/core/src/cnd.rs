//! Conditionally negative definite (CND) functions of distance tuples.
//!
//! A [`CndFunction`] is an expression tree over base atoms and three
//! combinators. It consumes `arity` distances, one per factor space, in order.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigenvalues, SymMatrix};
use crate::models::TwoSpaceGneiting;
use crate::spaces::{ProductPoint, ProductSpace, Space};
use crate::special::BernsteinFunction;

/// Slack allowed when checking that a distance lies in an atom's domain.
const DOMAIN_SLACK: f64 = 1e-12;

/// Base CND functions of a single distance.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "atom", rename_all = "snake_case")]
pub enum CndAtom {
    /// `t^s`, `s ∈ (0, 2]`, on Euclidean distances (and `s ≤ 1` on geodesic ones).
    Power { exponent: f64 },
    /// `t`.
    Linear,
    /// `3 - cos t` on `[0, π]`.
    ThreeMinusCos,
    /// `sin u` on `[0, π/2]`. Admitted from the literature on CND functions of
    /// the line; it is not derived here.
    Sine,
    /// `c ≥ 0`, ignoring its argument.
    Constant { c: f64 },
}

impl CndAtom {
    fn domain_end(&self) -> f64 {
        match self {
            CndAtom::ThreeMinusCos => PI,
            CndAtom::Sine => FRAC_PI_2,
            _ => f64::INFINITY,
        }
    }

    fn eval(&self, t: f64) -> Result<f64> {
        if !(t.is_finite() && t >= 0.0 && t <= self.domain_end() + DOMAIN_SLACK) {
            return Err(Error::domain(format!(
                "{self:?} is not defined at distance {t}"
            )));
        }
        Ok(match *self {
            CndAtom::Power { exponent } => t.powf(exponent),
            CndAtom::Linear => t,
            CndAtom::ThreeMinusCos => 3.0 - t.cos(),
            CndAtom::Sine => t.sin(),
            CndAtom::Constant { c } => c,
        })
    }

    fn supports(&self, space: &Space) -> bool {
        let within = |end: f64| {
            space
                .diameter_bound()
                .is_some_and(|b| b <= end + DOMAIN_SLACK)
        };
        match (self, space) {
            (CndAtom::Linear | CndAtom::Constant { .. }, _) => true,
            (
                CndAtom::Power { .. },
                Space::Euclidean { .. } | Space::Interval { .. } | Space::Discrete { .. },
            ) => true,
            // geodesic distance is CND and t^s is Bernstein for s ≤ 1
            (CndAtom::Power { exponent }, Space::Sphere { .. } | Space::Circle) => *exponent <= 1.0,
            (
                CndAtom::ThreeMinusCos,
                Space::Sphere { .. } | Space::Circle | Space::Discrete { .. },
            ) => true,
            (CndAtom::ThreeMinusCos, Space::Interval { .. }) => within(PI),
            (CndAtom::Sine, Space::Interval { .. }) => within(FRAC_PI_2),
            _ => false,
        }
    }

    fn flags(&self) -> CndFlags {
        match *self {
            CndAtom::Constant { c } => CndFlags {
                nonnegative_valued: true,
                positive_valued: c > 0.0,
                strict_at_zero: false,
            },
            CndAtom::ThreeMinusCos => CndFlags {
                nonnegative_valued: true,
                positive_valued: true,
                strict_at_zero: true,
            },
            _ => CndFlags {
                nonnegative_valued: true,
                positive_valued: false,
                strict_at_zero: true,
            },
        }
    }
}

/// Conservative structural claims about a CND function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CndFlags {
    pub nonnegative_valued: bool,
    pub positive_valued: bool,
    /// `φ(d) > φ(0)` for every nonzero tuple `d` of the domain.
    pub strict_at_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum Node {
    Atom(CndAtom),
    Shift {
        c: f64,
        inner: Box<CndFunction>,
    },
    BernsteinCompose {
        f: BernsteinFunction,
        g: Box<CndFunction>,
        h: Box<CndFunction>,
    },
    EuclideanCross {
        f: BernsteinFunction,
        h: Box<CndFunction>,
        dim: usize,
        h_origin: f64,
    },
    BoundedComplement {
        m: f64,
        model: Box<TwoSpaceGneiting>,
    },
}

/// A CND function on a product of diameter sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CndFunction {
    node: Node,
    arity: usize,
    flags: CndFlags,
}

impl CndFunction {
    fn atom(atom: CndAtom) -> Self {
        let flags = atom.flags();
        Self {
            node: Node::Atom(atom),
            arity: 1,
            flags,
        }
    }

    pub fn power(exponent: f64) -> Result<Self> {
        if !(exponent > 0.0 && exponent <= 2.0) {
            return Err(Error::parameter(format!(
                "power exponent must lie in (0, 2], got {exponent}"
            )));
        }
        Ok(Self::atom(CndAtom::Power { exponent }))
    }

    pub fn linear() -> Self {
        Self::atom(CndAtom::Linear)
    }

    pub fn three_minus_cos() -> Self {
        Self::atom(CndAtom::ThreeMinusCos)
    }

    pub fn sine() -> Self {
        Self::atom(CndAtom::Sine)
    }

    pub fn constant(c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::parameter(format!(
                "constant must be nonnegative, got {c}"
            )));
        }
        Ok(Self::atom(CndAtom::Constant { c }))
    }

    /// `φ + c` with `c ≥ 0`.
    pub fn shift(self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::parameter(format!(
                "shift must be nonnegative, got {c}"
            )));
        }
        let flags = CndFlags {
            positive_valued: self.flags.positive_valued
                || (c > 0.0 && self.flags.nonnegative_valued),
            ..self.flags
        };
        Ok(Self {
            arity: self.arity,
            flags,
            node: Node::Shift {
                c,
                inner: Box::new(self),
            },
        })
    }

    /// `(t, u) ↦ f(g(t) + h(u))` for nonnegative `g`, `h`.
    pub fn bernstein_compose(f: BernsteinFunction, g: CndFunction, h: CndFunction) -> Result<Self> {
        for (name, part) in [("g", &g), ("h", &h)] {
            if !part.flags.nonnegative_valued {
                return Err(Error::construction(format!(
                    "{name} must be nonnegative-valued"
                )));
            }
        }
        let increasing = f.is_strictly_increasing();
        let flags = CndFlags {
            nonnegative_valued: true,
            positive_valued: f.a() > 0.0
                || (increasing && (g.flags.positive_valued || h.flags.positive_valued)),
            strict_at_zero: increasing && g.flags.strict_at_zero && h.flags.strict_at_zero,
        };
        Ok(Self {
            arity: g.arity + h.arity,
            flags,
            node: Node::BernsteinCompose {
                f,
                g: Box::new(g),
                h: Box::new(h),
            },
        })
    }

    /// `(t, u) ↦ h(0)^{-n/2} - h(u)^{-n/2} e^{-f(t²/h(u))}` on `R^n × Y`.
    ///
    /// Only this bounded form is exposed; the unbounded `-h(u)^{-n/2} e^{…}`
    /// is negative-valued and no combinator accepts it.
    pub fn euclidean_cross(f: BernsteinFunction, h: CndFunction, dim: usize) -> Result<Self> {
        if !f.is_positive_valued() {
            return Err(Error::construction(
                "f must be a positive-valued Bernstein function",
            ));
        }
        if !h.flags.positive_valued {
            return Err(Error::construction("h must be positive-valued"));
        }
        if dim == 0 {
            return Err(Error::parameter("Euclidean dimension must be at least 1"));
        }
        let h_origin = h.value_at_origin()?;
        Ok(Self {
            arity: 1 + h.arity,
            // h(u) ≥ h(0) for CND h, so the value is nonnegative; strictness is left to runtime checks
            flags: CndFlags {
                nonnegative_valued: true,
                positive_valued: false,
                strict_at_zero: false,
            },
            node: Node::EuclideanCross {
                f,
                h: Box::new(h),
                dim,
                h_origin,
            },
        })
    }

    /// `M - F_r` for a bounded two-space model with `M ≥ sup F_r`.
    ///
    /// `r ≥ λ` makes every term of `F_r` nonincreasing in `g` and `h`, and
    /// both are minimized at the origin, so `sup F_r = F_r(0, 0)` exactly.
    pub fn bounded_complement(m: f64, model: TwoSpaceGneiting) -> Result<Self> {
        if !model.f().is_bounded() {
            return Err(Error::construction(
                "bounded_complement needs a bounded Stieltjes function",
            ));
        }
        let peak = model.eval(&[0.0, 0.0])?;
        if !(m.is_finite() && m >= peak) {
            return Err(Error::Precondition(format!(
                "M = {m} is below sup F_r = F_r(0, 0) = {peak}"
            )));
        }
        Ok(Self {
            arity: 2,
            flags: CndFlags {
                nonnegative_valued: true,
                positive_valued: false,
                strict_at_zero: false,
            },
            node: Node::BoundedComplement {
                m,
                model: Box::new(model),
            },
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn flags(&self) -> CndFlags {
        self.flags
    }

    pub fn eval(&self, d: &[f64]) -> Result<f64> {
        if d.len() != self.arity {
            return Err(Error::argument(format!(
                "expected {} distances, got {}",
                self.arity,
                d.len()
            )));
        }
        match &self.node {
            Node::Atom(atom) => atom.eval(d[0]),
            Node::Shift { c, inner } => Ok(inner.eval(d)? + c),
            Node::BernsteinCompose { f, g, h } => {
                let (dg, dh) = d.split_at(g.arity);
                f.eval(g.eval(dg)? + h.eval(dh)?)
            }
            Node::EuclideanCross {
                f,
                h,
                dim,
                h_origin,
            } => {
                let hu = h.eval(&d[1..])?;
                let half = *dim as f64 / 2.0;
                Ok(h_origin.powf(-half) - hu.powf(-half) * (-f.eval(d[0] * d[0] / hu)?).exp())
            }
            Node::BoundedComplement { m, model } => Ok(m - model.eval(d)?),
        }
    }

    pub fn value_at_origin(&self) -> Result<f64> {
        self.eval(&vec![0.0; self.arity])
    }

    /// Fails unless every atom is known to be CND on the factor it reads.
    pub fn check_spaces(&self, spaces: &[Space]) -> Result<()> {
        if spaces.len() != self.arity {
            return Err(Error::argument(format!(
                "function reads {} distances but {} spaces were given",
                self.arity,
                spaces.len()
            )));
        }
        match &self.node {
            Node::Atom(atom) => {
                if atom.supports(&spaces[0]) {
                    Ok(())
                } else {
                    Err(Error::construction(format!(
                        "{atom:?} is not a CND atom on {}",
                        spaces[0]
                    )))
                }
            }
            Node::Shift { inner, .. } => inner.check_spaces(spaces),
            Node::BernsteinCompose { g, h, .. } => {
                let (sg, sh) = spaces.split_at(g.arity);
                g.check_spaces(sg)?;
                h.check_spaces(sh)
            }
            Node::EuclideanCross { h, dim, .. } => {
                let ok = match &spaces[0] {
                    Space::Euclidean { dim: n } => n == dim,
                    Space::Interval { .. } => *dim == 1,
                    _ => false,
                };
                if !ok {
                    return Err(Error::construction(format!(
                        "euclidean_cross with n = {dim} cannot read {}",
                        spaces[0]
                    )));
                }
                h.check_spaces(&spaces[1..])
            }
            Node::BoundedComplement { model, .. } => {
                model.g().check_spaces(&spaces[..1])?;
                model.h().check_spaces(&spaces[1..])
            }
        }
    }
}

/// Outcome of [`check_cnd_empirical`].
#[derive(Debug, Clone, Serialize)]
pub struct CndVerdict {
    pub max_eig: f64,
    pub tol: f64,
    pub scale: f64,
    pub pass: bool,
    pub n: usize,
    pub seed: Option<u64>,
}

/// Largest eigenvalue of `P A P` with `A_jk = φ(d(p_j, p_k))` and `P` the
/// centering projector. Passes iff it is at most `tol · max(1, max |A_jk|)`.
pub fn check_cnd_empirical(
    phi: &CndFunction,
    product: &ProductSpace,
    points: &[ProductPoint],
    tol: f64,
) -> Result<CndVerdict> {
    let n = points.len();
    if n < 2 {
        return Err(Error::argument("the CND check needs at least two points"));
    }
    let a = SymMatrix::try_from_upper(n, |j, k| {
        phi.eval(&product.distances(&points[j], &points[k])?)
    })?;
    let scale = a.max_abs().max(1.0);
    let eig = jacobi_eigenvalues(&a.double_centered())?;
    let max_eig = eig[n - 1];
    Ok(CndVerdict {
        max_eig,
        tol,
        scale,
        pass: max_eig <= tol * scale,
        n,
        seed: None,
    })
}

/// Outcome of [`strictness_check`].
#[derive(Debug, Clone, Serialize)]
pub struct StrictnessReport {
    pub pass: bool,
    /// `min φ(d) - φ(0)` over the grid.
    pub min_margin: f64,
    /// The tuple attaining the minimum margin.
    pub worst: Vec<f64>,
    pub samples: usize,
}

/// Checks `φ(d) > φ(0, …, 0)` on every tuple of `grid`, none of which may be zero.
pub fn strictness_check(phi: &CndFunction, grid: &[Vec<f64>]) -> Result<StrictnessReport> {
    let origin = phi.value_at_origin()?;
    let mut min_margin = f64::INFINITY;
    let mut worst = Vec::new();
    for d in grid {
        if d.iter().all(|&x| x == 0.0) {
            return Err(Error::argument("strictness grid must exclude the origin"));
        }
        let margin = phi.eval(d)? - origin;
        if margin < min_margin {
            min_margin = margin;
            worst.clone_from(d);
        }
    }
    Ok(StrictnessReport {
        pass: min_margin > 0.0,
        min_margin,
        worst,
        samples: grid.len(),
    })
}

/// Cartesian grid of `{0} ∪ diameter_samples` per factor, without the origin.
pub fn diameter_grid(spaces: &[Space], per_axis: usize) -> Vec<Vec<f64>> {
    let mut grid: Vec<Vec<f64>> = vec![Vec::new()];
    for space in spaces {
        let axis: Vec<f64> = std::iter::once(0.0)
            .chain(space.diameter_samples(per_axis))
            .collect();
        grid = grid
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |&x| {
                    let mut next = prefix.clone();
                    next.push(x);
                    next
                })
            })
            .collect();
    }
    grid.retain(|d| d.iter().any(|&x| x != 0.0));
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{sample_distinct, Point};
    use crate::special::{DiscreteMeasure, StieltjesFunction};
    use approx::assert_relative_eq;

    fn one_minus_exp() -> BernsteinFunction {
        BernsteinFunction::new(0.0, 0.0, DiscreteMeasure::new([(1.0, 1.0)]).unwrap()).unwrap()
    }

    fn line() -> ProductSpace {
        ProductSpace::new(vec![Space::euclidean(1).unwrap()]).unwrap()
    }

    fn on_line(xs: &[f64]) -> Vec<ProductPoint> {
        xs.iter()
            .map(|&x| ProductPoint {
                components: vec![Point::Vector(vec![x])],
            })
            .collect()
    }

    #[test]
    fn identity_compose_is_the_sum() {
        let phi = CndFunction::bernstein_compose(
            BernsteinFunction::identity(),
            CndFunction::power(2.0).unwrap(),
            CndFunction::linear(),
        )
        .unwrap();
        for (t, u) in [(0.3, 1.7), (2.0, 0.0), (1e-3, 5.5)] {
            assert_eq!(phi.eval(&[t, u]).unwrap(), t.powf(2.0) + u);
        }
        assert!(phi.flags().strict_at_zero);
    }

    #[test]
    fn compose_of_zero_is_zero() {
        let zero = CndFunction::constant(0.0).unwrap();
        let phi = CndFunction::bernstein_compose(one_minus_exp(), zero.clone(), zero).unwrap();
        assert_eq!(phi.eval(&[1.0, 2.0]).unwrap(), 0.0);
        assert!(!phi.flags().strict_at_zero);
    }

    #[test]
    fn compose_requires_nonnegative_inputs() {
        let gneiting = TwoSpaceGneiting::new(
            StieltjesFunction::new(1.0, 0.0, 0.0, DiscreteMeasure::new([(1.0, 1.0)]).unwrap())
                .unwrap(),
            CndFunction::linear(),
            CndFunction::linear().shift(1.0).unwrap(),
            1.0,
        )
        .unwrap();
        let complement = CndFunction::bounded_complement(1.0, gneiting).unwrap();
        assert!(complement.flags().nonnegative_valued);
        let cross = CndFunction::euclidean_cross(
            BernsteinFunction::identity(),
            CndFunction::constant(1.0).unwrap(),
            1,
        )
        .unwrap();
        assert!(cross.flags().nonnegative_valued);
        // a constant zero h is not positive-valued
        let err = CndFunction::euclidean_cross(
            BernsteinFunction::identity(),
            CndFunction::constant(0.0).unwrap(),
            1,
        );
        assert!(matches!(err, Err(Error::Construction(_))));
    }

    #[test]
    fn cross_examples() {
        // f = identity, h ≡ 1, n = 2: φ(t, u) = 1 - e^{-t²}
        let phi = CndFunction::euclidean_cross(
            BernsteinFunction::identity(),
            CndFunction::constant(1.0).unwrap(),
            2,
        )
        .unwrap();
        for t in [0.0, 0.5, 2.0] {
            assert_relative_eq!(
                phi.eval(&[t, 0.3]).unwrap(),
                -(-t * t).exp_m1(),
                max_relative = 1e-15
            );
        }
        // at the origin: h(0)^{-n/2} (1 - e^{-f(0)})
        let f = BernsteinFunction::new(0.5, 1.0, DiscreteMeasure::zero()).unwrap();
        let h = CndFunction::sine().shift(1.0).unwrap();
        let phi = CndFunction::euclidean_cross(f, h, 1).unwrap();
        assert_relative_eq!(
            phi.eval(&[0.0, 0.0]).unwrap(),
            1.0 - (-0.5f64).exp(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn complement_precondition() {
        let f = StieltjesFunction::new(1.0, 0.0, 0.0, DiscreteMeasure::new([(1.0, 1.0)]).unwrap())
            .unwrap();
        let model = TwoSpaceGneiting::new(
            f,
            CndFunction::linear(),
            CndFunction::linear().shift(1.0).unwrap(),
            1.0,
        )
        .unwrap();
        // F_r(0, 0) = 1 · f(0⁺) = 1
        assert!(matches!(
            CndFunction::bounded_complement(0.5, model.clone()),
            Err(Error::Precondition(_))
        ));
        let phi = CndFunction::bounded_complement(1.0, model).unwrap();
        assert_eq!(phi.value_at_origin().unwrap(), 0.0);
        for d in diameter_grid(
            &[Space::sphere(2).unwrap(), Space::interval(3.0).unwrap()],
            10,
        ) {
            assert!(phi.eval(&d).unwrap() >= 0.0);
        }

        let constant = TwoSpaceGneiting::new(
            StieltjesFunction::constant(2.0).unwrap(),
            CndFunction::linear(),
            CndFunction::constant(1.0).unwrap(),
            1.0,
        )
        .unwrap();
        let phi = CndFunction::bounded_complement(2.0, constant).unwrap();
        assert_eq!(phi.eval(&[1.0, 2.0]).unwrap(), 0.0);
    }

    #[test]
    fn empirical_check_examples() {
        let c = CndFunction::constant(3.0).unwrap();
        let v = check_cnd_empirical(&c, &line(), &on_line(&[0.0, 1.0, 4.0]), 1e-9).unwrap();
        assert!(v.pass && v.max_eig.abs() <= 1e-15);

        // PAP for |i - j| on {0, 1, 2} has spectrum {-2, -2/3, 0}
        let v = check_cnd_empirical(
            &CndFunction::linear(),
            &line(),
            &on_line(&[0.0, 1.0, 2.0]),
            1e-9,
        )
        .unwrap();
        assert!(v.pass && v.max_eig.abs() <= 1e-14);

        let sq = CndFunction::power(2.0).unwrap();
        let pts = sample_distinct(&line(), 10, 5, 1e-6).unwrap();
        assert!(check_cnd_empirical(&sq, &line(), &pts, 1e-9).unwrap().pass);
        assert!(check_cnd_empirical(&sq, &line(), &pts[..1], 1e-9).is_err());
    }

    #[test]
    fn negated_distance_fails() {
        // -t is not CND: its projected form has a positive eigenvalue
        let product = ProductSpace::new(vec![Space::interval(1.0).unwrap()]).unwrap();
        let pts = sample_distinct(&product, 8, 1, 1e-6).unwrap();
        let a = SymMatrix::from_upper(pts.len(), |j, k| {
            -product.distances(&pts[j], &pts[k]).unwrap()[0]
        });
        let top = jacobi_eigenvalues(&a.double_centered()).unwrap();
        assert!(top[pts.len() - 1] > 1e-3);
    }

    #[test]
    fn strictness_examples() {
        let grid: Vec<Vec<f64>> = (1..=20).map(|i| vec![PI * i as f64 / 20.0]).collect();
        let r = strictness_check(&CndFunction::three_minus_cos(), &grid).unwrap();
        assert!(r.pass);
        assert_relative_eq!(r.min_margin, 1.0 - (PI / 20.0).cos(), max_relative = 1e-12);

        let ignores_u = CndFunction::bernstein_compose(
            BernsteinFunction::identity(),
            CndFunction::linear(),
            CndFunction::constant(0.0).unwrap(),
        )
        .unwrap();
        let r = strictness_check(&ignores_u, &[vec![1.0, 0.0], vec![0.0, 0.5]]).unwrap();
        assert!(!r.pass);
        assert_eq!(r.worst, vec![0.0, 0.5]);

        let h = CndFunction::bernstein_compose(
            BernsteinFunction::identity(),
            CndFunction::sine(),
            CndFunction::power(1.5).unwrap(),
        )
        .unwrap()
        .shift(1.0)
        .unwrap();
        let mut grid = Vec::new();
        for i in 0..50 {
            for j in 0..50 {
                if i + j > 0 {
                    grid.push(vec![FRAC_PI_2 * i as f64 / 49.0, 10.0 * j as f64 / 49.0]);
                }
            }
        }
        assert!(strictness_check(&h, &grid).unwrap().pass);
        assert!(strictness_check(&h, &[vec![0.0, 0.0]]).is_err());
    }

    #[test]
    fn space_compatibility() {
        let s2 = Space::sphere(2).unwrap();
        let half = Space::interval(FRAC_PI_2).unwrap();
        assert!(CndFunction::three_minus_cos()
            .check_spaces(std::slice::from_ref(&s2))
            .is_ok());
        assert!(CndFunction::sine()
            .check_spaces(std::slice::from_ref(&half))
            .is_ok());
        assert!(CndFunction::sine()
            .check_spaces(&[Space::interval(3.0).unwrap()])
            .is_err());
        assert!(CndFunction::power(1.5)
            .unwrap()
            .check_spaces(std::slice::from_ref(&s2))
            .is_err());
        assert!(CndFunction::power(0.5).unwrap().check_spaces(&[s2]).is_ok());
        let cross = CndFunction::euclidean_cross(
            BernsteinFunction::identity(),
            CndFunction::sine().shift(1.0).unwrap(),
            2,
        )
        .unwrap();
        assert!(cross
            .check_spaces(&[Space::euclidean(2).unwrap(), half.clone()])
            .is_ok());
        assert!(cross
            .check_spaces(&[Space::euclidean(3).unwrap(), half])
            .is_err());
        assert!(CndFunction::power(2.5).is_err());
        assert!(CndFunction::linear().eval(&[1.0, 2.0]).is_err());
        assert!(CndFunction::sine().eval(&[2.0]).is_err());
    }

    #[test]
    fn diameter_grid_excludes_origin() {
        let grid = diameter_grid(&[Space::Circle, Space::interval(1.0).unwrap()], 6);
        assert!(grid
            .iter()
            .all(|d| d.len() == 2 && d.iter().any(|&x| x > 0.0)));
        let axis = Space::Circle.diameter_samples(6).len() + 1;
        assert_eq!(
            grid.len(),
            axis * (Space::interval(1.0).unwrap().diameter_samples(6).len() + 1) - 1
        );
    }
}
