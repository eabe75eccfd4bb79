//! Concrete metric spaces, product points and deterministic sampling.
//!
//! Sampling uses ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`), so a
//! seed reproduces the same configuration on every platform.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Half-width of the cube `[-L, L]^n` Euclidean components are drawn from.
pub const EUCLIDEAN_SAMPLING_HALF_WIDTH: f64 = 5.0;
/// Sphere points must have unit norm within this tolerance.
pub const UNIT_NORM_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_MIN_SEPARATION: f64 = 1e-6;
/// Rejection attempts allowed per requested point.
pub const REJECTION_BUDGET_PER_POINT: usize = 10_000;

/// A built-in metric space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpaceSpec", into = "SpaceSpec")]
pub enum Space {
    /// `R^n` with the Euclidean norm.
    Euclidean { dim: usize },
    /// Unit sphere `S^d ⊂ R^{d+1}` with geodesic distance.
    Sphere { dim: usize },
    /// `[0, L]` with `|x - y|`.
    Interval { length: f64 },
    /// Unit circle with arc-length distance, points stored as angles.
    Circle,
    /// Finite label set with the discrete metric.
    Discrete { labels: Vec<String> },
}

/// A point of one [`Space`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Point {
    /// Euclidean coordinates, or a unit vector for spheres.
    Vector(Vec<f64>),
    Scalar(f64),
    Angle(f64),
    Label(usize),
}

impl Space {
    pub fn euclidean(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::parameter("Euclidean dimension must be at least 1"));
        }
        Ok(Space::Euclidean { dim })
    }

    pub fn sphere(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::parameter("sphere dimension must be at least 1"));
        }
        Ok(Space::Sphere { dim })
    }

    pub fn interval(length: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::parameter(format!(
                "interval length must be positive, got {length}"
            )));
        }
        Ok(Space::Interval { length })
    }

    pub fn discrete(labels: impl IntoIterator<Item = impl Into<String>>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::parameter("discrete space needs at least one label"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::parameter(format!("duplicate label {l:?}")));
            }
        }
        Ok(Space::Discrete { labels })
    }

    /// All built-ins satisfy the metric axioms.
    pub fn is_metric(&self) -> bool {
        true
    }

    /// At least two points.
    pub fn is_nontrivial(&self) -> bool {
        match self {
            Space::Discrete { labels } => labels.len() >= 2,
            _ => true,
        }
    }

    /// Supremum of the diameter set, `None` when unbounded.
    pub fn diameter_bound(&self) -> Option<f64> {
        match self {
            Space::Euclidean { .. } => None,
            Space::Sphere { .. } | Space::Circle => Some(PI),
            Space::Interval { length } => Some(*length),
            Space::Discrete { labels } => Some(if labels.len() >= 2 { 1.0 } else { 0.0 }),
        }
    }

    pub fn validate(&self, point: &Point) -> Result<()> {
        let ok = match (self, point) {
            (Space::Euclidean { dim }, Point::Vector(x)) => {
                x.len() == *dim && x.iter().all(|v| v.is_finite())
            }
            (Space::Sphere { dim }, Point::Vector(x)) => {
                x.len() == dim + 1 && (norm(x) - 1.0).abs() <= UNIT_NORM_TOLERANCE
            }
            (Space::Interval { length }, Point::Scalar(x)) => (0.0..=*length).contains(x),
            (Space::Circle, Point::Angle(a)) => a.is_finite(),
            (Space::Discrete { labels }, Point::Label(i)) => *i < labels.len(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::argument(format!(
                "{point:?} is not a point of {self}"
            )))
        }
    }

    /// The metric. Sphere distances use `2·atan2(|x-y|, |x+y|)`, which equals
    /// `arccos(x·y)` but stays accurate near 0 and π and is exactly zero on
    /// the diagonal.
    pub fn distance(&self, x: &Point, y: &Point) -> Result<f64> {
        match (self, x, y) {
            (Space::Euclidean { dim }, Point::Vector(a), Point::Vector(b))
                if a.len() == *dim && b.len() == *dim =>
            {
                Ok(a.iter()
                    .zip(b)
                    .map(|(p, q)| (p - q) * (p - q))
                    .sum::<f64>()
                    .sqrt())
            }
            (Space::Sphere { dim }, Point::Vector(a), Point::Vector(b))
                if a.len() == dim + 1 && b.len() == dim + 1 =>
            {
                let (mut diff, mut sum) = (0.0, 0.0);
                for (p, q) in a.iter().zip(b) {
                    diff += (p - q) * (p - q);
                    sum += (p + q) * (p + q);
                }
                Ok(2.0 * diff.sqrt().atan2(sum.sqrt()))
            }
            (Space::Interval { .. }, Point::Scalar(a), Point::Scalar(b)) => Ok((a - b).abs()),
            (Space::Circle, Point::Angle(a), Point::Angle(b)) => {
                let arc = (a - b).abs().rem_euclid(TAU);
                Ok(arc.min(TAU - arc))
            }
            (Space::Discrete { labels }, Point::Label(a), Point::Label(b))
                if *a < labels.len() && *b < labels.len() =>
            {
                Ok(if a == b { 0.0 } else { 1.0 })
            }
            _ => Err(Error::argument(format!(
                "points {x:?} and {y:?} do not belong to {self}"
            ))),
        }
    }

    pub fn sample_point<R: Rng + ?Sized>(&self, rng: &mut R) -> Point {
        match self {
            Space::Euclidean { dim } => Point::Vector(
                (0..*dim)
                    .map(|_| {
                        rng.random_range(
                            -EUCLIDEAN_SAMPLING_HALF_WIDTH..=EUCLIDEAN_SAMPLING_HALF_WIDTH,
                        )
                    })
                    .collect(),
            ),
            Space::Sphere { dim } => loop {
                let v: Vec<f64> = (0..=*dim).map(|_| rng.sample(StandardNormal)).collect();
                let n = norm(&v);
                if n > 1e-8 {
                    break Point::Vector(v.into_iter().map(|c| c / n).collect());
                }
            },
            Space::Interval { length } => Point::Scalar(rng.random_range(0.0..=*length)),
            Space::Circle => Point::Angle(rng.random_range(0.0..TAU)),
            Space::Discrete { labels } => Point::Label(rng.random_range(0..labels.len())),
        }
    }

    /// Two points at distance `d` from each other; the first is a fixed base point.
    pub fn point_pair_at_distance(&self, d: f64) -> Result<(Point, Point)> {
        let out_of_range = || Error::argument(format!("distance {d} is not realized in {self}"));
        if !(d.is_finite() && d >= 0.0) {
            return Err(out_of_range());
        }
        match self {
            Space::Euclidean { dim } => {
                let mut y = vec![0.0; *dim];
                y[0] = d;
                Ok((Point::Vector(vec![0.0; *dim]), Point::Vector(y)))
            }
            Space::Sphere { dim } => {
                if d > PI {
                    return Err(out_of_range());
                }
                let mut x = vec![0.0; dim + 1];
                x[0] = 1.0;
                let mut y = vec![0.0; dim + 1];
                y[0] = d.cos();
                y[1] = d.sin();
                Ok((Point::Vector(x), Point::Vector(y)))
            }
            Space::Interval { length } => {
                if d > *length {
                    return Err(out_of_range());
                }
                Ok((Point::Scalar(0.0), Point::Scalar(d)))
            }
            Space::Circle => {
                if d > PI {
                    return Err(out_of_range());
                }
                Ok((Point::Angle(0.0), Point::Angle(d)))
            }
            Space::Discrete { labels } => match d {
                0.0 => Ok((Point::Label(0), Point::Label(0))),
                1.0 if labels.len() >= 2 => Ok((Point::Label(0), Point::Label(1))),
                _ => Err(out_of_range()),
            },
        }
    }

    pub fn base_point(&self) -> Point {
        self.point_pair_at_distance(0.0)
            .expect("zero distance is always realized")
            .0
    }

    /// A sorted sample of the nonzero diameter set: geometric from
    /// `1e-6·B` to `B` plus an even grid on `(0, B]`, where `B` is the
    /// diameter bound (`20` for Euclidean spaces, with a geometric extension
    /// up to `1e4`).
    pub fn diameter_samples(&self, count: usize) -> Vec<f64> {
        let bound = match self {
            Space::Discrete { labels } => {
                return if labels.len() >= 2 {
                    vec![1.0]
                } else {
                    Vec::new()
                };
            }
            Space::Euclidean { .. } => 20.0,
            other => other.diameter_bound().unwrap_or(1.0),
        };
        let half = (count / 2).max(2);
        let mut samples: Vec<f64> = (0..half)
            .map(|i| bound * 10f64.powf(-6.0 + 6.0 * i as f64 / (half - 1) as f64))
            .chain((1..=half).map(|i| bound * i as f64 / half as f64))
            .collect();
        if matches!(self, Space::Euclidean { .. }) {
            samples.extend([50.0, 100.0, 1e3, 1e4]);
        }
        samples.sort_by(f64::total_cmp);
        samples.dedup();
        samples
    }

    /// Column names used when a point is flattened for CSV export.
    pub fn coordinate_names(&self, prefix: &str) -> Vec<String> {
        match self {
            Space::Euclidean { dim } => (0..*dim).map(|k| format!("{prefix}_x{k}")).collect(),
            Space::Sphere { dim } => (0..=*dim).map(|k| format!("{prefix}_x{k}")).collect(),
            Space::Interval { .. } => vec![format!("{prefix}_t")],
            Space::Circle => vec![format!("{prefix}_angle")],
            Space::Discrete { .. } => vec![format!("{prefix}_label")],
        }
    }

    pub fn flatten(&self, point: &Point) -> Vec<String> {
        match (self, point) {
            (_, Point::Vector(x)) => x.iter().map(|v| format!("{v:e}")).collect(),
            (_, Point::Scalar(v)) | (_, Point::Angle(v)) => vec![format!("{v:e}")],
            (Space::Discrete { labels }, Point::Label(i)) => {
                vec![labels.get(*i).cloned().unwrap_or_else(|| i.to_string())]
            }
            (_, Point::Label(i)) => vec![i.to_string()],
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Euclidean { dim } => write!(f, "euclidean({dim})"),
            Space::Sphere { dim } => write!(f, "sphere({dim})"),
            Space::Interval { length } => write!(f, "interval({length})"),
            Space::Circle => write!(f, "circle"),
            Space::Discrete { labels } => write!(f, "discrete({})", labels.len()),
        }
    }
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// JSON form `{"kind": ..., "param": ...}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub param: Value,
}

impl TryFrom<SpaceSpec> for Space {
    type Error = Error;

    fn try_from(spec: SpaceSpec) -> Result<Self> {
        let dim = |p: &Value| {
            p.as_u64().map(|d| d as usize).ok_or_else(|| {
                Error::Config(format!("{} needs an integer dimension param", spec.kind))
            })
        };
        match spec.kind.as_str() {
            "euclidean" => Space::euclidean(dim(&spec.param)?),
            "sphere" => Space::sphere(dim(&spec.param)?),
            "interval" => {
                let length = spec
                    .param
                    .as_f64()
                    .ok_or_else(|| Error::Config("interval needs a numeric length param".into()))?;
                Space::interval(length)
            }
            "circle" => Ok(Space::Circle),
            "discrete" => match &spec.param {
                Value::Array(items) => Space::discrete(items.iter().map(|v| match v {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })),
                Value::Number(n) => {
                    let count = n.as_u64().ok_or_else(|| {
                        Error::Config("discrete label count must be an integer".into())
                    })?;
                    Space::discrete((0..count).map(|i| i.to_string()))
                }
                _ => Err(Error::Config(
                    "discrete needs a label list or count param".into(),
                )),
            },
            other => Err(Error::Config(format!("unknown space kind {other:?}"))),
        }
    }
}

impl From<Space> for SpaceSpec {
    fn from(space: Space) -> Self {
        let (kind, param) = match space {
            Space::Euclidean { dim } => ("euclidean", Value::from(dim)),
            Space::Sphere { dim } => ("sphere", Value::from(dim)),
            Space::Interval { length } => ("interval", Value::from(length)),
            Space::Circle => ("circle", Value::Null),
            Space::Discrete { labels } => ("discrete", Value::from(labels)),
        };
        SpaceSpec {
            kind: kind.to_string(),
            param,
        }
    }
}

/// An ordered, heterogeneous product of spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProductSpace {
    spaces: Vec<Space>,
}

/// A point of a [`ProductSpace`], one component per factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProductPoint {
    pub components: Vec<Point>,
}

impl ProductSpace {
    pub fn new(spaces: Vec<Space>) -> Result<Self> {
        if spaces.is_empty() {
            return Err(Error::parameter("a product needs at least one factor"));
        }
        Ok(Self { spaces })
    }

    pub fn factors(&self) -> &[Space] {
        &self.spaces
    }

    pub fn arity(&self) -> usize {
        self.spaces.len()
    }

    pub fn validate(&self, point: &ProductPoint) -> Result<()> {
        if point.components.len() != self.spaces.len() {
            return Err(Error::argument(format!(
                "point has {} components, product has {} factors",
                point.components.len(),
                self.spaces.len()
            )));
        }
        self.spaces
            .iter()
            .zip(&point.components)
            .try_for_each(|(s, p)| s.validate(p))
    }

    /// Component distances `(ρ(x, x'), σ(y, y'), …)`.
    pub fn distances(&self, x: &ProductPoint, y: &ProductPoint) -> Result<Vec<f64>> {
        if x.components.len() != self.spaces.len() || y.components.len() != self.spaces.len() {
            return Err(Error::argument("point arity does not match the product"));
        }
        self.spaces
            .iter()
            .zip(x.components.iter().zip(&y.components))
            .map(|(s, (a, b))| s.distance(a, b))
            .collect()
    }

    pub fn base_point(&self) -> ProductPoint {
        ProductPoint {
            components: self.spaces.iter().map(Space::base_point).collect(),
        }
    }

    pub fn coordinate_names(&self) -> Vec<String> {
        self.spaces
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.coordinate_names(&format!("s{i}")))
            .collect()
    }

    pub fn flatten(&self, point: &ProductPoint) -> Vec<String> {
        self.spaces
            .iter()
            .zip(&point.components)
            .flat_map(|(s, p)| s.flatten(p))
            .collect()
    }
}

impl fmt::Display for ProductSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.spaces.iter().map(Space::to_string).collect();
        write!(f, "{}", names.join(" x "))
    }
}

/// `n` pairwise distinct points of the product: every accepted pair differs
/// by more than `min_sep` in at least one component. Deterministic in `seed`.
pub fn sample_distinct(
    product: &ProductSpace,
    n: usize,
    seed: u64,
    min_sep: f64,
) -> Result<Vec<ProductPoint>> {
    if n == 0 {
        return Err(Error::argument("n must be at least 1"));
    }
    if !(min_sep.is_finite() && min_sep >= 0.0) {
        return Err(Error::argument(format!(
            "min_sep must be nonnegative, got {min_sep}"
        )));
    }
    let exhausted = |reason: String| Error::Sampling {
        space: product.to_string(),
        reason,
    };

    if let [Space::Discrete { labels }] = product.factors() {
        if n > labels.len() || min_sep >= 1.0 {
            return Err(exhausted(format!(
                "cannot draw {n} distinct labels from {} with min_sep {min_sep}",
                labels.len()
            )));
        }
        return Ok((0..n)
            .map(|i| ProductPoint {
                components: vec![Point::Label(i)],
            })
            .collect());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut accepted: Vec<ProductPoint> = Vec::with_capacity(n);
    let budget = REJECTION_BUDGET_PER_POINT * n;
    let mut attempts = 0;
    while accepted.len() < n {
        if attempts == budget {
            return Err(exhausted(format!(
                "rejection budget of {budget} draws exhausted after {} points",
                accepted.len()
            )));
        }
        attempts += 1;
        let candidate = ProductPoint {
            components: product
                .factors()
                .iter()
                .map(|s| s.sample_point(&mut rng))
                .collect(),
        };
        let separated = accepted.iter().all(|q| {
            product
                .distances(&candidate, q)
                .map(|d| d.iter().any(|&c| c > min_sep))
                .unwrap_or(false)
        });
        if separated {
            accepted.push(candidate);
        }
    }
    Ok(accepted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn distance_examples() {
        let e2 = Space::euclidean(2).unwrap();
        let d = e2
            .distance(
                &Point::Vector(vec![0.0, 0.0]),
                &Point::Vector(vec![3.0, 4.0]),
            )
            .unwrap();
        assert_eq!(d, 5.0);

        let s2 = Space::sphere(2).unwrap();
        let d = s2
            .distance(
                &Point::Vector(vec![0.0, 0.0, 1.0]),
                &Point::Vector(vec![0.0, 0.0, -1.0]),
            )
            .unwrap();
        assert_eq!(d, PI);

        let d = Space::Circle
            .distance(&Point::Angle(0.0), &Point::Angle(3.0 * FRAC_PI_2))
            .unwrap();
        assert!((d - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn mismatched_points_are_rejected() {
        let e2 = Space::euclidean(2).unwrap();
        assert!(e2
            .distance(&Point::Scalar(0.0), &Point::Scalar(1.0))
            .is_err());
        assert!(e2
            .distance(&Point::Vector(vec![0.0]), &Point::Vector(vec![1.0, 0.0]))
            .is_err());
        assert!(Space::sphere(2)
            .unwrap()
            .validate(&Point::Vector(vec![1.0, 1.0, 0.0]))
            .is_err());
        assert!(Space::interval(1.0)
            .unwrap()
            .validate(&Point::Scalar(1.5))
            .is_err());
    }

    #[test]
    fn discrete_sampling_is_exhaustive_in_order() {
        let space = ProductSpace::new(vec![Space::discrete(["a", "b", "c"]).unwrap()]).unwrap();
        for seed in [0, 1, 99] {
            let pts = sample_distinct(&space, 3, seed, DEFAULT_MIN_SEPARATION).unwrap();
            let labels: Vec<Point> = pts.into_iter().map(|p| p.components[0].clone()).collect();
            assert_eq!(
                labels,
                vec![Point::Label(0), Point::Label(1), Point::Label(2)]
            );
        }
        assert!(matches!(
            sample_distinct(&space, 4, 0, 0.0),
            Err(Error::Sampling { .. })
        ));
    }

    #[test]
    fn sphere_pair_is_separated() {
        let space = ProductSpace::new(vec![Space::sphere(2).unwrap()]).unwrap();
        let pts = sample_distinct(&space, 2, 5, 0.1).unwrap();
        for p in &pts {
            space.validate(p).unwrap();
        }
        assert!(space.distances(&pts[0], &pts[1]).unwrap()[0] > 0.1);
    }

    #[test]
    fn product_sample_is_pairwise_distinct() {
        let space = ProductSpace::new(vec![
            Space::sphere(2).unwrap(),
            Space::interval(FRAC_PI_2).unwrap(),
            Space::euclidean(1).unwrap(),
        ])
        .unwrap();
        let pts = sample_distinct(&space, 30, 42, DEFAULT_MIN_SEPARATION).unwrap();
        assert_eq!(pts.len(), 30);
        for i in 0..pts.len() {
            space.validate(&pts[i]).unwrap();
            for j in 0..i {
                let d = space.distances(&pts[i], &pts[j]).unwrap();
                assert!(d.iter().any(|&c| c > DEFAULT_MIN_SEPARATION), "{i} {j}");
            }
        }
        assert_eq!(
            pts,
            sample_distinct(&space, 30, 42, DEFAULT_MIN_SEPARATION).unwrap()
        );
        assert_ne!(
            pts,
            sample_distinct(&space, 30, 43, DEFAULT_MIN_SEPARATION).unwrap()
        );
    }

    #[test]
    fn impossible_separation_exhausts_budget() {
        let space = ProductSpace::new(vec![Space::interval(1.0).unwrap()]).unwrap();
        let err = sample_distinct(&space, 5, 0, 0.5).unwrap_err();
        assert!(err.to_string().contains("interval(1)"), "{err}");
    }

    #[test]
    fn point_pairs_realize_the_distance() {
        let spaces = [
            Space::euclidean(3).unwrap(),
            Space::sphere(2).unwrap(),
            Space::interval(2.0).unwrap(),
            Space::Circle,
        ];
        for space in &spaces {
            for d in [0.0, 0.3, 1.7] {
                let (x, y) = space.point_pair_at_distance(d).unwrap();
                assert!(
                    (space.distance(&x, &y).unwrap() - d).abs() < 1e-15,
                    "{space} {d}"
                );
            }
        }
        assert!(Space::Circle.point_pair_at_distance(4.0).is_err());
        let disc = Space::discrete(["x", "y"]).unwrap();
        assert!(disc.point_pair_at_distance(0.5).is_err());
        assert_eq!(disc.point_pair_at_distance(1.0).unwrap().1, Point::Label(1));
    }

    #[test]
    fn json_round_trip() {
        let json = r#"[{"kind":"sphere","param":2},{"kind":"interval","param":1.5},
                      {"kind":"circle"},{"kind":"discrete","param":["a","b"]},
                      {"kind":"euclidean","param":3}]"#;
        let product: ProductSpace = serde_json::from_str(json).unwrap();
        assert_eq!(product.arity(), 5);
        let back: ProductSpace =
            serde_json::from_str(&serde_json::to_string(&product).unwrap()).unwrap();
        assert_eq!(back, product);
        assert!(serde_json::from_str::<Space>(r#"{"kind":"torus"}"#).is_err());
        assert!(serde_json::from_str::<Space>(r#"{"kind":"sphere","param":0}"#).is_err());
    }

    #[test]
    fn csv_columns_match_flattened_points() {
        let space = ProductSpace::new(vec![
            Space::sphere(2).unwrap(),
            Space::interval(1.0).unwrap(),
            Space::discrete(["a", "b"]).unwrap(),
        ])
        .unwrap();
        let names = space.coordinate_names();
        assert_eq!(names, ["s0_x0", "s0_x1", "s0_x2", "s1_t", "s2_label"]);
        let p = sample_distinct(&space, 1, 3, 0.0).unwrap().remove(0);
        assert_eq!(space.flatten(&p).len(), names.len());
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn all_spaces() -> Vec<Space> {
        vec![
            Space::euclidean(1).unwrap(),
            Space::euclidean(3).unwrap(),
            Space::sphere(1).unwrap(),
            Space::sphere(2).unwrap(),
            Space::sphere(5).unwrap(),
            Space::interval(std::f64::consts::FRAC_PI_2).unwrap(),
            Space::Circle,
            Space::discrete(["a", "b", "c"]).unwrap(),
        ]
    }

    #[test]
    fn metric_axioms_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for space in all_spaces() {
            let bound = space.diameter_bound().unwrap_or(f64::INFINITY);
            for _ in 0..1000 {
                let x = space.sample_point(&mut rng);
                let y = space.sample_point(&mut rng);
                let z = space.sample_point(&mut rng);
                space.validate(&x).unwrap();
                let dxy = space.distance(&x, &y).unwrap();
                assert_eq!(dxy, space.distance(&y, &x).unwrap(), "{space}");
                assert_eq!(space.distance(&x, &x).unwrap(), 0.0, "{space}");
                if dxy == 0.0 {
                    assert_eq!(x, y, "{space}");
                }
                let dyz = space.distance(&y, &z).unwrap();
                let dxz = space.distance(&x, &z).unwrap();
                assert!(dxz <= dxy + dyz + 1e-12, "{space}: triangle");
                assert!(dxy <= bound + 1e-12, "{space}: diameter");
            }
        }
    }

    proptest! {
        #[test]
        fn sampling_is_deterministic(seed in any::<u64>(), n in 1usize..12) {
            let space = ProductSpace::new(vec![Space::Circle, Space::euclidean(2).unwrap()]).unwrap();
            let a = sample_distinct(&space, n, seed, 1e-3).unwrap();
            let b = sample_distinct(&space, n, seed, 1e-3).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
