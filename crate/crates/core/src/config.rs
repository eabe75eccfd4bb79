//! JSON specifications for functions, CND trees, models and runs.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::cnd::CndFunction;
use crate::error::{Error, Result};
use crate::models::{Clause, KernelModel, TwoSpaceGneiting, Variant};
use crate::spaces::{ProductPoint, ProductSpace, Space};
use crate::special::{
    BernsteinFunction, CompleteBernsteinFunction, CompletelyMonotoneFunction, DiscreteMeasure,
    ExponentialMixture, StieltjesFunction,
};
use crate::validation::Mode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionClass {
    Stieltjes,
    CompleteBernstein,
    Bernstein,
    /// `Σ c_i e^{-a_i w}`; atoms are `(rate, weight)` pairs.
    ExponentialMixture,
}

/// `{"class": ..., "lambda": ..., "constants": {...}, "atoms": [[s, w], ...]}`.
///
/// Constant keys: `C`, `D` (Stieltjes), `A`, `B` (complete Bernstein) and
/// `a`, `b` (Bernstein). Missing constants are zero.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    pub class: FunctionClass,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub constants: BTreeMap<String, f64>,
    #[serde(default)]
    pub atoms: Vec<(f64, f64)>,
}

impl FunctionSpec {
    fn expect_class(&self, class: FunctionClass) -> Result<()> {
        if self.class != class {
            return Err(Error::Config(format!(
                "expected a {class:?} function, got {:?}",
                self.class
            )));
        }
        Ok(())
    }

    fn constants(&self, allowed: [&str; 2]) -> Result<(f64, f64)> {
        if let Some(key) = self
            .constants
            .keys()
            .find(|k| !allowed.contains(&k.as_str()))
        {
            return Err(Error::Config(format!(
                "unknown constant {key:?} for {:?}; expected {allowed:?}",
                self.class
            )));
        }
        let get = |k: &str| self.constants.get(k).copied().unwrap_or(0.0);
        Ok((get(allowed[0]), get(allowed[1])))
    }

    fn order(&self) -> Result<f64> {
        self.lambda
            .ok_or_else(|| Error::Config(format!("{:?} function needs \"lambda\"", self.class)))
    }

    fn no_order(&self) -> Result<()> {
        match self.lambda {
            Some(_) => Err(Error::Config(format!(
                "{:?} function takes no \"lambda\"",
                self.class
            ))),
            None => Ok(()),
        }
    }

    fn measure(&self) -> Result<DiscreteMeasure> {
        DiscreteMeasure::new(self.atoms.iter().copied())
    }

    pub fn stieltjes(&self) -> Result<StieltjesFunction> {
        self.expect_class(FunctionClass::Stieltjes)?;
        let (c, d) = self.constants(["C", "D"])?;
        StieltjesFunction::new(self.order()?, c, d, self.measure()?)
    }

    pub fn complete_bernstein(&self) -> Result<CompleteBernsteinFunction> {
        self.expect_class(FunctionClass::CompleteBernstein)?;
        let (a, b) = self.constants(["A", "B"])?;
        CompleteBernsteinFunction::new(self.order()?, a, b, self.measure()?)
    }

    pub fn bernstein(&self) -> Result<BernsteinFunction> {
        self.expect_class(FunctionClass::Bernstein)?;
        self.no_order()?;
        let (a, b) = self.constants(["a", "b"])?;
        BernsteinFunction::new(a, b, self.measure()?)
    }

    /// A Stieltjes function or an exponential mixture.
    pub fn completely_monotone(&self) -> Result<CompletelyMonotoneFunction> {
        match self.class {
            FunctionClass::Stieltjes => Ok(self.stieltjes()?.into()),
            FunctionClass::ExponentialMixture => {
                self.no_order()?;
                self.constants(["", ""])?;
                Ok(ExponentialMixture::new(self.atoms.iter().copied())?.into())
            }
            other => Err(Error::Config(format!(
                "{other:?} is not completely monotone"
            ))),
        }
    }
}

/// CND expression tree, tagged by `"op"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum CndSpec {
    Power {
        exponent: f64,
    },
    Linear,
    ThreeMinusCos,
    Sine,
    Constant {
        c: f64,
    },
    /// `c + φ`.
    Shift {
        c: f64,
        of: Box<CndSpec>,
    },
    /// `g(t) + h(u)`: Bernstein composition with the identity.
    Sum {
        g: Box<CndSpec>,
        h: Box<CndSpec>,
    },
    /// `f(g(t) + h(u))`.
    BernsteinCompose {
        f: FunctionSpec,
        g: Box<CndSpec>,
        h: Box<CndSpec>,
    },
    /// `f(‖x‖²/h(u)) + (n/2) ln h(u)` (less its value at the origin).
    EuclideanCross {
        f: FunctionSpec,
        h: Box<CndSpec>,
        n: usize,
    },
    /// `M - F_r(t, u)`.
    BoundedComplement {
        m: f64,
        f: FunctionSpec,
        g: Box<CndSpec>,
        h: Box<CndSpec>,
        r: f64,
    },
}

impl CndSpec {
    pub fn build(&self) -> Result<CndFunction> {
        match self {
            CndSpec::Power { exponent } => CndFunction::power(*exponent),
            CndSpec::Linear => Ok(CndFunction::linear()),
            CndSpec::ThreeMinusCos => Ok(CndFunction::three_minus_cos()),
            CndSpec::Sine => Ok(CndFunction::sine()),
            CndSpec::Constant { c } => CndFunction::constant(*c),
            CndSpec::Shift { c, of } => of.build()?.shift(*c),
            CndSpec::Sum { g, h } => CndFunction::bernstein_compose(
                BernsteinFunction::identity(),
                g.build()?,
                h.build()?,
            ),
            CndSpec::BernsteinCompose { f, g, h } => {
                CndFunction::bernstein_compose(f.bernstein()?, g.build()?, h.build()?)
            }
            CndSpec::EuclideanCross { f, h, n } => {
                CndFunction::euclidean_cross(f.bernstein()?, h.build()?, *n)
            }
            CndSpec::BoundedComplement { m, f, g, h, r } => {
                let model = TwoSpaceGneiting::new(f.stieltjes()?, g.build()?, h.build()?, *r)?;
                CndFunction::bounded_complement(*m, model)
            }
        }
    }
}

/// `{"variant", "f" | "f1"+"f2", "g", "h", "r", "spaces"}`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub variant: Variant,
    #[serde(default)]
    pub f: Option<FunctionSpec>,
    #[serde(default)]
    pub f1: Option<FunctionSpec>,
    #[serde(default)]
    pub f2: Option<FunctionSpec>,
    pub g: CndSpec,
    pub h: CndSpec,
    #[serde(default)]
    pub r: Option<f64>,
    pub spaces: Vec<Space>,
}

fn required<'a, T>(value: &'a Option<T>, key: &str, variant: Variant) -> Result<&'a T> {
    value
        .as_ref()
        .ok_or_else(|| Error::Config(format!("{variant} model needs \"{key}\"")))
}

fn forbidden<T>(value: &Option<T>, key: &str, variant: Variant) -> Result<()> {
    match value {
        Some(_) => Err(Error::Config(format!("{variant} model takes no \"{key}\""))),
        None => Ok(()),
    }
}

impl ModelSpec {
    pub fn build(&self) -> Result<KernelModel> {
        let v = self.variant;
        let spaces = ProductSpace::new(self.spaces.clone())?;
        let (g, h) = (self.g.build()?, self.h.build()?);
        if v == Variant::Product {
            forbidden(&self.f, "f", v)?;
            forbidden(&self.r, "r", v)?;
            let f1 = required(&self.f1, "f1", v)?.completely_monotone()?;
            let f2 = required(&self.f2, "f2", v)?.completely_monotone()?;
            return KernelModel::product(f1, f2, g, h, spaces);
        }
        forbidden(&self.f1, "f1", v)?;
        forbidden(&self.f2, "f2", v)?;
        let f = required(&self.f, "f", v)?;
        let r = *required(&self.r, "r", v)?;
        match v {
            Variant::Fr => {
                KernelModel::two_space(TwoSpaceGneiting::new(f.stieltjes()?, g, h, r)?, spaces)
            }
            Variant::Gr | Variant::Hr => KernelModel::stieltjes(v, f.stieltjes()?, g, h, r, spaces),
            Variant::Ir | Variant::Jr => {
                KernelModel::complete_bernstein(v, f.complete_bernstein()?, g, h, r, spaces)
            }
            Variant::Product => unreachable!("handled above"),
        }
    }
}

/// A complete run description for the command-line tool. Command-line flags
/// override the optional fields.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelSpec,
    /// Evaluation grid, one list of distances per factor.
    #[serde(default)]
    pub grid: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub min_sep: Option<f64>,
    #[serde(default)]
    pub mode: Option<Mode>,
    #[serde(default)]
    pub clause: Option<Clause>,
    /// Points placed first in every sampled configuration.
    #[serde(default)]
    pub embed: Vec<ProductPoint>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
