//! Gneiting-type positive definite kernels on products of metric spaces,
//! built from generalized Stieltjes and complete Bernstein functions, with
//! numerical certification of (strict) positive definiteness.

pub mod cnd;
pub mod config;
pub mod error;
pub mod fixtures;
pub mod linalg;
pub mod models;
pub mod oracle;
pub mod spaces;
pub mod special;
pub mod suite;
pub mod validation;

pub use cnd::{CndFlags, CndFunction};
pub use error::{Error, Result};
pub use models::{Clause, KernelModel, SpdConditionReport, TwoSpaceGneiting, Variant, Verdict};
pub use spaces::{ProductPoint, ProductSpace, Space};
pub use validation::{GramReport, Mode};
