//! Completely monotone, Bernstein, generalized Stieltjes and generalized
//! complete Bernstein functions with finite discrete representing measures.

mod functions;
mod gamma;
mod measure;
mod monotone;
mod quadrature;

pub use functions::{
    BernsteinFunction, CompleteBernsteinFunction, CompletelyMonotoneFunction, ExponentialMixture,
    StieltjesFunction,
};
pub use gamma::gamma;
pub use measure::{Atom, DiscreteMeasure};
pub use monotone::{
    check_complete_monotonicity, linear_grid, MonotonicityReport, OrderCheck,
    CM_RELATIVE_TOLERANCE, MAX_CM_ORDER,
};
pub use quadrature::{
    gamma_integral, gauss_laguerre, gauss_legendre, stieltjes_kernel_identity_check, Rule,
    MIN_LAGUERRE_NODES,
};
