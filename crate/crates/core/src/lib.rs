//! Exact solutions of `u_t = (D(u) u_x)_x + R(u)` with a diffusivity that is
//! negative on an interval, made single valued by shocks.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases below
//! fix the common double-precision types.

pub mod error;
pub mod model;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod phase;
pub mod poly;
pub mod quadrature;
pub mod roots;
pub mod scalar;
pub mod shock;
pub mod solution;
pub mod stability;

pub use error::{Error, Result};
pub use model::{
    validate_params, DiffusivityKind, DiffusivityModel, FeasibilityReport, ReactionDiffusion,
    SolutionParams,
};
pub use phase::FrontVariant;
pub use scalar::Scalar;
pub use shock::{ShockPair, ShockRule};
pub use solution::{Branch, Family, MultiValuedProfile};
pub use stability::{Classification, ConstantState};

pub type Model = DiffusivityModel<f64>;
pub type Params = SolutionParams<f64>;
pub type System = ReactionDiffusion<f64>;
pub type Pair = ShockPair<f64>;
pub type Profile = MultiValuedProfile<f64>;

pub type Model32 = DiffusivityModel<f32>;
pub type Params32 = SolutionParams<f32>;
pub type System32 = ReactionDiffusion<f32>;
