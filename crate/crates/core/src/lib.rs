//! Fejér-type singular integral operators and their convergence rates.
//!
//! The crate implements a family of convolution operators `F_λ f` built from
//! even, normalized kernels (Picard, Gauss-Weierstrass, Poisson, Fejér, and
//! the Riesz family), the derivative-augmented variants `F_{λ,m}`, Riesz
//! summability means of Fourier series, discrete estimators for L^p and
//! generalized Hölder norms, and an experiment harness that sweeps the scale
//! parameter, measures errors in Hölder norms, and fits empirical decay
//! exponents against the theoretical ones.

mod dd;
pub mod error;
pub mod funcspace;
pub mod kernel;
pub mod norms;
pub mod operator;
pub mod quad;
pub mod rates;
pub mod suite;

pub use error::{Error, Result};
pub use funcspace::{AdmissibleP, Domain, TestFunction};
pub use kernel::{
    eval_kernel, kernel_moment, riesz_kernel_eval, verify_kernel_conditions, ConditionReport,
    KernelId, KernelSpec, MomentValue, SamplingSpec,
};
pub use quad::{integrate_interval, integrate_line, QuadConfig, QuadResult, TruncationRule};
