//! α-capacity of discrete memoryless channels.
//!
//! Three alternating-optimization algorithms compute the order-α capacity for
//! α > 1, all converging to the same value:
//!
//! - [`arimoto_capacity`]: Arimoto's `(p, r)` iteration for the Sibson form
//!   (also valid for α ∈ (0, 1)).
//! - [`jo_capacity`]: the Jitsumatsu–Oohama iteration over a pair of joint
//!   distributions.
//! - [`csiszar_capacity`]: a three-block `(p, q̃, r)` iteration built on a
//!   variational form of the Augustin–Csiszár mutual information.
//!
//! Supporting pieces: closed-form measures ([`measures`]), the variational
//! objectives ([`functionals`]), the Shannon baseline, the correct-decoding
//! exponent sweep and a brute-force grid oracle ([`oracle`]).
//!
//! Everything is generic over the scalar type through [`Real`]; the `*64`
//! and `*32` aliases below fix it. All values are in nats.
//!
//! ```
//! use alphacap::{arimoto_capacity, Alpha, Channel64, InitSpec, SolverConfig};
//!
//! let w = Channel64::identity(3);
//! let cfg = SolverConfig::new(Alpha::new(2.0).unwrap());
//! let res = arimoto_capacity(&w, &cfg, &InitSpec::UniformX).unwrap();
//! assert!((res.value - 3f64.ln()).abs() < 1e-9);
//! ```

// `!(x > 0)` is intentional throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod functionals;
pub mod generate;
pub mod measures;
pub mod oracle;
pub mod prob;
pub mod scalar;
pub mod solvers;

pub use error::{Error, Result};
pub use functionals::{
    f_a1, f_a2, f_c_tilde, f_c_tilde_at_posterior, f_jo, f_jo_tilde, f_s1, f_s2, Objective,
    ObjectiveKind,
};
pub use measures::{
    arimoto_conditional_entropy, arimoto_mi, arimoto_mi_from_entropies, csiszar_mi, gallager_e0,
    renyi_divergence, renyi_entropy, shannon_entropy, shannon_mi, sibson_mi, tilt, tilt_reverse,
    Alpha, Rho,
};
pub use oracle::{grid_capacity, grid_csiszar_mi, GridResult, GridSpec};
pub use prob::{
    conditional_y_given_x, log_sum_exp, marginal_y, validate, Channel, Distribution,
    JointDistribution, ReverseChannel, ValidateOptions,
};
pub use scalar::Real;
pub use solvers::{
    arimoto_capacity, correct_decoding_exponent, csiszar_capacity, jo_capacity, min_e0,
    shannon_capacity, update_p, update_qt, update_r, Algorithm, ConvergenceTrace, ExponentResult,
    InitSpec, SolverConfig, SolverError, SolverResult, Termination,
};

pub type Distribution64 = Distribution<f64>;
pub type Channel64 = Channel<f64>;
pub type JointDistribution64 = JointDistribution<f64>;
pub type ReverseChannel64 = ReverseChannel<f64>;
pub type Alpha64 = Alpha<f64>;
pub type SolverConfig64 = SolverConfig<f64>;
pub type SolverResult64 = SolverResult<f64>;

pub type Distribution32 = Distribution<f32>;
pub type Channel32 = Channel<f32>;
pub type JointDistribution32 = JointDistribution<f32>;
pub type ReverseChannel32 = ReverseChannel<f32>;
pub type Alpha32 = Alpha<f32>;
pub type SolverConfig32 = SolverConfig<f32>;
pub type SolverResult32 = SolverResult<f32>;
