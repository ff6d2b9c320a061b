//! Alternating-optimization capacity solvers.
//!
//! All three α-capacity algorithms share one loop shape: compute `F^(0)` from
//! the initial point, then repeat a block update, increment `k`, evaluate
//! `F^(k)`, and stop the first time `|F^(k) − F^(k−1)| < ε`. The reported
//! iteration count `N` is that `k`.

pub mod arimoto;
pub mod csiszar;
pub mod exponent;
pub mod jo;
pub mod shannon;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::error::Error;
use crate::measures::Alpha;
use crate::prob::{Channel, Distribution, JointDistribution};
use crate::scalar::Real;

pub use arimoto::arimoto_capacity;
pub use csiszar::{csiszar_capacity, update_p, update_qt, update_r};
pub use exponent::{correct_decoding_exponent, min_e0, rho_sweep, ExponentResult};
pub use jo::jo_capacity;
pub use shannon::shannon_capacity;

/// Default stopping tolerance.
pub const DEFAULT_EPSILON: f64 = 1e-9;
/// Default iteration guard.
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig<T> {
    /// Stop once `|F^(k) − F^(k−1)| < epsilon` (nats).
    pub epsilon: T,
    pub max_iter: usize,
    pub alpha: Alpha<T>,
}

impl<T: Real> SolverConfig<T> {
    pub fn new(alpha: Alpha<T>) -> Self {
        Self {
            epsilon: T::lit(DEFAULT_EPSILON),
            max_iter: DEFAULT_MAX_ITER,
            alpha,
        }
    }

    pub fn with_epsilon(mut self, epsilon: T) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn with_alpha(mut self, alpha: Alpha<T>) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.epsilon > T::zero()) || !self.epsilon.is_finite() {
            return Err(Error::InvalidParameter("epsilon must be positive".into()));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidParameter(
                "max_iter must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Termination {
    Converged,
    MaxIterations,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Converged => "converged",
            Termination::MaxIterations => "max_iterations",
        }
    }
}

/// Objective values `F^(0), F^(1), …` of one run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceTrace<T> {
    values: Vec<T>,
}

impl<T: Real> ConvergenceTrace<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(k, F^(k))` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, T)> + '_ {
        self.values.iter().copied().enumerate()
    }

    pub fn last(&self) -> Option<T> {
        self.values.last().copied()
    }

    /// Largest single-step decrease `F^(k−1) − F^(k)`, ignoring steps out of
    /// `-inf`. Zero for a non-decreasing trace.
    pub fn max_decrease(&self) -> T {
        self.values
            .windows(2)
            .filter(|w| w[0].is_finite())
            .map(|w| w[0] - w[1])
            .fold(T::zero(), T::max)
    }

    pub fn is_non_decreasing(&self, slack: T) -> bool {
        self.max_decrease() <= slack
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverResult<T> {
    /// `F^(N)` in nats.
    pub value: T,
    /// `N`.
    pub iterations: usize,
    pub trace: ConvergenceTrace<T>,
    pub termination: Termination,
    /// Capacity-achieving input estimate, where the algorithm maintains one.
    pub final_input: Option<Distribution<T>>,
}

#[derive(Debug, Error)]
pub enum SolverError<T: fmt::Debug> {
    #[error("no convergence within {limit} iterations")]
    MaxIterationsExceeded {
        limit: usize,
        partial: Box<SolverResult<T>>,
    },
    #[error(transparent)]
    Input(#[from] Error),
}

impl<T: fmt::Debug> SolverError<T> {
    /// The partial result of a run that hit the iteration guard.
    pub fn partial(&self) -> Option<&SolverResult<T>> {
        match self {
            SolverError::MaxIterationsExceeded { partial, .. } => Some(partial),
            SolverError::Input(_) => None,
        }
    }
}

/// Initial point of a solver, expressed as a joint distribution on `X × Y`.
///
/// The Arimoto solver reads only the `X` marginal, Jitsumatsu–Oohama uses the
/// joint itself and the Augustin–Csiszár solver splits it into `p_X` and
/// `q̃_{Y|X}`.
#[derive(Debug, Clone, PartialEq)]
pub enum InitSpec<T> {
    /// `u_X`; where a joint is needed, paired with uniform rows.
    UniformX,
    /// `u_{X,Y}`.
    UniformXY,
    /// `u_X × p_{Y|X}`.
    ProductUniformXChannel,
    /// User-supplied joint. Must have positive mass wherever the channel does.
    Custom(JointDistribution<T>),
}

impl<T: Real> InitSpec<T> {
    pub fn name(&self) -> &'static str {
        match self {
            InitSpec::UniformX => "uniform-x",
            InitSpec::UniformXY => "uniform-xy",
            InitSpec::ProductUniformXChannel => "product",
            InitSpec::Custom(_) => "custom",
        }
    }

    /// Materializes the initial joint for channel `w`.
    pub fn joint(&self, w: &Channel<T>) -> Result<JointDistribution<T>, Error> {
        let (n_x, n_y) = w.dims();
        match self {
            InitSpec::UniformX | InitSpec::UniformXY => Ok(JointDistribution::uniform(n_x, n_y)),
            InitSpec::ProductUniformXChannel => {
                JointDistribution::product(&Distribution::uniform(n_x), w)
            }
            InitSpec::Custom(j) => {
                if j.dims() != w.dims() {
                    return Err(Error::DimensionMismatch {
                        expected: w.dims(),
                        found: j.dims(),
                    });
                }
                // Multiplicative updates never revive a zero coordinate.
                for x in 0..n_x {
                    for y in 0..n_y {
                        if w.get(x, y) > T::zero() && !(j.get(x, y) > T::zero()) {
                            return Err(Error::ZeroSupportInit { x, y });
                        }
                    }
                }
                Ok(j.clone())
            }
        }
    }

    /// Initial input distribution.
    pub fn input(&self, w: &Channel<T>) -> Result<Distribution<T>, Error> {
        match self {
            InitSpec::Custom(_) => Ok(self.joint(w)?.marginal_x()),
            _ => Ok(Distribution::uniform(w.inputs())),
        }
    }
}

/// The three α-capacity algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Arimoto,
    JitsumatsuOohama,
    Csiszar,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [
        Algorithm::Arimoto,
        Algorithm::JitsumatsuOohama,
        Algorithm::Csiszar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Arimoto => "arimoto",
            Algorithm::JitsumatsuOohama => "jo",
            Algorithm::Csiszar => "csiszar",
        }
    }

    /// Whether the algorithm accepts α ∈ (0, 1).
    pub fn supports_alpha_below_one(self) -> bool {
        matches!(self, Algorithm::Arimoto)
    }

    /// Initialization used when none is requested.
    pub fn default_init<T: Real>(self) -> InitSpec<T> {
        match self {
            Algorithm::Arimoto => InitSpec::UniformX,
            Algorithm::JitsumatsuOohama | Algorithm::Csiszar => InitSpec::ProductUniformXChannel,
        }
    }

    pub fn solve<T: Real>(
        self,
        w: &Channel<T>,
        cfg: &SolverConfig<T>,
        init: &InitSpec<T>,
    ) -> Result<SolverResult<T>, SolverError<T>> {
        match self {
            Algorithm::Arimoto => arimoto_capacity(w, cfg, init),
            Algorithm::JitsumatsuOohama => jo_capacity(w, cfg, init),
            Algorithm::Csiszar => csiszar_capacity(w, cfg, init),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "arimoto" => Ok(Algorithm::Arimoto),
            "jo" | "jitsumatsu-oohama" => Ok(Algorithm::JitsumatsuOohama),
            "csiszar" | "augustin-csiszar" => Ok(Algorithm::Csiszar),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm `{other}`"
            ))),
        }
    }
}

/// Runs the shared repeat/until loop. `step` performs one block update and
/// returns `F^(k)` together with the current input estimate.
pub(crate) fn run_ascent<T, S>(
    cfg: &SolverConfig<T>,
    initial: T,
    mut step: S,
) -> Result<SolverResult<T>, SolverError<T>>
where
    T: Real,
    S: FnMut() -> Result<(T, Option<Distribution<T>>), Error>,
{
    cfg.validate()?;
    let mut values = Vec::with_capacity(64);
    values.push(initial);
    let mut input = None;
    let mut k = 0usize;
    loop {
        if k == cfg.max_iter {
            let value = *values.last().expect("trace holds F^(0)");
            let partial = SolverResult {
                value,
                iterations: k,
                trace: ConvergenceTrace { values },
                termination: Termination::MaxIterations,
                final_input: input,
            };
            return Err(SolverError::MaxIterationsExceeded {
                limit: cfg.max_iter,
                partial: Box::new(partial),
            });
        }
        let (f, p) = step()?;
        input = p;
        k += 1;
        let prev = values[k - 1];
        values.push(f);
        if (f - prev).abs() < cfg.epsilon {
            return Ok(SolverResult {
                value: f,
                iterations: k,
                trace: ConvergenceTrace { values },
                termination: Termination::Converged,
                final_input: input,
            });
        }
    }
}
