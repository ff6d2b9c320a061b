//! Closed-form information measures and the three order-α mutual informations.
//!
//! Every quantity is in nats and evaluated through [`log_sum_exp`] on
//! `α · ln p` terms, so large orders (α ≈ 100) do not overflow.

use crate::error::{Error, Result};
use crate::functionals::f_c_tilde_at_posterior;
use crate::prob::{log_sum_exp, log_sum_exp_iter, Channel, Distribution, ReverseChannel};
use crate::scalar::Real;
use crate::solvers::csiszar::{update_qt, update_r};

/// Default stopping tolerance of the inner loop in [`csiszar_mi`].
pub const CSISZAR_MI_TOL: f64 = 1e-10;
/// Default iteration guard of the inner loop in [`csiszar_mi`].
pub const CSISZAR_MI_MAX_ITER: usize = 1_000_000;

/// Order parameter α of the Rényi family. Always positive, finite and `≠ 1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha<T>(T);

impl<T: Real> Alpha<T> {
    pub fn new(value: T) -> Result<Self> {
        let reason = if !value.is_finite() {
            Some("must be finite")
        } else if value <= T::zero() {
            Some("must be positive")
        } else if value == T::one() {
            Some("alpha = 1 is the Shannon case; use the Shannon capacity solver")
        } else {
            None
        };
        match reason {
            Some(reason) => Err(Error::InvalidAlpha {
                value: value.as_f64(),
                reason,
            }),
            None => Ok(Self(value)),
        }
    }

    /// Like [`Alpha::new`] but restricted to `α > 1`.
    pub fn above_one(value: T) -> Result<Self> {
        Self::new(value)?.require_above_one()
    }

    pub fn require_above_one(self) -> Result<Self> {
        if self.0 > T::one() {
            Ok(self)
        } else {
            Err(Error::InvalidAlpha {
                value: self.0.as_f64(),
                reason: "this computation requires alpha in (1, inf)",
            })
        }
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    #[inline]
    pub fn is_above_one(self) -> bool {
        self.0 > T::one()
    }

    /// `ρ = 1/α − 1`.
    pub fn to_rho(self) -> Rho<T> {
        Rho(T::one() / self.0 - T::one())
    }

    /// `α / (1 − α)`.
    #[inline]
    pub(crate) fn sibson_factor(self) -> T {
        self.0 / (T::one() - self.0)
    }
}

/// Gallager parameter ρ ∈ (−1, ∞).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rho<T>(T);

impl<T: Real> Rho<T> {
    pub fn new(value: T) -> Result<Self> {
        if !value.is_finite() || value <= -T::one() {
            return Err(Error::InvalidRho {
                value: value.as_f64(),
                reason: "must be finite and greater than -1",
            });
        }
        Ok(Self(value))
    }

    /// Restricts to ρ ∈ (−1, 0), the range that maps onto α ∈ (1, ∞).
    pub fn negative(value: T) -> Result<Self> {
        let rho = Self::new(value)?;
        if value >= T::zero() {
            return Err(Error::InvalidRho {
                value: value.as_f64(),
                reason: "must lie in (-1, 0)",
            });
        }
        Ok(rho)
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    /// `α = 1/(1 + ρ)`; fails at ρ = 0.
    pub fn to_alpha(self) -> Result<Alpha<T>> {
        Alpha::new(T::one() / (T::one() + self.0))
    }
}

fn check_len<T: Real>(p: &Distribution<T>, n: usize) -> Result<()> {
    if p.len() == n {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch {
            left: p.len(),
            right: n,
        })
    }
}

/// Rényi divergence `D_α(p || q)`.
///
/// `+inf` when α > 1 and `p` puts mass where `q` has none.
pub fn renyi_divergence<T: Real>(
    p: &Distribution<T>,
    q: &Distribution<T>,
    alpha: Alpha<T>,
) -> Result<T> {
    check_len(q, p.len())?;
    let a = alpha.value();
    let terms = p
        .probs()
        .iter()
        .zip(q.probs())
        .filter(|(pi, _)| **pi > T::zero())
        .map(move |(&pi, &qi)| a * pi.ln() + (T::one() - a) * qi.ln());
    let lse = log_sum_exp_iter(terms);
    Ok(lse / (a - T::one()))
}

/// Rényi entropy `H_α(p)`.
pub fn renyi_entropy<T: Real>(p: &Distribution<T>, alpha: Alpha<T>) -> T {
    let a = alpha.value();
    let terms = p
        .probs()
        .iter()
        .filter(|v| **v > T::zero())
        .map(move |&v| a * v.ln());
    log_sum_exp_iter(terms) / (T::one() - a)
}

/// Shannon entropy in nats.
pub fn shannon_entropy<T: Real>(p: &Distribution<T>) -> T {
    -p.probs()
        .iter()
        .filter(|v| **v > T::zero())
        .map(|&v| v * v.ln())
        .sum::<T>()
}

/// Arimoto's conditional entropy of order α.
pub fn arimoto_conditional_entropy<T: Real>(
    p: &Distribution<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<T> {
    if p.len() != w.inputs() {
        return Err(Error::DimensionMismatch {
            expected: (p.len(), w.outputs()),
            found: w.dims(),
        });
    }
    let a = alpha.value();
    let inv_a = T::one() / a;
    let per_y: Vec<T> = (0..w.outputs())
        .map(|y| {
            let inner = (0..w.inputs())
                .filter(|&x| p.get(x) > T::zero() && w.get(x, y) > T::zero())
                .map(|x| a * (p.get(x).ln() + w.get(x, y).ln()));
            inv_a * log_sum_exp_iter(inner)
        })
        .collect();
    Ok(alpha.sibson_factor() * log_sum_exp(&per_y))
}

/// Gallager's `E₀(ρ, p) = −ln Σ_y (Σ_x p(x) w(y|x)^{1/(1+ρ)})^{1+ρ}`.
pub fn gallager_e0<T: Real>(rho: Rho<T>, p: &Distribution<T>, w: &Channel<T>) -> Result<T> {
    check_len(p, w.inputs())?;
    let r = rho.value();
    if r == T::zero() {
        // Σ_y Σ_x p(x) w(y|x) = 1 by total probability.
        return Ok(T::zero());
    }
    let one_plus = T::one() + r;
    let s = T::one() / one_plus;
    let per_y: Vec<T> = (0..w.outputs())
        .map(|y| {
            let inner = (0..w.inputs())
                .filter(|&x| p.get(x) > T::zero() && w.get(x, y) > T::zero())
                .map(|x| p.get(x).ln() + s * w.get(x, y).ln());
            one_plus * log_sum_exp_iter(inner)
        })
        .collect();
    Ok(-log_sum_exp(&per_y))
}

/// α-tilted distribution `p(x)^α / Σ p(x)^α`.
pub fn tilt<T: Real>(p: &Distribution<T>, alpha: T) -> Distribution<T> {
    let log_w: Vec<T> = p
        .probs()
        .iter()
        .map(|&v| {
            if v > T::zero() {
                alpha * v.ln()
            } else {
                T::neg_infinity()
            }
        })
        .collect();
    Distribution::from_log_weights(log_w).expect("a distribution has positive mass")
}

/// Tilts every column `r(·|y)`.
pub fn tilt_reverse<T: Real>(r: &ReverseChannel<T>, alpha: T) -> ReverseChannel<T> {
    let (n_x, n_y) = r.dims();
    let mut log_w = Vec::with_capacity(n_x * n_y);
    for x in 0..n_x {
        log_w.extend(r.input_row(x).iter().map(|&v| {
            if v > T::zero() {
                alpha * v.ln()
            } else {
                T::neg_infinity()
            }
        }));
    }
    ReverseChannel::from_log_weights(n_x, n_y, log_w)
}

/// Sibson's α-mutual information, `(α/(1−α)) E₀(1/α − 1, p)`.
pub fn sibson_mi<T: Real>(p: &Distribution<T>, w: &Channel<T>, alpha: Alpha<T>) -> Result<T> {
    Ok(alpha.sibson_factor() * gallager_e0(alpha.to_rho(), p, w)?)
}

/// Arimoto's α-mutual information, Sibson's form at the tilted input.
pub fn arimoto_mi<T: Real>(p: &Distribution<T>, w: &Channel<T>, alpha: Alpha<T>) -> Result<T> {
    sibson_mi(&tilt(p, alpha.value()), w, alpha)
}

/// Arimoto's α-MI as `H_α(X) − H_α^A(X|Y)`; the entropy-difference route.
pub fn arimoto_mi_from_entropies<T: Real>(
    p: &Distribution<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<T> {
    Ok(renyi_entropy(p, alpha) - arimoto_conditional_entropy(p, w, alpha)?)
}

/// Shannon mutual information `I(p, w)` in nats.
pub fn shannon_mi<T: Real>(p: &Distribution<T>, w: &Channel<T>) -> Result<T> {
    let q = w.output_distribution(p)?;
    let mut total = T::zero();
    for (x, row) in w.rows().enumerate() {
        let px = p.get(x);
        if px <= T::zero() {
            continue;
        }
        for (y, &wy) in row.iter().enumerate() {
            if wy > T::zero() {
                total = total + px * wy * (wy / q.get(y)).ln();
            }
        }
    }
    Ok(total)
}

/// Augustin–Csiszár α-mutual information for α > 1, with the default
/// tolerance and iteration guard.
pub fn csiszar_mi<T: Real>(
    p: &Distribution<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
    tol: T,
) -> Result<T> {
    csiszar_mi_with_limit(p, w, alpha, tol, CSISZAR_MI_MAX_ITER)
}

/// Two-block ascent over `(q̃_{Y|X}, r_{X|Y})` with the input `p` held fixed.
///
/// Starts from `q̃ = w`, `r` = posterior of `(p, w)`, then alternates the
/// `q̃` and `r` closed-form maximizers until successive objective values
/// differ by less than `tol`.
pub fn csiszar_mi_with_limit<T: Real>(
    p: &Distribution<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
    tol: T,
    max_iter: usize,
) -> Result<T> {
    let alpha = alpha.require_above_one()?;
    check_len(p, w.inputs())?;
    if !(tol > T::zero()) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    // Inputs without mass contribute nothing; dropping them keeps every
    // q̃-row well-defined.
    let support: Vec<usize> = (0..p.len()).filter(|&x| p.get(x) > T::zero()).collect();
    let (p, w) = if support.len() == p.len() {
        (p.clone(), w.clone())
    } else {
        let sub_p = Distribution::from_weights(support.iter().map(|&x| p.get(x)).collect())?;
        (sub_p, w.select_rows(&support))
    };

    let mut qt = w.clone();
    let mut r = update_r(&p, &qt)?;
    let mut prev = f_c_tilde_at_posterior(&p, &qt, &w, alpha)?;
    for _ in 0..max_iter {
        qt = update_qt(&r, &w, alpha)?;
        r = update_r(&p, &qt)?;
        let f = f_c_tilde_at_posterior(&p, &qt, &w, alpha)?;
        if (f - prev).abs() < tol {
            return Ok(f);
        }
        prev = f;
    }
    Err(Error::MaxIterationsExceeded { limit: max_iter })
}
