//! Variational objectives maximized by the alternating solvers.
//!
//! Each functional returns an extended real: `-inf` (or `+inf` for
//! [`f_jo`]) signals a support mismatch an iterate may legitimately hit, and
//! the solvers observe it instead of failing.

use crate::error::{Error, Result};
use crate::measures::{tilt, tilt_reverse, Alpha, Rho};
use crate::prob::{log_sum_exp_iter, Channel, Distribution, JointDistribution, ReverseChannel};
use crate::scalar::Real;

/// Which variational functional an [`Objective`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectiveKind {
    S1,
    S2,
    A1,
    A2,
    JoTilde,
    CTilde,
}

/// A functional together with its order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective<T> {
    kind: ObjectiveKind,
    alpha: Alpha<T>,
}

impl<T: Real> Objective<T> {
    pub fn new(kind: ObjectiveKind, alpha: Alpha<T>) -> Result<Self> {
        if matches!(kind, ObjectiveKind::JoTilde | ObjectiveKind::CTilde) {
            alpha.require_above_one()?;
        }
        Ok(Self { kind, alpha })
    }

    pub fn kind(&self) -> ObjectiveKind {
        self.kind
    }

    pub fn alpha(&self) -> Alpha<T> {
        self.alpha
    }

    /// Evaluates one of the `(p, r)` functionals S1/S2/A1/A2.
    pub fn evaluate_pr(
        &self,
        p: &Distribution<T>,
        r: &ReverseChannel<T>,
        w: &Channel<T>,
    ) -> Result<T> {
        match self.kind {
            ObjectiveKind::S1 => f_s1(p, r, w, self.alpha),
            ObjectiveKind::S2 => f_s2(p, r, w, self.alpha),
            ObjectiveKind::A1 => f_a1(p, r, w, self.alpha),
            ObjectiveKind::A2 => f_a2(p, r, w, self.alpha),
            other => Err(Error::InvalidParameter(format!(
                "{other:?} is not a (p, r) functional"
            ))),
        }
    }
}

fn check_pr<T: Real>(p: &Distribution<T>, r: &ReverseChannel<T>, w: &Channel<T>) -> Result<()> {
    if p.len() != w.inputs() || r.dims() != w.dims() {
        return Err(Error::DimensionMismatch {
            expected: w.dims(),
            found: (p.len(), r.dims().1),
        });
    }
    Ok(())
}

/// `(α/(α−1)) ln Σ_{x,y} p(x)^{1/α} w(y|x) r(x|y)^{1−1/α}`.
///
/// Maximizing over `r` gives Sibson's α-MI; the maximizer is
/// `r(x|y) ∝ p(x) w(y|x)^α`.
pub fn f_s1<T: Real>(
    p: &Distribution<T>,
    r: &ReverseChannel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<T> {
    check_pr(p, r, w)?;
    let a = alpha.value();
    let inv_a = T::one() / a;
    let r_exp = T::one() - inv_a;
    let (n_x, n_y) = w.dims();
    let terms = (0..n_x)
        .filter(|&x| p.get(x) > T::zero())
        .flat_map(move |x| (0..n_y).map(move |y| (x, y)))
        .filter(|&(x, y)| w.get(x, y) > T::zero())
        .map(|(x, y)| inv_a * p.get(x).ln() + w.get(x, y).ln() + r_exp * r.get(x, y).ln());
    Ok(a / (a - T::one()) * log_sum_exp_iter(terms))
}

/// `F^{S1}(p, r_α)` with the tilted reverse channel.
pub fn f_s2<T: Real>(
    p: &Distribution<T>,
    r: &ReverseChannel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<T> {
    f_s1(p, &tilt_reverse(r, alpha.value()), w, alpha)
}

/// `F^{S1}(p_α, r)` with the tilted input.
pub fn f_a1<T: Real>(
    p: &Distribution<T>,
    r: &ReverseChannel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<T> {
    f_s1(&tilt(p, alpha.value()), r, w, alpha)
}

/// `F^{S1}(p_α, r_α)`.
pub fn f_a2<T: Real>(
    p: &Distribution<T>,
    r: &ReverseChannel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<T> {
    f_s1(
        &tilt(p, alpha.value()),
        &tilt_reverse(r, alpha.value()),
        w,
        alpha,
    )
}

fn check_joint<T: Real>(q: &JointDistribution<T>, w: &Channel<T>) -> Result<()> {
    if q.dims() != w.dims() {
        return Err(Error::DimensionMismatch {
            expected: w.dims(),
            found: q.dims(),
        });
    }
    Ok(())
}

/// Jitsumatsu–Oohama functional
/// `E_q[ln(q̃_{Y|X}^{1+ρ} q̃_Y^{−ρ} / w)] + D(q || q̃)`, minimized jointly to
/// `min_p E₀(ρ, p)`.
///
/// `+inf` when `q` puts mass where `q̃` or `w` has none.
pub fn f_jo<T: Real>(
    rho: Rho<T>,
    q: &JointDistribution<T>,
    qt: &JointDistribution<T>,
    w: &Channel<T>,
) -> Result<T> {
    check_joint(q, w)?;
    check_joint(qt, w)?;
    let r = rho.value();
    let one_plus = T::one() + r;
    let qt_x = qt.marginal_x();
    let qt_y = qt.marginal_y();
    let (n_x, n_y) = w.dims();
    let mut total = T::zero();
    for x in 0..n_x {
        for y in 0..n_y {
            let m = q.get(x, y);
            if m <= T::zero() {
                continue;
            }
            let t = qt.get(x, y);
            let wy = w.get(x, y);
            if t <= T::zero() || wy <= T::zero() {
                return Ok(T::infinity());
            }
            let ln_t = t.ln();
            let ln_t_cond = ln_t - qt_x.get(x).ln();
            let integrand = one_plus * ln_t_cond - r * qt_y.get(y).ln() - wy.ln() + m.ln() - ln_t;
            total = total + m * integrand;
        }
    }
    Ok(total)
}

/// `(α/(1−α)) F^{JO}_{1/α−1}(q, q̃)`; maximized jointly to the Sibson capacity.
pub fn f_jo_tilde<T: Real>(
    alpha: Alpha<T>,
    q: &JointDistribution<T>,
    qt: &JointDistribution<T>,
    w: &Channel<T>,
) -> Result<T> {
    let alpha = alpha.require_above_one()?;
    let v = f_jo(alpha.to_rho(), q, qt, w)?;
    if v == T::infinity() {
        return Ok(T::neg_infinity());
    }
    Ok(alpha.sibson_factor() * v)
}

/// Augustin–Csiszár functional
/// `E_{p q̃}[ln r(X|Y)/p(X)] + (α/(1−α)) D(p q̃ || p w)`.
///
/// Maximizing over `(q̃, r)` gives the Augustin–Csiszár α-MI of `p`.
pub fn f_c_tilde<T: Real>(
    p: &Distribution<T>,
    qt: &Channel<T>,
    r: &ReverseChannel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<T> {
    let alpha = alpha.require_above_one()?;
    if p.len() != w.inputs() || qt.dims() != w.dims() || r.dims() != w.dims() {
        return Err(Error::DimensionMismatch {
            expected: w.dims(),
            found: qt.dims(),
        });
    }
    let beta = alpha.sibson_factor();
    let mut total = T::zero();
    for x in 0..w.inputs() {
        let px = p.get(x);
        if px <= T::zero() {
            continue;
        }
        let ln_px = px.ln();
        let mut row = T::zero();
        for y in 0..w.outputs() {
            let q = qt.get(x, y);
            if q <= T::zero() {
                continue;
            }
            let rv = r.get(x, y);
            let wy = w.get(x, y);
            if rv <= T::zero() || wy <= T::zero() {
                return Ok(T::neg_infinity());
            }
            row = row + q * (rv.ln() - ln_px + beta * (q.ln() - wy.ln()));
        }
        total = total + px * row;
    }
    Ok(total)
}

/// [`f_c_tilde`] at `r` = Bayes posterior of `(p, q̃)`, using
/// `ln r(x|y) − ln p(x) = ln q̃(y|x) − ln q_Y(y)` so that no posterior entry
/// has to be formed. Stays finite when `p(x) q̃(y|x)` underflows.
pub fn f_c_tilde_at_posterior<T: Real>(
    p: &Distribution<T>,
    qt: &Channel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<T> {
    let alpha = alpha.require_above_one()?;
    if p.len() != w.inputs() || qt.dims() != w.dims() {
        return Err(Error::DimensionMismatch {
            expected: w.dims(),
            found: qt.dims(),
        });
    }
    let beta = alpha.sibson_factor();
    let (n_x, n_y) = w.dims();
    let ln_qy: Vec<T> = (0..n_y)
        .map(|y| {
            let terms = (0..n_x)
                .filter(|&x| p.get(x) > T::zero() && qt.get(x, y) > T::zero())
                .map(|x| p.get(x).ln() + qt.get(x, y).ln());
            log_sum_exp_iter(terms)
        })
        .collect();
    let mut total = T::zero();
    for x in 0..n_x {
        let px = p.get(x);
        if px <= T::zero() {
            continue;
        }
        let mut row = T::zero();
        for (y, &ln_q_y) in ln_qy.iter().enumerate() {
            let q = qt.get(x, y);
            if q <= T::zero() {
                continue;
            }
            let wy = w.get(x, y);
            if wy <= T::zero() {
                return Ok(T::neg_infinity());
            }
            let ln_q = q.ln();
            row = row + q * (ln_q - ln_q_y + beta * (ln_q - wy.ln()));
        }
        total = total + px * row;
    }
    Ok(total)
}
