//! Jitsumatsu–Oohama algorithm for the Sibson capacity, α > 1.

use crate::error::Error;
use crate::functionals::f_jo_tilde;
use crate::measures::Alpha;
use crate::prob::{Channel, JointDistribution};
use crate::scalar::Real;

use super::{run_ascent, InitSpec, SolverConfig, SolverError, SolverResult};

/// `q(x,y) ∝ q̃(x|y)^{1−1/α} w(y|x) q̃(x)^{1/α}`.
pub fn jo_update<T: Real>(
    qt: &JointDistribution<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<JointDistribution<T>, Error> {
    let inv_a = T::one() / alpha.value();
    let cond_exp = T::one() - inv_a;
    let qt_x = qt.marginal_x();
    let qt_y = qt.marginal_y();
    let (n_x, n_y) = w.dims();
    let mut log_w = Vec::with_capacity(n_x * n_y);
    for x in 0..n_x {
        let ln_qx = qt_x.get(x).ln();
        for y in 0..n_y {
            let t = qt.get(x, y);
            let v = w.get(x, y);
            log_w.push(if t > T::zero() && v > T::zero() {
                let ln_cond = t.ln() - qt_y.get(y).ln();
                cond_exp * ln_cond + v.ln() + inv_a * ln_qx
            } else {
                T::neg_infinity()
            });
        }
    }
    JointDistribution::from_log_weights(n_x, n_y, log_w)
}

/// Sibson α-capacity through the joint `(q, q̃)` characterization.
///
/// `q̃` is reset to `q` after every `q` update, so each step is one call to
/// [`jo_update`] followed by evaluating `F̃^{JO}(q, q)`. No input estimate is
/// maintained, so `final_input` is `None`.
pub fn jo_capacity<T: Real>(
    w: &Channel<T>,
    cfg: &SolverConfig<T>,
    init: &InitSpec<T>,
) -> Result<SolverResult<T>, SolverError<T>> {
    let alpha = cfg.alpha.require_above_one()?;
    let mut q = init.joint(w)?;
    let f0 = f_jo_tilde(alpha, &q, &q, w)?;
    run_ascent(cfg, f0, || {
        q = jo_update(&q, w, alpha)?;
        Ok((f_jo_tilde(alpha, &q, &q, w)?, None))
    })
}
