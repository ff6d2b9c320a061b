//! Arimoto's algorithm for the Sibson capacity.

use crate::functionals::f_s1;
use crate::measures::Alpha;
use crate::prob::{log_sum_exp_iter, Channel, Distribution, ReverseChannel};
use crate::scalar::Real;

use super::{run_ascent, InitSpec, SolverConfig, SolverError, SolverResult};

/// Maximizer of `F^{S1}(p, ·)`: `r(x|y) ∝ p(x) w(y|x)^α`.
pub fn sibson_reverse<T: Real>(
    p: &Distribution<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> ReverseChannel<T> {
    let a = alpha.value();
    let (n_x, n_y) = w.dims();
    let mut log_w = Vec::with_capacity(n_x * n_y);
    for x in 0..n_x {
        let ln_p = p.get(x).ln();
        log_w.extend(w.row(x).iter().map(|&v| {
            if v > T::zero() && ln_p.is_finite() {
                ln_p + a * v.ln()
            } else {
                T::neg_infinity()
            }
        }));
    }
    ReverseChannel::from_log_weights(n_x, n_y, log_w)
}

/// Maximizer of `F^{S1}(·, r)`:
/// `p(x) ∝ (Σ_y w(y|x) r(x|y)^{1−1/α})^{α/(α−1)}`.
pub fn sibson_input<T: Real>(
    r: &ReverseChannel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Distribution<T> {
    let a = alpha.value();
    let r_exp = T::one() - T::one() / a;
    let outer = a / (a - T::one());
    let log_w: Vec<T> = (0..w.inputs())
        .map(|x| {
            let row = w.row(x);
            let rr = r.input_row(x);
            let terms = row
                .iter()
                .zip(rr)
                .filter(|(v, _)| **v > T::zero())
                .map(|(&v, &rv)| v.ln() + r_exp * rv.ln());
            outer * log_sum_exp_iter(terms)
        })
        .collect();
    Distribution::from_log_weights(log_w).expect("some input keeps positive weight")
}

/// Sibson α-capacity by alternating `r` and `p` updates, α ∈ (0,1) ∪ (1,∞).
pub fn arimoto_capacity<T: Real>(
    w: &Channel<T>,
    cfg: &SolverConfig<T>,
    init: &InitSpec<T>,
) -> Result<SolverResult<T>, SolverError<T>> {
    let alpha = cfg.alpha;
    let mut p = init.input(w)?;
    let mut r = sibson_reverse(&p, w, alpha);
    let f0 = f_s1(&p, &r, w, alpha)?;
    run_ascent(cfg, f0, || {
        p = sibson_input(&r, w, alpha);
        r = sibson_reverse(&p, w, alpha);
        let f = f_s1(&p, &r, w, alpha)?;
        Ok((f, Some(p.clone())))
    })
}
