//! Blahut–Arimoto iteration for the ordinary (α = 1) channel capacity.

use crate::measures::shannon_mi;
use crate::prob::{Channel, Distribution, ReverseChannel};
use crate::scalar::Real;

use super::{run_ascent, SolverConfig, SolverError, SolverResult};

/// `p(x) ∝ exp(Σ_y w(y|x) ln r(x|y))`.
fn shannon_input<T: Real>(r: &ReverseChannel<T>, w: &Channel<T>) -> Distribution<T> {
    let log_w: Vec<T> = (0..w.inputs())
        .map(|x| {
            let mut s = T::zero();
            for (&v, &rv) in w.row(x).iter().zip(r.input_row(x)) {
                if v > T::zero() {
                    s = s + v * rv.ln();
                }
            }
            s
        })
        .collect();
    Distribution::from_log_weights(log_w)
        .expect("every input has an output with positive posterior")
}

/// Shannon capacity from the uniform input. `cfg.alpha` is ignored.
///
/// Same loop and stopping rule as the α-solvers, with `F^(k) = I(p^(k), w)`.
pub fn shannon_capacity<T: Real>(
    w: &Channel<T>,
    cfg: &SolverConfig<T>,
) -> Result<SolverResult<T>, SolverError<T>> {
    let mut p = Distribution::uniform(w.inputs());
    let mut r = ReverseChannel::posterior(&p, w)?;
    let f0 = shannon_mi(&p, w)?;
    run_ascent(cfg, f0, || {
        p = shannon_input(&r, w);
        r = ReverseChannel::posterior(&p, w)?;
        Ok((shannon_mi(&p, w)?, Some(p.clone())))
    })
}
