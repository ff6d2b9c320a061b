//! Alternating optimization for the Augustin–Csiszár capacity, α > 1.
//!
//! The objective `F̃^C(p, q̃, r)` has a closed-form maximizer in each block:
//! [`update_r`] (Bayes posterior), [`update_qt`] (tilted channel) and
//! [`update_p`] (exponential weights `g(x)`).

use crate::error::Error;
use crate::functionals::f_c_tilde_at_posterior;
use crate::measures::Alpha;
use crate::prob::{normalize_log_weights, Channel, Distribution, ReverseChannel};
use crate::scalar::Real;

use super::{run_ascent, InitSpec, SolverConfig, SolverError, SolverResult};

/// Maximizer over `p` for fixed `(q̃, r)`: `p(x) ∝ g(x)` with
/// `ln g(x) = Σ_y q̃(y|x) [(α/(1−α)) ln q̃(y|x) + ln r(x|y) + (α/(α−1)) ln w(y|x)]`.
///
/// An input whose sum hits `ln 0` with positive weight gets probability zero.
pub fn update_p<T: Real>(
    qt: &Channel<T>,
    r: &ReverseChannel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<Distribution<T>, Error> {
    let alpha = alpha.require_above_one()?;
    if qt.dims() != w.dims() || r.dims() != w.dims() {
        return Err(Error::DimensionMismatch {
            expected: w.dims(),
            found: qt.dims(),
        });
    }
    let beta = alpha.sibson_factor();
    let log_g: Vec<T> = (0..w.inputs())
        .map(|x| {
            let mut s = T::zero();
            for y in 0..w.outputs() {
                let q = qt.get(x, y);
                if q <= T::zero() {
                    continue;
                }
                let rv = r.get(x, y);
                let wv = w.get(x, y);
                if rv <= T::zero() || wv <= T::zero() {
                    return T::neg_infinity();
                }
                s = s + q * (beta * q.ln() + rv.ln() - beta * wv.ln());
            }
            s
        })
        .collect();
    Distribution::from_log_weights(log_g)
}

/// Maximizer over `q̃` for fixed `(p, r)`:
/// `q̃(y|x) ∝ w(y|x) r(x|y)^{1−1/α}`, normalized over `y`.
pub fn update_qt<T: Real>(
    r: &ReverseChannel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
) -> Result<Channel<T>, Error> {
    tilted_rows(r, w, alpha, |x, _| Err(Error::ZeroRow(x)))
}

/// Shared body of the `q̃` update; `vanished(x, row)` fills a row whose
/// weights are all zero.
fn tilted_rows<T: Real>(
    r: &ReverseChannel<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
    mut vanished: impl FnMut(usize, &mut [T]) -> Result<(), Error>,
) -> Result<Channel<T>, Error> {
    if r.dims() != w.dims() {
        return Err(Error::DimensionMismatch {
            expected: w.dims(),
            found: r.dims(),
        });
    }
    let r_exp = T::one() - T::one() / alpha.value();
    let (n_x, n_y) = w.dims();
    let mut data = Vec::with_capacity(n_x * n_y);
    for x in 0..n_x {
        let mut row: Vec<T> = w
            .row(x)
            .iter()
            .zip(r.input_row(x))
            .map(|(&v, &rv)| {
                if v > T::zero() {
                    v.ln() + r_exp * rv.ln()
                } else {
                    T::neg_infinity()
                }
            })
            .collect();
        if !normalize_log_weights(&mut row) {
            vanished(x, &mut row)?;
        }
        data.extend(row);
    }
    Ok(Channel::from_raw(n_x, n_y, data))
}

/// Maximizer over `r` for fixed `(p, q̃)`: the Bayes posterior
/// `r(x|y) ∝ p(x) q̃(y|x)`. Outputs with no mass get a uniform column.
pub fn update_r<T: Real>(p: &Distribution<T>, qt: &Channel<T>) -> Result<ReverseChannel<T>, Error> {
    ReverseChannel::posterior(p, qt)
}

/// Augustin–Csiszár α-capacity by cycling `p`, `q̃`, `r`.
///
/// Both the `p` and the `q̃` update read the previous `(q̃^(k), r^(k))`; `r` is
/// then recomputed from the new pair.
pub fn csiszar_capacity<T: Real>(
    w: &Channel<T>,
    cfg: &SolverConfig<T>,
    init: &InitSpec<T>,
) -> Result<SolverResult<T>, SolverError<T>> {
    let alpha = cfg.alpha.require_above_one()?;
    let joint = init.joint(w)?;
    let mut p = joint.marginal_x();
    let mut qt = joint.conditional_y_given_x();
    let mut r = update_r(&p, &qt)?;
    let f0 = f_c_tilde_at_posterior(&p, &qt, w, alpha)?;
    run_ascent(cfg, f0, || {
        // Every g(x) vanishes only when q̃ charges zeros of w in every row; the
        // objective is then −∞ for all p and the current p is a maximizer.
        let p_next = match update_p(&qt, &r, w, alpha) {
            Err(Error::AllMassVanished) => p.clone(),
            other => other?,
        };
        // An input whose mass underflowed to zero has r(x|·) = 0; its row
        // carries no weight, so the previous row is kept.
        let qt_next = tilted_rows(&r, w, alpha, |x, row| {
            row.copy_from_slice(qt.row(x));
            Ok(())
        })?;
        p = p_next;
        qt = qt_next;
        r = update_r(&p, &qt)?;
        Ok((f_c_tilde_at_posterior(&p, &qt, w, alpha)?, Some(p.clone())))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functionals::f_c_tilde;
    use approx::assert_abs_diff_eq;

    fn a(v: f64) -> Alpha<f64> {
        Alpha::new(v).unwrap()
    }

    fn example() -> Channel<f64> {
        Channel::new(vec![
            vec![0.259, 0.463, 0.278],
            vec![0.328, 0.172, 0.500],
            vec![0.425, 0.225, 0.350],
        ])
        .unwrap()
    }

    #[test]
    fn update_r_examples() {
        let id = Channel::<f64>::identity(3);
        let r = update_r(&Distribution::uniform(3), &id).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(r.get(x, y), if x == y { 1.0 } else { 0.0 });
            }
        }
        let p = Distribution::new(vec![0.9, 0.1]).unwrap();
        let flat = Channel::new(vec![vec![0.3, 0.7], vec![0.3, 0.7]]).unwrap();
        let r = update_r(&p, &flat).unwrap();
        for y in 0..2 {
            assert!(r.column(y).max_abs_diff(&p) < 1e-15);
        }
        // uniform p: column-normalized transpose of the channel
        let w = example();
        let r = update_r(&Distribution::uniform(3), &w).unwrap();
        for y in 0..3 {
            let col: f64 = (0..3).map(|x| w.get(x, y)).sum();
            for x in 0..3 {
                assert_abs_diff_eq!(r.get(x, y), w.get(x, y) / col, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn update_qt_examples() {
        let w = example();
        let q = update_qt(&ReverseChannel::uniform(3, 3), &w, a(2.0)).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_abs_diff_eq!(q.get(x, y), w.get(x, y), epsilon = 1e-15);
            }
        }
        // hand-normalized w(y|x) r(x|y)^{1/2} with r from the first Bayes step
        let r = update_r(&Distribution::uniform(3), &w).unwrap();
        let q = update_qt(&r, &w, a(2.0)).unwrap();
        let cols = [1.012, 0.86, 1.128];
        for x in 0..3 {
            let raw: Vec<f64> = (0..3)
                .map(|y| w.get(x, y) * (w.get(x, y) / cols[y]).sqrt())
                .collect();
            let s: f64 = raw.iter().sum();
            for y in 0..3 {
                assert_abs_diff_eq!(q.get(x, y), raw[y] / s, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn update_qt_large_alpha_exponent() {
        // exponent 1 - 1/α → 1: q̃(y|x) ∝ w(y|x) r(x|y)
        let w = example();
        let r = update_r(&Distribution::uniform(3), &w).unwrap();
        let q = update_qt(&r, &w, a(1000.0)).unwrap();
        let raw: Vec<f64> = (0..3)
            .map(|y| w.get(0, y) * r.get(0, y).powf(0.999))
            .collect();
        let s: f64 = raw.iter().sum();
        for y in 0..3 {
            assert_abs_diff_eq!(q.get(0, y), raw[y] / s, epsilon = 1e-14);
        }
    }

    #[test]
    fn update_qt_zero_row() {
        let w = Channel::new(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let r = ReverseChannel::from_columns(vec![vec![0.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(update_qt(&r, &w, a(2.0)).unwrap_err(), Error::ZeroRow(0));
    }

    #[test]
    fn update_p_symmetry() {
        let bsc = Channel::binary_symmetric(0.2).unwrap();
        let r = update_r(&Distribution::uniform(2), &bsc).unwrap();
        let p = update_p(&bsc, &r, &bsc, a(3.0)).unwrap();
        assert_abs_diff_eq!(p.get(0), 0.5, epsilon = 1e-15);

        // identical rows of (q̃, r, w) give equal g(x)
        let w = Channel::new(vec![vec![0.4, 0.6], vec![0.4, 0.6]]).unwrap();
        let r = ReverseChannel::uniform(2, 2);
        let p = update_p(&w, &r, &w, a(2.0)).unwrap();
        assert_eq!(p.get(0), p.get(1));
    }

    #[test]
    fn update_p_is_stationary() {
        // p* maximizes a concave function on the simplex: every direction
        // e_i − e_j has zero directional derivative at an interior p*.
        let w = example();
        let al = a(2.0);
        let qt = w.clone();
        let r = update_r(&Distribution::uniform(3), &w).unwrap();
        let p = update_p(&qt, &r, &w, al).unwrap();
        let f = |pp: &[f64]| {
            f_c_tilde(&Distribution::new(pp.to_vec()).unwrap(), &qt, &r, &w, al).unwrap()
        };
        let h = 1e-6;
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                let mut plus = p.probs().to_vec();
                let mut minus = p.probs().to_vec();
                plus[i] += h;
                plus[j] -= h;
                minus[i] -= h;
                minus[j] += h;
                let deriv = (f(&plus) - f(&minus)) / (2.0 * h);
                assert!(deriv.abs() < 1e-7, "direction ({i},{j}): {deriv}");
            }
        }
    }

    #[test]
    fn update_p_all_mass_vanished() {
        let id = Channel::<f64>::identity(2);
        let qt = Channel::uniform(2, 2);
        let r = ReverseChannel::uniform(2, 2);
        assert_eq!(
            update_p(&qt, &r, &id, a(2.0)).unwrap_err(),
            Error::AllMassVanished
        );
    }

    #[test]
    fn identity_channel() {
        let cfg = SolverConfig::new(a(2.0));
        let res = csiszar_capacity(
            &Channel::identity(3),
            &cfg,
            &InitSpec::ProductUniformXChannel,
        )
        .unwrap();
        assert_abs_diff_eq!(res.value, 3f64.ln(), epsilon = 1e-9);
    }

    #[test]
    fn uniform_joint_start_on_sparse_channel() {
        let cfg = SolverConfig::new(a(2.0));
        let res = csiszar_capacity(&Channel::identity(3), &cfg, &InitSpec::UniformXY).unwrap();
        assert_eq!(res.trace.values()[0], f64::NEG_INFINITY);
        assert_abs_diff_eq!(res.value, 3f64.ln(), epsilon = 1e-9);
    }

    #[test]
    fn dominated_input_dies_out() {
        let w = Channel::new(vec![vec![0.9, 0.1], vec![0.1, 0.9], vec![0.5, 0.5]]).unwrap();
        let cfg = SolverConfig::new(a(5.0))
            .with_epsilon(1e-15)
            .with_max_iter(200_000);
        let res = csiszar_capacity(&w, &cfg, &InitSpec::UniformXY).unwrap();
        let bsc = Channel::binary_symmetric(0.1).unwrap();
        let target = crate::measures::sibson_mi(&Distribution::uniform(2), &bsc, a(5.0)).unwrap();
        assert_abs_diff_eq!(res.value, target, epsilon = 1e-9);
        assert!(res.final_input.unwrap().get(2) < 1e-12);
    }

    #[test]
    fn input_mass_underflow_keeps_running() {
        // one input's probability reaches exactly 0.0 before convergence
        let w = crate::generate::random_channel(5, 3, 16).unwrap();
        let cfg = SolverConfig::new(a(5.0)).with_epsilon(1e-13);
        let res = csiszar_capacity(&w, &cfg, &InitSpec::UniformXY).unwrap();
        assert!(res.final_input.unwrap().probs().contains(&0.0));
        let reference = super::super::arimoto_capacity(&w, &cfg, &InitSpec::UniformX).unwrap();
        assert_abs_diff_eq!(res.value, reference.value, epsilon = 1e-9);
    }
}
