//! `min_p E₀(ρ, p)` and the correct-decoding exponent
//! `G(R) = max_{ρ∈(−1,0)} {−ρR + min_p E₀(ρ, p)}`.

use rayon::prelude::*;

use crate::error::Error;
use crate::measures::Rho;
use crate::prob::Channel;
use crate::scalar::Real;

use super::{Algorithm, SolverConfig, SolverError};

/// Golden-section iterations used to refine the grid maximizer.
const GOLDEN_STEPS: usize = 60;

/// `min_p E₀(ρ, p) = ((1−α)/α) C_α` with `α = 1/(1+ρ)`, where `C_α` comes
/// from `algorithm` started at its default initialization.
pub fn min_e0<T: Real>(
    rho: Rho<T>,
    w: &Channel<T>,
    cfg: &SolverConfig<T>,
    algorithm: Algorithm,
) -> Result<T, SolverError<T>> {
    let rho = Rho::negative(rho.value())?;
    let alpha = rho.to_alpha()?;
    let cfg = cfg.with_alpha(alpha);
    let res = algorithm.solve(w, &cfg, &algorithm.default_init())?;
    let a = alpha.value();
    Ok((T::one() - a) / a * res.value)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint<T> {
    pub rho: T,
    pub min_e0: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentResult<T> {
    pub rate: T,
    pub exponent: T,
    /// Maximizing ρ after refinement.
    pub rho_star: T,
    pub sweep: Vec<SweepPoint<T>>,
}

/// Uniform grid on (−1, 0) with the endpoints inset by half a step.
pub fn rho_grid_points<T: Real>(n: usize) -> Vec<T> {
    let n_t = T::from_count(n);
    (0..n)
        .map(|i| -T::one() + (T::from_count(i) + T::lit(0.5)) / n_t)
        .collect()
}

/// `min_p E₀(ρ, p)` at every grid point. Runs are independent and execute in
/// parallel; the output order follows the grid.
pub fn rho_sweep<T: Real>(
    w: &Channel<T>,
    cfg: &SolverConfig<T>,
    algorithm: Algorithm,
    rho_grid: usize,
) -> Result<Vec<SweepPoint<T>>, SolverError<T>> {
    if rho_grid < 2 {
        return Err(Error::InvalidParameter("rho grid needs at least 2 points".into()).into());
    }
    rho_grid_points::<T>(rho_grid)
        .into_par_iter()
        .map(|rho| {
            let m = min_e0(Rho::new(rho)?, w, cfg, algorithm)?;
            Ok(SweepPoint { rho, min_e0: m })
        })
        .collect()
}

/// Correct-decoding exponent at `rate` (nats).
///
/// Evaluates `−ρR + min_p E₀(ρ, p)` on [`rho_grid_points`], then refines the
/// best grid point with a golden-section search over its two neighbouring
/// cells.
pub fn correct_decoding_exponent<T: Real>(
    rate: T,
    w: &Channel<T>,
    cfg: &SolverConfig<T>,
    rho_grid: usize,
    algorithm: Algorithm,
) -> Result<ExponentResult<T>, SolverError<T>> {
    if !rate.is_finite() || rate < T::zero() {
        return Err(Error::InvalidParameter("rate must be finite and non-negative".into()).into());
    }
    let sweep = rho_sweep(w, cfg, algorithm, rho_grid)?;
    let objective = |p: &SweepPoint<T>| -p.rho * rate + p.min_e0;
    let (best_i, best) = sweep
        .iter()
        .enumerate()
        .map(|(i, p)| (i, objective(p)))
        .fold((0, T::neg_infinity()), |acc, cur| {
            if cur.1 > acc.1 {
                cur
            } else {
                acc
            }
        });

    let lo = sweep[best_i.saturating_sub(1)].rho;
    let hi = sweep[(best_i + 1).min(sweep.len() - 1)].rho;
    let eval = |rho: T| -> Result<T, SolverError<T>> {
        Ok(-rho * rate + min_e0(Rho::new(rho)?, w, cfg, algorithm)?)
    };
    let (rho_ref, val_ref) = golden_section_max(lo, hi, GOLDEN_STEPS, eval)?;

    let (rho_star, exponent) = if val_ref > best {
        (rho_ref, val_ref)
    } else {
        (sweep[best_i].rho, best)
    };
    Ok(ExponentResult {
        rate,
        exponent,
        rho_star,
        sweep,
    })
}

fn golden_section_max<T, F, E>(mut lo: T, mut hi: T, steps: usize, mut f: F) -> Result<(T, T), E>
where
    T: Real,
    F: FnMut(T) -> Result<T, E>,
{
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    for _ in 0..steps {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    Ok(if f1 > f2 { (x1, f1) } else { (x2, f2) })
}
