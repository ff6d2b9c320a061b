//! Brute-force reference values on small alphabets.
//!
//! [`grid_capacity`] maximizes the closed-form Sibson α-MI over every
//! composition of the input simplex at a fixed resolution; it shares no code
//! with the iterative solvers. [`grid_csiszar_mi`] does the same for the
//! Augustin–Csiszár minimization over output distributions.
//!
//! Evaluation is split across threads by the first coordinate. Ties go to the
//! lexicographically smallest composition, so the result does not depend on
//! the partition.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{renyi_divergence, sibson_mi, Alpha};
use crate::prob::{Channel, Distribution};
use crate::scalar::Real;

/// Default cap on the number of grid points.
pub const DEFAULT_MAX_POINTS: u64 = 10_000_000;
/// Largest alphabet the oracle will enumerate.
pub const MAX_ALPHABET: usize = 4;
/// Fine-grid subdivision used by the refinement pass.
const REFINE_FACTOR: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    /// Resolution; `1/step` is rounded to the nearest integer `N` and the
    /// grid is `{c/N : c ∈ ℕⁿ, Σc = N}`.
    pub step: T,
    /// Search a `step/10` grid spanning one coarse step around the incumbent.
    pub refine: bool,
    pub max_points: u64,
}

impl<T: Real> GridSpec<T> {
    pub fn new(step: T, refine: bool) -> Self {
        Self {
            step,
            refine,
            max_points: DEFAULT_MAX_POINTS,
        }
    }

    pub fn with_max_points(mut self, max_points: u64) -> Self {
        self.max_points = max_points;
        self
    }

    fn divisions(&self) -> Result<usize> {
        if !(self.step > T::zero() && self.step < T::one()) {
            return Err(Error::InvalidParameter(
                "grid step must lie in (0, 1)".into(),
            ));
        }
        let n = (T::one() / self.step).round();
        n.to_usize().filter(|&n| n >= 1).ok_or(Error::GridTooLarge {
            points: u128::MAX,
            limit: self.max_points,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridResult<T> {
    pub value: T,
    pub argmax: Distribution<T>,
    pub points_evaluated: u64,
}

/// Number of compositions of `total` into `parts` non-negative parts.
pub fn composition_count(total: usize, parts: usize) -> u128 {
    // C(total + parts - 1, parts - 1)
    let k = parts.saturating_sub(1) as u128;
    let n = total as u128 + k;
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.saturating_mul(n - i) / (i + 1);
    }
    c
}

#[derive(Clone)]
struct Best<T> {
    value: T,
    comp: Vec<usize>,
    evaluated: u64,
}

impl<T: Real> Best<T> {
    fn empty() -> Self {
        Self {
            value: T::nan(),
            comp: Vec::new(),
            evaluated: 0,
        }
    }

    /// Keeps the better of two candidates under `better`, breaking ties on the
    /// composition.
    fn merge(self, other: Self, better: fn(T, T) -> bool) -> Self {
        let evaluated = self.evaluated + other.evaluated;
        let pick_other = if self.comp.is_empty() {
            true
        } else if other.comp.is_empty() {
            false
        } else if better(other.value, self.value) {
            true
        } else if better(self.value, other.value) {
            false
        } else {
            other.comp.cmp(&self.comp) == Ordering::Less
        };
        let mut out = if pick_other { other } else { self };
        out.evaluated = evaluated;
        out
    }

    fn offer(&mut self, value: T, comp: &[usize], better: fn(T, T) -> bool) {
        self.evaluated += 1;
        if value.is_nan() {
            return;
        }
        if self.comp.is_empty() || better(value, self.value) {
            self.value = value;
            self.comp.clear();
            self.comp.extend_from_slice(comp);
        }
    }
}

fn greater<T: Real>(a: T, b: T) -> bool {
    a > b || (b.is_nan() && !a.is_nan())
}

fn less<T: Real>(a: T, b: T) -> bool {
    a < b || (b.is_nan() && !a.is_nan())
}

/// Visits every composition with the given prefix in lexicographic order.
fn for_each_composition<F: FnMut(&[usize])>(
    buf: &mut Vec<usize>,
    remaining: usize,
    slots: usize,
    f: &mut F,
) {
    if slots == 1 {
        buf.push(remaining);
        f(buf);
        buf.pop();
        return;
    }
    for c in 0..=remaining {
        buf.push(c);
        for_each_composition(buf, remaining - c, slots - 1, f);
        buf.pop();
    }
}

fn to_distribution<T: Real>(comp: &[usize], total: usize) -> Distribution<T> {
    let t = T::from_count(total);
    Distribution::from_raw(comp.iter().map(|&c| T::from_count(c) / t).collect())
}

/// Exhaustive search over the simplex grid plus optional refinement.
fn search<T, F>(
    parts: usize,
    grid: &GridSpec<T>,
    better: fn(T, T) -> bool,
    f: F,
) -> Result<GridResult<T>>
where
    T: Real,
    F: Fn(&Distribution<T>) -> T + Sync,
{
    let total = grid.divisions()?;
    let points = composition_count(total, parts);
    if points > grid.max_points as u128 {
        return Err(Error::GridTooLarge {
            points,
            limit: grid.max_points,
        });
    }

    let coarse = (0..=total)
        .into_par_iter()
        .map(|first| {
            let mut best = Best::empty();
            let mut buf = vec![first];
            if parts == 1 {
                if first == total {
                    best.offer(f(&to_distribution(&buf, total)), &buf, better);
                }
                return best;
            }
            for_each_composition(&mut buf, total - first, parts - 1, &mut |c| {
                best.offer(f(&to_distribution(c, total)), c, better);
            });
            best
        })
        .reduce(Best::empty, |a, b| a.merge(b, better));

    let mut best = coarse;
    let mut scale = total;
    if grid.refine && parts > 1 {
        let fine_total = total * REFINE_FACTOR;
        let center: Vec<usize> = best.comp.iter().map(|&c| c * REFINE_FACTOR).collect();
        let mut refined = Best::empty();
        refined.offer(best.value, &center, better);
        refined.evaluated = 0;
        let span = REFINE_FACTOR as i64;
        let offsets = (2 * span + 1).pow((parts - 1) as u32);
        for idx in 0..offsets {
            let mut rem = idx;
            let mut comp = Vec::with_capacity(parts);
            let mut sum = 0i64;
            let mut ok = true;
            for &c in center.iter().take(parts - 1) {
                let d = rem % (2 * span + 1) - span;
                rem /= 2 * span + 1;
                let v = c as i64 + d;
                if v < 0 {
                    ok = false;
                    break;
                }
                sum += v;
                comp.push(v as usize);
            }
            let last = fine_total as i64 - sum;
            if !ok || last < 0 {
                continue;
            }
            comp.push(last as usize);
            refined.offer(f(&to_distribution(&comp, fine_total)), &comp, better);
        }
        refined.evaluated += best.evaluated;
        best = refined;
        scale = fine_total;
    }

    Ok(GridResult {
        value: best.value,
        argmax: to_distribution(&best.comp, scale),
        points_evaluated: best.evaluated,
    })
}

/// Grid maximum of Sibson's α-MI over input distributions.
pub fn grid_capacity<T: Real>(
    w: &Channel<T>,
    alpha: Alpha<T>,
    grid: &GridSpec<T>,
) -> Result<GridResult<T>> {
    if w.inputs() > MAX_ALPHABET {
        return Err(Error::InvalidParameter(format!(
            "grid oracle supports at most {MAX_ALPHABET} inputs, channel has {}",
            w.inputs()
        )));
    }
    search(w.inputs(), grid, greater, |p| {
        sibson_mi(p, w, alpha).unwrap_or(T::nan())
    })
}

/// Grid minimum over `q_Y` of `Σ_x p(x) D_α(w(·|x) || q_Y)`.
pub fn grid_csiszar_mi<T: Real>(
    p: &Distribution<T>,
    w: &Channel<T>,
    alpha: Alpha<T>,
    grid: &GridSpec<T>,
) -> Result<GridResult<T>> {
    if p.len() != w.inputs() {
        return Err(Error::AlphabetMismatch {
            left: p.len(),
            right: w.inputs(),
        });
    }
    if w.outputs() > MAX_ALPHABET {
        return Err(Error::InvalidParameter(format!(
            "grid oracle supports at most {MAX_ALPHABET} outputs, channel has {}",
            w.outputs()
        )));
    }
    let rows: Vec<(T, Distribution<T>)> = (0..w.inputs())
        .filter(|&x| p.get(x) > T::zero())
        .map(|x| (p.get(x), w.row_distribution(x)))
        .collect();
    search(w.outputs(), grid, less, |q| {
        let mut s = T::zero();
        for (px, row) in &rows {
            match renyi_divergence(row, q, alpha) {
                Ok(d) if d == T::infinity() => return T::infinity(),
                Ok(d) => s = s + *px * d,
                Err(_) => return T::nan(),
            }
        }
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn a(v: f64) -> Alpha<f64> {
        Alpha::new(v).unwrap()
    }

    #[test]
    fn composition_counts() {
        assert_eq!(composition_count(500, 3), 125_751);
        assert_eq!(composition_count(4, 1), 1);
        assert_eq!(composition_count(2, 2), 3);
    }

    #[test]
    fn identity_argmax_near_uniform() {
        let g = grid_capacity(&Channel::identity(3), a(2.0), &GridSpec::new(0.01, false)).unwrap();
        assert_abs_diff_eq!(g.value, 3f64.ln(), epsilon = 2e-4);
        let u = Distribution::uniform(3);
        assert!(g.argmax.max_abs_diff(&u) <= 0.01 + 1e-12);
        assert_eq!(g.points_evaluated as u128, composition_count(100, 3));
    }

    #[test]
    fn uniform_rows_are_zero_everywhere() {
        let g = grid_capacity(&Channel::uniform(3, 3), a(2.0), &GridSpec::new(0.05, true)).unwrap();
        assert_abs_diff_eq!(g.value, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn guards() {
        let w = Channel::<f64>::uniform(4, 2);
        assert!(matches!(
            grid_capacity(&w, a(2.0), &GridSpec::new(1e-9, false)),
            Err(Error::GridTooLarge { .. })
        ));
        assert!(matches!(
            grid_capacity(
                &Channel::<f64>::uniform(5, 2),
                a(2.0),
                &GridSpec::new(0.1, false)
            ),
            Err(Error::InvalidParameter(_))
        ));
        assert!(grid_capacity(&w, a(2.0), &GridSpec::new(0.1, false).with_max_points(10)).is_err());
        assert!(grid_capacity(&w, a(2.0), &GridSpec::new(1.5, false)).is_err());
    }

    #[test]
    fn single_input_channel() {
        let w = Channel::new(vec![vec![0.3, 0.7]]).unwrap();
        let g = grid_capacity(&w, a(2.0), &GridSpec::new(0.1, true)).unwrap();
        assert_abs_diff_eq!(g.value, 0.0, epsilon = 1e-15);
        assert_eq!(g.argmax.probs(), &[1.0]);
    }

    #[test]
    fn refinement_improves_bsc() {
        let bsc = Channel::binary_symmetric(0.1).unwrap();
        // coarse step 0.3 misses 1/2; refinement lands on it
        let coarse = grid_capacity(&bsc, a(2.0), &GridSpec::new(1.0 / 3.0, false)).unwrap();
        let fine = grid_capacity(&bsc, a(2.0), &GridSpec::new(1.0 / 3.0, true)).unwrap();
        assert!(fine.value > coarse.value);
        assert!(fine.argmax.max_abs_diff(&Distribution::uniform(2)) < 0.04);
    }

    #[test]
    fn csiszar_grid_examples() {
        let g = grid_csiszar_mi(
            &Distribution::uniform(3),
            &Channel::identity(3),
            a(2.0),
            &GridSpec::new(0.01, true),
        )
        .unwrap();
        assert_abs_diff_eq!(g.value, 3f64.ln(), epsilon = 1e-6);
        let g = grid_csiszar_mi(
            &Distribution::new(vec![0.3, 0.7]).unwrap(),
            &Channel::uniform(2, 3),
            a(2.0),
            &GridSpec::new(0.01, true),
        )
        .unwrap();
        assert_abs_diff_eq!(g.value, 0.0, epsilon = 1e-5);
    }
}
