//! Probability vectors, channels, joint distributions and reverse channels.
//!
//! All types validate their invariants on construction and are immutable
//! afterwards. Matrices are stored row-major with the input symbol `x` as the
//! row index and the output symbol `y` as the column index.
//!
//! Zero conventions used throughout the crate: `0 * ln 0 = 0`, `0^c = 0` for
//! `c > 0`, and `ln 0 = -inf`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default tolerance on row and total sums.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `ln Σ exp(v_i)` with a max shift.
///
/// Returns `-inf` for an empty or all-`-inf` input and `+inf` if any value is
/// `+inf`.
pub fn log_sum_exp<T: Real>(values: &[T]) -> T {
    log_sum_exp_iter(values.iter().copied())
}

/// Iterator form of [`log_sum_exp`]. The iterator is traversed twice, so it
/// must be cheap to clone.
pub fn log_sum_exp_iter<T, I>(values: I) -> T
where
    T: Real,
    I: Iterator<Item = T> + Clone,
{
    let max = values.clone().fold(T::neg_infinity(), T::max);
    if max == T::neg_infinity() || max == T::infinity() || max.is_nan() {
        return max;
    }
    let sum: T = values.map(|v| (v - max).exp()).sum();
    max + sum.ln()
}

/// Normalizes log-weights in place into probabilities. Returns `false` when
/// every weight is `-inf`.
pub(crate) fn normalize_log_weights<T: Real>(log_w: &mut [T]) -> bool {
    let z = log_sum_exp(log_w);
    if z == T::neg_infinity() || !z.is_finite() {
        return false;
    }
    for v in log_w.iter_mut() {
        *v = (*v - z).exp();
    }
    true
}

fn check_finite<T: Real>(v: T, x: usize, y: usize) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { x, y })
    }
}

/// Probability vector on a finite alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<T> {
    probs: Vec<T>,
}

impl<T: Real> Distribution<T> {
    /// Validates `probs` against the default tolerance.
    pub fn new(probs: Vec<T>) -> Result<Self> {
        Self::with_tolerance(probs, T::lit(DEFAULT_TOLERANCE))
    }

    pub fn with_tolerance(probs: Vec<T>, tol: T) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Empty);
        }
        for (i, &p) in probs.iter().enumerate() {
            check_finite(p, 0, i)?;
            if p < T::zero() {
                return Err(Error::NegativeEntry { x: 0, y: i });
            }
        }
        let sum: T = probs.iter().copied().sum();
        if (sum - T::one()).abs() > tol {
            return Err(Error::NotNormalized { sum: sum.as_f64() });
        }
        Ok(Self { probs })
    }

    /// Normalizes non-negative weights. Fails if all weights are zero.
    pub fn from_weights(weights: Vec<T>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        for (i, &w) in weights.iter().enumerate() {
            check_finite(w, 0, i)?;
            if w < T::zero() {
                return Err(Error::NegativeEntry { x: 0, y: i });
            }
        }
        let sum: T = weights.iter().copied().sum();
        if sum <= T::zero() {
            return Err(Error::AllMassVanished);
        }
        Ok(Self {
            probs: weights.into_iter().map(|w| w / sum).collect(),
        })
    }

    /// Normalizes log-weights; `-inf` entries get probability zero.
    pub fn from_log_weights(mut log_w: Vec<T>) -> Result<Self> {
        if log_w.is_empty() {
            return Err(Error::Empty);
        }
        if log_w.iter().any(|v| v.is_nan() || *v == T::infinity()) {
            return Err(Error::InvalidParameter("log-weight is NaN or +inf".into()));
        }
        if !normalize_log_weights(&mut log_w) {
            return Err(Error::AllMassVanished);
        }
        Ok(Self { probs: log_w })
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution on an empty alphabet");
        let v = T::one() / T::from_count(n);
        Self { probs: vec![v; n] }
    }

    /// Point mass on symbol `i`.
    pub fn point(n: usize, i: usize) -> Self {
        assert!(i < n);
        let mut probs = vec![T::zero(); n];
        probs[i] = T::one();
        Self { probs }
    }

    pub(crate) fn from_raw(probs: Vec<T>) -> Self {
        debug_assert!(!probs.is_empty());
        Self { probs }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    #[inline]
    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    #[inline]
    pub fn get(&self, i: usize) -> T {
        self.probs[i]
    }

    pub fn has_full_support(&self) -> bool {
        self.probs.iter().all(|&p| p > T::zero())
    }

    pub fn into_vec(self) -> Vec<T> {
        self.probs
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }
}

/// Options for [`validate`].
#[derive(Debug, Clone, Copy)]
pub struct ValidateOptions<T> {
    pub tol: T,
    /// Clamp entries within `tol` of `[0, 1]` and rescale rows to sum to one.
    pub renormalize: bool,
}

impl<T: Real> Default for ValidateOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(DEFAULT_TOLERANCE),
            renormalize: false,
        }
    }
}

fn check_rectangular<T>(matrix: &[Vec<T>]) -> Result<(usize, usize)> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(Error::Empty);
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Ragged {
                row: i,
                expected: cols,
                found: row.len(),
            });
        }
    }
    Ok((rows, cols))
}

/// Checks that `matrix` is row-stochastic and builds a [`Channel`] from it.
pub fn validate<T: Real>(matrix: &[Vec<T>], opts: ValidateOptions<T>) -> Result<Channel<T>> {
    let (rows, cols) = check_rectangular(matrix)?;
    let tol = opts.tol;
    let mut data = Vec::with_capacity(rows * cols);
    for (x, row) in matrix.iter().enumerate() {
        let start = data.len();
        for (y, &v) in row.iter().enumerate() {
            check_finite(v, x, y)?;
            if v < -tol || (v < T::zero() && !opts.renormalize) {
                return Err(Error::NegativeEntry { x, y });
            }
            if v > T::one() + tol {
                return Err(Error::EntryAboveOne { x, y });
            }
            data.push(if opts.renormalize {
                v.max(T::zero()).min(T::one())
            } else {
                v
            });
        }
        let raw_sum: T = row.iter().copied().sum();
        if (raw_sum - T::one()).abs() > tol {
            return Err(Error::NonStochasticRow {
                index: x,
                sum: raw_sum.as_f64(),
            });
        }
        if opts.renormalize {
            let s: T = data[start..].iter().copied().sum();
            if s <= T::zero() {
                return Err(Error::ZeroRow(x));
            }
            for v in &mut data[start..] {
                *v = *v / s;
            }
        }
    }
    Ok(Channel {
        n_x: rows,
        n_y: cols,
        data,
    })
}

/// Discrete memoryless channel `p_{Y|X}`: one output distribution per input.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel<T> {
    n_x: usize,
    n_y: usize,
    data: Vec<T>,
}

impl<T: Real> Channel<T> {
    /// Builds a channel from rows with the default tolerance.
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        validate(&rows, ValidateOptions::default())
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = T::one();
        }
        Self {
            n_x: n,
            n_y: n,
            data,
        }
    }

    /// Channel whose rows are all uniform: the output carries no information.
    pub fn uniform(n_x: usize, n_y: usize) -> Self {
        let v = T::one() / T::from_count(n_y);
        Self {
            n_x,
            n_y,
            data: vec![v; n_x * n_y],
        }
    }

    /// Binary symmetric channel with the given crossover probability.
    pub fn binary_symmetric(crossover: T) -> Result<Self> {
        let e = crossover;
        Self::new(vec![vec![T::one() - e, e], vec![e, T::one() - e]])
    }

    pub(crate) fn from_raw(n_x: usize, n_y: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), n_x * n_y);
        Self { n_x, n_y, data }
    }

    #[inline]
    pub fn inputs(&self) -> usize {
        self.n_x
    }

    #[inline]
    pub fn outputs(&self) -> usize {
        self.n_y
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.n_x, self.n_y)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.data[x * self.n_y + y]
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[T] {
        &self.data[x * self.n_y..(x + 1) * self.n_y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks_exact(self.n_y)
    }

    pub fn row_distribution(&self, x: usize) -> Distribution<T> {
        Distribution::from_raw(self.row(x).to_vec())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        self.rows().map(<[T]>::to_vec).collect()
    }

    /// Output distribution `Σ_x p(x) w(y|x)`.
    pub fn output_distribution(&self, p: &Distribution<T>) -> Result<Distribution<T>> {
        if p.len() != self.n_x {
            return Err(Error::AlphabetMismatch {
                left: p.len(),
                right: self.n_x,
            });
        }
        let mut q = vec![T::zero(); self.n_y];
        for (x, row) in self.rows().enumerate() {
            let px = p.get(x);
            for (qy, &w) in q.iter_mut().zip(row) {
                *qy = *qy + px * w;
            }
        }
        Ok(Distribution::from_raw(q))
    }

    /// Sub-channel made of the listed input rows.
    pub(crate) fn select_rows(&self, xs: &[usize]) -> Self {
        let mut data = Vec::with_capacity(xs.len() * self.n_y);
        for &x in xs {
            data.extend_from_slice(self.row(x));
        }
        Self::from_raw(xs.len(), self.n_y, data)
    }
}

/// Probability matrix on `X × Y`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution<T> {
    n_x: usize,
    n_y: usize,
    data: Vec<T>,
}

impl<T: Real> JointDistribution<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::with_tolerance(&rows, T::lit(DEFAULT_TOLERANCE))
    }

    pub fn with_tolerance(rows: &[Vec<T>], tol: T) -> Result<Self> {
        let (n_x, n_y) = check_rectangular(rows)?;
        let mut data = Vec::with_capacity(n_x * n_y);
        for (x, row) in rows.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                check_finite(v, x, y)?;
                if v < T::zero() {
                    return Err(Error::NegativeEntry { x, y });
                }
                data.push(v);
            }
        }
        let sum: T = data.iter().copied().sum();
        if (sum - T::one()).abs() > tol {
            return Err(Error::NotNormalized { sum: sum.as_f64() });
        }
        Ok(Self { n_x, n_y, data })
    }

    /// `p(x) w(y|x)`.
    pub fn product(p: &Distribution<T>, w: &Channel<T>) -> Result<Self> {
        if p.len() != w.inputs() {
            return Err(Error::AlphabetMismatch {
                left: p.len(),
                right: w.inputs(),
            });
        }
        let mut data = Vec::with_capacity(w.inputs() * w.outputs());
        for (x, row) in w.rows().enumerate() {
            let px = p.get(x);
            data.extend(row.iter().map(|&v| px * v));
        }
        Ok(Self {
            n_x: w.inputs(),
            n_y: w.outputs(),
            data,
        })
    }

    pub fn uniform(n_x: usize, n_y: usize) -> Self {
        let v = T::one() / T::from_count(n_x * n_y);
        Self {
            n_x,
            n_y,
            data: vec![v; n_x * n_y],
        }
    }

    /// Normalizes log-weights over the whole matrix.
    pub(crate) fn from_log_weights(n_x: usize, n_y: usize, mut log_w: Vec<T>) -> Result<Self> {
        if !normalize_log_weights(&mut log_w) {
            return Err(Error::AllMassVanished);
        }
        Ok(Self {
            n_x,
            n_y,
            data: log_w,
        })
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.n_x, self.n_y)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.data[x * self.n_y + y]
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[T] {
        &self.data[x * self.n_y..(x + 1) * self.n_y]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.data.chunks_exact(self.n_y)
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn marginal_x(&self) -> Distribution<T> {
        Distribution::from_raw(self.rows().map(|r| r.iter().copied().sum()).collect())
    }

    pub fn marginal_y(&self) -> Distribution<T> {
        marginal_y(self)
    }

    pub fn conditional_y_given_x(&self) -> Channel<T> {
        conditional_y_given_x(self)
    }

    /// `q(x|y)`; columns without mass become uniform.
    pub fn conditional_x_given_y(&self) -> ReverseChannel<T> {
        let q_y = marginal_y(self);
        let uniform = T::one() / T::from_count(self.n_x);
        let mut data = self.data.clone();
        for y in 0..self.n_y {
            let s = q_y.get(y);
            for x in 0..self.n_x {
                let v = &mut data[x * self.n_y + y];
                *v = if s > T::zero() { *v / s } else { uniform };
            }
        }
        ReverseChannel::from_raw(self.n_x, self.n_y, data)
    }
}

/// Column sums `Σ_x q(x, y)`.
pub fn marginal_y<T: Real>(j: &JointDistribution<T>) -> Distribution<T> {
    let mut q = vec![T::zero(); j.n_y];
    for row in j.rows() {
        for (qy, &v) in q.iter_mut().zip(row) {
            *qy = *qy + v;
        }
    }
    Distribution::from_raw(q)
}

/// Row-normalized joint. Rows with zero mass are uniform over `Y`; they carry
/// no weight in any functional.
pub fn conditional_y_given_x<T: Real>(j: &JointDistribution<T>) -> Channel<T> {
    let uniform = T::one() / T::from_count(j.n_y);
    let mut data = Vec::with_capacity(j.data.len());
    for row in j.rows() {
        let s: T = row.iter().copied().sum();
        if s > T::zero() {
            data.extend(row.iter().map(|&v| v / s));
        } else {
            data.extend(std::iter::repeat_n(uniform, j.n_y));
        }
    }
    Channel::from_raw(j.n_x, j.n_y, data)
}

/// Conditional `r_{X|Y}(x|y)`: one distribution over `X` per output `y`.
///
/// Stored row-major by `x` so lookups line up with [`Channel`].
#[derive(Debug, Clone, PartialEq)]
pub struct ReverseChannel<T> {
    n_x: usize,
    n_y: usize,
    data: Vec<T>,
}

impl<T: Real> ReverseChannel<T> {
    /// Builds from per-`y` columns, each a distribution over `X`.
    pub fn from_columns(cols: Vec<Vec<T>>) -> Result<Self> {
        let (n_y, n_x) = check_rectangular(&cols)?;
        let mut data = vec![T::zero(); n_x * n_y];
        for (y, col) in cols.into_iter().enumerate() {
            let d = Distribution::new(col).map_err(|e| match e {
                Error::NotNormalized { sum } => Error::NonStochasticRow { index: y, sum },
                Error::NegativeEntry { y: x, .. } => Error::NegativeEntry { x, y },
                other => other,
            })?;
            for (x, &v) in d.probs().iter().enumerate() {
                data[x * n_y + y] = v;
            }
        }
        Ok(Self { n_x, n_y, data })
    }

    pub fn uniform(n_x: usize, n_y: usize) -> Self {
        let v = T::one() / T::from_count(n_x);
        Self {
            n_x,
            n_y,
            data: vec![v; n_x * n_y],
        }
    }

    /// Bayes posterior of the pair `(p, w)`. Columns with no mass are uniform.
    pub fn posterior(p: &Distribution<T>, w: &Channel<T>) -> Result<Self> {
        if p.len() != w.inputs() {
            return Err(Error::AlphabetMismatch {
                left: p.len(),
                right: w.inputs(),
            });
        }
        Ok(JointDistribution::product(p, w)?.conditional_x_given_y())
    }

    /// Builds from per-entry log-weights `ln r(x|y) + const(y)`, normalizing
    /// each column. Columns whose weights are all `-inf` become uniform.
    pub(crate) fn from_log_weights(n_x: usize, n_y: usize, mut log_w: Vec<T>) -> Self {
        let uniform = T::one() / T::from_count(n_x);
        let mut col = vec![T::zero(); n_x];
        for y in 0..n_y {
            for (x, c) in col.iter_mut().enumerate() {
                *c = log_w[x * n_y + y];
            }
            let ok = normalize_log_weights(&mut col);
            for (x, &c) in col.iter().enumerate() {
                log_w[x * n_y + y] = if ok { c } else { uniform };
            }
        }
        Self {
            n_x,
            n_y,
            data: log_w,
        }
    }

    pub(crate) fn from_raw(n_x: usize, n_y: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), n_x * n_y);
        Self { n_x, n_y, data }
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.n_x, self.n_y)
    }

    /// `r(x|y)`.
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.data[x * self.n_y + y]
    }

    /// Values `r(x|·)` for one input symbol, indexed by `y`.
    #[inline]
    pub fn input_row(&self, x: usize) -> &[T] {
        &self.data[x * self.n_y..(x + 1) * self.n_y]
    }

    /// Distribution `r(·|y)` over `X`.
    pub fn column(&self, y: usize) -> Distribution<T> {
        Distribution::from_raw((0..self.n_x).map(|x| self.get(x, y)).collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }
}
