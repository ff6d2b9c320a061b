//! Seeded random channels.
//!
//! Rows are drawn entry-wise from `U[0, 1)` with a ChaCha8 generator seeded
//! through `SeedableRng::seed_from_u64`, then normalized. The stream is fixed
//! by the `rand_chacha` algorithm, so a seed reproduces the same channel on
//! every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::prob::Channel;
use crate::scalar::Real;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Row-normalized uniform variates, as raw `f64` rows.
pub fn random_rows(rows: usize, cols: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidParameter(format!(
            "channel dimensions must be positive, got {rows}x{cols}"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut out = Vec::with_capacity(rows);
    for _ in 0..rows {
        let row = loop {
            let raw: Vec<f64> = (0..cols).map(|_| rng.random::<f64>()).collect();
            let s: f64 = raw.iter().sum();
            if s > 0.0 {
                break raw.into_iter().map(|v| v / s).collect::<Vec<_>>();
            }
        };
        out.push(row);
    }
    Ok(out)
}

pub fn random_channel<T: Real>(rows: usize, cols: usize, seed: u64) -> Result<Channel<T>> {
    let raw = random_rows(rows, cols, seed)?;
    let converted = raw
        .into_iter()
        .map(|r| r.into_iter().map(T::lit).collect())
        .collect();
    Channel::new(converted)
}
