#![allow(dead_code)]

use alphacap::generate::random_rows;
use alphacap::{Alpha, Channel, Distribution, ReverseChannel};

pub fn channel(n_x: usize, n_y: usize, seed: u64) -> Channel<f64> {
    Channel::new(random_rows(n_x, n_y, seed).unwrap()).unwrap()
}

pub fn dist(n: usize, seed: u64) -> Distribution<f64> {
    Distribution::new(random_rows(1, n, seed).unwrap().remove(0)).unwrap()
}

pub fn reverse(n_x: usize, n_y: usize, seed: u64) -> ReverseChannel<f64> {
    ReverseChannel::from_columns(random_rows(n_y, n_x, seed).unwrap()).unwrap()
}

pub fn alpha(v: f64) -> Alpha<f64> {
    Alpha::new(v).unwrap()
}

/// The 3×3 benchmark channel, entries given to three decimals.
pub fn example_channel() -> Channel<f64> {
    Channel::new(vec![
        vec![0.259, 0.463, 0.278],
        vec![0.328, 0.172, 0.500],
        vec![0.425, 0.225, 0.350],
    ])
    .unwrap()
}
