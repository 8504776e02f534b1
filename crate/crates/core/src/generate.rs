//! Seeded random point sets. The generator is ChaCha8, so a seed yields the
//! same points on every platform.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::metric::{EuclideanSpace, HammingSpace};

/// `n` distinct points drawn uniformly from the unit cube `[0, 1)^dim`.
pub fn random_euclidean(n: usize, dim: usize, seed: u64) -> Result<EuclideanSpace> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if dim == 0 {
        return Err(Error::Parameter("dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut rows = Vec::with_capacity(n);
    while rows.len() < n {
        let row: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>()).collect();
        let key: Vec<u64> = row.iter().map(|x| x.to_bits()).collect();
        if seen.insert(key) {
            rows.push(row);
        }
    }
    EuclideanSpace::new(dim, rows)
}

/// `n` distinct uniformly random bit strings of length `bits`.
pub fn random_hamming(n: usize, bits: usize, seed: u64) -> Result<HammingSpace> {
    if n == 0 {
        return Err(Error::EmptySpace);
    }
    if bits == 0 {
        return Err(Error::Parameter("bit length must be positive".into()));
    }
    if bits < 64 && n as u64 > 1u64 << bits {
        return Err(Error::Parameter(format!(
            "cannot draw {n} distinct strings of {bits} bits"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(n);
    let mut rows = Vec::with_capacity(n);
    while rows.len() < n {
        let row: Vec<bool> = (0..bits).map(|_| rng.gen::<bool>()).collect();
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    HammingSpace::new(bits, rows)
}
