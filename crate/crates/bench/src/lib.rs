//! Seeded workloads for the benchmarks.

use bcncat_core::{Bcn, BoolMatrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Random BCN with `n` state and `m` input variables.
pub fn random_bcn(n: usize, m: usize, seed: u64) -> Bcn {
    let mut rng = StdRng::seed_from_u64(seed);
    let states = 1usize << n;
    let cols = (0..states << m).map(|_| rng.gen_range(1..=states)).collect();
    Bcn::from_delta(n, m, cols).expect("valid columns")
}

/// Square Boolean matrix with each entry set with probability `density`.
pub fn random_matrix(dim: usize, density: f64, seed: u64) -> BoolMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    BoolMatrix::from_fn(dim, dim, |_, _| rng.gen_bool(density))
}
