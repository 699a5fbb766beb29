//! Seeded sampling. Every draw comes from a ChaCha stream keyed by
//! `(seed, index)`, so sample `i` is the same no matter how many samples are
//! taken or in which order they are evaluated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(index);
    r
}

/// Uniform point on the unit sphere of `R^dim` by normalising a Gaussian.
pub fn unit_vector<R: rand::Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    assert!(dim > 0, "sphere of dimension -1");
    loop {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

pub fn gaussian_vector<R: rand::Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| StandardNormal.sample(rng)).collect()
}
