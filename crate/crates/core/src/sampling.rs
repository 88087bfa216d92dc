//! Seeded random draws for test points and coefficients.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::Bicomplex;

pub const DEFAULT_SEED: u64 = 0x5EED_B1C0_F3A7_0001;

/// Deterministic generator for points, coefficients and phases.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: SplitMix64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// Integer uniform in `0..=max`.
    pub fn index(&mut self, max: usize) -> usize {
        self.rng.gen_range(0..=max)
    }

    pub fn point(&mut self, dim: usize, lo: f64, hi: f64) -> Vec<f64> {
        (0..dim).map(|_| self.uniform(lo, hi)).collect()
    }

    /// Complex number with independent uniform parts in `[−r, r)`.
    pub fn complex(&mut self, r: f64) -> Complex64 {
        Complex64::new(self.uniform(-r, r), self.uniform(-r, r))
    }

    /// Complex number with modulus uniform in `[lo, hi)` and uniform phase.
    pub fn complex_annulus(&mut self, lo: f64, hi: f64) -> Complex64 {
        Complex64::from_polar(self.uniform(lo, hi), self.uniform(0.0, std::f64::consts::TAU))
    }

    pub fn bicomplex(&mut self, r: f64) -> Bicomplex {
        Bicomplex::new(self.complex(r), self.complex(r))
    }

    /// Bicomplex number whose companion coordinates both lie in the annulus.
    pub fn bicomplex_annulus(&mut self, lo: f64, hi: f64) -> Bicomplex {
        Bicomplex::new(self.complex_annulus(lo, hi), self.complex_annulus(lo, hi))
    }
}

impl Default for Sampler {
    fn default() -> Self {
        Self::new(DEFAULT_SEED)
    }
}
