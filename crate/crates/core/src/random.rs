//! Seeded generators for reproducible randomized checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::lattice::LatticePoint;
use crate::scalar::Scalar;
use crate::solalg::{AlgebraElement, TorusFunction};

/// All randomness in the crate flows through one of these.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Uniform point of `[-radius, radius]ⁿ`.
    pub fn point(&mut self, n: usize, radius: i64) -> LatticePoint {
        LatticePoint::new((0..n).map(|_| self.rng.gen_range(-radius..=radius)))
    }

    pub fn nonzero_point(&mut self, n: usize, radius: i64) -> LatticePoint {
        loop {
            let p = self.point(n, radius);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// `p/q` with `p ∈ [-5, 5] \ {0}`, `q ∈ [1, 3]`.
    pub fn small_rational(&mut self) -> Scalar {
        let p = loop {
            let p = self.rng.gen_range(-5i64..=5);
            if p != 0 {
                break p;
            }
        };
        let q = self.rng.gen_range(1i64..=3);
        Scalar::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn algebra_element(&mut self, n: usize, radius: i64, max_terms: usize) -> AlgebraElement {
        let k = self.rng.gen_range(1..=max_terms);
        (0..k)
            .map(|_| (self.point(n, radius), self.small_rational()))
            .collect()
    }

    pub fn torus_function(&mut self, n: usize, radius: i64, max_terms: usize) -> TorusFunction {
        let k = self.rng.gen_range(1..=max_terms);
        (0..k)
            .map(|_| (self.point(n, radius), self.small_rational()))
            .collect()
    }

    /// A word of generator indices of length in `[0, max_len]`.
    pub fn word(&mut self, n: usize, radius: i64, max_len: usize) -> Vec<LatticePoint> {
        let len = self.rng.gen_range(0..=max_len);
        (0..len).map(|_| self.point(n, radius)).collect()
    }
}
