//! Seeded sampling of bounded rationals and Lie algebra elements.
//!
//! Every named check draws from its own ChaCha stream, derived from the
//! global seed and the check name, so results do not depend on the order
//! in which checks run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dlinalg::DMatrix;
use crate::hermitian::{HermitianModule, LieBasis};
use crate::scalars::Rational;

pub const DEFAULT_BOUND: i64 = 10;

/// FNV-1a, used only to turn stream names into stream ids.
fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64, stream: &str, bound: i64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id(stream));
        Sampler { rng, bound: bound.max(1) }
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// `p/q` with `|p| ≤ bound` and `1 ≤ q ≤ bound`.
    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(-self.bound..=self.bound);
        let q = self.rng.gen_range(1..=self.bound);
        Rational::new(p, q)
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn rationals(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rational()).collect()
    }

    /// Coefficients where each slot is nonzero with probability `density`.
    pub fn sparse_rationals(&mut self, n: usize, density: f64) -> Vec<Rational> {
        (0..n)
            .map(|_| if self.rng.gen_bool(density) { self.nonzero_rational() } else { Rational::zero() })
            .collect()
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    /// A random combination of a Lie basis.
    pub fn lie_element(&mut self, module: &HermitianModule, basis: &LieBasis) -> DMatrix {
        let c = self.rationals(basis.len());
        basis.combine(module, &c)
    }

    pub fn combination(&mut self, elements: &[DMatrix], rows: usize, cols: usize, module: &HermitianModule) -> DMatrix {
        let mut z = DMatrix::zeros(module.algebra(), rows, cols);
        for b in elements {
            let c = self.rational();
            if !c.is_zero() {
                z = z.add(&b.scale(&c)).expect("same shape");
            }
        }
        z
    }

    /// A matrix with k-coordinates drawn independently.
    pub fn matrix(&mut self, module: &HermitianModule, rows: usize, cols: usize) -> DMatrix {
        let v = self.rationals(rows * cols * module.algebra().dim());
        DMatrix::unflatten_k(module.algebra(), rows, cols, &v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let mut a = Sampler::new(7, "x", 10);
        let mut b = Sampler::new(7, "x", 10);
        let mut c = Sampler::new(7, "y", 10);
        let ra = a.rationals(20);
        assert_eq!(ra, b.rationals(20));
        assert_ne!(ra, c.rationals(20));
        for r in ra {
            let (n, d) = (r.numer(), r.denom());
            assert!(n <= 10.into() && n >= (-10).into() && d <= 10.into());
        }
    }
}
