//! Deterministic pseudo-random elements for map-equality checks.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::GroupElement;
use crate::graded::GradedRing;
use crate::poly::{Polynomial, Rational};
use crate::potion::{PotionElement, PotionRing};

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_SAMPLES: usize = 20;

pub struct Sampler {
    rng: ChaCha8Rng,
    max_exponent: u32,
    max_terms: usize,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_exponent: 2,
            max_terms: 3,
        }
    }

    /// Caps the exponent of each generator in sampled denominators.
    pub fn with_max_exponent(mut self, e: u32) -> Self {
        self.max_exponent = e;
        self
    }

    pub fn coefficient(&mut self) -> Rational {
        let n: i64 = self.rng.random_range(-4..=4);
        let d: i64 = if self.rng.random_bool(0.25) { 2 } else { 1 };
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn nonzero_coefficient(&mut self) -> Rational {
        loop {
            let c = self.coefficient();
            if c != Rational::from_integer(0.into()) {
                return c;
            }
        }
    }

    /// Random combination of monomials of degree `degree` and total degree at most `bound`.
    pub fn homogeneous(&mut self, ring: &GradedRing, degree: &GroupElement, bound: u32) -> Polynomial {
        let monomials = ring.monomials_of_degree(degree, bound);
        let mut p = ring.zero();
        if monomials.is_empty() {
            return p;
        }
        let k = self.rng.random_range(1..=self.max_terms);
        for _ in 0..k {
            let m = monomials[self.rng.random_range(0..monomials.len())].clone();
            p = &p + &Polynomial::term(m, self.nonzero_coefficient());
        }
        p
    }

    pub fn witness(&mut self, len: usize) -> Vec<u32> {
        (0..len).map(|_| self.rng.random_range(0..=self.max_exponent)).collect()
    }

    /// A random fraction: random denominator in `S`, random numerator of its degree.
    pub fn potion_element(&mut self, ring: &Arc<PotionRing>) -> PotionElement {
        let witness = self.witness(ring.submonoid().len());
        let den = ring.submonoid().element(&witness).expect("witness length");
        let bound = den.poly().total_degree() as u32;
        let num = self.homogeneous(ring.ring(), den.degree(), bound);
        ring.fraction(num, witness).expect("sampled numerator has the right degree")
    }

    pub fn potion_elements(&mut self, ring: &Arc<PotionRing>, n: usize) -> Vec<PotionElement> {
        (0..n).map(|_| self.potion_element(ring)).collect()
    }
}
