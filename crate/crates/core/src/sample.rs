//! Seeded random polynomials for the identity suites.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;

use crate::coeff::{CoeffRing, IntegerRing, LocalRing, LocalizedRational};
use crate::poly::{Monomial, Polynomial};

/// Samples polynomials over Z_(p) with total degree ≤ 4, at most 6 terms,
/// numerators in [-9, 9] and denominators in {1, q}, where q is the
/// smallest integer ≥ 2 prime to p.
#[derive(Clone, Copy, Debug)]
pub struct PolySampler {
    ring: LocalRing,
    denominator: i64,
}

impl PolySampler {
    pub const MAX_DEGREE: u32 = 4;
    pub const MAX_TERMS: usize = 6;

    pub fn new(ring: LocalRing) -> Self {
        let p = ring.prime() as i64;
        let denominator = (2..).find(|q| q % p != 0).expect("some q is prime to p");
        PolySampler { ring, denominator }
    }

    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn sample<G: Rng + ?Sized>(&self, rng: &mut G) -> Polynomial<LocalRing> {
        let terms = rng.gen_range(0..=Self::MAX_TERMS);
        // Repeated monomials overwrite, so each coefficient stays in range.
        let mut chosen = BTreeMap::new();
        for _ in 0..terms {
            let degree = rng.gen_range(0..=Self::MAX_DEGREE);
            let i = rng.gen_range(0..=degree);
            let num = rng.gen_range(-9i64..=9);
            let den = if rng.gen_bool(0.5) {
                1
            } else {
                self.denominator
            };
            let c = LocalizedRational::new(BigInt::from(num), BigInt::from(den), self.ring.prime())
                .expect("denominator is a unit");
            chosen.insert(Monomial::new(i, degree - i), c);
        }
        Polynomial::from_terms(self.ring, chosen)
    }

    /// A sample with integer coefficients.
    pub fn sample_integral<G: Rng + ?Sized>(&self, rng: &mut G) -> Polynomial<LocalRing> {
        let f = self.sample(rng);
        let ring = self.ring;
        f.map_coefficients(ring, |c| ring.from_integer(c.numer()))
    }

    /// Σ h_i·g_i with independently sampled cofactors h_i.
    pub fn sample_combination<G: Rng + ?Sized>(
        &self,
        generators: &[Polynomial<IntegerRing>],
        rng: &mut G,
    ) -> Polynomial<LocalRing> {
        let mut out = Polynomial::zero(self.ring);
        for g in generators {
            out = &out + &(&self.sample(rng) * &g.to_local(self.ring));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_respect_bounds() {
        for p in [2u64, 3, 5] {
            let sampler = PolySampler::new(LocalRing::new(p).unwrap());
            assert_eq!(sampler.denominator(), if p == 2 { 3 } else { 2 });
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            let mut saw_fraction = false;
            for _ in 0..200 {
                let f = sampler.sample(&mut rng);
                assert!(f.len() <= PolySampler::MAX_TERMS);
                assert!(f.total_degree().unwrap_or(0) <= PolySampler::MAX_DEGREE);
                for (_, c) in f.terms() {
                    assert!(c.numer().magnitude() <= &9u32.into());
                    saw_fraction |= !c.is_integral();
                }
            }
            assert!(saw_fraction);
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let sampler = PolySampler::new(LocalRing::new(3).unwrap());
        let a: alloc::vec::Vec<_> = {
            let mut rng = ChaCha8Rng::seed_from_u64(42);
            (0..20).map(|_| sampler.sample(&mut rng)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for f in a {
            assert_eq!(f, sampler.sample(&mut rng));
        }
    }
}
