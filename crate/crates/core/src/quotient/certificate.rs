use alloc::vec::Vec;

use crate::coeff::{IntegerRing, Modulus};
use crate::poly::Polynomial;
use crate::quotient::IdealSpec;
use crate::theta::ThetaContext;

/// Cofactors exhibiting `target ≡ Σ h_i·g_i (mod p^m)`, where g_i are the
/// generators of J for (p, e).
///
/// Cofactors are lifted to Z with coefficients in [0, p^m).
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub p: u64,
    pub e: u32,
    pub m: u32,
    pub target: Polynomial<IntegerRing>,
    /// (generator index, cofactor) pairs.
    pub cofactors: Vec<(usize, Polynomial<IntegerRing>)>,
}

impl Certificate {
    /// Σ h_i·g_i over Z.
    pub fn expand(
        &self,
        generators: &[Polynomial<IntegerRing>],
    ) -> Option<Polynomial<IntegerRing>> {
        let mut sum = Polynomial::zero(IntegerRing);
        for (i, h) in &self.cofactors {
            sum = &sum + &(h * generators.get(*i)?);
        }
        Some(sum)
    }
}

/// Checks a certificate by direct expansion. The generators are rebuilt from
/// (p, e); nothing from the membership engine is consulted.
pub fn verify_certificate(c: &Certificate) -> bool {
    let Ok(modulus) = Modulus::new(c.p, c.m) else {
        return false;
    };
    let Ok(mut ctx) = ThetaContext::new(c.p) else {
        return false;
    };
    let Ok(ideal) = IdealSpec::new(&mut ctx, c.e) else {
        return false;
    };
    match c.expand(ideal.generators()) {
        Some(sum) => (&sum - &c.target).to_residues(modulus).is_zero(),
        None => false,
    }
}
