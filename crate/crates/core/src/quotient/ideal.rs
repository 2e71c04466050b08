use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::coeff::IntegerRing;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::theta::ThetaContext;

/// Generators of J over Z: `generators()[n]` is p^(e-n)·F_n(x, y) for
/// n ≤ e, and the last one is y^(p^e).
#[derive(Clone, Debug)]
pub struct IdealSpec {
    p: u64,
    e: u32,
    side: u32,
    generators: Vec<Polynomial<IntegerRing>>,
}

impl IdealSpec {
    /// Largest supported p^e; the span has (p^e)^2 coordinates.
    pub const MAX_SIDE: u64 = 1 << 15;

    pub fn new(ctx: &mut ThetaContext, e: u32) -> Result<Self> {
        let p = ctx.prime();
        if e == 0 {
            return Err(Error::InvalidArgument("e must be positive".into()));
        }
        let side = match p.checked_pow(e) {
            Some(s) if s <= Self::MAX_SIDE => s as u32,
            _ => {
                return Err(Error::InvalidArgument(alloc::format!(
                    "{p}^{e} is too large"
                )))
            }
        };
        let mut generators = Vec::with_capacity(e as usize + 2);
        for n in 0..=e {
            let scale = BigInt::from(p).pow(e - n);
            generators.push(ctx.family(n).scale(&scale));
        }
        generators.push(Polynomial::monomial(IntegerRing, 1, 0, side));
        Ok(IdealSpec {
            p,
            e,
            side,
            generators,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// p^e.
    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn generators(&self) -> &[Polynomial<IntegerRing>] {
        &self.generators
    }

    /// Index of F_e.
    pub fn monic_index(&self) -> usize {
        self.e as usize
    }

    /// Index of y^(p^e).
    pub fn y_power_index(&self) -> usize {
        self.e as usize + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use num_traits::One;

    #[test]
    fn generators_for_small_cases() {
        let mut ctx = ThetaContext::new(2).unwrap();
        let ideal = IdealSpec::new(&mut ctx, 1).unwrap();
        let text: Vec<_> = ideal
            .generators()
            .iter()
            .map(|g| alloc::format!("{g}"))
            .collect();
        assert_eq!(text, ["2*x", "x^2 - 2*y", "y^2"]);

        let ideal = IdealSpec::new(&mut ctx, 2).unwrap();
        let text: Vec<_> = ideal
            .generators()
            .iter()
            .map(|g| alloc::format!("{g}"))
            .collect();
        assert_eq!(text, ["4*x", "2*x^2 - 4*y", "x^4 - 4*x^2*y + 2*y^2", "y^4"]);
        assert!(IdealSpec::new(&mut ctx, 0).is_err());
    }

    #[test]
    fn monic_generator_shape() {
        for (p, e) in [(2u64, 3u32), (3, 2), (5, 1)] {
            let mut ctx = ThetaContext::new(p).unwrap();
            let ideal = IdealSpec::new(&mut ctx, e).unwrap();
            assert_eq!(ideal.generators().len(), e as usize + 2);
            let fe = &ideal.generators()[ideal.monic_index()];
            let (lead, c) = fe.leading_term().unwrap();
            assert_eq!(*lead, Monomial::new(ideal.side(), 0));
            assert!(c.is_one());
            assert!(fe.terms().skip(1).all(|(m, _)| m.x < ideal.side()));
        }
    }
}
