use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{IntegerRing, Modulus};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::quotient::rewrite::RewriteSystem;
use crate::quotient::IdealSpec;
use crate::theta::ThetaContext;

const MAX_ELEMENTS: usize = 1 << 20;

/// Decides membership by listing every element of T = red(J mod p^m).
///
/// The listing closes the reduced generators under addition and under
/// multiplication by x and y computed on polynomials, with no Howell
/// machinery. Only instances with p^(2e) ≤ 16 and p^m ≤ 16 are accepted.
pub fn brute_force_membership_oracle(
    p: u64,
    e: u32,
    m: u32,
    f: &Polynomial<IntegerRing>,
) -> Result<bool> {
    let small = |base: u64, exp: u32| base.checked_pow(exp).is_some_and(|v| v <= 16);
    if !small(p, 2 * e) || !small(p, m) {
        return Err(Error::OracleTooLarge);
    }
    let modulus = Modulus::new(p, m)?;
    let mut ctx = ThetaContext::new(p)?;
    let ideal = IdealSpec::new(&mut ctx, e)?;
    let rs = RewriteSystem::new(&ideal, modulus);
    let red = |g: &Polynomial<Modulus>| rs.reduce(g).vector.into_entries();
    let x = Polynomial::x(modulus);
    let y = Polynomial::y(modulus);
    let shifted = |v: &Vec<u64>, var: &Polynomial<Modulus>| {
        red(&(var * &rs.span_vector(v.clone()).to_polynomial()))
    };

    let mut gens: Vec<Vec<u64>> = ideal
        .generators()
        .iter()
        .map(|g| red(&g.to_residues(modulus)))
        .filter(|v| v.iter().any(|&a| a != 0))
        .collect();
    loop {
        let span = additive_span(modulus, &gens)?;
        let missing: Vec<Vec<u64>> = gens
            .iter()
            .flat_map(|g| [shifted(g, &x), shifted(g, &y)])
            .filter(|v| !span.contains(v))
            .collect();
        if missing.is_empty() {
            return Ok(span.contains(&red(&f.to_residues(modulus))));
        }
        gens.extend(missing);
    }
}

fn additive_span(modulus: Modulus, gens: &[Vec<u64>]) -> Result<BTreeSet<Vec<u64>>> {
    let dim = gens.first().map_or(0, Vec::len);
    let zero = vec![0u64; dim];
    let mut span = BTreeSet::new();
    span.insert(zero.clone());
    let mut frontier = vec![zero];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w: Vec<u64> = v
                .iter()
                .zip(g)
                .map(|(a, b)| modulus.add_raw(*a, *b))
                .collect();
            if span.insert(w.clone()) {
                if span.len() > MAX_ELEMENTS {
                    return Err(Error::OracleTooLarge);
                }
                frontier.push(w);
            }
        }
    }
    Ok(span)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x_power(n: u32) -> Polynomial<IntegerRing> {
        Polynomial::monomial(IntegerRing, 1, n, 0)
    }

    #[test]
    fn examples() {
        assert!(brute_force_membership_oracle(2, 1, 2, &x_power(3)).unwrap());
        assert!(!brute_force_membership_oracle(2, 1, 2, &x_power(2)).unwrap());
        assert!(!brute_force_membership_oracle(3, 1, 2, &x_power(3)).unwrap());
        let two_y = Polynomial::monomial(IntegerRing, 2, 0, 1);
        let four_y = Polynomial::monomial(IntegerRing, 4, 0, 1);
        assert!(!brute_force_membership_oracle(2, 1, 3, &two_y).unwrap());
        assert!(brute_force_membership_oracle(2, 1, 3, &four_y).unwrap());
    }

    #[test]
    fn guard() {
        assert_eq!(
            brute_force_membership_oracle(5, 1, 1, &x_power(1)),
            Err(Error::OracleTooLarge)
        );
        assert_eq!(
            brute_force_membership_oracle(2, 1, 5, &x_power(1)),
            Err(Error::OracleTooLarge)
        );
    }
}
