//! Coefficient rings: Z, the localization Z_(p), and Z/p^m.
//!
//! Elements are plain values; the ring they live in is described by a
//! separate descriptor implementing [`CoeffRing`]. The prime is always
//! carried by the descriptor, never by global state.

use alloc::string::ToString;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Deterministic primality test by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The p-adic valuation of a nonzero integer.
pub fn vp(n: &BigInt, p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(k);
        }
        n = q;
        k += 1;
    }
}

/// An element of Z_(p): a reduced fraction whose denominator is positive and
/// prime to p.
///
/// Zero is always `0/1`. The prime itself is not stored; constructors that
/// can produce a non-unit denominator take it as an argument.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LocalizedRational {
    num: BigInt,
    den: BigInt,
}

impl LocalizedRational {
    pub fn new(num: BigInt, den: BigInt, p: u64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let q = Self::normalized(num, den);
        if (&q.den % BigInt::from(p)).is_zero() {
            return Err(Error::DenominatorNotUnit {
                denominator: q.den.to_string(),
                p,
            });
        }
        Ok(q)
    }

    pub fn from_integer(n: BigInt) -> Self {
        LocalizedRational {
            num: n,
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(BigInt::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    // Caller guarantees den != 0; unit-ness is inherited from the operands.
    fn normalized(mut num: BigInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Self::zero();
        }
        if !den.is_one() {
            let g = num.gcd(&den);
            if !g.is_one() {
                num /= &g;
                den /= &g;
            }
        }
        LocalizedRational { num, den }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }
}

impl fmt::Debug for LocalizedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LocalizedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Add for &LocalizedRational {
    type Output = LocalizedRational;

    fn add(self, rhs: &LocalizedRational) -> LocalizedRational {
        if self.den.is_one() && rhs.den.is_one() {
            return LocalizedRational::from_integer(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return LocalizedRational::normalized(&self.num + &rhs.num, self.den.clone());
        }
        LocalizedRational::normalized(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &LocalizedRational {
    type Output = LocalizedRational;

    fn sub(self, rhs: &LocalizedRational) -> LocalizedRational {
        self + &(-rhs)
    }
}

impl Neg for &LocalizedRational {
    type Output = LocalizedRational;

    fn neg(self) -> LocalizedRational {
        LocalizedRational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &LocalizedRational {
    type Output = LocalizedRational;

    fn mul(self, rhs: &LocalizedRational) -> LocalizedRational {
        if self.den.is_one() && rhs.den.is_one() {
            return LocalizedRational::from_integer(&self.num * &rhs.num);
        }
        LocalizedRational::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Returns `q / p`, failing when the numerator is not divisible by p.
pub fn divide_exact_by_p(q: &LocalizedRational, p: u64) -> Result<LocalizedRational> {
    if q.is_zero() {
        return Ok(LocalizedRational::zero());
    }
    let (quot, rem) = q.num.div_rem(&BigInt::from(p));
    if !rem.is_zero() {
        return Err(Error::NotDivisibleByP);
    }
    // den is prime to p, so the quotient stays reduced.
    Ok(LocalizedRational {
        num: quot,
        den: q.den.clone(),
    })
}

/// The ring Z/p^m.
///
/// Values are held in a `u64`; moduli up to 2^62 are supported so that sums
/// never overflow.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Modulus {
    p: u64,
    m: u32,
    n: u64,
}

const MAX_MODULUS: u64 = 1 << 62;

impl Modulus {
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = match p.checked_pow(m) {
            Some(n) if m >= 1 && n <= MAX_MODULUS => n,
            _ => return Err(Error::UnsupportedModulus { p, m }),
        };
        Ok(Modulus { p, m, n })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    /// p^m.
    pub fn value(&self) -> u64 {
        self.n
    }

    pub fn residue(&self, value: u64) -> Residue {
        Residue {
            value: value % self.n,
            modulus: *self,
        }
    }

    pub fn reduce_bigint(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.n))
            .to_u64()
            .expect("reduced value fits in u64")
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.n as i64) as u64
    }

    #[inline]
    pub fn add_raw(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn neg_raw(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }

    #[inline]
    pub fn sub_raw(&self, a: u64, b: u64) -> u64 {
        self.add_raw(a, self.neg_raw(b))
    }

    #[inline]
    pub fn mul_raw(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.n as u128) as u64
    }

    /// p-adic valuation of a reduced value, `None` for zero.
    pub fn valuation(&self, mut a: u64) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut k = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            k += 1;
        }
        Some(k)
    }

    /// p^k as an integer, for k ≤ m.
    pub fn pow_p(&self, k: u32) -> u64 {
        debug_assert!(k <= self.m);
        self.p.pow(k)
    }

    /// Inverse of a unit; `None` when `a` is divisible by p.
    pub fn inverse(&self, a: u64) -> Option<u64> {
        let (mut r0, mut r1) = (self.n as i128, (a % self.n) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(t0.rem_euclid(self.n as i128) as u64)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.m)
    }
}

/// An element of Z/p^m, always reduced into [0, p^m).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

impl Residue {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, rhs: &Residue) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "residues modulo different moduli"
        );
    }
}

impl fmt::Debug for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus.n)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Residue {
    type Output = Residue;

    fn add(self, rhs: Residue) -> Residue {
        self.check(&rhs);
        Residue {
            value: self.modulus.add_raw(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Sub for Residue {
    type Output = Residue;

    fn sub(self, rhs: Residue) -> Residue {
        self.check(&rhs);
        Residue {
            value: self.modulus.sub_raw(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

impl Neg for Residue {
    type Output = Residue;

    fn neg(self) -> Residue {
        Residue {
            value: self.modulus.neg_raw(self.value),
            modulus: self.modulus,
        }
    }
}

impl Mul for Residue {
    type Output = Residue;

    fn mul(self, rhs: Residue) -> Residue {
        self.check(&rhs);
        Residue {
            value: self.modulus.mul_raw(self.value, rhs.value),
            modulus: self.modulus,
        }
    }
}

/// The ring homomorphism Z_(p) → Z/p^m.
pub fn reduce_mod(q: &LocalizedRational, modulus: Modulus) -> Residue {
    let num = modulus.reduce_bigint(q.numer());
    let den = modulus.reduce_bigint(q.denom());
    let inv = modulus
        .inverse(den)
        .expect("denominator of a localized rational is a unit");
    modulus.residue(modulus.mul_raw(num, inv))
}

/// Descriptor of a commutative coefficient ring.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_integer(&self, n: &BigInt) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_integer(&BigInt::from(n))
    }

    /// Whether the canonical rendering of `a` starts with a minus sign.
    fn is_negative(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn fmt_elem(&self, a: &Self::Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result;

    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
}

/// Rings whose elements map into Z/p^m.
pub trait ToResidues: CoeffRing {
    fn to_residue(&self, a: &Self::Elem, modulus: Modulus) -> Residue;

    /// The element as an integer, if it is one.
    fn to_integer(&self, a: &Self::Elem) -> Option<BigInt>;
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    let t = s.trim();
    let digits = t.strip_prefix('-').unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse(alloc::format!("invalid integer {s:?}")));
    }
    t.parse::<BigInt>()
        .map_err(|_| Error::Parse(alloc::format!("invalid integer {s:?}")))
}

/// The integers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct IntegerRing;

impl CoeffRing for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }

    fn from_integer(&self, n: &BigInt) -> BigInt {
        n.clone()
    }

    fn is_negative(&self, a: &BigInt) -> bool {
        a.is_negative()
    }

    fn fmt_elem(&self, a: &BigInt, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }

    fn parse_elem(&self, s: &str) -> Result<BigInt> {
        parse_bigint(s)
    }
}

impl ToResidues for IntegerRing {
    fn to_residue(&self, a: &BigInt, modulus: Modulus) -> Residue {
        modulus.residue(modulus.reduce_bigint(a))
    }

    fn to_integer(&self, a: &BigInt) -> Option<BigInt> {
        Some(a.clone())
    }
}

/// The integers localized at a prime p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LocalRing {
    p: u64,
}

impl LocalRing {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(LocalRing { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn fraction(&self, num: i64, den: i64) -> Result<LocalizedRational> {
        LocalizedRational::new(BigInt::from(num), BigInt::from(den), self.p)
    }
}

impl CoeffRing for LocalRing {
    type Elem = LocalizedRational;

    fn zero(&self) -> LocalizedRational {
        LocalizedRational::zero()
    }

    fn one(&self) -> LocalizedRational {
        LocalizedRational::one()
    }

    fn is_zero(&self, a: &LocalizedRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &LocalizedRational, b: &LocalizedRational) -> LocalizedRational {
        a + b
    }

    fn neg(&self, a: &LocalizedRational) -> LocalizedRational {
        -a
    }

    fn sub(&self, a: &LocalizedRational, b: &LocalizedRational) -> LocalizedRational {
        a - b
    }

    fn mul(&self, a: &LocalizedRational, b: &LocalizedRational) -> LocalizedRational {
        a * b
    }

    fn add_assign(&self, a: &mut LocalizedRational, b: &LocalizedRational) {
        if a.den.is_one() && b.den.is_one() {
            a.num += &b.num;
            if a.num.is_zero() {
                *a = LocalizedRational::zero();
            }
        } else {
            *a = &*a + b;
        }
    }

    fn is_one(&self, a: &LocalizedRational) -> bool {
        a.num.is_one() && a.den.is_one()
    }

    fn from_integer(&self, n: &BigInt) -> LocalizedRational {
        LocalizedRational::from_integer(n.clone())
    }

    fn is_negative(&self, a: &LocalizedRational) -> bool {
        a.num.is_negative()
    }

    fn fmt_elem(&self, a: &LocalizedRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{a}")
    }

    fn parse_elem(&self, s: &str) -> Result<LocalizedRational> {
        match s.split_once('/') {
            Some((n, d)) => {
                let den = parse_bigint(d)?;
                if den.is_negative() {
                    return Err(Error::Parse(alloc::format!(
                        "negative denominator in {s:?}"
                    )));
                }
                LocalizedRational::new(parse_bigint(n)?, den, self.p)
            }
            None => Ok(LocalizedRational::from_integer(parse_bigint(s)?)),
        }
    }
}

impl ToResidues for LocalRing {
    fn to_residue(&self, a: &LocalizedRational, modulus: Modulus) -> Residue {
        debug_assert_eq!(self.p, modulus.prime());
        reduce_mod(a, modulus)
    }

    fn to_integer(&self, a: &LocalizedRational) -> Option<BigInt> {
        a.is_integral().then(|| a.num.clone())
    }
}

impl CoeffRing for Modulus {
    type Elem = Residue;

    fn zero(&self) -> Residue {
        self.residue(0)
    }

    fn one(&self) -> Residue {
        self.residue(1)
    }

    fn is_zero(&self, a: &Residue) -> bool {
        a.value == 0
    }

    fn add(&self, a: &Residue, b: &Residue) -> Residue {
        *a + *b
    }

    fn neg(&self, a: &Residue) -> Residue {
        -*a
    }

    fn sub(&self, a: &Residue, b: &Residue) -> Residue {
        *a - *b
    }

    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        *a * *b
    }

    fn is_one(&self, a: &Residue) -> bool {
        a.value == 1 % self.n
    }

    fn from_integer(&self, n: &BigInt) -> Residue {
        self.residue(self.reduce_bigint(n))
    }

    fn from_i64(&self, n: i64) -> Residue {
        self.residue(self.reduce_i64(n))
    }

    fn fmt_elem(&self, a: &Residue, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", a.value)
    }

    fn parse_elem(&self, s: &str) -> Result<Residue> {
        Ok(self.from_integer(&parse_bigint(s)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    // Independent oracle: count divisions in machine integers.
    fn vp_by_division(mut n: i64, p: i64) -> u32 {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        k
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(vp(&big(12), 2), Ok(2));
        assert_eq!(vp(&big(1), 5), Ok(0));
        assert_eq!(vp_by_division(250, 5), 3);
        assert_eq!(vp(&big(250), 5), Ok(3));
        assert_eq!(vp(&big(-8), 2), Ok(3));
        assert_eq!(vp(&big(0), 3), Err(Error::ZeroValuation));
        assert_eq!(vp(&big(9), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn primality() {
        let primes: alloc::vec::Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
    }

    #[test]
    fn localized_rational_normalizes() {
        let r = LocalRing::new(2).unwrap();
        let q = r.fraction(6, -9).unwrap();
        assert_eq!(q.numer(), &big(-2));
        assert_eq!(q.denom(), &big(3));
        assert_eq!(r.fraction(0, 7).unwrap(), LocalizedRational::zero());
        assert_eq!(r.fraction(1, 0), Err(Error::ZeroDenominator));
        assert!(matches!(
            r.fraction(1, 4),
            Err(Error::DenominatorNotUnit { p: 2, .. })
        ));
        // 2/4 reduces to 1/2, still not in Z_(2)
        assert!(r.fraction(2, 4).is_err());
        assert_eq!(
            r.fraction(4, 2).unwrap(),
            LocalizedRational::from_integer(big(2))
        );
    }

    #[test]
    fn exact_division_by_p() {
        let l3 = LocalRing::new(3).unwrap();
        let l2 = LocalRing::new(2).unwrap();
        assert_eq!(
            divide_exact_by_p(&l3.fraction(6, 1).unwrap(), 3).unwrap(),
            l3.fraction(2, 1).unwrap()
        );
        assert_eq!(
            divide_exact_by_p(&LocalizedRational::zero(), 2).unwrap(),
            LocalizedRational::zero()
        );
        let q = l2.fraction(4, 3).unwrap();
        let half = divide_exact_by_p(&q, 2).unwrap();
        assert_eq!(half, l2.fraction(2, 3).unwrap());
        assert_eq!(&half * &l2.fraction(2, 1).unwrap(), q);
        assert_eq!(
            divide_exact_by_p(&l2.fraction(3, 5).unwrap(), 2),
            Err(Error::NotDivisibleByP)
        );
    }

    #[test]
    fn reduction_examples() {
        let l2 = LocalRing::new(2).unwrap();
        let l5 = LocalRing::new(5).unwrap();
        let m4 = Modulus::new(2, 2).unwrap();
        let m8 = Modulus::new(2, 3).unwrap();
        let m5 = Modulus::new(5, 1).unwrap();
        assert_eq!(reduce_mod(&l2.fraction(5, 1).unwrap(), m4).value(), 1);
        // 3 * 3 = 9 = 1 mod 8
        assert_eq!(reduce_mod(&l2.fraction(1, 3).unwrap(), m8).value(), 3);
        assert_eq!(reduce_mod(&l5.fraction(0, 1).unwrap(), m5).value(), 0);
        assert_eq!(reduce_mod(&l2.fraction(-1, 3).unwrap(), m8).value(), 5);
    }

    #[test]
    fn modulus_validation() {
        assert_eq!(Modulus::new(4, 2), Err(Error::NotPrime(4)));
        assert!(Modulus::new(2, 0).is_err());
        assert!(Modulus::new(2, 62).is_ok());
        assert!(Modulus::new(2, 63).is_err());
        assert!(Modulus::new(3, 40).is_err());
        let m = Modulus::new(3, 3).unwrap();
        assert_eq!(m.inverse(2), Some(14));
        assert_eq!(m.inverse(6), None);
        assert_eq!(m.valuation(18), Some(2));
        assert_eq!(m.valuation(0), None);
    }

    #[test]
    fn parsing_coefficients() {
        let l3 = LocalRing::new(3).unwrap();
        assert_eq!(l3.parse_elem("-4/2").unwrap(), l3.fraction(-2, 1).unwrap());
        assert!(l3.parse_elem("1/3").is_err());
        assert!(l3.parse_elem("1/-2").is_err());
        assert!(l3.parse_elem("x").is_err());
        assert!(IntegerRing.parse_elem("+3").is_err());
        let m = Modulus::new(2, 3).unwrap();
        assert_eq!(m.parse_elem("-1").unwrap().value(), 7);
    }

    fn fraction_strategy(p: u64) -> impl Strategy<Value = LocalizedRational> {
        (-1000i64..1000, 1i64..60)
            .prop_filter("denominator prime to p", move |(_, d)| d % p as i64 != 0)
            .prop_map(move |(n, d)| LocalizedRational::new(big(n), big(d), p).unwrap())
    }

    proptest! {
        #[test]
        fn reduce_mod_is_a_ring_homomorphism(
            a in fraction_strategy(3),
            b in fraction_strategy(3),
            m in 1u32..6,
        ) {
            let modulus = Modulus::new(3, m).unwrap();
            let ra = reduce_mod(&a, modulus);
            let rb = reduce_mod(&b, modulus);
            prop_assert_eq!(reduce_mod(&(&a + &b), modulus), ra + rb);
            prop_assert_eq!(reduce_mod(&(&a * &b), modulus), ra * rb);
            prop_assert_eq!(reduce_mod(&(-&a), modulus), -ra);
        }

        #[test]
        fn divide_then_multiply_is_identity(a in fraction_strategy(5)) {
            let five = LocalizedRational::from_integer(big(5));
            let q = &a * &five;
            let back = divide_exact_by_p(&q, 5).unwrap();
            prop_assert_eq!(&back * &five, q);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn valuation_is_additive(a in 1i64..100_000, b in -100_000i64..-1) {
            for p in [2u64, 3, 5, 7] {
                let va = vp(&big(a), p).unwrap();
                let vb = vp(&big(b), p).unwrap();
                prop_assert_eq!(vp(&(big(a) * big(b)), p).unwrap(), va + vb);
                prop_assert_eq!(va, vp_by_division(a, p as i64));
            }
        }
    }
}
