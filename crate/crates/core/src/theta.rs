//! The θ^p-ring structure on Z_(p)[x, y] and the integer family F_n.
//!
//! ψ^p is the substitution x ↦ x^p - p·y, y ↦ y^p and θ^p(f) = (f^p - ψ^p(f))/p.
//! F_n ∈ Z[s, t] is defined by F_0 = s and F_n = F_{n-1}^p - p·F_{n-1}(t, 0).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::coeff::{divide_exact_by_p, is_prime, vp, CoeffRing, IntegerRing, LocalRing};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// Operations relative to a fixed prime p, with a memo table for F_n.
///
/// The memo table only grows; computing a new F_n takes `&mut self`.
#[derive(Clone, Debug)]
pub struct ThetaContext {
    p: u64,
    local: LocalRing,
    family: Vec<Polynomial<IntegerRing>>,
}

impl ThetaContext {
    pub fn new(p: u64) -> Result<Self> {
        let local = LocalRing::new(p)?;
        Ok(ThetaContext {
            p,
            local,
            family: vec![Polynomial::x(IntegerRing)],
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn local_ring(&self) -> LocalRing {
        self.local
    }

    fn p_u32(&self) -> u32 {
        u32::try_from(self.p).expect("prime fits in u32")
    }

    /// ψ^p over any coefficient ring that receives the integers.
    pub fn psi<R: CoeffRing>(&self, f: &Polynomial<R>) -> Polynomial<R> {
        let ring = f.ring().clone();
        let p = self.p_u32();
        let sx = &Polynomial::monomial(ring.clone(), 1, p, 0)
            - &Polynomial::monomial(ring.clone(), self.p as i64, 0, 1);
        let sy = Polynomial::monomial(ring, 1, 0, p);
        f.substitute(&sx, &sy).expect("same ring")
    }

    /// The k-fold iterate of ψ^p.
    pub fn psi_iterate<R: CoeffRing>(&self, f: &Polynomial<R>, k: u32) -> Polynomial<R> {
        let mut out = f.clone();
        for _ in 0..k {
            out = self.psi(&out);
        }
        out
    }

    fn check_ring(&self, f: &Polynomial<LocalRing>) {
        assert_eq!(
            f.ring().prime(),
            self.p,
            "polynomial over Z_(q) with q != p"
        );
    }

    /// θ^p(f) = (f^p - ψ^p(f)) / p, with exact division on every coefficient.
    pub fn theta(&self, f: &Polynomial<LocalRing>) -> Result<Polynomial<LocalRing>> {
        self.check_ring(f);
        let diff = &f.pow(self.p) - &self.psi(f);
        let mut out = Polynomial::zero(self.local);
        for (m, c) in diff.terms() {
            let q = divide_exact_by_p(c, self.p).map_err(|_| Error::FrobeniusViolated)?;
            out.add_term(*m, &q);
        }
        Ok(out)
    }

    /// Whether ψ^p(f) ≡ f^p mod p, coefficientwise.
    pub fn check_frobenius_congruence(&self, f: &Polynomial<LocalRing>) -> bool {
        self.check_ring(f);
        let diff = &f.pow(self.p) - &self.psi(f);
        let ok = diff
            .terms()
            .all(|(_, c)| vp(c.numer(), self.p).is_ok_and(|v| v >= 1));
        ok
    }

    /// C(p, j)/p as an exact integer, computed as C(p-1, j-1)/j.
    fn binomial_over_p(&self, j: u64) -> BigInt {
        let c = binomial(self.p - 1, j - 1);
        let (q, r) = c.div_rem(&BigInt::from(j));
        assert!(r.is_zero(), "C(p-1, j-1) divisible by j for 0 < j < p");
        q
    }

    /// Checks the θ^p-ring identities on the pair (f, g).
    pub fn check_axioms(
        &self,
        f: &Polynomial<LocalRing>,
        g: &Polynomial<LocalRing>,
    ) -> AxiomReport {
        self.check_ring(f);
        self.check_ring(g);
        let ring = self.local;
        let mut report = AxiomReport::default();

        let one = Polynomial::one(ring);
        report.push(
            Identity::ThetaOfOne,
            self.theta(&one),
            Ok(Polynomial::zero(ring)),
        );

        let sum_rhs = (|| {
            let mut rhs = &self.theta(f)? + &self.theta(g)?;
            for j in 1..self.p {
                let c = ring.from_integer(&self.binomial_over_p(j));
                let term = &f.pow(j) * &g.pow(self.p - j);
                rhs = &rhs + &term.scale(&c);
            }
            Ok(rhs)
        })();
        report.push(Identity::ThetaOfSum, self.theta(&(f + g)), sum_rhs);

        let product_rhs =
            (|| Ok(&(&self.theta(f)? * &self.psi(g)) + &(&f.pow(self.p) * &self.theta(g)?)))();
        report.push(Identity::ThetaOfProduct, self.theta(&(f * g)), product_rhs);

        let psi_f = self.psi(f);
        let commute_rhs = self.theta(f).map(|t| self.psi(&t));
        report.push(Identity::ThetaPsiCommute, self.theta(&psi_f), commute_rhs);

        report.push(
            Identity::PsiAdditive,
            Ok(self.psi(&(f + g))),
            Ok(&psi_f + &self.psi(g)),
        );
        report.push(
            Identity::PsiMultiplicative,
            Ok(self.psi(&(f * g))),
            Ok(&psi_f * &self.psi(g)),
        );
        report
    }

    /// θ^p(p·b) = p^(p-1)·b^p - ψ^p(b).
    pub fn check_prop1(&self, b: &Polynomial<LocalRing>) -> Result<bool> {
        self.check_ring(b);
        let lhs = self.theta(&b.scale_i64(self.p as i64))?;
        let coeff = self
            .local
            .from_integer(&BigInt::from(self.p).pow(self.p_u32() - 1));
        let rhs = &b.pow(self.p).scale(&coeff) - &self.psi(b);
        Ok(lhs == rhs)
    }

    /// F_n(s, t), memoized. Rendered with `display_with(["s", "t"])`.
    pub fn family(&mut self, n: u32) -> &Polynomial<IntegerRing> {
        let n = n as usize;
        while self.family.len() <= n {
            let prev = self.family.last().expect("F_0 present");
            let at_t0 = prev
                .substitute(&Polynomial::y(IntegerRing), &Polynomial::zero(IntegerRing))
                .expect("same ring");
            let next = &prev.pow(self.p) - &at_t0.scale_i64(self.p as i64);
            let degree = self.p.pow(self.family.len() as u32);
            debug_assert_eq!(
                next.leading_term().map(|(m, c)| (*m, c.clone())),
                Some((Monomial::new(degree as u32, 0), BigInt::one())),
                "F_n is monic in s of degree p^n"
            );
            self.family.push(next);
        }
        &self.family[n]
    }

    /// F_n(s, t) = F_{n-1}(s^p - p·t, t^p).
    pub fn check_family_substitution(&mut self, n: u32) -> bool {
        assert!(n >= 1);
        let prev = self.family(n - 1).clone();
        let stepped = self.psi(&prev);
        *self.family(n) == stepped
    }

    /// F_n(s, t) ≡ F_{n-1}(s^p, t^p) mod p^n.
    pub fn check_family_power_congruence(&mut self, n: u32) -> bool {
        assert!(n >= 1);
        let p = self.p_u32();
        let inflated = self.family(n - 1).inflate(p);
        let diff = self.family(n) - &inflated;
        let ok = diff
            .terms()
            .all(|(_, c)| vp(c, self.p).is_ok_and(|v| v >= n));
        ok
    }

    /// F_e(t, 0) = t^(p^e) and θ^p(F_e(x, y)) = y^(p^e).
    pub fn check_family_diagonal(&mut self, e: u32) -> Result<bool> {
        let side = self.p.pow(e) as u32;
        let fe = self.family(e).clone();
        let diagonal = fe
            .substitute(&Polynomial::y(IntegerRing), &Polynomial::zero(IntegerRing))
            .expect("same ring");
        let theta = self.theta(&fe.to_local(self.local))?;
        Ok(diagonal == Polynomial::monomial(IntegerRing, 1, 0, side)
            && theta == Polynomial::monomial(self.local, 1, 0, side))
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// One of the identities checked by [`ThetaContext::check_axioms`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Identity {
    ThetaOfOne,
    ThetaOfSum,
    ThetaOfProduct,
    ThetaPsiCommute,
    PsiAdditive,
    PsiMultiplicative,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::ThetaOfOne,
        Identity::ThetaOfSum,
        Identity::ThetaOfProduct,
        Identity::ThetaPsiCommute,
        Identity::PsiAdditive,
        Identity::PsiMultiplicative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::ThetaOfOne => "theta(1) = 0",
            Identity::ThetaOfSum => "theta(f+g)",
            Identity::ThetaOfProduct => "theta(fg)",
            Identity::ThetaPsiCommute => "theta psi = psi theta",
            Identity::PsiAdditive => "psi(f+g)",
            Identity::PsiMultiplicative => "psi(fg)",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityFailure {
    pub identity: Identity,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of the six identity checks for one pair.
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub results: Vec<(Identity, bool)>,
    pub failures: Vec<IdentityFailure>,
    /// Number of θ^p evaluations that hit a non-divisible coefficient.
    pub division_errors: usize,
}

impl AxiomReport {
    fn push(
        &mut self,
        identity: Identity,
        lhs: Result<Polynomial<LocalRing>>,
        rhs: Result<Polynomial<LocalRing>>,
    ) {
        let render = |side: &Result<Polynomial<LocalRing>>| match side {
            Ok(p) => p.to_string(),
            Err(e) => format!("error: {e}"),
        };
        self.division_errors += usize::from(lhs.is_err()) + usize::from(rhs.is_err());
        let ok = matches!((&lhs, &rhs), (Ok(a), Ok(b)) if a == b);
        if !ok {
            self.failures.push(IdentityFailure {
                identity,
                lhs: render(&lhs),
                rhs: render(&rhs),
            });
        }
        self.results.push((identity, ok));
    }

    pub fn all_hold(&self) -> bool {
        self.results.len() == Identity::ALL.len() && self.results.iter().all(|(_, ok)| *ok)
    }
}

/// The exponent E with a^E = 0 for every a with n·a = 0 in a λ-ring:
/// the maximum of p^e + p^(e-1) over prime powers p^e dividing n exactly.
pub fn nilpotence_bound(n: i64) -> Result<u64> {
    if n == 0 {
        return Err(Error::NoTorsionBound);
    }
    let mut rest = n.unsigned_abs();
    let mut best = 1u64;
    let mut d = 2u64;
    while d.saturating_mul(d) <= rest {
        if rest.is_multiple_of(d) {
            let mut power = 1u64;
            while rest.is_multiple_of(d) {
                rest /= d;
                power *= d;
            }
            best = best.max(power + power / d);
        }
        d += 1;
    }
    if rest > 1 {
        debug_assert!(is_prime(rest));
        best = best.max(rest + 1);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::PolySampler;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn zpoly(s: &str) -> Polynomial<IntegerRing> {
        Polynomial::parse(IntegerRing, s).unwrap()
    }

    fn lpoly(p: u64, s: &str) -> Polynomial<LocalRing> {
        Polynomial::parse(LocalRing::new(p).unwrap(), s).unwrap()
    }

    #[test]
    fn psi_on_generators() {
        for p in [2u64, 3, 5] {
            let ctx = ThetaContext::new(p).unwrap();
            let psi_x = ctx.psi(&lpoly(p, "x"));
            assert_eq!(psi_x, lpoly(p, &format!("x^{p} - {p}*y")));
            assert_eq!(ctx.psi(&lpoly(p, "y")), lpoly(p, &format!("y^{p}")));
            assert_eq!(ctx.psi(&lpoly(p, "7/11")), lpoly(p, "7/11"));
            assert_eq!(ctx.psi_iterate(&lpoly(p, "x"), 0), lpoly(p, "x"));
            assert_eq!(ctx.psi_iterate(&lpoly(p, "x"), 1), psi_x);
        }
    }

    #[test]
    fn theta_examples() {
        for p in [2u64, 3, 5] {
            let ctx = ThetaContext::new(p).unwrap();
            assert_eq!(ctx.theta(&lpoly(p, "x")).unwrap(), lpoly(p, "y"));
            assert!(ctx.theta(&lpoly(p, "y")).unwrap().is_zero());
            let expected: BigInt = BigInt::from(p).pow(p as u32 - 1) - 1;
            assert_eq!(
                ctx.theta(&lpoly(p, &p.to_string())).unwrap(),
                lpoly(p, &expected.to_string())
            );
        }
    }

    #[test]
    fn frobenius_congruence_examples() {
        let ctx = ThetaContext::new(2).unwrap();
        assert!(ctx.check_frobenius_congruence(&lpoly(2, "x")));
        assert!(ctx.check_frobenius_congruence(&lpoly(2, "y")));
        assert!(ctx.check_frobenius_congruence(&lpoly(2, "3*x^4 - 2/3*x*y^2 + 5*y^3 + 1")));
    }

    #[test]
    fn prop1_examples() {
        let ctx = ThetaContext::new(2).unwrap();
        assert!(ctx.check_prop1(&lpoly(2, "0")).unwrap());
        // (4x^2 - ψ(2x))/2 = (4x^2 - 2x^2 + 4y)/2 = x^2 + 2y
        assert_eq!(ctx.theta(&lpoly(2, "2*x")).unwrap(), lpoly(2, "x^2 + 2*y"));
        assert!(ctx.check_prop1(&lpoly(2, "x")).unwrap());
    }

    #[test]
    fn axioms_on_simple_pairs() {
        for p in [2u64, 3, 5] {
            let ctx = ThetaContext::new(p).unwrap();
            let report = ctx.check_axioms(&lpoly(p, "x"), &lpoly(p, "y"));
            assert!(report.all_hold(), "{:?}", report.failures);
            let report = ctx.check_axioms(&lpoly(p, "0"), &lpoly(p, "0"));
            assert!(report.all_hold(), "{:?}", report.failures);
            assert_eq!(report.division_errors, 0);
        }
    }

    #[test]
    fn axioms_on_sampled_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5] {
            let ctx = ThetaContext::new(p).unwrap();
            let sampler = PolySampler::new(ctx.local_ring());
            for _ in 0..10 {
                let f = sampler.sample(&mut rng);
                let g = sampler.sample(&mut rng);
                let report = ctx.check_axioms(&f, &g);
                assert!(
                    report.all_hold(),
                    "p={p} f={f} g={g}: {:?}",
                    report.failures
                );
                assert!(ctx.check_prop1(&f).unwrap());
                assert!(ctx.check_frobenius_congruence(&f));
            }
        }
    }

    #[test]
    fn broken_identity_is_reported() {
        let mut report = AxiomReport::default();
        report.push(Identity::ThetaOfSum, Ok(lpoly(3, "x")), Ok(lpoly(3, "y")));
        report.push(
            Identity::ThetaOfOne,
            Err(Error::FrobeniusViolated),
            Ok(lpoly(3, "0")),
        );
        assert!(!report.all_hold());
        assert_eq!(report.division_errors, 1);
        assert_eq!(report.failures[0].lhs, "x");
        assert_eq!(report.failures[0].rhs, "y");
    }

    #[test]
    fn family_examples() {
        let mut ctx = ThetaContext::new(2).unwrap();
        assert_eq!(*ctx.family(0), zpoly("x"));
        assert_eq!(*ctx.family(1), zpoly("x^2 - 2*y"));
        // (s^2 - 2t)^2 - 2t^2 = s^4 - 4s^2t + 2t^2
        assert_eq!(*ctx.family(2), zpoly("x^4 - 4*x^2*y + 2*y^2"));
        assert_eq!(
            ctx.family(2).display_with(["s", "t"]).to_string(),
            "s^4 - 4*s^2*t + 2*t^2"
        );
        let mut ctx3 = ThetaContext::new(3).unwrap();
        assert_eq!(*ctx3.family(1), zpoly("x^3 - 3*y"));
    }

    #[test]
    fn family_lemmas() {
        let mut ctx = ThetaContext::new(2).unwrap();
        assert!(ctx.check_family_substitution(1));
        assert!(ctx.check_family_substitution(2));
        assert!(ctx.check_family_power_congruence(1));
        // F_2 - F_1(s^2, t^2) = -4 s^2 t + 4 t^2
        let inflated = ctx.family(1).inflate(2);
        let diff = ctx.family(2) - &inflated;
        assert_eq!(diff, zpoly("-4*x^2*y + 4*y^2"));
        assert!(ctx.check_family_power_congruence(2));

        let mut ctx3 = ThetaContext::new(3).unwrap();
        assert!(ctx3.check_family_substitution(4));
        assert!(ctx3.check_family_power_congruence(3));
    }

    #[test]
    fn power_congruence_detects_a_wrong_family() {
        let mut ctx = ThetaContext::new(3).unwrap();
        ctx.family(2);
        ctx.family[2] = &ctx.family[2] + &zpoly("3*y^3");
        assert!(!ctx.check_family_power_congruence(2));
        assert!(!ctx.check_family_substitution(2));
    }

    #[test]
    fn family_diagonal() {
        let mut ctx = ThetaContext::new(2).unwrap();
        assert!(ctx.check_family_diagonal(0).unwrap());
        // θ(x^2 - 2y) = ((x^2-2y)^2 - F_2)/2 = y^2
        assert_eq!(ctx.theta(&lpoly(2, "x^2 - 2*y")).unwrap(), lpoly(2, "y^2"));
        assert!(ctx.check_family_diagonal(1).unwrap());
        let mut ctx3 = ThetaContext::new(3).unwrap();
        assert!(ctx3.check_family_diagonal(2).unwrap());
    }

    // Oracle: enumerate all prime powers dividing n.
    fn bound_by_enumeration(n: i64) -> u64 {
        let n = n.unsigned_abs();
        let mut best = 1;
        for p in 2..=n {
            if !is_prime(p) {
                continue;
            }
            let mut q = p;
            while n.is_multiple_of(q) {
                best = best.max(q + q / p);
                q *= p;
            }
        }
        best
    }

    #[test]
    fn nilpotence_bound_examples() {
        assert_eq!(nilpotence_bound(2), Ok(3));
        assert_eq!(bound_by_enumeration(12), 6);
        assert_eq!(nilpotence_bound(12), Ok(6));
        assert_eq!(nilpotence_bound(-12), Ok(6));
        assert_eq!(nilpotence_bound(1), Ok(1));
        assert_eq!(nilpotence_bound(-1), Ok(1));
        assert_eq!(nilpotence_bound(0), Err(Error::NoTorsionBound));
        for (p, e) in [(2u64, 1u32), (2, 5), (3, 3), (5, 2), (7, 1)] {
            let n = p.pow(e);
            assert_eq!(nilpotence_bound(n as i64), Ok(n + n / p));
        }
        for n in 2..500 {
            assert_eq!(nilpotence_bound(n), Ok(bound_by_enumeration(n)), "n={n}");
        }
    }

    #[test]
    fn binomials_over_p() {
        let ctx = ThetaContext::new(5).unwrap();
        let got: Vec<BigInt> = (1..5).map(|j| ctx.binomial_over_p(j)).collect();
        assert_eq!(got, [1, 2, 2, 1].map(BigInt::from));
    }
}
