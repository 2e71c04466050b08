use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::coeff::{CoeffRing, IntegerRing, LocalRing, Modulus, ToResidues};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::quotient::certificate::verify_certificate;
use crate::quotient::module::{Membership, MembershipModule};
use crate::quotient::IdealSpec;
use crate::theta::ThetaContext;

/// A = Z/p^m[x, y]/J for fixed (p, e, m), with a = class of x.
///
/// The statements checked here hold over Z_(p); only their images modulo
/// p^m are verified.
#[derive(Clone, Debug)]
pub struct ExampleRing {
    ctx: ThetaContext,
    ideal: IdealSpec,
    module: MembershipModule,
    family: Vec<Polynomial<IntegerRing>>,
}

impl ExampleRing {
    pub fn new(p: u64, e: u32, m: u32) -> Result<Self> {
        let modulus = Modulus::new(p, m)?;
        let mut ctx = ThetaContext::new(p)?;
        let ideal = IdealSpec::new(&mut ctx, e)?;
        let family = (0..=e + 1).map(|n| ctx.family(n).clone()).collect();
        let module = MembershipModule::build(&ideal, modulus);
        Ok(ExampleRing {
            ctx,
            ideal,
            module,
            family,
        })
    }

    pub fn context(&self) -> &ThetaContext {
        &self.ctx
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn module(&self) -> &MembershipModule {
        &self.module
    }

    pub fn modulus(&self) -> Modulus {
        self.module.modulus()
    }

    fn p(&self) -> u64 {
        self.ideal.prime()
    }

    fn e(&self) -> u32 {
        self.ideal.e()
    }

    /// p^e + p^(e-1).
    pub fn nilpotence_exponent(&self) -> u64 {
        torsion_exponent(self.p(), self.e())
    }

    pub fn is_member<R: ToResidues>(&self, f: &Polynomial<R>) -> Membership {
        self.module.is_member(f)
    }

    /// a^(p^e + p^(e-1)) = 0.
    pub fn verify_nilpotence(&self) -> Membership {
        let n = self.nilpotence_exponent();
        let vector = self.module.reduced_x_power(n);
        let target = Polynomial::monomial(IntegerRing, 1, n as u32, 0);
        let reduced = target.to_residues(self.modulus());
        self.module.decide(target, &reduced, &vector)
    }

    fn x_image(&self, k: u32) -> Polynomial<IntegerRing> {
        self.ctx.psi_iterate(&Polynomial::x(IntegerRing), k)
    }

    /// p^(e-k)·ψ^(p^k)(a) = 0.
    pub fn verify_prop2(&self, k: u32) -> Result<Membership> {
        if k > self.e() {
            return Err(Error::InvalidArgument(alloc::format!("k = {k} exceeds e")));
        }
        let scale = BigInt::from(self.p()).pow(self.e() - k);
        Ok(self.is_member(&self.x_image(k).scale(&scale)))
    }

    /// a^(p^e + p^(e-1)) = ψ^(p^k)(a^(p^(e-k) + p^(e-k-1))).
    pub fn verify_prop3(&self, k: u32) -> Result<Membership> {
        if k >= self.e() {
            return Err(Error::InvalidArgument(alloc::format!(
                "k = {k} must be below e"
            )));
        }
        let lhs = Polynomial::monomial(IntegerRing, 1, self.nilpotence_exponent() as u32, 0);
        let rhs = self
            .x_image(k)
            .pow(torsion_exponent(self.p(), self.e() - k));
        Ok(self.is_member(&(&lhs - &rhs)))
    }

    /// For 1 ≤ k ≤ e, the torsion element b = p^(e-k)·a has p^k·b = 0, so
    /// b^(p^k + p^(k-1)) = 0.
    pub fn verify_torsion_powers(&self) -> Vec<(u32, Membership)> {
        (1..=self.e())
            .map(|k| {
                let n = torsion_exponent(self.p(), k);
                let scale = BigInt::from(self.p()).pow((self.e() - k) * n as u32);
                let target = Polynomial::term(IntegerRing, scale, Monomial::new(n as u32, 0));
                (k, self.is_member(&target))
            })
            .collect()
    }

    /// θ^p and ψ^p map every generator of J into J.
    pub fn check_theta_stability(&self) -> Result<StabilityReport> {
        let ring = self.ctx.local_ring();
        let p = self.p();
        let e = self.e();
        let gens: Vec<Polynomial<LocalRing>> = self
            .ideal
            .generators()
            .iter()
            .map(|g| g.to_local(ring))
            .collect();
        let mut theta_images = Vec::new();
        let mut psi_images = Vec::new();
        for g in &gens {
            theta_images.push(self.is_member(&self.ctx.theta(g)?));
            psi_images.push(self.is_member(&self.ctx.psi(g)));
        }
        let side = self.ideal.side();
        let monic_identity = self.ctx.theta(&gens[self.ideal.monic_index()])?
            == Polynomial::monomial(ring, 1, 0, side);
        let y_power_identity = self.ctx.theta(&gens[self.ideal.y_power_index()])?.is_zero();

        // θ(p^(e-n)F_n) = p^((e-n)p-1)·F_n^p - p^(e-n-1)·F_(n+1) for n < e.
        let mut scaled_identities = Vec::new();
        for n in 0..e {
            let family = |k: u32| self.family[k as usize].to_local(ring);
            let c1 = ring.from_integer(&BigInt::from(p).pow((e - n) * p as u32 - 1));
            let c2 = ring.from_integer(&BigInt::from(p).pow(e - n - 1));
            let rhs = &family(n).pow(p).scale(&c1) - &family(n + 1).scale(&c2);
            scaled_identities.push(self.ctx.theta(&gens[n as usize])? == rhs);
        }
        Ok(StabilityReport {
            theta_images,
            psi_images,
            monic_identity,
            y_power_identity,
            scaled_identities,
        })
    }
}

/// p^k + p^(k-1).
fn torsion_exponent(p: u64, k: u32) -> u64 {
    p.pow(k) + p.pow(k - 1)
}

/// Result of [`ExampleRing::check_theta_stability`].
#[derive(Clone, Debug)]
pub struct StabilityReport {
    /// Membership of θ^p(g_i), per generator.
    pub theta_images: Vec<Membership>,
    /// Membership of ψ^p(g_i), per generator.
    pub psi_images: Vec<Membership>,
    /// θ^p(F_e) = y^(p^e) exactly.
    pub monic_identity: bool,
    /// θ^p(y^(p^e)) = 0 exactly.
    pub y_power_identity: bool,
    /// The exact formula for θ^p(p^(e-n)·F_n), n < e.
    pub scaled_identities: Vec<bool>,
}

impl StabilityReport {
    pub fn passed(&self) -> bool {
        let members_ok = self
            .theta_images
            .iter()
            .chain(&self.psi_images)
            .all(|m| m.certificate().is_some_and(verify_certificate));
        members_ok
            && self.monic_identity
            && self.y_power_identity
            && self.scaled_identities.iter().all(|ok| *ok)
    }
}

/// a^(p^e + p^(e-1) - 1) ≠ 0 modulo p^(e+1). The answer is a non-member
/// result carrying the residue witness when the bound is sharp.
pub fn verify_sharpness(p: u64, e: u32) -> Result<Membership> {
    let ring = ExampleRing::new(p, e, e + 1)?;
    let n = ring.nilpotence_exponent() - 1;
    Ok(ring.is_member(&Polynomial::monomial(IntegerRing, 1, n as u32, 0)))
}
