//! Exact arithmetic for θ^p-rings.
//!
//! The crate implements the Adams operation ψ^p and the operation θ^p on the
//! polynomial ring Z_(p)[x, y] with ψ^p(x) = x^p - p·y and ψ^p(y) = y^p, the
//! integer polynomial family F_n, and the quotient ring Z/p^m[x, y]/J where J
//! is generated by p^(e-n)·F_n(x, y) for 0 ≤ n ≤ e together with y^(p^e).
//!
//! Membership in J is decided with a Howell normal form over Z/p^m, and every
//! positive answer carries a [`Certificate`](quotient::Certificate) of
//! explicit cofactors that can be checked by plain polynomial expansion.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod coeff;
mod error;
pub mod poly;
pub mod quotient;
pub mod sample;
pub mod theta;

pub use coeff::{
    divide_exact_by_p, is_prime, reduce_mod, vp, CoeffRing, IntegerRing, LocalRing,
    LocalizedRational, Modulus, Residue, ToResidues,
};
pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial};
pub use quotient::{
    brute_force_membership_oracle, verify_certificate, verify_sharpness, Certificate, ExampleRing,
    IdealSpec, Membership, MembershipModule, RewriteSystem, SpanVector,
};
pub use theta::{nilpotence_bound, AxiomReport, Identity, ThetaContext};
