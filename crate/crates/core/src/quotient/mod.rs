//! The example ring A = Z/p^m[x, y] / J.
//!
//! J is generated by g_n = p^(e-n)·F_n(x, y) for 0 ≤ n ≤ e and by
//! g_(e+1) = y^(p^e). Because F_e is monic in x of degree p^e, rewriting
//! x^(p^e) ↦ x^(p^e) - F_e and dropping monomials divisible by y^(p^e) sends
//! every polynomial to a unique vector over the box of monomials x^i·y^j with
//! 0 ≤ i, j < p^e. The image T of J in that box is a finite Z/p^m-module,
//! stored as a Howell basis; membership in J becomes membership in T.

mod certificate;
mod example;
mod howell;
mod ideal;
mod module;
mod oracle;
mod rewrite;

pub use certificate::{verify_certificate, Certificate};
pub use example::{verify_sharpness, ExampleRing, StabilityReport};
pub use howell::{HowellBasis, HowellRow};
pub use ideal::IdealSpec;
pub use module::{Membership, MembershipModule};
pub use oracle::brute_force_membership_oracle;
pub use rewrite::{Reduction, RewriteSystem, SpanVector};
