use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{IntegerRing, Modulus, ToResidues};
use crate::poly::Polynomial;
use crate::quotient::certificate::Certificate;
use crate::quotient::howell::HowellBasis;
use crate::quotient::rewrite::{block_to_polynomial, RewriteSystem, SpanVector};
use crate::quotient::IdealSpec;

/// Outcome of a membership query.
#[derive(Clone, Debug)]
pub enum Membership {
    /// The polynomial lies in J mod p^m; the certificate exhibits cofactors.
    Member(Certificate),
    /// It does not; the vector is its nonzero residue modulo the Howell basis.
    NonMember(SpanVector),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Membership::Member(c) => Some(c),
            Membership::NonMember(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&SpanVector> {
        match self {
            Membership::Member(_) => None,
            Membership::NonMember(w) => Some(w),
        }
    }
}

/// The image T of J in the span, as a Howell basis over Z/p^m.
///
/// Every row carries, after its side² span coordinates, one side²-sized
/// block per generator g_0 .. g_(e-1). Those blocks hold box polynomials
/// P_i with `row = red(Σ P_i·g_i)`; the generators F_e and y^(p^e) reduce
/// to zero and need no block.
#[derive(Clone, Debug)]
pub struct MembershipModule {
    ideal: IdealSpec,
    rewrite: RewriteSystem,
    generators: Vec<Polynomial<Modulus>>,
    basis: HowellBasis,
}

impl MembershipModule {
    /// Seeds with red(g_n) and closes under multiplication by x and y.
    ///
    /// Vectors are processed in breadth-first order; only those that grew the
    /// span have their x and y multiples queued, which suffices because the
    /// multiplication maps are linear.
    pub fn build(ideal: &IdealSpec, modulus: Modulus) -> Self {
        let rewrite = RewriteSystem::new(ideal, modulus);
        let generators: Vec<_> = ideal
            .generators()
            .iter()
            .map(|g| g.to_residues(modulus))
            .collect();
        let dim = rewrite.dim();
        let tracked = ideal.e() as usize;
        let width = dim * (tracked + 1);
        let mut basis = HowellBasis::new(modulus, dim, width);

        let mut queue = VecDeque::new();
        for (i, g) in generators.iter().enumerate() {
            let red = rewrite.reduce(g);
            if i >= tracked {
                debug_assert!(red.vector.is_zero());
                continue;
            }
            let mut row = red.vector.into_entries();
            row.resize(width, 0);
            row[dim * (i + 1)] = 1 % modulus.value();
            queue.push_back(row);
        }
        while let Some(row) = queue.pop_front() {
            if basis.insert(row.clone()) {
                queue.push_back(rewrite.multiply_x(&row));
                queue.push_back(rewrite.multiply_y(&row));
            }
        }
        basis.canonicalize();

        MembershipModule {
            ideal: ideal.clone(),
            rewrite,
            generators,
            basis,
        }
    }

    pub fn ideal(&self) -> &IdealSpec {
        &self.ideal
    }

    pub fn rewrite(&self) -> &RewriteSystem {
        &self.rewrite
    }

    pub fn modulus(&self) -> Modulus {
        self.rewrite.modulus()
    }

    pub fn basis(&self) -> &HowellBasis {
        &self.basis
    }

    /// Howell rows restricted to the span coordinates.
    pub fn howell_rows(&self) -> Vec<SpanVector> {
        self.basis
            .key_rows()
            .into_iter()
            .map(|r| self.rewrite.span_vector(r))
            .collect()
    }

    /// The box polynomials P_i recorded for a Howell row.
    pub fn row_provenance(&self, row: usize) -> Vec<Polynomial<Modulus>> {
        let dim = self.rewrite.dim();
        self.basis.rows()[row].data[dim..]
            .chunks(dim)
            .map(|b| block_to_polynomial(b, self.rewrite.side(), self.modulus()))
            .collect()
    }

    /// Membership of a polynomial over Z or Z_(p) in J mod p^m.
    pub fn is_member<R: ToResidues>(&self, f: &Polynomial<R>) -> Membership {
        let reduced = f.to_residues(self.modulus());
        let vector = self.rewrite.reduce(&reduced).vector;
        self.decide(integer_target(f, self.modulus()), &reduced, &vector)
    }

    /// Membership when red(target) is already known.
    ///
    /// `vector` must equal the normal form of `target` mod p^m.
    pub fn decide(
        &self,
        target: Polynomial<IntegerRing>,
        reduced: &Polynomial<Modulus>,
        vector: &SpanVector,
    ) -> Membership {
        let md = self.modulus();
        let dim = self.rewrite.dim();
        let mut w = vector.entries().to_vec();
        w.resize(self.basis.width(), 0);
        if !self.basis.reduce(&mut w) {
            w.truncate(dim);
            return Membership::NonMember(self.rewrite.span_vector(w));
        }
        // red(target) = Σ q_r row_r, and the payload now holds -Σ q_r P_r.
        let mut cofactors = Vec::new();
        let mut rest = reduced.clone();
        for (i, block) in w[dim..].chunks(dim).enumerate() {
            let negated: Vec<u64> = block.iter().map(|&a| md.neg_raw(a)).collect();
            let h = block_to_polynomial(&negated, self.rewrite.side(), md);
            if h.is_zero() {
                continue;
            }
            rest = &rest - &(&h * &self.generators[i]);
            cofactors.push((i, h));
        }
        // What is left lies in (F_e, y^(p^e)); the rewrite records how.
        let tail = self.rewrite.reduce(&rest);
        debug_assert!(tail.vector.is_zero(), "certificate remainder must vanish");
        if !tail.fe_cofactor.is_zero() {
            cofactors.push((self.ideal.monic_index(), tail.fe_cofactor));
        }
        if !tail.y_cofactor.is_zero() {
            cofactors.push((self.ideal.y_power_index(), tail.y_cofactor));
        }
        Membership::Member(Certificate {
            p: md.prime(),
            e: self.ideal.e(),
            m: md.exponent(),
            target,
            cofactors: cofactors.into_iter().map(|(i, h)| (i, h.lift())).collect(),
        })
    }

    /// red(x^k), by repeated multiply-then-reduce.
    pub fn reduced_x_power(&self, k: u64) -> SpanVector {
        let mut v = self.rewrite.unit().into_entries();
        for _ in 0..k {
            v = self.rewrite.multiply_x(&v);
        }
        self.rewrite.span_vector(v)
    }

    /// Coordinates of the span, as monomials in index order.
    pub fn span_monomials(&self) -> impl Iterator<Item = (u32, u32)> {
        let side = self.rewrite.side();
        (0..side).flat_map(move |j| (0..side).map(move |i| (i, j)))
    }

    pub fn contains_vector(&self, v: &SpanVector) -> bool {
        let mut w = vec![0; self.basis.width()];
        w[..v.entries().len()].copy_from_slice(v.entries());
        self.basis.reduce(&mut w)
    }
}

fn integer_target<R: ToResidues>(f: &Polynomial<R>, modulus: Modulus) -> Polynomial<IntegerRing> {
    let ring = f.ring().clone();
    let mut out = Polynomial::zero(IntegerRing);
    for (m, c) in f.terms() {
        match ring.to_integer(c) {
            Some(n) => out.add_term(*m, &n),
            None => return f.to_residues(modulus).lift(),
        }
    }
    out
}
