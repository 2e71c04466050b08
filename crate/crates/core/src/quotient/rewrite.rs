use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::Modulus;
use crate::poly::{Monomial, Polynomial};
use crate::quotient::IdealSpec;

/// A polynomial supported on the box 0 ≤ i, j < side, as a coefficient array
/// over Z/p^m with x^i·y^j at index `j * side + i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpanVector {
    side: u32,
    modulus: Modulus,
    entries: Vec<u64>,
}

impl SpanVector {
    pub fn zero(side: u32, modulus: Modulus) -> Self {
        SpanVector {
            side,
            modulus,
            entries: vec![0; (side * side) as usize],
        }
    }

    /// Wraps raw entries, reducing each into [0, p^m).
    pub fn from_entries(side: u32, modulus: Modulus, mut entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), (side * side) as usize, "span vector length");
        for v in &mut entries {
            *v %= modulus.value();
        }
        SpanVector {
            side,
            modulus,
            entries,
        }
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u64> {
        self.entries
    }

    pub fn index(&self, i: u32, j: u32) -> usize {
        (j * self.side + i) as usize
    }

    pub fn get(&self, i: u32, j: u32) -> u64 {
        self.entries[self.index(i, j)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn to_polynomial(&self) -> Polynomial<Modulus> {
        block_to_polynomial(&self.entries, self.side, self.modulus)
    }
}

impl fmt::Debug for SpanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpanVector({})", self.to_polynomial())
    }
}

impl fmt::Display for SpanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_polynomial(), f)
    }
}

pub(crate) fn block_to_polynomial(
    block: &[u64],
    side: u32,
    modulus: Modulus,
) -> Polynomial<Modulus> {
    Polynomial::from_terms(
        modulus,
        block
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(idx, v)| {
                let idx = idx as u32;
                (Monomial::new(idx % side, idx / side), modulus.residue(*v))
            }),
    )
}

/// Result of [`RewriteSystem::reduce`]: `f = fe_cofactor·F_e +
/// y_cofactor·y^(p^e) + vector` modulo p^m.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub vector: SpanVector,
    pub fe_cofactor: Polynomial<Modulus>,
    pub y_cofactor: Polynomial<Modulus>,
}

/// The rules x^(p^e) ↦ x^(p^e) - F_e(x, y) and x^i·y^j ↦ 0 for j ≥ p^e,
/// working modulo p^m.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    modulus: Modulus,
    side: u32,
    // F_e - x^(p^e) mod p^m
    tail: Vec<(Monomial, u64)>,
    // red(x^side · y^j) for j < side
    wrap: Vec<Vec<u64>>,
}

impl RewriteSystem {
    pub fn new(ideal: &IdealSpec, modulus: Modulus) -> Self {
        assert_eq!(
            ideal.prime(),
            modulus.prime(),
            "ideal and modulus use different primes"
        );
        let side = ideal.side();
        let fe = ideal.generators()[ideal.monic_index()].to_residues(modulus);
        let tail = fe
            .terms()
            .filter(|(m, _)| **m != Monomial::new(side, 0))
            .map(|(m, c)| (*m, c.value()))
            .collect();
        let mut system = RewriteSystem {
            modulus,
            side,
            tail,
            wrap: Vec::new(),
        };
        system.wrap = (0..side)
            .map(|j| {
                let mono = Polynomial::monomial(modulus, 1, side, j);
                system.reduce(&mono).vector.into_entries()
            })
            .collect();
        system
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    /// Number of span coordinates, side².
    pub fn dim(&self) -> usize {
        (self.side * self.side) as usize
    }

    /// The normal form of `f`, together with the generator multiples that
    /// were subtracted to reach it.
    pub fn reduce(&self, f: &Polynomial<Modulus>) -> Reduction {
        assert_eq!(
            *f.ring(),
            self.modulus,
            "polynomial over a different modulus"
        );
        let md = self.modulus;
        let side = self.side;
        // Keyed by (x-degree, y-degree): popping the last entry always takes
        // the highest x-degree first, and rewriting only creates smaller keys.
        let mut work: BTreeMap<(u32, u32), u64> =
            f.terms().map(|(m, c)| ((m.x, m.y), c.value())).collect();
        let mut vector = SpanVector::zero(side, md);
        let mut fe_cofactor = Polynomial::zero(md);
        let mut y_cofactor = Polynomial::zero(md);
        while let Some(((i, j), c)) = work.pop_last() {
            if c == 0 {
                continue;
            }
            if j >= side {
                y_cofactor.add_term(Monomial::new(i, j - side), &md.residue(c));
            } else if i >= side {
                fe_cofactor.add_term(Monomial::new(i - side, j), &md.residue(c));
                for (m, d) in &self.tail {
                    let slot = work.entry((i - side + m.x, j + m.y)).or_insert(0);
                    *slot = md.sub_raw(*slot, md.mul_raw(c, *d));
                }
            } else {
                let idx = vector.index(i, j);
                vector.entries[idx] = c;
            }
        }
        Reduction {
            vector,
            fe_cofactor,
            y_cofactor,
        }
    }

    /// red(x · v) for each side²-sized block of `row`.
    pub fn multiply_x(&self, row: &[u64]) -> Vec<u64> {
        let md = self.modulus;
        let side = self.side as usize;
        let dim = self.dim();
        debug_assert_eq!(row.len() % dim, 0);
        let mut out = vec![0u64; row.len()];
        for (src, dst) in row.chunks(dim).zip(out.chunks_mut(dim)) {
            for j in 0..side {
                for i in 0..side {
                    let c = src[j * side + i];
                    if c == 0 {
                        continue;
                    }
                    if i + 1 < side {
                        let k = j * side + i + 1;
                        dst[k] = md.add_raw(dst[k], c);
                    } else {
                        for (k, w) in self.wrap[j].iter().enumerate() {
                            if *w != 0 {
                                dst[k] = md.add_raw(dst[k], md.mul_raw(c, *w));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// red(y · v) for each side²-sized block of `row`.
    pub fn multiply_y(&self, row: &[u64]) -> Vec<u64> {
        let side = self.side as usize;
        let dim = self.dim();
        debug_assert_eq!(row.len() % dim, 0);
        let mut out = vec![0u64; row.len()];
        for (src, dst) in row.chunks(dim).zip(out.chunks_mut(dim)) {
            dst[side..].copy_from_slice(&src[..dim - side]);
        }
        out
    }

    pub fn span_vector(&self, entries: Vec<u64>) -> SpanVector {
        SpanVector::from_entries(self.side, self.modulus, entries)
    }

    /// The span vector of the monomial 1.
    pub fn unit(&self) -> SpanVector {
        let mut v = SpanVector::zero(self.side, self.modulus);
        v.entries[0] = 1 % self.modulus.value();
        v
    }
}
