//! Sparse bivariate polynomials.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! lexicographic with the first variable greater than the second. Iteration
//! through [`Polynomial::terms`] is in descending order, which is also the
//! order of the text format.
//!
//! Variables are positional. They render as `x` and `y` by default; the
//! integer family F_n uses `s` and `t` (see [`Polynomial::display_with`]).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::coeff::{CoeffRing, IntegerRing, LocalRing, Modulus, ToResidues};
use crate::error::{Error, Result};

/// x^x · y^y.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(&self) -> u32 {
        self.x + self.y
    }

    pub fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.x + other.x, self.y + other.y)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in two variables over the coefficient ring `R`.
#[derive(Clone, PartialEq)]
pub struct Polynomial<R: CoeffRing> {
    ring: R,
    terms: BTreeMap<Monomial, R::Elem>,
}

impl<R: CoeffRing> Polynomial<R> {
    pub fn zero(ring: R) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        Self::term(ring, one, Monomial::ONE)
    }

    pub fn constant(ring: R, c: R::Elem) -> Self {
        Self::term(ring, c, Monomial::ONE)
    }

    pub fn term(ring: R, c: R::Elem, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&c) {
            terms.insert(mono, c);
        }
        Polynomial { ring, terms }
    }

    /// `c · x^i · y^j` with an integer coefficient.
    pub fn monomial(ring: R, c: i64, i: u32, j: u32) -> Self {
        let c = ring.from_i64(c);
        Self::term(ring, c, Monomial::new(i, j))
    }

    pub fn x(ring: R) -> Self {
        Self::monomial(ring, 1, 1, 0)
    }

    pub fn y(ring: R) -> Self {
        Self::monomial(ring, 1, 0, 1)
    }

    /// Sums the given terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(ring: R, terms: impl IntoIterator<Item = (Monomial, R::Elem)>) -> Self {
        let mut out = Self::zero(ring);
        for (mono, c) in terms {
            out.add_term(mono, &c);
        }
        out
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R::Elem)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, i: u32, j: u32) -> R::Elem {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(|| self.ring.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &R::Elem)> {
        self.terms.iter().next_back()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.y).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Adds `c · mono` in place.
    pub fn add_term(&mut self, mono: Monomial, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                self.ring.add_assign(v, c);
                if self.ring.is_zero(v) {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (mono, c) in &other.terms {
            out.add_term(*mono, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let ring = &self.ring;
        let mut acc: BTreeMap<Monomial, R::Elem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ring.mul(ca, cb);
                match acc.get_mut(&ma.mul(*mb)) {
                    Some(v) => ring.add_assign(v, &prod),
                    None => {
                        acc.insert(ma.mul(*mb), prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !ring.is_zero(c));
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: acc,
        })
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, self.ring.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms.iter().map(|(m, a)| (*m, self.ring.mul(a, c))),
        )
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&self.ring.from_i64(c))
    }

    /// Multiplies by `c · mono`.
    pub fn mul_term(&self, c: &R::Elem, mono: Monomial) -> Self {
        Self::from_terms(
            self.ring.clone(),
            self.terms
                .iter()
                .map(|(m, a)| (m.mul(mono), self.ring.mul(a, c))),
        )
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring.clone());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at first variable ↦ `sx`, second ↦ `sy`.
    pub fn substitute(&self, sx: &Self, sy: &Self) -> Result<Self> {
        self.same_ring(sx)?;
        self.same_ring(sy)?;
        let ring = &self.ring;
        if self.is_zero() {
            return Ok(self.clone());
        }
        // Group by x-degree: f = Σ_i x^i · c_i(y).
        let mut rows: BTreeMap<u32, Vec<(u32, &R::Elem)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            rows.entry(m.x).or_default().push((m.y, c));
        }
        let max_y = self.terms.keys().map(|m| m.y).max().unwrap_or(0);
        let mut sy_pows = vec![Self::one(ring.clone())];
        for k in 1..=max_y as usize {
            let next = &sy_pows[k - 1] * sy;
            sy_pows.push(next);
        }
        let eval_row = |row: &[(u32, &R::Elem)]| {
            let mut out = Self::zero(ring.clone());
            for (j, c) in row {
                for (m, a) in &sy_pows[*j as usize].terms {
                    out.add_term(*m, &ring.mul(a, c));
                }
            }
            out
        };
        // Horner in the first variable.
        let mut iter = rows.iter().rev().peekable();
        let (&top, row) = iter.next().expect("nonzero polynomial");
        let mut acc = eval_row(row);
        let mut current = top;
        while current > 0 {
            current -= 1;
            acc = &acc * sx;
            if let Some((&i, row)) = iter.peek() {
                if i == current {
                    acc = &acc + &eval_row(row);
                    iter.next();
                }
            }
        }
        Ok(acc)
    }

    /// The image under ρ: x ↦ x^p, y ↦ y^p.
    pub fn inflate(&self, p: u32) -> Self {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial::new(m.x * p, m.y * p), c.clone()))
                .collect(),
        }
    }

    /// Splits f as Σ_{k,l<p} x^k y^l · ρ(f_kl) with ρ(x) = x^p, ρ(y) = y^p.
    ///
    /// The result is indexed `[k][l]`.
    pub fn frobenius_decompose(&self, p: u32) -> Vec<Vec<Self>> {
        assert!(p >= 1);
        let mut grid = vec![vec![Self::zero(self.ring.clone()); p as usize]; p as usize];
        for (m, c) in &self.terms {
            let cell = &mut grid[(m.x % p) as usize][(m.y % p) as usize];
            cell.terms
                .insert(Monomial::new(m.x / p, m.y / p), c.clone());
        }
        grid
    }

    /// Inverse of [`frobenius_decompose`](Self::frobenius_decompose).
    pub fn frobenius_recompose(ring: R, grid: &[Vec<Self>], p: u32) -> Self {
        let mut out = Self::zero(ring);
        for (k, row) in grid.iter().enumerate() {
            for (l, g) in row.iter().enumerate() {
                let shift = Monomial::new(k as u32, l as u32);
                for (m, c) in &g.inflate(p).terms {
                    out.add_term(m.mul(shift), c);
                }
            }
        }
        out
    }

    /// Applies a coefficient map into another ring, dropping terms that vanish.
    pub fn map_coefficients<S: CoeffRing>(
        &self,
        target: S,
        mut f: impl FnMut(&R::Elem) -> S::Elem,
    ) -> Polynomial<S> {
        let mut out = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let v = f(c);
            if !out.ring.is_zero(&v) {
                out.terms.insert(*m, v);
            }
        }
        out
    }

    pub fn display_with<'a>(&'a self, names: [&'a str; 2]) -> Display<'a, R> {
        Display { poly: self, names }
    }

    pub fn parse(ring: R, text: &str) -> Result<Self> {
        Self::parse_with(ring, text, ["x", "y"])
    }

    /// Parses the text format with the given variable names.
    pub fn parse_with(ring: R, text: &str, names: [&str; 2]) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("{what} in {text:?}"));
        let s: alloc::string::String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(bad("empty polynomial"));
        }
        // Split into signed terms at top-level '+' and '-'.
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = s.as_bytes();
        if bytes[0] == b'-' {
            negative = true;
            start = 1;
        }
        for (i, &b) in bytes.iter().enumerate().skip(start) {
            if (b == b'+' || b == b'-') && i > start {
                pieces.push((negative, &s[start..i]));
                negative = b == b'-';
                start = i + 1;
            }
        }
        pieces.push((negative, &s[start..]));

        let mut out = Self::zero(ring.clone());
        for (negative, piece) in pieces {
            if piece.is_empty() {
                return Err(bad("empty term"));
            }
            let mut coeff: Option<R::Elem> = None;
            let mut mono = Monomial::ONE;
            for (idx, factor) in piece.split('*').enumerate() {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => {
                        if e.is_empty() || !e.bytes().all(|c| c.is_ascii_digit()) {
                            return Err(bad("invalid exponent"));
                        }
                        let e: u32 = e.parse().map_err(|_| bad("exponent out of range"))?;
                        (b, Some(e))
                    }
                    None => (factor, None),
                };
                if base == names[0] {
                    mono.x += exp.unwrap_or(1);
                } else if base == names[1] {
                    mono.y += exp.unwrap_or(1);
                } else if idx == 0 && exp.is_none() {
                    coeff = Some(ring.parse_elem(base)?);
                } else {
                    return Err(bad("unexpected factor"));
                }
            }
            let mut c = coeff.unwrap_or_else(|| ring.one());
            if negative {
                c = ring.neg(&c);
            }
            out.add_term(mono, &c);
        }
        Ok(out)
    }
}

impl<R: ToResidues> Polynomial<R> {
    /// Termwise reduction into Z/p^m.
    pub fn to_residues(&self, modulus: Modulus) -> Polynomial<Modulus> {
        let ring = self.ring.clone();
        self.map_coefficients(modulus, |c| ring.to_residue(c, modulus))
    }
}

impl Polynomial<IntegerRing> {
    /// Embedding Z[x, y] → Z_(p)[x, y].
    pub fn to_local(&self, ring: LocalRing) -> Polynomial<LocalRing> {
        self.map_coefficients(ring, |c| ring.from_integer(c))
    }
}

impl Polynomial<Modulus> {
    /// Canonical lift with coefficients in [0, p^m).
    pub fn lift(&self) -> Polynomial<IntegerRing> {
        self.map_coefficients(IntegerRing, |c| BigInt::from(c.value()))
    }
}

pub struct Display<'a, R: CoeffRing> {
    poly: &'a Polynomial<R>,
    names: [&'a str; 2],
}

struct Elem<'a, R: CoeffRing>(&'a R, &'a R::Elem);

impl<R: CoeffRing> fmt::Display for Elem<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_elem(self.1, f)
    }
}

impl<R: CoeffRing> fmt::Display for Display<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = &self.poly.ring;
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.poly.terms().enumerate() {
            let negative = ring.is_negative(c);
            let magnitude = if negative { ring.neg(c) } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut first = true;
            if *m == Monomial::ONE || !ring.is_one(&magnitude) {
                write!(f, "{}", Elem(ring, &magnitude))?;
                first = false;
            }
            for (name, exp) in self.names.iter().zip([m.x, m.y]) {
                if exp == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(name)?;
                if exp > 1 {
                    write!(f, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl<R: CoeffRing> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.display_with(["x", "y"]), f)
    }
}

impl<R: CoeffRing> fmt::Debug for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operators panic on mismatched rings; use the `checked_*` methods to get an
// error instead.
impl<R: CoeffRing> Add for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn add(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        self.checked_add(rhs).expect("mismatched coefficient rings")
    }
}

impl<R: CoeffRing> Sub for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn sub(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        self.checked_sub(rhs).expect("mismatched coefficient rings")
    }
}

impl<R: CoeffRing> Mul for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn mul(self, rhs: &Polynomial<R>) -> Polynomial<R> {
        self.checked_mul(rhs).expect("mismatched coefficient rings")
    }
}

impl<R: CoeffRing> Neg for &Polynomial<R> {
    type Output = Polynomial<R>;

    fn neg(self) -> Polynomial<R> {
        Polynomial::neg(self)
    }
}
