//! Howell normal form over Z/p^m.
//!
//! Rows have length `width`; only the first `key_len` columns take part in
//! pivoting, the remaining columns are carried along as payload. A row with
//! pivot column c has p^v at c (v < m) and zeros before c.
//!
//! Z/p^m is a chain ring, so row echelon form alone does not decide
//! membership: a combination of rows can cancel its leading entries. Each
//! time a row with pivot p^v is stored, the row p^(m-v)·r (whose entry at c
//! vanishes) is inserted as well. With those rows present the basis has the
//! Howell property and left-to-right reduction decides membership.

use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::Modulus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HowellRow {
    pub pivot: usize,
    pub valuation: u32,
    pub data: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct HowellBasis {
    modulus: Modulus,
    key_len: usize,
    width: usize,
    rows: Vec<HowellRow>,
    pivot_at: Vec<Option<usize>>,
}

impl HowellBasis {
    pub fn new(modulus: Modulus, key_len: usize, width: usize) -> Self {
        assert!(key_len <= width);
        HowellBasis {
            modulus,
            key_len,
            width,
            rows: Vec::new(),
            pivot_at: vec![None; key_len],
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn key_len(&self) -> usize {
        self.key_len
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rows(&self) -> &[HowellRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of elements of the row span, as log_p.
    pub fn log_size(&self) -> u64 {
        self.rows
            .iter()
            .map(|r| u64::from(self.modulus.exponent() - r.valuation))
            .sum()
    }

    // w[k] -= q·row[k] for k ≥ from
    fn sub_scaled(&self, w: &mut [u64], q: u64, row: &[u64], from: usize) {
        let md = self.modulus;
        for (a, b) in w[from..].iter_mut().zip(&row[from..]) {
            if *b != 0 {
                *a = md.sub_raw(*a, md.mul_raw(q, *b));
            }
        }
    }

    fn scale(&self, w: &mut [u64], q: u64, from: usize) {
        let md = self.modulus;
        for a in &mut w[from..] {
            *a = md.mul_raw(*a, q);
        }
    }

    // Makes w[c] = p^v exactly.
    fn normalize(&self, w: &mut [u64], c: usize, v: u32) {
        let unit = w[c] / self.modulus.pow_p(v);
        let inv = self.modulus.inverse(unit).expect("unit part is invertible");
        self.scale(w, inv, c);
        debug_assert_eq!(w[c], self.modulus.pow_p(v));
    }

    fn annihilator(&self, row: &[u64], c: usize, v: u32) -> Option<Vec<u64>> {
        if v == 0 {
            return None;
        }
        let mut out = row.to_vec();
        self.scale(&mut out, self.modulus.pow_p(self.modulus.exponent() - v), c);
        debug_assert_eq!(out[c], 0);
        out.iter().any(|&a| a != 0).then_some(out)
    }

    /// Adds a row to the spanned module. Returns whether the span grew.
    pub fn insert(&mut self, row: Vec<u64>) -> bool {
        assert_eq!(row.len(), self.width);
        let md = self.modulus;
        let mut grew = false;
        let mut pending = vec![row];
        while let Some(mut w) = pending.pop() {
            let mut c = 0;
            while c < self.key_len {
                if w[c] == 0 {
                    c += 1;
                    continue;
                }
                let v = md.valuation(w[c]).expect("nonzero entry");
                match self.pivot_at[c] {
                    Some(idx) if v >= self.rows[idx].valuation => {
                        let q = w[c] / md.pow_p(self.rows[idx].valuation);
                        let pivot_row = core::mem::take(&mut self.rows[idx].data);
                        self.sub_scaled(&mut w, q, &pivot_row, c);
                        self.rows[idx].data = pivot_row;
                        debug_assert_eq!(w[c], 0);
                        c += 1;
                    }
                    Some(idx) => {
                        // w has a smaller valuation here: it replaces the
                        // stored row, which is then reduced against it.
                        self.normalize(&mut w, c, v);
                        pending.extend(self.annihilator(&w, c, v));
                        let old = core::mem::replace(
                            &mut self.rows[idx],
                            HowellRow {
                                pivot: c,
                                valuation: v,
                                data: w,
                            },
                        );
                        w = old.data;
                        grew = true;
                    }
                    None => {
                        self.normalize(&mut w, c, v);
                        pending.extend(self.annihilator(&w, c, v));
                        self.pivot_at[c] = Some(self.rows.len());
                        self.rows.push(HowellRow {
                            pivot: c,
                            valuation: v,
                            data: w,
                        });
                        grew = true;
                        break;
                    }
                }
            }
        }
        grew
    }

    /// Reduces `w` in place against the basis, left to right. Pivot entries
    /// end up in [0, p^v). Returns true when the key part reduces to zero,
    /// i.e. when the key part of `w` lies in the span.
    ///
    /// The payload columns of `w` receive `-Σ q_r · payload_r`.
    pub fn reduce(&self, w: &mut [u64]) -> bool {
        assert_eq!(w.len(), self.width);
        for c in 0..self.key_len {
            if w[c] == 0 {
                continue;
            }
            if let Some(idx) = self.pivot_at[c] {
                let row = &self.rows[idx];
                let q = w[c] / self.modulus.pow_p(row.valuation);
                if q != 0 {
                    self.sub_scaled(w, q, &row.data, c);
                }
            }
        }
        w[..self.key_len].iter().all(|&a| a == 0)
    }

    /// Whether the key part of `v` lies in the span.
    pub fn contains(&self, v: &[u64]) -> bool {
        let mut w = vec![0; self.width];
        w[..v.len()].copy_from_slice(v);
        self.reduce(&mut w)
    }

    /// Sorts rows by pivot and reduces entries above each pivot p^v into
    /// [0, p^v). The result is the Howell normal form of the span.
    pub fn canonicalize(&mut self) {
        self.rows.sort_by_key(|r| r.pivot);
        self.pivot_at = vec![None; self.key_len];
        for (idx, r) in self.rows.iter().enumerate() {
            self.pivot_at[r.pivot] = Some(idx);
        }
        for s in 0..self.rows.len() {
            let (above, rest) = self.rows.split_at_mut(s);
            let pivot_row = &rest[0];
            let scale = self.modulus.pow_p(pivot_row.valuation);
            for r in above.iter_mut() {
                let q = r.data[pivot_row.pivot] / scale;
                if q != 0 {
                    let md = self.modulus;
                    for (a, b) in r.data[pivot_row.pivot..]
                        .iter_mut()
                        .zip(&pivot_row.data[pivot_row.pivot..])
                    {
                        if *b != 0 {
                            *a = md.sub_raw(*a, md.mul_raw(q, *b));
                        }
                    }
                }
            }
        }
    }

    /// Key parts of the rows, in row order.
    pub fn key_rows(&self) -> Vec<Vec<u64>> {
        self.rows
            .iter()
            .map(|r| r.data[..self.key_len].to_vec())
            .collect()
    }
}
