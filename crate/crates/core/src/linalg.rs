//! Sparse exact linear algebra over `F_p`.
//!
//! Vectors are sorted `(index, value)` lists. Row reduction keeps rows sparse
//! and uses a dense scratch accumulator, which is the right trade-off for the
//! degreewise matrices that show up here: thousands of columns, a handful of
//! nonzeros per row.

use serde::{Deserialize, Serialize};

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::field::PrimeField;

/// A sparse vector over `F_p`: strictly increasing indices, nonzero values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec(pub Vec<(u32, u32)>);

impl SparseVec {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn unit(i: u32) -> Self {
        Self(vec![(i, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().copied()
    }

    pub fn get(&self, i: u32) -> u32 {
        match self.0.binary_search_by_key(&i, |&(j, _)| j) {
            Ok(k) => self.0[k].1,
            Err(_) => 0,
        }
    }

    pub fn leading(&self) -> Option<(u32, u32)> {
        self.0.first().copied()
    }

    /// Build from unsorted entries, combining duplicates.
    pub fn from_entries(field: &PrimeField, mut entries: Vec<(u32, u32)>) -> Self {
        entries.sort_unstable_by_key(|&(i, _)| i);
        let mut out: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w = field.add(*w, v),
                _ => out.push((i, v)),
            }
        }
        out.retain(|&(_, v)| v != 0);
        Self(out)
    }

    pub fn from_dense(dense: &[u32]) -> Self {
        Self(
            dense
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (i as u32, v))
                .collect(),
        )
    }

    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut out = vec![0; len];
        for &(i, v) in &self.0 {
            out[i as usize] = v;
        }
        out
    }

    pub fn scale(&self, field: &PrimeField, c: u32) -> Self {
        if c == 0 {
            return Self::new();
        }
        Self(self.0.iter().map(|&(i, v)| (i, field.mul(v, c))).collect())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, field: &PrimeField, other: &SparseVec, c: u32) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, x)), Some(&&(j, y))) => {
                    if i < j {
                        out.push((i, x));
                        a.next();
                    } else if j < i {
                        let v = field.mul(y, c);
                        if v != 0 {
                            out.push((j, v));
                        }
                        b.next();
                    } else {
                        let v = field.add(x, field.mul(y, c));
                        if v != 0 {
                            out.push((i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&(i, x)), None) => {
                    out.push((i, x));
                    a.next();
                }
                (None, Some(&&(j, y))) => {
                    let v = field.mul(y, c);
                    if v != 0 {
                        out.push((j, v));
                    }
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self(out)
    }

    /// Re-index every entry by `offset`.
    pub fn shifted(&self, offset: u32) -> Self {
        Self(self.0.iter().map(|&(i, v)| (i + offset, v)).collect())
    }
}

/// Dense scratch accumulator used during reduction.
#[derive(Clone, Debug, Default)]
struct Accumulator {
    values: Vec<u32>,
    touched: Vec<u32>,
}

impl Accumulator {
    fn new(len: usize) -> Self {
        Self {
            values: vec![0; len],
            touched: Vec::new(),
        }
    }

    fn ensure(&mut self, len: usize) {
        if self.values.len() < len {
            self.values.resize(len, 0);
        }
    }

    fn load(&mut self, v: &SparseVec) {
        for &(i, x) in &v.0 {
            self.values[i as usize] = x;
            self.touched.push(i);
        }
    }

    #[inline]
    fn axpy(&mut self, field: &PrimeField, row: &SparseVec, c: u32) {
        for &(i, x) in &row.0 {
            let slot = &mut self.values[i as usize];
            if *slot == 0 {
                self.touched.push(i);
            }
            *slot = field.add(*slot, field.mul(x, c));
        }
    }

    /// Drain into a sparse vector and reset.
    fn drain(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        self.touched.dedup();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let v = std::mem::take(&mut self.values[i as usize]);
            if v != 0 {
                out.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec(out)
    }
}

/// Incremental row echelon form.
///
/// Every stored row has pivot coefficient 1 and no entries left of its
/// pivot. Rows may optionally carry a "tag" vector that records which
/// combination of inserted inputs produced them; reductions to zero then
/// yield relations among the inputs (kernel vectors).
#[derive(Clone, Debug)]
pub struct Echelon {
    field: PrimeField,
    ncols: usize,
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    tag_cols: usize,
    pivot_row: Vec<u32>,
    scratch: Accumulator,
    tag_scratch: Accumulator,
}

const NO_PIVOT: u32 = u32::MAX;

impl Echelon {
    pub fn new(field: &PrimeField, ncols: usize) -> Self {
        Self {
            field: field.clone(),
            ncols,
            rows: Vec::new(),
            tags: Vec::new(),
            tag_cols: 0,
            pivot_row: vec![NO_PIVOT; ncols],
            scratch: Accumulator::default(),
            tag_scratch: Accumulator::default(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NO_PIVOT
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = u32> + '_ {
        self.rows.iter().map(|r| r.0[0].0)
    }

    fn reduce_into(&self, acc: &mut Accumulator, tag_acc: Option<&mut Accumulator>) {
        // Visit touched columns in increasing order. A pivot row has no
        // entries left of its pivot, so newly touched columns always lie to
        // the right of the current one.
        let mut tag_acc = tag_acc;
        let mut queue: BinaryHeap<Reverse<u32>> = acc.touched.iter().map(|&c| Reverse(c)).collect();
        let mut last = None;
        while let Some(Reverse(col)) = queue.pop() {
            if last == Some(col) {
                continue;
            }
            last = Some(col);
            let v = acc.values[col as usize];
            if v == 0 {
                continue;
            }
            let r = self.pivot_row[col as usize];
            if r == NO_PIVOT {
                continue;
            }
            let c = self.field.neg(v);
            let row = &self.rows[r as usize];
            acc.axpy(&self.field, row, c);
            queue.extend(row.0.iter().skip(1).map(|&(i, _)| Reverse(i)));
            if let Some(t) = tag_acc.as_deref_mut() {
                t.axpy(&self.field, &self.tags[r as usize], c);
            }
        }
    }

    /// Reduce `v` modulo the row space.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut acc = Accumulator::new(self.ncols);
        acc.load(v);
        self.reduce_into(&mut acc, None);
        acc.drain()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns `true` if it enlarged the row space.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut acc = std::mem::take(&mut self.scratch);
        acc.ensure(self.ncols);
        acc.load(v);
        self.reduce_into(&mut acc, None);
        let r = acc.drain();
        self.scratch = acc;
        self.push_reduced(r, SparseVec::new())
    }

    /// Insert with a tag. Returns `Err(relation)` when `v` was dependent:
    /// the relation is the tag combination that reduces to zero.
    pub fn insert_tagged(&mut self, v: &SparseVec, tag: &SparseVec) -> Result<(), SparseVec> {
        let mut acc = std::mem::take(&mut self.scratch);
        acc.ensure(self.ncols);
        acc.load(v);
        let tag_len = tag.0.last().map(|&(i, _)| i as usize + 1).unwrap_or(0);
        let mut tacc = std::mem::take(&mut self.tag_scratch);
        tacc.ensure(self.tag_cols.max(tag_len));
        tacc.load(tag);
        self.reduce_into(&mut acc, Some(&mut tacc));
        let r = acc.drain();
        let t = tacc.drain();
        self.scratch = acc;
        self.tag_scratch = tacc;
        if r.is_zero() {
            Err(t)
        } else {
            self.push_reduced(r, t);
            Ok(())
        }
    }

    fn push_reduced(&mut self, r: SparseVec, tag: SparseVec) -> bool {
        let Some((col, lead)) = r.leading() else {
            return false;
        };
        let inv = self.field.inv(lead);
        let row = r.scale(&self.field, inv);
        let tag = tag.scale(&self.field, inv);
        if let Some(&(i, _)) = tag.0.last() {
            self.tag_cols = self.tag_cols.max(i as usize + 1);
        }
        self.pivot_row[col as usize] = self.rows.len() as u32;
        self.rows.push(row);
        self.tags.push(tag);
        true
    }

    /// Fully reduce: every pivot column is zero in all other rows.
    pub fn into_reduced(mut self) -> Self {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| std::cmp::Reverse(self.rows[r].0[0].0));
        let mut acc = Accumulator::new(self.ncols);
        for &r in &order {
            let row = std::mem::take(&mut self.rows[r]);
            let pivot = row.0[0].0;
            acc.load(&row);
            for &(col, _) in &row.0[1..] {
                let v = acc.values[col as usize];
                let pr = self.pivot_row[col as usize];
                if v != 0 && pr != NO_PIVOT {
                    debug_assert!(col > pivot);
                    let c = self.field.neg(v);
                    let prow = self.rows[pr as usize].clone();
                    acc.axpy(&self.field, &prow, c);
                }
            }
            self.rows[r] = acc.drain();
        }
        self
    }
}

/// Rank of a list of vectors.
pub fn rank(field: &PrimeField, ncols: usize, vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Kernel of the linear map whose `i`-th input basis vector maps to
/// `images[i]`. Returns a basis of the kernel, as vectors over the input.
pub fn kernel(field: &PrimeField, ncols: usize, images: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(field, ncols);
    let mut out = Vec::new();
    for (i, v) in images.iter().enumerate() {
        if let Err(rel) = e.insert_tagged(v, &SparseVec::unit(i as u32)) {
            out.push(rel);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_rank(field: &PrimeField, mut m: Vec<Vec<u32>>) -> usize {
        let rows = m.len();
        let cols = if rows == 0 { 0 } else { m[0].len() };
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, piv);
            let inv = field.inv(m[r][c]);
            for j in 0..cols {
                m[r][j] = field.mul(m[r][j], inv);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        m[i][j] = field.sub(m[i][j], field.mul(f, m[r][j]));
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn kernel_of_small_map() {
        let f = PrimeField::new(3).unwrap();
        // e0 -> (1,1), e1 -> (2,2), e2 -> (0,1)
        let imgs = vec![
            SparseVec(vec![(0, 1), (1, 1)]),
            SparseVec(vec![(0, 2), (1, 2)]),
            SparseVec(vec![(1, 1)]),
        ];
        let k = kernel(&f, 2, &imgs);
        assert_eq!(k.len(), 1);
        // 2*e0 + ... check it maps to zero
        let mut acc = SparseVec::new();
        for (i, c) in k[0].iter() {
            acc = acc.add_scaled(&f, &imgs[i as usize], c);
        }
        assert!(acc.is_zero());
    }

    #[test]
    fn reduced_form_clears_pivot_columns() {
        let f = PrimeField::new(5).unwrap();
        let mut e = Echelon::new(&f, 4);
        e.insert(&SparseVec(vec![(0, 1), (1, 2), (3, 1)]));
        e.insert(&SparseVec(vec![(1, 1), (2, 3)]));
        e.insert(&SparseVec(vec![(2, 1), (3, 4)]));
        let e = e.into_reduced();
        let pivots: Vec<u32> = e.pivot_columns().collect();
        for row in e.rows() {
            let lead = row.0[0].0;
            for &(c, _) in &row.0[1..] {
                assert!(!pivots.contains(&c) || c == lead);
            }
        }
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn rank_matches_dense_elimination(
            p in prop::sample::select(vec![2u32, 3, 5, 7]),
            entries in prop::collection::vec(prop::collection::vec(0u32..7, 6), 0..8)
        ) {
            let f = PrimeField::new(p).unwrap();
            let m: Vec<Vec<u32>> = entries.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
            let sparse: Vec<SparseVec> = m.iter().map(|r| SparseVec::from_dense(r)).collect();
            prop_assert_eq!(rank(&f, 6, &sparse), dense_rank(&f, m.clone()));
            let k = kernel(&f, 6, &sparse);
            prop_assert_eq!(k.len() + rank(&f, 6, &sparse), m.len());
        }
    }
}
