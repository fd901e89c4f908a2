//! Koszul complexes `K(R; r_1, ..., r_n)` as tensor products of the
//! two-term complexes `R e_i -> R`, `d(e_i) = r_i`, taken left to right.
//!
//! `e_i` has homological degree 1 and internal degree `|r_i|`, so its total
//! degree is `|r_i| + 1`. For `e_S = e_{i_1} ... e_{i_s}`,
//!
//! ```text
//! d(e_S) = sum_j (-1)^{(|r_{i_j}| + 1) * sum_{l<j} (|r_{i_l}| + 1)} r_{i_j} e_{S - i_j}
//! d(a e_S) = (-1)^{|a|} a d(e_S)
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{Algebra, Element, Presentation};
use crate::linalg::{rank, SparseVec};
use crate::resolution::BigradedDimensions;

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    alg: Arc<Algebra>,
    elements: Vec<Element>,
}

/// Build from elements given as polynomial strings.
pub fn build_koszul(alg: Arc<Algebra>, elements: &[&str]) -> Result<KoszulComplex> {
    let mut parsed = Vec::with_capacity(elements.len());
    for (i, s) in elements.iter().enumerate() {
        let p = alg.presentation().parse_polynomial(s)?;
        if p.is_zero() {
            return Err(Error::InhomogeneousElement(i));
        }
        let e = alg.reduce_polynomial(&p).map_err(|e| match e {
            Error::InhomogeneousOperand => Error::InhomogeneousElement(i),
            other => other,
        })?;
        parsed.push(e);
    }
    KoszulComplex::new(alg, parsed)
}

impl KoszulComplex {
    pub fn new(alg: Arc<Algebra>, elements: Vec<Element>) -> Result<Self> {
        if let Some(i) = elements.iter().position(|e| e.level == 0) {
            return Err(Error::InhomogeneousElement(i));
        }
        if elements.len() > 24 {
            return Err(Error::WindowTooSmall("at most 24 Koszul elements".into()));
        }
        Ok(Self { alg, elements })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn subset_level(&self, mask: u32) -> u32 {
        (0..self.elements.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| self.elements[i].level)
            .sum()
    }

    /// Subsets of size `s` whose internal level is at most `n`.
    fn subsets(&self, s: usize, n: u32) -> Vec<u32> {
        let k = self.elements.len();
        (0u32..(1u32 << k))
            .filter(|m| m.count_ones() as usize == s && self.subset_level(*m) <= n)
            .collect()
    }

    /// Blocks `(mask, offset, coefficient level)` of `K_{s}` at level `n`.
    fn layout(&self, s: usize, n: u32) -> (Vec<(u32, u32, u32)>, usize) {
        let mut blocks = Vec::new();
        let mut off = 0u32;
        for m in self.subsets(s, n) {
            let cl = n - self.subset_level(m);
            let d = self.alg.dim(cl) as u32;
            if d > 0 {
                blocks.push((m, off, cl));
                off += d;
            }
        }
        (blocks, off as usize)
    }

    /// Rank of `K_{s,n}` (as a vector space).
    pub fn chain_dim(&self, s: usize, n: u32) -> usize {
        self.layout(s, n).1
    }

    /// Matrix of `d: K_{s,n} -> K_{s-1,n}` as image vectors.
    pub fn differential(&self, s: usize, n: u32) -> Result<(Vec<SparseVec>, usize)> {
        let (src, _) = self.layout(s, n);
        let (dst, dst_dim) = self.layout(s.wrapping_sub(1), n);
        if s == 0 {
            return Ok((Vec::new(), 0));
        }
        let f = self.alg.field();
        let odd_char = f.characteristic() != 2;
        let mut images = Vec::new();
        for &(mask, _, cl) in &src {
            let members: Vec<usize> = (0..self.elements.len()).filter(|&i| mask & (1 << i) != 0).collect();
            for b in 0..self.alg.dim(cl) {
                let mut entries = Vec::new();
                let mut before = 0u32; // sum of total degrees of earlier factors
                for &i in &members {
                    let r = &self.elements[i];
                    let total_r = r.level + 1;
                    let mut neg = odd_char && (total_r % 2 == 1) && (before % 2 == 1);
                    if odd_char && cl % 2 == 1 {
                        neg = !neg;
                    }
                    before += total_r;
                    let rest = mask & !(1 << i);
                    let Ok(pos) = dst.binary_search_by_key(&rest, |blk| blk.0) else {
                        continue;
                    };
                    let (_, off, _) = dst[pos];
                    let prod = self.alg.multiply(cl, &SparseVec::unit(b as u32), r.level, &r.coords)?;
                    let c = f.sign(neg);
                    entries.extend(prod.iter().map(|(k, v)| (k + off, f.mul(v, c))));
                }
                images.push(SparseVec::from_entries(f, entries));
            }
        }
        Ok((images, dst_dim))
    }

    pub fn rank_at(&self, s: usize, n: u32) -> Result<usize> {
        if s == 0 || s > self.elements.len() {
            return Ok(0);
        }
        let (images, cols) = self.differential(s, n)?;
        Ok(rank(self.alg.field(), cols, &images))
    }

    /// `d o d = 0` on `K_{s,n}`.
    pub fn check_d_squared(&self, s: usize, n: u32) -> Result<bool> {
        if s < 2 {
            return Ok(true);
        }
        let (first, _) = self.differential(s, n)?;
        let (second, _) = self.differential(s - 1, n)?;
        let f = self.alg.field();
        for v in &first {
            let mut acc = Vec::new();
            for (k, c) in v.iter() {
                acc.extend(second[k as usize].iter().map(|(j, x)| (j, f.mul(x, c))));
            }
            if !SparseVec::from_entries(f, acc).is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Homology dimensions per (homological degree, signed internal degree).
pub fn koszul_homology(cx: &KoszulComplex, degree_bound: u32) -> Result<BigradedDimensions> {
    let bound = degree_bound.min(cx.alg.bound());
    let mut out = BigradedDimensions::new();
    for n in 0..=bound {
        for s in 0..=cx.len() {
            let dim = cx.chain_dim(s, n);
            if dim == 0 {
                continue;
            }
            let h = dim - cx.rank_at(s, n)? - cx.rank_at(s + 1, n)?;
            if h > 0 {
                out.insert((s as i32, cx.alg.degree_of_level(n)), h);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityReport {
    pub regular: bool,
    /// First nonzero higher homology class: `(s, degree, dim)`.
    pub witness: Option<(i32, i32, usize)>,
    pub degree_bound: u32,
}

/// Regular within the window iff `H_s = 0` for all `s >= 1`.
pub fn is_regular_sequence(pres: &Presentation, elements: &[&str], degree_bound: u32) -> Result<RegularityReport> {
    let alg = Arc::new(Algebra::new(pres, degree_bound));
    let cx = build_koszul(alg, elements)?;
    let h = koszul_homology(&cx, degree_bound)?;
    let witness = h
        .iter()
        .filter(|((s, _), _)| *s >= 1)
        .min_by_key(|((s, t), _)| (t.abs(), *s))
        .map(|(&(s, t), &d)| (s, t, d));
    Ok(RegularityReport {
        regular: witness.is_none(),
        witness,
        degree_bound,
    })
}
