//! Normalized Hochschild chains `M (x) I^{(x) n}`, `I` the augmentation
//! ideal, for `M = R` or `M = k`.
//!
//! Faces: `d_0` multiplies `m a_1`, `d_i` multiplies `a_i a_{i+1}`, and `d_n`
//! moves `a_n` to the front with the Koszul sign
//! `(-1)^{|a_n| (|m| + |a_1| + ... + |a_{n-1}|)}`; the boundary is
//! `sum (-1)^i d_i`. With `M = k` only the inner faces survive and the
//! complex is the reduced bar construction `B(k, R, k)`.

use std::collections::HashMap;

use crate::graded::Algebra;
use crate::linalg::{rank, SparseVec};

/// A basis letter: `(level, index in the basis of that level)`.
pub(crate) type Letter = (u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// `M = R` (Hochschild homology of `R`).
    Ring,
    /// `M = k` through the augmentation.
    Field,
}

/// All words of `n` letters from `I` with levels summing to `w`.
pub(crate) fn bar_words(alg: &Algebra, n: usize, w: u32) -> Vec<Vec<Letter>> {
    fn rec(alg: &Algebra, n: usize, w: u32, prefix: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if n == 0 {
            if w == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        // Every remaining letter needs level at least 1.
        for l in 1..=w.saturating_sub(n as u32 - 1) {
            for i in 0..alg.dim(l) as u32 {
                prefix.push((l, i));
                rec(alg, n - 1, w - l, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    if (n as u32) <= w || (n == 0 && w == 0) {
        rec(alg, n, w, &mut Vec::new(), &mut out);
    }
    out
}

/// Chains of bar degree `n` at internal level `w`. For `M = R` the first
/// letter is the coefficient `m` (level may be 0).
pub(crate) fn chain_basis(alg: &Algebra, coeffs: Coefficients, n: usize, w: u32) -> Vec<Vec<Letter>> {
    match coeffs {
        Coefficients::Field => bar_words(alg, n, w),
        Coefficients::Ring => {
            let mut out = Vec::new();
            for l0 in 0..=w {
                for i in 0..alg.dim(l0) as u32 {
                    for mut word in bar_words(alg, n, w - l0) {
                        word.insert(0, (l0, i));
                        out.push(word);
                    }
                }
            }
            out
        }
    }
}

/// One slice of the Hochschild complex at a fixed internal level.
pub(crate) struct Slice {
    pub bases: Vec<Vec<Vec<Letter>>>,
}

impl Slice {
    pub fn new(alg: &Algebra, coeffs: Coefficients, max_n: usize, w: u32) -> Self {
        Self {
            bases: (0..=max_n).map(|n| chain_basis(alg, coeffs, n, w)).collect(),
        }
    }

    fn index(&self, n: usize) -> HashMap<&[Letter], u32> {
        self.bases[n].iter().enumerate().map(|(i, w)| (w.as_slice(), i as u32)).collect()
    }

    /// `b: C_n -> C_{n-1}` as images of the basis of `C_n`.
    pub fn boundary(&self, alg: &Algebra, coeffs: Coefficients, n: usize) -> Vec<SparseVec> {
        if n == 0 || n >= self.bases.len() {
            return Vec::new();
        }
        let f = alg.field();
        let odd_char = f.characteristic() != 2;
        let target = self.index(n - 1);
        let off = usize::from(coeffs == Coefficients::Ring);
        let mut out = Vec::with_capacity(self.bases[n].len());
        for word in &self.bases[n] {
            let mut entries: Vec<(u32, u32)> = Vec::new();
            let push_merge = |pos: usize, sign_neg: bool, first: Letter, second: Letter, entries: &mut Vec<(u32, u32)>| {
                let prod = alg
                    .multiply_basis(first.0, first.1 as usize, second.0, second.1 as usize)
                    .expect("product inside the window");
                let lvl = first.0 + second.0;
                let mut w2: Vec<Letter> = Vec::with_capacity(word.len() - 1);
                for (k, c) in prod.iter() {
                    w2.clear();
                    w2.extend_from_slice(&word[..pos]);
                    w2.push((lvl, k));
                    w2.extend_from_slice(&word[pos + 2..]);
                    if let Some(&t) = target.get(w2.as_slice()) {
                        let c = if sign_neg { f.neg(c) } else { c };
                        entries.push((t, c));
                    }
                }
            };
            // Faces merging positions (pos, pos + 1) of the stored word.
            // For M = k the stored word is a_1 .. a_n and face i merges
            // stored positions i-1, i; for M = R it is m a_1 .. a_n and
            // face i merges stored positions i, i+1.
            let faces = match coeffs {
                Coefficients::Field => 1..n,
                Coefficients::Ring => 0..n,
            };
            for i in faces {
                let pos = if off == 1 { i } else { i - 1 };
                push_merge(pos, i % 2 == 1, word[pos], word[pos + 1], &mut entries);
            }
            if coeffs == Coefficients::Ring {
                // d_n: a_n m (x) a_1 .. a_{n-1}.
                let last = word[n];
                let before: u32 = word[..n].iter().map(|l| l.0).sum();
                let koszul = odd_char && (last.0 % 2 == 1) && (before % 2 == 1);
                let neg = (n % 2 == 1) != koszul;
                let prod = alg
                    .multiply_basis(last.0, last.1 as usize, word[0].0, word[0].1 as usize)
                    .expect("product inside the window");
                let lvl = last.0 + word[0].0;
                for (k, c) in prod.iter() {
                    let mut w2 = Vec::with_capacity(n);
                    w2.push((lvl, k));
                    w2.extend_from_slice(&word[1..n]);
                    if let Some(&t) = target.get(w2.as_slice()) {
                        entries.push((t, if neg { f.neg(c) } else { c }));
                    }
                }
            }
            out.push(SparseVec::from_entries(f, entries));
        }
        out
    }

    /// Homology dimensions `H_0 .. H_{max_n - 1}` (the top degree lacks its
    /// incoming boundary and is not reported).
    pub fn homology(&self, alg: &Algebra, coeffs: Coefficients) -> Vec<usize> {
        let f = alg.field();
        let ranks: Vec<usize> = (0..self.bases.len())
            .map(|n| {
                if n == 0 {
                    0
                } else {
                    rank(f, self.bases[n - 1].len(), &self.boundary(alg, coeffs, n))
                }
            })
            .collect();
        (0..self.bases.len().saturating_sub(1))
            .map(|n| self.bases[n].len() - ranks[n] - ranks[n + 1])
            .collect()
    }
}
