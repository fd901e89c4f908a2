//! Hochschild cochains `Hom(I^{(x) n}, R)` of internal degree `t`, truncated
//! to sources of level at most `W`.
//!
//! The truncation is a quotient complex, so it can have spurious classes
//! near the cut. We report the stable image: classes of `C_{<=W}` that lift
//! to cocycles of `C_{<=W'}` with `W' = 2W`.
//!
//! `(delta f)(a_1 .. a_{n+1}) = (-1)^{|a_1| |f|} a_1 f(a_2 ..)
//!   + sum_i (-1)^i f(.. a_i a_{i+1} ..) + (-1)^{n+1} f(a_1 .. a_n) a_{n+1}`.

use std::collections::HashMap;

use super::bar::{bar_words, Letter};
use crate::graded::Algebra;
use crate::linalg::{kernel, rank, SparseVec};

/// `x * y` decompositions: for each level and basis element `z`, the
/// pairs of letters whose product has a nonzero `z`-coefficient.
pub(crate) struct Splittings {
    by_target: HashMap<Letter, Vec<(Letter, Letter, u32)>>,
}

impl Splittings {
    pub fn new(alg: &Algebra, max_level: u32) -> Self {
        let mut by_target: HashMap<Letter, Vec<(Letter, Letter, u32)>> = HashMap::new();
        for lx in 1..max_level {
            for ly in 1..=max_level - lx {
                for x in 0..alg.dim(lx) {
                    for y in 0..alg.dim(ly) {
                        let prod = alg.multiply_basis(lx, x, ly, y).expect("inside window");
                        for (z, c) in prod.iter() {
                            by_target
                                .entry((lx + ly, z))
                                .or_default()
                                .push(((lx, x as u32), (ly, y as u32), c));
                        }
                    }
                }
            }
        }
        Self { by_target }
    }

    fn of(&self, z: Letter) -> &[(Letter, Letter, u32)] {
        self.by_target.get(&z).map_or(&[], Vec::as_slice)
    }
}

/// Basis of `C^{n,t}_{<= w_max}`: `(word, basis index of R_{w + t})`,
/// ordered by source level so truncations are prefixes.
pub(crate) struct CochainBasis {
    pub items: Vec<(Vec<Letter>, u32)>,
    /// `prefix[w]` = number of items with source level `<= w`.
    pub prefix: Vec<usize>,
    index: HashMap<(Vec<Letter>, u32), u32>,
}

impl CochainBasis {
    pub fn new(alg: &Algebra, n: usize, t: i32, w_max: u32) -> Self {
        let mut items = Vec::new();
        let mut prefix = Vec::with_capacity(w_max as usize + 1);
        for w in 0..=w_max {
            let target = w as i64 + t as i64;
            if target >= 0 && target as u32 <= alg.bound() {
                let dim = alg.dim(target as u32) as u32;
                if dim > 0 {
                    for word in bar_words(alg, n, w) {
                        for b in 0..dim {
                            items.push((word.clone(), b));
                        }
                    }
                }
            }
            prefix.push(items.len());
        }
        let index = items
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i as u32))
            .collect();
        Self { items, prefix, index }
    }

    pub fn len_upto(&self, w: u32) -> usize {
        self.prefix[(w as usize).min(self.prefix.len() - 1)]
    }

    fn get(&self, word: &[Letter], b: u32) -> Option<u32> {
        self.index.get(&(word.to_vec(), b)).copied()
    }
}

/// Images `delta(e_i)` of the basis of `src` (bar degree `n`) in `dst`.
pub(crate) fn coboundary(
    alg: &Algebra,
    split: &Splittings,
    src: &CochainBasis,
    dst: &CochainBasis,
    n: usize,
    t: i32,
    w_max: u32,
) -> Vec<SparseVec> {
    let f = alg.field();
    let odd_char = f.characteristic() != 2;
    let letters: Vec<Letter> = (1..=w_max)
        .flat_map(|l| (0..alg.dim(l) as u32).map(move |i| (l, i)))
        .collect();
    let level = |word: &[Letter]| word.iter().map(|l| l.0).sum::<u32>();
    let mut out = Vec::with_capacity(src.items.len());
    for (u, b) in &src.items {
        let w = level(u);
        let bl = (w as i64 + t as i64) as u32;
        let mut entries: Vec<(u32, u32)> = Vec::new();
        let add = |word: &[Letter], vec: &SparseVec, neg: bool, entries: &mut Vec<(u32, u32)>| {
            for (k, c) in vec.iter() {
                if let Some(j) = dst.get(word, k) {
                    entries.push((j, if neg { f.neg(c) } else { c }));
                }
            }
        };
        for &a in &letters {
            if w + a.0 > w_max {
                break;
            }
            // delta^0: (-1)^{|a| t} a * f(u).
            let prod = alg.multiply_basis(a.0, a.1 as usize, bl, *b as usize).expect("inside window");
            let mut v = Vec::with_capacity(n + 1);
            v.push(a);
            v.extend_from_slice(u);
            add(&v, &prod, odd_char && a.0 % 2 == 1 && t.rem_euclid(2) == 1, &mut entries);
            // delta^{n+1}: (-1)^{n+1} f(u) * a.
            let prod = alg.multiply_basis(bl, *b as usize, a.0, a.1 as usize).expect("inside window");
            let mut v = u.clone();
            v.push(a);
            add(&v, &prod, (n + 1) % 2 == 1, &mut entries);
        }
        // delta^i, 1 <= i <= n: split the i-th letter.
        for i in 1..=n {
            for &(x, y, c) in split.of(u[i - 1]) {
                let mut v = Vec::with_capacity(n + 1);
                v.extend_from_slice(&u[..i - 1]);
                v.push(x);
                v.push(y);
                v.extend_from_slice(&u[i..]);
                if let Some(j) = dst.get(&v, *b) {
                    entries.push((j, if i % 2 == 1 { f.neg(c) } else { c }));
                }
            }
        }
        out.push(SparseVec::from_entries(f, entries));
    }
    out
}

/// Dimension of the stable image of `HH^{n,t}` at truncation `w` inside
/// `C_{<= 2w}`.
pub(crate) fn stable_dimension(alg: &Algebra, split: &Splittings, n: usize, t: i32, w: u32) -> usize {
    let wide = 2 * w;
    let f = alg.field();
    let c_n = CochainBasis::new(alg, n, t, wide);
    if c_n.len_upto(w) == 0 {
        return 0;
    }
    let c_next = CochainBasis::new(alg, n + 1, t, wide);
    let delta = coboundary(alg, split, &c_n, &c_next, n, t, wide);
    let cocycles = kernel(f, c_next.items.len(), &delta);
    let cut = c_n.len_upto(w) as u32;
    let restricted: Vec<SparseVec> = cocycles
        .iter()
        .map(|z| SparseVec(z.iter().filter(|&(i, _)| i < cut).collect()))
        .collect();
    let z_rank = rank(f, cut as usize, &restricted);
    let b_rank = if n == 0 {
        0
    } else {
        let c_prev = CochainBasis::new(alg, n - 1, t, w);
        let c_here = CochainBasis::new(alg, n, t, w);
        let images = coboundary(alg, split, &c_prev, &c_here, n - 1, t, w);
        rank(f, c_here.items.len(), &images)
    };
    z_rank - b_rank
}
