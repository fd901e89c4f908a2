//! Degreewise monomial bases and multiplication for a presented algebra.
//!
//! Degrees are handled internally as nonnegative *levels*: the absolute
//! value of the internal degree. A coconnective presentation is reflected
//! on the way in and un-reflected on the way out.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::graded::presentation::{Monomial, Presentation};
use crate::linalg::{Echelon, SparseVec};

/// The quotient algebra computed up to a level bound.
#[derive(Clone, Debug)]
pub struct Algebra {
    pres: Presentation,
    bound: u32,
    levels: Vec<Level>,
}

#[derive(Clone, Debug, Default)]
struct Level {
    /// Column of each free monomial; columns are sorted descending so the
    /// pivot of a reduced relation is its largest monomial.
    index: HashMap<Monomial, u32>,
    /// Standard monomials in ascending order.
    basis: Vec<Monomial>,
    /// Normal form of each free monomial in basis coordinates.
    normal: Vec<SparseVec>,
}

impl Algebra {
    pub fn new(pres: &Presentation, bound: u32) -> Self {
        let free = free_monomials(pres, bound);
        let levels: Vec<Level> = (0..=bound)
            .into_par_iter()
            .map(|n| build_level(pres, n, &free))
            .collect();
        Self {
            pres: pres.clone(),
            bound,
            levels,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn field(&self) -> &PrimeField {
        self.pres.field()
    }

    /// Largest level computed.
    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Signed internal degree of a level.
    pub fn degree_of_level(&self, level: u32) -> i32 {
        self.pres.orientation().sign() * level as i32
    }

    /// Level of a signed degree, if it lies on the orientation's half-line.
    pub fn level_of_degree(&self, degree: i32) -> Option<u32> {
        let l = self.pres.orientation().sign() * degree;
        (l >= 0).then_some(l as u32)
    }

    pub fn dim(&self, level: u32) -> usize {
        self.levels.get(level as usize).map_or(0, |l| l.basis.len())
    }

    pub fn basis(&self, level: u32) -> &[Monomial] {
        &self.levels[level as usize].basis
    }

    /// Position of a standard monomial in the basis of its level.
    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        let level = self.pres.monomial_level(m);
        let l = self.levels.get(level as usize)?;
        l.basis.binary_search(m).ok()
    }

    /// Dimensions by level, `0..=bound`.
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.basis.len()).collect()
    }

    /// Normal form of a free monomial as a basis combination.
    pub fn normal_form(&self, m: &Monomial) -> Result<SparseVec> {
        let level = self.pres.monomial_level(m);
        let l = self.level_checked(level)?;
        let i = l.index[m];
        Ok(l.normal[i as usize].clone())
    }

    fn level_checked(&self, level: u32) -> Result<&Level> {
        self.levels
            .get(level as usize)
            .ok_or(Error::OutsideWindow {
                degree: self.degree_of_level(level),
                bound: self.bound,
            })
    }

    /// Product of basis elements `i` (at `la`) and `j` (at `lb`).
    pub fn multiply_basis(&self, la: u32, i: usize, lb: u32, j: usize) -> Result<SparseVec> {
        let a = &self.levels[la as usize].basis[i];
        let b = &self.levels[lb as usize].basis[j];
        let target = self.level_checked(la + lb)?;
        Ok(match self.pres.multiply_monomials(a, b) {
            None => SparseVec::new(),
            Some((neg, m)) => {
                let nf = &target.normal[target.index[&m] as usize];
                if neg {
                    nf.scale(self.field(), self.field().neg(1))
                } else {
                    nf.clone()
                }
            }
        })
    }

    /// Product of homogeneous elements given in basis coordinates.
    pub fn multiply(&self, la: u32, a: &SparseVec, lb: u32, b: &SparseVec) -> Result<SparseVec> {
        let f = self.field();
        let mut out: Vec<(u32, u32)> = Vec::new();
        for (i, ca) in a.iter() {
            for (j, cb) in b.iter() {
                let prod = self.multiply_basis(la, i as usize, lb, j as usize)?;
                let c = f.mul(ca, cb);
                out.extend(prod.iter().map(|(k, v)| (k, f.mul(v, c))));
            }
        }
        Ok(SparseVec::from_entries(f, out))
    }

    /// Multiply two elements given as (level, coordinates) pairs, checking
    /// homogeneity of the inputs first.
    pub fn multiply_elements(&self, a: &Element, b: &Element) -> Result<Element> {
        let coords = self.multiply(a.level, &a.coords, b.level, &b.coords)?;
        Ok(Element {
            level: a.level + b.level,
            coords,
        })
    }

    /// Images of the basis of `level` under multiplication by `x` (on the
    /// left, `x` at level `lx`).
    pub fn left_multiplication(&self, lx: u32, x: &SparseVec, level: u32) -> Result<Vec<SparseVec>> {
        (0..self.dim(level))
            .map(|i| self.multiply(lx, x, level, &SparseVec::unit(i as u32)))
            .collect()
    }

    /// Reduce a free-algebra polynomial to a homogeneous element.
    pub fn reduce_polynomial(
        &self,
        p: &crate::graded::presentation::Polynomial,
    ) -> Result<Element> {
        if p.is_zero() {
            return Ok(Element {
                level: 0,
                coords: SparseVec::new(),
            });
        }
        let level = self
            .pres
            .homogeneous_level(p)
            .ok_or(Error::InhomogeneousOperand)?;
        let f = self.field();
        let mut out = Vec::new();
        for (m, &c) in &p.terms {
            let nf = self.normal_form(m)?;
            out.extend(nf.iter().map(|(k, v)| (k, f.mul(v, c))));
        }
        Ok(Element {
            level,
            coords: SparseVec::from_entries(f, out),
        })
    }

    /// Parse an element from polynomial text.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let p = self.pres.parse_polynomial(s)?;
        self.reduce_polynomial(&p)
    }

    pub fn format_element(&self, e: &Element) -> String {
        if e.coords.is_zero() {
            return "0".into();
        }
        let basis = self.basis(e.level);
        let mut poly = crate::graded::presentation::Polynomial::zero();
        for (i, c) in e.coords.iter() {
            poly.terms.insert(basis[i as usize].clone(), c);
        }
        self.pres.format_polynomial(&poly)
    }

    /// Largest level with nonzero dimension, if the algebra visibly vanishes
    /// above it: the top run of zero levels must be at least as long as the
    /// largest generator degree.
    pub fn top_level(&self) -> Option<u32> {
        let max_gen = self
            .pres
            .generators()
            .iter()
            .map(|g| g.degree.unsigned_abs())
            .max()
            .unwrap_or(0);
        let top = (0..=self.bound).rev().find(|&l| self.dim(l) > 0)?;
        (self.bound - top >= max_gen.max(1)).then_some(top)
    }

    pub fn to_graded_space(&self) -> GradedVectorSpace {
        let mut dims = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for l in 0..=self.bound {
            let d = self.degree_of_level(l);
            dims.insert(d, self.dim(l));
            labels.insert(
                d,
                self.basis(l)
                    .iter()
                    .map(|m| self.pres.format_monomial(m))
                    .collect(),
            );
        }
        GradedVectorSpace { dims, labels }
    }
}

/// A homogeneous element: level plus coordinates in the level's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub level: u32,
    pub coords: SparseVec,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }
}

/// Dimensions and monomial labels by internal degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    pub dims: BTreeMap<i32, usize>,
    pub labels: BTreeMap<i32, Vec<String>>,
}

impl GradedVectorSpace {
    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }
}

/// Monomial basis of the quotient in every degree `|n| <= degree_bound`.
pub fn enumerate_basis(pres: &Presentation, degree_bound: u32) -> GradedVectorSpace {
    Algebra::new(pres, degree_bound).to_graded_space()
}

/// Free monomials bucketed by level.
fn free_monomials(pres: &Presentation, bound: u32) -> Vec<Vec<Monomial>> {
    let n = pres.num_generators();
    let degs: Vec<u32> = pres
        .generators()
        .iter()
        .map(|g| g.degree.unsigned_abs())
        .collect();
    let caps: Vec<u32> = (0..n)
        .map(|i| if pres.is_free_exterior(i) { 1 } else { u32::MAX })
        .collect();
    let mut buckets = vec![Vec::new(); bound as usize + 1];
    let mut current = vec![0u32; n];
    fn rec(
        i: usize,
        level: u32,
        bound: u32,
        degs: &[u32],
        caps: &[u32],
        current: &mut Vec<u32>,
        buckets: &mut [Vec<Monomial>],
    ) {
        if i == degs.len() {
            buckets[level as usize].push(current.clone());
            return;
        }
        let mut e = 0;
        let mut l = level;
        loop {
            current[i] = e;
            rec(i + 1, l, bound, degs, caps, current, buckets);
            if e == caps[i] || l + degs[i] > bound {
                break;
            }
            e += 1;
            l += degs[i];
        }
        current[i] = 0;
    }
    rec(0, 0, bound, &degs, &caps, &mut current, &mut buckets);
    buckets
}

fn build_level(pres: &Presentation, level: u32, buckets: &[Vec<Monomial>]) -> Level {
    let f = pres.field();
    let mut free = buckets[level as usize].clone();
    free.sort_unstable_by(|a, b| b.cmp(a));
    let index: HashMap<Monomial, u32> = free
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i as u32))
        .collect();
    let mut ech = Echelon::new(f, free.len());
    // Multipliers for each relation: every free monomial of the
    // complementary level.
    for r in pres.relations() {
        let rl = pres.homogeneous_level(r).expect("validated relation");
        if rl > level {
            continue;
        }
        for m in &buckets[(level - rl) as usize] {
            let mut entries = Vec::with_capacity(r.terms.len());
            for (rm, &c) in &r.terms {
                if let Some((neg, prod)) = pres.multiply_monomials(m, rm) {
                    entries.push((index[&prod], f.mul(c, f.sign(neg))));
                }
            }
            let v = SparseVec::from_entries(f, entries);
            if !v.is_zero() {
                ech.insert(&v);
            }
        }
    }
    let ech = ech.into_reduced();
    // Standard monomials: non-pivot columns, listed ascending.
    let mut std_cols: Vec<u32> = (0..free.len() as u32).filter(|&c| !ech.is_pivot(c)).collect();
    std_cols.reverse();
    let basis: Vec<Monomial> = std_cols.iter().map(|&c| free[c as usize].clone()).collect();
    let mut col_to_basis = vec![u32::MAX; free.len()];
    for (b, &c) in std_cols.iter().enumerate() {
        col_to_basis[c as usize] = b as u32;
    }
    let mut normal = vec![SparseVec::new(); free.len()];
    for (b, &c) in std_cols.iter().enumerate() {
        normal[c as usize] = SparseVec::unit(b as u32);
    }
    for row in ech.rows() {
        let (pivot, _) = row.leading().expect("nonzero row");
        // pivot + sum(c_j std_j) = 0  =>  pivot = -sum(c_j std_j)
        let entries: Vec<(u32, u32)> = row
            .iter()
            .skip(1)
            .map(|(col, c)| (col_to_basis[col as usize], f.neg(c)))
            .collect();
        normal[pivot as usize] = SparseVec::from_entries(f, entries);
    }
    Level {
        index,
        basis,
        normal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn elt(a: &Algebra, s: &str) -> Element {
        a.parse_element(s).unwrap()
    }

    #[test]
    fn polynomial_generator_dims() {
        let p = Presentation::builder(3).poly("mu", 2).build().unwrap();
        let a = Algebra::new(&p, 6);
        assert_eq!(a.dims(), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn exterior_times_polynomial_dims() {
        let p = Presentation::builder(2)
            .ext("l5", 5)
            .ext("l7", 7)
            .poly("mu", 8)
            .build()
            .unwrap();
        let a = Algebra::new(&p, 13);
        let nonzero: Vec<u32> = (0..=13).filter(|&l| a.dim(l) > 0).collect();
        assert_eq!(nonzero, vec![0, 5, 7, 8, 12, 13]);
        assert!((0..=13).all(|l| a.dim(l) <= 1));
    }

    #[test]
    fn truncated_polynomial() {
        let p = Presentation::builder(5).poly("v", 2).relation("v^4").build().unwrap();
        let a = Algebra::new(&p, 10);
        assert_eq!(a.dims(), vec![1, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0]);
        let v3 = elt(&a, "v^3");
        let v = elt(&a, "v");
        assert!(a.multiply_elements(&v3, &v).unwrap().is_zero());
        assert_eq!(a.top_level(), Some(6));
    }

    #[test]
    fn exterior_square_in_char_two() {
        let p = Presentation::builder(2).ext("l", 5).build().unwrap();
        let a = Algebra::new(&p, 10);
        let l = elt(&a, "l");
        assert!(a.multiply_elements(&l, &l).unwrap().is_zero());
    }

    #[test]
    fn graded_sign_in_products() {
        let p = Presentation::builder(3).ext("a", 5).ext("b", 7).build().unwrap();
        let a = Algebra::new(&p, 12);
        let x = elt(&a, "a");
        let y = elt(&a, "b");
        let xy = a.multiply_elements(&x, &y).unwrap();
        let yx = a.multiply_elements(&y, &x).unwrap();
        assert_eq!(xy.coords, yx.coords.scale(a.field(), 2));
    }

    #[test]
    fn relations_mixing_monomials() {
        // k[x,y]/(x^2 - y^2): dims 1,2,2,2,...
        let p = Presentation::builder(3)
            .poly("x", 2)
            .poly("y", 2)
            .relation("x^2 - y^2")
            .build()
            .unwrap();
        let a = Algebra::new(&p, 8);
        assert_eq!(a.dims(), vec![1, 0, 2, 0, 2, 0, 2, 0, 2]);
        let x2 = elt(&a, "x^2");
        let y2 = elt(&a, "y^2");
        assert_eq!(x2, y2);
    }

    #[test]
    fn coconnective_reflection() {
        let p = Presentation::parse("char = 3\norientation = coconnective\n[gen] x, -2\n").unwrap();
        let g = enumerate_basis(&p, 4);
        assert_eq!(g.dim(-4), 1);
        assert_eq!(g.dim(-3), 0);
        assert_eq!(g.dim(4), 0);
        assert_eq!(g.labels[&-4], vec!["x^2".to_string()]);
    }
}
