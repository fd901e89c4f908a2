//! Multiplicative bigraded spectral sequences with `E^2 = pi_*(Q) (x) pi_*(S)`.
//!
//! Pages are stored as subquotients `E^r = Z_r / B_r` of the `E^2` algebra,
//! level by level. A differential is given on the presentation generators
//! and extended to all of `E^2` as a derivation `D` (Leibniz rule with the
//! sign of the total degree), so that
//!
//! ```text
//! Z_{r+1} = { z in Z_r : D z in B_r },   B_{r+1} = B_r + D(Z_r).
//! ```
//!
//! Both orientations use absolute levels: `d_r` moves `(s, t)` levels to
//! `(s - r, t + r - 1)`, lowering the total level by one. In signed degrees
//! this is `(-r, r-1)` for connective input and `(+r, -r+1)` otherwise.

mod schedule;

pub use schedule::{
    convergence_check, frobenius_survival, parse_schedule, run_schedule, s_degree_range,
    ConvergenceReport, ConvergenceTarget, FrobeniusReport, Mismatch, ScheduleRun,
};

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{Algebra, Orientation, Presentation};
use crate::linalg::{kernel, Echelon, SparseVec};

/// Differentials on page `page`, given on generators of `E^2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialSpec {
    pub page: u32,
    /// Generator name to target polynomial; unlisted generators map to 0.
    pub assignments: Vec<(String, String)>,
}

impl DifferentialSpec {
    pub fn new(page: u32) -> Self {
        Self {
            page,
            assignments: Vec::new(),
        }
    }

    pub fn set(mut self, generator: &str, target: &str) -> Self {
        self.assignments.push((generator.to_string(), target.to_string()));
        self
    }
}

/// The `E^2` algebra and its bigrading.
#[derive(Debug)]
pub(crate) struct E2 {
    pub(crate) alg: Algebra,
    pub(crate) q: Presentation,
    pub(crate) s: Presentation,
    /// Reliable total level; the algebra is computed one level further.
    pub(crate) window: u32,
    /// For each level, the `s`-level of each basis monomial.
    s_level: Vec<Vec<u32>>,
}

impl E2 {
    fn new(q: &Presentation, s: &Presentation, window: u32) -> Result<Self> {
        let pres = q.tensor(s)?;
        let alg = Algebra::new(&pres, window + 1);
        let nq = q.num_generators();
        let s_level = (0..=window + 1)
            .map(|n| {
                alg.basis(n)
                    .iter()
                    .map(|m| m[..nq].iter().zip(q.generators()).map(|(&e, g)| e * g.degree.unsigned_abs()).sum())
                    .collect()
            })
            .collect();
        Ok(Self {
            alg,
            q: q.clone(),
            s: s.clone(),
            window,
            s_level,
        })
    }

    fn bound(&self) -> u32 {
        self.window + 1
    }

    fn bidegree_of(&self, n: u32, col: u32) -> (u32, u32) {
        let s = self.s_level[n as usize][col as usize];
        (s, n - s)
    }

    fn signed(&self, (s, t): (u32, u32)) -> (i32, i32) {
        let sign = self.alg.presentation().orientation().sign();
        (sign * s as i32, sign * t as i32)
    }

    /// Are all entries of `v` in bidegree `(s, n - s)`?
    fn is_bihomogeneous(&self, n: u32, v: &SparseVec, s: u32) -> bool {
        v.iter().all(|(c, _)| self.s_level[n as usize][c as usize] == s)
    }
}

/// `D` on every basis monomial, level by level: `table[n][i]` lies in level
/// `n - 1`.
#[derive(Debug)]
pub(crate) struct Derivation {
    table: Vec<Vec<SparseVec>>,
}

impl Derivation {
    fn build(e2: &E2, spec: &DifferentialSpec) -> Result<Self> {
        let alg = &e2.alg;
        let pres = alg.presentation();
        let f = alg.field();
        let r = spec.page;
        let ngen = pres.num_generators();
        let mut on_gen: Vec<SparseVec> = vec![SparseVec::new(); ngen];
        for (name, target) in &spec.assignments {
            let i = pres
                .generator_index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
            let lg = pres.generators()[i].degree.unsigned_abs();
            let (sg, tg) = if i < e2.q.num_generators() { (lg, 0) } else { (0, lg) };
            let poly = pres.parse_polynomial(target)?;
            if poly.is_zero() {
                continue;
            }
            let el = alg.reduce_polynomial(&poly).map_err(|e| match e {
                Error::InhomogeneousOperand => {
                    Error::BidegreeViolation(format!("d_{r}({name}) = {target} is not homogeneous"))
                }
                other => other,
            })?;
            if el.coords.is_zero() {
                continue;
            }
            let ok = sg >= r && el.level + 1 == lg && e2.is_bihomogeneous(el.level, &el.coords, sg - r);
            if !ok {
                let (ss, tt) = e2.signed((sg, tg));
                return Err(Error::BidegreeViolation(format!(
                    "d_{r}({name}) = {target}: {name} sits in ({ss}, {tt}) and its target must be in the bidegree {} steps away",
                    r
                )));
            }
            on_gen[i] = el.coords;
        }
        let odd_char = f.characteristic() != 2;
        let mut table: Vec<Vec<SparseVec>> = Vec::with_capacity(e2.bound() as usize + 1);
        for n in 0..=e2.bound() {
            let mut row = Vec::with_capacity(alg.dim(n));
            for m in alg.basis(n) {
                let Some(g) = m.iter().position(|&e| e > 0) else {
                    row.push(SparseVec::new());
                    continue;
                };
                let lg = pres.generators()[g].degree.unsigned_abs();
                let mut rest = m.clone();
                rest[g] -= 1;
                let lr = n - lg;
                let rest_nf = alg.normal_form(&rest)?;
                let gen_nf = alg.normal_form(&pres.generator_monomial(g))?;
                // D(g m') = D(g) m' + (-1)^{|g|} g D(m').
                let mut v = if on_gen[g].is_zero() {
                    SparseVec::new()
                } else {
                    alg.multiply(lg - 1, &on_gen[g], lr, &rest_nf)?
                };
                if lr > 0 {
                    let d_rest = apply(&table, f, lr, &rest_nf);
                    if !d_rest.is_zero() {
                        let term = alg.multiply(lg, &gen_nf, lr - 1, &d_rest)?;
                        let c = f.sign(odd_char && lg % 2 == 1);
                        v = v.add_scaled(f, &term, c);
                    }
                }
                row.push(v);
            }
            table.push(row);
        }
        Ok(Self { table })
    }

    fn apply(&self, alg: &Algebra, n: u32, v: &SparseVec) -> SparseVec {
        apply(&self.table, alg.field(), n, v)
    }

    /// `D(g b) = D(g) b + (-1)^{|g|} g D(b)` for every generator `g` and
    /// basis monomial `b` inside the window.
    fn check_leibniz(&self, e2: &E2) -> Result<()> {
        let alg = &e2.alg;
        let pres = alg.presentation();
        let f = alg.field();
        let odd_char = f.characteristic() != 2;
        for g in 0..pres.num_generators() {
            let lg = pres.generators()[g].degree.unsigned_abs();
            let gen_nf = alg.normal_form(&pres.generator_monomial(g))?;
            if gen_nf.is_zero() {
                continue;
            }
            let dg = self.apply(alg, lg, &gen_nf);
            for lb in 0..=e2.bound().saturating_sub(lg) {
                for b in 0..alg.dim(lb) {
                    let bv = SparseVec::unit(b as u32);
                    let prod = alg.multiply(lg, &gen_nf, lb, &bv)?;
                    let lhs = self.apply(alg, lg + lb, &prod);
                    let mut rhs = if dg.is_zero() { SparseVec::new() } else { alg.multiply(lg - 1, &dg, lb, &bv)? };
                    if lb > 0 {
                        let db = self.apply(alg, lb, &bv);
                        if !db.is_zero() {
                            let term = alg.multiply(lg, &gen_nf, lb - 1, &db)?;
                            rhs = rhs.add_scaled(f, &term, f.sign(odd_char && lg % 2 == 1));
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::LeibnizInconsistent(format!(
                            "D({} * {}) differs from the Leibniz expansion",
                            pres.generators()[g].name,
                            pres.format_monomial(&alg.basis(lb)[b])
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

fn apply(table: &[Vec<SparseVec>], f: &crate::field::PrimeField, n: u32, v: &SparseVec) -> SparseVec {
    if n == 0 {
        return SparseVec::new();
    }
    let mut entries = Vec::new();
    for (i, c) in v.iter() {
        entries.extend(table[n as usize][i as usize].iter().map(|(j, x)| (j, f.mul(x, c))));
    }
    SparseVec::from_entries(f, entries)
}

/// A page `E^r` as a subquotient of `E^2`, kept for every total level up
/// to one past the window. The extra level is computed but flagged
/// unreliable: its incoming differentials would come from outside.
#[derive(Clone, Debug)]
pub struct BigradedPage {
    e2: Arc<E2>,
    r: u32,
    z: Vec<Echelon>,
    b: Vec<Echelon>,
}

/// One bidegree of a page snapshot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageEntry {
    pub s: i32,
    pub t: i32,
    pub dim: usize,
    /// Representatives of a basis, as `E^2` polynomials.
    pub labels: Vec<String>,
    pub reliable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageSnapshot {
    pub r: u32,
    pub orientation: Orientation,
    pub window: u32,
    pub entries: Vec<PageEntry>,
}

/// `E^2 = pi_*(Q) (x) pi_*(S)` on total levels `0..=window`.
pub fn build_e2(q: &Presentation, s: &Presentation, window: u32) -> Result<BigradedPage> {
    let e2 = E2::new(q, s, window)?;
    let f = e2.alg.field().clone();
    let mut z = Vec::new();
    let mut b = Vec::new();
    for n in 0..=e2.bound() {
        let d = e2.alg.dim(n);
        let mut full = Echelon::new(&f, d);
        for i in 0..d {
            full.insert(&SparseVec::unit(i as u32));
        }
        z.push(full);
        b.push(Echelon::new(&f, d));
    }
    Ok(BigradedPage {
        e2: Arc::new(e2),
        r: 2,
        z,
        b,
    })
}

/// Apply `d_r` from `spec` and return `E^{r+1}`.
pub fn apply_and_turn(page: &BigradedPage, spec: &DifferentialSpec) -> Result<BigradedPage> {
    if spec.page != page.r {
        return Err(Error::BidegreeViolation(format!(
            "differential for page {} applied to page {}",
            spec.page, page.r
        )));
    }
    let e2 = &page.e2;
    let alg = &e2.alg;
    let f = alg.field();
    let d = Derivation::build(e2, spec)?;
    d.check_leibniz(e2)?;
    let top = e2.bound();
    let images: Vec<Vec<SparseVec>> = (0..=top)
        .map(|n| page.z[n as usize].rows().iter().map(|z| d.apply(alg, n, z)).collect())
        .collect();
    for n in 1..=top {
        let nu = n as usize;
        for (z, dz) in page.z[nu].rows().iter().zip(&images[nu]) {
            if !page.z[nu - 1].contains(dz) {
                return Err(Error::LeibnizInconsistent(format!(
                    "d_{}({}) is not a cycle on earlier pages",
                    page.r,
                    page.label(n, z)
                )));
            }
            if n >= 2 && !page.b[nu - 2].contains(&d.apply(alg, n - 1, dz)) {
                return Err(Error::LeibnizInconsistent(format!(
                    "d_{} o d_{} is nonzero on {}",
                    page.r,
                    page.r,
                    page.label(n, z)
                )));
            }
        }
        for bv in page.b[nu].rows() {
            if !page.b[nu - 1].contains(&d.apply(alg, n, bv)) {
                return Err(Error::LeibnizInconsistent(format!(
                    "d_{} does not preserve boundaries at {}",
                    page.r,
                    page.label(n, bv)
                )));
            }
        }
    }
    let mut z = Vec::with_capacity(page.z.len());
    let mut b = Vec::with_capacity(page.b.len());
    for n in 0..=top {
        let nu = n as usize;
        let rows = page.z[nu].rows();
        let mut next_z = Echelon::new(f, alg.dim(n));
        if n == 0 {
            next_z = page.z[0].clone();
        } else {
            let reduced: Vec<SparseVec> = images[nu].iter().map(|v| page.b[nu - 1].reduce(v)).collect();
            for k in kernel(f, alg.dim(n - 1), &reduced) {
                let mut v = SparseVec::new();
                for (j, c) in k.iter() {
                    v = v.add_scaled(f, &rows[j as usize], c);
                }
                next_z.insert(&v);
            }
        }
        let mut next_b = page.b[nu].clone();
        if n < top {
            for v in &images[nu + 1] {
                next_b.insert(v);
            }
        }
        z.push(next_z);
        b.push(next_b);
    }
    Ok(BigradedPage {
        e2: page.e2.clone(),
        r: page.r + 1,
        z,
        b,
    })
}

impl BigradedPage {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn window(&self) -> u32 {
        self.e2.window
    }

    pub fn orientation(&self) -> Orientation {
        self.e2.alg.presentation().orientation()
    }

    /// The `E^2` algebra; page classes are represented by its elements.
    pub fn algebra(&self) -> &Algebra {
        &self.e2.alg
    }

    pub fn q_presentation(&self) -> &Presentation {
        &self.e2.q
    }

    pub fn s_presentation(&self) -> &Presentation {
        &self.e2.s
    }

    /// The same page, relabelled as page `r` (no differentials in between).
    pub fn advance_to(&self, r: u32) -> Result<BigradedPage> {
        if r < self.r {
            return Err(Error::BidegreeViolation(format!("cannot go back from page {} to page {r}", self.r)));
        }
        Ok(BigradedPage { r, ..self.clone() })
    }

    fn label(&self, n: u32, v: &SparseVec) -> String {
        self.e2.alg.format_element(&crate::graded::Element {
            level: n,
            coords: v.clone(),
        })
    }

    fn count_by_s(&self, e: &Echelon, n: u32) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for c in e.pivot_columns() {
            *out.entry(self.e2.bidegree_of(n, c).0).or_insert(0) += 1;
        }
        out
    }

    /// Dimensions per level bidegree `(s, t)` at total level `n`.
    fn level_dims(&self, n: u32) -> BTreeMap<(u32, u32), usize> {
        let zc = self.count_by_s(&self.z[n as usize], n);
        let bc = self.count_by_s(&self.b[n as usize], n);
        zc.into_iter()
            .filter_map(|(s, k)| {
                let d = k - bc.get(&s).copied().unwrap_or(0);
                (d > 0).then_some(((s, n - s), d))
            })
            .collect()
    }

    /// Dimensions keyed by signed bidegree, reliable entries only.
    pub fn dims(&self) -> BTreeMap<(i32, i32), usize> {
        (0..=self.e2.window)
            .flat_map(|n| self.level_dims(n))
            .map(|(k, d)| (self.e2.signed(k), d))
            .collect()
    }

    pub fn dim(&self, s: i32, t: i32) -> usize {
        self.dims().get(&(s, t)).copied().unwrap_or(0)
    }

    /// Sum over `s + t = n`, keyed by signed total degree, reliable only.
    pub fn total_dims(&self) -> BTreeMap<i32, usize> {
        let sign = self.orientation().sign();
        (0..=self.e2.window)
            .map(|n| (sign * n as i32, self.level_dims(n).values().sum()))
            .collect()
    }

    /// Basis representatives of `Z_r / B_r` at total level `n`.
    fn representatives(&self, n: u32) -> Vec<SparseVec> {
        let mut quot = self.b[n as usize].clone();
        let mut reps = Vec::new();
        for z in self.z[n as usize].rows() {
            let r = quot.reduce(z);
            if !r.is_zero() {
                quot.insert(&r);
                reps.push(r);
            }
        }
        reps
    }

    pub fn snapshot(&self) -> PageSnapshot {
        let mut entries = Vec::new();
        for n in 0..=self.e2.bound() {
            let mut by_s: BTreeMap<u32, Vec<String>> = BTreeMap::new();
            for rep in self.representatives(n) {
                let (col, _) = rep.leading().expect("nonzero representative");
                by_s.entry(self.e2.bidegree_of(n, col).0)
                    .or_default()
                    .push(self.label(n, &rep));
            }
            for (s, labels) in by_s {
                let (ss, tt) = self.e2.signed((s, n - s));
                entries.push(PageEntry {
                    s: ss,
                    t: tt,
                    dim: labels.len(),
                    labels,
                    reliable: n <= self.e2.window,
                });
            }
        }
        entries.sort_by_key(|e| (e.s.abs() + e.t.abs(), e.s.abs()));
        PageSnapshot {
            r: self.r,
            orientation: self.orientation(),
            window: self.e2.window,
            entries,
        }
    }

    /// Monospace chart: columns `s`, rows `t` (top row largest `|t|`).
    pub fn chart(&self) -> String {
        let dims = self.dims();
        let max_s = dims.keys().map(|k| k.0.abs()).max().unwrap_or(0);
        let max_t = dims.keys().map(|k| k.1.abs()).max().unwrap_or(0);
        let sign = self.orientation().sign();
        let width = 3usize;
        let mut out = format!("E_{} (rows t, columns s)\n", self.r);
        for t in (0..=max_t).rev() {
            out.push_str(&format!("{:>4} |", sign * t));
            for s in 0..=max_s {
                let cell = match dims.get(&(sign * s, sign * t)) {
                    Some(d) => d.to_string(),
                    None => ".".into(),
                };
                out.push_str(&format!("{cell:>width$}"));
            }
            out.push('\n');
        }
        out.push_str("     +");
        out.push_str(&"-".repeat(width * (max_s as usize + 1)));
        out.push('\n');
        out.push_str("      ");
        for s in 0..=max_s {
            out.push_str(&format!("{:>width$}", (sign * s) % 100));
        }
        out.push('\n');
        out
    }

    /// Rank of `d_r` out of each signed bidegree, computed on representatives.
    pub fn differential_ranks(&self, spec: &DifferentialSpec) -> Result<BTreeMap<(i32, i32), usize>> {
        let d = Derivation::build(&self.e2, spec)?;
        let alg = &self.e2.alg;
        let mut out = BTreeMap::new();
        for n in 1..=self.e2.window {
            let mut by_s: BTreeMap<u32, Vec<SparseVec>> = BTreeMap::new();
            for rep in self.representatives(n) {
                let (col, _) = rep.leading().expect("nonzero representative");
                let img = self.b[n as usize - 1].reduce(&d.apply(alg, n, &rep));
                by_s.entry(self.e2.bidegree_of(n, col).0).or_default().push(img);
            }
            for (s, imgs) in by_s {
                let rk = crate::linalg::rank(alg.field(), alg.dim(n - 1), &imgs);
                if rk > 0 {
                    out.insert(self.e2.signed((s, n - s)), rk);
                }
            }
        }
        Ok(out)
    }

    /// `D(x)` for an element of `E^2`, using `spec`'s derivation.
    pub fn derivative(&self, spec: &DifferentialSpec, level: u32, x: &SparseVec) -> Result<SparseVec> {
        if level > self.e2.bound() {
            return Err(Error::OutsideWindow {
                degree: level as i32,
                bound: self.e2.bound(),
            });
        }
        let d = Derivation::build(&self.e2, spec)?;
        Ok(d.apply(&self.e2.alg, level, x))
    }
}
