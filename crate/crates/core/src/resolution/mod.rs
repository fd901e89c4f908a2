//! Minimal free resolutions of the residue field, built level by level.
//!
//! `F_s` is free on generators `e_g` of level `l_g`; the differential of a
//! generator is stored as a list of terms `a e_h` with `a` an algebra
//! element of level `l_g - l_h`. The module action is left multiplication.

mod ext;
mod socle;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{Algebra, Presentation};
use crate::linalg::{kernel, Echelon, SparseVec};

pub use ext::{
    certificate_from_resolution, ext_dimensions, gorenstein_certificate, structural_shift, CertificateEvidence, ExtTable,
    GorensteinCertificate, Verdict,
};
pub use socle::{socle, SocleElement};

/// Dimensions indexed by (homological degree, internal degree).
pub type BigradedDimensions = BTreeMap<(i32, i32), usize>;

/// One term `coeff * e_gen` of a differential; `coeff` lives at `level`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub gen: u32,
    pub level: u32,
    pub coeff: SparseVec,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    /// Generator levels, ascending.
    pub gens: Vec<u32>,
    /// `d(e_g)` for each generator (empty for stage 0).
    pub differential: Vec<Vec<Term>>,
}

impl Stage {
    pub fn max_level(&self) -> Option<u32> {
        self.gens.last().copied()
    }
}

/// A flat coordinate space `sum_g A_{c(l_g)}` over the generators of a
/// stage, for some rule `c` assigning each generator a coefficient level.
pub(crate) struct Layout {
    /// `(generator, offset, coefficient level)`, ascending by generator.
    pub blocks: Vec<(u32, u32, u32)>,
    pub dim: usize,
}

impl Layout {
    fn build(alg: &Algebra, gens: &[u32], coeff_level: impl Fn(u32) -> Option<u32>) -> Self {
        let mut blocks = Vec::new();
        let mut offset = 0u32;
        for (g, &lg) in gens.iter().enumerate() {
            let Some(cl) = coeff_level(lg) else { continue };
            if cl > alg.bound() {
                continue;
            }
            let d = alg.dim(cl) as u32;
            if d > 0 {
                blocks.push((g as u32, offset, cl));
                offset += d;
            }
        }
        Self {
            blocks,
            dim: offset as usize,
        }
    }

    /// `F_{s,n}`: blocks `A_{n - l_g}`.
    pub fn module(alg: &Algebra, gens: &[u32], n: u32) -> Self {
        Self::build(alg, gens, |lg| n.checked_sub(lg))
    }

    /// `Hom^t(F_s, A)`: blocks `A_{l_g + t}`.
    pub fn hom(alg: &Algebra, gens: &[u32], t: i64) -> Self {
        Self::build(alg, gens, |lg| u32::try_from(lg as i64 + t).ok())
    }

    pub fn block(&self, gen: u32) -> Option<(u32, u32)> {
        self.blocks
            .binary_search_by_key(&gen, |b| b.0)
            .ok()
            .map(|i| (self.blocks[i].1, self.blocks[i].2))
    }

    /// Split a flat vector into per-generator algebra elements.
    pub fn decode(&self, v: &SparseVec) -> Vec<Term> {
        let mut out: Vec<Term> = Vec::new();
        for (i, c) in v.iter() {
            let b = self.blocks.partition_point(|blk| blk.1 <= i) - 1;
            let (g, off, cl) = self.blocks[b];
            match out.last_mut() {
                Some(t) if t.gen == g => t.coeff.0.push((i - off, c)),
                _ => out.push(Term {
                    gen: g,
                    level: cl,
                    coeff: SparseVec(vec![(i - off, c)]),
                }),
            }
        }
        out
    }
}

/// `b * sum(a_h e_h)` for the basis element `idx` of `A_bl`, flattened into
/// `target` (which must be the module layout of the right level).
pub(crate) fn act_basis(alg: &Algebra, bl: u32, idx: usize, d: &[Term], target: &Layout) -> Result<SparseVec> {
    let f = alg.field();
    let mut entries = Vec::new();
    for t in d {
        let Some((off, _)) = target.block(t.gen) else {
            continue;
        };
        for (j, c) in t.coeff.iter() {
            let prod = alg.multiply_basis(bl, idx, t.level, j as usize)?;
            entries.extend(prod.iter().map(|(k, v)| (k + off, f.mul(v, c))));
        }
    }
    Ok(SparseVec::from_entries(f, entries))
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    alg: Arc<Algebra>,
    hom_bound: u32,
    stages: Vec<Stage>,
}

impl FreeResolution {
    /// Resolve `k` over `alg` through stage `hom_bound` and every level the
    /// algebra was computed to.
    pub fn build(alg: Arc<Algebra>, hom_bound: u32) -> Result<Self> {
        Self::build_quotient(alg, None, hom_bound)
    }

    /// Resolve the cyclic module `A / J`, `J` generated by the given
    /// homogeneous elements `(level, coords)`; `None` means the augmentation
    /// ideal, i.e. resolving `k`.
    pub fn build_quotient(alg: Arc<Algebra>, ideal: Option<&[(u32, SparseVec)]>, hom_bound: u32) -> Result<Self> {
        let pres = alg.presentation();
        let max_gen = pres
            .generators()
            .iter()
            .map(|g| g.degree.unsigned_abs())
            .max()
            .unwrap_or(0);
        if alg.bound() < max_gen {
            return Err(Error::WindowTooSmall(format!(
                "degree bound {} is below the generator degree {}",
                alg.bound(),
                max_gen
            )));
        }
        let n_max = alg.bound();
        let f = alg.field().clone();
        let mut stages: Vec<Stage> = vec![Stage {
            gens: vec![0],
            differential: vec![Vec::new()],
        }];
        stages.extend((0..hom_bound).map(|_| Stage::default()));

        for n in 0..=n_max {
            // Images of d_{s-1} on the old basis of F_{s-1,n}; kept so the
            // kernel is available without recomputation.
            let mut prev_images: Option<Vec<SparseVec>> = None;
            // A basis of J_n, and the rank of A_n -> (A/J)_n.
            let ideal_span: Vec<SparseVec> = match ideal {
                None if n == 0 => Vec::new(),
                None => (0..alg.dim(n) as u32).map(SparseVec::unit).collect(),
                Some(gens) => {
                    let mut ech = Echelon::new(&f, alg.dim(n));
                    for (lg, g) in gens {
                        let Some(cl) = n.checked_sub(*lg) else { continue };
                        for b in 0..alg.dim(cl) {
                            ech.insert(&alg.multiply(cl, &SparseVec::unit(b as u32), *lg, g)?);
                        }
                    }
                    ech.rows().to_vec()
                }
            };
            let mut prev_rank = alg.dim(n) - ideal_span.len();
            for s in 1..=hom_bound as usize {
                let src = Layout::module(&alg, &stages[s - 1].gens, n);
                let dim_ker = src.dim - prev_rank;
                let dst = Layout::module(&alg, &stages[s].gens, n);
                let mut images = Vec::with_capacity(dst.dim);
                let mut ech = Echelon::new(&f, src.dim);
                for &(g, _, cl) in &dst.blocks {
                    let d = &stages[s].differential[g as usize];
                    for b in 0..alg.dim(cl) {
                        let v = act_basis(&alg, cl, b, d, &src)?;
                        ech.insert(&v);
                        images.push(v);
                    }
                }
                let mut rank = ech.rank();
                if rank < dim_ker {
                    let kernel_vectors: Vec<SparseVec> = if s == 1 {
                        ideal_span.clone()
                    } else {
                        kernel(&f, Layout::module(&alg, &stages[s - 2].gens, n).dim, prev_images.as_deref().unwrap_or(&[]))
                    };
                    for v in kernel_vectors {
                        if rank == dim_ker {
                            break;
                        }
                        if ech.insert(&v) {
                            rank += 1;
                            stages[s].gens.push(n);
                            stages[s].differential.push(src.decode(&v));
                        }
                    }
                    debug_assert_eq!(rank, dim_ker, "kernel exhausted at stage {s} level {n}");
                }
                prev_rank = rank;
                prev_images = Some(images);
            }
        }
        Ok(Self {
            alg,
            hom_bound,
            stages,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn algebra_arc(&self) -> &Arc<Algebra> {
        &self.alg
    }

    pub fn hom_bound(&self) -> u32 {
        self.hom_bound
    }

    pub fn level_bound(&self) -> u32 {
        self.alg.bound()
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Generator degree lists by stage, as signed internal degrees.
    pub fn generator_degrees(&self) -> Vec<Vec<i32>> {
        self.stages
            .iter()
            .map(|st| st.gens.iter().map(|&l| self.alg.degree_of_level(l)).collect())
            .collect()
    }

    /// Levels that cannot contain generators unless the window is too small
    /// to see them: the top band of width (largest generator degree +
    /// largest relation degree).
    pub fn margin(&self) -> u32 {
        let pres = self.alg.presentation();
        let g = pres
            .generators()
            .iter()
            .map(|g| g.degree.unsigned_abs())
            .max()
            .unwrap_or(0);
        let r = pres
            .relations()
            .iter()
            .filter_map(|r| pres.homogeneous_level(r))
            .max()
            .unwrap_or(0);
        g + r
    }

    /// Heuristic completeness: no generators of stage `s` in the top band.
    pub fn stage_complete(&self, s: usize) -> bool {
        let Some(st) = self.stages.get(s) else {
            return false;
        };
        let cutoff = self.level_bound().saturating_sub(self.margin());
        st.gens.iter().all(|&l| l <= cutoff)
    }

    /// True when some stage within the bound is empty and every earlier
    /// stage is complete: the resolution is finite.
    pub fn terminates(&self) -> Option<usize> {
        for s in 0..self.stages.len() {
            if self.stages[s].gens.is_empty() {
                return (0..s).all(|i| self.stage_complete(i)).then_some(s);
            }
            if !self.stage_complete(s) {
                return None;
            }
        }
        None
    }

    /// Tor^A_{s,t}(k, k): generator counts.
    pub fn tor(&self) -> BigradedDimensions {
        let mut out = BigradedDimensions::new();
        for (s, st) in self.stages.iter().enumerate() {
            for &l in &st.gens {
                *out.entry((s as i32, self.alg.degree_of_level(l))).or_insert(0) += 1;
            }
        }
        out
    }

    /// Check `d o d = 0` and minimality at every stage and level.
    pub fn validate(&self) -> Result<()> {
        let alg = &self.alg;
        for s in 1..self.stages.len() {
            for (g, d) in self.stages[s].differential.iter().enumerate() {
                if d.is_empty() {
                    return Err(Error::CacheCorrupt(format!("stage {s} generator {g} has zero differential")));
                }
                let lg = self.stages[s].gens[g];
                for t in d {
                    let lh = *self.stages[s - 1]
                        .gens
                        .get(t.gen as usize)
                        .ok_or_else(|| Error::CacheCorrupt(format!("stage {s}: dangling generator")))?;
                    if t.level == 0 || t.level + lh != lg {
                        return Err(Error::CacheCorrupt(format!(
                            "stage {s} generator {g}: non-minimal or misgraded entry"
                        )));
                    }
                }
                if s >= 2 {
                    let below = Layout::module(alg, &self.stages[s - 2].gens, lg);
                    let mut acc: Vec<(u32, u32)> = Vec::new();
                    for t in d {
                        let dh = &self.stages[s - 1].differential[t.gen as usize];
                        for (j, c) in t.coeff.iter() {
                            let v = act_basis(alg, t.level, j as usize, dh, &below)?;
                            acc.extend(v.iter().map(|(k, x)| (k, alg.field().mul(x, c))));
                        }
                    }
                    if !SparseVec::from_entries(alg.field(), acc).is_zero() {
                        return Err(Error::CacheCorrupt(format!("d^2 != 0 at stage {s} generator {g}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_data(&self) -> ResolutionData {
        ResolutionData {
            presentation: self.alg.presentation().to_text(),
            level_bound: self.level_bound(),
            hom_bound: self.hom_bound,
            stages: self.stages.clone(),
        }
    }

    /// Rebuild from serialized data, validating `d^2 = 0`.
    pub fn from_data(data: ResolutionData) -> Result<Self> {
        let pres = Presentation::parse(&data.presentation)?;
        let alg = Arc::new(Algebra::new(&pres, data.level_bound));
        if data.stages.len() != data.hom_bound as usize + 1 {
            return Err(Error::CacheCorrupt("stage count does not match bound".into()));
        }
        let res = Self {
            alg,
            hom_bound: data.hom_bound,
            stages: data.stages,
        };
        res.validate()?;
        Ok(res)
    }
}

/// Serialized resolution: presentation text, window, and stages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    pub presentation: String,
    pub level_bound: u32,
    pub hom_bound: u32,
    pub stages: Vec<Stage>,
}

/// Resolve `k` over the presented algebra.
pub fn minimal_resolution(pres: &Presentation, hom_bound: u32, deg_bound: u32) -> Result<FreeResolution> {
    FreeResolution::build(Arc::new(Algebra::new(pres, deg_bound)), hom_bound)
}

pub fn tor_dimensions(pres: &Presentation, hom_bound: u32, deg_bound: u32) -> Result<BigradedDimensions> {
    Ok(minimal_resolution(pres, hom_bound, deg_bound)?.tor())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degs(r: &FreeResolution) -> Vec<Vec<i32>> {
        r.generator_degrees()
    }

    #[test]
    fn polynomial_generator_resolution() {
        let p = Presentation::builder(3).poly("mu", 2).build().unwrap();
        let r = minimal_resolution(&p, 4, 20).unwrap();
        assert_eq!(degs(&r), vec![vec![0], vec![2], vec![], vec![], vec![]]);
        assert_eq!(r.terminates(), Some(2));
        r.validate().unwrap();
    }

    #[test]
    fn exterior_resolution_is_periodic() {
        let p = Presentation::builder(2).ext("l", 3).build().unwrap();
        let r = minimal_resolution(&p, 5, 15).unwrap();
        for (s, d) in degs(&r).iter().enumerate() {
            assert_eq!(d, &vec![3 * s as i32], "stage {s}");
        }
        r.validate().unwrap();
    }

    #[test]
    fn truncated_polynomial_alternates() {
        // F_5[v]/(v^4), |v| = 2: generator degrees 0, 2, 8, 10, 16, 18.
        let p = Presentation::builder(5).poly("v", 2).relation("v^4").build().unwrap();
        let r = minimal_resolution(&p, 5, 24).unwrap();
        let expected: Vec<Vec<i32>> = vec![vec![0], vec![2], vec![8], vec![10], vec![16], vec![18]];
        assert_eq!(degs(&r), expected);
        r.validate().unwrap();
    }

    #[test]
    fn tor_of_field_and_polynomial() {
        let k = Presentation::builder(3).build().unwrap();
        let t = tor_dimensions(&k, 3, 10).unwrap();
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let p = Presentation::builder(3).poly("mu", 2).build().unwrap();
        let t = tor_dimensions(&p, 3, 10).unwrap();
        assert_eq!(t.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1), ((1, 2), 1)]);
    }

    #[test]
    fn window_too_small() {
        let p = Presentation::builder(3).poly("mu", 8).build().unwrap();
        assert!(matches!(minimal_resolution(&p, 3, 4), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn serialization_round_trip_and_corruption() {
        let p = Presentation::builder(3).poly("x", 2).poly("y", 4).relation("x^3").build().unwrap();
        let r = minimal_resolution(&p, 4, 20).unwrap();
        let data = r.to_data();
        let json = serde_json::to_string(&data).unwrap();
        let back = FreeResolution::from_data(serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.tor(), r.tor());
        let mut bad = data.clone();
        bad.stages[2].differential[0][0].coeff = SparseVec::unit(0);
        bad.stages[2].differential[0].truncate(1);
        // Either misgraded or d^2 != 0; both are corruption.
        let _ = FreeResolution::from_data(bad).map(|_| ()).unwrap_err();
    }
}
