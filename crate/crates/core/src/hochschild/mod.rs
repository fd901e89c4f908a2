//! Hochschild homology and cohomology of presented algebras over `k`, the
//! duality check `HH^* = Sigma^a HH_*`, and the `THH` prediction
//! `k[mu_2] (x) Tor^R(k, k)`.
//!
//! Bidegrees are `(bar degree, internal degree)`. Homology classes sit in
//! total degree `bar + internal`, cohomology classes in `internal - bar`.

mod bar;
mod cohomology;

pub use bar::Coefficients;

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::{reconstruct_from_dims, Algebra, HilbertSeries, LaurentPoly, Orientation, Presentation, RationalFunction};
use crate::linalg::{rank, SparseVec};
use crate::resolution::{gorenstein_certificate, minimal_resolution, BigradedDimensions, FreeResolution, Verdict};

use bar::Slice;
use cohomology::{stable_dimension, Splittings};

fn min_level(pres: &Presentation) -> Result<u32> {
    match pres.generators().iter().map(|g| g.degree.unsigned_abs()).min() {
        Some(0) => Err(Error::InfiniteSlice("a generator has degree 0".into())),
        Some(l) => Ok(l),
        None => Ok(u32::MAX),
    }
}

fn max_level(pres: &Presentation) -> u32 {
    pres.generators().iter().map(|g| g.degree.unsigned_abs()).max().unwrap_or(0)
}

/// `HH_*(R; M)` for internal levels up to `window`. `M = k` uses the bar
/// construction; `M = R` tensors a minimal resolution of `R` over `R^e`
/// down to `R`, which is far smaller than the Hochschild complex.
pub fn hh_homology(pres: &Presentation, coeffs: Coefficients, window: u32) -> Result<BigradedDimensions> {
    match coeffs {
        Coefficients::Field => hh_homology_bar(pres, coeffs, window),
        Coefficients::Ring => hh_homology_via_enveloping(pres, coeffs, window),
    }
}

/// `HH_*(R; M)` from the normalized Hochschild complex.
pub fn hh_homology_bar(pres: &Presentation, coeffs: Coefficients, window: u32) -> Result<BigradedDimensions> {
    let lmin = min_level(pres)?;
    let alg = Algebra::new(pres, window);
    let sign = pres.orientation().sign();
    let per_level: Vec<Vec<usize>> = (0..=window)
        .into_par_iter()
        .map(|w| {
            let max_n = if lmin == u32::MAX { 1 } else { (w / lmin) as usize + 1 };
            Slice::new(&alg, coeffs, max_n, w).homology(&alg, coeffs)
        })
        .collect();
    let mut out = BigradedDimensions::new();
    for (w, dims) in per_level.into_iter().enumerate() {
        for (n, d) in dims.into_iter().enumerate() {
            if d > 0 {
                out.insert((n as i32, sign * w as i32), d);
            }
        }
    }
    Ok(out)
}

/// `d o d = 0` on every slice up to `window`.
pub fn check_bar_d_squared(pres: &Presentation, coeffs: Coefficients, window: u32) -> Result<bool> {
    let lmin = min_level(pres)?;
    let alg = Algebra::new(pres, window);
    let f = alg.field();
    for w in 0..=window {
        let max_n = if lmin == u32::MAX { 1 } else { (w / lmin) as usize + 1 };
        let slice = Slice::new(&alg, coeffs, max_n, w);
        for n in 2..=max_n {
            let first = slice.boundary(&alg, coeffs, n);
            let second = slice.boundary(&alg, coeffs, n - 1);
            for v in &first {
                let mut acc = Vec::new();
                for (k, c) in v.iter() {
                    acc.extend(second[k as usize].iter().map(|(j, x)| (j, f.mul(x, c))));
                }
                if !SparseVec::from_entries(f, acc).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `HH^*(R; M)` in bar degrees `0..=max_bar` and total degrees within
/// `window` of zero. For `M = R` the cochains are truncated in source
/// degree and the stable image is reported.
pub fn hh_cohomology(pres: &Presentation, coeffs: Coefficients, window: u32, max_bar: u32) -> Result<BigradedDimensions> {
    let sign = pres.orientation().sign();
    match coeffs {
        Coefficients::Field => {
            // Hom(B(k,R,k), k): same ranks as the chains, internal degree negated.
            let hom = hh_homology(pres, Coefficients::Field, window)?;
            Ok(hom
                .into_iter()
                .filter(|((n, _), _)| *n as u32 <= max_bar)
                .map(|((n, t), d)| ((n, -t), d))
                .collect())
        }
        Coefficients::Ring => {
            min_level(pres)?;
            let w = window + max_bar + 2 * max_level(pres);
            let t_max = (window + max_bar) as i32;
            let alg = Algebra::new(pres, 2 * w + t_max as u32);
            let split = Splittings::new(&alg, 2 * w);
            let jobs: Vec<(usize, i32)> = (0..=max_bar as usize)
                .flat_map(|n| {
                    let lo = n as i32 - window as i32;
                    (lo..=n as i32 + window as i32).map(move |t| (n, t))
                })
                .collect();
            let dims: Vec<((usize, i32), usize)> = jobs
                .into_par_iter()
                .map(|(n, t)| ((n, t), stable_dimension(&alg, &split, n, t, w)))
                .collect();
            Ok(dims
                .into_iter()
                .filter(|&(_, d)| d > 0)
                .map(|((n, t), d)| ((n as i32, sign * t), d))
                .collect())
        }
    }
}

/// Collapse to total degree `bar + internal` (homology).
pub fn homology_totals(dims: &BigradedDimensions) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (&(n, t), &d) in dims {
        *out.entry(n + t).or_insert(0) += d;
    }
    out
}

/// Collapse to total degree `internal - bar` (cohomology).
pub fn cohomology_totals(dims: &BigradedDimensions) -> BTreeMap<i32, usize> {
    let mut out = BTreeMap::new();
    for (&(n, t), &d) in dims {
        *out.entry(t - n).or_insert(0) += d;
    }
    out
}

/// `R^e = R (x) R` with generators renamed `x_l`, `x_r`.
pub fn enveloping(pres: &Presentation) -> Result<Presentation> {
    let left = pres.renamed(|s| format!("{s}_l"));
    let right = pres.renamed(|s| format!("{s}_r"));
    left.tensor(&right)
}

/// `Tor^{R^e}(M, R)` from a minimal resolution of `M` over the explicit
/// enveloping algebra, tensored down along `R^e -> R`. For `M = k` this
/// resolves the residue field; for `M = R` it resolves `R^e / (x_l - x_r)`.
pub fn hh_homology_via_enveloping(pres: &Presentation, coeffs: Coefficients, window: u32) -> Result<BigradedDimensions> {
    let lmin = min_level(pres)?;
    let env = enveloping(pres)?;
    let hom_bound = if lmin == u32::MAX { 1 } else { window / lmin + 2 };
    let env_alg = Arc::new(Algebra::new(&env, window));
    let res = match coeffs {
        Coefficients::Field => FreeResolution::build(env_alg, hom_bound)?,
        Coefficients::Ring => {
            let diagonal = pres
                .generators()
                .iter()
                .filter(|g| g.degree.unsigned_abs() <= window)
                .map(|g| {
                    let e = env_alg.parse_element(&format!("{0}_l - {0}_r", g.name))?;
                    Ok((e.level, e.coords))
                })
                .collect::<Result<Vec<_>>>()?;
            FreeResolution::build_quotient(env_alg, Some(&diagonal), hom_bound)?
        }
    };
    let alg = Algebra::new(pres, window);
    let mu = Multiplication::new(&alg, res.algebra(), pres.num_generators())?;
    let f = alg.field();
    let stages = res.stages();
    let sign = pres.orientation().sign();
    let mut out = BigradedDimensions::new();
    for n in 0..=window {
        let layouts: Vec<Vec<(u32, u32, u32)>> = stages.iter().map(|st| blocks(&alg, &st.gens, n)).collect();
        let dims: Vec<usize> = layouts.iter().map(|b| b.iter().map(|&(_, _, cl)| alg.dim(cl)).sum()).collect();
        let mut ranks = vec![0usize; stages.len() + 1];
        for s in 1..stages.len() {
            let mut cols = Vec::new();
            for &(g, _, cl) in &layouts[s] {
                for b in 0..alg.dim(cl) {
                    let mut entries = Vec::new();
                    for term in &stages[s].differential[g as usize] {
                        let Ok(pos) = layouts[s - 1].binary_search_by_key(&term.gen, |blk| blk.0) else {
                            continue;
                        };
                        let (_, off, _) = layouts[s - 1][pos];
                        let image = mu.apply(term.level, &term.coeff)?;
                        if image.is_zero() {
                            continue;
                        }
                        let prod = alg.multiply(cl, &SparseVec::unit(b as u32), term.level, &image)?;
                        entries.extend(prod.iter().map(|(k, c)| (k + off, c)));
                    }
                    cols.push(SparseVec::from_entries(f, entries));
                }
            }
            ranks[s] = rank(f, dims[s - 1], &cols);
        }
        // The last stage lacks its outgoing rank information from above.
        for s in 0..stages.len().saturating_sub(1) {
            let h = dims[s] - ranks[s] - ranks[s + 1];
            if h > 0 {
                out.insert((s as i32, sign * n as i32), h);
            }
        }
    }
    Ok(out)
}

fn blocks(alg: &Algebra, gens: &[u32], n: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    let mut off = 0u32;
    for (g, &l) in gens.iter().enumerate() {
        if l <= n && alg.dim(n - l) > 0 {
            out.push((g as u32, off, n - l));
            off += alg.dim(n - l) as u32;
        }
    }
    out
}

/// The multiplication map `R^e -> R` on basis monomials.
struct Multiplication<'a> {
    target: &'a Algebra,
    table: Vec<Vec<SparseVec>>,
}

impl<'a> Multiplication<'a> {
    fn new(target: &'a Algebra, env: &Algebra, k: usize) -> Result<Self> {
        let pres = target.presentation();
        let mut table = Vec::new();
        for n in 0..=env.bound() {
            let mut row = Vec::new();
            for m in env.basis(n) {
                let (ml, mr) = m.split_at(k);
                let (ll, lr) = (pres.monomial_level(ml), pres.monomial_level(mr));
                let a = target.normal_form(&ml.to_vec())?;
                let b = target.normal_form(&mr.to_vec())?;
                row.push(target.multiply(ll, &a, lr, &b)?);
            }
            table.push(row);
        }
        Ok(Self { target, table })
    }

    fn apply(&self, level: u32, v: &SparseVec) -> Result<SparseVec> {
        let f = self.target.field();
        let mut entries = Vec::new();
        for (i, c) in v.iter() {
            entries.extend(self.table[level as usize][i as usize].iter().map(|(j, x)| (j, f.mul(x, c))));
        }
        Ok(SparseVec::from_entries(f, entries))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityMismatch {
    pub coefficients: String,
    pub degree: i32,
    pub cohomology: usize,
    pub homology: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DwyerMillerReport {
    pub applicable: bool,
    pub reason: Option<String>,
    pub shift: i32,
    /// `None` when not applicable.
    pub holds: Option<bool>,
    pub first_mismatch: Option<DualityMismatch>,
    /// Total degrees `n` compared.
    pub degrees: (i32, i32),
    pub projective_dimension: Option<usize>,
}

/// Check `dim HH^n = dim HH_{n-a}` for `|n| <= window`, for `M = R` and
/// `M = k`. Needs a Gorenstein certificate with shift `a` and a finite
/// resolution of `k` (smallness).
pub fn dwyer_miller_check(pres: &Presentation, a: i32, window: u32) -> Result<DwyerMillerReport> {
    let lmin = min_level(pres)?;
    let not_applicable = |reason: String| DwyerMillerReport {
        applicable: false,
        reason: Some(reason),
        shift: a,
        holds: None,
        first_mismatch: None,
        degrees: (-(window as i32), window as i32),
        projective_dimension: None,
    };
    let span = window + a.unsigned_abs() + 2 * max_level(pres);
    let hom_bound = if lmin == u32::MAX { 2 } else { span / lmin + 2 };
    let cert = gorenstein_certificate(pres, hom_bound, span.max(max_level(pres)))?;
    if cert.verdict != Verdict::Gorenstein {
        return Ok(not_applicable(format!("certificate verdict is {:?}", cert.verdict)));
    }
    if cert.shift != Some(a) {
        return Ok(not_applicable(format!("certificate shift is {:?}, not {a}", cert.shift)));
    }
    let res = minimal_resolution(pres, hom_bound, span.max(max_level(pres)))?;
    let Some(stop) = res.terminates() else {
        return Err(Error::HypothesisUnverified(format!(
            "the resolution of k does not terminate within {hom_bound} stages"
        )));
    };
    let pd = stop.saturating_sub(1);
    let hom_window = (window as i64 - a as i64).max(0) as u32;
    let mut first = None;
    for coeffs in [Coefficients::Ring, Coefficients::Field] {
        let cohom = cohomology_totals(&hh_cohomology(pres, coeffs, window, pd as u32 + 1)?);
        let hom = homology_totals(&hh_homology(pres, coeffs, hom_window)?);
        for n in -(window as i32)..=window as i32 {
            let c = cohom.get(&n).copied().unwrap_or(0);
            let h = hom.get(&(n - a)).copied().unwrap_or(0);
            if c != h && first.is_none() {
                first = Some(DualityMismatch {
                    coefficients: format!("{coeffs:?}"),
                    degree: n,
                    cohomology: c,
                    homology: h,
                });
            }
        }
    }
    Ok(DwyerMillerReport {
        applicable: true,
        reason: None,
        shift: a,
        holds: Some(first.is_none()),
        first_mismatch: first,
        degrees: (-(window as i32), window as i32),
        projective_dimension: Some(pd),
    })
}

/// Hilbert series of `k[mu_2] (x) Tor^R(k, k)`, a Tor class in bidegree
/// `(s, t)` counted in total degree `s + t`.
pub fn thh_prediction(pres: &Presentation, window: u32) -> Result<HilbertSeries> {
    let lmin = min_level(pres)?;
    let hom_bound = if lmin == u32::MAX { 1 } else { window / (lmin + 1) + 2 };
    let res = minimal_resolution(pres, hom_bound, window.max(max_level(pres)))?;
    let mut totals = vec![0i64; window as usize + 1];
    for ((s, t), d) in res.tor() {
        let n = s + t.abs();
        if n >= 0 && n as u32 <= window {
            totals[n as usize] += d as i64;
        }
    }
    let tor = search_denominator(&totals, 2 * max_level(pres) + 2).ok_or_else(|| {
        Error::ReconstructionFailed(format!("no small denominator fits Tor totals up to {window}"))
    })?;
    let bokstedt = RationalFunction::new(LaurentPoly::one(), vec![2]);
    let mut h = HilbertSeries::new(tor.series.mul(&bokstedt), Orientation::Connective);
    h.window = Some(window);
    Ok(h)
}

/// Try denominators `prod (1 - t^d)` with up to three factors `d <= max_d`,
/// fewest factors and smallest degrees first. The numerator must end in
/// the lower half of the data so that the fit is actually tested.
fn search_denominator(dims: &[i64], max_d: u32) -> Option<HilbertSeries> {
    let half = (dims.len() / 2) as i32;
    let mut candidates: Vec<Vec<u32>> = vec![vec![]];
    for a in 1..=max_d {
        candidates.push(vec![a]);
        for b in a..=max_d {
            candidates.push(vec![a, b]);
            for c in b..=max_d {
                candidates.push(vec![a, b, c]);
            }
        }
    }
    candidates.sort_by_key(|c| (c.len(), c.iter().sum::<u32>()));
    candidates
        .into_iter()
        .filter_map(|den| reconstruct_from_dims(dims, &den))
        .find(|h| h.series.numerator.max_degree().unwrap_or(0) <= half)
}

#[cfg(test)]
mod tests;
