//! Ext(k, A) from the dual of the minimal resolution, Gorenstein
//! certificates, and the structural shift of tensor presentations.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{socle::socle_of, FreeResolution, Layout};
use crate::error::{Error, Result};
use crate::graded::tensor::{artinian_part, classify};
use crate::graded::{Algebra, Presentation};
use crate::linalg::{Echelon, SparseVec};

/// `Ext^{s,t}(k, A)` dimensions with the rows that can be trusted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtTable {
    /// `(s, t) -> dim`, nonzero entries only; `t` is the signed internal
    /// degree of the class.
    pub dims: BTreeMap<(i32, i32), usize>,
    /// Per homological degree, the signed `t` range computed exactly, or
    /// `None` when a neighbouring resolution stage may be incomplete.
    pub reliable: BTreeMap<i32, Option<(i32, i32)>>,
}

impl ExtTable {
    /// Classes in reliable rows.
    pub fn reliable_classes(&self) -> Vec<((i32, i32), usize)> {
        self.dims
            .iter()
            .filter(|((s, _), _)| matches!(self.reliable.get(s), Some(Some(_))))
            .map(|(&k, &v)| (k, v))
            .collect()
    }

    pub fn all_rows_reliable(&self) -> bool {
        self.reliable.values().all(Option::is_some)
    }
}

/// Compute Ext for `s = 0 .. hom_bound - 1`.
pub fn ext_dimensions(res: &FreeResolution) -> Result<ExtTable> {
    let alg = res.algebra();
    let n = alg.bound() as i64;
    let sign = alg.presentation().orientation().sign();
    let stages = res.stages();
    let mut dims = BTreeMap::new();
    let mut reliable = BTreeMap::new();
    for s in 0..res.hom_bound() as usize {
        let lo_stage = s.saturating_sub(1);
        let g_max = (lo_stage..=s + 1)
            .filter_map(|i| stages[i].max_level())
            .max()
            .unwrap_or(0) as i64;
        let complete = (lo_stage..=s + 1).all(|i| res.stage_complete(i));
        let (t_lo, t_hi) = (-g_max, n - g_max);
        reliable.insert(
            s as i32,
            complete.then(|| {
                let (a, b) = (sign as i64 * t_lo, sign as i64 * t_hi);
                (a.min(b) as i32, a.max(b) as i32)
            }),
        );
        for t in t_lo..=t_hi {
            let here = Layout::hom(alg, &stages[s].gens, t);
            if here.dim == 0 {
                continue;
            }
            let rank_out = coboundary_rank(alg, res, s + 1, t, &here)?;
            let rank_in = if s == 0 {
                0
            } else {
                let before = Layout::hom(alg, &stages[s - 1].gens, t);
                coboundary_rank(alg, res, s, t, &before)?
            };
            let d = here.dim - rank_out - rank_in;
            if d > 0 {
                dims.insert((s as i32, sign * t as i32), d);
            }
        }
    }
    Ok(ExtTable { dims, reliable })
}

/// Rank of `delta: Hom^t(F_{s-1}) -> Hom^t(F_s)`, `(delta f)(e_g) = f(d e_g)`.
fn coboundary_rank(alg: &Algebra, res: &FreeResolution, s: usize, t: i64, src: &Layout) -> Result<usize> {
    let stage = &res.stages()[s];
    let dst = Layout::hom(alg, &stage.gens, t);
    if dst.dim == 0 || src.dim == 0 {
        return Ok(0);
    }
    let f = alg.field();
    let mut ech = Echelon::new(f, dst.dim);
    // Column for each basis vector of the source: f(e_h) = b_j.
    for &(h, _, cl_h) in &src.blocks {
        for j in 0..alg.dim(cl_h) {
            let mut entries = Vec::new();
            for &(g, off_g, _) in &dst.blocks {
                for term in &stage.differential[g as usize] {
                    if term.gen != h {
                        continue;
                    }
                    for (i, c) in term.coeff.iter() {
                        let prod = alg.multiply_basis(term.level, i as usize, cl_h, j)?;
                        entries.extend(prod.iter().map(|(k, v)| (k + off_g, f.mul(v, c))));
                    }
                }
            }
            let v = SparseVec::from_entries(f, entries);
            if !v.is_zero() {
                ech.insert(&v);
            }
        }
    }
    Ok(ech.rank())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Gorenstein,
    NotGorenstein,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CertificateEvidence {
    /// Artinian case: socle basis.
    Socle { degrees: Vec<i32>, elements: Vec<String> },
    /// Non-Artinian case: the reliable Ext classes found.
    Ext { classes: Vec<(i32, i32, usize)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinCertificate {
    pub verdict: Verdict,
    pub shift: Option<i32>,
    pub evidence: CertificateEvidence,
    pub hom_bound: u32,
    pub deg_bound: u32,
    /// Homological degrees whose Ext rows were computed reliably; classes
    /// outside these rows are not excluded.
    pub reliable_rows: Vec<i32>,
    pub note: String,
}

/// Gorenstein certificate within the window.
pub fn gorenstein_certificate(pres: &Presentation, hom_bound: u32, deg_bound: u32) -> Result<GorensteinCertificate> {
    let alg = Arc::new(Algebra::new(pres, deg_bound));
    if alg.top_level().is_some() {
        return Ok(artinian_certificate(&alg, hom_bound, deg_bound));
    }
    let res = FreeResolution::build(alg, hom_bound)?;
    certificate_from_resolution(&res)
}

fn artinian_certificate(alg: &Algebra, hom_bound: u32, deg_bound: u32) -> GorensteinCertificate {
    let soc = socle_of(alg);
    let degrees: Vec<i32> = soc.iter().map(|e| e.degree).collect();
    let elements: Vec<String> = soc.iter().map(|e| e.element.clone()).collect();
    let (verdict, shift) = if soc.len() == 1 {
        (Verdict::Gorenstein, Some(soc[0].degree))
    } else {
        (Verdict::NotGorenstein, None)
    };
    GorensteinCertificate {
        verdict,
        shift,
        evidence: CertificateEvidence::Socle { degrees, elements },
        hom_bound,
        deg_bound,
        reliable_rows: Vec::new(),
        note: format!("Artinian: socle of dimension {}", soc.len()),
    }
}

/// Certificate from an already computed resolution (Artinian algebras use
/// the socle instead).
pub fn certificate_from_resolution(res: &FreeResolution) -> Result<GorensteinCertificate> {
    let alg = res.algebra();
    if alg.top_level().is_some() {
        return Ok(artinian_certificate(alg, res.hom_bound(), alg.bound()));
    }
    let table = ext_dimensions(res)?;
    let classes = table.reliable_classes();
    let total: usize = classes.iter().map(|(_, d)| d).sum();
    let reliable_rows: Vec<i32> = table
        .reliable
        .iter()
        .filter(|(_, r)| r.is_some())
        .map(|(&s, _)| s)
        .collect();
    let (verdict, shift, note) = match (total, classes.as_slice()) {
        (1, [((s, t), 1)]) => (
            Verdict::Gorenstein,
            Some(t - s),
            format!("single Ext class in bidegree ({s}, {t})"),
        ),
        (0, _) => (
            Verdict::Inconclusive,
            None,
            "no Ext class in the reliable window".to_string(),
        ),
        _ => (
            Verdict::NotGorenstein,
            None,
            format!("Ext has total dimension {total} in the reliable window"),
        ),
    };
    Ok(GorensteinCertificate {
        verdict,
        shift,
        evidence: CertificateEvidence::Ext {
            classes: classes.iter().map(|&((s, t), d)| (s, t, d)).collect(),
        },
        hom_bound: res.hom_bound(),
        deg_bound: alg.bound(),
        reliable_rows,
        note,
    })
}

/// `sum(exterior degrees) - sum(polynomial degrees + 1) + socle degree of
/// the finite factor`, for explicit tensor presentations.
pub fn structural_shift(pres: &Presentation) -> Result<i32> {
    let form = classify(pres);
    let deg = |i: usize| pres.generators()[i].degree;
    let mut shift: i32 = form.exterior.iter().map(|&i| deg(i)).sum();
    shift -= form.polynomial.iter().map(|&i| deg(i) + 1).sum::<i32>();
    if !form.remainder.is_empty() {
        let (alg, _) = artinian_part(pres, &form, 1024).map_err(|e| match e {
            Error::NotArtinian(_) => Error::NotTensorForm("remainder factor is not finite".into()),
            other => other,
        })?;
        let soc = socle_of(&alg);
        if soc.len() != 1 {
            return Err(Error::NotTensorForm(format!(
                "finite factor has a {}-dimensional socle",
                soc.len()
            )));
        }
        shift += soc[0].degree;
    }
    Ok(shift)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(p: &Presentation, h: u32, n: u32) -> GorensteinCertificate {
        gorenstein_certificate(p, h, n).unwrap()
    }

    #[test]
    fn polynomial_ring_shift() {
        for d in [2, 4, 6] {
            let p = Presentation::builder(3).poly("x", d).build().unwrap();
            let c = cert(&p, 4, 30);
            assert_eq!(c.verdict, Verdict::Gorenstein);
            assert_eq!(c.shift, Some(-d - 1));
        }
    }

    #[test]
    fn exterior_algebra_uses_socle() {
        let p = Presentation::builder(3).ext("l", 5).build().unwrap();
        let c = cert(&p, 4, 20);
        assert_eq!(c.shift, Some(5));
        assert!(matches!(c.evidence, CertificateEvidence::Socle { .. }));
    }

    #[test]
    fn thh_z_shift() {
        for p in [2u32, 3, 5] {
            let pres = Presentation::builder(p)
                .ext("l", 2 * p as i32 - 1)
                .poly("mu", 2 * p as i32)
                .build()
                .unwrap();
            let c = cert(&pres, 4, 12 * p);
            assert_eq!(c.shift, Some(-2), "p = {p}: {c:?}");
            assert_eq!(structural_shift(&pres).unwrap(), -2);
        }
    }

    #[test]
    fn non_gorenstein_socle() {
        let p = Presentation::builder(3)
            .poly("x", 2)
            .poly("y", 2)
            .relation("x^2")
            .relation("x*y")
            .relation("y^2")
            .build()
            .unwrap();
        assert_eq!(cert(&p, 3, 12).verdict, Verdict::NotGorenstein);
        assert!(matches!(structural_shift(&p), Err(Error::NotTensorForm(_))));
    }

    #[test]
    fn non_gorenstein_ext() {
        // k[x,y]/(x^2, xy): depth zero, with x annihilated by the maximal
        // ideal, yet not Artinian.
        let p = Presentation::builder(3)
            .poly("x", 2)
            .poly("y", 2)
            .relation("x^2")
            .relation("x*y")
            .build()
            .unwrap();
        let c = cert(&p, 4, 30);
        assert_ne!(c.verdict, Verdict::Gorenstein, "{c:?}");
    }

    #[test]
    fn hypersurface_is_gorenstein() {
        // k[x,y]/(xy), |x| = |y| = 2.
        let p = Presentation::builder(3)
            .poly("x", 2)
            .poly("y", 2)
            .relation("x*y")
            .build()
            .unwrap();
        let c = cert(&p, 4, 30);
        assert_eq!(c.verdict, Verdict::Gorenstein, "{c:?}");
        // Dividing by a regular element f adds |f| + 1: -3 - 3 + 4 + 1.
        assert_eq!(c.shift, Some(-1));
    }

    #[test]
    fn coconnective_polynomial() {
        let p = Presentation::parse("char = 3\norientation = coconnective\n[gen] x, -2\n").unwrap();
        assert_eq!(cert(&p, 4, 20).shift, Some(1));
        assert_eq!(structural_shift(&p).unwrap(), 1);
    }
}
