//! Recognizing explicit tensor presentations: free polynomial generators,
//! free exterior generators, and an Artinian remainder.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::algebra::Algebra;
use crate::graded::presentation::{GeneratorKind, Polynomial, Presentation};

/// Generator indices split by role.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorForm {
    pub polynomial: Vec<usize>,
    pub exterior: Vec<usize>,
    /// Generators of the finite remainder factor.
    pub remainder: Vec<usize>,
}

/// Split the generators. Exterior generators in characteristic 2 must
/// appear only in their own square relation; any generator touched by
/// another relation joins the remainder.
pub fn classify(pres: &Presentation) -> TensorForm {
    let n = pres.num_generators();
    let mut square_rel = vec![false; n];
    let mut touched = vec![false; n];
    for r in pres.relations() {
        if let Some(i) = square_relation_of(r) {
            square_rel[i] = true;
            continue;
        }
        for m in r.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    touched[i] = true;
                }
            }
        }
    }
    let mut form = TensorForm {
        polynomial: Vec::new(),
        exterior: Vec::new(),
        remainder: Vec::new(),
    };
    for i in 0..n {
        let g = &pres.generators()[i];
        if touched[i] {
            form.remainder.push(i);
        } else if pres.is_free_exterior(i) || (g.kind == GeneratorKind::Ext && square_rel[i]) {
            form.exterior.push(i);
        } else if square_rel[i] {
            // An even generator with x^2 = 0: a finite factor.
            form.remainder.push(i);
        } else {
            form.polynomial.push(i);
        }
    }
    form
}

/// If `r` is exactly `x^2` for an exterior-tagged generator, its index.
fn square_relation_of(r: &Polynomial) -> Option<usize> {
    if r.terms.len() != 1 {
        return None;
    }
    let (m, _) = r.terms.iter().next()?;
    let nonzero: Vec<usize> = (0..m.len()).filter(|&i| m[i] > 0).collect();
    (nonzero.len() == 1 && m[nonzero[0]] == 2).then_some(nonzero[0])
}

/// Sub-presentation on the given generators, keeping the relations that
/// involve only them. Errors if a kept relation is lost.
pub fn restrict(pres: &Presentation, keep: &[usize]) -> Result<Presentation> {
    let gens = keep.iter().map(|&i| pres.generators()[i].clone()).collect();
    let mut rels = Vec::new();
    for r in pres.relations() {
        let inside = r.terms.keys().all(|m| {
            m.iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || keep.contains(&i))
        });
        let touches = r
            .terms
            .keys()
            .any(|m| keep.iter().any(|&i| m[i] > 0));
        if inside && touches {
            rels.push(Polynomial {
                terms: r
                    .terms
                    .iter()
                    .map(|(m, &c)| (keep.iter().map(|&i| m[i]).collect(), c))
                    .collect(),
            });
        } else if touches {
            return Err(Error::NotTensorForm(format!(
                "relation {} mixes factors",
                pres.format_polynomial(r)
            )));
        }
    }
    Presentation::from_parts(pres.field().clone(), pres.orientation(), gens, rels)
}

/// Compute the remainder algebra until it visibly vanishes; returns it
/// together with its top level. Gives up at `max_level`.
pub fn artinian_part(pres: &Presentation, form: &TensorForm, max_level: u32) -> Result<(Algebra, u32)> {
    let sub = restrict(pres, &form.remainder)?;
    let max_gen = sub
        .generators()
        .iter()
        .map(|g| g.degree.unsigned_abs())
        .max()
        .unwrap_or(1);
    let mut bound = (4 * max_gen).max(8);
    loop {
        let alg = Algebra::new(&sub, bound);
        if let Some(top) = alg.top_level() {
            return Ok((alg, top));
        }
        if bound >= max_level {
            return Err(Error::NotArtinian(max_level));
        }
        bound = (bound * 2).min(max_level);
    }
}
