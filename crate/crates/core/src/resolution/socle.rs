//! Socles of Artinian algebras.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graded::tensor::{artinian_part, TensorForm};
use crate::graded::{Algebra, Element, Presentation};
use crate::linalg::{kernel, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleElement {
    pub degree: i32,
    pub element: String,
}

/// Basis of the annihilator of the maximal ideal. The algebra must visibly
/// vanish above some degree; the window is grown until it does.
pub fn socle(pres: &Presentation) -> Result<Vec<SocleElement>> {
    let all = TensorForm {
        polynomial: Vec::new(),
        exterior: Vec::new(),
        remainder: (0..pres.num_generators()).collect(),
    };
    let (alg, _) = artinian_part(pres, &all, 4096)?;
    Ok(socle_of(&alg))
}

/// Socle of an algebra already known to vanish above its computed window.
pub(crate) fn socle_of(alg: &Algebra) -> Vec<SocleElement> {
    let pres = alg.presentation();
    let f = alg.field();
    let gens: Vec<(u32, SparseVec)> = (0..pres.num_generators())
        .filter_map(|i| {
            let m = pres.generator_monomial(i);
            let e = alg.normal_form(&m).ok()?;
            Some((pres.monomial_level(&m), e))
        })
        .collect();
    let mut out = Vec::new();
    for level in 0..=alg.bound() {
        let dim = alg.dim(level);
        if dim == 0 {
            continue;
        }
        // Stack multiplication by every generator into one map.
        let mut images = vec![Vec::new(); dim];
        let mut offset = 0u32;
        for (gl, g) in &gens {
            let target = level + gl;
            if target > alg.bound() {
                continue;
            }
            for (b, img) in images.iter_mut().enumerate() {
                let prod = alg
                    .multiply(*gl, g, level, &SparseVec::unit(b as u32))
                    .expect("inside window");
                img.extend(prod.iter().map(|(k, v)| (k + offset, v)));
            }
            offset += alg.dim(target) as u32;
        }
        let images: Vec<SparseVec> = images
            .into_iter()
            .map(|e| SparseVec::from_entries(f, e))
            .collect();
        for v in kernel(f, offset as usize, &images) {
            out.push(SocleElement {
                degree: alg.degree_of_level(level),
                element: alg.format_element(&Element { level, coords: v }),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn exterior_top_class() {
        let p = Presentation::builder(2).ext("l5", 5).ext("l7", 7).build().unwrap();
        let s = socle(&p).unwrap();
        assert_eq!(s, vec![SocleElement { degree: 12, element: "l5*l7".into() }]);
    }

    #[test]
    fn truncated_polynomial() {
        for p in [3u32, 5, 7] {
            let pres = Presentation::builder(p)
                .poly("v", 2)
                .relation(&format!("v^{}", p - 1))
                .build()
                .unwrap();
            let s = socle(&pres).unwrap();
            assert_eq!(s.len(), 1);
            assert_eq!(s[0].degree, 2 * (p as i32 - 2));
        }
    }

    #[test]
    fn two_dimensional_socle() {
        let p = Presentation::builder(3)
            .poly("x", 2)
            .poly("y", 2)
            .relation("x^2")
            .relation("x*y")
            .relation("y^2")
            .build()
            .unwrap();
        let s = socle(&p).unwrap();
        let names: Vec<&str> = s.iter().map(|e| e.element.as_str()).collect();
        assert_eq!(s.len(), 2);
        assert!(names.contains(&"x") && names.contains(&"y"), "{names:?}");
    }

    #[test]
    fn polynomial_ring_is_not_artinian() {
        let p = Presentation::builder(3).poly("x", 2).build().unwrap();
        assert!(matches!(socle(&p), Err(Error::NotArtinian(_))));
    }
}
