//! Hilbert series: closed forms for tensor presentations and rational
//! reconstruction from dimension data otherwise.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded::algebra::Algebra;
use crate::graded::laurent::{LaurentPoly, RationalFunction};
use crate::graded::presentation::{GeneratorKind, Orientation, Presentation};
use crate::graded::tensor::{artinian_part, classify};

/// A Hilbert series. Coconnective series are stored in the reflected
/// variable (`t^n` counts degree `-n`), so the rational function always has
/// a power-series expansion in nonnegative powers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub series: RationalFunction,
    pub orientation: Orientation,
    /// Level up to which a reconstructed series was checked; `None` for
    /// closed forms.
    pub window: Option<u32>,
}

impl HilbertSeries {
    pub fn new(series: RationalFunction, orientation: Orientation) -> Self {
        Self {
            series: series.canonical(),
            orientation,
            window: None,
        }
    }

    pub fn connective(series: RationalFunction) -> Self {
        Self::new(series, Orientation::Connective)
    }

    /// Krull dimension: the pole order at `t = 1`.
    pub fn krull_dim(&self) -> usize {
        self.series.pole_order()
    }

    /// Dimension in signed degree `n`.
    pub fn dim(&self, degree: i32) -> i64 {
        let level = self.orientation.sign() * degree;
        self.series.coefficient(level)
    }

    /// Coefficients by level `0..=bound`.
    pub fn expand(&self, bound: u32) -> Vec<i64> {
        self.series.expand(0, bound as i32)
    }

    pub fn product(&self, other: &HilbertSeries) -> HilbertSeries {
        HilbertSeries::new(self.series.mul(&other.series), self.orientation)
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.orientation {
            Orientation::Connective => write!(f, "{}", self.series),
            Orientation::Coconnective => write!(f, "{}  [t = degree -1]", self.series),
        }
    }
}

/// Closed form when the presentation is an explicit tensor product, else a
/// rational reconstruction over `prod (1 - t^{d_i})` for the polynomial-type
/// generators, checked against the computed dimensions up to `degree_bound`.
pub fn hilbert_series(pres: &Presentation, degree_bound: u32) -> Result<HilbertSeries> {
    match closed_form(pres, degree_bound.max(64)) {
        Ok(h) => Ok(h),
        Err(Error::NotArtinian(_)) | Err(Error::NotTensorForm(_)) => reconstruct(pres, degree_bound),
        Err(e) => Err(e),
    }
}

/// `prod (1 + t^{e_j}) h(t) / prod (1 - t^{d_i})`.
pub fn closed_form(pres: &Presentation, max_level: u32) -> Result<HilbertSeries> {
    let form = classify(pres);
    let level = |i: usize| pres.generators()[i].degree.unsigned_abs();
    let mut num = LaurentPoly::one();
    for &i in &form.exterior {
        num = num.mul(&LaurentPoly::binomial(level(i) as i32, 1));
    }
    if !form.remainder.is_empty() {
        let (alg, top) = artinian_part(pres, &form, max_level)?;
        let h: Vec<i64> = (0..=top).map(|l| alg.dim(l) as i64).collect();
        num = num.mul(&LaurentPoly::from_coeffs(&h));
    }
    let den = form.polynomial.iter().map(|&i| level(i)).collect();
    Ok(HilbertSeries::new(
        RationalFunction::new(num, den),
        pres.orientation(),
    ))
}

/// Reconstruction from the computed dimensions.
pub fn reconstruct(pres: &Presentation, degree_bound: u32) -> Result<HilbertSeries> {
    let den: Vec<u32> = pres
        .generators()
        .iter()
        .enumerate()
        .filter(|(i, g)| g.kind == GeneratorKind::Poly && !pres.is_free_exterior(*i))
        .map(|(_, g)| g.degree.unsigned_abs())
        .collect();
    let alg = Algebra::new(pres, degree_bound);
    let dims: Vec<i64> = alg.dims().into_iter().map(|d| d as i64).collect();
    let mut h = reconstruct_from_dims(&dims, &den).ok_or_else(|| {
        Error::ReconstructionFailed(format!(
            "no numerator over denominator {den:?} fits dimensions up to degree {degree_bound}"
        ))
    })?;
    h.orientation = pres.orientation();
    h.window = Some(degree_bound);
    Ok(h)
}

/// Fit `dims` (levels `0..`) as `N(t) / prod (1 - t^d)`. The numerator is
/// accepted only if at least `sum(d) + 1` trailing coefficients vanish.
pub fn reconstruct_from_dims(dims: &[i64], den: &[u32]) -> Option<HilbertSeries> {
    let rf = RationalFunction::new(LaurentPoly::from_coeffs(dims), den.to_vec());
    let denom = rf.denominator_poly();
    let len = dims.len();
    let mut num = vec![0i64; len];
    for (&e, &c) in &denom.0 {
        for (i, &d) in dims.iter().enumerate() {
            let k = i + e as usize;
            if k < len {
                num[k] += c * d;
            }
        }
    }
    let last = num.iter().rposition(|&c| c != 0).map_or(0, |i| i + 1);
    let margin: usize = den.iter().map(|&d| d as usize).sum::<usize>() + 1;
    if len < last + margin {
        return None;
    }
    num.truncate(last);
    let mut h = HilbertSeries::new(
        RationalFunction::new(LaurentPoly::from_coeffs(&num), den.to_vec()),
        Orientation::Connective,
    );
    h.window = Some(len.saturating_sub(1) as u32);
    Some(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[i64], den: &[u32]) -> RationalFunction {
        RationalFunction::new(LaurentPoly::from_coeffs(num), den.to_vec()).canonical()
    }

    #[test]
    fn polynomial_generator() {
        let p = Presentation::builder(5).poly("mu", 2).build().unwrap();
        assert_eq!(hilbert_series(&p, 20).unwrap().series, rf(&[1], &[2]));
    }

    #[test]
    fn exterior_times_polynomial() {
        let p = Presentation::builder(3).ext("l", 5).poly("mu", 6).build().unwrap();
        let mut num = vec![0; 6];
        num[0] = 1;
        num[5] = 1;
        assert_eq!(hilbert_series(&p, 20).unwrap().series, rf(&num, &[6]));
    }

    #[test]
    fn ko_coefficients() {
        let p = Presentation::builder(2)
            .ext("l5", 5)
            .ext("l7", 7)
            .poly("mu", 8)
            .build()
            .unwrap();
        let h = hilbert_series(&p, 40).unwrap();
        let expected = LaurentPoly::binomial(5, 1).mul(&LaurentPoly::binomial(7, 1));
        assert_eq!(h.series, RationalFunction::new(expected, vec![8]));
        let alg = Algebra::new(&p, 40);
        let dims: Vec<i64> = alg.dims().into_iter().map(|d| d as i64).collect();
        assert_eq!(h.expand(40), dims);
    }

    #[test]
    fn reconstruction_of_non_tensor_presentation() {
        // k[x,y]/(xy): (1 + t^2)/(1 - t^2).
        let p = Presentation::builder(3)
            .poly("x", 2)
            .poly("y", 2)
            .relation("x*y")
            .build()
            .unwrap();
        let h = hilbert_series(&p, 24).unwrap();
        assert_eq!(h.series, rf(&[1, 0, 1], &[2]));
        assert_eq!(h.window, Some(24));
    }

    #[test]
    fn reconstruction_needs_margin() {
        let p = Presentation::builder(3)
            .poly("x", 2)
            .poly("y", 2)
            .relation("x*y")
            .build()
            .unwrap();
        assert!(matches!(reconstruct(&p, 4), Err(Error::ReconstructionFailed(_))));
    }
}
