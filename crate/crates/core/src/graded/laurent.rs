//! Integer Laurent polynomials and rational functions with
//! `prod (1 - t^d)` denominators.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// An integer Laurent polynomial: exponent -> nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly(pub BTreeMap<i32, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(e: i32, c: i64) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert(e, c);
        }
        Self(m)
    }

    /// `1 + c t^e`.
    pub fn binomial(e: i32, c: i64) -> Self {
        Self::one().add(&Self::monomial(e, c))
    }

    /// From coefficients of `t^0, t^1, ...`.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self(
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| (i as i32, c))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.0.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.0.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&e, &c) in &other.0 {
            out.add_term(e, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self(self.0.iter().map(|(&e, &v)| (e, v * c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&e1, &c1) in &self.0 {
            for (&e2, &c2) in &other.0 {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self(self.0.iter().map(|(&e, &c)| (e + k, c)).collect())
    }

    /// Substitute `t -> 1/t`.
    pub fn reflect(&self) -> Self {
        Self(self.0.iter().map(|(&e, &c)| (-e, c)).collect())
    }

    /// Exact division by a divisor with leading (lowest-degree) coefficient
    /// `±1`; `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (dlo, dlc) = divisor.0.iter().next().map(|(&e, &c)| (e, c))?;
        let dhi = divisor.max_degree()?;
        if dlc.abs() != 1 {
            return None;
        }
        let mut rem = self.clone();
        let mut q = Self::zero();
        let hi = self.max_degree()?;
        // Long division from the low end.
        while let Some(lo) = rem.min_degree() {
            if lo + (dhi - dlo) > hi {
                return None;
            }
            let c = rem.coeff(lo) * dlc; // dlc = ±1 is its own inverse
            let e = lo - dlo;
            q.add_term(e, c);
            rem = rem.sub(&divisor.mul(&Self::monomial(e, c)));
        }
        Some(q)
    }

    /// Exact evaluation at an integer point, as a reduced fraction.
    pub fn eval(&self, t: i128) -> Fraction {
        let mut acc = Fraction::zero();
        for (&e, &c) in &self.0 {
            acc = acc.add(&Fraction::power(t, e).mul_int(c as i128));
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (&e, &c)) in self.0.iter().enumerate() {
            let (neg, mag) = (c < 0, c.unsigned_abs());
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match (e, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => f.write_str("t")?,
                (1, m) => write!(f, "{m}t")?,
                (e, 1) => write!(f, "t^{e}")?,
                (e, m) => write!(f, "{m}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Exact rational number with `i128` parts, kept reduced, denominator > 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub num: i128,
    pub den: i128,
}

impl Fraction {
    pub fn zero() -> Self {
        Self { num: 0, den: 1 }
    }

    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num.abs(), den.abs()).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Self {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn power(t: i128, e: i32) -> Self {
        let p = t.pow(e.unsigned_abs());
        if e >= 0 {
            Self::new(p, 1)
        } else {
            Self::new(1, p)
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num * o.den + o.num * self.den, self.den * o.den)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num * o.num, self.den * o.den)
    }

    pub fn mul_int(&self, c: i128) -> Self {
        Self::new(self.num * c, self.den)
    }

    pub fn div(&self, o: &Self) -> Self {
        Self::new(self.num * o.den, self.den * o.num)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `numerator / prod (1 - t^d)` with every `d > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalFunction {
    pub numerator: LaurentPoly,
    /// Sorted ascending.
    pub denominator: Vec<u32>,
}

impl RationalFunction {
    pub fn new(numerator: LaurentPoly, mut denominator: Vec<u32>) -> Self {
        assert!(denominator.iter().all(|&d| d > 0), "denominator degrees must be positive");
        denominator.sort_unstable();
        Self {
            numerator,
            denominator,
        }
    }

    pub fn polynomial(numerator: LaurentPoly) -> Self {
        Self::new(numerator, Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn denominator_poly(&self) -> LaurentPoly {
        self.denominator
            .iter()
            .fold(LaurentPoly::one(), |acc, &d| acc.mul(&LaurentPoly::binomial(d as i32, -1)))
    }

    /// Cancel every `(1 - t^d)` factor that divides the numerator, largest
    /// `d` first.
    pub fn canonical(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut den = Vec::new();
        for &d in self.denominator.iter().rev() {
            match num.div_exact(&LaurentPoly::binomial(d as i32, -1)) {
                Some(q) => num = q,
                None => den.push(d),
            }
        }
        Self::new(num, den)
    }

    /// Order of the pole at `t = 1`.
    pub fn pole_order(&self) -> usize {
        let mut num = self.numerator.clone();
        let mut k = 0;
        let one_minus_t = LaurentPoly::binomial(1, -1);
        while !num.is_zero() {
            match num.div_exact(&one_minus_t) {
                Some(q) => {
                    num = q;
                    k += 1;
                }
                None => break,
            }
        }
        self.denominator.len().saturating_sub(k)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut den = self.denominator.clone();
        den.extend_from_slice(&o.denominator);
        Self::new(self.numerator.mul(&o.numerator), den)
    }

    /// Bring both to the common denominator (multiset union).
    pub fn common_denominator(&self, o: &Self) -> (LaurentPoly, LaurentPoly, Vec<u32>) {
        let mut a_extra = Vec::new();
        let mut b_rest = o.denominator.clone();
        for &d in &self.denominator {
            if let Some(pos) = b_rest.iter().position(|&x| x == d) {
                b_rest.remove(pos);
            } else {
                a_extra.push(d);
            }
        }
        // self needs b_rest, other needs a_extra.
        let lift = |n: &LaurentPoly, extra: &[u32]| {
            extra
                .iter()
                .fold(n.clone(), |acc, &d| acc.mul(&LaurentPoly::binomial(d as i32, -1)))
        };
        let mut den = self.denominator.clone();
        den.extend_from_slice(&b_rest);
        den.sort_unstable();
        (lift(&self.numerator, &b_rest), lift(&o.numerator, &a_extra), den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let (a, b, den) = self.common_denominator(o);
        Self::new(a.sub(&b), den)
    }

    /// Exact equality as rational functions.
    pub fn equals(&self, o: &Self) -> bool {
        self.sub(o).numerator.is_zero()
    }

    /// Power-series coefficients `t^lo .. t^hi` (requires `lo <=` the
    /// numerator's minimum degree to be meaningful below it).
    pub fn expand(&self, lo: i32, hi: i32) -> Vec<i64> {
        if hi < lo {
            return Vec::new();
        }
        let len = (hi - lo + 1) as usize;
        let mut coeffs = vec![0i64; len];
        for (&e, &c) in &self.numerator.0 {
            if e >= lo && e <= hi {
                coeffs[(e - lo) as usize] += c;
            }
        }
        for &d in &self.denominator {
            // Multiply by 1/(1 - t^d): running sum with stride d.
            let d = d as usize;
            for i in d..len {
                coeffs[i] += coeffs[i - d];
            }
        }
        coeffs
    }

    pub fn coefficient(&self, n: i32) -> i64 {
        let lo = self.numerator.min_degree().unwrap_or(0).min(n);
        self.expand(lo, n).last().copied().unwrap_or(0)
    }

    /// Substitute `t -> 1/t`, keeping the same denominator family:
    /// `1/(1 - t^{-d}) = -t^d/(1 - t^d)`.
    pub fn reciprocal(&self) -> Self {
        let m = self.denominator.len();
        let total: i32 = self.denominator.iter().map(|&d| d as i32).sum();
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        Self::new(
            self.numerator.reflect().shift(total).scale(sign),
            self.denominator.clone(),
        )
    }

    pub fn eval(&self, t: i128) -> Fraction {
        let num = self.numerator.eval(t);
        let den = self.denominator_poly().eval(t);
        num.div(&den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        let den: Vec<String> = self
            .denominator
            .iter()
            .map(|&d| if d == 1 { "(1 - t)".into() } else { format!("(1 - t^{d})") })
            .collect();
        write!(f, "({}) / {}", self.numerator, den.join(""))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_coeffs(&[1, 0, 0, 0, -1]);
        let q = a.div_exact(&LaurentPoly::binomial(2, -1)).unwrap();
        assert_eq!(q, LaurentPoly::from_coeffs(&[1, 0, 1]));
        assert!(LaurentPoly::from_coeffs(&[1, 1]).div_exact(&LaurentPoly::binomial(2, -1)).is_none());
    }

    #[test]
    fn canonical_cancels_factors() {
        let r = RationalFunction::new(LaurentPoly::from_coeffs(&[1, 0, 1]), vec![4, 2]);
        // (1 + t^2) / ((1 - t^2)(1 - t^4)) does not simplify: (1 + t^2) is
        // not a (1 - t^d).
        assert_eq!(r.canonical().denominator, vec![2, 4]);
        let s = RationalFunction::new(LaurentPoly::from_coeffs(&[1, 0, 0, 0, -1]), vec![2, 4]);
        assert_eq!(s.canonical(), RationalFunction::new(LaurentPoly::one(), vec![2]));
    }

    #[test]
    fn expansion() {
        let r = RationalFunction::new(LaurentPoly::binomial(3, 1), vec![2]);
        assert_eq!(r.expand(0, 6), vec![1, 0, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn reciprocal_of_simple_series() {
        let r = RationalFunction::new(LaurentPoly::one(), vec![2]);
        assert_eq!(r.reciprocal().numerator, LaurentPoly::monomial(2, -1));
        // Oracle: value at t = 3 of p(1/t).
        let direct = r.eval(3);
        let refl = r.reciprocal().eval(3);
        let at_third = Fraction::new(1, 1).div(&Fraction::new(1, 1).add(&Fraction::new(-1, 9)));
        assert_eq!(refl, at_third);
        assert_ne!(direct, refl);
    }
}
