//! Finitely presented graded-commutative algebras: generators, monomials,
//! polynomials in the free graded-commutative algebra, and the text format.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Connective,
    Coconnective,
}

impl Orientation {
    /// `+1` for connective, `-1` for coconnective.
    pub fn sign(self) -> i32 {
        match self {
            Orientation::Connective => 1,
            Orientation::Coconnective => -1,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Orientation::Connective => f.write_str("connective"),
            Orientation::Coconnective => f.write_str("coconnective"),
        }
    }
}

/// How a generator behaves in the free algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    Poly,
    Ext,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub name: String,
    pub degree: i32,
    pub kind: GeneratorKind,
}

impl GeneratorSpec {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 != 0
    }
}

/// Exponent vector, one entry per generator.
pub type Monomial = Vec<u32>;

/// A polynomial in the free graded-commutative algebra: monomial -> nonzero
/// coefficient in `F_p`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial {
    pub terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, field: &PrimeField, m: Monomial, c: u32) {
        let e = self.terms.entry(m).or_insert(0);
        *e = field.add(*e, c);
        if *e == 0 {
            // Re-borrow to remove the cancelled entry.
            self.terms.retain(|_, v| *v != 0);
        }
    }
}

/// A validated presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    field: PrimeField,
    orientation: Orientation,
    generators: Vec<GeneratorSpec>,
    relations: Vec<Polynomial>,
}

impl Presentation {
    pub fn new(
        p: u32,
        orientation: Orientation,
        generators: Vec<GeneratorSpec>,
        relations: &[&str],
    ) -> Result<Self> {
        let mut pres = Self {
            field: PrimeField::new(p)?,
            orientation,
            generators,
            relations: Vec::new(),
        };
        pres.check_generators()?;
        for r in relations {
            let poly = pres.parse_polynomial(r)?;
            // Relations that already vanish in the free algebra (squares of
            // odd generators in odd characteristic) carry no information.
            if !poly.is_zero() {
                pres.relations.push(poly);
            }
        }
        pres.check_relations()?;
        Ok(pres)
    }

    /// Assemble from already parsed parts.
    pub fn from_parts(
        field: PrimeField,
        orientation: Orientation,
        generators: Vec<GeneratorSpec>,
        relations: Vec<Polynomial>,
    ) -> Result<Self> {
        let pres = Self {
            field,
            orientation,
            generators,
            relations,
        };
        pres.check_generators()?;
        pres.check_relations()?;
        Ok(pres)
    }

    pub fn builder(p: u32) -> PresentationBuilder {
        PresentationBuilder {
            p,
            orientation: Orientation::Connective,
            generators: Vec::new(),
            relations: Vec::new(),
        }
    }

    fn check_generators(&self) -> Result<()> {
        let odd_char = self.field.characteristic() != 2;
        for (i, g) in self.generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::DegreeZeroGenerator(g.name.clone()));
            }
            if g.degree.signum() != self.orientation.sign() {
                return Err(Error::OrientationViolation(g.name.clone()));
            }
            if self.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
            if !is_identifier(&g.name) {
                return Err(Error::parse(0, format!("bad generator name `{}`", g.name)));
            }
            if odd_char {
                let expected = if g.is_odd() {
                    GeneratorKind::Ext
                } else {
                    GeneratorKind::Poly
                };
                if g.kind != expected {
                    return Err(Error::ParityMismatch {
                        name: g.name.clone(),
                        tag: kind_str(g.kind).into(),
                        degree: g.degree,
                    });
                }
            }
        }
        Ok(())
    }

    fn check_relations(&self) -> Result<()> {
        for r in &self.relations {
            let Some(d) = self.homogeneous_degree(r) else {
                return Err(Error::RelationNotHomogeneous(self.format_polynomial(r)));
            };
            if d == 0 {
                return Err(Error::RelationNotHomogeneous(format!(
                    "{} (constant relation)",
                    self.format_polynomial(r)
                )));
            }
        }
        if self.field.characteristic() == 2 {
            for (i, g) in self.generators.iter().enumerate() {
                if g.kind == GeneratorKind::Ext {
                    let mut sq = vec![0; self.generators.len()];
                    sq[i] = 2;
                    let has = self
                        .relations
                        .iter()
                        .any(|r| r.terms.len() == 1 && r.terms.contains_key(&sq));
                    if !has {
                        return Err(Error::MissingExteriorRelation(g.name.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.generators
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Whether generator `i` squares to zero in the free algebra (odd
    /// generators in odd characteristic).
    pub fn is_free_exterior(&self, i: usize) -> bool {
        self.field.characteristic() != 2 && self.generators[i].is_odd()
    }

    /// Whether generator `i` anticommutes with odd generators.
    fn is_signed(&self, i: usize) -> bool {
        self.field.characteristic() != 2 && self.generators[i].is_odd()
    }

    /// Absolute (reflected) internal degree of a monomial.
    pub fn monomial_level(&self, m: &[u32]) -> u32 {
        m.iter()
            .zip(&self.generators)
            .map(|(&e, g)| e * g.degree.unsigned_abs())
            .sum()
    }

    /// Signed internal degree of a monomial.
    pub fn monomial_degree(&self, m: &[u32]) -> i32 {
        self.orientation.sign() * self.monomial_level(m) as i32
    }

    /// Common level of all terms, if homogeneous and nonzero.
    pub fn homogeneous_level(&self, p: &Polynomial) -> Option<u32> {
        let mut it = p.terms.keys().map(|m| self.monomial_level(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn homogeneous_degree(&self, p: &Polynomial) -> Option<i32> {
        self.homogeneous_level(p)
            .map(|l| self.orientation.sign() * l as i32)
    }

    /// Product of two monomials in the free graded-commutative algebra.
    /// Returns `None` when the product vanishes, otherwise the sign parity
    /// and the product monomial.
    pub fn multiply_monomials(&self, a: &[u32], b: &[u32]) -> Option<(bool, Monomial)> {
        let mut sign = false;
        // Moving each odd factor of `b` left past the odd factors of `a`
        // with larger index.
        let mut odd_in_a_after = 0u32;
        for i in (0..a.len()).rev() {
            if self.is_signed(i) {
                if b[i] % 2 == 1 && odd_in_a_after % 2 == 1 {
                    sign = !sign;
                }
                odd_in_a_after += a[i];
            }
        }
        let mut out = Vec::with_capacity(a.len());
        for i in 0..a.len() {
            let e = a[i] + b[i];
            if e > 1 && self.is_free_exterior(i) {
                return None;
            }
            out.push(e);
        }
        Some((sign, out))
    }

    pub fn multiply_polynomials(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        let f = &self.field;
        let mut out = Polynomial::zero();
        for (ma, &ca) in &a.terms {
            for (mb, &cb) in &b.terms {
                if let Some((neg, m)) = self.multiply_monomials(ma, mb) {
                    let c = f.mul(f.mul(ca, cb), f.sign(neg));
                    out.add_term(f, m, c);
                }
            }
        }
        out
    }

    pub fn generator_monomial(&self, i: usize) -> Monomial {
        let mut m = vec![0; self.generators.len()];
        m[i] = 1;
        m
    }

    pub fn one(&self) -> Monomial {
        vec![0; self.generators.len()]
    }

    /// Parse a polynomial string: integer coefficients, `*` for products,
    /// `^` for powers, `+`/`-` between terms. Factors are multiplied in the
    /// order written, so `b*a` carries the graded sign.
    pub fn parse_polynomial(&self, s: &str) -> Result<Polynomial> {
        let f = &self.field;
        let mut out = Polynomial::zero();
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        for (negative, term) in split_terms(s)? {
            let mut acc = Polynomial::monomial(self.one(), if negative { f.neg(1) } else { 1 });
            for factor in term.split('*') {
                let factor = factor.trim();
                if factor.is_empty() {
                    return Err(Error::parse(0, format!("empty factor in `{term}`")));
                }
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (
                        b.trim(),
                        e.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::parse(0, format!("bad exponent in `{factor}`")))?,
                    ),
                    None => (factor, 1),
                };
                let piece = if let Ok(n) = base.parse::<i64>() {
                    let mut c = 1u32;
                    for _ in 0..exp {
                        c = f.mul(c, f.from_i64(n));
                    }
                    Polynomial::monomial(self.one(), c)
                } else {
                    let i = self
                        .generator_index(base)
                        .ok_or_else(|| Error::UnknownGenerator(base.to_string()))?;
                    let g = Polynomial::monomial(self.generator_monomial(i), 1);
                    let mut pw = Polynomial::monomial(self.one(), 1);
                    for _ in 0..exp {
                        pw = self.multiply_polynomials(&pw, &g);
                    }
                    pw
                };
                acc = self.multiply_polynomials(&acc, &piece);
            }
            for (m, c) in acc.terms {
                out.add_term(f, m, c);
            }
        }
        Ok(out)
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.generators)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, g)| {
                if e == 1 {
                    g.name.clone()
                } else {
                    format!("{}^{}", g.name, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format_polynomial(&self, p: &Polynomial) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        // Largest monomial first.
        for (k, (m, &c)) in p.terms.iter().rev().enumerate() {
            let c = self.field.lift(c);
            let (neg, mag) = (c < 0, c.unsigned_abs());
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            if mono == "1" {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Canonical text form; `parse(to_text(p)) == p`.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "char = {}\norientation = {}\n",
            self.field.characteristic(),
            self.orientation
        );
        for g in &self.generators {
            s.push_str(&format!("[gen] {}, {}, {}\n", g.name, g.degree, kind_str(g.kind)));
        }
        for r in &self.relations {
            s.push_str(&format!("[rel] {}\n", self.format_polynomial(r)));
        }
        s
    }

    /// Parse the presentation text format.
    ///
    /// ```text
    /// char = 3
    /// orientation = connective
    /// [gen] mu, 6
    /// [gen] lambda, 5, ext
    /// [rel] mu^3
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut p: Option<u32> = None;
        let mut orientation = Orientation::Connective;
        let mut generators = Vec::new();
        let mut rel_lines: Vec<(usize, String)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let lineno = lineno + 1;
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("[gen]") {
                let fields: Vec<&str> = rest.split(',').map(str::trim).collect();
                if fields.len() < 2 || fields.len() > 3 {
                    return Err(Error::parse(lineno, "expected `[gen] name, degree (, poly|ext)`"));
                }
                let degree: i32 = fields[1]
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad degree `{}`", fields[1])))?;
                let kind = match fields.get(2) {
                    None => {
                        if degree % 2 != 0 {
                            GeneratorKind::Ext
                        } else {
                            GeneratorKind::Poly
                        }
                    }
                    Some(&"poly") => GeneratorKind::Poly,
                    Some(&"ext") => GeneratorKind::Ext,
                    Some(other) => {
                        return Err(Error::parse(lineno, format!("unknown generator kind `{other}`")))
                    }
                };
                generators.push(GeneratorSpec {
                    name: fields[0].to_string(),
                    degree,
                    kind,
                });
            } else if let Some(rest) = line.strip_prefix("[rel]") {
                rel_lines.push((lineno, rest.trim().to_string()));
            } else if let Some((key, value)) = line.split_once('=') {
                match key.trim() {
                    "char" => {
                        p = Some(value.trim().parse().map_err(|_| {
                            Error::parse(lineno, format!("bad characteristic `{}`", value.trim()))
                        })?)
                    }
                    "orientation" => {
                        orientation = match value.trim() {
                            "connective" => Orientation::Connective,
                            "coconnective" => Orientation::Coconnective,
                            other => {
                                return Err(Error::parse(
                                    lineno,
                                    format!("unknown orientation `{other}`"),
                                ))
                            }
                        }
                    }
                    other => return Err(Error::parse(lineno, format!("unknown key `{other}`"))),
                }
            } else {
                return Err(Error::parse(lineno, format!("unrecognized line `{line}`")));
            }
        }
        let p = p.ok_or_else(|| Error::parse(0, "missing `char = <p>`"))?;
        let mut pres = Self {
            field: PrimeField::new(p)?,
            orientation,
            generators,
            relations: Vec::new(),
        };
        pres.check_generators()?;
        for (lineno, r) in rel_lines {
            let poly = pres.parse_polynomial(&r).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::parse(lineno, msg),
                other => other,
            })?;
            if !poly.is_zero() {
                pres.relations.push(poly);
            }
        }
        pres.check_relations()?;
        Ok(pres)
    }

    /// Tensor product; generator names must be disjoint.
    pub fn tensor(&self, other: &Presentation) -> Result<Presentation> {
        if self.characteristic() != other.characteristic() {
            return Err(Error::FieldMismatch(
                self.characteristic(),
                other.characteristic(),
            ));
        }
        if self.orientation != other.orientation {
            return Err(Error::OrientationMismatch);
        }
        let n = self.generators.len();
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let pad = |m: &Monomial, left: bool| -> Monomial {
            if left {
                let mut v = m.clone();
                v.resize(n + other.generators.len(), 0);
                v
            } else {
                let mut v = vec![0; n];
                v.extend_from_slice(m);
                v
            }
        };
        let mut relations = Vec::new();
        for r in &self.relations {
            relations.push(Polynomial {
                terms: r.terms.iter().map(|(m, &c)| (pad(m, true), c)).collect(),
            });
        }
        for r in &other.relations {
            relations.push(Polynomial {
                terms: r.terms.iter().map(|(m, &c)| (pad(m, false), c)).collect(),
            });
        }
        Presentation::from_parts(self.field.clone(), self.orientation, generators, relations)
    }

    /// Same algebra with every generator renamed by `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Presentation {
        let mut out = self.clone();
        for g in &mut out.generators {
            g.name = f(&g.name);
        }
        out
    }

    /// Add relations given as polynomials in this presentation.
    pub fn with_relations(&self, extra: Vec<Polynomial>) -> Result<Presentation> {
        let mut relations = self.relations.clone();
        relations.extend(extra);
        Presentation::from_parts(
            self.field.clone(),
            self.orientation,
            self.generators.clone(),
            relations,
        )
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub struct PresentationBuilder {
    p: u32,
    orientation: Orientation,
    generators: Vec<GeneratorSpec>,
    relations: Vec<String>,
}

impl PresentationBuilder {
    pub fn coconnective(mut self) -> Self {
        self.orientation = Orientation::Coconnective;
        self
    }

    pub fn poly(mut self, name: &str, degree: i32) -> Self {
        self.generators.push(GeneratorSpec {
            name: name.into(),
            degree,
            kind: GeneratorKind::Poly,
        });
        self
    }

    /// An exterior generator. In characteristic 2 the square-zero relation
    /// is added to the relation list explicitly.
    pub fn ext(mut self, name: &str, degree: i32) -> Self {
        self.generators.push(GeneratorSpec {
            name: name.into(),
            degree,
            kind: GeneratorKind::Ext,
        });
        if self.p == 2 {
            self.relations.push(format!("{name}^2"));
        }
        self
    }

    /// Generator with kind derived from degree parity (odd means exterior).
    pub fn gen(self, name: &str, degree: i32) -> Self {
        if degree % 2 != 0 {
            self.ext(name, degree)
        } else {
            self.poly(name, degree)
        }
    }

    pub fn relation(mut self, r: &str) -> Self {
        self.relations.push(r.into());
        self
    }

    pub fn build(self) -> Result<Presentation> {
        let rels: Vec<&str> = self.relations.iter().map(String::as_str).collect();
        Presentation::new(self.p, self.orientation, self.generators, &rels)
    }
}

fn kind_str(k: GeneratorKind) -> &'static str {
    match k {
        GeneratorKind::Poly => "poly",
        GeneratorKind::Ext => "ext",
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

/// Split `a - 2*b + c` into signed terms.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    let mut expect_term = true;
    for ch in s.chars() {
        match ch {
            '+' | '-' if !current.trim().is_empty() && !current.trim_end().ends_with('^') => {
                out.push((negative, current.trim().to_string()));
                current.clear();
                negative = ch == '-';
                expect_term = true;
            }
            '+' | '-' if expect_term && current.trim().is_empty() => {
                if ch == '-' {
                    negative = !negative;
                }
            }
            _ => {
                current.push(ch);
                expect_term = false;
            }
        }
    }
    if current.trim().is_empty() {
        return Err(Error::parse(0, format!("dangling operator in `{s}`")));
    }
    out.push((negative, current.trim().to_string()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print_round_trip() {
        let text = "char = 3\norientation = connective\n[gen] mu, 6, poly\n[gen] l, 5, ext\n[rel] mu^3\n";
        let p = Presentation::parse(text).unwrap();
        assert_eq!(p.to_text(), text);
        assert_eq!(Presentation::parse(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn sign_rule_for_odd_generators() {
        let p = Presentation::builder(3).ext("a", 5).ext("b", 7).build().unwrap();
        let ab = p.parse_polynomial("a*b").unwrap();
        let ba = p.parse_polynomial("b*a").unwrap();
        let sum = {
            let mut s = ab.clone();
            for (m, c) in ba.terms {
                s.add_term(p.field(), m, c);
            }
            s
        };
        assert!(sum.is_zero(), "a*b + b*a should vanish");
        assert!(p.parse_polynomial("a*a").unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(matches!(
            Presentation::parse("char = 3\n[gen] x, 0\n"),
            Err(Error::DegreeZeroGenerator(_))
        ));
        assert!(matches!(
            Presentation::parse("char = 3\n[gen] x, 2\n[gen] y, 4\n[rel] x + y\n"),
            Err(Error::RelationNotHomogeneous(_))
        ));
        assert!(matches!(
            Presentation::parse("char = 3\n[gen] x, 3, poly\n"),
            Err(Error::ParityMismatch { .. })
        ));
        assert!(matches!(
            Presentation::parse("char = 2\n[gen] x, 3, ext\n"),
            Err(Error::MissingExteriorRelation(_))
        ));
        assert!(matches!(
            Presentation::parse("char = 3\n[gen] x, -2\n"),
            Err(Error::OrientationViolation(_))
        ));
        assert!(Presentation::parse("char = 2\n[gen] x, 3, ext\n[rel] x^2\n").is_ok());
    }

    #[test]
    fn polynomial_printing_is_stable() {
        let p = Presentation::builder(5).poly("x", 2).poly("y", 2).build().unwrap();
        let q = p.parse_polynomial("x^2 - 2*x*y + 3 * y^2 - x*y").unwrap();
        let s = p.format_polynomial(&q);
        assert_eq!(p.parse_polynomial(&s).unwrap(), q);
        assert_eq!(s, "x^2 + 2*x*y - 2*y^2");
    }
}
