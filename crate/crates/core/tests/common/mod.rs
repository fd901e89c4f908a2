//! Presentations in tensor form, shared by the integration tests.

#![allow(dead_code)]

use gordual::Presentation;

/// `F_p[x_i] (x) Λ(y_j) (x) F_p[z]/(z^h)`, names prefixed so that two
/// shapes can be tensored by concatenating their texts.
#[derive(Clone, Debug)]
pub struct Shape {
    pub p: u32,
    pub poly: Vec<i32>,
    pub ext: Vec<i32>,
    /// Truncated polynomial factor `(degree, height)`.
    pub truncated: Option<(i32, u32)>,
}

impl Shape {
    /// Generator and relation lines, without the `char` line.
    pub fn body(&self, prefix: &str) -> String {
        let mut s = String::new();
        for (i, d) in self.poly.iter().enumerate() {
            s.push_str(&format!("[gen] {prefix}x{i}, {d}, poly\n"));
        }
        for (i, d) in self.ext.iter().enumerate() {
            s.push_str(&format!("[gen] {prefix}y{i}, {d}, ext\n"));
            if self.p == 2 {
                s.push_str(&format!("[rel] {prefix}y{i}^2\n"));
            }
        }
        if let Some((d, h)) = self.truncated {
            s.push_str(&format!("[gen] {prefix}z, {d}, poly\n[rel] {prefix}z^{h}\n"));
        }
        s
    }

    pub fn text(&self) -> String {
        format!("char = {}\n{}", self.p, self.body("a"))
    }

    pub fn presentation(&self) -> Presentation {
        Presentation::parse(&self.text()).expect("generated presentation")
    }

    /// `|x| = d` contributes `-(d + 1)`, `|y| = d` contributes `d`, and
    /// `z^h = 0` contributes the socle degree `(h - 1)|z|`.
    pub fn expected_shift(&self) -> i32 {
        let t = self.truncated.map_or(0, |(d, h)| (h as i32 - 1) * d);
        self.ext.iter().sum::<i32>() - self.poly.iter().map(|d| d + 1).sum::<i32>() + t
    }

    /// Window large enough for the Ext class in row `#poly` and for
    /// resolution stages up to `#poly + 2`, whose generators reach
    /// `(#poly + 2) * top` internal degrees.
    pub fn deg_bound(&self) -> u32 {
        let all: Vec<i32> = self
            .poly
            .iter()
            .chain(&self.ext)
            .copied()
            .chain(self.truncated.map(|(d, h)| d * h as i32))
            .collect();
        let top = all.iter().copied().max().unwrap_or(0);
        (all.iter().sum::<i32>() + (self.poly.len() as i32 + 2) * top + 4) as u32
    }
}

/// Tensor product of two shapes over the same prime.
pub fn tensor_text(a: &Shape, b: &Shape) -> String {
    assert_eq!(a.p, b.p);
    format!("char = {}\n{}{}", a.p, a.body("a"), b.body("b"))
}
