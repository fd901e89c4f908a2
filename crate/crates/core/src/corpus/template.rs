//! Integer expressions in the prime `p`, and `{expr}` substitution in
//! corpus text. Grammar: `+ - *`, parentheses, integer literals and `p`.

use crate::error::{Error, Result};

pub fn eval(expr: &str, p: i64) -> Result<i64> {
    let tokens: Vec<char> = expr.chars().filter(|c| !c.is_whitespace()).collect();
    let mut parser = Parser { tokens: &tokens, pos: 0, p };
    let v = parser.sum()?;
    if parser.pos != tokens.len() {
        return Err(bad(expr));
    }
    Ok(v)
}

/// Replace each `{expr}` in `text` by its value.
pub fn expand(text: &str, p: i64) -> Result<String> {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let close = rest[open..].find('}').ok_or_else(|| bad(text))? + open;
        out.push_str(&eval(&rest[open + 1..close], p)?.to_string());
        rest = &rest[close + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

fn bad(expr: &str) -> Error {
    Error::parse(0, format!("bad expression `{expr}`"))
}

struct Parser<'a> {
    tokens: &'a [char],
    pos: usize,
    p: i64,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<i64> {
        let mut v = self.product()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.product()?;
            v = if op == '+' { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn product(&mut self) -> Result<i64> {
        let mut v = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            v *= self.atom()?;
        }
        Ok(v)
    }

    fn atom(&mut self) -> Result<i64> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.atom()?)
            }
            Some('(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(bad(&self.tokens.iter().collect::<String>()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some('p') => {
                self.pos += 1;
                Ok(self.p)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s: String = self.tokens[start..self.pos].iter().collect();
                s.parse().map_err(|_| bad(&s))
            }
            _ => Err(bad(&self.tokens.iter().collect::<String>())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(eval("2*p*p-1", 3).unwrap(), 17);
        assert_eq!(eval("2*(p-2)", 5).unwrap(), 6);
        assert_eq!(eval("-2*p-1", 2).unwrap(), -5);
        assert_eq!(eval("-3", 7).unwrap(), -3);
        assert!(eval("2*", 3).is_err());
        assert!(eval("q", 3).is_err());
    }

    #[test]
    fn substitution() {
        assert_eq!(expand("[gen] mu, {2*p}\nchar = {p}", 5).unwrap(), "[gen] mu, 10\nchar = 5");
        assert!(expand("{2*p", 3).is_err());
    }
}
