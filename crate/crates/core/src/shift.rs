//! Shift ledgers: rings, maps and cofibre sequences as linear equations in
//! Gorenstein shifts, solved by propagation with a derivation trace.
//!
//! Conventions. `relative S R m` records `Hom_S(R, S) = Sigma^m R` and means
//! `shift(S) = shift(R) + m`. A cofibre sequence `S -> R -> Q` gives
//! `shift(R) = shift(S) + shift(Q)`, `rel(S,R) = -shift(Q)` and
//! `rel(R,Q) = shift(S)`. `thh C X p=<p>` means `shift(X) = -shift(C) - 3`.
//!
//! File format, one relation per line (`#` starts a comment):
//!
//! ```text
//! node ku shift=-4
//! relative ko ku -2
//! cofibre S R Q
//! thh ko thh_ko p=2
//! axiom fp 0 "the residue field"
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `shift(THH(R; k))` for `R` Gorenstein of shift `a` over `k`.
pub fn thh_descent_shift(a: i64) -> i64 {
    -a - 3
}

/// `shift(THH(C)) = shift(THH(B)) + shift(A)`.
pub fn thh_general_descent(shift_thh_b: i64, shift_a: i64) -> i64 {
    shift_thh_b + shift_a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Relation {
    Gorenstein { node: String, shift: i64 },
    Axiom { node: String, shift: i64, note: String },
    Relative { s: String, r: String, shift: i64 },
    Cofibre { s: String, r: String, q: String },
    Thh { c: String, result: String, p: u32 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    /// Declared node names in order of first appearance.
    pub nodes: Vec<String>,
    /// Each relation with the 1-based line it came from (0 if built in code).
    pub relations: Vec<(usize, Relation)>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    fn touch(&mut self, name: &str) {
        if !self.nodes.iter().any(|n| n == name) {
            self.nodes.push(name.to_string());
        }
    }

    pub fn add(&mut self, rel: Relation) -> &mut Self {
        self.add_at(0, rel)
    }

    fn add_at(&mut self, line: usize, rel: Relation) -> &mut Self {
        match &rel {
            Relation::Gorenstein { node, .. } | Relation::Axiom { node, .. } => self.touch(node),
            Relation::Relative { s, r, .. } => {
                self.touch(s);
                self.touch(r);
            }
            Relation::Cofibre { s, r, q } => {
                self.touch(s);
                self.touch(r);
                self.touch(q);
            }
            Relation::Thh { c, result, .. } => {
                self.touch(c);
                self.touch(result);
            }
        }
        self.relations.push((line, rel));
        self
    }

    /// Concatenate two ledgers.
    pub fn merge(&mut self, other: &Ledger) {
        for n in &other.nodes {
            self.touch(n);
        }
        self.relations.extend(other.relations.iter().cloned());
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut ledger = Ledger::new();
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let (body, note) = split_note(raw);
            let body = body.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::parse(lineno, msg);
            let words: Vec<&str> = body.split_whitespace().collect();
            let int = |s: &str| s.parse::<i64>().map_err(|_| err(&format!("expected an integer, found `{s}`")));
            let rel = match words.as_slice() {
                ["node", name] => {
                    ledger.touch(name);
                    continue;
                }
                ["node", name, kv] => {
                    let v = kv.strip_prefix("shift=").ok_or_else(|| err("expected `shift=<int>`"))?;
                    Relation::Gorenstein {
                        node: name.to_string(),
                        shift: int(v)?,
                    }
                }
                ["cofibre", s, r, q] => Relation::Cofibre {
                    s: s.to_string(),
                    r: r.to_string(),
                    q: q.to_string(),
                },
                ["relative", s, r, m] => Relation::Relative {
                    s: s.to_string(),
                    r: r.to_string(),
                    shift: int(m)?,
                },
                ["thh", c, result, kv] => {
                    let v = kv.strip_prefix("p=").ok_or_else(|| err("expected `p=<prime>`"))?;
                    let p: u32 = v.parse().map_err(|_| err("characteristic must be an integer"))?;
                    if !crate::field::is_prime(p) {
                        return Err(Error::NotPrime(p));
                    }
                    Relation::Thh {
                        c: c.to_string(),
                        result: result.to_string(),
                        p,
                    }
                }
                ["axiom", name, v] => Relation::Axiom {
                    node: name.to_string(),
                    shift: int(v)?,
                    note: note.unwrap_or_default(),
                },
                _ => return Err(err(&format!("unrecognised ledger line `{body}`"))),
            };
            ledger.add_at(lineno, rel);
        }
        Ok(ledger)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for n in &self.nodes {
            let _ = writeln!(out, "node {n}");
        }
        for (_, r) in &self.relations {
            let _ = writeln!(out, "{}", relation_text(r));
        }
        out
    }
}

fn split_note(raw: &str) -> (String, Option<String>) {
    match (raw.find('"'), raw.rfind('"')) {
        (Some(a), Some(b)) if b > a => (
            format!("{}{}", &raw[..a], &raw[b + 1..]),
            Some(raw[a + 1..b].to_string()),
        ),
        _ => (raw.to_string(), None),
    }
}

fn relation_text(r: &Relation) -> String {
    match r {
        Relation::Gorenstein { node, shift } => format!("node {node} shift={shift}"),
        Relation::Axiom { node, shift, note } => format!("axiom {node} {shift} \"{note}\""),
        Relation::Relative { s, r, shift } => format!("relative {s} {r} {shift}"),
        Relation::Cofibre { s, r, q } => format!("cofibre {s} {r} {q}"),
        Relation::Thh { c, result, p } => format!("thh {c} {result} p={p}"),
    }
}

/// `sum c_i x_i = constant`, with the ledger line it came from.
#[derive(Clone, Debug)]
struct Equation {
    terms: Vec<(usize, i64)>,
    constant: i64,
    source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: usize,
    pub variable: String,
    pub value: i64,
    /// The equation used, rendered with variable names.
    pub equation: String,
    /// Ledger line(s) the equation came from.
    pub source: String,
    /// Previously solved variables it depends on.
    pub from: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conflict {
    pub equation: String,
    pub source: String,
    /// `lhs - rhs` evaluated on the derived values.
    pub residual: i64,
    /// The derivation steps behind every variable involved.
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    /// Node shifts, keyed by node name.
    pub shifts: BTreeMap<String, i64>,
    /// Relative shifts `rel(S,R)`, keyed by `"S|R"`.
    pub relative: BTreeMap<String, i64>,
    pub trace: Vec<TraceStep>,
    pub unresolved: Vec<String>,
    pub conflicts: Vec<Conflict>,
}

impl Solution {
    pub fn shift(&self, node: &str) -> Option<i64> {
        self.shifts.get(node).copied()
    }

    pub fn is_consistent(&self) -> bool {
        self.conflicts.is_empty()
    }

    /// The derivation as a markdown table.
    pub fn to_markdown(&self) -> String {
        let mut out = String::from("| step | variable | value | equation | source | from |\n|---|---|---|---|---|---|\n");
        for s in &self.trace {
            let _ = writeln!(
                out,
                "| {} | {} | {} | `{}` | {} | {} |",
                s.step,
                s.variable,
                s.value,
                s.equation,
                s.source,
                s.from.join(", ")
            );
        }
        if !self.unresolved.is_empty() {
            let _ = writeln!(out, "\nUnresolved: {}", self.unresolved.join(", "));
        }
        for c in &self.conflicts {
            let _ = writeln!(out, "\nConflict: `{}` ({}) is off by {}", c.equation, c.source, c.residual);
        }
        out
    }
}

struct System {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    equations: Vec<Equation>,
}

impl System {
    fn var(&mut self, name: String) -> usize {
        if let Some(&i) = self.index.get(&name) {
            return i;
        }
        self.names.push(name.clone());
        self.index.insert(name, self.names.len() - 1);
        self.names.len() - 1
    }

    fn shift(&mut self, node: &str) -> usize {
        self.var(format!("shift({node})"))
    }

    fn rel(&mut self, s: &str, r: &str) -> usize {
        let v = self.var(format!("rel({s}|{r})"));
        // Every relative variable carries shift(S) = shift(R) + rel(S|R).
        let key = format!("rel({s}|{r})");
        if !self.equations.iter().any(|e| e.source == key) {
            let (a, b) = (self.shift(s), self.shift(r));
            self.equations.push(Equation {
                terms: vec![(a, 1), (b, -1), (v, -1)],
                constant: 0,
                source: key,
            });
        }
        v
    }

    fn build(ledger: &Ledger) -> Self {
        let mut sys = System {
            names: Vec::new(),
            index: BTreeMap::new(),
            equations: Vec::new(),
        };
        for n in &ledger.nodes {
            sys.shift(n);
        }
        for (line, rel) in &ledger.relations {
            let source = if *line > 0 {
                format!("line {line}: {}", relation_text(rel))
            } else {
                relation_text(rel)
            };
            let push = |sys: &mut System, terms: Vec<(usize, i64)>, constant: i64| {
                sys.equations.push(Equation {
                    terms,
                    constant,
                    source: source.clone(),
                })
            };
            match rel {
                Relation::Gorenstein { node, shift } | Relation::Axiom { node, shift, .. } => {
                    let x = sys.shift(node);
                    push(&mut sys, vec![(x, 1)], *shift);
                }
                Relation::Relative { s, r, shift } => {
                    let v = sys.rel(s, r);
                    push(&mut sys, vec![(v, 1)], *shift);
                }
                Relation::Cofibre { s, r, q } => {
                    let (a, b, c) = (sys.shift(s), sys.shift(r), sys.shift(q));
                    push(&mut sys, vec![(b, 1), (a, -1), (c, -1)], 0);
                    let lambda = sys.rel(s, r);
                    push(&mut sys, vec![(lambda, 1), (c, 1)], 0);
                    let mu = sys.rel(r, q);
                    push(&mut sys, vec![(mu, 1), (a, -1)], 0);
                }
                Relation::Thh { c, result, .. } => {
                    let (x, y) = (sys.shift(c), sys.shift(result));
                    push(&mut sys, vec![(y, 1), (x, 1)], -3);
                }
            }
        }
        sys
    }

    fn render(&self, e: &Equation) -> String {
        let mut lhs = String::new();
        for (k, &(v, c)) in e.terms.iter().enumerate() {
            let sign = match (k, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let mag = if c.abs() == 1 { String::new() } else { format!("{}*", c.abs()) };
            let _ = write!(lhs, "{sign}{mag}{}", self.names[v]);
        }
        format!("{lhs} = {}", e.constant)
    }
}

struct Solver<'a> {
    sys: &'a System,
    values: Vec<Option<i64>>,
    /// Step that fixed each variable, and the variables that step used.
    origin: Vec<Option<(usize, Vec<usize>)>>,
    trace: Vec<TraceStep>,
    conflicts: Vec<Conflict>,
}

impl<'a> Solver<'a> {
    fn set(&mut self, var: usize, value: i64, equation: String, source: String, deps: Vec<usize>) {
        let step = self.trace.len() + 1;
        self.values[var] = Some(value);
        self.origin[var] = Some((step, deps.clone()));
        self.trace.push(TraceStep {
            step,
            variable: self.sys.names[var].clone(),
            value,
            equation,
            source,
            from: deps.iter().map(|&d| self.sys.names[d].clone()).collect(),
        });
    }

    /// Solve every equation with a single unknown until nothing changes.
    fn propagate(&mut self) -> bool {
        let mut any = false;
        loop {
            let mut changed = false;
            for e in &self.sys.equations {
                let unknown: Vec<&(usize, i64)> = e.terms.iter().filter(|(v, _)| self.values[*v].is_none()).collect();
                if unknown.len() != 1 {
                    continue;
                }
                let (var, c) = *unknown[0];
                let known: i64 = e
                    .terms
                    .iter()
                    .filter(|(v, _)| *v != var)
                    .map(|(v, k)| k * self.values[*v].unwrap())
                    .sum();
                let rest = e.constant - known;
                if rest % c != 0 {
                    continue;
                }
                let deps = e.terms.iter().map(|t| t.0).filter(|&v| v != var).collect();
                self.set(var, rest / c, self.sys.render(e), e.source.clone(), deps);
                changed = true;
            }
            if !changed {
                return any;
            }
            any = true;
        }
    }

    /// Integer elimination over the equations that still have unknowns;
    /// fixes every variable the combined system determines.
    fn eliminate(&mut self) -> bool {
        let unknown: Vec<usize> = (0..self.values.len()).filter(|&v| self.values[v].is_none()).collect();
        if unknown.is_empty() {
            return false;
        }
        let col = |v: usize| unknown.binary_search(&v).ok();
        let mut rows: Vec<(Vec<i128>, i128, Vec<usize>)> = Vec::new();
        for (i, e) in self.sys.equations.iter().enumerate() {
            let mut coeffs = vec![0i128; unknown.len()];
            let mut rhs = e.constant as i128;
            for &(v, c) in &e.terms {
                match (col(v), self.values[v]) {
                    (Some(j), _) => coeffs[j] += c as i128,
                    (None, Some(x)) => rhs -= (c * x) as i128,
                    (None, None) => unreachable!(),
                }
            }
            if coeffs.iter().any(|&c| c != 0) {
                rows.push((coeffs, rhs, vec![i]));
            }
        }
        let mut pivot_row = 0;
        for j in 0..unknown.len() {
            let Some(p) = (pivot_row..rows.len()).find(|&r| rows[r].0[j] != 0) else {
                continue;
            };
            rows.swap(pivot_row, p);
            let (prow, prhs, psrc) = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == pivot_row || row.0[j] == 0 {
                    continue;
                }
                let (a, b) = (prow[j], row.0[j]);
                for (x, &y) in row.0.iter_mut().zip(&prow) {
                    *x = *x * a - y * b;
                }
                row.1 = row.1 * a - prhs * b;
                for s in &psrc {
                    if !row.2.contains(s) {
                        row.2.push(*s);
                    }
                }
                let g = row.0.iter().chain(std::iter::once(&row.1)).fold(0i128, |g, &x| gcd(g, x));
                if g > 1 {
                    row.0.iter_mut().for_each(|x| *x /= g);
                    row.1 /= g;
                }
            }
            pivot_row += 1;
        }
        let mut any = false;
        for (coeffs, rhs, mut src) in rows {
            let nz: Vec<usize> = (0..coeffs.len()).filter(|&k| coeffs[k] != 0).collect();
            if nz.len() != 1 || rhs % coeffs[nz[0]] != 0 {
                continue;
            }
            let var = unknown[nz[0]];
            src.sort_unstable();
            let source = src.iter().map(|&i| self.sys.equations[i].source.as_str()).collect::<Vec<_>>().join("; ");
            let mut deps: Vec<usize> = src
                .iter()
                .flat_map(|&i| self.sys.equations[i].terms.iter().map(|t| t.0))
                .filter(|&v| v != var && self.values[v].is_some())
                .collect();
            deps.sort_unstable();
            deps.dedup();
            let value = (rhs / coeffs[nz[0]]) as i64;
            self.set(var, value, format!("{} = {value} (elimination)", self.sys.names[var]), source, deps);
            any = true;
        }
        any
    }

    fn path(&self, var: usize, out: &mut Vec<usize>) {
        if let Some((step, deps)) = &self.origin[var] {
            if out.contains(step) {
                return;
            }
            out.push(*step);
            for &d in deps {
                self.path(d, out);
            }
        }
    }

    fn check(&mut self) {
        for e in &self.sys.equations {
            let vals: Option<Vec<i64>> = e.terms.iter().map(|(v, c)| self.values[*v].map(|x| c * x)).collect();
            let residual = match vals {
                Some(v) => v.iter().sum::<i64>() - e.constant,
                None => continue,
            };
            if residual != 0 {
                let paths = e
                    .terms
                    .iter()
                    .map(|(v, _)| {
                        let mut p = Vec::new();
                        self.path(*v, &mut p);
                        p.sort_unstable();
                        p
                    })
                    .collect();
                self.conflicts.push(Conflict {
                    equation: self.sys.render(e),
                    source: e.source.clone(),
                    residual,
                    paths,
                });
            }
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Propagate to a fixed point, then eliminate; conflicts are reported in
/// the solution rather than as an error.
pub fn solve_report(ledger: &Ledger) -> Solution {
    let sys = System::build(ledger);
    let n = sys.names.len();
    let mut solver = Solver {
        sys: &sys,
        values: vec![None; n],
        origin: vec![None; n],
        trace: Vec::new(),
        conflicts: Vec::new(),
    };
    loop {
        solver.propagate();
        if !solver.eliminate() {
            break;
        }
    }
    solver.check();
    let mut shifts = BTreeMap::new();
    let mut relative = BTreeMap::new();
    let mut unresolved = Vec::new();
    for (i, name) in sys.names.iter().enumerate() {
        match (solver.values[i], name.strip_prefix("shift("), name.strip_prefix("rel(")) {
            (None, _, _) => unresolved.push(name.clone()),
            (Some(v), Some(node), _) => {
                shifts.insert(node.trim_end_matches(')').to_string(), v);
            }
            (Some(v), None, Some(pair)) => {
                relative.insert(pair.trim_end_matches(')').to_string(), v);
            }
            _ => {}
        }
    }
    Solution {
        shifts,
        relative,
        trace: solver.trace,
        unresolved,
        conflicts: solver.conflicts,
    }
}

/// Solve, failing with the conflicting derivations if the ledger is
/// inconsistent.
pub fn solve(ledger: &Ledger) -> Result<Solution> {
    let sol = solve_report(ledger);
    if let Some(c) = sol.conflicts.first() {
        let steps: Vec<String> = c
            .paths
            .iter()
            .flatten()
            .map(|&s| {
                let t = &sol.trace[s - 1];
                format!("step {s}: {} = {} from {}", t.variable, t.value, t.source)
            })
            .collect();
        return Err(Error::InconsistentLedger(format!(
            "{} ({}) fails by {}; derivations: {}",
            c.equation,
            c.source,
            c.residual,
            steps.join("; ")
        )));
    }
    Ok(sol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ledger(text: &str) -> Ledger {
        Ledger::parse(text).unwrap()
    }

    #[test]
    fn relative_composition() {
        let sol = solve(&ledger("node ku shift=-4\nrelative ko ku -2\n")).unwrap();
        assert_eq!(sol.shift("ko"), Some(-6));
        assert_eq!(sol.relative.get("ko|ku"), Some(&-2));
        let tmf = solve(&ledger("node tmf02 shift=-15\nrelative tmf tmf02 -8\n")).unwrap();
        assert_eq!(tmf.shift("tmf"), Some(-23));
    }

    #[test]
    fn cofibre_rules() {
        let sol = solve(&ledger("node S shift=0\nnode Q shift=0\ncofibre S R Q\n")).unwrap();
        assert_eq!(sol.shift("R"), Some(0));
        let sol = solve(&ledger("node S shift=5\nnode Q shift=-2\ncofibre S R Q\n")).unwrap();
        assert_eq!(sol.shift("R"), Some(3));
        assert_eq!(sol.relative.get("S|R"), Some(&2));
        assert_eq!(sol.relative.get("R|Q"), Some(&5));
        // Backwards: knowing R and Q determines S.
        let sol = solve(&ledger("node R shift=3\nnode Q shift=-2\ncofibre S R Q\n")).unwrap();
        assert_eq!(sol.shift("S"), Some(5));
    }

    #[test]
    fn descent_shifts() {
        assert_eq!(thh_descent_shift(0), -3);
        assert_eq!(thh_descent_shift(-1), -2);
        for n in 1..=3 {
            assert_eq!(thh_descent_shift(-n - 3), n);
        }
        for p in [3i64, 5] {
            assert_eq!(thh_general_descent(-2, 2 * p - 1), 2 * p - 3);
        }
        assert_eq!(thh_general_descent(-2, 3), 1);
        assert_eq!(thh_general_descent(1, 2), 3);
        for a in -40..40 {
            assert_eq!(thh_descent_shift(a), thh_general_descent(-3, -a));
        }
        let sol = solve(&ledger("axiom z -1 \"hypersurface\"\nthh z thh_z p=3\n")).unwrap();
        assert_eq!(sol.shift("thh_z"), Some(-2));
    }

    #[test]
    fn elimination_solves_coupled_equations() {
        // R and Q only determined jointly: shift(R) = shift(S) + shift(Q),
        // rel(R|Q) = shift(S), and rel(S|R) known.
        let sol = solve(&ledger("cofibre S R Q\nrelative S R 4\nnode Q shift=-4\n")).unwrap();
        assert!(sol.unresolved.iter().all(|v| v != "shift(Q)"));
        let sol = solve(&ledger("relative A B 2\nrelative B A -2\nthh A TA p=2\nthh B TB p=2\nnode TA shift=1\n")).unwrap();
        assert_eq!(sol.shift("A"), Some(-4));
        assert_eq!(sol.shift("B"), Some(-6));
        assert!(sol.unresolved.is_empty());
    }

    #[test]
    fn conflict_is_reported_with_paths() {
        let text = "node ku shift=-4\nrelative ko ku -2\nnode ko shift=-5\n";
        let err = solve(&ledger(text)).unwrap_err();
        assert!(matches!(err, Error::InconsistentLedger(_)));
        let rep = solve_report(&ledger(text));
        assert_eq!(rep.conflicts.len(), 1);
        assert!(!rep.conflicts[0].paths.iter().all(Vec::is_empty));
    }

    #[test]
    fn order_independent() {
        let lines = [
            "node fp shift=0",
            "thh fp thh_fp p=2",
            "node ku shift=-4",
            "relative ko ku -2",
            "cofibre ko ku sigma2",
            "thh ku thh_ku p=2",
            "relative thh_ku thh_ko 2",
        ];
        let base = solve(&ledger(&lines.join("\n"))).unwrap();
        let mut rev = lines.to_vec();
        rev.reverse();
        let other = solve(&ledger(&rev.join("\n"))).unwrap();
        assert_eq!(base.shifts, other.shifts);
        assert_eq!(base.relative, other.relative);
        assert_eq!(base.shift("sigma2"), Some(2));
    }

    #[test]
    fn unresolved_variables_are_listed() {
        let sol = solve(&ledger("node x\nrelative y x 3\n")).unwrap();
        assert!(sol.unresolved.contains(&"shift(x)".to_string()));
        assert!(sol.shifts.is_empty());
    }

    #[test]
    fn parse_errors_and_round_trip() {
        assert!(matches!(Ledger::parse("relative a b two"), Err(Error::Parse { .. })));
        assert!(matches!(Ledger::parse("thh a b p=4"), Err(Error::NotPrime(4))));
        assert!(matches!(Ledger::parse("frobnicate a"), Err(Error::Parse { .. })));
        let l = ledger("axiom m -3 \"closed # oriented 3-manifold\"\nrelative a m 1 # note\n");
        assert_eq!(l.relations.len(), 2);
        assert!(matches!(&l.relations[0].1, Relation::Axiom { note, .. } if note == "closed # oriented 3-manifold"));
        let again = Ledger::parse(&l.to_text()).unwrap();
        assert_eq!(again.relations.iter().map(|r| &r.1).collect::<Vec<_>>(), l.relations.iter().map(|r| &r.1).collect::<Vec<_>>());
    }

    #[test]
    fn markdown_trace() {
        let sol = solve(&ledger("node ku shift=-4\nrelative ko ku -2\n")).unwrap();
        let md = sol.to_markdown();
        assert!(md.starts_with("| step |"));
        assert!(md.contains("shift(ko)"));
        let json = serde_json::to_string(&sol).unwrap();
        assert!(json.contains("\"trace\""));
    }
}
