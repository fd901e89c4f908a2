//! Running the corpus checks and collecting a deterministic report.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::template::{eval, expand};
use super::{CorpusEntry, HhCheck, LedgerCheck, RingCheck, SsCheck, Status};
use crate::duality::functional_equation;
use crate::error::{Error, Result};
use crate::graded::{hilbert_series, HilbertSeries, Presentation};
use crate::hochschild::{dwyer_miller_check, thh_prediction};
use crate::resolution::{gorenstein_certificate, socle, structural_shift};
use crate::shift::{solve_report, Ledger, Solution};
use crate::sseq::{convergence_check, parse_schedule, run_schedule, ConvergenceTarget};

/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

const DEFAULT_HOM_BOUND: u32 = 12;
const DEFAULT_DEG_BOUND: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckOutcome {
    Pass,
    Fail,
    /// Recorded claim with nothing to compute.
    Recorded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub entry: String,
    pub status: Status,
    pub prime: Option<u32>,
    pub check: String,
    pub outcome: CheckOutcome,
    pub expected: Option<String>,
    pub found: Option<String>,
    pub source: String,
    pub detail: String,
    pub trace: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub schema: u32,
    pub version: String,
    pub results: Vec<CheckResult>,
    /// Every theorem-status check passed.
    pub ok: bool,
}

impl CorpusReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.outcome == CheckOutcome::Fail)
    }
}

/// Window overrides; entry values apply when unset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Windows {
    pub hom_bound: Option<u32>,
    pub deg_bound: Option<u32>,
}

/// `*` matches any run of characters; without `*` the pattern is a
/// substring match.
fn name_matches(pattern: &str, name: &str) -> bool {
    if !pattern.contains('*') {
        return name.contains(pattern);
    }
    let parts: Vec<&str> = pattern.split('*').collect();
    let mut rest = name;
    for (i, part) in parts.iter().enumerate() {
        if i == 0 {
            let Some(r) = rest.strip_prefix(part) else { return false };
            rest = r;
        } else if i == parts.len() - 1 {
            return rest.ends_with(part);
        } else {
            let Some(pos) = rest.find(part) else { return false };
            rest = &rest[pos + part.len()..];
        }
    }
    rest.is_empty()
}

/// Run every check of the selected entries; failures are collected, never
/// propagated. Results are ordered by entry, prime and check order.
pub fn corpus_verify(entries: &[CorpusEntry], filter: Option<&str>, windows: Windows) -> CorpusReport {
    let selected: Vec<&CorpusEntry> = entries
        .iter()
        .filter(|e| filter.is_none_or(|f| name_matches(f, &e.name)))
        .collect();
    let mut per_entry: Vec<(String, Vec<CheckResult>)> = selected
        .par_iter()
        .map(|e| (e.name.clone(), verify_entry(e, windows)))
        .collect();
    per_entry.sort_by(|a, b| a.0.cmp(&b.0));
    let mut results: Vec<CheckResult> = per_entry.into_iter().flat_map(|(_, r)| r).collect();
    if filter.is_none() {
        results.push(full_ledger_check(entries));
    }
    let ok = results
        .iter()
        .all(|r| !r.status.gates_exit() || r.outcome != CheckOutcome::Fail);
    CorpusReport {
        schema: REPORT_SCHEMA,
        version: env!("CARGO_PKG_VERSION").to_string(),
        results,
        ok,
    }
}

/// Every ledger fragment of theorem and variant entries, instantiated at
/// each listed prime, merged into one ledger.
pub fn full_ledger(entries: &[CorpusEntry]) -> Result<Ledger> {
    let mut all = Ledger::new();
    for e in entries.iter().filter(|e| matches!(e.status, Status::Theorem | Status::Variant)) {
        if let Some(l) = &e.ledger {
            for &p in &e.primes {
                let text = expand(&l.text, p as i64)?;
                let fragment = Ledger::parse(&text).map_err(|err| Error::Corpus(format!("{}: {err}", e.name)))?;
                all.merge(&fragment);
            }
        }
    }
    Ok(all)
}

fn full_ledger_check(entries: &[CorpusEntry]) -> CheckResult {
    let mut r = CheckResult {
        entry: "(all)".into(),
        status: Status::Theorem,
        prime: None,
        check: "full ledger consistent".into(),
        outcome: CheckOutcome::Fail,
        expected: Some("no conflicts".into()),
        found: None,
        source: "every ledger fragment of the corpus solved together".into(),
        detail: String::new(),
        trace: Vec::new(),
    };
    match full_ledger(entries) {
        Ok(ledger) => {
            let sol = solve_report(&ledger);
            r.found = Some(format!(
                "{} conflicts, {} shifts solved, {} unresolved",
                sol.conflicts.len(),
                sol.shifts.len(),
                sol.unresolved.len()
            ));
            r.trace = sol
                .conflicts
                .iter()
                .map(|c| format!("`{}` ({}) off by {}", c.equation, c.source, c.residual))
                .collect();
            if sol.is_consistent() {
                r.outcome = CheckOutcome::Pass;
            }
        }
        Err(e) => r.detail = e.to_string(),
    }
    r
}

/// Context shared by the checks of one entry at one prime.
struct Ctx<'a> {
    entry: &'a CorpusEntry,
    p: u32,
    windows: Windows,
    out: Vec<CheckResult>,
}

impl Ctx<'_> {
    fn record(&mut self, check: String, source: Option<&String>, res: Result<Verdict>) {
        let source = source.cloned().unwrap_or_else(|| self.entry.source.clone());
        let (outcome, expected, found, detail, trace) = match res {
            Ok(v) => (
                if v.pass { CheckOutcome::Pass } else { CheckOutcome::Fail },
                Some(v.expected),
                Some(v.found),
                v.detail,
                v.trace,
            ),
            Err(e) => (CheckOutcome::Fail, None, None, format!("error: {e}"), Vec::new()),
        };
        self.out.push(CheckResult {
            entry: self.entry.name.clone(),
            status: self.entry.status,
            prime: Some(self.p),
            check,
            outcome,
            expected,
            found,
            source,
            detail,
            trace,
        });
    }

    fn eval(&self, expr: &str) -> Result<i64> {
        eval(expr, self.p as i64)
    }

    fn presentation(&self, text: &str) -> Result<Presentation> {
        Presentation::parse(&expand(text, self.p as i64)?)
    }
}

struct Verdict {
    pass: bool,
    expected: String,
    found: String,
    detail: String,
    trace: Vec<String>,
}

impl Verdict {
    fn compare<T: PartialEq + ToString>(expected: T, found: T) -> Self {
        Self {
            pass: expected == found,
            expected: expected.to_string(),
            found: found.to_string(),
            detail: String::new(),
            trace: Vec::new(),
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }
}

fn verify_entry(e: &CorpusEntry, windows: Windows) -> Vec<CheckResult> {
    let mut out = Vec::new();
    if let Some(shift) = e.claimed_shift {
        out.push(CheckResult {
            entry: e.name.clone(),
            status: e.status,
            prime: None,
            check: "claimed shift".into(),
            outcome: CheckOutcome::Recorded,
            expected: Some(shift.to_string()),
            found: None,
            source: e.source.clone(),
            detail: "no presentation available; recorded, not verified".into(),
            trace: Vec::new(),
        });
    }
    for &p in &e.primes {
        let mut ctx = Ctx {
            entry: e,
            p,
            windows,
            out: Vec::new(),
        };
        for r in &e.ring {
            ring_checks(&mut ctx, r);
        }
        for s in &e.ss {
            let res = ss_check(&ctx, s);
            ctx.record(format!("{}: E-infinity convergence", s.label), s.source.as_ref(), res);
        }
        if let Some(l) = &e.ledger {
            ledger_checks(&mut ctx, l);
        }
        for h in &e.hh {
            hh_checks(&mut ctx, h);
        }
        out.extend(ctx.out);
    }
    out
}

fn ring_checks(ctx: &mut Ctx<'_>, r: &RingCheck) {
    let pres = match ctx.presentation(&r.presentation) {
        Ok(p) => p,
        Err(e) => return ctx.record(format!("{}: presentation", r.label), r.source.as_ref(), Err(e)),
    };
    let hom = match &r.hom_bound {
        Some(h) => ctx.eval(h).map(|v| v as u32),
        None => Ok(DEFAULT_HOM_BOUND),
    };
    let deg = match &r.deg_bound {
        Some(d) => ctx.eval(d).map(|v| v as u32),
        None => Ok(DEFAULT_DEG_BOUND),
    };
    let hom = ctx.windows.hom_bound.map_or(hom, Ok);
    let deg = ctx.windows.deg_bound.map_or(deg, Ok);
    let mut cert_shift = None;
    if let Some(expected) = &r.expected_shift {
        let res = (|| {
            let want = ctx.eval(expected)?;
            let cert = gorenstein_certificate(&pres, hom?, deg?)?;
            cert_shift = cert.shift;
            let found = cert.shift.map_or(format!("{:?}", cert.verdict), |s| s.to_string());
            Ok(Verdict::compare(want.to_string(), found).detail(cert.note))
        })();
        ctx.record(format!("{}: certificate shift", r.label), r.source.as_ref(), res);
        match structural_shift(&pres) {
            Err(Error::NotTensorForm(_)) => {}
            other => {
                let res = other.and_then(|s| Ok(Verdict::compare(ctx.eval(expected)?, s as i64)));
                ctx.record(format!("{}: structural shift", r.label), r.source.as_ref(), res);
            }
        }
    }
    if let Some(expected) = &r.socle_degree {
        let res = (|| {
            let soc = socle(&pres)?;
            let found = soc.iter().map(|s| s.degree.to_string()).collect::<Vec<_>>().join(", ");
            let elements = soc.iter().map(|s| s.element.clone()).collect::<Vec<_>>().join(", ");
            Ok(Verdict::compare(ctx.eval(expected)?.to_string(), found).detail(format!("socle: {elements}")))
        })();
        ctx.record(format!("{}: socle degree", r.label), r.source.as_ref(), res);
    }
    if r.functional_equation {
        let res = functional_equation_check(&pres, cert_shift);
        ctx.record(format!("{}: functional equation", r.label), r.source.as_ref(), res);
    }
    if let Some(other) = &r.series_of {
        let res = (|| {
            let bound = DEFAULT_DEG_BOUND;
            let mine = hilbert_series(&pres, bound)?;
            let theirs = hilbert_series(&ctx.presentation(other)?, bound)?;
            let pass = mine.expand(bound) == theirs.expand(bound);
            Ok(Verdict {
                pass,
                expected: theirs.to_string(),
                found: mine.to_string(),
                detail: format!("compared through level {bound}"),
                trace: Vec::new(),
            })
        })();
        ctx.record(format!("{}: Hilbert series", r.label), r.source.as_ref(), res);
    }
}

/// `(ε, e, r - e)` of a functional equation.
type FeTriple = (i32, i32, i32);

/// `p(1/t) = ε t^e p(t)` at two windows; `ε` must be `(-1)^r`, `r` the
/// Krull dimension, and `(ε, e)` must not move when the window grows.
fn functional_equation_check(pres: &Presentation, ext_shift: Option<i32>) -> Result<Verdict> {
    let span: u32 = pres.generators().iter().map(|g| g.degree.unsigned_abs()).sum();
    let small = 2 * span + 8;
    let solve = |bound: u32| -> Result<(HilbertSeries, Option<FeTriple>)> {
        let h = hilbert_series(pres, bound)?;
        let r = h.krull_dim() as i32;
        let fe = functional_equation(&h, r);
        Ok((h, fe.report().map(|rep| (rep.epsilon, rep.exponent, rep.fe_shift))))
    };
    let (h, first) = solve(small)?;
    let (_, second) = solve(2 * small)?;
    let r = h.krull_dim() as i32;
    let sign = if r % 2 == 0 { 1 } else { -1 };
    let Some((eps, e, fe_shift)) = first else {
        return Ok(Verdict {
            pass: false,
            expected: format!("ε = {sign}"),
            found: "no solution".into(),
            detail: format!("series {h}"),
            trace: Vec::new(),
        });
    };
    let discrepancy = ext_shift.map_or("n/a".to_string(), |s| (fe_shift - s).to_string());
    Ok(Verdict {
        pass: eps == sign && first == second,
        expected: format!("ε = {sign}, stable"),
        found: format!(
            "ε = {eps}, e = {e}, fe_shift = {fe_shift}, Ext shift = {}, fe_shift - shift = {discrepancy}{}",
            ext_shift.map_or("n/a".to_string(), |s| s.to_string()),
            if first == second { "" } else { ", unstable" }
        ),
        detail: format!("series {h}, r = {r}"),
        trace: Vec::new(),
    })
}

fn ss_check(ctx: &Ctx<'_>, s: &SsCheck) -> Result<Verdict> {
    let q = ctx.presentation(&s.q)?;
    let base = ctx.presentation(&s.s)?;
    let specs = parse_schedule(&expand(&s.schedule, ctx.p as i64)?)?;
    let window = ctx.eval(&s.window)? as u32;
    let run = run_schedule(&q, &base, &specs, window)?;
    let target = hilbert_series(&ctx.presentation(&s.target)?, window)?;
    let rep = convergence_check(&run.e_infinity, &ConvergenceTarget::Series(target.clone()));
    let found = match &rep.first_mismatch {
        None => "matches".to_string(),
        Some(m) => format!("degree {}: expected {}, found {}", m.degree, m.expected, m.found),
    };
    Ok(Verdict {
        pass: rep.matches,
        expected: target.to_string(),
        found,
        detail: format!("{} total degrees compared, final page E_{}", rep.checked, run.final_page.r()),
        trace: specs
            .iter()
            .map(|sp| {
                let parts: Vec<String> = sp.assignments.iter().map(|(g, t)| format!("d{}({g}) = {t}", sp.page)).collect();
                parts.join("; ")
            })
            .collect(),
    })
}

/// The derivation steps behind `node`, in solving order.
fn derivation(sol: &Solution, node: &str) -> Vec<String> {
    let mut wanted: BTreeSet<String> = BTreeSet::new();
    let mut stack = vec![node.to_string()];
    let by_var: BTreeMap<&str, _> = sol.trace.iter().map(|t| (t.variable.as_str(), t)).collect();
    while let Some(v) = stack.pop() {
        if let Some(step) = by_var.get(v.as_str()) {
            if wanted.insert(v.clone()) {
                stack.extend(step.from.iter().cloned());
            }
        }
    }
    sol.trace
        .iter()
        .filter(|t| wanted.contains(&t.variable))
        .map(|t| format!("{} = {}  from `{}` ({})", t.variable, t.value, t.equation, t.source))
        .collect()
}

fn ledger_checks(ctx: &mut Ctx<'_>, l: &LedgerCheck) {
    let parsed = expand(&l.text, ctx.p as i64).and_then(|t| Ledger::parse(&t));
    let ledger = match parsed {
        Ok(l) => l,
        Err(e) => return ctx.record("ledger: parse".into(), l.source.as_ref(), Err(e)),
    };
    let sol = solve_report(&ledger);
    let conflicts: Vec<String> = sol
        .conflicts
        .iter()
        .map(|c| format!("`{}` ({}) off by {}", c.equation, c.source, c.residual))
        .collect();
    ctx.record(
        "ledger: consistent".into(),
        l.source.as_ref(),
        Ok(Verdict {
            pass: conflicts.is_empty(),
            expected: "no conflicts".into(),
            found: format!("{} conflicts", conflicts.len()),
            detail: String::new(),
            trace: conflicts,
        }),
    );
    for (key, value) in &l.expect {
        let res = (|| {
            let node = expand(key, ctx.p as i64)?;
            let want = ctx.eval(value)?;
            let found = sol.shift(&node).map_or("unresolved".to_string(), |v| v.to_string());
            let mut v = Verdict::compare(want.to_string(), found);
            v.trace = derivation(&sol, &node);
            Ok((node, v))
        })();
        let (name, res) = match res {
            Ok((node, v)) => (node, Ok(v)),
            Err(e) => (key.clone(), Err(e)),
        };
        ctx.record(format!("ledger: shift({name})"), l.source.as_ref(), res);
    }
}

fn hh_checks(ctx: &mut Ctx<'_>, h: &HhCheck) {
    let res = (|| {
        let pres = ctx.presentation(&h.presentation)?;
        let a = ctx.eval(&h.shift)? as i32;
        let rep = dwyer_miller_check(&pres, a, h.window)?;
        let found = match (&rep.holds, &rep.first_mismatch) {
            (Some(true), _) => "holds".to_string(),
            (Some(false), Some(m)) => format!(
                "{} coefficients, degree {}: HH^ = {}, HH_ = {}",
                m.coefficients, m.degree, m.cohomology, m.homology
            ),
            _ => format!("not applicable: {}", rep.reason.clone().unwrap_or_default()),
        };
        Ok(Verdict {
            pass: rep.holds == Some(true),
            expected: "holds".into(),
            found,
            detail: format!("|n| <= {}, projective dimension {:?}", h.window, rep.projective_dimension),
            trace: Vec::new(),
        })
    })();
    ctx.record(format!("{}: HH duality", h.label), h.source.as_ref(), res);
    if let Some(pred) = &h.prediction {
        let res = (|| {
            let pres = ctx.presentation(&h.presentation)?;
            let series = thh_prediction(&pres, h.window)?;
            let target = hilbert_series(&ctx.presentation(pred)?, h.window)?;
            Ok(Verdict {
                pass: series.expand(h.window) == target.expand(h.window),
                expected: target.to_string(),
                found: series.to_string(),
                detail: format!("compared through degree {}", h.window),
                trace: Vec::new(),
            })
        })();
        ctx.record(format!("{}: THH prediction", h.label), h.source.as_ref(), res);
    }
}
