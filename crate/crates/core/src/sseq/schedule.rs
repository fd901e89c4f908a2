//! Schedules of differentials, Frobenius survival bounds, and convergence
//! audits against a known abutment.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{apply_and_turn, build_e2, BigradedPage, DifferentialSpec, PageSnapshot};
use crate::error::{Error, Result};
use crate::graded::{Algebra, HilbertSeries, Presentation};

/// Parse lines of the form `d4(mu) = x` (blank lines and `#` comments
/// ignored). Specs are returned grouped by page, in increasing order.
pub fn parse_schedule(text: &str) -> Result<Vec<DifferentialSpec>> {
    let mut pages: BTreeMap<u32, DifferentialSpec> = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::parse(lineno + 1, msg);
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| err("expected `d<r>(<generator>) = <target>`"))?;
        let lhs = lhs.trim();
        let rest = lhs.strip_prefix('d').ok_or_else(|| err("left side must start with `d`"))?;
        let (r, gen) = rest.split_once('(').ok_or_else(|| err("missing `(`"))?;
        let gen = gen.strip_suffix(')').ok_or_else(|| err("missing `)`"))?.trim();
        let r: u32 = r
            .trim()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| err("page number must be an integer"))?;
        if r < 2 {
            return Err(err("pages start at 2"));
        }
        pages
            .entry(r)
            .or_insert_with(|| DifferentialSpec::new(r))
            .assignments
            .push((gen.to_string(), rhs.trim().to_string()));
    }
    Ok(pages.into_values().collect())
}

/// Result of running a schedule: a snapshot of every page and `E^infinity`
/// total dimensions.
#[derive(Clone, Debug)]
pub struct ScheduleRun {
    pub history: Vec<PageSnapshot>,
    pub final_page: BigradedPage,
    /// Total degree to dimension, reliable degrees only.
    pub e_infinity: BTreeMap<i32, usize>,
}

/// Apply the specs in order. Pages without a spec carry no differential.
pub fn run_schedule(
    q: &Presentation,
    s: &Presentation,
    specs: &[DifferentialSpec],
    window: u32,
) -> Result<ScheduleRun> {
    if specs.windows(2).any(|w| w[0].page >= w[1].page) {
        return Err(Error::BidegreeViolation("schedule pages must be strictly increasing".into()));
    }
    let mut page = build_e2(q, s, window)?;
    let mut history = Vec::new();
    for spec in specs {
        page = page.advance_to(spec.page)?;
        history.push(page.snapshot());
        page = apply_and_turn(&page, spec)?;
    }
    history.push(page.snapshot());
    let e_infinity = page.total_dims();
    Ok(ScheduleRun {
        history,
        final_page: page,
        e_infinity,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusReport {
    pub generator: String,
    pub degree: i32,
    /// Number of rows `t` in which `pi_*(S)` can be nonzero.
    pub rows: u32,
    /// `x^exponent` survives to `E^infinity`.
    pub exponent: u64,
    pub derivation: String,
}

/// Smallest and largest degree with `pi_*(S)` nonzero, if `S` is finite.
pub fn s_degree_range(s: &Presentation) -> Option<(i32, i32)> {
    for bound in [32u32, 128, 512] {
        let alg = Algebra::new(s, bound);
        if let Some(top) = alg.top_level() {
            let sign = s.orientation().sign();
            let (a, b) = (0, sign * top as i32);
            return Some((a.min(b), a.max(b)));
        }
    }
    None
}

/// For every even generator `x` on the `s`-axis: a differential leaving
/// row 0 lands in row `r - 1`, so only `d_2 .. d_N` can be nonzero on it
/// when `S` has `N` rows. In characteristic `p`, `d_r(x^p) = p x^{p-1} d_r(x)
/// = 0`, so each page can kill at most one `p`-power step.
pub fn frobenius_survival(page: &BigradedPage, s_range: (i32, i32)) -> Result<Vec<FrobeniusReport>> {
    let p = page.algebra().field().characteristic() as u64;
    if p == 0 {
        return Err(Error::CharacteristicZero);
    }
    let rows = (s_range.1 - s_range.0).unsigned_abs() + 1;
    let steps = rows - 1;
    let exponent = p.pow(steps);
    Ok(page
        .q_presentation()
        .generators()
        .iter()
        .filter(|g| g.degree % 2 == 0)
        .map(|g| FrobeniusReport {
            generator: g.name.clone(),
            degree: g.degree,
            rows,
            exponent,
            derivation: format!(
                "{rows} row(s): pages 2..={} can act; d_r({n}^p) = p {n}^(p-1) d_r({n}) = 0, \
                 so {n}^({p}^{steps}) survives",
                rows,
                n = g.name
            ),
        })
        .collect())
}

/// What `E^infinity` should add up to.
#[derive(Clone, Debug)]
pub enum ConvergenceTarget {
    Series(HilbertSeries),
    /// Signed total degree to dimension; missing degrees are zero.
    Dims(BTreeMap<i32, usize>),
}

impl ConvergenceTarget {
    fn dim(&self, degree: i32) -> i64 {
        match self {
            ConvergenceTarget::Series(h) => h.dim(degree),
            ConvergenceTarget::Dims(d) => d.get(&degree).copied().unwrap_or(0) as i64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub degree: i32,
    pub expected: i64,
    pub found: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub matches: bool,
    pub first_mismatch: Option<Mismatch>,
    /// Number of total degrees compared.
    pub checked: usize,
}

/// Compare `sum_{s+t=n} dim E^infinity_{s,t}` with the target for every
/// degree in `e_infinity` (which holds reliable degrees only).
pub fn convergence_check(e_infinity: &BTreeMap<i32, usize>, target: &ConvergenceTarget) -> ConvergenceReport {
    let mut degrees: Vec<i32> = e_infinity.keys().copied().collect();
    degrees.sort_by_key(|n| n.abs());
    let first_mismatch = degrees.iter().find_map(|&n| {
        let found = e_infinity[&n];
        let expected = target.dim(n);
        (expected != found as i64).then_some(Mismatch {
            degree: n,
            expected,
            found,
        })
    });
    ConvergenceReport {
        matches: first_mismatch.is_none(),
        first_mismatch,
        checked: degrees.len(),
    }
}
