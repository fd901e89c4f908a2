use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::json;

use gordual::cache::ResolutionCache;
use gordual::corpus::{builtin, corpus_verify, full_ledger, Windows};
use gordual::duality::functional_equation;
use gordual::hochschild::{
    cohomology_totals, dwyer_miller_check, hh_cohomology, hh_homology, homology_totals, thh_prediction, Coefficients,
};
use gordual::koszul::{build_koszul, is_regular_sequence, koszul_homology};
use gordual::report::{
    corpus_markdown, dim_rows, dims_markdown, envelope, functional_equation_markdown, totals_markdown,
};
use gordual::resolution::{certificate_from_resolution, ext_dimensions};
use gordual::shift::{solve_report, Ledger};
use gordual::sseq::{convergence_check, parse_schedule, run_schedule, ConvergenceTarget};
use gordual::{
    gorenstein_certificate, hilbert_series, minimal_resolution, socle, structural_shift, Algebra, FreeResolution,
    Presentation,
};

use crate::{Coeffs, Command, CorpusAction, Format, Global};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<Presentation> {
    Presentation::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// JSON envelope or the given markdown.
fn emit<T: Serialize>(g: &Global, kind: &str, data: T, markdown: impl FnOnce() -> String) -> Result<()> {
    match g.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&envelope(kind, data))?),
        Format::Md | Format::Chart => print!("{}", markdown()),
    }
    Ok(())
}

fn resolve(g: &Global, pres: &Presentation) -> Result<FreeResolution> {
    Ok(match ResolutionCache::from_env(g.cache_dir.as_deref()) {
        Some(cache) => cache.resolve(pres, g.hom_bound, g.max_degree)?,
        None => minimal_resolution(pres, g.hom_bound, g.max_degree)?,
    })
}

/// Returns `false` when the command ran but its check failed.
pub fn run(g: &Global, cmd: Command) -> Result<bool> {
    match cmd {
        Command::Hilbert { presentation } => hilbert(g, &load(&presentation)?),
        Command::Gorenstein { presentation } => gorenstein(g, &load(&presentation)?),
        Command::Socle { presentation } => {
            let soc = socle(&load(&presentation)?)?;
            emit(g, "socle", &soc, || {
                let mut s = String::from("| degree | element |\n|---|---|\n");
                for e in &soc {
                    s.push_str(&format!("| {} | {} |\n", e.degree, e.element));
                }
                s
            })?;
            Ok(true)
        }
        Command::Ext { presentation } => ext(g, &load(&presentation)?),
        Command::Koszul { presentation, elements } => koszul(g, &load(&presentation)?, &elements),
        Command::Ss { q, s, schedule, target } => ss(g, &q, &s, schedule.as_deref(), target.as_deref()),
        Command::Shift { ledger } => {
            let ledger = Ledger::parse(&read(&ledger)?)?;
            let sol = solve_report(&ledger);
            emit(g, "shift", &sol, || sol.to_markdown())?;
            Ok(sol.is_consistent())
        }
        Command::Hh { presentation, coeffs, cohomology, max_bar, duality } => {
            hh(g, &load(&presentation)?, coeffs, cohomology, max_bar, duality)
        }
        Command::Predict { presentation } => {
            let h = thh_prediction(&load(&presentation)?, g.max_degree)?;
            let coeffs = h.expand(g.max_degree);
            emit(g, "predict", json!({ "series": h, "dims": coeffs }), || {
                format!("THH(R; k) series: {h}\n\ndims: {coeffs:?}\n")
            })?;
            Ok(true)
        }
        Command::Corpus { action } => corpus(g, action),
    }
}

fn hilbert(g: &Global, pres: &Presentation) -> Result<bool> {
    let h = hilbert_series(pres, g.max_degree)?;
    let fe = functional_equation(&h, h.krull_dim() as i32);
    let dims = h.expand(g.max_degree.min(24));
    emit(g, "hilbert", json!({ "series": h, "functional_equation": fe, "dims": dims }), || {
        format!("{}\nfirst dimensions: {dims:?}\n", functional_equation_markdown(&h, &fe, None))
    })?;
    Ok(true)
}

fn gorenstein(g: &Global, pres: &Presentation) -> Result<bool> {
    let alg = Algebra::new(pres, g.max_degree);
    let cert = if alg.top_level().is_some() {
        gorenstein_certificate(pres, g.hom_bound, g.max_degree)?
    } else {
        certificate_from_resolution(&resolve(g, pres)?)?
    };
    let structural = structural_shift(pres).map_err(|e| e.to_string());
    emit(g, "gorenstein", json!({ "certificate": cert, "structural_shift": structural }), || {
        format!(
            "| verdict | shift | structural shift | note |\n|---|---|---|---|\n| {:?} | {} | {} | {} |\n",
            cert.verdict,
            cert.shift.map_or("-".into(), |s| s.to_string()),
            structural.as_ref().map_or_else(|e| format!("n/a ({e})"), |s| s.to_string()),
            cert.note
        )
    })?;
    Ok(true)
}

fn ext(g: &Global, pres: &Presentation) -> Result<bool> {
    let res = resolve(g, pres)?;
    let table = ext_dimensions(&res)?;
    let tor = res.tor();
    let reliable: BTreeMap<i32, Option<(i32, i32)>> = table.reliable.clone();
    emit(
        g,
        "ext",
        json!({ "ext": dim_rows(&table.dims), "reliable_rows": reliable, "tor": dim_rows(&tor) }),
        || {
            format!(
                "Ext^(s,t)(k, A):\n\n{}\nTor_(s,t)(k, k):\n\n{}",
                dims_markdown(&table.dims, "s", "t"),
                dims_markdown(&tor, "s", "t")
            )
        },
    )?;
    Ok(true)
}

fn koszul(g: &Global, pres: &Presentation, elements: &[String]) -> Result<bool> {
    let refs: Vec<&str> = elements.iter().map(String::as_str).collect();
    let cx = build_koszul(Arc::new(Algebra::new(pres, g.max_degree)), &refs)?;
    let h = koszul_homology(&cx, g.max_degree)?;
    let reg = is_regular_sequence(pres, &refs, g.max_degree)?;
    emit(g, "koszul", json!({ "homology": dim_rows(&h), "regularity": reg }), || {
        format!(
            "{}\nregular within degree {}: {}{}\n",
            dims_markdown(&h, "s", "degree"),
            reg.degree_bound,
            reg.regular,
            reg.witness.map_or(String::new(), |(s, t, d)| format!(" (H_{s} has dimension {d} in degree {t})"))
        )
    })?;
    Ok(true)
}

fn ss(g: &Global, q: &Path, s: &Path, schedule: Option<&Path>, target: Option<&Path>) -> Result<bool> {
    let specs = match schedule {
        Some(path) => parse_schedule(&read(path)?)?,
        None => Vec::new(),
    };
    let run = run_schedule(&load(q)?, &load(s)?, &specs, g.max_degree)?;
    let convergence = match target {
        Some(path) => {
            let h = hilbert_series(&load(path)?, g.max_degree)?;
            Some(convergence_check(&run.e_infinity, &ConvergenceTarget::Series(h)))
        }
        None => None,
    };
    match g.format {
        Format::Chart => print!("{}", run.final_page.chart()),
        _ => emit(
            g,
            "ss",
            json!({ "history": run.history, "e_infinity": run.e_infinity, "convergence": convergence }),
            || {
                let mut s = format!("E_{} totals:\n\n{}", run.final_page.r(), totals_markdown(&run.e_infinity));
                if let Some(c) = &convergence {
                    s.push_str(&format!("\nconverges to target: {} ({} degrees)\n", c.matches, c.checked));
                    if let Some(m) = &c.first_mismatch {
                        s.push_str(&format!("first mismatch in degree {}: expected {}, found {}\n", m.degree, m.expected, m.found));
                    }
                }
                s
            },
        )?,
    }
    Ok(convergence.is_none_or(|c| c.matches))
}

fn hh(g: &Global, pres: &Presentation, coeffs: Coeffs, cohomology: bool, max_bar: u32, duality: Option<i32>) -> Result<bool> {
    if let Some(a) = duality {
        let rep = dwyer_miller_check(pres, a, g.max_degree)?;
        emit(g, "hh-duality", &rep, || {
            let mut s = format!(
                "applicable: {}\nshift: {}\nholds: {}\ndegrees: {}..={}\n",
                rep.applicable,
                rep.shift,
                rep.holds.map_or("n/a".into(), |h| h.to_string()),
                rep.degrees.0,
                rep.degrees.1
            );
            if let Some(r) = &rep.reason {
                s.push_str(&format!("reason: {r}\n"));
            }
            if let Some(m) = &rep.first_mismatch {
                s.push_str(&format!(
                    "first mismatch ({}), degree {}: HH^ {} vs HH_ {}\n",
                    m.coefficients, m.degree, m.cohomology, m.homology
                ));
            }
            s
        })?;
        return Ok(rep.holds != Some(false));
    }
    let c = match coeffs {
        Coeffs::Ring => Coefficients::Ring,
        Coeffs::Field => Coefficients::Field,
    };
    let (dims, totals, kind) = if cohomology {
        let d = hh_cohomology(pres, c, g.max_degree, max_bar)?;
        let t = cohomology_totals(&d);
        (d, t, "hh-cohomology")
    } else {
        let d = hh_homology(pres, c, g.max_degree)?;
        let t = homology_totals(&d);
        (d, t, "hh-homology")
    };
    emit(g, kind, json!({ "dims": dim_rows(&dims), "totals": totals }), || {
        format!(
            "{}\ntotal degrees:\n\n{}",
            dims_markdown(&dims, "n", "internal degree"),
            totals_markdown(&totals)
        )
    })?;
    Ok(true)
}

fn corpus(g: &Global, action: CorpusAction) -> Result<bool> {
    let entries = builtin()?;
    match action {
        CorpusAction::Verify { filter, override_windows } => {
            let windows = if override_windows {
                Windows { hom_bound: Some(g.hom_bound), deg_bound: Some(g.max_degree) }
            } else {
                Windows::default()
            };
            let report = corpus_verify(&entries, filter.as_deref(), windows);
            emit(g, "corpus", &report, || corpus_markdown(&report))?;
            Ok(report.ok)
        }
        CorpusAction::List => {
            let rows: Vec<_> = entries
                .iter()
                .map(|e| json!({ "name": e.name, "status": e.status, "primes": e.primes, "source": e.source }))
                .collect();
            emit(g, "corpus-list", &rows, || {
                let mut s = String::from("| entry | status | primes | source |\n|---|---|---|---|\n");
                for e in &entries {
                    s.push_str(&format!("| {} | {:?} | {:?} | {} |\n", e.name, e.status, e.primes, e.source));
                }
                s
            })?;
            Ok(true)
        }
        CorpusAction::Ledger => {
            let ledger = full_ledger(&entries)?;
            let sol = solve_report(&ledger);
            emit(g, "corpus-ledger", json!({ "ledger": ledger.to_text(), "solution": sol }), || {
                format!("{}\n{}", ledger.to_text(), sol.to_markdown())
            })?;
            Ok(sol.is_consistent())
        }
    }
}
