use super::*;

#[test]
fn builtin_corpus_parses() {
    let entries = builtin().unwrap();
    assert_eq!(entries.len(), FILES.len());
    assert!(entries.windows(2).all(|w| w[0].name < w[1].name));
    for e in &entries {
        assert!(!e.source.is_empty(), "{}", e.name);
    }
}

#[test]
fn builtin_corpus_verifies() {
    let entries = builtin().unwrap();
    let report = corpus_verify(&entries, None, Windows::default());
    for r in &report.results {
        println!(
            "{:?} {} p={:?} {}: expected {:?} found {:?} {}",
            r.outcome, r.entry, r.prime, r.check, r.expected, r.found, r.detail
        );
    }
    let failures: Vec<_> = report.failures().map(|r| format!("{} {}", r.entry, r.check)).collect();
    assert!(failures.is_empty(), "{failures:?}");
    assert!(report.ok);
}
