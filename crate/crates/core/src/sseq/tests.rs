use std::collections::BTreeMap;

use super::*;
use crate::graded::{HilbertSeries, LaurentPoly, RationalFunction};

fn thh_z(p: u32) -> (Presentation, Presentation) {
    let q = Presentation::builder(p).poly("mu", 2).build().unwrap();
    let s = Presentation::builder(p).ext("x", 1).build().unwrap();
    (q, s)
}

/// `(1 + t^a)(1 + t^b) / (1 - t^d)` expanded by total degree.
fn expected(ext: &[i32], d: u32, up_to: i32) -> BTreeMap<i32, usize> {
    let mut num = LaurentPoly::one();
    for &e in ext {
        num = num.mul(&LaurentPoly::binomial(e, 1));
    }
    let rf = RationalFunction::new(num, vec![d]);
    rf.expand(0, up_to)
        .into_iter()
        .enumerate()
        .map(|(n, c)| (n as i32, c as usize))
        .collect()
}

#[test]
fn e2_of_circle_chains() {
    let (q, s) = thh_z(3);
    let page = build_e2(&q, &s, 12).unwrap();
    let dims = page.dims();
    for i in 0..=6 {
        assert_eq!(dims.get(&(2 * i, 0)), Some(&1));
        if 2 * i < 12 {
            assert_eq!(dims.get(&(2 * i, 1)), Some(&1));
        }
    }
    assert_eq!(dims.values().sum::<usize>(), 13);
}

#[test]
fn trivial_q_puts_s_on_the_t_axis() {
    let q = Presentation::builder(5).build().unwrap();
    let s = Presentation::builder(5).ext("a", 3).poly("b", 4).build().unwrap();
    let page = build_e2(&q, &s, 20).unwrap();
    let alg = Algebra::new(&s, 20);
    for (&(ss, t), &d) in &page.dims() {
        assert_eq!(ss, 0);
        assert_eq!(d, alg.dim(t as u32));
    }
}

#[test]
fn thh_of_integers_collapses() {
    for p in [2u32, 3, 5] {
        let (q, s) = thh_z(p);
        let spec = DifferentialSpec::new(2).set("mu", "x");
        let run = run_schedule(&q, &s, &[spec], 40).unwrap();
        let two_p = 2 * p as i32;
        assert_eq!(run.e_infinity, expected(&[two_p - 1], 2 * p, 40), "p = {p}");
    }
}

#[test]
fn surviving_labels_after_first_page() {
    let (q, s) = thh_z(3);
    let run = run_schedule(&q, &s, &[DifferentialSpec::new(2).set("mu", "x")], 12).unwrap();
    let e3 = run.history.last().unwrap();
    assert_eq!(e3.r, 3);
    let labels: Vec<(i32, i32, Vec<String>)> = e3
        .entries
        .iter()
        .filter(|e| e.reliable)
        .map(|e| (e.s, e.t, e.labels.clone()))
        .collect();
    assert!(labels.contains(&(6, 0, vec!["mu^3".into()])));
    assert!(labels.contains(&(4, 1, vec!["mu^2*x".into()])));
    assert!(!labels.iter().any(|(s, t, _)| (*s, *t) == (2, 0)));
}

#[test]
fn zero_differential_is_identity() {
    let (q, s) = thh_z(5);
    let page = build_e2(&q, &s, 20).unwrap();
    let next = apply_and_turn(&page, &DifferentialSpec::new(2)).unwrap();
    assert_eq!(next.r(), 3);
    assert_eq!(next.dims(), page.dims());
}

#[test]
fn ku_at_two_both_outcomes() {
    let q = Presentation::builder(2).poly("mu", 4).ext("l", 3).build().unwrap();
    let s = Presentation::builder(2).ext("x", 3).build().unwrap();
    let zero = run_schedule(&q, &s, &[DifferentialSpec::new(4).set("mu", "0")], 40).unwrap();
    assert_eq!(zero.e_infinity, expected(&[3, 3], 4, 40));
    let nonzero = run_schedule(&q, &s, &[DifferentialSpec::new(4).set("mu", "x")], 40).unwrap();
    assert_eq!(nonzero.e_infinity, expected(&[3, 7], 8, 40));
}

#[test]
fn bidegree_checked() {
    let (q, s) = thh_z(3);
    let page = build_e2(&q, &s, 10).unwrap();
    let bad = DifferentialSpec::new(2).set("mu", "mu");
    assert!(matches!(apply_and_turn(&page, &bad), Err(Error::BidegreeViolation(_))));
    let page3 = page.advance_to(3).unwrap();
    let wrong_page = DifferentialSpec::new(3).set("mu", "x");
    assert!(matches!(apply_and_turn(&page3, &wrong_page), Err(Error::BidegreeViolation(_))));
    assert!(matches!(
        apply_and_turn(&page, &DifferentialSpec::new(3)),
        Err(Error::BidegreeViolation(_))
    ));
}

#[test]
fn leibniz_violation_on_a_relation() {
    // a^2 = 0 but D(a^2) = 2 a x would be nonzero.
    let q = Presentation::builder(3).poly("a", 2).relation("a^2").build().unwrap();
    let s = Presentation::builder(3).ext("x", 1).build().unwrap();
    let page = build_e2(&q, &s, 8).unwrap();
    let spec = DifferentialSpec::new(2).set("a", "x");
    assert!(matches!(apply_and_turn(&page, &spec), Err(Error::LeibnizInconsistent(_))));
}

#[test]
fn d_squared_violation() {
    // Over F_2 with x polynomial: D^2(b) = D(a x) = x^2 != 0.
    let q = Presentation::builder(2).poly("a", 2).poly("b", 4).build().unwrap();
    let s = Presentation::builder(2).poly("x", 1).build().unwrap();
    let page = build_e2(&q, &s, 8).unwrap();
    let spec = DifferentialSpec::new(2).set("a", "x").set("b", "a*x");
    assert!(matches!(apply_and_turn(&page, &spec), Err(Error::LeibnizInconsistent(_))));
}

#[test]
fn rank_bookkeeping_and_monotonicity() {
    let (q, s) = thh_z(3);
    let page = build_e2(&q, &s, 20).unwrap();
    let spec = DifferentialSpec::new(2).set("mu", "x");
    let ranks = page.differential_ranks(&spec).unwrap();
    let next = apply_and_turn(&page, &spec).unwrap();
    let before = page.dims();
    let after = next.dims();
    for (&(s, t), &d) in &before {
        let out = ranks.get(&(s, t)).copied().unwrap_or(0);
        let inc = ranks.get(&(s + 2, t - 1)).copied().unwrap_or(0);
        let now = after.get(&(s, t)).copied().unwrap_or(0);
        assert_eq!(now, d - out - inc, "({s}, {t})");
        assert!(now <= d);
    }
}

#[test]
fn frobenius_powers_have_zero_differential() {
    for p in [2u32, 3, 5] {
        let (q, s) = thh_z(p);
        let page = build_e2(&q, &s, 4 * p).unwrap();
        let spec = DifferentialSpec::new(2).set("mu", "x");
        let mu_p = page.algebra().parse_element(&format!("mu^{p}")).unwrap();
        let d = page.derivative(&spec, mu_p.level, &mu_p.coords).unwrap();
        assert!(d.is_zero());
        let rep = frobenius_survival(&page, (0, 1)).unwrap();
        assert_eq!(rep.len(), 1);
        assert_eq!(rep[0].exponent, p as u64);
    }
}

#[test]
fn frobenius_exponent_rules() {
    let (q, s) = thh_z(2);
    let page = build_e2(&q, &s, 4).unwrap();
    assert_eq!(frobenius_survival(&page, (0, 0)).unwrap()[0].exponent, 1);
    assert_eq!(frobenius_survival(&page, (0, 2)).unwrap()[0].exponent, 4);
    assert_eq!(s_degree_range(&s), Some((0, 1)));
    assert_eq!(s_degree_range(&q), None);
}

#[test]
fn convergence_reports_first_mismatch() {
    let p = 3;
    let (q, s) = thh_z(p);
    let run = run_schedule(&q, &s, &[DifferentialSpec::new(2).set("mu", "x")], 30).unwrap();
    let num = LaurentPoly::binomial(5, 1);
    let good = HilbertSeries::connective(RationalFunction::new(num, vec![6]));
    let ok = convergence_check(&run.e_infinity, &ConvergenceTarget::Series(good));
    assert!(ok.matches);
    assert_eq!(ok.checked, 31);
    let mut wrong = expected(&[5], 6, 30);
    *wrong.get_mut(&6).unwrap() += 1;
    let bad = convergence_check(&run.e_infinity, &ConvergenceTarget::Dims(wrong));
    assert_eq!(bad.first_mismatch.map(|m| m.degree), Some(6));
    let empty = convergence_check(&BTreeMap::new(), &ConvergenceTarget::Dims(BTreeMap::new()));
    assert!(empty.matches);
}

#[test]
fn coconnective_mirror() {
    let q = Presentation::builder(3).coconnective().poly("c", -2).build().unwrap();
    let s = Presentation::builder(3).coconnective().ext("y", -1).build().unwrap();
    let run = run_schedule(&q, &s, &[DifferentialSpec::new(2).set("c", "y")], 24).unwrap();
    let mirrored: BTreeMap<i32, usize> = expected(&[5], 6, 24).into_iter().map(|(n, d)| (-n, d)).collect();
    assert_eq!(run.e_infinity, mirrored);
    assert!(run.final_page.dims().keys().all(|&(s, t)| s <= 0 && t <= 0));
}

#[test]
fn schedule_text() {
    let specs = parse_schedule("# lu\nd6(mu) = x\n\nd2(l) = 0\nd6(l) = 0\n").unwrap();
    assert_eq!(specs.len(), 2);
    assert_eq!(specs[0].page, 2);
    assert_eq!(specs[1].assignments.len(), 2);
    assert!(matches!(parse_schedule("d1(mu) = x"), Err(Error::Parse { .. })));
    assert!(matches!(parse_schedule("mu -> x"), Err(Error::Parse { .. })));
}

#[test]
fn chart_shape() {
    let (q, s) = thh_z(3);
    let page = build_e2(&q, &s, 6).unwrap();
    let chart = page.chart();
    assert!(chart.starts_with("E_2"));
    assert_eq!(chart.lines().count(), 5);
}
