use super::*;

fn poly(p: u32, d: i32) -> Presentation {
    Presentation::builder(p).poly("x", d).build().unwrap()
}

/// Expansion of `num / prod (1 - t^den)` as a total-degree table.
fn series_table(num: &[(i32, i64)], den: &[u32], up_to: i32) -> BTreeMap<i32, usize> {
    let mut n = LaurentPoly::zero();
    for &(e, c) in num {
        n = n.add(&LaurentPoly::monomial(e, c));
    }
    RationalFunction::new(n, den.to_vec())
        .expand(0, up_to)
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c != 0)
        .map(|(i, c)| (i as i32, c as usize))
        .collect()
}

fn truncate(m: BTreeMap<i32, usize>, lo: i32, hi: i32) -> BTreeMap<i32, usize> {
    m.into_iter().filter(|(n, _)| (lo..=hi).contains(n)).collect()
}

#[test]
fn polynomial_ring_homology() {
    for d in [2, 4] {
        let window = 24;
        let hh = hh_homology(&poly(3, d), Coefficients::Ring, window).unwrap();
        // k[x] (x) Lambda(beta), |beta| = d + 1; beta lives in bar degree 1.
        for (&(n, t), &dim) in &hh {
            assert_eq!(dim, 1);
            assert!(n <= 1);
            assert_eq!(t % d, if n == 0 { 0 } else { d % d });
        }
        let totals = truncate(homology_totals(&hh), 0, window as i32);
        let expected = series_table(&[(0, 1), (d + 1, 1)], &[d as u32], window as i32);
        assert_eq!(totals, expected, "d = {d}");
    }
}

#[test]
fn ground_field() {
    let k = Presentation::builder(5).build().unwrap();
    for c in [Coefficients::Ring, Coefficients::Field] {
        let h = hh_homology(&k, c, 10).unwrap();
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1)]);
        let hc = hh_cohomology(&k, c, 10, 2).unwrap();
        assert_eq!(hc.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    }
}

#[test]
fn exterior_divided_power_pattern() {
    let p = Presentation::builder(3).ext("x", 3).build().unwrap();
    let h = hh_homology(&p, Coefficients::Field, 24).unwrap();
    let expected: BigradedDimensions = (0..=8).map(|n| ((n, 3 * n), 1)).collect();
    assert_eq!(h, expected);
    assert_eq!(hh_homology_via_enveloping(&p, Coefficients::Field, 24).unwrap(), expected);
    let totals = homology_totals(&h);
    assert!(totals.keys().all(|n| n % 4 == 0));
}

#[test]
fn boundary_squares_to_zero() {
    let cases = [
        Presentation::builder(3).ext("a", 3).poly("x", 2).build().unwrap(),
        Presentation::builder(3).poly("x", 2).relation("x^3").build().unwrap(),
        Presentation::builder(5).ext("a", 1).ext("b", 3).build().unwrap(),
        Presentation::builder(2).ext("a", 3).poly("y", 2).build().unwrap(),
    ];
    for p in &cases {
        for c in [Coefficients::Ring, Coefficients::Field] {
            assert!(check_bar_d_squared(p, c, 12).unwrap(), "{}", p.to_text());
        }
    }
}

#[test]
fn polynomial_ring_cohomology() {
    for d in [2, 4] {
        let window = 16;
        let hc = hh_cohomology(&poly(3, d), Coefficients::Ring, window, 2).unwrap();
        // k[x] (x) Lambda(alpha), |alpha| = -d - 1.
        let totals = cohomology_totals(&hc);
        for n in -(window as i32)..=window as i32 {
            let expected = usize::from(n >= 0 && n % d == 0) + usize::from(n + d + 1 >= 0 && (n + d + 1) % d == 0);
            assert_eq!(totals.get(&n).copied().unwrap_or(0), expected, "d = {d}, n = {n}");
        }
        assert!(hc.keys().all(|&(bar, _)| bar <= 1));
    }
}

#[test]
fn truncated_square_cohomology_matches_periodic_resolution() {
    // R = k[x]/(x^2), |x| = 2, p = 3. The resolution of R over R^e is
    // 2-periodic with maps x - y and x + y, giving classes in
    // (0,0), (0,2), (odd n, 2 - 2n), (even n >= 2, -2n).
    let p = Presentation::builder(3).poly("x", 2).relation("x^2").build().unwrap();
    let hc = hh_cohomology(&p, Coefficients::Ring, 12, 4).unwrap();
    let mut expected = BigradedDimensions::new();
    expected.insert((0, 0), 1);
    expected.insert((0, 2), 1);
    for n in 1..=4i32 {
        let t = if n % 2 == 1 { 2 - 2 * n } else { -2 * n };
        expected.insert((n, t), 1);
    }
    assert_eq!(hc, expected);
}

#[test]
fn bar_complex_agrees_with_enveloping_resolution() {
    let cases = [
        poly(3, 2),
        Presentation::builder(3).poly("x", 2).relation("x^3").build().unwrap(),
        Presentation::builder(2).ext("a", 3).poly("y", 4).build().unwrap(),
        Presentation::builder(5).ext("a", 3).ext("b", 5).build().unwrap(),
    ];
    for p in &cases {
        assert_eq!(
            hh_homology(p, Coefficients::Field, 16).unwrap(),
            hh_homology_via_enveloping(p, Coefficients::Field, 16).unwrap(),
            "{}",
            p.to_text()
        );
        assert_eq!(
            hh_homology_bar(p, Coefficients::Ring, 12).unwrap(),
            hh_homology_via_enveloping(p, Coefficients::Ring, 12).unwrap(),
            "{}",
            p.to_text()
        );
    }
}

#[test]
fn dwyer_miller_for_polynomial_rings() {
    for d in [2, 4] {
        let rep = dwyer_miller_check(&poly(3, d), -d - 1, 30).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.holds, Some(true), "{rep:?}");
        assert_eq!(rep.projective_dimension, Some(1));
    }
    let k = Presentation::builder(3).build().unwrap();
    assert_eq!(dwyer_miller_check(&k, 0, 10).unwrap().holds, Some(true));
}

#[test]
fn dwyer_miller_not_applicable() {
    let p = Presentation::builder(3)
        .poly("x", 2)
        .poly("y", 2)
        .relation("x^2")
        .relation("x*y")
        .relation("y^2")
        .build()
        .unwrap();
    let rep = dwyer_miller_check(&p, 0, 10).unwrap();
    assert!(!rep.applicable);
    assert_eq!(rep.holds, None);
}

#[test]
fn thh_predictions() {
    let rf = |num: &[(i32, i64)], den: &[u32]| {
        let mut n = LaurentPoly::zero();
        for &(e, c) in num {
            n = n.add(&LaurentPoly::monomial(e, c));
        }
        RationalFunction::new(n, den.to_vec()).expand(0, 30)
    };
    let k = Presentation::builder(3).build().unwrap();
    assert_eq!(thh_prediction(&k, 30).unwrap().series.expand(0, 30), rf(&[(0, 1)], &[2]));
    let ext = Presentation::builder(3).ext("x", 1).build().unwrap();
    assert_eq!(thh_prediction(&ext, 30).unwrap().series.expand(0, 30), rf(&[(0, 1)], &[2, 2]));
    let sq = Presentation::builder(3).poly("x", 2).relation("x^2").build().unwrap();
    assert_eq!(thh_prediction(&sq, 40).unwrap().series.expand(0, 30), rf(&[(0, 1), (3, 1)], &[2, 6]));
}
