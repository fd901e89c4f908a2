mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;

use common::{tensor_text, Shape};
use gordual::duality::functional_equation;
use gordual::hochschild::{check_bar_d_squared, Coefficients};
use gordual::koszul::{build_koszul, koszul_homology};
use gordual::shift::{solve_report, Ledger};
use gordual::sseq::{build_e2, parse_schedule, run_schedule};
use gordual::{gorenstein_certificate, hilbert_series, structural_shift, Algebra, Presentation, Verdict};

fn shape(max_poly: usize, max_ext: usize) -> impl Strategy<Value = Shape> {
    (
        prop::sample::select(vec![2u32, 3, 5]),
        prop::collection::vec(prop::sample::select(vec![2i32, 4, 6]), 0..=max_poly),
        prop::collection::vec(prop::sample::select(vec![1i32, 3, 5]), 0..=max_ext),
        prop::option::of((prop::sample::select(vec![2i32, 4]), 2u32..4)),
    )
        .prop_map(|(p, poly, ext, truncated)| Shape { p, poly, ext, truncated })
}

/// Integration tests have no `lib.rs` beside them to persist failures next to.
fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

fn parse(text: &str) -> Presentation {
    Presentation::parse(text).unwrap()
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn structural_shift_is_additive_under_tensor(a in shape(2, 2), b in shape(2, 2)) {
        let b = Shape { p: a.p, ..b };
        let both = parse(&tensor_text(&a, &b));
        // Two truncated factors make a finite remainder with one socle class.
        let sa = structural_shift(&a.presentation()).unwrap();
        let sb = structural_shift(&b.presentation()).unwrap();
        prop_assert_eq!(sa, a.expected_shift());
        prop_assert_eq!(structural_shift(&both).unwrap(), sa + sb);
    }

    #[test]
    fn hilbert_series_is_multiplicative_under_tensor(a in shape(2, 2), b in shape(2, 2)) {
        let b = Shape { p: a.p, ..b };
        let ha = hilbert_series(&a.presentation(), 40).unwrap();
        let hb = hilbert_series(&b.presentation(), 40).unwrap();
        let hab = hilbert_series(&parse(&tensor_text(&a, &b)), 40).unwrap();
        prop_assert_eq!(hab.expand(40), ha.product(&hb).expand(40));
    }

    #[test]
    fn functional_equation_exponent_scales_with_degrees(s in shape(2, 0), c in 2i32..4) {
        // Only even generators, so scaling keeps the presentation valid.
        let scaled = Shape {
            poly: s.poly.iter().map(|d| d * c).collect(),
            truncated: s.truncated.map(|(d, h)| (d * c, h)),
            ..s.clone()
        };
        let h = hilbert_series(&s.presentation(), 60).unwrap();
        let hs = hilbert_series(&scaled.presentation(), 60).unwrap();
        let r = h.krull_dim() as i32;
        let base = functional_equation(&h, r);
        let scaled_fe = functional_equation(&hs, r);
        let (Some(b), Some(t)) = (base.report(), scaled_fe.report()) else {
            return Err(TestCaseError::fail("tensor forms satisfy the functional equation"));
        };
        prop_assert_eq!(t.exponent, c * b.exponent);
        prop_assert_eq!(t.epsilon, b.epsilon);
    }

    #[test]
    fn frobenius_is_additive(
        p in prop::sample::select(vec![2u32, 3, 5]),
        da in prop::sample::select(vec![2i32, 4]),
        db in prop::sample::select(vec![2i32, 4]),
    ) {
        // Give both generators the same degree so that x + y is homogeneous.
        let _ = db;
        let pres = parse(&format!("char = {p}\n[gen] x, {da}, poly\n[gen] y, {da}, poly\n"));
        let alg = Algebra::new(&pres, da as u32 * p);
        let sum = alg.parse_element("x + y").unwrap();
        let mut power = sum.clone();
        for _ in 1..p {
            power = alg.multiply_elements(&power, &sum).unwrap();
        }
        prop_assert_eq!(power, alg.parse_element(&format!("x^{p} + y^{p}")).unwrap());
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn structural_shift_matches_certificate(s in shape(1, 2)) {
        let pres = s.presentation();
        let cert = gorenstein_certificate(&pres, s.poly.len() as u32 + 2, s.deg_bound()).unwrap();
        prop_assert_eq!(cert.verdict, Verdict::Gorenstein, "{}", s.text());
        prop_assert_eq!(cert.shift, Some(structural_shift(&pres).unwrap()));
    }

    #[test]
    fn hochschild_boundary_squares_to_zero(s in shape(1, 1)) {
        let pres = s.presentation();
        prop_assert!(check_bar_d_squared(&pres, Coefficients::Ring, 10).unwrap());
        prop_assert!(check_bar_d_squared(&pres, Coefficients::Field, 10).unwrap());
    }

    #[test]
    fn koszul_h0_is_the_quotient(
        p in prop::sample::select(vec![2u32, 3, 5]),
        dx in prop::sample::select(vec![2i32, 4]),
        dy in prop::sample::select(vec![2i32, 4, 6]),
        i in 0u32..3,
        j in 1u32..3,
    ) {
        let text = format!("char = {p}\n[gen] x, {dx}, poly\n[gen] y, {dy}, poly\n");
        let f = if i == 0 { format!("y^{j}") } else { format!("x^{i}*y^{j}") };
        let bound = 24;
        let cx = build_koszul(Arc::new(Algebra::new(&parse(&text), bound)), &[f.as_str()]).unwrap();
        let h = koszul_homology(&cx, bound).unwrap();
        let quotient = Algebra::new(&parse(&format!("{text}[rel] {f}\n")), bound);
        for level in 0..=bound {
            let h0 = h.get(&(0, level as i32)).copied().unwrap_or(0);
            prop_assert_eq!(h0, quotient.dim(level), "degree {}", level);
        }
    }

    #[test]
    fn pages_shrink_monotonically(p in prop::sample::select(vec![2u32, 3, 5]), m in 1i32..4, extra in 0i32..3) {
        // d_{2m}(mu) = x moves (2m, 0) to (0, 2m - 1).
        let q = parse(&format!("char = {p}\n[gen] mu, {}, poly\n", 2 * m));
        let mut s_text = format!("char = {p}\n[gen] x, {}, ext\n", 2 * m - 1);
        if p == 2 {
            s_text.push_str("[rel] x^2\n");
        }
        if extra > 0 {
            s_text.push_str(&format!("[gen] w, {}, poly\n", 2 * extra));
        }
        let s = parse(&s_text);
        let window = 24;
        let specs = parse_schedule(&format!("d{}(mu) = x", 2 * m)).unwrap();
        let run = run_schedule(&q, &s, &specs, window).unwrap();
        let e2 = build_e2(&q, &s, window).unwrap().total_dims();
        for (n, &d) in &run.e_infinity {
            prop_assert!(d <= e2.get(n).copied().unwrap_or(0), "degree {}", n);
        }
        let mut previous: Option<BTreeMap<(i32, i32), usize>> = None;
        for snap in &run.history {
            let dims: BTreeMap<(i32, i32), usize> = snap.entries.iter().map(|e| ((e.s, e.t), e.dim)).collect();
            if let Some(prev) = &previous {
                for (k, &d) in &dims {
                    prop_assert!(d <= prev.get(k).copied().unwrap_or(0));
                }
            }
            previous = Some(dims);
        }
    }

    #[test]
    fn ledger_solution_ignores_line_order(perm in Just((0..6).collect::<Vec<usize>>()).prop_shuffle()) {
        let lines = [
            "axiom K -2 \"base\"",
            "relative L K -4",
            "cofibre L M N",
            "axiom N 5 \"cell\"",
            "thh C L p=3",
            "node P shift=3",
        ];
        let text: String = lines.iter().map(|l| format!("{l}\n")).collect();
        let shuffled: String = perm.iter().map(|&i| format!("{}\n", lines[i])).collect();
        let a = solve_report(&Ledger::parse(&text).unwrap());
        let b = solve_report(&Ledger::parse(&shuffled).unwrap());
        prop_assert_eq!(&a.shifts, &b.shifts);
        prop_assert_eq!(a.is_consistent(), b.is_consistent());
        prop_assert_eq!(a.unresolved.len(), b.unresolved.len());
    }
}
