use sharpmap_core::certify::verify_sharp;
use sharpmap_core::family::invariant_poly;
use sharpmap_core::json::{search_report_to_value, to_pretty};
use sharpmap_core::scalar::{int, ratio};
use sharpmap_core::search::{min_l0, sharp_bound, symmetric_min_terms, uniqueness_test, SearchConfig};
use sharpmap_core::system::{build_homogenized, reduce_support};
use sharpmap_core::{Error, Polynomial};

fn cfg(workers: usize) -> SearchConfig {
    SearchConfig::default().with_workers(workers)
}

#[test]
fn constrained_minimum_matches_the_sharp_bound() {
    for d in 1..=7u32 {
        let sys = build_homogenized(2, d, false).unwrap();
        let report = min_l0(&sys, true, false, &cfg(2)).unwrap();
        assert_eq!(report.min_l0, Some(sharp_bound(2, d)), "d={d}");
        let unconstrained = min_l0(&sys, false, false, &cfg(2)).unwrap();
        assert_eq!(unconstrained.min_l0, Some(2));
    }
}

#[test]
fn septic_witnesses_and_their_sums() {
    let sys = build_homogenized(2, 7, false).unwrap();
    let report = min_l0(&sys, true, true, &cfg(2)).unwrap();
    assert_eq!(report.min_l0, Some(5));
    let polys: Vec<Polynomial> = report.witnesses.iter().map(|w| w.polynomial.clone()).collect();
    let expected = [
        Polynomial::from_xy(&[
            (7, 0, int(1)),
            (0, 7, int(1)),
            (5, 1, ratio(7, 2)),
            (1, 5, ratio(7, 2)),
            (1, 1, ratio(7, 2)),
        ]),
        Polynomial::from_xy_int(&[(7, 0, 1), (0, 7, 1), (3, 3, 7), (1, 3, 7), (3, 1, 7)]),
        invariant_poly(7),
        Polynomial::from_xy_int(&[(7, 0, 1), (1, 5, 7), (2, 3, 14), (3, 1, 7), (0, 7, 1)]),
    ];
    assert_eq!(polys.len(), 4);
    for p in &expected {
        assert!(polys.contains(p), "missing {p}");
    }
    let mut sums: Vec<_> = report.witnesses.iter().map(|w| w.l1.clone()).collect();
    sums.sort();
    assert_eq!(sums, vec![ratio(25, 2), int(23), int(30), int(30)]);
    for w in &report.witnesses {
        assert_eq!(w.l0, 5);
        assert_eq!(w.polynomial.coeff_sum(), w.l1);
        assert!(verify_sharp(&w.polynomial, 2).verdict);
    }
}

#[test]
fn every_witness_is_certified() {
    for d in 1..=6u32 {
        let sys = build_homogenized(2, d, false).unwrap();
        let report = min_l0(&sys, true, true, &cfg(1)).unwrap();
        for w in &report.witnesses {
            let cert = verify_sharp(&w.polynomial, 2);
            assert!(cert.verdict, "d={d} {}: {:?}", w.polynomial, cert.checks);
        }
    }
    let sys = build_homogenized(3, 2, false).unwrap();
    let report = min_l0(&sys, true, true, &cfg(1)).unwrap();
    assert_eq!(report.min_l0, Some(sharp_bound(3, 2)));
    for w in &report.witnesses {
        assert!(verify_sharp(&w.polynomial, 3).verdict);
    }
}

#[test]
fn reduced_and_full_searches_agree() {
    for d in [1u32, 3, 5, 7] {
        let full = build_homogenized(2, d, false).unwrap();
        let reduced = reduce_support(&full).unwrap();
        let a = min_l0(&full, true, true, &cfg(2)).unwrap();
        let b = min_l0(&reduced, false, true, &cfg(2)).unwrap();
        assert_eq!(a.min_l0, b.min_l0, "d={d}");
        let mut pa: Vec<String> = a.witnesses.iter().map(|w| w.polynomial.render()).collect();
        let mut pb: Vec<String> = b.witnesses.iter().map(|w| w.polynomial.render()).collect();
        pa.sort();
        pb.sort();
        assert_eq!(pa, pb, "d={d}");
    }
}

#[test]
fn uniqueness_in_degrees_three_and_five() {
    assert_eq!(uniqueness_test(3, &cfg(2)).unwrap(), vec![invariant_poly(3)]);
    let five = uniqueness_test(5, &cfg(2)).unwrap();
    assert_eq!(five.len(), 2);
    assert!(five.contains(&invariant_poly(5)));
    assert!(five.contains(&invariant_poly(5).swap_variables()));
    assert!(matches!(uniqueness_test(4, &cfg(1)), Err(Error::InvalidParameter(_))));
}

#[test]
fn symmetric_minimum_small_degrees() {
    assert_eq!(symmetric_min_terms(1, &cfg(2)).unwrap().0, 2);
    assert_eq!(symmetric_min_terms(3, &cfg(2)).unwrap().0, 3);
    let (five, witnesses) = symmetric_min_terms(5, &cfg(2)).unwrap();
    assert!(five > 4);
    for w in witnesses {
        assert_eq!(w.polynomial, w.polynomial.swap_variables());
        assert_eq!(w.polynomial.term_count(), five);
    }
}

#[test]
fn output_does_not_depend_on_worker_count() {
    for d in [4u32, 5] {
        let sys = build_homogenized(2, d, false).unwrap();
        let base = to_pretty(&search_report_to_value(&min_l0(&sys, true, true, &cfg(1)).unwrap()));
        for workers in [2, 3, 8] {
            let other = to_pretty(&search_report_to_value(&min_l0(&sys, true, true, &cfg(workers)).unwrap()));
            assert_eq!(base, other, "d={d} workers={workers}");
        }
    }
}

#[test]
fn budgets_surface_as_errors() {
    let sys = build_homogenized(2, 7, false).unwrap();
    let small = SearchConfig {
        max_combinations: 100,
        ..cfg(1)
    };
    assert!(matches!(min_l0(&sys, true, false, &small), Err(Error::BudgetExceeded(_))));
    let shallow = SearchConfig {
        max_support: Some(4),
        ..cfg(1)
    };
    assert!(matches!(min_l0(&sys, true, false, &shallow), Err(Error::BudgetExceeded(_))));
}
