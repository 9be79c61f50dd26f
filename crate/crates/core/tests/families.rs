use num_bigint::BigInt;
use sharpmap_core::certify::{census_threshold, gap_admissible, target_minimal_census, verify_sharp};
use sharpmap_core::family::{
    invariant_from_closed_form, invariant_poly, is_prime, l1_closed_form, lucas, primality_congruence,
    substitute, tensor_op, whitney_poly, TensorOp,
};
use sharpmap_core::scalar::{int, ratio};
use sharpmap_core::Polynomial;

#[test]
fn listed_expansions() {
    let listed = [
        (1, vec![(1, 0, 1), (0, 1, 1)]),
        (3, vec![(3, 0, 1), (1, 1, 3), (0, 3, 1)]),
        (5, vec![(5, 0, 1), (3, 1, 5), (1, 2, 5), (0, 5, 1)]),
        (7, vec![(7, 0, 1), (5, 1, 7), (3, 2, 14), (1, 3, 7), (0, 7, 1)]),
        (9, vec![(9, 0, 1), (7, 1, 9), (5, 2, 27), (3, 3, 30), (1, 4, 9), (0, 9, 1)]),
    ];
    for (d, terms) in listed {
        assert_eq!(invariant_poly(d), Polynomial::from_xy_int(&terms), "d={d}");
    }
}

#[test]
fn closed_form_and_sums() {
    for d in (1..=31).step_by(2) {
        assert_eq!(invariant_from_closed_form(d).unwrap(), invariant_poly(d), "d={d}");
        let p = invariant_poly(d);
        assert!(p.is_nonnegative());
        assert_eq!(p.term_count(), (d as usize + 3) / 2);
        assert!(p.divide_by_affine().is_one_on_hyperplane());
    }
    for d in (1..=21).step_by(2) {
        assert_eq!(l1_closed_form(d).unwrap(), lucas(d) + BigInt::from(1));
    }
    assert_eq!(l1_closed_form(7).unwrap(), BigInt::from(30));
    for d in (2..=12).step_by(2) {
        let p = invariant_poly(d);
        let negative: Vec<_> = p.terms().filter(|(_, c)| **c < int(0)).collect();
        assert_eq!(negative.len(), 1);
        assert_eq!(*negative[0].1, int(-1));
        assert!(p.divide_by_affine().is_one_on_hyperplane());
    }
}

#[test]
fn congruence_detects_primes() {
    for d in 2..=31u32 {
        assert_eq!(primality_congruence(d), is_prime(d as u64), "d={d}");
    }
}

#[test]
fn substitution_lowers_the_sum() {
    let sub = substitute(7, 2, 3, 1, &int(7)).unwrap();
    assert!(sub.nonnegative);
    assert_eq!(
        sub.polynomial,
        Polynomial::from_xy_int(&[(7, 0, 1), (0, 7, 1), (3, 3, 7), (1, 3, 7), (3, 1, 7)])
    );
    assert_eq!(invariant_poly(7).coeff_sum(), int(30));
    assert_eq!(sub.polynomial.coeff_sum(), int(23));
    assert!(verify_sharp(&sub.polynomial, 2).verdict);
}

#[test]
fn whitney_maps() {
    for n in 3..=5usize {
        for d in 1..=5u32 {
            let w = whitney_poly(n, d).unwrap();
            assert_eq!(w.term_count(), d as usize * (n - 1) + 1);
            assert!(w.divide_by_affine().is_one_on_hyperplane());
            assert!(verify_sharp(&w, n).verdict, "n={n} d={d}");
        }
    }
}

#[test]
fn tensor_operations_preserve_the_identity() {
    let s = Polynomial::linear_sum(3);
    let w = tensor_op(&s, TensorOp::W, &int(1), None).unwrap();
    assert_eq!(w.term_count(), 5);
    let v = tensor_op(&w, TensorOp::V, &int(1), None).unwrap();
    assert_eq!(v.term_count(), 8);
    assert_eq!(v.coefficient(&sharpmap_core::Monomial::new(vec![0, 0, 2])), ratio(1, 2));
    for p in [&w, &v] {
        assert!(p.divide_by_affine().is_one_on_hyperplane());
        assert!(p.is_nonnegative());
    }
    assert!(tensor_op(&s, TensorOp::W, &int(2), None).is_err());
}

#[test]
fn census_and_gaps() {
    for (n, max) in [(2usize, 10usize), (3, 12), (4, 16)] {
        let census = target_minimal_census(n, max);
        for count in census_threshold(n)..=max {
            let p = census[&count].as_ref().unwrap_or_else(|| panic!("n={n} N={count}"));
            assert_eq!(p.term_count(), count);
            assert!(p.divide_by_affine().is_one_on_hyperplane());
        }
        for (count, witness) in &census {
            if !gap_admissible(n, *count) {
                assert!(witness.is_none(), "n={n} N={count}");
            }
        }
    }
    assert!(!gap_admissible(3, 2));
    assert!(!gap_admissible(4, 5));
    assert!(gap_admissible(2, 3));
}
