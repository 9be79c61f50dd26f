use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sharpmap_core::lp::{enumerate_vertex_optima, minimize, LpProblem, LpStatus};
use sharpmap_core::scalar::{self, int, ratio, Scalar};
use sharpmap_core::system::{build_homogenized, build_symmetric, Column, LinearSystem};
use sharpmap_core::Polynomial;

fn pin_top_symmetric(sys: &LinearSystem) -> LpProblem {
    let top = sys
        .columns
        .iter()
        .position(|c| matches!(c, Column::Symmetric(e) if e.a == 0 && e.b == sys.d))
        .unwrap();
    LpProblem::coefficient_sum(sys).pin(top, int(1))
}

#[test]
fn constant_term_allows_the_constant_map() {
    for d in 1..=5 {
        let sys = build_homogenized(2, d, true).unwrap();
        let result = minimize(&LpProblem::coefficient_sum(&sys));
        assert_eq!(result.value, Some(int(1)), "d={d}");
        assert_eq!(sys.assemble(result.point.as_ref().unwrap()), Polynomial::one(2));
    }
}

#[test]
fn without_constant_the_minimum_is_two() {
    for d in 1..=5 {
        let sys = build_homogenized(2, d, false).unwrap();
        let problem = LpProblem::coefficient_sum(&sys);
        let result = minimize(&problem);
        assert_eq!(result.value, Some(int(2)), "d={d}");
        let vertices = enumerate_vertex_optima(&problem);
        let polys: Vec<Polynomial> = vertices
            .iter()
            .map(|v| sys.assemble(v.point.as_ref().unwrap()))
            .collect();
        assert!(polys.contains(&Polynomial::linear_sum(2)));
    }
}

#[test]
fn symmetric_eleven_with_pinned_top() {
    let sys = build_symmetric(11).unwrap();
    let problem = pin_top_symmetric(&sys);
    let result = minimize(&problem);
    assert_eq!(result.status, LpStatus::Optimal);
    assert_eq!(result.value, Some(ratio(573, 28)));
    let p = sys.assemble(result.point.as_ref().unwrap());
    let expected = Polynomial::from_xy(&[
        (11, 0, int(1)),
        (0, 11, int(1)),
        (1, 1, ratio(99, 28)),
        (5, 1, ratio(33, 14)),
        (1, 5, ratio(33, 14)),
        (6, 1, ratio(33, 14)),
        (1, 6, ratio(33, 14)),
        (9, 1, ratio(55, 28)),
        (1, 9, ratio(55, 28)),
        (10, 1, ratio(11, 14)),
        (1, 10, ratio(11, 14)),
    ]);
    assert_eq!(p, expected);
    assert_eq!(p.coeff_sum(), ratio(573, 28));
    assert_eq!(enumerate_vertex_optima(&problem).len(), 1);
}

#[test]
fn both_readings_of_the_quintic_minimum() {
    // Degree five.
    let sys5 = build_symmetric(5).unwrap();
    let r5 = minimize(&pin_top_symmetric(&sys5));
    assert_eq!(r5.value, Some(ratio(26, 3)));
    let g = Polynomial::from_xy(&[
        (5, 0, int(1)),
        (0, 5, int(1)),
        (1, 1, ratio(10, 3)),
        (4, 1, ratio(5, 3)),
        (1, 4, ratio(5, 3)),
    ]);
    assert_eq!(sys5.assemble(r5.point.as_ref().unwrap()), g);
    assert_eq!(enumerate_vertex_optima(&pin_top_symmetric(&sys5)).len(), 1);

    // Degree seven.
    let sys7 = build_symmetric(7).unwrap();
    let r7 = minimize(&pin_top_symmetric(&sys7));
    assert_eq!(r7.value, Some(ratio(25, 2)));
    let seventeen = Polynomial::from_xy(&[
        (7, 0, int(1)),
        (0, 7, int(1)),
        (5, 1, ratio(7, 2)),
        (1, 5, ratio(7, 2)),
        (1, 1, ratio(7, 2)),
    ]);
    assert_eq!(sys7.assemble(r7.point.as_ref().unwrap()), seventeen);
}

#[test]
fn zero_objective_face_has_every_quadratic_vertex() {
    let sys = build_homogenized(2, 2, false).unwrap();
    let problem = LpProblem::from_system(&sys, vec![Scalar::from_integer(0.into()); sys.ncols()]);
    let points: Vec<Vec<Scalar>> = enumerate_vertex_optima(&problem)
        .into_iter()
        .map(|r| r.point.unwrap())
        .collect();
    let v = |xs: &[i64]| xs.iter().map(|&x| int(x)).collect::<Vec<_>>();
    assert!(points.contains(&v(&[1, 1, 0, 0, 0])));
    assert!(points.contains(&v(&[0, 0, 1, 2, 1])));
    assert!(points.len() > 2);
    for p in &points {
        assert!(sys.is_solution(p));
        assert!(p.iter().all(scalar::is_canonical));
    }
}

#[test]
fn no_feasible_point_beats_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x11);
    for d in 1..=3 {
        let sys = build_homogenized(2, d, false).unwrap();
        let best = minimize(&LpProblem::coefficient_sum(&sys)).value.unwrap();
        let sums: Vec<Scalar> = sys.columns.iter().map(|c| c.polynomial().coeff_sum()).collect();
        for _ in 0..40 {
            let objective: Vec<Scalar> = (0..sys.ncols())
                .map(|_| ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
                .collect();
            let a = minimize(&LpProblem::from_system(&sys, objective.clone()));
            let b = minimize(&LpProblem::from_system(&sys, objective.iter().map(|c| -c).collect()));
            for r in [a, b] {
                let Some(point) = r.point else { continue };
                assert!(sys.is_solution(&point));
                let value: Scalar = point.iter().zip(&sums).map(|(u, s)| u * s).sum();
                assert!(value >= best);
            }
        }
    }
}

#[test]
fn pins_that_cannot_hold_are_infeasible() {
    let sys = build_homogenized(2, 3, false).unwrap();
    let top = sys.columns.len() - 1;
    let result = minimize(&LpProblem::coefficient_sum(&sys).pin(top, int(2)));
    assert_eq!(result.status, LpStatus::Infeasible);
    assert!(enumerate_vertex_optima(&LpProblem::coefficient_sum(&sys).pin(top, int(2))).is_empty());
}
