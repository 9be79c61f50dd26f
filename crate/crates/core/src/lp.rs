//! Exact linear programming over the rationals.
//!
//! Standard form only: minimize `c·u` subject to `A·u = b`, `u ≥ 0`, with
//! some coordinates optionally pinned to fixed values. Pins are substituted
//! into `A` and `b` up front, redundant rows are removed by exact row
//! reduction, and a dense two-phase simplex runs with Bland's rule (lowest
//! eligible index enters, ties in the ratio test go to the lowest basic
//! index), so every solve terminates and is reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};

use crate::linalg;
use crate::scalar::Scalar;
use crate::system::LinearSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpResult {
    pub status: LpStatus,
    /// Optimal point (all original coordinates, pins included).
    pub point: Option<Vec<Scalar>>,
    /// `c·point`, pins included.
    pub value: Option<Scalar>,
}

impl LpResult {
    fn infeasible() -> Self {
        LpResult {
            status: LpStatus::Infeasible,
            point: None,
            value: None,
        }
    }

    fn unbounded() -> Self {
        LpResult {
            status: LpStatus::Unbounded,
            point: None,
            value: None,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vec<Scalar>,
    pub matrix: Vec<Vec<Scalar>>,
    pub rhs: Vec<Scalar>,
    pub pinned: BTreeMap<usize, Scalar>,
}

impl LpProblem {
    pub fn new(objective: Vec<Scalar>, matrix: Vec<Vec<Scalar>>, rhs: Vec<Scalar>) -> Self {
        assert_eq!(matrix.len(), rhs.len(), "row count must match rhs length");
        assert!(
            matrix.iter().all(|r| r.len() == objective.len()),
            "objective length must equal column count"
        );
        LpProblem {
            objective,
            matrix,
            rhs,
            pinned: BTreeMap::new(),
        }
    }

    pub fn from_system(system: &LinearSystem, objective: Vec<Scalar>) -> Self {
        assert_eq!(objective.len(), system.ncols());
        LpProblem {
            objective,
            matrix: system.matrix.clone(),
            rhs: system.rhs.clone(),
            pinned: BTreeMap::new(),
        }
    }

    /// Coefficient-sum objective: each column weighted by the number of
    /// monomials it contributes, which is its value at `(1, …, 1)`.
    pub fn coefficient_sum(system: &LinearSystem) -> Self {
        let objective = system
            .columns
            .iter()
            .map(|c| c.polynomial().coeff_sum())
            .collect();
        LpProblem::from_system(system, objective)
    }

    pub fn pin(mut self, column: usize, value: Scalar) -> Self {
        self.pinned.insert(column, value);
        self
    }

    pub fn ncols(&self) -> usize {
        self.objective.len()
    }
}

/// Any exact nonnegative point of `sys` that respects the pins.
pub fn feasible(system: &LinearSystem, pinned: &BTreeMap<usize, Scalar>) -> LpResult {
    let mut problem = LpProblem::from_system(system, vec![Scalar::zero(); system.ncols()]);
    problem.pinned = pinned.clone();
    minimize(&problem)
}

pub fn minimize(problem: &LpProblem) -> LpResult {
    match solve(problem) {
        Solved::Infeasible => LpResult::infeasible(),
        Solved::Unbounded => LpResult::unbounded(),
        Solved::Optimal(state) => state.result(problem),
    }
}

/// Every optimal basic feasible solution, deduplicated, in lexicographic order.
///
/// The optimal face is `{u feasible : u_j = 0 for every j with positive
/// reduced cost}` at any optimal basis; its vertices are reached by a
/// breadth-first walk over all feasible bases of that face, degenerate pivots
/// included.
pub fn enumerate_vertex_optima(problem: &LpProblem) -> Vec<LpResult> {
    let Solved::Optimal(state) = solve(problem) else {
        return Vec::new();
    };
    let reduced = state.tableau.reduced_costs(&state.cost);
    let allowed: Vec<bool> = reduced.iter().map(Zero::is_zero).collect();

    let mut seen_bases = BTreeSet::new();
    let mut points = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen_bases.insert(state.tableau.basis_key());
    queue.push_back(state.tableau.clone());
    while let Some(t) = queue.pop_front() {
        points.insert(state.expand(&t.basic_values(), problem));
        for (j, &ok) in allowed.iter().enumerate().take(t.ncols) {
            if !ok || t.basis.contains(&j) {
                continue;
            }
            for r in t.min_ratio_rows(j) {
                let mut next = t.clone();
                next.pivot(r, j);
                if seen_bases.insert(next.basis_key()) {
                    queue.push_back(next);
                }
            }
        }
    }
    points
        .into_iter()
        .map(|point| {
            let value = dot(&problem.objective, &point);
            LpResult {
                status: LpStatus::Optimal,
                point: Some(point),
                value: Some(value),
            }
        })
        .collect()
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, _)| !x.is_zero())
        .fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

enum Solved {
    Infeasible,
    Unbounded,
    Optimal(OptimalState),
}

/// Phase-2 tableau over the free (unpinned) columns.
struct OptimalState {
    tableau: Tableau,
    cost: Vec<Scalar>,
    free: Vec<usize>,
}

impl OptimalState {
    fn expand(&self, values: &[Scalar], problem: &LpProblem) -> Vec<Scalar> {
        let mut point = vec![Scalar::zero(); problem.ncols()];
        for (&j, v) in &problem.pinned {
            point[j] = v.clone();
        }
        for (k, &j) in self.free.iter().enumerate() {
            point[j] = values[k].clone();
        }
        point
    }

    fn result(&self, problem: &LpProblem) -> LpResult {
        let point = self.expand(&self.tableau.basic_values(), problem);
        let value = dot(&problem.objective, &point);
        LpResult {
            status: LpStatus::Optimal,
            point: Some(point),
            value: Some(value),
        }
    }
}

fn solve(problem: &LpProblem) -> Solved {
    if problem.pinned.values().any(Signed::is_negative) {
        return Solved::Infeasible;
    }
    let free: Vec<usize> = (0..problem.ncols())
        .filter(|j| !problem.pinned.contains_key(j))
        .collect();

    // Substitute pins.
    let mut rhs = problem.rhs.clone();
    for (i, row) in problem.matrix.iter().enumerate() {
        for (&j, v) in &problem.pinned {
            if !row[j].is_zero() {
                rhs[i] -= &row[j] * v;
            }
        }
    }
    let reduced: Vec<Vec<Scalar>> = problem
        .matrix
        .iter()
        .map(|row| free.iter().map(|&j| row[j].clone()).collect())
        .collect();
    let cost: Vec<Scalar> = free.iter().map(|&j| problem.objective[j].clone()).collect();

    // Drop redundant rows; detect inconsistency.
    let (rows, rhs) = if reduced.is_empty() {
        (Vec::new(), Vec::new())
    } else if free.is_empty() {
        if rhs.iter().any(|b| !b.is_zero()) {
            return Solved::Infeasible;
        }
        (Vec::new(), Vec::new())
    } else {
        let e = linalg::rref(&reduced, &rhs);
        if e.inconsistent {
            return Solved::Infeasible;
        }
        let nfree = free.len();
        let rhs = e.rows.iter().map(|r| r[nfree].clone()).collect();
        let rows = e.rows.into_iter().map(|mut r| {
            r.truncate(nfree);
            r
        });
        (rows.collect(), rhs)
    };

    let Some(tableau) = phase_one(rows, rhs, free.len()) else {
        return Solved::Infeasible;
    };
    let mut tableau = tableau;
    let all = vec![true; free.len()];
    match tableau.run_bland(&cost, &all) {
        Run::Unbounded => Solved::Unbounded,
        Run::Optimal => Solved::Optimal(OptimalState {
            tableau,
            cost,
            free,
        }),
    }
}

/// Finds a feasible basis of `rows · u = rhs, u ≥ 0` (rows independent).
fn phase_one(mut rows: Vec<Vec<Scalar>>, mut rhs: Vec<Scalar>, ncols: usize) -> Option<Tableau> {
    let m = rows.len();
    for (row, b) in rows.iter_mut().zip(rhs.iter_mut()) {
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
            *b = -b.clone();
        }
    }
    let mut data = Vec::with_capacity(m);
    for (i, (mut row, b)) in rows.into_iter().zip(rhs).enumerate() {
        row.extend((0..m).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }));
        row.push(b);
        data.push(row);
    }
    let mut t = Tableau {
        rows: data,
        basis: (ncols..ncols + m).collect(),
        ncols: ncols + m,
    };
    let mut cost = vec![Scalar::zero(); ncols];
    cost.extend(std::iter::repeat_n(Scalar::one(), m));
    let allowed = vec![true; ncols + m];
    // Phase 1 is bounded below by zero.
    let _ = t.run_bland(&cost, &allowed);
    let infeasibility = t
        .basis
        .iter()
        .zip(&t.rows)
        .filter(|(&b, _)| b >= ncols)
        .fold(Scalar::zero(), |acc, (_, row)| acc + &row[row.len() - 1]);
    if !infeasibility.is_zero() {
        return None;
    }

    // Pivot remaining (zero-level) artificials out of the basis.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= ncols {
            match (0..ncols).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => t.pivot(r, j),
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }
    for row in &mut t.rows {
        let b = row.pop().expect("rhs column");
        row.truncate(ncols);
        row.push(b);
    }
    t.ncols = ncols;
    Some(t)
}

enum Run {
    Optimal,
    Unbounded,
}

#[derive(Clone, Debug)]
struct Tableau {
    /// `B⁻¹[A | b]`, one row per basic variable.
    rows: Vec<Vec<Scalar>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Scalar {
        &self.rows[r][self.ncols]
    }

    fn basis_key(&self) -> Vec<usize> {
        let mut key = self.basis.clone();
        key.sort_unstable();
        key
    }

    fn basic_values(&self) -> Vec<Scalar> {
        let mut values = vec![Scalar::zero(); self.ncols];
        for (r, &b) in self.basis.iter().enumerate() {
            values[b] = self.rhs(r).clone();
        }
        values
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Scalar::one() / &self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &factor * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// `d_j = c_j − Σ_r c_{basis[r]} · rows[r][j]`.
    fn reduced_costs(&self, cost: &[Scalar]) -> Vec<Scalar> {
        let mut d: Vec<Scalar> = cost[..self.ncols].to_vec();
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (dj, a) in d.iter_mut().zip(row) {
                if !a.is_zero() {
                    *dj -= cb * a;
                }
            }
        }
        d
    }

    /// Rows attaining the minimum ratio for entering column `c`.
    fn min_ratio_rows(&self, c: usize) -> Vec<usize> {
        let mut best: Option<Scalar> = None;
        let mut rows = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            if !row[c].is_positive() {
                continue;
            }
            let ratio = self.rhs(r) / &row[c];
            match &best {
                Some(b) if ratio > *b => {}
                Some(b) if ratio == *b => rows.push(r),
                _ => {
                    best = Some(ratio);
                    rows.clear();
                    rows.push(r);
                }
            }
        }
        rows
    }

    fn run_bland(&mut self, cost: &[Scalar], allowed: &[bool]) -> Run {
        loop {
            let d = self.reduced_costs(cost);
            let entering = (0..self.ncols).find(|&j| allowed[j] && d[j].is_negative());
            let Some(c) = entering else {
                return Run::Optimal;
            };
            let candidates = self.min_ratio_rows(c);
            let Some(&r) = candidates.iter().min_by_key(|&&r| self.basis[r]) else {
                return Run::Unbounded;
            };
            self.pivot(r, c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::system::build_homogenized;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn quadratic_system_is_feasible() {
        let s = build_homogenized(2, 2, false).unwrap();
        let r = feasible(&s, &BTreeMap::new());
        assert!(r.is_optimal());
        let point = r.point.unwrap();
        assert!(s.is_solution(&point));
        assert!(point.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn two_column_subsystem_is_infeasible() {
        let s = build_homogenized(2, 2, false).unwrap();
        // Columns x and y^2 only: the middle equation needs a = 2 while the first needs a = 1.
        let sub: Vec<Vec<Scalar>> = s.matrix.iter().map(|r| vec![r[0].clone(), r[4].clone()]).collect();
        let p = LpProblem::new(ints(&[0, 0]), sub, s.rhs.clone());
        assert_eq!(minimize(&p).status, LpStatus::Infeasible);
    }

    #[test]
    fn empty_system_is_feasible_at_zero() {
        let p = LpProblem::new(ints(&[1, 2]), Vec::new(), Vec::new());
        let r = minimize(&p);
        assert_eq!(r.point, Some(ints(&[0, 0])));
        assert_eq!(r.value, Some(int(0)));
        let p = LpProblem::new(ints(&[1, -1]), Vec::new(), Vec::new());
        assert_eq!(minimize(&p).status, LpStatus::Unbounded);
    }

    #[test]
    fn pins_are_respected() {
        let s = build_homogenized(2, 2, false).unwrap();
        let p = LpProblem::coefficient_sum(&s).pin(3, int(2));
        let r = minimize(&p);
        assert_eq!(r.point, Some(ints(&[0, 0, 1, 2, 1])));
        assert_eq!(r.value, Some(int(4)));
        let p = LpProblem::coefficient_sum(&s).pin(0, int(-1));
        assert_eq!(minimize(&p).status, LpStatus::Infeasible);
        let p = LpProblem::coefficient_sum(&s).pin(0, int(2));
        assert_eq!(minimize(&p).status, LpStatus::Infeasible);
    }

    #[test]
    fn redundant_rows_are_harmless() {
        let matrix = vec![ints(&[1, 1, 0]), ints(&[2, 2, 0]), ints(&[0, 1, 1])];
        let p = LpProblem::new(ints(&[1, 0, 0]), matrix, ints(&[2, 4, 1]));
        let r = minimize(&p);
        assert_eq!(r.value, Some(int(1)));
        assert_eq!(r.point, Some(ints(&[1, 1, 0])));
    }

    #[test]
    fn unbounded_direction_is_reported() {
        let p = LpProblem::new(ints(&[-1, 0]), vec![ints(&[1, -1])], ints(&[0]));
        assert_eq!(minimize(&p).status, LpStatus::Unbounded);
    }

    #[test]
    fn optimal_face_vertices() {
        let s = build_homogenized(2, 2, false).unwrap();
        let p = LpProblem::from_system(&s, vec![int(0); 5]);
        let points: Vec<Vec<Scalar>> = enumerate_vertex_optima(&p)
            .into_iter()
            .map(|r| r.point.unwrap())
            .collect();
        for v in [[1, 1, 0, 0, 0], [0, 0, 1, 2, 1], [1, 0, 0, 1, 1], [0, 1, 1, 1, 0]] {
            assert!(points.contains(&ints(&v)), "missing vertex {v:?}");
        }
        for p in &points {
            assert!(s.is_solution(p));
        }

        let infeasible = LpProblem::new(ints(&[0]), vec![ints(&[1])], ints(&[-1]));
        assert!(enumerate_vertex_optima(&infeasible).is_empty());
    }
}
