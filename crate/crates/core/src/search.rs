//! Minimum-L0 search over the columns of a [`LinearSystem`].
//!
//! Supports are enumerated by increasing monomial count (a symmetric basis
//! column `(xy)^a (x^b + y^b)` with `b > 0` counts twice), lexicographically
//! within a level. A support is accepted when the system restricted to it has
//! an exact solution that is strictly positive on every column of the support;
//! with the degree constraint active, the support must also meet the
//! distinguished (top-degree) columns. The first level with an accepted
//! support is the minimum.
//!
//! Each level is split by its first column across a worker pool and merged in
//! order, so reports do not depend on the worker count.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, Solution};
use crate::lp::{self, LpProblem};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::system::{self, LinearSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest monomial count to try; `None` means every level.
    pub max_support: Option<usize>,
    /// Upper bound on the number of supports examined over the whole search.
    pub max_combinations: u64,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_support: None,
            max_combinations: 5_000_000,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SearchConfig {
    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

/// A support together with its exact solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSolution {
    /// Column indices, ascending.
    pub support: Vec<usize>,
    /// Value of each support column, aligned with `support`.
    pub values: Vec<Scalar>,
    /// Monomials in the assembled polynomial (fixed terms included).
    pub l0: usize,
    /// Coefficient sum of the assembled polynomial.
    pub l1: Scalar,
    pub polynomial: Polynomial,
    /// The support determines its solution uniquely.
    pub unique: bool,
}

impl SupportSolution {
    /// Values over every column of the system.
    pub fn dense(&self, ncols: usize) -> Vec<Scalar> {
        let mut u = vec![Scalar::zero(); ncols];
        for (&j, v) in self.support.iter().zip(&self.values) {
            u[j] = v.clone();
        }
        u
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    /// `None` when no support of any admissible size works.
    pub min_l0: Option<usize>,
    pub witnesses: Vec<SupportSolution>,
    pub nodes_explored: u64,
    /// Supports rejected by the sign-coverage test before any solve.
    pub prunes_by_certificate: u64,
}

/// Predicted minimum number of terms of a degree-`d` sphere map from `C^n`:
/// `(d+3)/2` (odd `d`) or `d/2 + 2` (even `d`) for `n = 2`, `d(n−1) + 1` for
/// `n ≥ 3`.
pub fn sharp_bound(n: usize, d: u32) -> usize {
    let d = d as usize;
    if n == 2 {
        if d.is_odd() {
            (d + 3) / 2
        } else {
            d / 2 + 2
        }
    } else {
        d * (n - 1) + 1
    }
}

/// Row bitsets of a column's positive and negative entries.
#[derive(Clone, Debug)]
struct Signs {
    pos: Vec<u64>,
    neg: Vec<u64>,
}

fn bitset(len: usize) -> Vec<u64> {
    vec![0; len.div_ceil(64).max(1)]
}

fn or_into(acc: &mut [u64], other: &[u64]) {
    for (a, b) in acc.iter_mut().zip(other) {
        *a |= b;
    }
}

fn covers(have: &[u64], need: &[u64]) -> bool {
    have.iter().zip(need).all(|(h, n)| n & !h == 0)
}

struct Context<'a> {
    system: &'a LinearSystem,
    weights: Vec<usize>,
    signs: Vec<Signs>,
    need_pos: Vec<u64>,
    need_neg: Vec<u64>,
    constrained: bool,
    last_distinguished: Option<usize>,
}

#[derive(Default)]
struct LevelOutcome {
    witnesses: Vec<SupportSolution>,
    explored: u64,
    pruned: u64,
}

impl LevelOutcome {
    fn merge(mut self, other: LevelOutcome) -> LevelOutcome {
        self.witnesses.extend(other.witnesses);
        self.explored += other.explored;
        self.pruned += other.pruned;
        self
    }
}

impl<'a> Context<'a> {
    fn new(system: &'a LinearSystem, constrained: bool) -> Self {
        let m = system.nrows();
        let mut signs = Vec::with_capacity(system.ncols());
        for j in 0..system.ncols() {
            let mut s = Signs {
                pos: bitset(m),
                neg: bitset(m),
            };
            for (i, row) in system.matrix.iter().enumerate() {
                if row[j].is_positive() {
                    s.pos[i / 64] |= 1 << (i % 64);
                } else if row[j].is_negative() {
                    s.neg[i / 64] |= 1 << (i % 64);
                }
            }
            signs.push(s);
        }
        let mut need_pos = bitset(m);
        let mut need_neg = bitset(m);
        for (i, b) in system.rhs.iter().enumerate() {
            if b.is_positive() {
                need_pos[i / 64] |= 1 << (i % 64);
            } else if b.is_negative() {
                need_neg[i / 64] |= 1 << (i % 64);
            }
        }
        let constrained = constrained && !system.distinguished.is_empty();
        Context {
            system,
            weights: system.columns.iter().map(|c| c.weight()).collect(),
            signs,
            need_pos,
            need_neg,
            constrained,
            last_distinguished: system.distinguished.last().copied(),
        }
    }

    /// Number of supports of total weight `level` (meeting the distinguished
    /// set when constrained).
    fn count_level(&self, level: usize) -> u128 {
        let count = |skip_distinguished: bool| {
            let mut ways = vec![0u128; level + 1];
            ways[0] = 1;
            for (j, &w) in self.weights.iter().enumerate() {
                if skip_distinguished && self.system.is_distinguished(j) {
                    continue;
                }
                for t in (w..=level).rev() {
                    ways[t] = ways[t].saturating_add(ways[t - w]);
                }
            }
            ways[level]
        };
        if self.constrained {
            count(false) - count(true)
        } else {
            count(false)
        }
    }

    fn run_level(&self, level: usize) -> LevelOutcome {
        if level == 0 {
            let mut out = LevelOutcome::default();
            if !self.constrained {
                self.leaf(&[], &bitset(0), &bitset(0), &mut out);
            }
            return out;
        }
        (0..self.system.ncols())
            .into_par_iter()
            .map(|first| {
                let mut out = LevelOutcome::default();
                let w = self.weights[first];
                if w <= level {
                    let mut chosen = vec![first];
                    let s = &self.signs[first];
                    self.walk(first + 1, level - w, &mut chosen, s.pos.clone(), s.neg.clone(), &mut out);
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .fold(LevelOutcome::default(), LevelOutcome::merge)
    }

    fn walk(
        &self,
        start: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        pos: Vec<u64>,
        neg: Vec<u64>,
        out: &mut LevelOutcome,
    ) {
        if remaining == 0 {
            if self.constrained && !chosen.iter().any(|&j| self.system.is_distinguished(j)) {
                return;
            }
            self.leaf(chosen, &pos, &neg, out);
            return;
        }
        if self.constrained
            && !chosen.iter().any(|&j| self.system.is_distinguished(j))
            && self.last_distinguished.is_none_or(|last| last < start)
        {
            return;
        }
        for j in start..self.system.ncols() {
            let w = self.weights[j];
            if w > remaining {
                continue;
            }
            let mut p = pos.clone();
            let mut n = neg.clone();
            or_into(&mut p, &self.signs[j].pos);
            or_into(&mut n, &self.signs[j].neg);
            chosen.push(j);
            self.walk(j + 1, remaining - w, chosen, p, n, out);
            chosen.pop();
        }
    }

    fn leaf(&self, support: &[usize], pos: &[u64], neg: &[u64], out: &mut LevelOutcome) {
        out.explored += 1;
        let covered = self.system.nrows() == 0
            || (covers(pos, &self.need_pos) && covers(neg, &self.need_neg));
        if !covered {
            out.pruned += 1;
            return;
        }
        if let Some(solution) = solve_on_support(self.system, support) {
            out.witnesses.push(solution);
        }
    }
}

/// Exact solution of `system` that is strictly positive on `support` and zero
/// elsewhere, if one exists.
pub fn solve_on_support(system: &LinearSystem, support: &[usize]) -> Option<SupportSolution> {
    let sub: Vec<Vec<Scalar>> = system
        .matrix
        .iter()
        .map(|row| support.iter().map(|&j| row[j].clone()).collect())
        .collect();
    let k = support.len();
    let (values, unique) = match linalg::solve(&sub, &system.rhs, k) {
        Solution::Inconsistent => return None,
        Solution::Unique(u) => {
            if !u.iter().all(Signed::is_positive) {
                return None;
            }
            (u, true)
        }
        Solution::Underdetermined { .. } => (interior_point(&sub, &system.rhs)?, false),
    };
    Some(package(system, support.to_vec(), values, unique))
}

/// A point with every coordinate positive on `{A u = b, u ≥ 0}`, found by
/// maximizing a uniform lower bound `t ≤ 1`: `u = w + t·1`, `w ≥ 0`.
fn interior_point(sub: &[Vec<Scalar>], rhs: &[Scalar]) -> Option<Vec<Scalar>> {
    let k = sub.first().map_or(0, Vec::len);
    let mut matrix = Vec::with_capacity(sub.len() + 1);
    for row in sub {
        let mut r = row.clone();
        let row_sum = row.iter().fold(Scalar::zero(), |acc, v| acc + v);
        r.push(row_sum);
        r.push(Scalar::zero());
        matrix.push(r);
    }
    let mut cap = vec![Scalar::zero(); k + 2];
    cap[k] = Scalar::one();
    cap[k + 1] = Scalar::one();
    matrix.push(cap);
    let mut b = rhs.to_vec();
    b.push(Scalar::one());
    let mut objective = vec![Scalar::zero(); k + 2];
    objective[k] = -Scalar::one();
    let result = lp::minimize(&LpProblem::new(objective, matrix, b));
    let point = result.point?;
    let t = &point[k];
    if !t.is_positive() {
        return None;
    }
    Some(point[..k].iter().map(|w| w + t).collect())
}

fn package(system: &LinearSystem, support: Vec<usize>, values: Vec<Scalar>, unique: bool) -> SupportSolution {
    let mut dense = vec![Scalar::zero(); system.ncols()];
    for (&j, v) in support.iter().zip(&values) {
        dense[j] = v.clone();
    }
    let polynomial = system.assemble(&dense);
    SupportSolution {
        l0: polynomial.term_count(),
        l1: polynomial.coeff_sum(),
        polynomial,
        support,
        values,
        unique,
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Internal(format!("worker pool: {e}")))
}

/// Smallest support carrying an exact nonnegative solution.
///
/// With `degree_constrained`, supports must contain a distinguished column
/// (reduced systems carry the degree in their fixed terms instead). With
/// `enumerate_all`, every witness at the minimal level is reported, otherwise
/// only the first in coefficient order.
pub fn min_l0(
    system: &LinearSystem,
    degree_constrained: bool,
    enumerate_all: bool,
    config: &SearchConfig,
) -> Result<SearchReport> {
    let ctx = Context::new(system, degree_constrained);
    let fixed = system.fixed.len();
    let total_weight: usize = ctx.weights.iter().sum();
    let pool = pool(config.workers)?;

    let mut report = SearchReport {
        min_l0: None,
        witnesses: Vec::new(),
        nodes_explored: 0,
        prunes_by_certificate: 0,
    };
    let mut budget_used: u128 = 0;
    for level in 0..=total_weight {
        if let Some(max) = config.max_support {
            if level + fixed > max {
                return Err(Error::BudgetExceeded(format!(
                    "no solution with at most {max} terms (explored {} supports)",
                    report.nodes_explored
                )));
            }
        }
        budget_used = budget_used.saturating_add(ctx.count_level(level));
        if budget_used > config.max_combinations as u128 {
            return Err(Error::BudgetExceeded(format!(
                "level {} would bring the support count to {budget_used}, above the limit of {}",
                level + fixed,
                config.max_combinations
            )));
        }
        let outcome = pool.install(|| ctx.run_level(level));
        report.nodes_explored += outcome.explored;
        report.prunes_by_certificate += outcome.pruned;
        if !outcome.witnesses.is_empty() {
            let mut witnesses = outcome.witnesses;
            sort_witnesses(&mut witnesses, system.ncols());
            if !enumerate_all {
                witnesses.truncate(1);
            }
            report.min_l0 = Some(level + fixed);
            report.witnesses = witnesses;
            return Ok(report);
        }
    }
    Ok(report)
}

/// Descending lexicographic order on full coefficient vectors.
fn sort_witnesses(witnesses: &mut [SupportSolution], ncols: usize) {
    witnesses.sort_by_cached_key(|w| std::cmp::Reverse(w.dense(ncols)));
}

fn sort_polynomials(polys: &mut [Polynomial]) {
    polys.sort_by_cached_key(|p| {
        std::cmp::Reverse(
            p.terms()
                .rev()
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect::<Vec<_>>(),
        )
    });
}

/// All sharp polynomials of odd degree `d` in two variables, i.e. nonnegative,
/// equal to 1 on `x + y = 1`, with exactly `(d+3)/2` terms. Uniqueness holds
/// when the list is just the invariant polynomial and its swap.
pub fn uniqueness_test(d: u32, config: &SearchConfig) -> Result<Vec<Polynomial>> {
    if d.is_even() || d == 0 {
        return Err(Error::InvalidParameter(format!("uniqueness is posed for odd d (got {d})")));
    }
    let reduced = system::reduce_support(&system::build_homogenized(2, d, false)?)?;
    let report = min_l0(&reduced, false, true, config)?;
    let expected = sharp_bound(2, d);
    match report.min_l0 {
        Some(n) if n == expected => {}
        other => {
            return Err(Error::Internal(format!(
                "reduced degree-{d} system has minimum {other:?}, expected {expected}"
            )))
        }
    }
    let mut polys: Vec<Polynomial> = report.witnesses.into_iter().map(|w| w.polynomial).collect();
    sort_polynomials(&mut polys);
    Ok(polys)
}

/// Minimum number of monomials of a symmetric degree-`d` solution, with all
/// minimizing supports.
pub fn symmetric_min_terms(d: u32, config: &SearchConfig) -> Result<(usize, Vec<SupportSolution>)> {
    let system = system::build_symmetric(d)?;
    let report = min_l0(&system, true, true, config)?;
    let count = report
        .min_l0
        .ok_or_else(|| Error::Internal(format!("symmetric degree-{d} system has no solution")))?;
    Ok((count, report.witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use crate::system::build_homogenized;

    fn cfg() -> SearchConfig {
        SearchConfig::default().with_workers(2)
    }

    fn dense_ints(w: &SupportSolution, ncols: usize) -> Vec<i64> {
        w.dense(ncols)
            .iter()
            .map(|v| v.to_integer().try_into().unwrap())
            .collect()
    }

    #[test]
    fn sharp_bounds() {
        assert_eq!(sharp_bound(2, 7), 5);
        assert_eq!(sharp_bound(2, 4), 4);
        assert_eq!(sharp_bound(3, 2), 5);
        assert_eq!(sharp_bound(2, 1), 2);
    }

    #[test]
    fn quadratic_census() {
        let s = build_homogenized(2, 2, false).unwrap();
        let r = min_l0(&s, true, true, &cfg()).unwrap();
        assert_eq!(r.min_l0, Some(3));
        let got: Vec<Vec<i64>> = r.witnesses.iter().map(|w| dense_ints(w, 5)).collect();
        assert_eq!(got, vec![vec![1, 0, 0, 1, 1], vec![0, 1, 1, 1, 0], vec![0, 0, 1, 2, 1]]);

        let r = min_l0(&s, false, true, &cfg()).unwrap();
        assert_eq!(r.min_l0, Some(2));
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(dense_ints(&r.witnesses[0], 5), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn cubic_witness() {
        let s = build_homogenized(2, 3, false).unwrap();
        let r = min_l0(&s, true, true, &cfg()).unwrap();
        assert_eq!(r.min_l0, Some(3));
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(dense_ints(&r.witnesses[0], 9), vec![0, 0, 0, 3, 0, 1, 0, 0, 1]);
    }

    #[test]
    fn infeasible_system_has_no_minimum() {
        let mut s = build_homogenized(2, 1, false).unwrap();
        s.rhs = vec![int(-1), int(1)];
        let r = min_l0(&s, false, true, &cfg()).unwrap();
        assert_eq!(r.min_l0, None);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn budgets_are_enforced() {
        let s = build_homogenized(2, 3, false).unwrap();
        let tight = SearchConfig {
            max_support: Some(2),
            ..cfg()
        };
        assert!(matches!(min_l0(&s, true, true, &tight), Err(Error::BudgetExceeded(_))));
        let few = SearchConfig {
            max_combinations: 10,
            ..cfg()
        };
        assert!(matches!(min_l0(&s, true, true, &few), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn level_counts_match_enumeration() {
        let s = build_homogenized(2, 3, false).unwrap();
        let ctx = Context::new(&s, true);
        for level in 1..=4 {
            assert_eq!(ctx.count_level(level) as u64, ctx.run_level(level).explored);
        }
        let sym = system::build_symmetric(5).unwrap();
        let ctx = Context::new(&sym, true);
        for level in 1..=5 {
            assert_eq!(ctx.count_level(level) as u64, ctx.run_level(level).explored);
        }
    }

    #[test]
    fn dependent_supports_get_an_interior_point() {
        // x + y + x^2 + xy + y^2 columns 0, 1, 2, 3, 4 of the quadratic system
        // are dependent: the solution set on them is a polygon.
        let s = build_homogenized(2, 2, false).unwrap();
        let w = solve_on_support(&s, &[0, 1, 2, 3, 4]).unwrap();
        assert!(!w.unique);
        assert!(w.values.iter().all(Signed::is_positive));
        assert!(s.is_solution(&w.dense(5)));
    }

    #[test]
    fn small_uniqueness_cases() {
        assert_eq!(uniqueness_test(1, &cfg()).unwrap(), vec![Polynomial::linear_sum(2)]);
        let p3 = Polynomial::from_xy_int(&[(3, 0, 1), (1, 1, 3), (0, 3, 1)]);
        assert_eq!(uniqueness_test(3, &cfg()).unwrap(), vec![p3]);
        assert!(uniqueness_test(4, &cfg()).is_err());
    }

    #[test]
    fn symmetric_degree_one() {
        let (count, witnesses) = symmetric_min_terms(1, &cfg()).unwrap();
        assert_eq!(count, 2);
        assert_eq!(witnesses[0].polynomial, Polynomial::linear_sum(2));
    }
}
