//! Directed Newton diagram of `q = (p − 1) / (x + y − 1)`.
//!
//! Each lattice point `(a, b)` is labeled by the sign of the coefficient of
//! `x^a y^b` in `q`. A positive point sends arrows to `(a+1, b)` and
//! `(a, b+1)`; a negative point receives arrows from them. A sink is a point
//! with at least one arrow, all incoming. At a sink the coefficient of
//! `x^a y^b` in `p` is a sum of positive contributions, so `p` has at least as
//! many terms as the diagram has sinks.
//!
//! The diagram's domain is every point touched by an arrow together with every
//! point carrying a nonzero coefficient; zero-labeled points can be sinks.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};

pub type Point = (u32, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    P,
    N,
    Z,
}

impl Label {
    pub fn as_char(self) -> char {
        match self {
            Label::P => 'P',
            Label::N => 'N',
            Label::Z => 'Z',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonGraph {
    pub quotient: Polynomial,
    pub labels: BTreeMap<Point, Label>,
    /// `(from, to)`.
    pub arrows: BTreeSet<(Point, Point)>,
    pub sinks: BTreeSet<Point>,
    pub sources: BTreeSet<Point>,
}

fn point_of(m: &Monomial) -> Point {
    (m.exponents()[0], m.exponents()[1])
}

/// Builds the diagram of a two-variable `p` with `p ≡ 1` on `x + y = 1`.
pub fn build_graph(p: &Polynomial) -> Result<NewtonGraph> {
    if p.nvars() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            actual: p.nvars(),
        });
    }
    let div = p.divide_by_affine();
    if !div.is_one_on_hyperplane() {
        return Err(Error::NotOneOnHyperplane(div.remainder.render()));
    }
    let q = div.quotient;

    let mut labels = BTreeMap::new();
    let mut arrows = BTreeSet::new();
    for (m, c) in q.terms() {
        let (a, b) = point_of(m);
        if c.is_positive() {
            labels.insert((a, b), Label::P);
            arrows.insert(((a, b), (a + 1, b)));
            arrows.insert(((a, b), (a, b + 1)));
        } else {
            labels.insert((a, b), Label::N);
            arrows.insert(((a + 1, b), (a, b)));
            arrows.insert(((a, b + 1), (a, b)));
        }
    }
    for &(from, to) in &arrows {
        labels.entry(from).or_insert(Label::Z);
        labels.entry(to).or_insert(Label::Z);
    }

    let mut incoming: BTreeMap<Point, usize> = BTreeMap::new();
    let mut outgoing: BTreeMap<Point, usize> = BTreeMap::new();
    for &(from, to) in &arrows {
        *outgoing.entry(from).or_default() += 1;
        *incoming.entry(to).or_default() += 1;
    }
    let mut sinks = BTreeSet::new();
    let mut sources = BTreeSet::new();
    for &pt in labels.keys() {
        let inc = incoming.get(&pt).copied().unwrap_or(0);
        let out = outgoing.get(&pt).copied().unwrap_or(0);
        if inc > 0 && out == 0 {
            sinks.insert(pt);
        }
        if out > 0 && inc == 0 {
            sources.insert(pt);
        }
    }
    Ok(NewtonGraph {
        quotient: q,
        labels,
        arrows,
        sinks,
        sources,
    })
}

impl NewtonGraph {
    /// Graphviz text, one node or edge per line.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph newton {\n");
        for (&(a, b), label) in &self.labels {
            let shape = if self.sinks.contains(&(a, b)) {
                "doublecircle"
            } else {
                "circle"
            };
            let _ = writeln!(
                out,
                "  \"{a},{b}\" [label=\"{}\", shape={shape}, pos=\"{a},{b}!\"];",
                label.as_char()
            );
        }
        for ((a, b), (c, d)) in &self.arrows {
            let _ = writeln!(out, "  \"{a},{b}\" -> \"{c},{d}\";");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SinkCertificate {
    pub sinks: usize,
    pub terms: usize,
    pub holds: bool,
}

/// `term_count(p) ≥ #sinks`. A failure on a valid input is an internal error.
pub fn sink_certificate(p: &Polynomial) -> Result<SinkCertificate> {
    let graph = build_graph(p)?;
    let cert = SinkCertificate {
        sinks: graph.sinks.len(),
        terms: p.term_count(),
        holds: p.term_count() >= graph.sinks.len(),
    };
    if !cert.holds {
        return Err(Error::Internal(format!(
            "sink bound violated: {} sinks but {} terms in {p}",
            cert.sinks, cert.terms
        )));
    }
    Ok(cert)
}

/// One collapse: replace `c·m·s(x)` inside the polynomial by `c·m`.
fn collapse(p: &Polynomial, m: &Monomial, c: &Scalar) -> Polynomial {
    let n = p.nvars();
    let piece = Polynomial::term(m.clone(), c.clone());
    p - &(&piece * &Polynomial::linear_sum(n)) + piece
}

/// Candidate collapses at `p`: for every monomial `m` with all `m·x_j`
/// present, either the largest amount or the amount that brings the
/// coefficient of `m` to its value in `target`.
fn moves(p: &Polynomial, target: &Polynomial) -> Vec<(Monomial, Scalar)> {
    let n = p.nvars();
    let mut candidates: BTreeSet<Monomial> = BTreeSet::new();
    for (m, _) in p.terms() {
        for j in 0..n {
            if m.exponents()[j] > 0 {
                candidates.insert(m.with_exponent(j, m.exponents()[j] - 1));
            }
        }
    }
    let mut out = Vec::new();
    for m in candidates {
        let available = (0..n)
            .map(|j| p.coefficient(&m.mul(&Monomial::var(n, j))))
            .min()
            .expect("n >= 1");
        if !available.is_positive() {
            continue;
        }
        let missing = target.coefficient(&m) - p.coefficient(&m);
        if missing.is_positive() && missing < available {
            out.push((m.clone(), missing));
        }
        out.push((m, available));
    }
    out
}

/// Sequence of polynomials leading from `start` to `target` by collapses
/// `c·m·s(x) → c·m`, each intermediate nonnegative and equal to 1 on the
/// hyperplane. The start is not repeated; an empty trace means
/// `start == target`. Breadth-first, so traces are as short as possible.
pub fn dehomogenize_trace(
    start: &Polynomial,
    target: &Polynomial,
    node_budget: usize,
) -> Result<Vec<Polynomial>> {
    if !start.is_homogeneous() {
        return Err(Error::InvalidParameter("trace start must be homogeneous".into()));
    }
    if start.degree() != target.degree() || start.nvars() != target.nvars() {
        return Err(Error::InvalidParameter(
            "trace endpoints must share degree and variables".into(),
        ));
    }
    for (name, p) in [("start", start), ("target", target)] {
        let div = p.divide_by_affine();
        if !div.is_one_on_hyperplane() {
            return Err(Error::NotOneOnHyperplane(format!("{name}: {}", div.remainder.render())));
        }
    }
    if start == target {
        return Ok(Vec::new());
    }

    let key = |p: &Polynomial| -> String {
        p.terms()
            .map(|(m, c)| format!("{m}:{}", scalar::to_fraction_string(c)))
            .collect::<Vec<_>>()
            .join(",")
    };
    let mut parent: Vec<(Polynomial, Option<usize>)> = vec![(start.clone(), None)];
    let mut seen: HashSet<String> = HashSet::from([key(start)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let current = parent[idx].0.clone();
        for (m, c) in moves(&current, target) {
            let next = collapse(&current, &m, &c);
            if !next.is_nonnegative() || !seen.insert(key(&next)) {
                continue;
            }
            let reached = next == *target;
            parent.push((next, Some(idx)));
            let at = parent.len() - 1;
            if reached {
                let mut trace = Vec::new();
                let mut cursor = Some(at);
                while let Some(i) = cursor {
                    if i == 0 {
                        break;
                    }
                    trace.push(parent[i].0.clone());
                    cursor = parent[i].1;
                }
                trace.reverse();
                return Ok(trace);
            }
            if parent.len() >= node_budget {
                return Err(Error::BudgetExceeded(format!(
                    "no trace within {node_budget} polynomials"
                )));
            }
            queue.push_back(at);
        }
    }
    Err(Error::BudgetExceeded("no collapse sequence reaches the target".into()))
}

/// Terms of `p` that never vanish at a sink; used by reports.
pub fn sink_terms(graph: &NewtonGraph, p: &Polynomial) -> Vec<(Point, Scalar)> {
    graph
        .sinks
        .iter()
        .map(|&(a, b)| (( a, b), p.coefficient(&Monomial::xy(a, b))))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}
