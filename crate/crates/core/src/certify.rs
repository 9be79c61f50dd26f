//! Self-contained checks on candidate sphere-map polynomials.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::Signed;

use crate::family::{tensor_on_top, TensorOp};
use crate::newton;
use crate::poly::Polynomial;
use crate::scalar;
use crate::search::sharp_bound;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// The exact values compared.
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub subject: Polynomial,
    pub checks: Vec<Check>,
    pub verdict: bool,
}

impl Certificate {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn verdict_str(&self) -> &'static str {
        if self.verdict {
            "pass"
        } else {
            "fail"
        }
    }
}

fn check(name: &str, pass: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail,
    }
}

/// Runs every applicable check on `p` viewed as a map from `C^n`. Failures
/// are recorded in the certificate, never raised.
pub fn verify_sharp(p: &Polynomial, n: usize) -> Certificate {
    let mut checks = Vec::new();
    let terms = p.term_count();
    let d = p.degree();

    let vars_ok = p.nvars() == n;
    checks.push(check(
        "variables",
        vars_ok,
        format!("nvars={} n={n}", p.nvars()),
    ));
    if !vars_ok {
        return finish(p, checks);
    }

    let division = p.divide_by_affine();
    let identity = division.is_one_on_hyperplane();
    checks.push(check(
        "hyperplane_identity",
        identity,
        format!("remainder={}", division.remainder.render()),
    ));

    let negative: Vec<String> = p
        .terms()
        .filter(|(_, c)| c.is_negative())
        .map(|(m, c)| format!("{}:{}", m.render(), scalar::to_fraction_string(c)))
        .collect();
    checks.push(check(
        "nonnegative",
        negative.is_empty(),
        if negative.is_empty() {
            "all coefficients >= 0".into()
        } else {
            format!("negative: {}", negative.join(", "))
        },
    ));

    checks.push(check("degree", d >= 1, format!("degree={d}")));

    let (bound_ok, bound_detail) = if n == 2 {
        (
            (d as i64) <= 2 * terms as i64 - 3,
            format!("d={d} <= 2N-3={}", 2 * terms as i64 - 3),
        )
    } else {
        let need = d as usize * (n - 1) + 1;
        (terms >= need, format!("N={terms} >= d(n-1)+1={need}"))
    };
    checks.push(check("degree_bound", bound_ok, bound_detail));

    let sharp = sharp_bound(n, d);
    let is_sharp = terms == sharp;
    checks.push(check(
        "sharp",
        is_sharp,
        format!("N={terms} sharp_bound={sharp}"),
    ));

    if n == 2 && d.is_odd() && is_sharp {
        let top = p.homogeneous_part(d);
        let expected = Polynomial::from_xy_int(&[(d, 0, 1), (0, d, 1)]);
        checks.push(check(
            "top_term_form",
            top == expected,
            format!("top={} expected={}", top.render(), expected.render()),
        ));
    }

    if n == 2 && identity {
        match newton::build_graph(p) {
            Ok(graph) => {
                let sinks = graph.sinks.len();
                checks.push(check(
                    "sink_certificate",
                    terms >= sinks,
                    format!("terms={terms} sinks={sinks}"),
                ));
            }
            Err(e) => checks.push(check("sink_certificate", false, e.to_string())),
        }
    }

    finish(p, checks)
}

fn finish(p: &Polynomial, checks: Vec<Check>) -> Certificate {
    let verdict = checks.iter().all(|c| c.pass);
    Certificate {
        subject: p.clone(),
        checks,
        verdict,
    }
}

/// Necessary condition on the target dimension of a target-minimal map:
/// rejects `1 < N < n` and `n < N < 2n − 2`.
pub fn gap_admissible(n: usize, target: usize) -> bool {
    let first = 1 < target && target < n;
    let second = n < target && target + 2 < 2 * n;
    !(first || second)
}

/// `n² − 2n + 2`, from which on every target dimension is reached.
pub fn census_threshold(n: usize) -> usize {
    n * n - 2 * n + 2
}

/// For each `N ≤ max_n`, a polynomial with exactly `N` terms obtained from
/// `s(x)` by `j` applications of `W` followed by `k` applications of `V` on the
/// top pure term (`N = n + j(n−1) + kn`), or `None`. Among the choices for
/// `N` the one of smallest degree is used, ties broken toward fewer `W`.
pub fn target_minimal_census(n: usize, max_n: usize) -> BTreeMap<usize, Option<Polynomial>> {
    let mut plans: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    if n >= 2 {
        for j in 0..=max_n {
            for k in 0..=max_n {
                let count = n + j * (n - 1) + k * n;
                if count > max_n {
                    break;
                }
                let better = match plans.get(&count) {
                    None => true,
                    Some(&(bj, bk)) => (j + k, j) < (bj + bk, bj),
                };
                if better {
                    plans.insert(count, (j, k));
                }
            }
        }
    }
    (1..=max_n)
        .map(|count| {
            let witness = plans.get(&count).and_then(|&(j, k)| {
                let mut p = Polynomial::linear_sum(n);
                for _ in 0..j {
                    p = tensor_on_top(&p, TensorOp::W).ok()?;
                }
                for _ in 0..k {
                    p = tensor_on_top(&p, TensorOp::V).ok()?;
                }
                Some(p)
            });
            (count, witness)
        })
        .collect()
}

/// Number of terms of `p` lying in top degree.
pub fn top_degree_terms(p: &Polynomial) -> usize {
    let d = p.degree();
    p.terms().filter(|(m, _)| m.degree() == d).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::invariant_poly;

    #[test]
    fn invariant_family_is_sharp() {
        for d in (1..=15).step_by(2) {
            let cert = verify_sharp(&invariant_poly(d), 2);
            assert!(cert.verdict, "d={d}: {:?}", cert.checks);
            assert_eq!(invariant_poly(d).term_count(), (d as usize + 3) / 2);
        }
    }

    #[test]
    fn eighteen_passes() {
        let p = Polynomial::from_xy_int(&[(7, 0, 1), (3, 3, 7), (3, 1, 7), (1, 3, 7), (0, 7, 1)]);
        let cert = verify_sharp(&p, 2);
        assert!(cert.verdict, "{:?}", cert.checks);
    }

    #[test]
    fn non_sharp_map_fails_only_sharpness() {
        let f = Polynomial::from_xy_int(&[(3, 0, 1), (0, 3, 1), (1, 1, 2), (4, 1, 1), (2, 2, 3), (1, 4, 1)]);
        let cert = verify_sharp(&f, 2);
        assert!(!cert.verdict);
        assert!(cert.check("hyperplane_identity").unwrap().pass);
        assert!(cert.check("nonnegative").unwrap().pass);
        assert!(!cert.check("sharp").unwrap().pass);
        assert_eq!(cert.check("sharp").unwrap().detail, "N=6 sharp_bound=4");
    }

    #[test]
    fn wrong_dimension_and_negative() {
        let cert = verify_sharp(&Polynomial::linear_sum(3), 2);
        assert!(!cert.verdict);
        let p2 = invariant_poly(2);
        let cert = verify_sharp(&p2, 2);
        assert!(!cert.check("nonnegative").unwrap().pass);
    }

    #[test]
    fn gaps() {
        assert!(!gap_admissible(3, 2));
        assert!(!gap_admissible(4, 5));
        assert!(gap_admissible(2, 3));
        assert!(gap_admissible(4, 6));
        assert!(gap_admissible(4, 4));
        assert!(gap_admissible(4, 1));
    }

    #[test]
    fn census_covers_threshold() {
        for n in 2..=4 {
            let census = target_minimal_census(n, 14);
            for (count, witness) in &census {
                if *count >= census_threshold(n) {
                    assert!(witness.is_some(), "n={n} N={count}");
                }
                if let Some(p) = witness {
                    assert_eq!(p.term_count(), *count);
                    assert!(p.divide_by_affine().is_one_on_hyperplane());
                    assert!(p.is_nonnegative());
                }
            }
        }
        assert!(target_minimal_census(3, 12)[&2].is_none());
    }
}
