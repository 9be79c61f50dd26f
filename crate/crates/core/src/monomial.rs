//! Exponent vectors and the graded-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `(e_1, …, e_n)` of the monomial `x_1^e_1 ⋯ x_n^e_n`.
///
/// Ordered graded-lexicographically: lower total degree first; within a
/// degree, larger exponents of earlier variables first. For two variables this
/// gives `x, y, x², xy, y², x³, …`, so the top-degree monomials of a basis
/// always form a trailing block.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    /// `x^a y^b`.
    pub fn xy(a: u32, b: u32) -> Self {
        Monomial(vec![a, b])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self` componentwise.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn with_exponent(&self, index: usize, exponent: u32) -> Monomial {
        let mut e = self.0.clone();
        e[index] = exponent;
        Monomial(e)
    }

    /// Reverses the variable order; for two variables this swaps `x` and `y`.
    pub fn reversed(&self) -> Monomial {
        Monomial(self.0.iter().rev().copied().collect())
    }

    /// Single variable `x_index^degree`?
    pub fn is_pure_power(&self) -> bool {
        self.0.iter().filter(|&&e| e > 0).count() <= 1
    }

    /// All monomials of exactly `degree` in `nvars` variables, in graded-lex order.
    pub fn of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn fill(prefix: &mut Vec<u32>, remaining: u32, slots: usize, out: &mut Vec<Monomial>) {
            if slots == 1 {
                prefix.push(remaining);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=remaining).rev() {
                prefix.push(e);
                fill(prefix, remaining - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if degree == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        fill(&mut Vec::with_capacity(nvars), degree, nvars, &mut out);
        out
    }

    /// All monomials with `low <= degree <= high`, graded-lex.
    pub fn up_to_degree(nvars: usize, low: u32, high: u32) -> Vec<Monomial> {
        (low..=high).flat_map(|k| Monomial::of_degree(nvars, k)).collect()
    }

    /// Human-readable form using `x, y` for two variables, `x1, …, xn` otherwise.
    pub fn render(&self) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let names: Vec<String> = match self.nvars() {
            2 => vec!["x".into(), "y".into()],
            1 => vec!["x".into()],
            n => (1..=n).map(|i| format!("x{i}")).collect(),
        };
        self.0
            .iter()
            .zip(&names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, name)| if e == 1 { name.clone() } else { format!("{name}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_matches_the_column_order_of_the_degree_three_system() {
        let got: Vec<String> = Monomial::up_to_degree(2, 1, 3).iter().map(|m| m.render()).collect();
        assert_eq!(
            got,
            ["x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y", "x*y^2", "y^3"]
        );
        let mut sorted = Monomial::up_to_degree(2, 0, 3);
        sorted.reverse();
        sorted.sort();
        assert_eq!(sorted, Monomial::up_to_degree(2, 0, 3));
    }

    #[test]
    fn counts_match_binomials() {
        assert_eq!(Monomial::of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::of_degree(4, 3).len(), 20);
        assert_eq!(Monomial::up_to_degree(2, 1, 7).len(), 35);
    }

    #[test]
    fn division() {
        let a = Monomial::xy(3, 1);
        assert_eq!(a.checked_div(&Monomial::xy(1, 1)), Some(Monomial::xy(2, 0)));
        assert_eq!(a.checked_div(&Monomial::xy(0, 2)), None);
    }
}
