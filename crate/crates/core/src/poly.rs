//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::scalar::{self, Scalar};

/// Finitely supported map from exponent vectors to nonzero rationals.
///
/// Terms are kept in graded-lex order and zero coefficients are never stored,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

/// `p = quotient · (s(x) − 1) + remainder`, where `s(x) = x_1 + … + x_n` and
/// the remainder does not involve the last variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineDivision {
    pub quotient: Polynomial,
    pub remainder: Polynomial,
}

impl AffineDivision {
    /// The remainder as a number, when `p` is constant on the hyperplane.
    pub fn constant_remainder(&self) -> Option<Scalar> {
        if self.remainder.degree() == 0 {
            Some(self.remainder.constant_term())
        } else {
            None
        }
    }

    /// `p ≡ 1` on `s(x) = 1`.
    pub fn is_one_on_hyperplane(&self) -> bool {
        self.constant_remainder().is_some_and(|r| r.is_one())
    }
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, value: Scalar) -> Self {
        Polynomial::term(Monomial::one(nvars), value)
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Scalar::one())
    }

    pub fn term(monomial: Monomial, coefficient: Scalar) -> Self {
        let mut p = Polynomial::zero(monomial.nvars());
        if !coefficient.is_zero() {
            p.terms.insert(monomial, coefficient);
        }
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Polynomial::term(Monomial::var(nvars, index), Scalar::one())
    }

    /// `s(x) = x_1 + … + x_n`.
    pub fn linear_sum(nvars: usize) -> Self {
        (0..nvars).fold(Polynomial::zero(nvars), |acc, i| acc + Polynomial::var(nvars, i))
    }

    /// Builds a polynomial, summing repeated monomials and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    actual: m.nvars(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Two-variable shorthand: `[(a, b, c)]` is `Σ c x^a y^b`.
    pub fn from_xy(terms: &[(u32, u32, Scalar)]) -> Self {
        let mut p = Polynomial::zero(2);
        for (a, b, c) in terms {
            p.add_term(Monomial::xy(*a, *b), c.clone());
        }
        p
    }

    /// Two-variable shorthand with integer coefficients.
    pub fn from_xy_int(terms: &[(u32, u32, i64)]) -> Self {
        let mut p = Polynomial::zero(2);
        for &(a, b, c) in terms {
            p.add_term(Monomial::xy(a, b), scalar::int(c));
        }
        p
    }

    pub(crate) fn add_term(&mut self, monomial: Monomial, coefficient: Scalar) {
        if coefficient.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Scalar {
        self.terms.get(monomial).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    /// L0 norm: number of stored terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Value at the all-ones point (the L1 norm when coefficients are nonnegative).
    pub fn coeff_sum(&self) -> Scalar {
        self.terms.values().fold(Scalar::zero(), |acc, c| acc + c)
    }

    /// Every stored coefficient is positive.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Terms of total degree exactly `degree`.
    pub fn homogeneous_part(&self, degree: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, factor: &Scalar) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * factor)).collect(),
        }
    }

    pub fn mul_monomial(&self, monomial: &Monomial, coefficient: &Scalar) -> Polynomial {
        if coefficient.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(monomial), c * coefficient))
                .collect(),
        }
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        for _ in 0..exponent {
            result = &result * self;
        }
        result
    }

    fn check_nvars(&self, other: &Polynomial) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different variable counts"
        );
    }

    /// Exact value at `point`.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                actual: point.len(),
            });
        }
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut value = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    value *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += value;
        }
        Ok(total)
    }

    /// `Σ c_α x^α s(x)^{d − |α|}`: homogeneous of degree `d`, and equal to
    /// `self` wherever `s(x) = 1`.
    pub fn homogenize(&self, degree: u32) -> Result<Polynomial> {
        if degree < self.degree() {
            return Err(Error::DegreeTooLow {
                target: degree,
                degree: self.degree(),
            });
        }
        let s = Polynomial::linear_sum(self.nvars);
        let mut powers = vec![Polynomial::one(self.nvars)];
        let mut result = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let k = (degree - m.degree()) as usize;
            while powers.len() <= k {
                let next = powers.last().expect("non-empty") * &s;
                powers.push(next);
            }
            result = result + powers[k].mul_monomial(m, c);
        }
        Ok(result)
    }

    /// Replaces variable `index` by `value` (a polynomial in the same variables).
    pub fn substitute(&self, index: usize, value: &Polynomial) -> Polynomial {
        self.check_nvars(value);
        let mut powers = vec![Polynomial::one(self.nvars)];
        let mut result = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[index] as usize;
            while powers.len() <= e {
                let next = powers.last().expect("non-empty") * value;
                powers.push(next);
            }
            result = result + powers[e].mul_monomial(&m.with_exponent(index, 0), c);
        }
        result
    }

    /// Divides by `s(x) − 1`.
    ///
    /// Writes the last variable as `x_n = w + 1 − (x_1 + … + x_{n−1})` with
    /// `w = s(x) − 1`, splits off the `w`-free part as the remainder and maps
    /// `w` back. The remainder is therefore a polynomial in `x_1 … x_{n−1}`;
    /// it is the constant `p(0, …, 0, 1)` exactly when `p` is constant on the
    /// hyperplane.
    pub fn divide_by_affine(&self) -> AffineDivision {
        let n = self.nvars;
        assert!(n >= 1, "division by s(x) − 1 needs at least one variable");
        let last = n - 1;
        let w = Polynomial::var(n, last);
        let mut shifted_last = w + Polynomial::one(n);
        for j in 0..last {
            shifted_last = shifted_last - Polynomial::var(n, j);
        }
        let in_w = self.substitute(last, &shifted_last);

        let mut remainder = Polynomial::zero(n);
        let mut quotient_in_w = Polynomial::zero(n);
        for (m, c) in in_w.terms {
            let e = m.exponents()[last];
            if e == 0 {
                remainder.add_term(m, c);
            } else {
                quotient_in_w.add_term(m.with_exponent(last, e - 1), c);
            }
        }
        let s_minus_one = Polynomial::linear_sum(n) - Polynomial::one(n);
        AffineDivision {
            quotient: quotient_in_w.substitute(last, &s_minus_one),
            remainder,
        }
    }

    /// Reverses the variable order (`p(y, x)` for two variables).
    pub fn swap_variables(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.reversed(), c.clone())).collect(),
        }
    }

    /// `(p(x, y) + p(y, x)) / 2`.
    pub fn symmetrize(&self) -> Result<Polynomial> {
        if self.nvars != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                actual: self.nvars,
            });
        }
        Ok((self + &self.swap_variables()).scale(&scalar::ratio(1, 2)))
    }

    /// Human-readable rendering in descending lexicographic order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut ordered: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        ordered.sort_by(|a, b| b.0.exponents().cmp(a.0.exponents()));
        let mut out = String::new();
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&scalar::display(&magnitude));
            } else if magnitude.is_one() {
                out.push_str(&m.render());
            } else {
                out.push_str(&scalar::display(&magnitude));
                out.push('*');
                out.push_str(&m.render());
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.check_nvars(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self.check_nvars(&rhs);
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_nvars(rhs);
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}
