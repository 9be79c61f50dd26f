//! Linear systems whose nonnegative solutions are monomial sphere maps.
//!
//! Four flavors are built here:
//!
//! * **homogenized**: one unknown per monomial `x^α` with `1 ≤ |α| ≤ d`
//!   (optionally `|α| = 0`), one equation per degree-`d` monomial `x^β`,
//!   coming from `Σ c_α x^α s(x)^{d−|α|} = s(x)^d`. All entries are
//!   nonnegative integers and the right-hand side holds multinomial
//!   coefficients.
//! * **eliminated**: substitute `x_n = 1 − (x_1 + … + x_{n−1})` and equate
//!   every coefficient of the result with the constant polynomial 1.
//! * **symmetric**: two variables, one unknown `c[a, b]` per symmetric basis
//!   polynomial `(xy)^a (x^b + y^b)` (or `(xy)^a` when `b = 0`).
//! * **reduced**: the odd-degree homogenized system after fixing the
//!   coefficients a minimal solution is known to have (`x^d`, `y^d` pinned to
//!   one, pure powers below `d` and mixed top-degree terms removed).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SystemKind {
    Homogenized,
    Eliminated,
    Symmetric,
    Reduced,
}

impl SystemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SystemKind::Homogenized => "homogenized",
            SystemKind::Eliminated => "eliminated",
            SystemKind::Symmetric => "symmetric",
            SystemKind::Reduced => "reduced",
        }
    }
}

impl std::str::FromStr for SystemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "homogenized" => Ok(SystemKind::Homogenized),
            "eliminated" => Ok(SystemKind::Eliminated),
            "symmetric" => Ok(SystemKind::Symmetric),
            "reduced" => Ok(SystemKind::Reduced),
            other => Err(Error::format("kind", format!("unknown system kind {other:?}"))),
        }
    }
}

/// `(xy)^a (x^b + y^b)` for `b > 0`, `(xy)^a` for `b = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetricBasisElement {
    pub a: u32,
    pub b: u32,
}

impl SymmetricBasisElement {
    pub fn new(a: u32, b: u32) -> Self {
        SymmetricBasisElement { a, b }
    }

    pub fn degree(self) -> u32 {
        2 * self.a + self.b
    }

    /// Number of monomials contributed.
    pub fn weight(self) -> usize {
        if self.b == 0 {
            1
        } else {
            2
        }
    }

    pub fn polynomial(self) -> Polynomial {
        if self.b == 0 {
            Polynomial::from_xy_int(&[(self.a, self.a, 1)])
        } else {
            Polynomial::from_xy_int(&[(self.a + self.b, self.a, 1), (self.a, self.a + self.b, 1)])
        }
    }
}

impl fmt::Display for SymmetricBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c[{},{}]", self.a, self.b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Column {
    Monomial(Monomial),
    Symmetric(SymmetricBasisElement),
}

impl Column {
    pub fn polynomial(&self) -> Polynomial {
        match self {
            Column::Monomial(m) => Polynomial::term(m.clone(), Scalar::one()),
            Column::Symmetric(e) => e.polynomial(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Column::Monomial(m) => m.degree(),
            Column::Symmetric(e) => e.degree(),
        }
    }

    /// Monomials contributed to the assembled polynomial.
    pub fn weight(&self) -> usize {
        match self {
            Column::Monomial(_) => 1,
            Column::Symmetric(e) => e.weight(),
        }
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Monomial(m) => write!(f, "{m}"),
            Column::Symmetric(e) => write!(f, "{e}"),
        }
    }
}

/// Exact system `T·u = v` together with the meaning of each unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub kind: SystemKind,
    pub n: usize,
    pub d: u32,
    pub columns: Vec<Column>,
    /// Monomial whose coefficient each equation matches.
    pub row_labels: Vec<Monomial>,
    pub matrix: Vec<Vec<Scalar>>,
    pub rhs: Vec<Scalar>,
    /// Indices of the top-degree columns.
    pub distinguished: Vec<usize>,
    /// Terms fixed outside the unknowns (reduced systems only).
    pub fixed: Vec<(Monomial, Scalar)>,
}

impl LinearSystem {
    pub fn nrows(&self) -> usize {
        self.matrix.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.matrix.iter().map(|row| row[j].clone()).collect()
    }

    pub fn is_distinguished(&self, j: usize) -> bool {
        self.distinguished.binary_search(&j).is_ok()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    /// `T·u`.
    pub fn apply(&self, u: &[Scalar]) -> Vec<Scalar> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(u)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Scalar::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }

    pub fn is_solution(&self, u: &[Scalar]) -> bool {
        u.len() == self.ncols() && self.apply(u) == self.rhs
    }

    /// Polynomial `Σ u_j · column_j + fixed terms`.
    pub fn assemble(&self, u: &[Scalar]) -> Polynomial {
        let nvars = self.polynomial_nvars();
        let mut p = Polynomial::from_terms(nvars, self.fixed.iter().cloned())
            .expect("fixed terms share the system's variables");
        for (col, value) in self.columns.iter().zip(u) {
            if !value.is_zero() {
                p = p + col.polynomial().scale(value);
            }
        }
        p
    }

    /// Coefficient vector of `p` in this system's unknowns, if `p` lies in
    /// the span of the columns (after removing fixed terms).
    pub fn coordinates(&self, p: &Polynomial) -> Option<Vec<Scalar>> {
        let mut rest = p.clone();
        for (m, c) in &self.fixed {
            rest = rest - Polynomial::term(m.clone(), c.clone());
        }
        let mut u = Vec::with_capacity(self.ncols());
        for col in &self.columns {
            let value = match col {
                Column::Monomial(m) => rest.coefficient(m),
                Column::Symmetric(e) => {
                    let lead = if e.b == 0 {
                        Monomial::xy(e.a, e.a)
                    } else {
                        Monomial::xy(e.a + e.b, e.a)
                    };
                    rest.coefficient(&lead)
                }
            };
            if !value.is_zero() {
                rest = rest - col.polynomial().scale(&value);
            }
            u.push(value);
        }
        rest.is_zero().then_some(u)
    }

    fn polynomial_nvars(&self) -> usize {
        match self.kind {
            SystemKind::Symmetric | SystemKind::Reduced => 2,
            _ => self.n,
        }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `m! / (k_1! ⋯ k_n!)` with `m = Σ k_i`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let total: u32 = parts.iter().sum();
    let denom = parts.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
    let (q, r) = factorial(total).div_rem(&denom);
    debug_assert!(r.is_zero());
    q
}

/// Homogenized system for monomial maps of degree at most `d` from `C^n`.
pub fn build_homogenized(n: usize, d: u32, include_constant: bool) -> Result<LinearSystem> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidParameter(format!(
            "homogenized system needs n >= 2 and d >= 1 (got n={n}, d={d})"
        )));
    }
    let low = if include_constant { 0 } else { 1 };
    let columns = Monomial::up_to_degree(n, low, d);
    let rows = Monomial::of_degree(n, d);
    let matrix = rows
        .iter()
        .map(|beta| {
            columns
                .iter()
                .map(|alpha| match beta.checked_div(alpha) {
                    Some(gap) => scalar::from_bigint(multinomial(gap.exponents())),
                    None => Scalar::zero(),
                })
                .collect()
        })
        .collect();
    let rhs = rows
        .iter()
        .map(|beta| scalar::from_bigint(multinomial(beta.exponents())))
        .collect();
    let distinguished = top_degree_indices(columns.iter().map(Monomial::degree), d);
    Ok(LinearSystem {
        kind: SystemKind::Homogenized,
        n,
        d,
        columns: columns.into_iter().map(Column::Monomial).collect(),
        row_labels: rows,
        matrix,
        rhs,
        distinguished,
        fixed: Vec::new(),
    })
}

fn top_degree_indices(degrees: impl Iterator<Item = u32>, d: u32) -> Vec<usize> {
    degrees
        .enumerate()
        .filter(|&(_, deg)| deg == d)
        .map(|(j, _)| j)
        .collect()
}

/// Eliminated system: `x_n ← 1 − Σ_{j<n} x_j`, rows indexed by every monomial
/// `t^μ` (`|μ| ≤ d`) in the remaining `n − 1` variables, right-hand side `(1, 0, …, 0)`.
pub fn build_eliminated(n: usize, d: u32) -> Result<LinearSystem> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidParameter(format!(
            "eliminated system needs n >= 2 and d >= 1 (got n={n}, d={d})"
        )));
    }
    let columns = Monomial::up_to_degree(n, 1, d);
    let last = n - 1;
    let mut replacement = Polynomial::one(n);
    for j in 0..last {
        replacement = replacement - Polynomial::var(n, j);
    }
    let substituted: Vec<Polynomial> = columns
        .iter()
        .map(|alpha| Polynomial::term(alpha.clone(), Scalar::one()).substitute(last, &replacement))
        .collect();
    let rows = Monomial::up_to_degree(n - 1, 0, d);
    let matrix = rows
        .iter()
        .map(|mu| {
            let mut full = mu.exponents().to_vec();
            full.push(0);
            let full = Monomial::new(full);
            substituted.iter().map(|p| p.coefficient(&full)).collect()
        })
        .collect();
    let mut rhs = vec![Scalar::zero(); rows.len()];
    rhs[0] = Scalar::one();
    let distinguished = top_degree_indices(columns.iter().map(Monomial::degree), d);
    Ok(LinearSystem {
        kind: SystemKind::Eliminated,
        n,
        d,
        columns: columns.into_iter().map(Column::Monomial).collect(),
        row_labels: rows,
        matrix,
        rhs,
        distinguished,
        fixed: Vec::new(),
    })
}

/// Basis `(xy)^a (x^b + y^b)` with `1 ≤ 2a + b ≤ d`, ordered by degree then `a`.
pub fn symmetric_basis(d: u32) -> Vec<SymmetricBasisElement> {
    let mut basis = Vec::new();
    for degree in 1..=d {
        for a in 0..=degree / 2 {
            basis.push(SymmetricBasisElement::new(a, degree - 2 * a));
        }
    }
    basis
}

/// Symmetric-basis system for odd `d`: homogenize `Σ c[a,b] (xy)^a (x^b + y^b)`
/// to degree `d` and match the `d + 1` coefficients of `(x + y)^d`.
pub fn build_symmetric(d: u32) -> Result<LinearSystem> {
    if d == 0 || d.is_even() {
        return Err(Error::InvalidParameter(format!(
            "symmetric system is posed for odd d >= 1 (got {d})"
        )));
    }
    let basis = symmetric_basis(d);
    let rows = Monomial::of_degree(2, d);
    let homogenized: Vec<Polynomial> = basis
        .iter()
        .map(|e| e.polynomial().homogenize(d).expect("basis degree is at most d"))
        .collect();
    let matrix = rows
        .iter()
        .map(|beta| homogenized.iter().map(|p| p.coefficient(beta)).collect())
        .collect();
    let rhs = rows
        .iter()
        .map(|beta| scalar::from_bigint(multinomial(beta.exponents())))
        .collect();
    let distinguished = top_degree_indices(basis.iter().map(|e| e.degree()), d);
    Ok(LinearSystem {
        kind: SystemKind::Symmetric,
        n: 2,
        d,
        columns: basis.into_iter().map(Column::Symmetric).collect(),
        row_labels: rows,
        matrix,
        rhs,
        distinguished,
        fixed: Vec::new(),
    })
}

/// Reduced system for a two-variable homogenized system of odd degree.
///
/// A minimal-support solution of odd degree `d` has `x^d` and `y^d` with
/// coefficient one, no pure powers of lower degree and no mixed terms of
/// degree `d`. Pinning and deleting those unknowns leaves the mixed monomials
/// of degree `2 … d−1` and the equation
/// `Σ a_α x^α (x+y)^{d−|α|} = (x+y)^d − x^d − y^d` on the `d − 1` mixed
/// degree-`d` coefficients.
pub fn reduce_support(system: &LinearSystem) -> Result<LinearSystem> {
    if system.kind != SystemKind::Homogenized || system.n != 2 {
        return Err(Error::WrongSystemKind(format!(
            "reduction needs a two-variable homogenized system, got {} with n={}",
            system.kind.as_str(),
            system.n
        )));
    }
    let d = system.d;
    if d.is_even() {
        return Err(Error::InvalidParameter(format!(
            "reduction is defined for odd d (got {d})"
        )));
    }
    let x_d = Monomial::xy(d, 0);
    let y_d = Monomial::xy(0, d);
    let index_of = |m: &Monomial| {
        system
            .columns
            .iter()
            .position(|c| matches!(c, Column::Monomial(cm) if cm == m))
            .ok_or_else(|| Error::Internal(format!("column {m} missing")))
    };
    let pinned = [index_of(&x_d)?, index_of(&y_d)?];

    let kept: Vec<usize> = system
        .columns
        .iter()
        .enumerate()
        .filter(|(_, c)| match c {
            Column::Monomial(m) => !m.is_pure_power() && m.degree() < d,
            Column::Symmetric(_) => false,
        })
        .map(|(j, _)| j)
        .collect();
    let kept_rows: Vec<usize> = system
        .row_labels
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_pure_power())
        .map(|(i, _)| i)
        .collect();

    let mut rhs = Vec::with_capacity(kept_rows.len());
    let mut matrix = Vec::with_capacity(kept_rows.len());
    for &i in &kept_rows {
        let row = &system.matrix[i];
        let moved = pinned.iter().fold(Scalar::zero(), |acc, &j| acc + &row[j]);
        rhs.push(&system.rhs[i] - moved);
        matrix.push(kept.iter().map(|&j| row[j].clone()).collect());
    }
    // The dropped rows (x^d, y^d) must now read 0 = 0 over the kept columns.
    for (i, label) in system.row_labels.iter().enumerate() {
        if kept_rows.contains(&i) {
            continue;
        }
        let moved = pinned.iter().fold(Scalar::zero(), |acc, &j| acc + &system.matrix[i][j]);
        let residual = &system.rhs[i] - moved;
        let touches = kept.iter().any(|&j| !system.matrix[i][j].is_zero());
        if !residual.is_zero() || touches {
            return Err(Error::Internal(format!("row {label} does not vanish after reduction")));
        }
    }

    Ok(LinearSystem {
        kind: SystemKind::Reduced,
        n: 2,
        d,
        columns: kept.iter().map(|&j| system.columns[j].clone()).collect(),
        row_labels: kept_rows.iter().map(|&i| system.row_labels[i].clone()).collect(),
        matrix,
        rhs,
        distinguished: Vec::new(),
        fixed: vec![(x_d, Scalar::one()), (y_d, Scalar::one())],
    })
}
