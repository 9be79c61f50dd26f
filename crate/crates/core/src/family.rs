//! Closed-form families of polynomials equal to 1 on the hyperplane.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::scalar::{self, Scalar};

/// The group-invariant polynomial `p_d(x, y)`.
///
/// Computed from `q_0 = 2`, `q_1 = x`, `q_{k+1} = x q_k + y q_{k−1}` (the
/// power sums of the roots of `t² − x t − y`), then
/// `p_d = q_d + (−1)^{d+1} y^d`.
pub fn invariant_poly(d: u32) -> Polynomial {
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let mut prev = Polynomial::constant(2, scalar::int(2));
    let mut cur = x.clone();
    if d == 0 {
        cur = prev.clone();
    }
    for _ in 1..d {
        let next = &(&x * &cur) + &(&y * &prev);
        prev = cur;
        cur = next;
    }
    let sign = if d.is_odd() { 1 } else { -1 };
    cur + Polynomial::term(Monomial::xy(0, d), scalar::int(sign))
}

/// `c_k = (2r+1)(2r−k)! / (k!(2r+1−2k)!)` for `0 ≤ k ≤ r`, `d = 2r + 1`:
/// the coefficient of `x^{d−2k} y^k` in `p_d`.
pub fn invariant_coefficients(d: u32) -> Result<Vec<BigInt>> {
    if d.is_even() {
        return Err(Error::InvalidParameter(format!(
            "closed-form coefficients need odd d (got {d})"
        )));
    }
    let r = (d - 1) / 2;
    let fact = |n: u32| (1..=n).fold(BigInt::one(), |acc, k| acc * k);
    Ok((0..=r)
        .map(|k| {
            let num = BigInt::from(2 * r + 1) * fact(2 * r - k);
            let den = fact(k) * fact(2 * r + 1 - 2 * k);
            let (q, rem) = num.div_rem(&den);
            debug_assert!(rem.is_zero());
            q
        })
        .collect())
}

/// `Σ_k c_k x^{d−2k} y^k + y^d` from the closed-form coefficients.
pub fn invariant_from_closed_form(d: u32) -> Result<Polynomial> {
    let coeffs = invariant_coefficients(d)?;
    let mut terms: Vec<(Monomial, Scalar)> = coeffs
        .into_iter()
        .enumerate()
        .map(|(k, c)| (Monomial::xy(d - 2 * k as u32, k as u32), scalar::from_bigint(c)))
        .collect();
    terms.push((Monomial::xy(0, d), Scalar::one()));
    Polynomial::from_terms(2, terms)
}

/// Lucas numbers: `L_0 = 2`, `L_1 = 1`, `L_{k+1} = L_k + L_{k−1}`.
pub fn lucas(k: u32) -> BigInt {
    let (mut a, mut b) = (BigInt::from(2), BigInt::one());
    for _ in 0..k {
        let next = &a + &b;
        a = b;
        b = next;
    }
    a
}

/// `p_d(1, 1)` for odd `d`, checked against `L_d + 1`.
pub fn l1_closed_form(d: u32) -> Result<BigInt> {
    if d.is_even() {
        return Err(Error::InvalidParameter(format!(
            "coefficient-sum formula is stated for odd d (got {d})"
        )));
    }
    let sum = invariant_poly(d).coeff_sum();
    let expected: BigInt = lucas(d) + BigInt::from(1);
    if sum != scalar::from_bigint(expected.clone()) {
        return Err(Error::Internal(format!(
            "p_{d}(1,1) = {sum} but L_{d} + 1 = {expected}"
        )));
    }
    Ok(expected)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `p_d ≡ x^d + y^d (mod d)`: every coefficient of `p_d − x^d − y^d` is a
/// multiple of `d`. Holds exactly for `d = 1` and primes.
pub fn primality_congruence(d: u32) -> bool {
    let rest = invariant_poly(d)
        - Polynomial::from_xy_int(&[(d, 0, 1), (0, d, 1)]);
    let modulus = BigInt::from(d);
    let divisible = rest
        .terms()
        .all(|(_, c)| c.is_integer() && (c.numer() % &modulus).is_zero());
    divisible
}

/// Whitney polynomial `t (1 + u + … + u^{d−1}) + u^d` with
/// `t = x_1 + … + x_{n−1}`, `u = x_n`: `d(n−1) + 1` terms, all coefficients 1.
pub fn whitney_poly(n: usize, d: u32) -> Result<Polynomial> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidParameter(format!(
            "Whitney polynomial needs n >= 2 and d >= 1 (got n={n}, d={d})"
        )));
    }
    let last = n - 1;
    let mut p = Polynomial::term(Monomial::one(n).with_exponent(last, d), Scalar::one());
    for j in 0..last {
        for e in 0..d {
            let m = Monomial::var(n, j).with_exponent(last, e);
            p = p + Polynomial::term(m, Scalar::one());
        }
    }
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorOp {
    /// Move the amount `c` of the target term onto `c · x^target · s(x)`.
    W,
    /// Move half of `c`, keeping the other half in place.
    V,
}

/// The highest pure power of the last variable present in `p`.
pub fn top_pure_term(p: &Polynomial) -> Option<Monomial> {
    let last = p.nvars().checked_sub(1)?;
    p.terms()
        .rev()
        .map(|(m, _)| m)
        .find(|m| m.exponents().iter().enumerate().all(|(i, &e)| i == last || e == 0) && !m.is_one())
        .cloned()
}

/// `W p = p − c x^t + c x^t s(x)`, `V p = p − (c/2) x^t + (c/2) x^t s(x)`.
///
/// Both keep nonnegativity and the identity `p = 1` on `s(x) = 1`. The
/// target defaults to the highest pure power of the last variable.
pub fn tensor_op(
    p: &Polynomial,
    op: TensorOp,
    c: &Scalar,
    target: Option<&Monomial>,
) -> Result<Polynomial> {
    if !c.is_positive() {
        return Err(Error::InvalidParameter(format!("tensor amount must be positive (got {c})")));
    }
    let target = match target {
        Some(t) => t.clone(),
        None => top_pure_term(p).ok_or_else(|| Error::MissingTerm("pure power".into()))?,
    };
    let moved = match op {
        TensorOp::W => c.clone(),
        TensorOp::V => c / scalar::int(2),
    };
    if p.coefficient(&target) < moved {
        return Err(Error::MissingTerm(target.render()));
    }
    let n = p.nvars();
    let piece = Polynomial::term(target, moved);
    Ok(p - &piece + &piece * &Polynomial::linear_sum(n))
}

/// Applies `op` to the top pure term with its full coefficient as `c`.
pub fn tensor_on_top(p: &Polynomial, op: TensorOp) -> Result<Polynomial> {
    let target = top_pure_term(p).ok_or_else(|| Error::MissingTerm("pure power".into()))?;
    let c = p.coefficient(&target);
    tensor_op(p, op, &c, Some(&target))
}

/// Result of the substitution `f = p_d − c x^a y^b (p_m − 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub polynomial: Polynomial,
    pub nonnegative: bool,
}

/// Replaces terms of `p_d` (odd `d`) using the identity `p_m = 1` on the
/// line (even `m`). Always 1 on `x + y = 1`; nonnegativity is reported.
pub fn substitute(d: u32, m: u32, a: u32, b: u32, c: &Scalar) -> Result<Substitution> {
    if d.is_even() || m.is_odd() {
        return Err(Error::InvalidParameter(format!(
            "substitution needs odd d and even m (got d={d}, m={m})"
        )));
    }
    let shift = invariant_poly(m) - Polynomial::one(2);
    let polynomial = invariant_poly(d) - shift.mul_monomial(&Monomial::xy(a, b), c);
    Ok(Substitution {
        nonnegative: polynomial.is_nonnegative(),
        polynomial,
    })
}
