//! Scalar traits. Everything in the crate is generic over [`Scalar`]; the
//! exact algorithms (linear solves, idempotent splitting, identity checks)
//! additionally need [`ExactField`], which is implemented for [`Rational`].

use std::fmt;
use std::hash::Hash;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::upoly::UPoly;

/// Arbitrary-precision rational numbers, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Coefficient field for polynomials and matrices.
pub trait Scalar:
    Num + Neg<Output = Self> + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type embeds the integers")
    }
}

impl<T> Scalar for T where
    T: Num + Neg<Output = T> + FromPrimitive + Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static
{
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootError {
    #[error("coefficients too large for rational root search ({0} digits)")]
    TooLarge(usize),
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
}

/// A field with exact equality in which roots of univariate polynomials that
/// lie in the field itself can be enumerated.
pub trait ExactField: Scalar + Eq + Hash + Ord {
    /// Distinct roots of `p` lying in the field, in increasing order.
    fn field_roots(p: &UPoly<Self>) -> Result<Vec<Self>, RootError>;
}

const MAX_ROOT_SEARCH: u128 = 100_000_000_000_000;

impl ExactField for Rational {
    fn field_roots(p: &UPoly<Rational>) -> Result<Vec<Rational>, RootError> {
        if p.is_zero() {
            return Err(RootError::ZeroPolynomial);
        }
        // Clear denominators: integer polynomial with the same roots.
        let lcm = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        // Strip factors of t.
        if ints[0].is_zero() {
            roots.push(Rational::zero());
            while ints.len() > 1 && ints[0].is_zero() {
                ints.remove(0);
            }
        }
        if ints.len() > 1 {
            let lead = ints.last().unwrap().abs();
            let tail = ints[0].abs();
            let lead_divs = divisors(&lead)?;
            let tail_divs = divisors(&tail)?;
            let mut seen = std::collections::BTreeSet::new();
            for q in &lead_divs {
                for pnum in &tail_divs {
                    for sign in [1i64, -1] {
                        let cand = Rational::new(pnum * BigInt::from(sign), q.clone());
                        if seen.insert(cand.clone()) && eval_int(&ints, &cand).is_zero() {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots.dedup();
        Ok(roots)
    }
}

fn eval_int(coeffs: &[BigInt], t: &Rational) -> Rational {
    coeffs
        .iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * t + Rational::from_integer(c.clone()))
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, RootError> {
    let m = n
        .to_u128()
        .filter(|m| *m <= MAX_ROOT_SEARCH)
        .ok_or_else(|| RootError::TooLarge(n.to_string().len()))?;
    let mut out = Vec::new();
    let mut d: u128 = 1;
    while d * d <= m {
        if m % d == 0 {
            out.push(BigInt::from(d));
            if d * d != m {
                out.push(BigInt::from(m / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Parses `a`, `-a`, or `a/b` into a rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rational::from_integer(n))
    }
}

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UPoly<Rational> {
        UPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn rational_roots_of_split_polynomial() {
        // (t - 1)(t + 2)(2t - 1) = 2t^3 + t^2 - 5t + 2
        let p = up(&[2, -5, 1, 2]);
        assert_eq!(Rational::field_roots(&p).unwrap(), vec![q(-2), qf(1, 2), q(1)]);
    }

    #[test]
    fn irreducible_quadratic_has_no_rational_roots() {
        assert!(Rational::field_roots(&up(&[1, 0, 1])).unwrap().is_empty());
        assert!(Rational::field_roots(&up(&[-2, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn zero_root_and_repeated_factor() {
        // t^2 (t - 3)
        let p = up(&[0, 0, -3, 1]);
        assert_eq!(Rational::field_roots(&p).unwrap(), vec![q(0), q(3)]);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-3/6"), Some(qf(-1, 2)));
        assert_eq!(parse_rational(" 7 "), Some(q(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }
}
