//! Sparse multivariate polynomials in the fixed variables `T, x, lambda, mu`.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors under graded
//! lexicographic order with `T > x > lambda > mu`, and zero coefficients are
//! never stored, so structural equality is polynomial equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;
use crate::upoly::UPoly;

pub const NVARS: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    T = 0,
    X = 1,
    Lambda = 2,
    Mu = 3,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::T, Var::X, Var::Lambda, Var::Mu];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "T",
            Var::X => "x",
            Var::Lambda => "lambda",
            Var::Mu => "mu",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "T" => Some(Var::T),
            "x" => Some(Var::X),
            "lambda" => Some(Var::Lambda),
            "mu" => Some(Var::Mu),
            _ => None,
        }
    }
}

/// Exponent vector over `(T, x, lambda, mu)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub [u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, d: u32) -> Self {
        let mut e = [0; NVARS];
        e[v.index()] = d;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F> {
    terms: BTreeMap<Monomial, F>,
}

/// Simultaneous substitution: `None` leaves the variable in place.
pub type Bindings<F> = [Option<Poly<F>>; NVARS];

impl<F: Scalar> Default for Poly<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> Poly<F> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(F::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(F::one(), Monomial::var(v, 1))
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    /// `c0 + c1 * v`, the affine forms that every substitution in the
    /// conformal formulas uses.
    pub fn affine(v: Var, slope: F, offset: F) -> Self {
        Self::add(&Self::term(slope, Monomial::var(v, 1)), &Self::constant(offset))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn constant_term(&self) -> F {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    fn insert_add(terms: &mut BTreeMap<Monomial, F>, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_add(&mut terms, *m, c.clone());
        }
        Poly { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_add(&mut terms, *m, -c.clone());
        }
        Poly { terms }
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                Self::insert_add(&mut terms, ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Poly { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = Self::mul(&out, self);
        }
        out
    }

    /// Simultaneous substitution of the bound variables.
    pub fn substitute(&self, bindings: &Bindings<F>) -> Self {
        // Cache powers of every image; identity bindings keep the monomial.
        let mut powers: [Vec<Poly<F>>; NVARS] = Default::default();
        for v in Var::ALL {
            if let Some(img) = &bindings[v.index()] {
                let maxd = self.degree_in(v) as usize;
                let mut p = Vec::with_capacity(maxd + 1);
                p.push(Self::one());
                for d in 1..=maxd {
                    let next = Self::mul(&p[d - 1], img);
                    p.push(next);
                }
                powers[v.index()] = p;
            }
        }
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut kept = [0u32; NVARS];
            let mut factor = Self::constant(c.clone());
            for v in Var::ALL {
                let e = m.exp(v);
                if bindings[v.index()].is_some() {
                    if e > 0 {
                        factor = Self::mul(&factor, &powers[v.index()][e as usize]);
                    }
                } else {
                    kept[v.index()] = e;
                }
            }
            let shift = Monomial(kept);
            for (fm, fc) in factor.terms {
                Self::insert_add(&mut out, fm.mul(&shift), fc);
            }
        }
        Poly { terms: out }
    }

    /// Substitutes a single variable.
    pub fn subst1(&self, v: Var, img: &Poly<F>) -> Self {
        let mut b: Bindings<F> = Default::default();
        b[v.index()] = Some(img.clone());
        self.substitute(&b)
    }

    pub fn eval(&self, point: &[F; NVARS]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                for _ in 0..m.exp(v) {
                    t = t * point[v.index()].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Splits `self = sum_d v^d * c_d` and returns `[c_0, c_1, ...]`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly<F>> {
        let n = self.degree_in(v) as usize + 1;
        let mut out = vec![BTreeMap::new(); if self.is_zero() { 0 } else { n }];
        for (m, c) in &self.terms {
            let mut e = m.0;
            let d = e[v.index()] as usize;
            e[v.index()] = 0;
            out[d].insert(Monomial(e), c.clone());
        }
        out.into_iter().map(|terms| Poly { terms }).collect()
    }

    /// Dense univariate view if `self` involves only `v`.
    pub fn to_upoly(&self, v: Var) -> Option<UPoly<F>> {
        if Var::ALL.iter().any(|&w| w != v && self.involves(w)) {
            return None;
        }
        let n = self.degree_in(v) as usize + 1;
        let mut c = vec![F::zero(); n];
        for (m, a) in &self.terms {
            c[m.exp(v) as usize] = a.clone();
        }
        Some(UPoly::new(c))
    }

    pub fn from_upoly(p: &UPoly<F>, v: Var) -> Self {
        let mut terms = BTreeMap::new();
        for (d, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.insert(Monomial::var(v, d as u32), c.clone());
            }
        }
        Poly { terms }
    }

    /// Every monomial in `vars` of total degree at most `d`, in increasing order.
    pub fn monomials_up_to(vars: &[Var], d: u32) -> Vec<Poly<F>> {
        let mut exps: Vec<Monomial> = vec![Monomial::one()];
        for &v in vars {
            let mut next = Vec::new();
            for m in &exps {
                for k in 0..=(d - m.total_degree()) {
                    let mut e = m.0;
                    e[v.index()] = k;
                    next.push(Monomial(e));
                }
            }
            exps = next;
        }
        exps.sort();
        exps.into_iter().map(|m| Self::term(F::one(), m)).collect()
    }
}

impl<F: Scalar> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::add(self, rhs)
    }
}

impl<F: Scalar> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::sub(self, rhs)
    }
}

impl<F: Scalar> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        Poly::mul(self, rhs)
    }
}

impl<F: Scalar> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(self)
    }
}

impl<F: Scalar> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Poly<F>) -> Poly<F> {
        Poly::add(&self, &rhs)
    }
}

impl<F: Scalar> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        Poly::sub(&self, &rhs)
    }
}

impl<F: Scalar> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        Poly::mul(&self, &rhs)
    }
}

impl<F: Scalar> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::neg(&self)
    }
}

impl<F: Scalar> From<Var> for Poly<F> {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    /// Prints in the input grammar, highest term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.total_degree() == 0 {
                factors.push(mag);
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::{q, Rational};

    type P = Poly<Rational>;

    fn p(s: &str) -> P {
        parse_poly(s).unwrap()
    }

    fn bind(pairs: &[(Var, &str)]) -> Bindings<Rational> {
        let mut b: Bindings<Rational> = Default::default();
        for (v, s) in pairs {
            b[v.index()] = Some(p(s));
        }
        b
    }

    #[test]
    fn add_examples() {
        assert!((p("T") + p("-T")).is_zero());
        assert_eq!(p("T + x") + p("x"), p("T + 2*x"));
        assert_eq!(p("lambda^2") + p("lambda^2 + 1"), p("2*lambda^2 + 1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("T + lambda") * P::one(), p("T + lambda"));
        assert_eq!(p("T + lambda") * p("T - lambda"), p("T^2 - lambda^2"));
        assert!((P::zero() * p("x^3")).is_zero());
    }

    #[test]
    fn substitute_examples() {
        assert_eq!(
            p("T^2").substitute(&bind(&[(Var::T, "T + lambda")])),
            p("T^2 + 2*T*lambda + lambda^2")
        );
        // g(T, x) = T x with sigma = 1.
        let got = p("T*x").substitute(&bind(&[(Var::T, "T + lambda"), (Var::X, "x + lambda")]));
        let oracle = p("T*x + T*lambda + x*lambda + lambda^2");
        assert_eq!(got, oracle);
        // f(T) = T at -(lambda + 0).
        assert_eq!(p("T").substitute(&bind(&[(Var::T, "-lambda")])), p("-lambda"));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let swapped = p("T - x").substitute(&bind(&[(Var::T, "x"), (Var::X, "T")]));
        assert_eq!(swapped, p("x - T"));
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "-1/3*x", "T^2*lambda - 2*x + 7", "(T + 2*lambda)^2 - 1/3*x"] {
            let a = p(s);
            assert_eq!(p(&a.to_string()), a, "{s} -> {a}");
        }
    }

    #[test]
    fn coefficients_split() {
        let a = p("lambda^2*T + 3*lambda + x");
        let cs = a.coefficients_in(Var::Lambda);
        assert_eq!(cs, vec![p("x"), p("3"), p("T")]);
        assert!(P::zero().coefficients_in(Var::Lambda).is_empty());
    }

    #[test]
    fn graded_lex_order() {
        let terms: Vec<Monomial> = p("1 + mu + T + x^2 + T*x").terms().map(|(m, _)| *m).collect();
        let degs: Vec<u32> = terms.iter().map(Monomial::total_degree).collect();
        assert_eq!(degs, vec![0, 1, 1, 2, 2]);
        // T > mu at equal degree; T*x > x^2
        assert_eq!(terms[2], Monomial::var(Var::T, 1));
        assert_eq!(terms[4], Monomial([1, 1, 0, 0]));
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(P::monomials_up_to(&[Var::T, Var::X], 3).len(), 10);
        assert_eq!(P::monomials_up_to(&[Var::T], 0), vec![P::one()]);
        let _ = q(0);
    }
}
