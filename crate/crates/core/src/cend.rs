//! The matrix model of `Cend^Gamma_N`: `N x N` matrices over `Q[T, x]` with
//! row and column degrees `alpha_1..alpha_N`. The entry slot `(i, j)` has
//! degree `alpha_i alpha_j^{-1}`, and for `alpha = alpha_i alpha_j^{-1}`,
//! `beta = alpha_j alpha_k^{-1}`
//!
//! ```text
//! (f E_ij) _lambda (g E_jk) =
//!     f(-sigma(alpha)(lambda + phi(alpha, alpha^-1)), x)
//!   * g(T + sigma(alpha beta) lambda + phi(alpha^-1, alpha beta),
//!       x + sigma(alpha_i) lambda + phi(alpha^-1, alpha_i)) E_ik
//! ```
//!
//! The module action is multiplication of every entry by `h(T)`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grading::GradingContext;
use crate::poly::{Bindings, Poly, Var};
use crate::polymat::{self, PolyMatrix};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CendMatrix<F = Rational> {
    degrees: Vec<usize>,
    entries: PolyMatrix<F>,
}

impl<F: Scalar> CendMatrix<F> {
    pub fn new(degrees: Vec<usize>, entries: PolyMatrix<F>) -> Result<Self> {
        let n = degrees.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("Cend matrix must be {n}x{n}")));
        }
        Ok(CendMatrix { degrees, entries })
    }

    pub fn zero(degrees: Vec<usize>) -> Self {
        let n = degrees.len();
        CendMatrix { degrees, entries: polymat::zeros(n, n) }
    }

    /// `f E_ij`.
    pub fn single(degrees: Vec<usize>, i: usize, j: usize, f: Poly<F>) -> Self {
        let mut m = Self::zero(degrees);
        m.entries[i][j] = f;
        m
    }

    pub fn identity(degrees: Vec<usize>) -> Self {
        let n = degrees.len();
        CendMatrix { degrees, entries: polymat::identity(n) }
    }

    pub fn size(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn entries(&self) -> &PolyMatrix<F> {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Poly::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(r, s)| r.iter().zip(s).map(|(a, b)| Poly::add(a, b)).collect())
            .collect();
        CendMatrix { degrees: self.degrees.clone(), entries }
    }

    /// Module action: every entry times `h(T)`.
    pub fn act(&self, h: &Poly<F>) -> Self {
        CendMatrix { degrees: self.degrees.clone(), entries: polymat::map(&self.entries, |p| Poly::mul(h, p)) }
    }

    /// Degree of the slot `(i, j)`.
    pub fn slot_degree(&self, ctx: &GradingContext<F>, i: usize, j: usize) -> usize {
        ctx.mul(self.degrees[i], ctx.inv(self.degrees[j]))
    }

    /// `Some(gamma)` if homogeneous and nonzero, `None` for zero.
    pub fn degree(&self, ctx: &GradingContext<F>) -> Result<Option<usize>> {
        let mut deg = None;
        for i in 0..self.size() {
            for j in 0..self.size() {
                if self.entries[i][j].is_zero() {
                    continue;
                }
                let d = self.slot_degree(ctx, i, j);
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return Err(Error::NotHomogeneous),
                    _ => {}
                }
            }
        }
        Ok(deg)
    }
}

/// Single-sign perturbations of the product formula, used to show that the
/// associativity check is sensitive to each term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CendMutation {
    None,
    /// `-sigma(alpha)` becomes `+sigma(alpha)` in the left substitution.
    LeftSigma,
    /// `+phi(alpha, alpha^-1)` becomes `-phi(...)` in the left substitution.
    LeftPhi,
    /// `+sigma(alpha beta) lambda` becomes `-...` in the `T` shift.
    RightTSigma,
    /// `+phi(alpha^-1, alpha beta)` becomes `-...` in the `T` shift.
    RightTPhi,
    /// `+sigma(alpha_i) lambda` becomes `-...` in the `x` shift.
    RightXSigma,
    /// `+phi(alpha^-1, alpha_i)` becomes `-...` in the `x` shift.
    RightXPhi,
}

impl CendMutation {
    pub const PLANTED: [CendMutation; 6] = [
        CendMutation::LeftSigma,
        CendMutation::LeftPhi,
        CendMutation::RightTSigma,
        CendMutation::RightTPhi,
        CendMutation::RightXSigma,
        CendMutation::RightXPhi,
    ];
}

/// `(a _l b)` with the product variable replaced by `l`.
pub fn cend_product<F: Scalar>(
    ctx: &GradingContext<F>,
    a: &CendMatrix<F>,
    b: &CendMatrix<F>,
    l: &Poly<F>,
) -> Result<CendMatrix<F>> {
    cend_product_mutated(ctx, a, b, l, CendMutation::None)
}

pub fn cend_product_mutated<F: Scalar>(
    ctx: &GradingContext<F>,
    a: &CendMatrix<F>,
    b: &CendMatrix<F>,
    l: &Poly<F>,
    mutation: CendMutation,
) -> Result<CendMatrix<F>> {
    if a.degrees != b.degrees {
        return Err(Error::DimensionMismatch("row/column degrees differ".into()));
    }
    let (Some(alpha), Some(beta)) = (a.degree(ctx)?, b.degree(ctx)?) else {
        return Ok(CendMatrix::zero(a.degrees.clone()));
    };
    let n = a.size();
    let sgn = |m: CendMutation| if mutation == m { -F::one() } else { F::one() };
    let ai = ctx.inv(alpha);
    let ab = ctx.mul(alpha, beta);
    let left = Poly::add(l, &Poly::constant(sgn(CendMutation::LeftPhi) * ctx.phi(alpha, ai).clone()))
        .scale(&(-sgn(CendMutation::LeftSigma) * ctx.sigma(alpha).clone()));
    let t_img = Poly::add(
        &Poly::add(&Poly::var(Var::T), &l.scale(&(sgn(CendMutation::RightTSigma) * ctx.sigma(ab).clone()))),
        &Poly::constant(sgn(CendMutation::RightTPhi) * ctx.phi(ai, ab).clone()),
    );
    let mut left_b: Bindings<F> = Default::default();
    left_b[Var::T.index()] = Some(left);
    let mut out = polymat::zeros(n, n);
    for i in 0..n {
        let ali = a.degrees[i];
        let x_img = Poly::add(
            &Poly::add(&Poly::var(Var::X), &l.scale(&(sgn(CendMutation::RightXSigma) * ctx.sigma(ali).clone()))),
            &Poly::constant(sgn(CendMutation::RightXPhi) * ctx.phi(ai, ali).clone()),
        );
        let mut right_b: Bindings<F> = Default::default();
        right_b[Var::T.index()] = Some(t_img.clone());
        right_b[Var::X.index()] = Some(x_img);
        for j in 0..n {
            let f = &a.entries[i][j];
            if f.is_zero() {
                continue;
            }
            let fs = f.substitute(&left_b);
            for k in 0..n {
                let g = &b.entries[j][k];
                if g.is_zero() {
                    continue;
                }
                out[i][k] = Poly::add(&out[i][k], &Poly::mul(&fs, &g.substitute(&right_b)));
            }
        }
    }
    Ok(CendMatrix { degrees: a.degrees.clone(), entries: out })
}

/// An associativity instance `(f E_ij, g E_jk, h E_kl)` that failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CendAssocFailure {
    pub indices: (usize, usize, usize, usize),
    pub entries: (String, String, String),
}

/// Checks `(a _l b) _m c = a _l (b _nu c)` in `Q[lambda, mu, T, x]` for all
/// single-entry matrices with monomial entries in `T, x` of total degree at
/// most `d`. Returns the number of instances checked.
pub fn check_cend_associativity<F: Scalar>(
    ctx: &GradingContext<F>,
    degrees: &[usize],
    d: u32,
    mutation: CendMutation,
) -> Result<usize, CendAssocFailure> {
    let n = degrees.len();
    let monos: Vec<Poly<F>> = Poly::monomials_up_to(&[Var::T, Var::X], d);
    let chains: Vec<(usize, usize, usize, usize)> = (0..n)
        .flat_map(|i| (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l)))))
        .collect();
    let lam = Poly::var(Var::Lambda);
    let mu = Poly::var(Var::Mu);
    let m = monos.len();
    let prod = |x: &CendMatrix<F>, y: &CendMatrix<F>, l: &Poly<F>| {
        cend_product_mutated(ctx, x, y, l, mutation).expect("single entries are homogeneous")
    };
    // Products `ab` and `bc` are shared by all instances of a chain, so they
    // are formed once per pair of entries.
    let bad = chains.par_iter().find_map_first(|&(i, j, k, l)| {
        let single = |r: usize, s: usize| -> Vec<CendMatrix<F>> {
            monos.iter().map(|f| CendMatrix::single(degrees.to_vec(), r, s, f.clone())).collect()
        };
        let (a, b, c) = (single(i, j), single(j, k), single(k, l));
        let alpha = a[0].slot_degree(ctx, i, j);
        let beta = b[0].slot_degree(ctx, j, k);
        let nu = crate::conformal::assoc_nu(ctx, alpha, beta);
        let ab: Vec<Vec<CendMatrix<F>>> = a.iter().map(|x| b.iter().map(|y| prod(x, y, &lam)).collect()).collect();
        let bc: Vec<Vec<CendMatrix<F>>> = b.iter().map(|y| c.iter().map(|z| prod(y, z, &nu)).collect()).collect();
        for fa in 0..m {
            for fb in 0..m {
                for fc in 0..m {
                    if prod(&ab[fa][fb], &c[fc], &mu) != prod(&a[fa], &bc[fb][fc], &lam) {
                        return Some(CendAssocFailure {
                            indices: (i, j, k, l),
                            entries: (monos[fa].to_string(), monos[fb].to_string(), monos[fc].to_string()),
                        });
                    }
                }
            }
        }
        None
    });
    match bad {
        None => Ok(chains.len() * m * m * m),
        Some(f) => Err(f),
    }
}

/// `[a]_f = Q^{-1}(x) [a]_e Q^Gamma(T, x)` with `Q^Gamma = (+) Q_gamma(x - sigma(gamma) T)`.
/// `q` is an `N x N` matrix over `Q[T]`, block diagonal with respect to the
/// degrees, whose blocks `Q_gamma` are invertible over `Q[T]`.
pub fn change_basis<F: Scalar>(ctx: &GradingContext<F>, a: &CendMatrix<F>, q: &PolyMatrix<F>) -> Result<CendMatrix<F>> {
    let n = a.size();
    if q.len() != n || q.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("change of basis must be N x N".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if !q[i][j].is_zero() && a.degrees[i] != a.degrees[j] {
                return Err(Error::Invalid("change of basis must preserve degrees".into()));
            }
        }
    }
    let qinv = match polymat::inverse(q, Var::T) {
        Ok(m) => m,
        Err(Error::NotInvertibleOverPolyRing(_)) => {
            let bad = (0..n).find(|&i| {
                let idx: Vec<usize> = (0..n).filter(|&j| a.degrees[j] == a.degrees[i]).collect();
                let block: PolyMatrix<F> = idx.iter().map(|&r| idx.iter().map(|&c| q[r][c].clone()).collect()).collect();
                let d = polymat::determinant(&block);
                d.is_zero() || !d.is_constant()
            });
            let label = bad.map_or_else(String::new, |i| ctx.group().label(a.degrees[i]).to_string());
            return Err(Error::NotInvertibleOverPolyRing(label));
        }
        Err(e) => return Err(e),
    };
    let to_x = |p: &Poly<F>| p.subst1(Var::T, &Poly::var(Var::X));
    let qinv_x = polymat::map(&qinv, to_x);
    let mut q_gamma = polymat::zeros(n, n);
    for i in 0..n {
        let img = Poly::sub(&Poly::var(Var::X), &Poly::var(Var::T).scale(ctx.sigma(a.degrees[i])));
        for j in 0..n {
            q_gamma[i][j] = q[i][j].subst1(Var::T, &img);
        }
    }
    let entries = polymat::mul(&polymat::mul(&qinv_x, &a.entries), &q_gamma);
    Ok(CendMatrix { degrees: a.degrees.clone(), entries })
}

/// For `a` of degree `e`: the block on indices of degree `gamma`, with
/// `x -> sigma(gamma) x`.
pub fn pi_gamma<F: Scalar>(ctx: &GradingContext<F>, a: &CendMatrix<F>, gamma: usize) -> Result<PolyMatrix<F>> {
    match a.degree(ctx)? {
        Some(d) if d != ctx.identity() => return Err(Error::NotDegreeE),
        _ => {}
    }
    let idx: Vec<usize> = (0..a.size()).filter(|&i| a.degrees[i] == gamma).collect();
    let x_img = Poly::var(Var::X).scale(ctx.sigma(gamma));
    Ok(idx.iter().map(|&i| idx.iter().map(|&j| a.entries[i][j].subst1(Var::X, &x_img)).collect()).collect())
}
