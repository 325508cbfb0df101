//! Additive 2-cocycles with values in the affine line, coboundaries and
//! their trivialization for finite groups, and the partially supported
//! multiplicative cocycles `chi` describing graded irreducible algebras.

use crate::error::{Error, Result};
use crate::group::{FineSubgroupData, FiniteGroup};
use crate::grading::GradingContext;
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};

/// `tau: Gamma -> Q` with `tau(e) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneCochain<F = Rational> {
    tau: Vec<F>,
}

impl<F: Scalar> OneCochain<F> {
    /// Rejects cochains with `tau(e) != 0`: their coboundary has
    /// `phi(e, e) = tau(e)` and would not be normalized.
    pub fn new(group: &FiniteGroup, tau: Vec<F>) -> Result<Self> {
        if tau.len() != group.order() {
            return Err(Error::DimensionMismatch("cochain length".into()));
        }
        if !tau[group.identity()].is_zero() {
            return Err(Error::UnnormalizedCochain);
        }
        Ok(OneCochain { tau })
    }

    pub fn zero(group: &FiniteGroup) -> Self {
        OneCochain { tau: vec![F::zero(); group.order()] }
    }

    pub fn get(&self, g: usize) -> &F {
        &self.tau[g]
    }

    pub fn values(&self) -> &[F] {
        &self.tau
    }

    pub fn neg(&self) -> Self {
        OneCochain { tau: self.tau.iter().map(|t| -t.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        OneCochain { tau: self.tau.iter().zip(&other.tau).map(|(a, b)| a.clone() + b.clone()).collect() }
    }
}

/// `phi: Gamma x Gamma -> Q`; validity is checked against a context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveCocycle<F = Rational> {
    phi: Vec<Vec<F>>,
}

impl<F: Scalar> AdditiveCocycle<F> {
    pub fn from_table(phi: Vec<Vec<F>>) -> Self {
        AdditiveCocycle { phi }
    }

    pub fn get(&self, a: usize, b: usize) -> &F {
        &self.phi[a][b]
    }

    pub fn table(&self) -> &[Vec<F>] {
        &self.phi
    }

    pub fn add(&self, other: &Self) -> Self {
        AdditiveCocycle {
            phi: self
                .phi
                .iter()
                .zip(&other.phi)
                .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a.clone() + b.clone()).collect())
                .collect(),
        }
    }
}

/// `phi(ab, c) + sigma(c) phi(a, b) = phi(a, bc) + phi(b, c)` for all
/// triples, and `phi(e, e) = 0`.
pub fn check_additive_cocycle<F: Scalar>(ctx: &GradingContext<F>) -> bool {
    additive_cocycle_violation(ctx).is_none()
}

pub(crate) fn additive_cocycle_violation<F: Scalar>(ctx: &GradingContext<F>) -> Option<String> {
    let g = ctx.group();
    let e = g.identity();
    if !ctx.phi(e, e).is_zero() {
        return Some("phi(e, e) != 0".into());
    }
    for a in g.elements() {
        for b in g.elements() {
            for c in g.elements() {
                let lhs = ctx.phi(g.mul(a, b), c).clone() + ctx.sigma(c).clone() * ctx.phi(a, b).clone();
                let rhs = ctx.phi(a, g.mul(b, c)).clone() + ctx.phi(b, c).clone();
                if lhs != rhs {
                    return Some(format!(
                        "cocycle condition fails at ({}, {}, {}): {} != {}",
                        g.label(a),
                        g.label(b),
                        g.label(c),
                        lhs,
                        rhs
                    ));
                }
            }
        }
    }
    None
}

/// Asserts the identities every normalized cocycle satisfies:
/// `phi(a, e) = phi(e, a) = 0` and `phi(a^{-1}, a) = sigma(a) phi(a, a^{-1})`.
/// A failure on a validated cocycle means the kernel itself is wrong.
pub fn cocycle_consequences<F: Scalar>(ctx: &GradingContext<F>) -> Result<bool> {
    if !check_additive_cocycle(ctx) {
        return Err(Error::NotACocycle("consequences need a valid cocycle".into()));
    }
    let g = ctx.group();
    let e = g.identity();
    for a in g.elements() {
        if !ctx.phi(a, e).is_zero() || !ctx.phi(e, a).is_zero() {
            return Err(Error::InternalInconsistency(format!("phi vanishes off e at {}", g.label(a))));
        }
        let ai = g.inv(a);
        if *ctx.phi(ai, a) != ctx.sigma(a).clone() * ctx.phi(a, ai).clone() {
            return Err(Error::InternalInconsistency(format!(
                "phi(a^-1, a) = sigma(a) phi(a, a^-1) fails at {}",
                g.label(a)
            )));
        }
    }
    Ok(true)
}

/// `(delta tau)(a, b) = sigma(b) tau(a) + tau(b) - tau(ab)`.
pub fn coboundary_of<F: Scalar>(tau: &OneCochain<F>, ctx: &GradingContext<F>) -> AdditiveCocycle<F> {
    let g = ctx.group();
    let phi = g
        .elements()
        .map(|a| {
            g.elements()
                .map(|b| ctx.sigma(b).clone() * tau.get(a).clone() + tau.get(b).clone() - tau.get(g.mul(a, b)).clone())
                .collect()
        })
        .collect();
    AdditiveCocycle { phi }
}

/// Solves `delta tau = phi` directly as a linear system in `|Gamma|`
/// unknowns. Over a finite group every cocycle is a coboundary, so
/// [`Error::NoSolution`] indicates a bug, not bad input.
pub fn find_trivializing_cochain<F: Scalar>(ctx: &GradingContext<F>) -> Result<OneCochain<F>> {
    if let Some(msg) = additive_cocycle_violation(ctx) {
        return Err(Error::NotACocycle(msg));
    }
    let g = ctx.group();
    let n = g.order();
    let mut rows = Vec::with_capacity(n * n + 1);
    let mut rhs = Vec::with_capacity(n * n + 1);
    for a in g.elements() {
        for b in g.elements() {
            let mut row = vec![F::zero(); n];
            row[a] = row[a].clone() + ctx.sigma(b).clone();
            row[b] = row[b].clone() + F::one();
            let ab = g.mul(a, b);
            row[ab] = row[ab].clone() - F::one();
            rows.push(row);
            rhs.push(ctx.phi(a, b).clone());
        }
    }
    let mut norm = vec![F::zero(); n];
    norm[g.identity()] = F::one();
    rows.push(norm);
    rhs.push(F::zero());
    let x = Matrix::from_rows(rows).solve(&rhs).ok_or(Error::NoSolution)?;
    let tau = OneCochain::new(g, x)?;
    if coboundary_of(&tau, ctx).table() != ctx.phi_table() {
        return Err(Error::NoSolution);
    }
    Ok(tau)
}

/// `theta(ab, c) theta(a, b) = theta(a, bc) theta(b, c)` on `support^3`,
/// `theta(e, e) = 1` and `theta` nonzero. `theta` is a full `|Gamma|^2`
/// table; entries outside `support` are ignored.
pub fn mult_cocycle_violation<F: Scalar>(group: &FiniteGroup, support: &[usize], theta: &[Vec<F>]) -> Option<String> {
    let e = group.identity();
    if !theta[e][e].is_one() {
        return Some("theta(e, e) != 1".into());
    }
    for &a in support {
        for &b in support {
            if theta[a][b].is_zero() {
                return Some(format!("theta({}, {}) = 0", group.label(a), group.label(b)));
            }
            for &c in support {
                let lhs = theta[group.mul(a, b)][c].clone() * theta[a][b].clone();
                let rhs = theta[a][group.mul(b, c)].clone() * theta[b][c].clone();
                if lhs != rhs {
                    return Some(format!(
                        "multiplicative cocycle condition fails at ({}, {}, {})",
                        group.label(a),
                        group.label(b),
                        group.label(c)
                    ));
                }
            }
        }
    }
    None
}

/// An element of `Z(Gamma, Gamma_0, Gamma_1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultCocycleZ<F = Rational> {
    chi: Vec<Vec<F>>,
    fine: FineSubgroupData,
}

impl<F: Scalar> MultCocycleZ<F> {
    pub fn new(chi: Vec<Vec<F>>, fine: FineSubgroupData) -> Self {
        MultCocycleZ { chi, fine }
    }

    pub fn get(&self, a: usize, b: usize) -> &F {
        &self.chi[a][b]
    }

    pub fn table(&self) -> &[Vec<F>] {
        &self.chi
    }

    pub fn fine(&self) -> &FineSubgroupData {
        &self.fine
    }

    /// Restriction to `Gamma_1 x Gamma_1` as a full table (ones elsewhere).
    pub fn restrict_to_gamma1(&self) -> Vec<Vec<F>> {
        let n = self.chi.len();
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        if self.fine.in_gamma1(a) && self.fine.in_gamma1(b) {
                            self.chi[a][b].clone()
                        } else {
                            F::one()
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

/// Checks membership in `Z(Gamma, Gamma_0, Gamma_1)`. The zero rule
/// (`beta` or `gamma beta` in `Gamma_0`) takes precedence over the
/// normalizations, which are then required for every `gamma`.
pub fn check_mult_cocycle_z<F: Scalar>(group: &FiniteGroup, chi: &MultCocycleZ<F>) -> bool {
    mult_cocycle_z_violation(group, chi).is_none()
}

pub fn mult_cocycle_z_violation<F: Scalar>(group: &FiniteGroup, chi: &MultCocycleZ<F>) -> Option<String> {
    let f = &chi.fine;
    let n = group.order();
    if chi.chi.len() != n || chi.chi.iter().any(|r| r.len() != n) {
        return Some("chi table has the wrong shape".into());
    }
    let lbl = |g: usize| group.label(g).to_string();
    for g in group.elements() {
        for b in group.elements() {
            let v = &chi.chi[g][b];
            let gb = group.mul(g, b);
            if f.in_gamma0(b) || f.in_gamma0(gb) {
                if !v.is_zero() {
                    return Some(format!("chi({}, {}) must vanish", lbl(g), lbl(b)));
                }
            } else if f.reps().contains(&b) || g == group.identity() {
                if !v.is_one() {
                    return Some(format!("chi({}, {}) must be 1", lbl(g), lbl(b)));
                }
            } else if v.is_zero() {
                return Some(format!("chi({}, {}) must be nonzero", lbl(g), lbl(b)));
            }
        }
    }
    for g in group.elements() {
        for a in group.elements() {
            for b in group.elements() {
                let Some(k) = f.coset_of(b) else { continue };
                let gk = f.rep(k);
                let lhs = chi.chi[g][group.mul(a, gk)].clone() * chi.chi[group.mul(g, a)][b].clone();
                let rhs = chi.chi[g][group.mul(a, b)].clone() * chi.chi[a][b].clone();
                if lhs != rhs {
                    return Some(format!("Z-condition fails at gamma={}, alpha={}, beta={}", lbl(g), lbl(a), lbl(b)));
                }
            }
        }
    }
    None
}

/// `chi(gamma, beta) = theta(gamma_q^{-1} gamma gamma_k, gamma_k^{-1} beta)` for
/// `beta` in `Gamma_k`, `gamma beta` in `Gamma_q`, and zero otherwise.
pub fn chi_from_theta<F: Scalar>(
    group: &FiniteGroup,
    theta: &[Vec<F>],
    fine: &FineSubgroupData,
) -> Result<MultCocycleZ<F>> {
    if let Some(msg) = mult_cocycle_violation(group, fine.gamma1(), theta) {
        return Err(Error::NotACocycle(msg));
    }
    let n = group.order();
    let mut chi = vec![vec![F::zero(); n]; n];
    for g in group.elements() {
        for b in group.elements() {
            let (Some(k), Some(qq)) = (fine.coset_of(b), fine.coset_of(group.mul(g, b))) else {
                continue;
            };
            let gk = fine.rep(k);
            let gq = fine.rep(qq);
            let first = group.mul(group.mul(group.inv(gq), g), gk);
            let second = group.mul(group.inv(gk), b);
            debug_assert!(fine.in_gamma1(first) && fine.in_gamma1(second));
            chi[g][b] = theta[first][second].clone();
        }
    }
    Ok(MultCocycleZ { chi, fine: fine.clone() })
}
