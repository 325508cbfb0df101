//! The grading data `(Gamma, sigma, phi)` over the affine line.
//!
//! Conventions. The multiplicative formulas for a general connected group
//! are read additively for `G^0 = A^1`:
//!
//! | multiplicative          | additive                 |
//! |-------------------------|--------------------------|
//! | `lambda mu`             | `lambda + mu`            |
//! | `lambda^{-1}`           | `-lambda`                |
//! | `lambda^{sigma(a)}`     | `sigma(a) * lambda`      |
//! | `e`                     | `0`                      |
//! | `(L_c h)(T)`            | `h(T + c)`               |
//!
//! Every report produced by the CLI embeds [`CONVENTION_VERSION`].

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::{Rational, Scalar};

/// Identifier of the conventions table above.
pub const CONVENTION_VERSION: &str = "additive-A1/v1";

#[derive(Clone, Debug, PartialEq)]
pub struct GradingContext<F = Rational> {
    group: FiniteGroup,
    sigma: Vec<F>,
    phi: Vec<Vec<F>>,
    gamma0: Vec<usize>,
}

impl<F: Scalar> GradingContext<F> {
    /// Builds a context without validating it; see [`check_sigma`] and
    /// [`crate::cohomology::check_additive_cocycle`].
    pub fn new(group: FiniteGroup, sigma: Vec<F>, phi: Vec<Vec<F>>) -> Result<Self> {
        let n = group.order();
        if sigma.len() != n || phi.len() != n || phi.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("sigma/phi must be indexed by {n} elements")));
        }
        Ok(GradingContext { group, sigma, phi, gamma0: Vec::new() })
    }

    /// `sigma = 1`, `phi = 0`.
    pub fn trivial(group: FiniteGroup) -> Self {
        let n = group.order();
        GradingContext {
            group,
            sigma: vec![F::one(); n],
            phi: vec![vec![F::zero(); n]; n],
            gamma0: Vec::new(),
        }
    }

    /// `sigma` given, `phi = 0`.
    pub fn with_sigma(group: FiniteGroup, sigma: Vec<F>) -> Result<Self> {
        let n = group.order();
        Self::new(group, sigma, vec![vec![F::zero(); n]; n])
    }

    pub fn with_gamma0(mut self, gamma0: Vec<usize>) -> Self {
        self.gamma0 = gamma0;
        self
    }

    pub fn with_phi(mut self, phi: Vec<Vec<F>>) -> Result<Self> {
        let n = self.group.order();
        if phi.len() != n || phi.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("phi shape".into()));
        }
        self.phi = phi;
        Ok(self)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn sigma(&self, g: usize) -> &F {
        &self.sigma[g]
    }

    pub fn sigmas(&self) -> &[F] {
        &self.sigma
    }

    pub fn phi(&self, a: usize, b: usize) -> &F {
        &self.phi[a][b]
    }

    pub fn phi_table(&self) -> &[Vec<F>] {
        &self.phi
    }

    pub fn gamma0(&self) -> &[usize] {
        &self.gamma0
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.group.inv(a)
    }

    pub fn identity(&self) -> usize {
        self.group.identity()
    }

    /// Full validation: `sigma` a homomorphism and `phi` a normalized cocycle.
    pub fn validate(&self) -> Result<()> {
        if let Some(msg) = sigma_violation(self) {
            return Err(Error::SigmaNotHomomorphism(msg));
        }
        if let Some(msg) = crate::cohomology::additive_cocycle_violation(self) {
            return Err(Error::NotACocycle(msg));
        }
        Ok(())
    }
}

/// True iff `sigma(ab) = sigma(a) sigma(b)` for all `a, b` and `sigma` never vanishes.
pub fn check_sigma<F: Scalar>(ctx: &GradingContext<F>) -> bool {
    sigma_violation(ctx).is_none()
}

pub(crate) fn sigma_violation<F: Scalar>(ctx: &GradingContext<F>) -> Option<String> {
    let g = ctx.group();
    if let Some(a) = g.elements().find(|&a| ctx.sigma(a).is_zero()) {
        return Some(format!("sigma({}) = 0", g.label(a)));
    }
    for a in g.elements() {
        for b in g.elements() {
            let lhs = ctx.sigma(g.mul(a, b)).clone();
            let rhs = ctx.sigma(a).clone() * ctx.sigma(b).clone();
            if lhs != rhs {
                return Some(format!(
                    "sigma({}{}) = {} but sigma({}) sigma({}) = {}",
                    g.label(a),
                    g.label(b),
                    lhs,
                    g.label(a),
                    g.label(b),
                    rhs
                ));
            }
        }
    }
    None
}

/// The sign character of `S_3` (or any permutation-labelled table built by
/// [`FiniteGroup::symmetric3`]), as rationals.
pub fn s3_sign() -> Vec<Rational> {
    use crate::scalar::q;
    let g = FiniteGroup::symmetric3();
    g.labels()
        .iter()
        .map(|l| if l == "e" || l.len() == 5 { q(1) } else { q(-1) })
        .collect()
}

/// `(-1)^g` on `Z_n` for even `n`.
pub fn cyclic_sign(n: usize) -> Vec<Rational> {
    use crate::scalar::q;
    assert!(n % 2 == 0, "sign character needs even order");
    (0..n).map(|g| if g % 2 == 0 { q(1) } else { q(-1) }).collect()
}
