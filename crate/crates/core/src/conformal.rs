//! Finite `(Gamma, sigma, phi)`-graded associative conformal algebras over
//! the affine line, presented as free `Q[T]`-modules on a homogeneous basis
//! with structure polynomials `(e_i _lambda e_j) = sum_k c_ijk(lambda, T) e_k`.
//!
//! Sesquilinearity, additive form: for `a` of degree `alpha` and `b` of
//! degree `beta`,
//!
//! ```text
//! (h(T) a _lambda b) = h(-sigma(alpha) (lambda + phi(alpha, alpha^-1))) (a _lambda b)
//! (a _lambda h(T) b) = h(T + sigma(alpha beta) lambda + phi(alpha^-1, alpha beta)) (a _lambda b)
//! ```
//!
//! and associativity reads `(a _lambda b) _mu c = a _lambda (b _nu c)` with
//! `nu = sigma(alpha) (mu - lambda - phi(beta^-1, alpha^-1))`.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::GradedAlgebraFD;
use crate::cohomology::{coboundary_of, AdditiveCocycle, OneCochain};
use crate::error::{Error, Result};
use crate::grading::GradingContext;
use crate::matrix::Matrix;
use crate::poly::{Poly, Var};
use crate::polymat::{self, PolyMatrix};
use crate::scalar::{Rational, Scalar};

/// An element `sum_i coords[i] e_i`. Coordinates are polynomials in `T`;
/// intermediate results of identity checks may also carry `lambda`, `mu`
/// as parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalElement<F = Rational> {
    coords: Vec<Poly<F>>,
}

impl<F: Scalar> ConformalElement<F> {
    pub fn new(coords: Vec<Poly<F>>) -> Self {
        ConformalElement { coords }
    }

    pub fn zero(n: usize) -> Self {
        ConformalElement { coords: vec![Poly::zero(); n] }
    }

    /// `h e_i` in a rank-`n` module.
    pub fn basis(n: usize, i: usize, h: Poly<F>) -> Self {
        let mut coords = vec![Poly::zero(); n];
        coords[i] = h;
        ConformalElement { coords }
    }

    pub fn coords(&self) -> &[Poly<F>] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Poly<F>> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedConformalAlgebra<F = Rational> {
    ctx: GradingContext<F>,
    degrees: Vec<usize>,
    structure: Vec<Vec<Vec<Poly<F>>>>,
}

impl<F: Scalar> GradedConformalAlgebra<F> {
    /// Checks shape and that structure polynomials involve only `lambda`
    /// and `T`. Grading and associativity are left to [`check_axioms`].
    pub fn new(ctx: GradingContext<F>, degrees: Vec<usize>, structure: Vec<Vec<Vec<Poly<F>>>>) -> Result<Self> {
        let n = degrees.len();
        if degrees.iter().any(|&d| d >= ctx.order()) {
            return Err(Error::Invalid("basis degree outside the group".into()));
        }
        if structure.len() != n || structure.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::DimensionMismatch(format!("structure must be {n}x{n}x{n}")));
        }
        if structure.iter().flatten().flatten().any(|p| p.involves(Var::X) || p.involves(Var::Mu)) {
            return Err(Error::Invalid("structure polynomials may only involve lambda and T".into()));
        }
        Ok(GradedConformalAlgebra { ctx, degrees, structure })
    }

    pub fn ctx(&self) -> &GradingContext<F> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn structure(&self, i: usize, j: usize) -> &[Poly<F>] {
        &self.structure[i][j]
    }

    pub fn structure_table(&self) -> &[Vec<Vec<Poly<F>>>] {
        &self.structure
    }

    pub fn basis_element(&self, i: usize) -> ConformalElement<F> {
        ConformalElement::basis(self.rank(), i, Poly::one())
    }

    /// Degree of a nonzero homogeneous element; `None` for zero.
    pub fn element_degree(&self, a: &ConformalElement<F>) -> Result<Option<usize>> {
        if a.len() != self.rank() {
            return Err(Error::DimensionMismatch("element length".into()));
        }
        let mut deg = None;
        for (i, c) in a.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return Err(Error::NotHomogeneous),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// `(a _lambda b)` as a coordinate vector over `Q[lambda, T]`.
    pub fn lambda_product(&self, a: &ConformalElement<F>, b: &ConformalElement<F>) -> Result<Vec<Poly<F>>> {
        self.product(a, b, &Poly::var(Var::Lambda))
    }

    /// `(a _L b)` where the product variable is replaced by the polynomial
    /// `l` (for instance `mu`, or the `nu` of the associativity law).
    pub fn product(&self, a: &ConformalElement<F>, b: &ConformalElement<F>, l: &Poly<F>) -> Result<Vec<Poly<F>>> {
        let (Some(alpha), Some(beta)) = (self.element_degree(a)?, self.element_degree(b)?) else {
            return Ok(vec![Poly::zero(); self.rank()]);
        };
        Ok(self.product_graded(a, alpha, b, beta, l))
    }

    fn product_graded(
        &self,
        a: &ConformalElement<F>,
        alpha: usize,
        b: &ConformalElement<F>,
        beta: usize,
        l: &Poly<F>,
    ) -> Vec<Poly<F>> {
        let ctx = &self.ctx;
        let n = self.rank();
        let (left, right) = sesqui_images(ctx, alpha, beta, l);
        let mut out = vec![Poly::zero(); n];
        for (i, h) in a.coords.iter().enumerate() {
            if h.is_zero() {
                continue;
            }
            let hs = h.subst1(Var::T, &left);
            for (j, g) in b.coords.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                let factor = Poly::mul(&hs, &g.subst1(Var::T, &right));
                for (k, c) in self.structure[i][j].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let ck = c.subst1(Var::Lambda, l);
                    out[k] = Poly::add(&out[k], &Poly::mul(&factor, &ck));
                }
            }
        }
        out
    }
}

/// The two (C3) substitution targets for `T`: on the left factor
/// `-sigma(alpha) (l + phi(alpha, alpha^-1))`, on the right factor
/// `T + sigma(alpha beta) l + phi(alpha^-1, alpha beta)`.
pub fn sesqui_images<F: Scalar>(ctx: &GradingContext<F>, alpha: usize, beta: usize, l: &Poly<F>) -> (Poly<F>, Poly<F>) {
    let ai = ctx.inv(alpha);
    let ab = ctx.mul(alpha, beta);
    let left = Poly::add(l, &Poly::constant(ctx.phi(alpha, ai).clone())).scale(&-ctx.sigma(alpha).clone());
    let right = Poly::add(
        &Poly::add(&Poly::var(Var::T), &l.scale(ctx.sigma(ab))),
        &Poly::constant(ctx.phi(ai, ab).clone()),
    );
    (left, right)
}

/// `nu = sigma(alpha) (mu - lambda - phi(beta^-1, alpha^-1))`.
pub fn assoc_nu<F: Scalar>(ctx: &GradingContext<F>, alpha: usize, beta: usize) -> Poly<F> {
    let mu = Poly::var(Var::Mu);
    let lam = Poly::var(Var::Lambda);
    let c = Poly::constant(ctx.phi(ctx.inv(beta), ctx.inv(alpha)).clone());
    Poly::sub(&Poly::sub(&mu, &lam), &c).scale(ctx.sigma(alpha))
}

/// Which input of an associativity instance carries an extra factor `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TSlot {
    None,
    A,
    B,
    C,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AxiomFailure {
    /// `c_ijk != 0` although `alpha_k != alpha_i alpha_j`.
    Grading { i: usize, j: usize, k: usize },
    Sesquilinearity { i: usize, j: usize, side: &'static str },
    Associativity { i: usize, j: usize, k: usize, slot: TSlot },
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomFailure::Grading { i, j, k } => write!(f, "(C2) grading fails at (i,j,k) = ({i},{j},{k})"),
            AxiomFailure::Sesquilinearity { i, j, side } => write!(f, "(C3) {side} law fails at (i,j) = ({i},{j})"),
            AxiomFailure::Associativity { i, j, k, slot } => {
                write!(f, "associativity fails at (i,j,k) = ({i},{j},{k}), T-multiple on {slot:?}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    pub failure: Option<AxiomFailure>,
    pub associativity_instances: usize,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Verifies (C2), both (C3) laws on `T e_i` inputs, and associativity on
/// all basis triples with and without a `T` factor on each slot, as
/// identities in `Q[lambda, mu, T]`.
pub fn check_axioms<F: Scalar>(c: &GradedConformalAlgebra<F>) -> AxiomReport {
    let n = c.rank();
    let ctx = c.ctx();
    for i in 0..n {
        for j in 0..n {
            let d = ctx.mul(c.degrees[i], c.degrees[j]);
            if let Some(k) = (0..n).find(|&k| !c.structure[i][j][k].is_zero() && c.degrees[k] != d) {
                return AxiomReport { failure: Some(AxiomFailure::Grading { i, j, k }), associativity_instances: 0 };
            }
        }
    }
    let lam = Poly::var(Var::Lambda);
    let t = Poly::var(Var::T);
    for i in 0..n {
        for j in 0..n {
            let (alpha, beta) = (c.degrees[i], c.degrees[j]);
            let base = c.product_graded(&c.basis_element(i), alpha, &c.basis_element(j), beta, &lam);
            let (left, right) = sesqui_images(ctx, alpha, beta, &lam);
            let ta = c.product_graded(&ConformalElement::basis(n, i, t.clone()), alpha, &c.basis_element(j), beta, &lam);
            if ta != scale_all(&base, &left) {
                return fail(AxiomFailure::Sesquilinearity { i, j, side: "left" });
            }
            let tb = c.product_graded(&c.basis_element(i), alpha, &ConformalElement::basis(n, j, t.clone()), beta, &lam);
            if tb != scale_all(&base, &right) {
                return fail(AxiomFailure::Sesquilinearity { i, j, side: "right" });
            }
        }
    }
    let cases: Vec<(usize, usize, usize, TSlot)> = (0..n)
        .flat_map(|i| {
            (0..n).flat_map(move |j| {
                (0..n).flat_map(move |k| [TSlot::None, TSlot::A, TSlot::B, TSlot::C].map(|s| (i, j, k, s)))
            })
        })
        .collect();
    let count = cases.len();
    let bad = cases.par_iter().find_first(|&&(i, j, k, slot)| !associative_instance(c, i, j, k, slot));
    AxiomReport {
        failure: bad.map(|&(i, j, k, slot)| AxiomFailure::Associativity { i, j, k, slot }),
        associativity_instances: count,
    }
}

fn fail(f: AxiomFailure) -> AxiomReport {
    AxiomReport { failure: Some(f), associativity_instances: 0 }
}

fn scale_all<F: Scalar>(v: &[Poly<F>], s: &Poly<F>) -> Vec<Poly<F>> {
    v.iter().map(|p| Poly::mul(p, s)).collect()
}

fn associative_instance<F: Scalar>(c: &GradedConformalAlgebra<F>, i: usize, j: usize, k: usize, slot: TSlot) -> bool {
    let n = c.rank();
    let ctx = c.ctx();
    let t = Poly::var(Var::T);
    let coef = |s: TSlot| if s == slot { t.clone() } else { Poly::one() };
    let a = ConformalElement::basis(n, i, coef(TSlot::A));
    let b = ConformalElement::basis(n, j, coef(TSlot::B));
    let cc = ConformalElement::basis(n, k, coef(TSlot::C));
    let (alpha, beta, gamma) = (c.degrees[i], c.degrees[j], c.degrees[k]);
    let lam = Poly::var(Var::Lambda);
    let mu = Poly::var(Var::Mu);
    let ab = ConformalElement::new(c.product_graded(&a, alpha, &b, beta, &lam));
    let lhs = c.product_graded(&ab, ctx.mul(alpha, beta), &cc, gamma, &mu);
    let nu = assoc_nu(ctx, alpha, beta);
    let bc = ConformalElement::new(c.product_graded(&b, beta, &cc, gamma, &nu));
    let rhs = c.product_graded(&a, alpha, &bc, ctx.mul(beta, gamma), &lam);
    lhs == rhs
}

/// The current algebra: the free `Q[T]`-module on a basis of `A` with
/// constant structure polynomials, the (C3) factors entering through
/// [`GradedConformalAlgebra::lambda_product`].
pub fn cur<F: Scalar>(a: &GradedAlgebraFD<F>, ctx: &GradingContext<F>) -> Result<GradedConformalAlgebra<F>> {
    if a.group() != ctx.group() {
        return Err(Error::Invalid("algebra and context are graded by different groups".into()));
    }
    if let Some((i, j, k)) = a.associativity_violation() {
        return Err(Error::AlgebraNotAssociative(i, j, k));
    }
    Ok(cur_unchecked(a, ctx))
}

/// [`cur`] without the associativity precondition, for planted failures.
pub fn cur_unchecked<F: Scalar>(a: &GradedAlgebraFD<F>, ctx: &GradingContext<F>) -> GradedConformalAlgebra<F> {
    let structure = a
        .structure_table()
        .iter()
        .map(|r| r.iter().map(|v| v.iter().map(|c| Poly::constant(c.clone())).collect()).collect())
        .collect();
    GradedConformalAlgebra { ctx: ctx.clone(), degrees: a.degrees().to_vec(), structure }
}

/// The same algebra on the free basis `f_i = sum_j p[i][j](T) e_j`. `p`
/// must preserve degrees and be invertible over `Q[T]`.
pub fn rebase<F: Scalar>(c: &GradedConformalAlgebra<F>, p: &PolyMatrix<F>) -> Result<GradedConformalAlgebra<F>> {
    let n = c.rank();
    if p.len() != n || p.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("change of basis must be rank x rank".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if !p[i][j].is_zero() && c.degrees[i] != c.degrees[j] {
                return Err(Error::NotHomogeneous);
            }
        }
    }
    let pinv = polymat::inverse(p, Var::T)?;
    let rows: Vec<ConformalElement<F>> = p.iter().map(|r| ConformalElement::new(r.clone())).collect();
    let mut structure = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let v = c.lambda_product(&rows[i], &rows[j])?;
            structure[i][j] = (0..n)
                .map(|l| (0..n).fold(Poly::zero(), |acc, k| Poly::add(&acc, &Poly::mul(&v[k], &pinv[k][l]))))
                .collect();
        }
    }
    Ok(GradedConformalAlgebra { ctx: c.ctx.clone(), degrees: c.degrees.clone(), structure })
}

/// Re-grading along a cochain: the module action becomes
/// `h . a = h(T - tau(alpha)) a` and the product
/// `(a _[lambda] b) = (a _{lambda + tau(alpha^-1)} b)`, so that
/// `c'_ijk(lambda, T) = c_ijk(lambda + tau(alpha_i^-1), T + tau(alpha_i alpha_j))`.
/// The result is a `(Gamma, sigma, phi + delta tau)`-graded algebra.
pub fn regrade_by_tau<F: Scalar>(
    c: &GradedConformalAlgebra<F>,
    tau: &OneCochain<F>,
    phi_new: &AdditiveCocycle<F>,
) -> Result<GradedConformalAlgebra<F>> {
    let ctx = c.ctx();
    let expected = AdditiveCocycle::from_table(ctx.phi_table().to_vec()).add(&coboundary_of(tau, ctx));
    if &expected != phi_new {
        return Err(Error::CocyclesNotCohomologous("phi' must equal phi + delta tau".into()));
    }
    let new_ctx = ctx.clone().with_phi(phi_new.table().to_vec())?;
    let n = c.rank();
    let mut structure = c.structure.clone();
    for i in 0..n {
        let ai = c.degrees[i];
        let lam_img = Poly::affine(Var::Lambda, F::one(), tau.get(ctx.inv(ai)).clone());
        for j in 0..n {
            let t_img = Poly::affine(Var::T, F::one(), tau.get(ctx.mul(ai, c.degrees[j])).clone());
            let mut b: crate::poly::Bindings<F> = Default::default();
            b[Var::Lambda.index()] = Some(lam_img.clone());
            b[Var::T.index()] = Some(t_img);
            for p in structure[i][j].iter_mut() {
                *p = p.substitute(&b);
            }
        }
    }
    Ok(GradedConformalAlgebra { ctx: new_ctx, degrees: c.degrees.clone(), structure })
}

/// Checks that the constant map `e_a -> Q^{-1} e_a Q` on `Cur(M_n(Q))`
/// (basis `E_ij` at index `i * n + j`) preserves the lambda-product.
pub fn conjugation_automorphism<F: Scalar>(c: &GradedConformalAlgebra<F>, q: &Matrix<F>) -> Result<bool> {
    let n = q.rows();
    if !q.is_square() || c.rank() != n * n {
        return Err(Error::DimensionMismatch("Q must be n x n for Cur(M_n)".into()));
    }
    let qinv = q.inverse().ok_or(Error::SingularMatrix)?;
    let image = |idx: usize| -> ConformalElement<F> {
        let m = qinv.mul(&Matrix::unit(n, n, idx / n, idx % n)).mul(q);
        ConformalElement::new(m.as_slice().iter().map(|x| Poly::constant(x.clone())).collect())
    };
    let images: Vec<ConformalElement<F>> = (0..n * n).map(image).collect();
    for i in 0..n * n {
        for j in 0..n * n {
            let lhs = c.lambda_product(&images[i], &images[j])?;
            let mut rhs = vec![Poly::zero(); n * n];
            for (k, ck) in c.structure[i][j].iter().enumerate() {
                if ck.is_zero() {
                    continue;
                }
                for (r, x) in rhs.iter_mut().zip(&images[k].coords) {
                    *r = Poly::add(r, &Poly::mul(ck, x));
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::parse::parse_poly;
    use crate::scalar::q;

    fn p(s: &str) -> Poly<Rational> {
        parse_poly(s).unwrap()
    }

    fn z2(sigma_u: i64, phi_uu: i64) -> GradingContext {
        GradingContext::new(
            FiniteGroup::z2(),
            vec![q(1), q(sigma_u)],
            vec![vec![q(0), q(0)], vec![q(0), q(phi_uu)]],
        )
        .unwrap()
    }

    #[test]
    fn left_t_gives_minus_lambda() {
        let g = FiniteGroup::trivial();
        let c = cur(&GradedAlgebraFD::matrix_algebra(g.clone(), 2), &GradingContext::trivial(g)).unwrap();
        let a = ConformalElement::basis(4, 1, p("T"));
        let b = c.basis_element(2);
        let r = c.lambda_product(&a, &b).unwrap();
        assert_eq!(r, vec![p("-lambda"), p("0"), p("0"), p("0")]);
    }

    #[test]
    fn right_t_gives_t_plus_lambda() {
        let g = FiniteGroup::trivial();
        let c = cur(&GradedAlgebraFD::matrix_algebra(g.clone(), 2), &GradingContext::trivial(g)).unwrap();
        let r = c.lambda_product(&c.basis_element(1), &ConformalElement::basis(4, 2, p("T"))).unwrap();
        assert_eq!(r[0], p("T + lambda"));
    }

    #[test]
    fn sign_twist_on_left_factor() {
        let ctx = z2(-1, 0);
        let a = GradedAlgebraFD::group_algebra(FiniteGroup::z2());
        let c = cur(&a, &ctx).unwrap();
        // h(T) = T on a degree-u element: factor h(-sigma(u) lambda) = lambda.
        let r = c.lambda_product(&ConformalElement::basis(2, 1, p("T")), &c.basis_element(1)).unwrap();
        assert_eq!(r, vec![p("lambda"), p("0")]);
    }

    #[test]
    fn current_matrix_unit_product() {
        let g = FiniteGroup::trivial();
        let c = cur(&GradedAlgebraFD::matrix_algebra(g.clone(), 2), &GradingContext::trivial(g)).unwrap();
        // E12 _lambda E21 = E11
        assert_eq!(c.lambda_product(&c.basis_element(1), &c.basis_element(2)).unwrap(), vec![p("1"), p("0"), p("0"), p("0")]);
    }

    #[test]
    fn inhomogeneous_argument_rejected() {
        let c = cur(&GradedAlgebraFD::group_algebra(FiniteGroup::z2()), &z2(1, 0)).unwrap();
        let mixed = ConformalElement::new(vec![p("1"), p("1")]);
        assert_eq!(c.lambda_product(&mixed, &c.basis_element(0)).unwrap_err(), Error::NotHomogeneous);
    }

    /// Classical associativity `(a _l b) _m c = a _l (b _{m-l} c)` computed
    /// directly from the classical current formula `f(-l) g(T+l) ab`.
    #[test]
    fn cur_m2_matches_classical_oracle() {
        let g = FiniteGroup::trivial();
        let a = GradedAlgebraFD::matrix_algebra(g.clone(), 2);
        let c = cur(&a, &GradingContext::trivial(g)).unwrap();
        let report = check_axioms(&c);
        assert!(report.passed(), "{:?}", report.failure);
        assert_eq!(report.associativity_instances, 4 * 64);
        // Spot-check one instance against the classical formula by hand:
        // (T E12 _l E21) _m E11 = (-l) E11 _m E11 = -l E11;
        // T E12 _l (E21 _{m-l} E11) = T E12 _l E21 = -l E11.
        let t12 = ConformalElement::basis(4, 1, p("T"));
        let ab = ConformalElement::new(c.lambda_product(&t12, &c.basis_element(2)).unwrap());
        let lhs = c.product(&ab, &c.basis_element(0), &p("mu")).unwrap();
        assert_eq!(lhs[0], p("-lambda"));
    }

    #[test]
    fn planted_grading_violation() {
        let ctx = z2(1, 0);
        let mut s = vec![vec![vec![p("0"); 2]; 2]; 2];
        s[0][0][0] = p("1");
        s[0][1][0] = p("1");
        let c = GradedConformalAlgebra::new(ctx, vec![0, 1], s).unwrap();
        assert_eq!(check_axioms(&c).failure, Some(AxiomFailure::Grading { i: 0, j: 1, k: 0 }));
    }

    #[test]
    fn planted_nonassociative_fails() {
        let g = FiniteGroup::trivial();
        let mut mult = vec![vec![vec![q(0); 2]; 2]; 2];
        mult[0][0][1] = q(1);
        mult[1][0][0] = q(1);
        let a = GradedAlgebraFD::new_unchecked(g.clone(), vec![0, 0], mult).unwrap();
        let ctx = GradingContext::trivial(g);
        assert!(cur(&a, &ctx).is_err());
        let report = check_axioms(&cur_unchecked(&a, &ctx));
        assert!(matches!(report.failure, Some(AxiomFailure::Associativity { .. })));
    }

    #[test]
    fn lambda_dependent_structure_checked() {
        // (e _l e) = (T + 2 l) e is not associative; (e _l e) = e is.
        let ctx = GradingContext::trivial(FiniteGroup::trivial());
        let bad = GradedConformalAlgebra::new(ctx.clone(), vec![0], vec![vec![vec![p("T + 2*lambda")]]]).unwrap();
        assert!(!check_axioms(&bad).passed());
        let ok = GradedConformalAlgebra::new(ctx, vec![0], vec![vec![vec![p("1")]]]).unwrap();
        assert!(check_axioms(&ok).passed());
    }

    #[test]
    fn x_in_structure_rejected() {
        let ctx = GradingContext::trivial(FiniteGroup::trivial());
        assert!(GradedConformalAlgebra::new(ctx, vec![0], vec![vec![vec![p("x")]]]).is_err());
    }

    fn rebased_group_algebra(ctx: &GradingContext) -> GradedConformalAlgebra {
        // QZ2 (+) QZ2 on f1 = e1 + T e3, f3 = e3 (degree e), f2 = e2, f4 = e4 (degree u).
        let a = GradedAlgebraFD::group_algebra(FiniteGroup::z2());
        let c = cur(&a.direct_sum(&a).unwrap(), ctx).unwrap();
        let mut pm = polymat::identity(4);
        pm[0][2] = p("T");
        rebase(&c, &pm).unwrap()
    }

    #[test]
    fn rebase_keeps_axioms_and_adds_t() {
        for ctx in [z2(1, 0), z2(-1, 0), z2(1, 2)] {
            let r = rebased_group_algebra(&ctx);
            assert!(r.structure_table().iter().flatten().flatten().any(|c| c.involves(Var::T)));
            assert!(check_axioms(&r).passed());
        }
    }

    #[test]
    fn regrade_trivial_tau_is_identity() {
        let ctx = z2(1, 2);
        let c = rebased_group_algebra(&ctx);
        let tau = OneCochain::zero(ctx.group());
        let same = regrade_by_tau(&c, &tau, &AdditiveCocycle::from_table(ctx.phi_table().to_vec())).unwrap();
        assert_eq!(same, c);
    }

    #[test]
    fn regrade_kills_phi() {
        let ctx = z2(1, 2);
        let c = rebased_group_algebra(&ctx);
        // delta tau with tau(u) = -1 is phi(u,u) = -2, so phi + delta tau = 0.
        let tau = OneCochain::new(ctx.group(), vec![q(0), q(-1)]).unwrap();
        let zero = AdditiveCocycle::from_table(vec![vec![q(0); 2]; 2]);
        let r = regrade_by_tau(&c, &tau, &zero).unwrap();
        assert!(check_axioms(&r).passed());
        // Against the wrong target the claim is rejected.
        let plus = OneCochain::new(ctx.group(), vec![q(0), q(1)]).unwrap();
        assert!(matches!(regrade_by_tau(&c, &plus, &zero), Err(Error::CocyclesNotCohomologous(_))));
        // Round trip.
        let back = regrade_by_tau(&r, &tau.neg(), &AdditiveCocycle::from_table(ctx.phi_table().to_vec())).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn regrade_into_wrong_phi_fails_axioms() {
        // Keep the structure of a phi = 2 algebra but claim phi = 0: the
        // T-dependent constants expose the mismatch.
        let ctx = z2(1, 2);
        let c = rebased_group_algebra(&ctx);
        let lying = GradedConformalAlgebra::new(z2(1, 0), c.degrees().to_vec(), c.structure_table().to_vec()).unwrap();
        assert!(!check_axioms(&lying).passed());
    }

    #[test]
    fn conjugations_preserve_products() {
        let g = FiniteGroup::trivial();
        let c = cur(&GradedAlgebraFD::matrix_algebra(g.clone(), 2), &GradingContext::trivial(g)).unwrap();
        let mk = |r: [[i64; 2]; 2]| Matrix::from_rows(r.iter().map(|x| x.iter().map(|&v| q(v)).collect()).collect());
        assert!(conjugation_automorphism(&c, &mk([[1, 0], [0, 1]])).unwrap());
        assert!(conjugation_automorphism(&c, &mk([[0, 1], [1, 0]])).unwrap());
        assert!(conjugation_automorphism(&c, &mk([[1, 0], [0, 2]])).unwrap());
        assert_eq!(conjugation_automorphism(&c, &mk([[1, 1], [1, 1]])).unwrap_err(), Error::SingularMatrix);
    }
}
