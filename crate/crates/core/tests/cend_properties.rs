mod common;

use common::z2_ctx;
use gradconf::cend::{cend_product, change_basis, pi_gamma, CendMatrix};
use gradconf::poly::{Monomial, Poly, Var};
use gradconf::polymat::PolyMatrix;
use gradconf::scalar::q;
use gradconf::{FiniteGroup, GradingContext, MPoly};
use proptest::prelude::*;

fn z4_ctx(phi_22: i64) -> GradingContext {
    let mut phi = vec![vec![q(0); 4]; 4];
    phi[2][2] = q(phi_22);
    GradingContext::new(FiniteGroup::cyclic(4), gradconf::grading::cyclic_sign(4), phi).unwrap()
}

fn contexts() -> Vec<GradingContext> {
    let mut out: Vec<GradingContext> = common::contexts().into_iter().map(|(_, c)| c).collect();
    out.push(z4_ctx(0));
    out.push(z4_ctx(1));
    out
}

/// Polynomials in `T, x` with small integer coefficients.
fn poly_tx(max_deg: u32) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((-3i64..=3, 0..=max_deg, 0..=max_deg), 0..4).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(), |acc, (c, t, x)| {
            Poly::add(&acc, &Poly::term(q(c), Monomial([t, x, 0, 0])))
        })
    })
}

fn lam() -> MPoly {
    Poly::var(Var::Lambda)
}

/// A homogeneous matrix of the given degree; entries outside the allowed
/// slots are discarded.
fn homogeneous(ctx: &GradingContext, degrees: &[usize], alpha: usize, entries: Vec<MPoly>) -> CendMatrix {
    let n = degrees.len();
    let mut m = CendMatrix::zero(degrees.to_vec());
    for (idx, f) in entries.into_iter().enumerate().take(n * n) {
        let (i, j) = (idx / n, idx % n);
        if m.slot_degree(ctx, i, j) == alpha {
            m = m.add(&CendMatrix::single(degrees.to_vec(), i, j, f));
        }
    }
    m
}

/// A change of basis preserving degrees and invertible over `Q[T]`:
/// unipotent upper triangular within each degree, times nonzero scalars.
fn unimodular(degrees: &[usize], diag: &[i64], upper: &[MPoly]) -> PolyMatrix<gradconf::Rational> {
    let n = degrees.len();
    let mut out = gradconf::polymat::zeros(n, n);
    for i in 0..n {
        out[i][i] = Poly::constant(q(diag[i]));
        for j in i + 1..n {
            if degrees[i] == degrees[j] {
                out[i][j] = upper[i * n + j].subst1(Var::X, &Poly::zero());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn change_basis_commutes_with_product(
        ci in 0usize..6,
        degs in prop::collection::vec(0usize..4, 1..=3),
        a_deg in 0usize..4,
        b_deg in 0usize..4,
        fa in prop::collection::vec(poly_tx(2), 9),
        fb in prop::collection::vec(poly_tx(2), 9),
        diag in prop::collection::vec(prop::sample::select(vec![-2i64, -1, 1, 3]), 3),
        upper in prop::collection::vec(poly_tx(1), 9),
    ) {
        let ctx = &contexts()[ci];
        let o = ctx.order();
        let degrees: Vec<usize> = degs.iter().map(|d| d % o).collect();
        let a = homogeneous(ctx, &degrees, a_deg % o, fa);
        let b = homogeneous(ctx, &degrees, b_deg % o, fb);
        let qm = unimodular(&degrees, &diag, &upper);
        let lhs = change_basis(ctx, &cend_product(ctx, &a, &b, &lam()).unwrap(), &qm).unwrap();
        let rhs = cend_product(ctx, &change_basis(ctx, &a, &qm).unwrap(), &change_basis(ctx, &b, &qm).unwrap(), &lam())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_is_a_homomorphism(
        ci in 0usize..6,
        degs in prop::collection::vec(0usize..4, 1..=3),
        gamma in 0usize..4,
        fa in prop::collection::vec(poly_tx(2), 9),
        fb in prop::collection::vec(poly_tx(2), 9),
    ) {
        let ctx = &contexts()[ci];
        let o = ctx.order();
        let degrees: Vec<usize> = degs.iter().map(|d| d % o).collect();
        let gamma = gamma % o;
        let e = ctx.identity();
        let a = homogeneous(ctx, &degrees, e, fa);
        let b = homogeneous(ctx, &degrees, e, fb);
        let plain = GradingContext::trivial(FiniteGroup::trivial());
        let as_plain = |m: Vec<Vec<MPoly>>| CendMatrix::new(vec![0; m.len()], m).unwrap();
        let lhs = as_plain(pi_gamma(ctx, &cend_product(ctx, &a, &b, &lam()).unwrap(), gamma).unwrap());
        let pa = as_plain(pi_gamma(ctx, &a, gamma).unwrap());
        let pb = as_plain(pi_gamma(ctx, &b, gamma).unwrap());
        prop_assert_eq!(lhs, cend_product(&plain, &pa, &pb, &lam()).unwrap());
    }

    #[test]
    fn product_is_associative_on_random_matrices(
        ci in 0usize..6,
        degs in prop::collection::vec(0usize..4, 1..=3),
        adeg in prop::collection::vec(0usize..4, 3),
        fa in prop::collection::vec(poly_tx(2), 9),
        fb in prop::collection::vec(poly_tx(2), 9),
        fc in prop::collection::vec(poly_tx(2), 9),
    ) {
        let ctx = &contexts()[ci];
        let o = ctx.order();
        let degrees: Vec<usize> = degs.iter().map(|d| d % o).collect();
        let (alpha, beta) = (adeg[0] % o, adeg[1] % o);
        let a = homogeneous(ctx, &degrees, alpha, fa);
        let b = homogeneous(ctx, &degrees, beta, fb);
        let c = homogeneous(ctx, &degrees, adeg[2] % o, fc);
        let mu = Poly::var(Var::Mu);
        let nu = gradconf::conformal::assoc_nu(ctx, alpha, beta);
        let lhs = cend_product(ctx, &cend_product(ctx, &a, &b, &lam()).unwrap(), &c, &mu).unwrap();
        let rhs = cend_product(ctx, &a, &cend_product(ctx, &b, &c, &nu).unwrap(), &lam()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn change_basis_rejects_mixing_degrees() {
    let ctx = z2_ctx(1, 0);
    let a = CendMatrix::identity(vec![0, 1]);
    let mut qm = gradconf::polymat::identity(2);
    qm[0][1] = Poly::one();
    assert!(change_basis(&ctx, &a, &qm).is_err());
}
