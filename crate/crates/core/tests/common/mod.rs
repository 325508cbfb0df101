#![allow(dead_code)]

use gradconf::algebra::GradedAlgebraFD;
use gradconf::group::{coset_decomposition, FineSubgroupData};
use gradconf::matrix::Matrix;
use gradconf::scalar::q;
use gradconf::twisted::TwistedMatrixAlgebra;
use gradconf::{FiniteGroup, GradingContext, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn z2_ctx(sigma_u: i64, phi_uu: i64) -> GradingContext {
    GradingContext::new(FiniteGroup::z2(), vec![q(1), q(sigma_u)], vec![vec![q(0), q(0)], vec![q(0), q(phi_uu)]]).unwrap()
}

/// The fixture contexts: trivial group, `Z_2` with `sigma(u) = 1, -1`
/// and `phi = 0`, and `Z_2` with `sigma = 1, phi(u, u) = 2`.
pub fn contexts() -> Vec<(&'static str, GradingContext)> {
    vec![
        ("trivial", GradingContext::trivial(FiniteGroup::trivial())),
        ("Z2 sigma=+1 phi=0", z2_ctx(1, 0)),
        ("Z2 sigma=-1 phi=0", z2_ctx(-1, 0)),
        ("Z2 sigma=1 phi(u,u)=2", z2_ctx(1, 2)),
    ]
}

pub fn full_fine(group: &FiniteGroup) -> FineSubgroupData {
    coset_decomposition(group, &group.elements().collect::<Vec<_>>(), &[]).unwrap()
}

/// `theta` on `Z_2` with `theta(u, u) = c`.
pub fn z2_theta(c: i64) -> Vec<Vec<Rational>> {
    vec![vec![q(1), q(1)], vec![q(1), q(c)]]
}

/// `M_n(Q^theta Z_2)` with `theta(u, u) = c`.
pub fn twisted_z2(n: usize, c: i64) -> GradedAlgebraFD {
    let g = FiniteGroup::z2();
    TwistedMatrixAlgebra::new(&g, &full_fine(&g), &[n], z2_theta(c)).unwrap().algebra().clone()
}

/// The axiom fixtures `Q, QZ_2, M_2(Q), M_2(Q) + Q, M_1(Q^chi Z_2)` graded
/// by `group` (trivially when `group` is trivial).
pub fn algebra_fixtures(group: &FiniteGroup) -> Vec<(&'static str, GradedAlgebraFD)> {
    let m2 = GradedAlgebraFD::matrix_algebra(group.clone(), 2);
    let m2q = m2.direct_sum(&GradedAlgebraFD::field(group.clone())).unwrap();
    let (qz2, tw) = if group.order() == 2 {
        (GradedAlgebraFD::group_algebra(FiniteGroup::z2()), twisted_z2(1, -1))
    } else {
        (
            GradedAlgebraFD::group_algebra(FiniteGroup::z2()).trivially_graded(group.clone()),
            twisted_z2(1, -1).trivially_graded(group.clone()),
        )
    };
    vec![("Q", GradedAlgebraFD::field(group.clone())), ("QZ2", qz2), ("M2(Q)", m2), ("M2(Q)+Q", m2q), ("M1(Q^chi Z2)", tw)]
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into())
}

/// A random invertible matrix with small integer entries.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Rational> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| q(rng.gen_range(-3i64..=3)));
        if !num_traits::Zero::is_zero(&m.determinant()) {
            return m;
        }
    }
}
