//! Graded irreducibility of a graded subalgebra of `End V`.
//!
//! `V` is given by the degree of each coordinate, and the subalgebra by a
//! basis of homogeneous matrices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GradedAlgebraFD;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::{unit_vec, Matrix, Subspace};
use crate::scalar::{ExactField, Scalar};
use crate::semisimple::{center, min_poly, radical_fd, split_commutative};

/// Default seed for the randomized search outside the semisimple regime.
pub const DEFAULT_SEED: u64 = 0x5eed;
const RANDOM_TRIES: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility<F> {
    Irreducible,
    /// A nonzero proper graded invariant subspace of `V`.
    Reducible(Subspace<F>),
    Inconclusive(String),
}

impl<F> Irreducibility<F> {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Errors unless every matrix is `dim V` square and maps `V_g` into
/// `V_{d g}` for its degree `d`.
pub fn check_homogeneous<F: Scalar>(group: &FiniteGroup, v_degrees: &[usize], basis: &[(usize, Matrix<F>)]) -> Result<()> {
    let n = v_degrees.len();
    if let Some(&g) = v_degrees.iter().find(|&&g| g >= group.order()) {
        return Err(Error::Invalid(format!("V-degree index {g} out of range")));
    }
    for (idx, (d, m)) in basis.iter().enumerate() {
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!("basis matrix {idx} is not {n}x{n}")));
        }
        if *d >= group.order() {
            return Err(Error::Invalid(format!("degree index {d} out of range")));
        }
        for r in 0..n {
            for c in 0..n {
                if !m[(r, c)].is_zero() && v_degrees[r] != group.mul(*d, v_degrees[c]) {
                    return Err(Error::Invalid(format!(
                        "basis matrix {idx} is not homogeneous of degree {}",
                        group.label(*d)
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Coordinates of each `V_g`.
pub fn coordinates_by_degree(order: usize, v_degrees: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); order];
    for (i, &g) in v_degrees.iter().enumerate() {
        out[g].push(i);
    }
    out
}

fn is_graded(sub: &Subspace<impl Scalar>, v_degrees: &[usize]) -> bool {
    sub.basis().iter().all(|w| {
        let mut degs: Vec<usize> = v_degrees.to_vec();
        degs.sort_unstable();
        degs.dedup();
        degs.into_iter().all(|g| {
            let part: Vec<_> = w
                .iter()
                .zip(v_degrees)
                .map(|(x, &d)| if d == g { x.clone() } else { num_traits::Zero::zero() })
                .collect();
            sub.contains(&part)
        })
    })
}

/// `Qv + Av`, the invariant subspace generated by `v`.
fn generated<F: Scalar>(basis: &[(usize, Matrix<F>)], v: &[F]) -> Subspace<F> {
    Subspace::span(v.len(), std::iter::once(v.to_vec()).chain(basis.iter().map(|(_, m)| m.mul_vec(v))))
}

fn image<F: Scalar>(m: &Matrix<F>) -> Subspace<F> {
    Subspace::span(m.rows(), m.transpose().to_rows())
}

fn proper_nonzero<F: Scalar>(s: &Subspace<F>) -> bool {
    s.dim() > 0 && s.dim() < s.ambient()
}

pub fn graded_irreducible<F: ExactField>(
    group: &FiniteGroup,
    v_degrees: &[usize],
    basis: &[(usize, Matrix<F>)],
) -> Result<Irreducibility<F>> {
    graded_irreducible_seeded(group, v_degrees, basis, DEFAULT_SEED)
}

/// Three-valued decision: exact when the span of `basis` has zero radical
/// and the degree-`e` commutant splits over the ground field.
pub fn graded_irreducible_seeded<F: ExactField>(
    group: &FiniteGroup,
    v_degrees: &[usize],
    basis: &[(usize, Matrix<F>)],
    seed: u64,
) -> Result<Irreducibility<F>> {
    check_homogeneous(group, v_degrees, basis)?;
    let n = v_degrees.len();
    if n == 0 {
        return Err(Error::Invalid("V must be nonzero".into()));
    }
    for i in 0..n {
        let w = generated(basis, &unit_vec(n, i));
        if proper_nonzero(&w) {
            return Ok(Irreducibility::Reducible(w));
        }
    }
    let a = GradedAlgebraFD::from_matrices(group.clone(), basis)?;
    let as_matrix = |v: &[F]| {
        basis.iter().zip(v).fold(Matrix::zeros(n, n), |acc, ((_, m), c)| acc.add(&m.scale(c)))
    };
    let rad = radical_fd(&a);
    if rad.dim() > 0 {
        let rv = Subspace::span(
            n,
            rad.basis().iter().flat_map(|r| {
                let m = as_matrix(r);
                (0..n).map(move |i| m.mul_vec(&unit_vec(n, i)))
            }),
        );
        if proper_nonzero(&rv) && is_graded(&rv, v_degrees) {
            return Ok(Irreducibility::Reducible(rv));
        }
        return Ok(random_search(basis, v_degrees, group.order(), seed));
    }
    if a.dim() == 0 {
        // Only reachable with dim V = 1.
        return Ok(Irreducibility::Irreducible);
    }
    let unit = as_matrix(&a.unit().ok_or_else(|| Error::InternalInconsistency("semisimple algebra without unit".into()))?);
    let complement = image(&Matrix::identity(n).sub(&unit));
    if proper_nonzero(&complement) {
        return Ok(Irreducibility::Reducible(complement));
    }
    let comm = degree_e_commutant(v_degrees, basis);
    if comm.len() <= 1 {
        return Ok(Irreducibility::Irreducible);
    }
    let triv = FiniteGroup::trivial();
    let e_alg = GradedAlgebraFD::from_matrices(triv.clone(), &comm.iter().map(|m| (0, m.clone())).collect::<Vec<_>>())?;
    let e_matrix = |v: &[F]| comm.iter().zip(v).fold(Matrix::zeros(n, n), |acc, (m, c)| acc.add(&m.scale(c)));
    let e_rad = radical_fd(&e_alg);
    if let Some(r) = e_rad.basis().first() {
        let w = image(&e_matrix(r));
        if proper_nonzero(&w) {
            return Ok(Irreducibility::Reducible(w));
        }
    }
    if let Some(w) = rational_eigen_split(&comm) {
        return Ok(Irreducibility::Reducible(w));
    }
    let one = e_alg.unit().ok_or_else(|| Error::InternalInconsistency("commutant without unit".into()))?;
    match split_commutative(&e_alg, center(&e_alg).basis(), &one) {
        Ok(idems) if idems.len() > 1 => Ok(Irreducibility::Reducible(image(&e_matrix(&idems[0])))),
        Ok(_) => Ok(Irreducibility::Inconclusive(format!(
            "degree-e commutant is central simple of dimension {} with no zero divisor found",
            comm.len()
        ))),
        Err(Error::SplitFieldRequired(msg)) => Ok(Irreducibility::Inconclusive(format!("degree-e commutant: {msg}"))),
        Err(e) => Err(e),
    }
}

/// Basis of the degree-`e` matrices commuting with every basis matrix.
pub fn degree_e_commutant<F: Scalar>(v_degrees: &[usize], basis: &[(usize, Matrix<F>)]) -> Vec<Matrix<F>> {
    let n = v_degrees.len();
    let cells: Vec<(usize, usize)> =
        (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|&(r, c)| v_degrees[r] == v_degrees[c]).collect();
    let mut rows = Vec::new();
    for (_, a) in basis {
        for r in 0..n {
            for c in 0..n {
                // (xi a - a xi)[r][c]
                rows.push(
                    cells
                        .iter()
                        .map(|&(i, j)| {
                            let mut v = F::zero();
                            if i == r {
                                v = v + a[(j, c)].clone();
                            }
                            if j == c {
                                v = v - a[(r, i)].clone();
                            }
                            v
                        })
                        .collect::<Vec<_>>(),
                );
            }
        }
    }
    let kernel = if rows.is_empty() {
        (0..cells.len()).map(|i| unit_vec(cells.len(), i)).collect()
    } else {
        Matrix::from_rows(rows).kernel()
    };
    kernel
        .into_iter()
        .map(|v| {
            let mut m = Matrix::zeros(n, n);
            for (&(i, j), x) in cells.iter().zip(v) {
                m[(i, j)] = x;
            }
            m
        })
        .collect()
}

/// `(xi - r) V` for a commutant element `xi` with a rational eigenvalue
/// `r` and minimal polynomial of degree at least two.
fn rational_eigen_split<F: ExactField>(comm: &[Matrix<F>]) -> Option<Subspace<F>> {
    let n = comm.first()?.rows();
    let flat = |m: &Matrix<F>| m.as_slice().to_vec();
    let mul = |x: &[F], y: &[F]| flat(&Matrix::from_flat(n, n, x.to_vec()).mul(&Matrix::from_flat(n, n, y.to_vec())));
    let one = flat(&Matrix::identity(n));
    let mut candidates: Vec<Matrix<F>> = comm.to_vec();
    for i in 0..comm.len() {
        for j in i + 1..comm.len() {
            candidates.push(comm[i].add(&comm[j]));
        }
    }
    for xi in candidates {
        let m = min_poly(mul, &one, &flat(&xi));
        if m.degree().unwrap_or(0) < 2 {
            continue;
        }
        if let Ok(roots) = F::field_roots(&m) {
            if let Some(r) = roots.first() {
                let w = image(&xi.sub(&Matrix::identity(n).scale(r)));
                if proper_nonzero(&w) {
                    return Some(w);
                }
            }
        }
    }
    None
}

fn random_search<F: ExactField>(
    basis: &[(usize, Matrix<F>)],
    v_degrees: &[usize],
    order: usize,
    seed: u64,
) -> Irreducibility<F> {
    let coords = coordinates_by_degree(order, v_degrees);
    let live: Vec<usize> = (0..order).filter(|&g| !coords[g].is_empty()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = v_degrees.len();
    for _ in 0..RANDOM_TRIES {
        let g = live[rng.gen_range(0..live.len())];
        let mut v = vec![F::zero(); n];
        for &i in &coords[g] {
            v[i] = F::from_int(rng.gen_range(-3..=3));
        }
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let w = generated(basis, &v);
        if proper_nonzero(&w) {
            return Irreducibility::Reducible(w);
        }
    }
    Irreducibility::Inconclusive(format!("randomized search with seed {seed} found no invariant subspace"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    #[test]
    fn full_matrix_algebra_is_irreducible() {
        let g = FiniteGroup::trivial();
        let basis: Vec<_> = (0..2).flat_map(|i| (0..2).map(move |j| (0, Matrix::<Rational>::unit(2, 2, i, j)))).collect();
        assert_eq!(graded_irreducible(&g, &[0, 0], &basis).unwrap(), Irreducibility::Irreducible);
    }

    #[test]
    fn diagonal_matrices_are_reducible() {
        let g = FiniteGroup::trivial();
        let basis = vec![(0, m(&[&[1, 0], &[0, 0]])), (0, m(&[&[0, 0], &[0, 1]]))];
        let res = graded_irreducible(&g, &[0, 0], &basis).unwrap();
        assert_eq!(res, Irreducibility::Reducible(Subspace::span(2, [vec![q(1), q(0)]])));
    }

    #[test]
    fn twisted_z2_on_two_lines_is_irreducible() {
        // I and J = [[0, -1/2], [2, 0]]: iota_u = 2, chi(u, u) = -1.
        let g = FiniteGroup::z2();
        let j = Matrix::from_rows(vec![vec![q(0), qf(-1, 2)], vec![q(2), q(0)]]);
        let basis = vec![(0, Matrix::identity(2)), (1, j)];
        assert_eq!(graded_irreducible(&g, &[0, 1], &basis).unwrap(), Irreducibility::Irreducible);
        assert_eq!(degree_e_commutant(&[0, 1], &basis).len(), 1);
    }

    #[test]
    fn identity_alone_on_graded_plane_is_reducible() {
        let g = FiniteGroup::z2();
        let res = graded_irreducible(&g, &[0, 1], &[(0, Matrix::<Rational>::identity(2))]).unwrap();
        assert!(matches!(res, Irreducibility::Reducible(w) if w.dim() == 1));
    }

    #[test]
    fn scalar_commutant_from_hidden_basis() {
        // Q^2 acting diagonally in a rotated basis: v-test passes on the
        // coordinate vectors, the commutant finds the split.
        let g = FiniteGroup::trivial();
        let basis = vec![(0, Matrix::identity(2)), (0, m(&[&[0, 1], &[1, 0]]))];
        let res = graded_irreducible(&g, &[0, 0], &basis).unwrap();
        match res {
            Irreducibility::Reducible(w) => {
                assert_eq!(w.dim(), 1);
                assert!(w.contains(&basis[1].1.mul_vec(&w.basis()[0])));
            }
            other => panic!("expected reducible, got {other:?}"),
        }
    }

    #[test]
    fn non_split_commutant_is_inconclusive() {
        // Q(i) acting on Q^2: irreducible over Q, commutant Q(i) has no
        // rational idempotent split; still irreducible in truth, and the
        // kernel either proves it or declines.
        let g = FiniteGroup::trivial();
        let basis = vec![(0, Matrix::identity(2)), (0, m(&[&[0, -1], &[1, 0]]))];
        let res = graded_irreducible(&g, &[0, 0], &basis).unwrap();
        assert!(matches!(res, Irreducibility::Inconclusive(_)));
    }

    #[test]
    fn upper_triangular_fixes_first_line() {
        let g = FiniteGroup::trivial();
        let basis = vec![(0, Matrix::identity(2)), (0, m(&[&[0, 1], &[0, 0]]))];
        let res = graded_irreducible(&g, &[0, 0], &basis).unwrap();
        assert_eq!(res, Irreducibility::Reducible(Subspace::span(2, [vec![q(1), q(0)]])));
    }

    #[test]
    fn nilpotent_part_gives_radical_certificate() {
        // N^2 = 0 in a basis where both coordinate vectors generate V.
        let g = FiniteGroup::trivial();
        let basis = vec![(0, Matrix::identity(2)), (0, m(&[&[1, 1], &[-1, -1]]))];
        let res = graded_irreducible(&g, &[0, 0], &basis).unwrap();
        assert_eq!(res, Irreducibility::Reducible(Subspace::span(2, [vec![q(1), q(-1)]])));
    }

    #[test]
    fn rejects_inhomogeneous_matrix() {
        let g = FiniteGroup::z2();
        let res = graded_irreducible(&g, &[0, 1], &[(0, m(&[&[0, 1], &[0, 0]]))]);
        assert!(matches!(res, Err(Error::Invalid(_))));
    }
}
