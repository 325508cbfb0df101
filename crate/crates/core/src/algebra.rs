//! Finite-dimensional associative `Gamma`-graded algebras given by
//! structure constants on a homogeneous basis.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::{Matrix, Subspace};
use crate::scalar::{Rational, Scalar};

/// `e_i e_j = sum_k mult[i][j][k] e_k`, with `e_i` of degree `degrees[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedAlgebraFD<F = Rational> {
    group: FiniteGroup,
    degrees: Vec<usize>,
    mult: Vec<Vec<Vec<F>>>,
}

impl<F: Scalar> GradedAlgebraFD<F> {
    /// Validates shape, grading and associativity.
    pub fn new(group: FiniteGroup, degrees: Vec<usize>, mult: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let a = Self::new_unchecked(group, degrees, mult)?;
        if let Some((i, j)) = a.grading_violation() {
            return Err(Error::GradingViolated(i, j));
        }
        if let Some((i, j, k)) = a.associativity_violation() {
            return Err(Error::AlgebraNotAssociative(i, j, k));
        }
        Ok(a)
    }

    /// Checks only the shape; used for planted counterexamples.
    pub fn new_unchecked(group: FiniteGroup, degrees: Vec<usize>, mult: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let n = degrees.len();
        if degrees.iter().any(|&d| d >= group.order()) {
            return Err(Error::Invalid("basis degree outside the group".into()));
        }
        if mult.len() != n || mult.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::DimensionMismatch(format!("structure constants must be {n}x{n}x{n}")));
        }
        Ok(GradedAlgebraFD { group, degrees, mult })
    }

    /// The subalgebra of `End V` spanned by `(degree, matrix)` pairs, which
    /// must be linearly independent and closed under multiplication.
    pub fn from_matrices(group: FiniteGroup, basis: &[(usize, Matrix<F>)]) -> Result<Self> {
        let n = basis.len();
        let flat: Vec<Vec<F>> = basis.iter().map(|(_, m)| m.as_slice().to_vec()).collect();
        let coords = Matrix::from_rows(flat.clone()).transpose();
        if n > 0 && coords.rank() != n {
            return Err(Error::Invalid("basis matrices are linearly dependent".into()));
        }
        let mut mult = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let p = basis[i].1.mul(&basis[j].1);
                let c = coords
                    .solve(p.as_slice())
                    .ok_or_else(|| Error::NotClosed(format!("product of basis elements {i} and {j}")))?;
                mult[i][j] = c;
            }
        }
        Self::new(group, basis.iter().map(|(d, _)| *d).collect(), mult)
    }

    /// `Q` concentrated in degree `e`.
    pub fn field(group: FiniteGroup) -> Self {
        let e = group.identity();
        GradedAlgebraFD { group, degrees: vec![e], mult: vec![vec![vec![F::one()]]] }
    }

    /// `M_n(Q)` in degree `e`, basis `E_ij` at index `i * n + j`.
    pub fn matrix_algebra(group: FiniteGroup, n: usize) -> Self {
        let e = group.identity();
        let d = n * n;
        let mut mult = vec![vec![vec![F::zero(); d]; d]; d];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    mult[i * n + j][j * n + k][i * n + k] = F::one();
                }
            }
        }
        GradedAlgebraFD { group, degrees: vec![e; d], mult }
    }

    /// The group algebra with its natural grading, basis indexed by elements.
    pub fn group_algebra(group: FiniteGroup) -> Self {
        let n = group.order();
        let mut mult = vec![vec![vec![F::zero(); n]; n]; n];
        for a in group.elements() {
            for b in group.elements() {
                mult[a][b][group.mul(a, b)] = F::one();
            }
        }
        GradedAlgebraFD { degrees: group.elements().collect(), group, mult }
    }

    /// Upper triangular `2 x 2` matrices, basis `E11, E12, E22`, in degree `e`.
    pub fn upper_triangular2(group: FiniteGroup) -> Self {
        let e = group.identity();
        let z = || vec![F::zero(); 3];
        let u = |k: usize| {
            let mut v = vec![F::zero(); 3];
            v[k] = F::one();
            v
        };
        let mult = vec![vec![u(0), u(1), z()], vec![z(), z(), u(1)], vec![z(), z(), u(2)]];
        GradedAlgebraFD { group, degrees: vec![e; 3], mult }
    }

    /// All products zero.
    pub fn zero_product(group: FiniteGroup, degrees: Vec<usize>) -> Self {
        let n = degrees.len();
        GradedAlgebraFD { group, degrees, mult: vec![vec![vec![F::zero(); n]; n]; n] }
    }

    /// Block direct sum; basis of `self` first.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::Invalid("direct sum of algebras graded by different groups".into()));
        }
        let (n, m) = (self.dim(), other.dim());
        let t = n + m;
        let mut mult = vec![vec![vec![F::zero(); t]; t]; t];
        for i in 0..n {
            for j in 0..n {
                mult[i][j][..n].clone_from_slice(&self.mult[i][j]);
            }
        }
        for i in 0..m {
            for j in 0..m {
                mult[n + i][n + j][n..].clone_from_slice(&other.mult[i][j]);
            }
        }
        let degrees = self.degrees.iter().chain(&other.degrees).copied().collect();
        Ok(GradedAlgebraFD { group: self.group.clone(), degrees, mult })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn structure(&self, i: usize, j: usize) -> &[F] {
        &self.mult[i][j]
    }

    pub fn structure_table(&self) -> &[Vec<Vec<F>>] {
        &self.mult
    }

    /// Indices of basis elements of degree `g`.
    pub fn component(&self, g: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == g).collect()
    }

    /// Product of coordinate vectors.
    pub fn mul(&self, a: &[F], b: &[F]) -> Vec<F> {
        let n = self.dim();
        let mut out = vec![F::zero(); n];
        for i in (0..n).filter(|&i| !a[i].is_zero()) {
            for j in (0..n).filter(|&j| !b[j].is_zero()) {
                let c = a[i].clone() * b[j].clone();
                for (o, m) in out.iter_mut().zip(&self.mult[i][j]) {
                    if !m.is_zero() {
                        *o = o.clone() + c.clone() * m.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> a y` acting on column coordinate vectors.
    pub fn left_mult(&self, a: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul(a, &crate::matrix::unit_vec(n, j));
            for i in 0..n {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    /// Matrix of `y -> y a`.
    pub fn right_mult(&self, a: &[F]) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.mul(&crate::matrix::unit_vec(n, j), a);
            for i in 0..n {
                m[(i, j)] = col[i].clone();
            }
        }
        m
    }

    /// First `(i, j)` whose product has a component outside degree `a_i a_j`.
    pub fn grading_violation(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let d = self.group.mul(self.degrees[i], self.degrees[j]);
                if (0..n).any(|k| !self.mult[i][j][k].is_zero() && self.degrees[k] != d) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// First basis triple with `(e_i e_j) e_k != e_i (e_j e_k)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ek = crate::matrix::unit_vec(n, k);
                    let ei = crate::matrix::unit_vec(n, i);
                    let lhs = self.mul(&self.mult[i][j], &ek);
                    let rhs = self.mul(&ei, &self.mult[j][k]);
                    if lhs != rhs {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Whether some product of basis elements is nonzero.
    pub fn has_nonzero_product(&self) -> bool {
        self.mult.iter().flatten().flatten().any(|c| !c.is_zero())
    }

    /// The two-sided ideal generated by `seeds`, by saturation.
    pub fn two_sided_ideal(&self, seeds: &[Vec<F>]) -> Subspace<F> {
        let n = self.dim();
        let mut span = Subspace::span(n, seeds.iter().cloned());
        loop {
            let mut next = span.clone();
            for v in span.basis() {
                for i in 0..n {
                    let ei = crate::matrix::unit_vec(n, i);
                    next = next.with(self.mul(&ei, v)).with(self.mul(v, &ei));
                }
            }
            if next.dim() == span.dim() {
                return span;
            }
            span = next;
        }
    }

    /// Multiplicative identity, if any.
    pub fn unit(&self) -> Option<Vec<F>> {
        // Solve u e_j = e_j and e_j u = e_j for all j, linear in u.
        let n = self.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push((0..n).map(|i| self.mult[i][j][k].clone()).collect::<Vec<_>>());
                rhs.push(if j == k { F::one() } else { F::zero() });
                rows.push((0..n).map(|i| self.mult[j][i][k].clone()).collect::<Vec<_>>());
                rhs.push(if j == k { F::one() } else { F::zero() });
            }
        }
        if n == 0 {
            return Some(Vec::new());
        }
        Matrix::from_rows(rows).solve(&rhs)
    }

    /// The same structure constants with every degree set to `e` of `group`.
    pub fn trivially_graded(&self, group: FiniteGroup) -> Self {
        let e = group.identity();
        GradedAlgebraFD { degrees: vec![e; self.dim()], group, mult: self.mult.clone() }
    }

    /// The subalgebra spanned by homogeneous coordinate vectors
    /// `(degree, v)`, expressed in that basis.
    pub fn subalgebra(&self, vecs: &[(usize, Vec<F>)]) -> Result<Self> {
        let m = vecs.len();
        if m == 0 {
            return Ok(GradedAlgebraFD { group: self.group.clone(), degrees: Vec::new(), mult: Vec::new() });
        }
        let coords = Matrix::from_rows(vecs.iter().map(|(_, v)| v.clone()).collect()).transpose();
        if coords.rank() != m {
            return Err(Error::Invalid("subalgebra vectors are linearly dependent".into()));
        }
        let mut mult = vec![vec![Vec::new(); m]; m];
        for a in 0..m {
            for b in 0..m {
                let p = self.mul(&vecs[a].1, &vecs[b].1);
                mult[a][b] = coords
                    .solve(&p)
                    .ok_or_else(|| Error::NotClosed(format!("product of subalgebra vectors {a} and {b}")))?;
            }
        }
        Self::new(self.group.clone(), vecs.iter().map(|(d, _)| *d).collect(), mult)
    }

    /// Restriction to the span of basis indices `idx`, which must be
    /// closed under multiplication.
    pub fn restrict(&self, idx: &[usize]) -> Result<Self> {
        let m = idx.len();
        let mut mult = vec![vec![vec![F::zero(); m]; m]; m];
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                for k in 0..self.dim() {
                    let c = &self.mult[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    let pos = idx
                        .iter()
                        .position(|&x| x == k)
                        .ok_or_else(|| Error::NotClosed(format!("product of {i} and {j}")))?;
                    mult[a][b][pos] = c.clone();
                }
            }
        }
        Ok(GradedAlgebraFD { group: self.group.clone(), degrees: idx.iter().map(|&i| self.degrees[i]).collect(), mult })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn matrix_algebra_products() {
        let a: GradedAlgebraFD = GradedAlgebraFD::matrix_algebra(FiniteGroup::trivial(), 2);
        // E12 E21 = E11
        assert_eq!(a.structure(1, 2), &[q(1), q(0), q(0), q(0)]);
        assert!(a.associativity_violation().is_none());
        assert_eq!(a.unit().unwrap(), vec![q(1), q(0), q(0), q(1)]);
    }

    #[test]
    fn group_algebra_is_graded() {
        let a: GradedAlgebraFD = GradedAlgebraFD::group_algebra(FiniteGroup::symmetric3());
        assert!(a.grading_violation().is_none());
        assert!(a.associativity_violation().is_none());
    }

    #[test]
    fn planted_nonassociative_rejected() {
        let g = FiniteGroup::trivial();
        // e1 e1 = e2, everything else zero except e2 e1 = e1: (e1 e1) e1 = e1 but e1 (e1 e1) = 0.
        let mut mult = vec![vec![vec![q(0); 2]; 2]; 2];
        mult[0][0][1] = q(1);
        mult[1][0][0] = q(1);
        let e = GradedAlgebraFD::new(g, vec![0, 0], mult).unwrap_err();
        assert!(matches!(e, Error::AlgebraNotAssociative(..)));
    }

    #[test]
    fn grading_violation_detected() {
        let g = FiniteGroup::z2();
        let mut mult = vec![vec![vec![q(0); 2]; 2]; 2];
        mult[1][1][1] = q(1);
        let e = GradedAlgebraFD::new(g, vec![0, 1], mult).unwrap_err();
        assert_eq!(e, Error::GradingViolated(1, 1));
    }

    #[test]
    fn from_matrices_upper_triangular() {
        let g = FiniteGroup::trivial();
        let basis = vec![
            (0, Matrix::<Rational>::unit(2, 2, 0, 0)),
            (0, Matrix::unit(2, 2, 0, 1)),
            (0, Matrix::unit(2, 2, 1, 1)),
        ];
        let a = GradedAlgebraFD::from_matrices(g.clone(), &basis).unwrap();
        assert_eq!(a, GradedAlgebraFD::upper_triangular2(g.clone()));
        let not_closed = vec![(0, Matrix::<Rational>::unit(2, 2, 0, 1)), (0, Matrix::unit(2, 2, 1, 0))];
        assert!(matches!(GradedAlgebraFD::from_matrices(g, &not_closed), Err(Error::NotClosed(_))));
    }

    #[test]
    fn ideal_in_direct_sum() {
        let g = FiniteGroup::trivial();
        let a: GradedAlgebraFD = GradedAlgebraFD::field(g.clone()).direct_sum(&GradedAlgebraFD::field(g)).unwrap();
        let i = a.two_sided_ideal(&[vec![q(1), q(0)]]);
        assert_eq!(i.dim(), 1);
    }
}
