//! Small square matrices with polynomial entries: products, determinants
//! and inverses over `Q[v]` for a single variable `v`.

use crate::error::{Error, Result};
use crate::poly::{Poly, Var};
use crate::scalar::Scalar;

pub type PolyMatrix<F> = Vec<Vec<Poly<F>>>;

pub fn identity<F: Scalar>(n: usize) -> PolyMatrix<F> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect()).collect()
}

pub fn zeros<F: Scalar>(r: usize, c: usize) -> PolyMatrix<F> {
    vec![vec![Poly::zero(); c]; r]
}

pub fn mul<F: Scalar>(a: &PolyMatrix<F>, b: &PolyMatrix<F>) -> PolyMatrix<F> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = zeros(n, m);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] = Poly::add(&out[i][j], &Poly::mul(aik, &b[k][j]));
                }
            }
        }
    }
    out
}

pub fn map<F: Scalar>(a: &PolyMatrix<F>, f: impl Fn(&Poly<F>) -> Poly<F>) -> PolyMatrix<F> {
    a.iter().map(|r| r.iter().map(&f).collect()).collect()
}

/// Laplace expansion; the matrices here are at most a handful of rows.
pub fn determinant<F: Scalar>(a: &PolyMatrix<F>) -> Poly<F> {
    let n = a.len();
    match n {
        0 => Poly::one(),
        1 => a[0][0].clone(),
        _ => {
            let mut det = Poly::zero();
            for j in 0..n {
                if a[0][j].is_zero() {
                    continue;
                }
                let term = Poly::mul(&a[0][j], &determinant(&minor(a, 0, j)));
                det = if j % 2 == 0 { Poly::add(&det, &term) } else { Poly::sub(&det, &term) };
            }
            det
        }
    }
}

fn minor<F: Scalar>(a: &PolyMatrix<F>, r: usize, c: usize) -> PolyMatrix<F> {
    a.iter()
        .enumerate()
        .filter(|(i, _)| *i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, x)| x.clone()).collect())
        .collect()
}

/// Inverse of a matrix over `Q[v]`; exists iff the determinant is a
/// nonzero constant. Entries must not involve variables other than `v`.
pub fn inverse<F: Scalar>(a: &PolyMatrix<F>, v: Var) -> Result<PolyMatrix<F>> {
    let n = a.len();
    if a.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("square matrix expected".into()));
    }
    if a.iter().flatten().any(|p| Var::ALL.iter().any(|&w| w != v && p.involves(w))) {
        return Err(Error::Invalid(format!("entries must be polynomials in {} only", v.name())));
    }
    let det = determinant(a);
    if det.is_zero() || !det.is_constant() {
        return Err(Error::NotInvertibleOverPolyRing(format!("determinant {det}")));
    }
    let inv_det = F::one() / det.constant_term();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // adj(a)_{ij} = (-1)^{i+j} det(minor(a, j, i))
                    let c = determinant(&minor(a, j, i)).scale(&inv_det);
                    if (i + j) % 2 == 0 {
                        c
                    } else {
                        c.neg()
                    }
                })
                .collect()
        })
        .collect())
}
