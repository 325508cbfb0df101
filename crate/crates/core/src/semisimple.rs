//! Radical, center and idempotents of finite-dimensional graded algebras,
//! and the decomposition of a semisimple graded algebra into graded-simple
//! ideals.

use crate::algebra::GradedAlgebraFD;
use crate::error::{Error, Result};
use crate::matrix::{unit_vec, Matrix, Subspace};
use crate::scalar::{ExactField, Scalar};
use crate::upoly::UPoly;

/// Jacobson radical by Dickson's criterion: in characteristic zero,
/// `x` lies in the radical iff `tr L_x = 0` and `tr L_{xy} = 0` for every
/// basis element `y` (traces of left multiplication on the unitization).
pub fn radical_fd<F: Scalar>(a: &GradedAlgebraFD<F>) -> Subspace<F> {
    let n = a.dim();
    if n == 0 {
        return Subspace::zero(0);
    }
    let traces: Vec<F> = (0..n).map(|k| a.left_mult(&unit_vec(n, k)).trace()).collect();
    let tr_of = |v: &[F]| v.iter().zip(&traces).fold(F::zero(), |acc, (c, t)| acc + c.clone() * t.clone());
    let mut rows = vec![traces.clone()];
    for y in 0..n {
        rows.push((0..n).map(|i| tr_of(a.structure(i, y))).collect());
    }
    Subspace::span(n, Matrix::from_rows(rows).kernel())
}

/// The center `{x : x e_j = e_j x for all j}`.
pub fn center<F: Scalar>(a: &GradedAlgebraFD<F>) -> Subspace<F> {
    center_within(a, &(0..a.dim()).collect::<Vec<_>>())
}

/// Central elements supported on the basis indices `idx`.
fn center_within<F: Scalar>(a: &GradedAlgebraFD<F>, idx: &[usize]) -> Subspace<F> {
    let n = a.dim();
    let mut rows = Vec::new();
    for j in 0..n {
        for k in 0..n {
            rows.push(idx.iter().map(|&i| a.structure(i, j)[k].clone() - a.structure(j, i)[k].clone()).collect::<Vec<_>>());
        }
    }
    if idx.is_empty() {
        return Subspace::zero(n);
    }
    let kernel = Matrix::from_rows(rows).kernel();
    Subspace::span(
        n,
        kernel.into_iter().map(|v| {
            let mut full = vec![F::zero(); n];
            for (&i, c) in idx.iter().zip(v) {
                full[i] = c;
            }
            full
        }),
    )
}

/// Central elements of degree `e`.
pub fn center_degree_e<F: Scalar>(a: &GradedAlgebraFD<F>) -> Subspace<F> {
    center_within(a, &a.component(a.group().identity()))
}

/// Minimal polynomial of `w` over the unital algebra generated by `w` and
/// the idempotent `one`, with `mul` the ambient product.
pub fn min_poly<F: Scalar>(mul: impl Fn(&[F], &[F]) -> Vec<F>, one: &[F], w: &[F]) -> UPoly<F> {
    let mut powers: Vec<Vec<F>> = vec![one.to_vec()];
    loop {
        let next = mul(powers.last().unwrap(), w);
        let k = powers.len();
        let m = Matrix::from_rows(powers.clone()).transpose();
        if let Some(c) = m.solve(&next) {
            let mut coeffs: Vec<F> = c.into_iter().map(|x| -x).collect();
            coeffs.push(F::one());
            return UPoly::new(coeffs);
        }
        powers.push(next);
        debug_assert!(k <= one.len() + 1);
    }
}

/// `p(w)` with `one` as the unit.
pub fn eval_poly<F: Scalar>(mul: &impl Fn(&[F], &[F]) -> Vec<F>, one: &[F], w: &[F], p: &UPoly<F>) -> Vec<F> {
    let mut acc = vec![F::zero(); one.len()];
    for c in p.coeffs().iter().rev() {
        acc = mul(&acc, w);
        for (a, o) in acc.iter_mut().zip(one) {
            *a = a.clone() + c.clone() * o.clone();
        }
    }
    acc
}

/// Primitive idempotents of a commutative semisimple algebra `Z` spanned
/// by `basis` inside `a`, with unit `one`. Errors if an idempotent would
/// need an extension of the ground field.
pub fn split_commutative<F: ExactField>(
    a: &GradedAlgebraFD<F>,
    basis: &[Vec<F>],
    one: &[F],
) -> Result<Vec<Vec<F>>> {
    let mul = |x: &[F], y: &[F]| a.mul(x, y);
    let mut idems = vec![one.to_vec()];
    for z in basis {
        let mut next = Vec::new();
        for eps in &idems {
            let w = mul(eps, z);
            let m = min_poly(mul, eps, &w);
            let deg = m.degree().unwrap_or(0);
            if deg <= 1 {
                next.push(eps.clone());
                continue;
            }
            let roots = F::field_roots(&m).map_err(|e| Error::SplitFieldRequired(e.to_string()))?;
            if roots.len() < deg {
                return Err(Error::SplitFieldRequired(format!("minimal polynomial {m} does not split into distinct rational factors")));
            }
            for r in &roots {
                // Lagrange idempotent prod_{s != r} (w - s) / (r - s).
                let mut lag = UPoly::one();
                for s in roots.iter().filter(|&s| s != r) {
                    let lin = UPoly::new(vec![-s.clone(), F::one()]).scale(&(F::one() / (r.clone() - s.clone())));
                    lag = lag.mul(&lin);
                }
                next.push(eval_poly(&mul, eps, &w, &lag));
            }
        }
        idems = next;
    }
    Ok(idems)
}

/// A graded-simple direct summand `eps A` of a semisimple graded algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBlock<F> {
    /// Central idempotent of degree `e`, in the coordinates of `A`.
    pub idempotent: Vec<F>,
    /// Homogeneous basis of the block, in the coordinates of `A`.
    pub basis: Vec<(usize, Vec<F>)>,
    /// The block as an algebra on that basis.
    pub algebra: GradedAlgebraFD<F>,
}

/// Minimal graded two-sided ideals of a semisimple graded algebra.
pub fn decompose_semisimple_graded<F: ExactField>(a: &GradedAlgebraFD<F>) -> Result<Vec<GradedBlock<F>>> {
    let rad = radical_fd(a);
    if rad.dim() > 0 {
        return Err(Error::NotSemisimple(rad.dim()));
    }
    let n = a.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let one = a.unit().ok_or_else(|| Error::InternalInconsistency("semisimple algebra without unit".into()))?;
    let z = center_degree_e(a);
    let idems = split_commutative(a, z.basis(), &one)?;
    // Merge idempotents linked by a homogeneous basis element.
    let k = idems.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for x in 0..k {
        for y in 0..k {
            if x == y {
                continue;
            }
            let linked = (0..n).any(|i| {
                let v = a.mul(&a.mul(&idems[x], &unit_vec(n, i)), &idems[y]);
                v.iter().any(|c| !c.is_zero())
            });
            if linked {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                parent[rx] = ry;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_of = std::collections::BTreeMap::new();
    for x in 0..k {
        let r = find(&mut parent, x);
        let g = *root_of.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(x);
    }
    let mut blocks = Vec::new();
    for g in groups {
        let mut eps = vec![F::zero(); n];
        for &x in &g {
            for (e, c) in eps.iter_mut().zip(&idems[x]) {
                *e = e.clone() + c.clone();
            }
        }
        let mut degs: Vec<usize> = a.degrees().to_vec();
        degs.sort_unstable();
        degs.dedup();
        let mut basis = Vec::new();
        for d in degs {
            let span = Subspace::span(n, a.component(d).into_iter().map(|i| a.mul(&eps, &unit_vec(n, i))));
            basis.extend(span.basis().iter().map(|v| (d, v.clone())));
        }
        let algebra = a.subalgebra(&basis)?;
        blocks.push(GradedBlock { idempotent: eps, basis, algebra });
    }
    Ok(blocks)
}

/// Radical zero, nonzero product, and a single graded-simple block.
pub fn is_graded_simple<F: ExactField>(a: &GradedAlgebraFD<F>) -> Result<bool> {
    if a.dim() == 0 || !a.has_nonzero_product() || radical_fd(a).dim() > 0 {
        return Ok(false);
    }
    Ok(decompose_semisimple_graded(a)?.len() == 1)
}
