//! Closure of `Q[T]`-submodules under lambda-products: ideals of graded
//! conformal algebras and closure of finitely generated pieces of the
//! Cend matrix model.

use crate::cend::{cend_product, CendMatrix};
use crate::conformal::{ConformalElement, GradedConformalAlgebra};
use crate::error::{Error, Result};
use crate::grading::GradingContext;
use crate::hnf::PolySubmodule;
use crate::poly::{Poly, Var};
use crate::scalar::Scalar;
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sided {
    /// Closed under `(C _lambda I)`.
    Left,
    /// Closed under `(I _lambda C)`.
    Right,
    Two,
}

/// Default bound on closure rounds; each round strictly enlarges the
/// submodule, so the bound is only reached on pathological inputs.
pub const DEFAULT_ROUND_BOUND: usize = 64;

/// The smallest `Q[T]`-submodule containing the (homogeneous) seeds and
/// closed under the lambda-coefficients of products with basis elements.
pub fn ideal_closure<F: Scalar>(
    c: &GradedConformalAlgebra<F>,
    seeds: &[ConformalElement<F>],
    sided: Sided,
) -> Result<PolySubmodule<F>> {
    ideal_closure_bounded(c, seeds, sided, DEFAULT_ROUND_BOUND)
}

pub fn ideal_closure_bounded<F: Scalar>(
    c: &GradedConformalAlgebra<F>,
    seeds: &[ConformalElement<F>],
    sided: Sided,
    bound: usize,
) -> Result<PolySubmodule<F>> {
    let n = c.rank();
    for s in seeds {
        c.element_degree(s)?;
    }
    let mut m = PolySubmodule::from_poly_rows(n, &seeds.iter().map(|s| s.coords().to_vec()).collect::<Vec<_>>())?;
    for _ in 0..bound {
        let mut new_rows: Vec<Vec<UPoly<F>>> = Vec::new();
        for row in m.poly_rows() {
            // The closure of homogeneous seeds is graded, so each
            // homogeneous component of a generator lies in it.
            for s in homogeneous_parts(c, &row) {
                for i in 0..n {
                    let e = c.basis_element(i);
                    if sided != Sided::Right {
                        push_coefficients(&c.lambda_product(&e, &s)?, &mut new_rows)?;
                    }
                    if sided != Sided::Left {
                        push_coefficients(&c.lambda_product(&s, &e)?, &mut new_rows)?;
                    }
                }
            }
        }
        let next = m.with_rows(new_rows);
        if next == m {
            return Ok(m);
        }
        m = next;
    }
    Err(Error::ClosureBoundExceeded(bound))
}

fn homogeneous_parts<F: Scalar>(c: &GradedConformalAlgebra<F>, row: &[Poly<F>]) -> Vec<ConformalElement<F>> {
    let mut degs: Vec<usize> = (0..row.len()).filter(|&i| !row[i].is_zero()).map(|i| c.degree(i)).collect();
    degs.sort_unstable();
    degs.dedup();
    degs.into_iter()
        .map(|d| {
            ConformalElement::new(
                row.iter().enumerate().map(|(i, p)| if c.degree(i) == d { p.clone() } else { Poly::zero() }).collect(),
            )
        })
        .collect()
}

fn push_coefficients<F: Scalar>(v: &[Poly<F>], out: &mut Vec<Vec<UPoly<F>>>) -> Result<()> {
    let per: Vec<Vec<Poly<F>>> = v.iter().map(|p| p.coefficients_in(Var::Lambda)).collect();
    let top = per.iter().map(Vec::len).max().unwrap_or(0);
    for d in 0..top {
        let row = per
            .iter()
            .map(|cs| {
                let p = cs.get(d).cloned().unwrap_or_else(Poly::zero);
                p.to_upoly(Var::T).ok_or_else(|| Error::Invalid("coefficient is not in Q[T]".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.iter().any(|p| !p.is_zero()) {
            out.push(row);
        }
    }
    Ok(())
}

/// Flattens a Cend matrix into a vector over `Q[T]` indexed by
/// `(i, j, x-power)` with x-powers `0..=xdeg`; `None` if the x-degree is
/// larger.
fn flatten_cend<F: Scalar>(m: &CendMatrix<F>, xdeg: u32) -> Option<Vec<UPoly<F>>> {
    let n = m.size();
    let w = xdeg as usize + 1;
    let mut out = vec![UPoly::zero(); n * n * w];
    for i in 0..n {
        for j in 0..n {
            let cs = m.entry(i, j).coefficients_in(Var::X);
            if cs.len() > w {
                return None;
            }
            for (d, p) in cs.iter().enumerate() {
                out[(i * n + j) * w + d] = p.to_upoly(Var::T)?;
            }
        }
    }
    Some(out)
}

/// First pair `(a, b)` of generators some lambda-coefficient of whose
/// product leaves the `Q[T]`-span of the generators.
pub fn cend_closure_violation<F: Scalar>(
    ctx: &GradingContext<F>,
    gens: &[CendMatrix<F>],
) -> Result<Option<(usize, usize)>> {
    let Some(first) = gens.first() else { return Ok(None) };
    let n = first.size();
    let xdeg = gens
        .iter()
        .flat_map(|g| g.entries().iter().flatten().map(|p| p.degree_in(Var::X)))
        .max()
        .unwrap_or(0);
    let rows = gens
        .iter()
        .map(|g| flatten_cend(g, xdeg).ok_or_else(|| Error::Invalid("generator entries must lie in Q[T, x]".into())))
        .collect::<Result<Vec<_>>>()?;
    let span = PolySubmodule::from_rows(n * n * (xdeg as usize + 1), rows);
    let lam = Poly::var(Var::Lambda);
    for (a, ga) in gens.iter().enumerate() {
        for (b, gb) in gens.iter().enumerate() {
            let p = cend_product(ctx, ga, gb, &lam)?;
            let mut top = 0;
            for row in p.entries() {
                for e in row {
                    top = top.max(e.degree_in(Var::Lambda));
                }
            }
            for d in 0..=top as usize {
                let coeff = CendMatrix::new(
                    p.degrees().to_vec(),
                    p.entries()
                        .iter()
                        .map(|r| r.iter().map(|e| e.coefficients_in(Var::Lambda).get(d).cloned().unwrap_or_else(Poly::zero)).collect())
                        .collect(),
                )?;
                match flatten_cend(&coeff, xdeg) {
                    Some(v) if span.contains(&v) => {}
                    _ => return Ok(Some((a, b))),
                }
            }
        }
    }
    Ok(None)
}
