//! Submodules of `Q[T]^N` in Hermite normal form.
//!
//! Rows are in echelon form with strictly increasing pivot columns, every
//! pivot is monic, and entries above a pivot have smaller degree than it.
//! Over the Euclidean ring `Q[T]` this form is unique for a given row
//! space, so submodule equality is structural equality.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Poly, Var};
use crate::scalar::{Rational, Scalar};
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySubmodule<F = Rational> {
    rank: usize,
    rows: Vec<Vec<UPoly<F>>>,
    pivots: Vec<usize>,
}

impl<F: Scalar> PolySubmodule<F> {
    pub fn zero(rank: usize) -> Self {
        PolySubmodule { rank, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(rank: usize) -> Self {
        let rows = (0..rank)
            .map(|i| (0..rank).map(|j| if i == j { UPoly::one() } else { UPoly::zero() }).collect())
            .collect();
        PolySubmodule { rank, rows, pivots: (0..rank).collect() }
    }

    /// Row space of `rows` in Hermite normal form.
    pub fn from_rows(rank: usize, rows: Vec<Vec<UPoly<F>>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == rank), "row length must equal the ambient rank");
        hermite_nf(rank, rows)
    }

    /// Rows given as polynomials in `T`.
    pub fn from_poly_rows(rank: usize, rows: &[Vec<Poly<F>>]) -> Result<Self> {
        let conv = rows
            .iter()
            .map(|r| r.iter().map(to_t).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if conv.iter().any(|r| r.len() != rank) {
            return Err(Error::DimensionMismatch("row length".into()));
        }
        Ok(Self::from_rows(rank, conv))
    }

    pub fn ambient_rank(&self) -> usize {
        self.rank
    }

    pub fn rows(&self) -> &[Vec<UPoly<F>>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Rank of the submodule.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.rank)
    }

    /// Rows as polynomials in `T`.
    pub fn poly_rows(&self) -> Vec<Vec<Poly<F>>> {
        self.rows.iter().map(|r| r.iter().map(|p| Poly::from_upoly(p, Var::T)).collect()).collect()
    }

    /// Exact membership by reduction against the pivots.
    pub fn contains(&self, v: &[UPoly<F>]) -> bool {
        assert_eq!(v.len(), self.rank, "vector length must equal the ambient rank");
        let mut v = v.to_vec();
        let mut r = 0;
        for c in 0..self.rank {
            if r < self.rows.len() && self.pivots[r] == c {
                let (q, rem) = v[c].div_rem(&self.rows[r][c]);
                if !rem.is_zero() {
                    return false;
                }
                if !q.is_zero() {
                    for (x, y) in v.iter_mut().zip(&self.rows[r]) {
                        *x = x.sub(&q.mul(y));
                    }
                }
                r += 1;
            } else if !v[c].is_zero() {
                return false;
            }
        }
        true
    }

    pub fn contains_poly(&self, v: &[Poly<F>]) -> Result<bool> {
        let v = v.iter().map(to_t).collect::<Result<Vec<_>>>()?;
        Ok(self.contains(&v))
    }

    pub fn contains_module(&self, other: &Self) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Sum of submodules.
    pub fn join(&self, other: &Self) -> Self {
        self.with_rows(other.rows.iter().cloned())
    }

    pub fn with_rows<I: IntoIterator<Item = Vec<UPoly<F>>>>(&self, extra: I) -> Self {
        let rows = self.rows.iter().cloned().chain(extra).collect();
        hermite_nf(self.rank, rows)
    }
}

fn to_t<F: Scalar>(p: &Poly<F>) -> Result<UPoly<F>> {
    p.to_upoly(Var::T).ok_or_else(|| Error::Invalid(format!("{p} is not a polynomial in T")))
}

/// Hermite normal form by Euclidean row operations.
pub fn hermite_nf<F: Scalar>(rank: usize, rows: Vec<Vec<UPoly<F>>>) -> PolySubmodule<F> {
    let mut rows: Vec<Vec<UPoly<F>>> = rows.into_iter().filter(|r| r.iter().any(|p| !p.is_zero())).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..rank {
        if r == rows.len() {
            break;
        }
        loop {
            // Smallest-degree nonzero entry in column c among rows r..
            let best = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].degree().unwrap_or(0));
            let Some(p) = best else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let (q, _) = rows[i][c].div_rem(&rows[r][c]);
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x = x.sub(&q.mul(y));
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        let lead = rows[r][c].leading().cloned().expect("nonzero");
        let inv = F::one() / lead;
        for x in rows[r].iter_mut() {
            *x = x.scale(&inv);
        }
        for i in 0..r {
            if rows[i][c].is_zero() {
                continue;
            }
            let (q, _) = rows[i][c].div_rem(&rows[r][c]);
            if q.is_zero() {
                continue;
            }
            let pivot_row = rows[r].clone();
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = x.sub(&q.mul(y));
            }
        }
        pivots.push(c);
        r += 1;
        rows.retain(|row| row.iter().any(|p| !p.is_zero()));
    }
    rows.truncate(r);
    PolySubmodule { rank, rows, pivots }
}

impl<F: Scalar> fmt::Display for PolySubmodule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|p| Poly::from_upoly(p, Var::T).to_string()).collect();
            write!(f, "({})", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
