//! Simplicity screening for finite graded conformal algebras, with the
//! current-algebra presentation as the deciding check when known.

use std::fmt;

use crate::algebra::GradedAlgebraFD;
use crate::closure::{ideal_closure, Sided};
use crate::conformal::{cur, ConformalElement, GradedConformalAlgebra};
use crate::error::{Error, Result};
use crate::hnf::PolySubmodule;
use crate::poly::{Monomial, Poly, Var};
use crate::scalar::ExactField;
use crate::semisimple::{decompose_semisimple_graded, is_graded_simple, radical_fd};

/// Recorded in every report.
pub const SCOPE_NOTE: &str = "basis-seed closures are a necessary-condition screening; \
only a current-algebra presentation decides simplicity";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Simple,
    NotSimple,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Simple => "simple",
            Verdict::NotSimple => "not-simple",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// A nonzero proper graded ideal and the seed generating it.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealCertificate<F> {
    pub seed: ConformalElement<F>,
    pub ideal: PolySubmodule<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimplicityReport<F> {
    pub verdict: Verdict,
    /// Whether the verdict is decided rather than screened.
    pub authoritative: bool,
    pub nonzero_product: bool,
    pub seeds_checked: usize,
    pub certificate: Option<IdealCertificate<F>>,
    /// `is_graded_simple` of the underlying algebra, when given.
    pub cur_simple: Option<bool>,
    pub scope_note: &'static str,
}

/// Screens `c` by (a) a nonzero product, (b) two-sided closures of
/// `T^s e_i` for every basis element and `s <= multiples`, and (c) when
/// `cur_source` is given, checks `c = Cur(A)` and uses `is_graded_simple(A)`.
pub fn conformal_simplicity_suite<F: ExactField>(
    c: &GradedConformalAlgebra<F>,
    multiples: u32,
    cur_source: Option<&GradedAlgebraFD<F>>,
) -> Result<SimplicityReport<F>> {
    let nonzero_product = c.structure_table().iter().flatten().flatten().any(|p| !p.is_zero());
    let mut report = SimplicityReport {
        verdict: Verdict::Inconclusive,
        authoritative: false,
        nonzero_product,
        seeds_checked: 0,
        certificate: None,
        cur_simple: None,
        scope_note: SCOPE_NOTE,
    };
    if !nonzero_product || c.rank() == 0 {
        report.verdict = Verdict::NotSimple;
        report.authoritative = true;
        report.nonzero_product = false;
        return Ok(report);
    }
    'seeds: for i in 0..c.rank() {
        for s in 0..=multiples {
            let seed = ConformalElement::basis(c.rank(), i, Poly::term(F::one(), Monomial::var(Var::T, s)));
            report.seeds_checked += 1;
            let ideal = ideal_closure(c, std::slice::from_ref(&seed), Sided::Two)?;
            if !ideal.is_full() {
                report.certificate = Some(IdealCertificate { seed, ideal });
                break 'seeds;
            }
        }
    }
    if report.certificate.is_some() {
        report.verdict = Verdict::NotSimple;
        report.authoritative = true;
    }
    if let Some(a) = cur_source {
        let expected = cur(a, c.ctx())?;
        if expected != *c {
            return Err(Error::Invalid("the algebra is not the current algebra of the given source".into()));
        }
        let simple = is_graded_simple(a)?;
        report.cur_simple = Some(simple);
        report.authoritative = true;
        if simple {
            if report.certificate.is_some() {
                return Err(Error::InternalInconsistency("proper ideal found in the current algebra of a simple algebra".into()));
            }
            report.verdict = Verdict::Simple;
        } else {
            report.verdict = Verdict::NotSimple;
            if report.certificate.is_none() {
                report.certificate = cur_certificate(c, a)?;
            }
        }
    }
    Ok(report)
}

/// A proper ideal of `Cur(A)` generated by the radical or by one
/// graded-simple block of `A`.
fn cur_certificate<F: ExactField>(c: &GradedConformalAlgebra<F>, a: &GradedAlgebraFD<F>) -> Result<Option<IdealCertificate<F>>> {
    let n = a.dim();
    let rad = radical_fd(a);
    let seeds: Vec<Vec<F>> = if rad.dim() > 0 {
        rad.basis().to_vec()
    } else {
        match decompose_semisimple_graded(a)?.into_iter().next() {
            Some(b) => b.basis.into_iter().map(|(_, v)| v).collect(),
            None => return Ok(None),
        }
    };
    // Homogeneous parts of the seeds, as constant elements.
    let mut parts = Vec::new();
    for v in &seeds {
        let mut degs: Vec<usize> = a.degrees().to_vec();
        degs.sort_unstable();
        degs.dedup();
        for d in degs {
            let coords: Vec<Poly<F>> = (0..n)
                .map(|i| if a.degree(i) == d { Poly::constant(v[i].clone()) } else { Poly::zero() })
                .collect();
            if coords.iter().any(|p| !p.is_zero()) {
                parts.push(ConformalElement::new(coords));
            }
        }
    }
    let ideal = ideal_closure(c, &parts, Sided::Two)?;
    if ideal.is_zero() || ideal.is_full() {
        return Ok(None);
    }
    Ok(Some(IdealCertificate { seed: parts.swap_remove(0), ideal }))
}
