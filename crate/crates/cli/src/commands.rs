//! Command dispatch. Each command validates its inputs before computing and
//! returns a [`Report`].

use std::fmt::Display;

use clap::ValueEnum;
use gradconf::cend::check_cend_associativity;
use gradconf::cohomology::{coboundary_of, find_trivializing_cochain};
use gradconf::conformal::{check_axioms, cur, cur_unchecked, AxiomFailure};
use gradconf::irreducible::{graded_irreducible_seeded, Irreducibility, DEFAULT_SEED};
use gradconf::matrix::Matrix;
use gradconf::semisimple::{decompose_semisimple_graded, is_graded_simple, radical_fd};
use gradconf::simplicity::{conformal_simplicity_suite, Verdict};
use gradconf::twisted::{phi_isomorphism, recover_fine_structure_seeded, spans_by_degree, FineStructure, TwistedMatrixAlgebra};
use gradconf::{Error, FiniteGroup, Rational};
use serde_json::{json, Value};

use crate::input::{Document, InputError};
use crate::report::{Report, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    CheckAxioms,
    ConstructCur,
    CendAssoc,
    Trivialize,
    Decompose,
    Recover,
    Simplicity,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::CheckAxioms => "check-axioms",
            Command::ConstructCur => "construct-cur",
            Command::CendAssoc => "cend-assoc",
            Command::Trivialize => "trivialize",
            Command::Decompose => "decompose",
            Command::Recover => "recover",
            Command::Simplicity => "simplicity",
        }
    }

    /// Monomial degree for `cend-assoc`, `T`-multiples for `simplicity`.
    pub fn default_degree_bound(self) -> u32 {
        match self {
            Command::CendAssoc => 2,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub input: String,
    pub degree_bound: Option<u32>,
    pub seed: Option<u64>,
}

impl Job {
    pub fn new(command: Command, input: impl Into<String>) -> Self {
        Job { command, input: input.into(), degree_bound: None, seed: None }
    }
}

/// Runs a job on the file at `job.input`.
pub fn run(job: &Job) -> Report {
    match std::fs::read_to_string(&job.input) {
        Ok(source) => run_source(job, source),
        Err(e) => {
            let mut r = header(job);
            input_error(&mut r, &InputError { field: "input".into(), line: None, column: None, message: e.to_string() });
            r
        }
    }
}

/// Runs a job on `source`, recording `job.input` as its name.
pub fn run_source(job: &Job, source: String) -> Report {
    let mut r = header(job);
    let outcome = Document::parse(source).and_then(|doc| dispatch(job.command, &doc, &mut r));
    if let Err(e) = outcome {
        input_error(&mut r, &e);
    }
    r
}

fn header(job: &Job) -> Report {
    let bound = job.degree_bound.unwrap_or_else(|| job.command.default_degree_bound());
    Report::new(job.command.name(), &job.input, job.seed.unwrap_or(DEFAULT_SEED), bound)
}

fn input_error(r: &mut Report, e: &InputError) {
    r.fields.clear();
    r.status = Status::InputError;
    r.field(
        "error",
        json!({ "field": e.field, "line": e.line, "column": e.column, "message": e.message }),
    );
}

fn dispatch(cmd: Command, doc: &Document, r: &mut Report) -> Result<(), InputError> {
    let group = doc.group()?;
    match cmd {
        Command::Validate => validate(doc, &group, r),
        Command::CheckAxioms => check_axioms_cmd(doc, &group, r),
        Command::ConstructCur => construct_cur(doc, &group, r),
        Command::CendAssoc => cend_assoc(doc, &group, r),
        Command::Trivialize => trivialize(doc, &group, r),
        Command::Decompose => decompose(doc, &group, r),
        Command::Recover => recover(doc, &group, r),
        Command::Simplicity => simplicity(doc, &group, r),
    }
}

fn kernel_error(field: &str, e: Error) -> InputError {
    InputError { field: field.into(), line: None, column: None, message: e.to_string() }
}

fn strings<T: Display>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

fn matrix_json(m: &Matrix<Rational>) -> Value {
    Value::Array((0..m.rows()).map(|i| strings(m.row(i))).collect())
}

fn labels(group: &FiniteGroup, xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&g| Value::String(group.label(g).to_string())).collect())
}

fn validate(doc: &Document, group: &FiniteGroup, r: &mut Report) -> Result<(), InputError> {
    let ctx = doc.context(group, true)?;
    let mut sections = vec!["group", "context"];
    r.field("group_order", group.order());
    if !doc.file.algebra.is_empty() {
        r.field("algebra_dim", doc.algebra(group, true)?.dim());
        sections.push("algebra");
    }
    if doc.has_conformal() {
        r.field("conformal_rank", doc.conformal(&ctx)?.rank());
        sections.push("conformal");
    }
    if doc.file.cend.is_some() {
        r.field("cend_size", doc.cend(group)?.0.len());
        sections.push("cend");
    }
    if doc.has_representation() {
        r.field("representation_dim", doc.representation(group)?.0.len());
        sections.push("representation");
    }
    if doc.file.fine.is_some() {
        let f = doc.fine(group)?;
        TwistedMatrixAlgebra::new(group, &f.fine, &f.sizes, f.theta.clone()).map_err(|e| kernel_error("fine.theta", e))?;
        fine_structure(group, &f)?;
        sections.push("fine");
    }
    r.field("validated", strings(&sections));
    Ok(())
}

fn failure_json(f: &AxiomFailure) -> Value {
    match f {
        AxiomFailure::Grading { i, j, k } => json!({ "axiom": "C2", "i": i, "j": j, "k": k, "message": f.to_string() }),
        AxiomFailure::Sesquilinearity { i, j, side } => {
            json!({ "axiom": "C3", "i": i, "j": j, "side": side, "message": f.to_string() })
        }
        AxiomFailure::Associativity { i, j, k, slot } => json!({
            "axiom": "associativity", "i": i, "j": j, "k": k, "t_slot": format!("{slot:?}"), "message": f.to_string()
        }),
    }
}

fn check_axioms_cmd(doc: &Document, group: &FiniteGroup, r: &mut Report) -> Result<(), InputError> {
    let ctx = doc.context(group, true)?;
    let c = if doc.has_conformal() {
        r.field("source", "conformal");
        doc.conformal(&ctx)?
    } else {
        r.field("source", "current algebra");
        cur_unchecked(&doc.algebra(group, false)?, &ctx)
    };
    r.field("rank", c.rank());
    let report = check_axioms(&c);
    r.field("associativity_instances", report.associativity_instances);
    if let Some(f) = &report.failure {
        r.status = Status::Fail;
        r.field("failure", failure_json(f));
    }
    Ok(())
}

fn construct_cur(doc: &Document, group: &FiniteGroup, r: &mut Report) -> Result<(), InputError> {
    let ctx = doc.context(group, true)?;
    let a = doc.algebra(group, true)?;
    let c = cur(&a, &ctx).map_err(|e| kernel_error("algebra", e))?;
    r.field("rank", c.rank());
    r.field("degrees", labels(group, c.degrees()));
    let mut products = Vec::new();
    for i in 0..c.rank() {
        for j in 0..c.rank() {
            let s = c.structure(i, j);
            if s.iter().any(|p| !p.is_zero()) {
                products.push(json!({ "left": i, "right": j, "result": strings(s) }));
            }
        }
    }
    r.field("products", Value::Array(products));
    r.field("axioms_pass", check_axioms(&c).passed());
    Ok(())
}

fn cend_assoc(doc: &Document, group: &FiniteGroup, r: &mut Report) -> Result<(), InputError> {
    let ctx = doc.context(group, true)?;
    let (degrees, mutation) = doc.cend(group)?;
    r.field("degrees", labels(group, &degrees));
    r.field("mutation", format!("{mutation:?}"));
    match check_cend_associativity(&ctx, &degrees, r.degree_bound, mutation) {
        Ok(n) => {
            r.field("instances", n);
        }
        Err(f) => {
            r.status = Status::Fail;
            r.field(
                "failure",
                json!({
                    "indices": [f.indices.0, f.indices.1, f.indices.2, f.indices.3],
                    "entries": [f.entries.0, f.entries.1, f.entries.2],
                }),
            );
        }
    }
    Ok(())
}

fn trivialize(doc: &Document, group: &FiniteGroup, r: &mut Report) -> Result<(), InputError> {
    let ctx = doc.context(group, true)?;
    match find_trivializing_cochain(&ctx) {
        Ok(tau) => {
            let mut m = serde_json::Map::new();
            for g in group.elements() {
                m.insert(group.label(g).to_string(), Value::String(tau.get(g).to_string()));
            }
            r.field("tau", Value::Object(m));
            let verified = coboundary_of(&tau, &ctx).table() == ctx.phi_table();
            r.field("coboundary_matches", verified);
            if !verified {
                r.status = Status::Fail;
            }
        }
        Err(Error::NoSolution) => {
            r.status = Status::Fail;
            r.field("failure", "phi is not a coboundary");
        }
        Err(e) => return Err(kernel_error("context.phi", e)),
    }
    Ok(())
}

fn decompose(doc: &Document, group: &FiniteGroup, r: &mut Report) -> Result<(), InputError> {
    let a = doc.algebra(group, true)?;
    r.field("dim", a.dim());
    match decompose_semisimple_graded(&a) {
        Ok(blocks) => {
            let mut out = Vec::new();
            for b in &blocks {
                let simple = is_graded_simple(&b.algebra).map_err(|e| kernel_error("algebra", e))?;
                out.push(json!({
                    "dim": b.algebra.dim(),
                    "idempotent": strings(&b.idempotent),
                    "graded_simple": simple,
                }));
            }
            r.field("blocks", Value::Array(out));
        }
        Err(Error::NotSemisimple(_)) => {
            r.status = Status::Fail;
            let rad = radical_fd(&a);
            r.field("failure", "algebra is not semisimple");
            r.field("radical_basis", Value::Array(rad.basis().iter().map(|v| strings(v)).collect()));
        }
        Err(e @ Error::SplitFieldRequired(_)) => {
            r.status = Status::Inconclusive;
            r.field("reason", e.to_string());
        }
        Err(e) => return Err(kernel_error("algebra", e)),
    }
    Ok(())
}

fn fine_structure(group: &FiniteGroup, f: &crate::input::FineData) -> Result<FineStructure<Rational>, InputError> {
    let mut fs = FineStructure::standard(group, &f.fine, &f.sizes, &f.theta).map_err(|e| kernel_error("fine.theta", e))?;
    for (g, m) in &f.iota {
        fs = fs.with_iota(group, *g, m.clone()).map_err(|e| kernel_error("fine.iota", e))?;
    }
    Ok(fs)
}

fn recover(doc: &Document, group: &FiniteGroup, r: &mut Report) -> Result<(), InputError> {
    let (v, basis) = if doc.has_representation() {
        r.field("source", "representation");
        doc.representation(group)?
    } else {
        r.field("source", "fine");
        let f = doc.fine(group)?;
        let t = TwistedMatrixAlgebra::new(group, &f.fine, &f.sizes, f.theta.clone()).map_err(|e| kernel_error("fine.theta", e))?;
        let phi = phi_isomorphism(group, &t, &fine_structure(group, &f)?).map_err(|e| kernel_error("fine", e))?;
        (phi.v_degrees, phi.images)
    };
    r.field("v_degrees", labels(group, &v));
    r.field("algebra_dim", basis.len());
    match graded_irreducible_seeded(group, &v, &basis, r.seed).map_err(|e| kernel_error("representation", e))? {
        Irreducibility::Irreducible => {}
        Irreducibility::Reducible(w) => {
            r.status = Status::Fail;
            r.field("failure", "not graded irreducible");
            r.field("invariant_subspace", Value::Array(w.basis().iter().map(|x| strings(x)).collect()));
            return Ok(());
        }
        Irreducibility::Inconclusive(msg) => {
            r.status = Status::Inconclusive;
            r.field("reason", msg);
            return Ok(());
        }
    }
    let fs = recover_fine_structure_seeded(group, &v, &basis, r.seed).map_err(|e| kernel_error("representation", e))?;
    let fine = fs.fine();
    r.field("gamma1", labels(group, fine.gamma1()));
    r.field("gamma0", labels(group, fine.gamma0()));
    r.field("representatives", labels(group, fine.reps()));
    r.field("sizes", Value::Array(fs.sizes().iter().map(|&s| s.into()).collect()));
    let chi: Vec<Value> = fs.chi().table().iter().map(|row| strings(row)).collect();
    r.field("chi", Value::Array(chi));
    let mut iota = serde_json::Map::new();
    for g in group.elements() {
        if let Some(m) = fs.iota(g) {
            iota.insert(group.label(g).to_string(), matrix_json(m));
        }
    }
    r.field("iota", Value::Object(iota));
    let again = fs.reproduce(group, &v).map_err(|e| kernel_error("representation", e))?;
    let same = spans_by_degree(group.order(), &again) == spans_by_degree(group.order(), &basis);
    r.field("spans_match", same);
    if !same {
        r.status = Status::Fail;
    }
    Ok(())
}

fn simplicity(doc: &Document, group: &FiniteGroup, r: &mut Report) -> Result<(), InputError> {
    let ctx = doc.context(group, true)?;
    let (c, source) = if doc.has_conformal() {
        (doc.conformal(&ctx)?, None)
    } else {
        let a = doc.algebra(group, true)?;
        (cur(&a, &ctx).map_err(|e| kernel_error("algebra", e))?, Some(a))
    };
    let s = conformal_simplicity_suite(&c, r.degree_bound, source.as_ref()).map_err(|e| kernel_error("algebra", e))?;
    r.field("verdict", s.verdict.to_string());
    r.field("authoritative", s.authoritative);
    r.field("nonzero_product", s.nonzero_product);
    r.field("seeds_checked", s.seeds_checked);
    if let Some(simple) = s.cur_simple {
        r.field("current_algebra_source_simple", simple);
    }
    if let Some(cert) = &s.certificate {
        r.field(
            "certificate",
            json!({
                "seed": strings(cert.seed.coords()),
                "ideal_rows": Value::Array(cert.ideal.poly_rows().iter().map(|row| strings(row)).collect()),
            }),
        );
    }
    r.field("scope_note", s.scope_note);
    r.status = match s.verdict {
        Verdict::Simple => Status::Pass,
        Verdict::NotSimple => Status::Fail,
        Verdict::Inconclusive => Status::Inconclusive,
    };
    Ok(())
}
