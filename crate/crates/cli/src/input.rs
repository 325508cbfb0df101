//! Input schema: one TOML document per job.
//!
//! ```toml
//! [group]                      # preset = "trivial" | "z2" | "cyclic" | "s3",
//! preset = "z2"                # or labels = [...] with table = [[...], ...]
//!
//! [context]                    # omitted entries: sigma = 1, phi = 0
//! sigma = { u = "-1" }
//! phi = [{ a = "u", b = "u", value = "2" }]
//!
//! [[algebra]]                  # summands of a direct sum
//! kind = "matrix"              # field | matrix | group | upper-triangular |
//! n = 2                        # zero | twisted | table
//!
//! [conformal]                  # explicit structure polynomials in lambda, T
//! degrees = ["e"]
//! products = [{ left = 0, right = 0, result = ["lambda + T"] }]
//!
//! [cend]
//! degrees = ["e", "u"]
//! mutation = "none"
//!
//! [representation]             # homogeneous basis of a subalgebra of End V
//! v_degrees = ["e", "u"]
//! basis = [{ degree = "u", matrix = [["0", "1"], ["1", "0"]] }]
//!
//! [fine]                       # twisted matrix algebra with a gauge
//! subgroup = ["e", "u"]
//! sizes = [1]
//! theta = [{ a = "u", b = "u", value = "-1" }]
//! iota = [{ element = "u", matrix = [["3"]] }]
//! ```
//!
//! Rationals are integers or strings `"a/b"`; polynomials use the kernel
//! grammar in `T, x, lambda, mu`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use gradconf::algebra::GradedAlgebraFD;
use gradconf::cend::CendMutation;
use gradconf::conformal::GradedConformalAlgebra;
use gradconf::group::{coset_decomposition, FineSubgroupData};
use gradconf::matrix::Matrix;
use gradconf::parse::parse_poly;
use gradconf::poly::Poly;
use gradconf::scalar::parse_rational;
use gradconf::twisted::TwistedMatrixAlgebra;
use gradconf::{FiniteGroup, GradingContext, Rational};
use serde::Deserialize;
use toml::Spanned;

/// A diagnostic tied to a field path and, when known, a source position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub field: String,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.line, self.column) {
            (Some(l), Some(c)) => write!(f, "{} (line {l}, column {c}): {}", self.field, self.message),
            _ => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum NumText {
    Int(i64),
    Text(String),
}

type Label = Spanned<String>;
type Num = Spanned<NumText>;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputFile {
    pub group: GroupSpec,
    #[serde(default)]
    pub context: ContextSpec,
    #[serde(default)]
    pub algebra: Vec<AlgebraSpec>,
    pub conformal: Option<ConformalSpec>,
    pub cend: Option<CendSpec>,
    pub representation: Option<RepresentationSpec>,
    pub fine: Option<FineSpec>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub preset: Option<Label>,
    pub order: Option<usize>,
    pub labels: Option<Vec<Label>>,
    pub table: Option<Vec<Spanned<Vec<Label>>>>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextSpec {
    #[serde(default)]
    pub sigma: BTreeMap<String, Num>,
    #[serde(default)]
    pub phi: Vec<PairValue>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairValue {
    pub a: Label,
    pub b: Label,
    pub value: Num,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Product {
    pub left: usize,
    pub right: usize,
    pub result: Vec<Num>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyProduct {
    pub left: usize,
    pub right: usize,
    pub result: Vec<Spanned<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub kind: Label,
    pub n: Option<usize>,
    pub degrees: Option<Vec<Label>>,
    #[serde(default)]
    pub products: Vec<Product>,
    pub subgroup: Option<Vec<Label>>,
    #[serde(default)]
    pub zero: Vec<Label>,
    pub sizes: Option<Vec<usize>>,
    #[serde(default)]
    pub theta: Vec<PairValue>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConformalSpec {
    pub degrees: Vec<Label>,
    #[serde(default)]
    pub products: Vec<PolyProduct>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CendSpec {
    pub degrees: Vec<Label>,
    pub mutation: Option<Label>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixEntry {
    pub degree: Label,
    pub matrix: Vec<Vec<Num>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationSpec {
    pub v_degrees: Vec<Label>,
    pub basis: Vec<MatrixEntry>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IotaEntry {
    pub element: Label,
    pub matrix: Vec<Vec<Num>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FineSpec {
    pub subgroup: Vec<Label>,
    #[serde(default)]
    pub zero: Vec<Label>,
    pub sizes: Vec<usize>,
    #[serde(default)]
    pub theta: Vec<PairValue>,
    #[serde(default)]
    pub iota: Vec<IotaEntry>,
}

/// Twisted matrix algebra data with explicit gauge matrices.
pub struct FineData {
    pub fine: FineSubgroupData,
    pub sizes: Vec<usize>,
    pub theta: Vec<Vec<Rational>>,
    pub iota: Vec<(usize, Matrix<Rational>)>,
}

/// The parsed document together with its source, for positions.
pub struct Document {
    pub source: String,
    pub file: InputFile,
}

impl Document {
    pub fn parse(source: String) -> Result<Self, InputError> {
        match toml::from_str::<InputFile>(&source) {
            Ok(file) => Ok(Document { source, file }),
            Err(e) => {
                let (line, column) = match e.span() {
                    Some(span) => {
                        let (l, c) = line_col(&source, span.start);
                        (Some(l), Some(c))
                    }
                    None => (None, None),
                };
                Err(InputError { field: "document".into(), line, column, message: e.message().to_string() })
            }
        }
    }

    fn err(&self, field: impl Into<String>, span: Option<Range<usize>>, message: impl Into<String>) -> InputError {
        let (line, column) = match span {
            Some(s) => {
                let (l, c) = line_col(&self.source, s.start);
                (Some(l), Some(c))
            }
            None => (None, None),
        };
        InputError { field: field.into(), line, column, message: message.into() }
    }

    fn rational(&self, field: &str, n: &Num) -> Result<Rational, InputError> {
        match n.get_ref() {
            NumText::Int(i) => Ok(gradconf::scalar::q(*i)),
            NumText::Text(s) => {
                parse_rational(s).ok_or_else(|| self.err(field, Some(n.span()), format!("not a rational number: {s:?}")))
            }
        }
    }

    fn element(&self, group: &FiniteGroup, field: &str, label: &Label) -> Result<usize, InputError> {
        group
            .index_of(label.get_ref())
            .ok_or_else(|| self.err(field, Some(label.span()), format!("unknown group element {:?}", label.get_ref())))
    }

    fn elements(&self, group: &FiniteGroup, field: &str, labels: &[Label]) -> Result<Vec<usize>, InputError> {
        labels.iter().enumerate().map(|(i, l)| self.element(group, &format!("{field}[{i}]"), l)).collect()
    }

    fn matrix(&self, field: &str, rows: &[Vec<Num>]) -> Result<Matrix<Rational>, InputError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || rows.iter().any(|r| r.len() != cols) || cols == 0 {
            return Err(self.err(field, None, "matrix must be a nonempty rectangular array"));
        }
        let mut out = Vec::with_capacity(rows.len());
        for (i, r) in rows.iter().enumerate() {
            let row = r
                .iter()
                .enumerate()
                .map(|(j, x)| self.rational(&format!("{field}[{i}][{j}]"), x))
                .collect::<Result<Vec<_>, _>>()?;
            out.push(row);
        }
        Ok(Matrix::from_rows(out))
    }

    /// A full table on `group` from sparse entries, `default` elsewhere.
    fn pair_table(
        &self,
        group: &FiniteGroup,
        field: &str,
        entries: &[PairValue],
        default: Rational,
    ) -> Result<Vec<Vec<Rational>>, InputError> {
        let n = group.order();
        let mut t = vec![vec![default; n]; n];
        for (i, e) in entries.iter().enumerate() {
            let f = format!("{field}[{i}]");
            let a = self.element(group, &format!("{f}.a"), &e.a)?;
            let b = self.element(group, &format!("{f}.b"), &e.b)?;
            t[a][b] = self.rational(&format!("{f}.value"), &e.value)?;
        }
        Ok(t)
    }

    pub fn group(&self) -> Result<FiniteGroup, InputError> {
        let g = &self.file.group;
        if let Some(preset) = &g.preset {
            if g.labels.is_some() || g.table.is_some() {
                return Err(self.err("group", Some(preset.span()), "give either a preset or labels with a table"));
            }
            let order = || g.order.ok_or_else(|| self.err("group.order", None, "cyclic groups need an order"));
            return match preset.get_ref().as_str() {
                "trivial" => Ok(FiniteGroup::trivial()),
                "z2" => Ok(FiniteGroup::z2()),
                "cyclic" => match order()? {
                    0 => Err(self.err("group.order", None, "order must be positive")),
                    n => Ok(FiniteGroup::cyclic(n)),
                },
                "s3" => Ok(FiniteGroup::symmetric3()),
                other => Err(self.err("group.preset", Some(preset.span()), format!("unknown preset {other:?}"))),
            };
        }
        let (Some(labels), Some(table)) = (&g.labels, &g.table) else {
            return Err(self.err("group", None, "give either a preset or labels with a table"));
        };
        let names: Vec<String> = labels.iter().map(|l| l.get_ref().clone()).collect();
        for (i, l) in labels.iter().enumerate() {
            if names[..i].contains(l.get_ref()) {
                return Err(self.err(format!("group.labels[{i}]"), Some(l.span()), "duplicate label"));
            }
        }
        let mut idx = Vec::with_capacity(table.len());
        for (i, row) in table.iter().enumerate() {
            let mut r = Vec::with_capacity(row.get_ref().len());
            for (j, x) in row.get_ref().iter().enumerate() {
                let pos = names.iter().position(|n| n == x.get_ref()).ok_or_else(|| {
                    self.err(format!("group.table[{i}][{j}]"), Some(x.span()), format!("unknown label {:?}", x.get_ref()))
                })?;
                r.push(pos);
            }
            idx.push(r);
        }
        FiniteGroup::validate(names, idx).map_err(|e| {
            let row = match &e {
                gradconf::Error::NotLatinSquare(at) => at.strip_prefix("row ").and_then(|i| i.parse::<usize>().ok()),
                _ => None,
            };
            match row.and_then(|i| table.get(i).map(|r| (i, r.span()))) {
                Some((i, span)) => self.err(format!("group.table[{i}]"), Some(span), e.to_string()),
                None => self.err("group.table", None, e.to_string()),
            }
        })
    }

    /// The context, validated (`sigma` a homomorphism, `phi` a cocycle)
    /// when `validate` is set.
    pub fn context(&self, group: &FiniteGroup, validate: bool) -> Result<GradingContext, InputError> {
        let c = &self.file.context;
        let mut sigma = vec![gradconf::scalar::q(1); group.order()];
        for (label, v) in &c.sigma {
            let g = group
                .index_of(label)
                .ok_or_else(|| self.err(format!("context.sigma.{label}"), None, format!("unknown group element {label:?}")))?;
            sigma[g] = self.rational(&format!("context.sigma.{label}"), v)?;
        }
        let phi = self.pair_table(group, "context.phi", &c.phi, gradconf::scalar::q(0))?;
        let ctx = GradingContext::new(group.clone(), sigma, phi).map_err(|e| self.err("context", None, e.to_string()))?;
        if validate {
            ctx.validate().map_err(|e| {
                let field = match e {
                    gradconf::Error::SigmaNotHomomorphism(_) => "context.sigma",
                    _ => "context.phi",
                };
                self.err(field, None, e.to_string())
            })?;
        }
        Ok(ctx)
    }

    /// The direct sum of the `[[algebra]]` summands. With `checked` unset,
    /// table summands skip the associativity and grading checks.
    pub fn algebra(&self, group: &FiniteGroup, checked: bool) -> Result<GradedAlgebraFD, InputError> {
        if self.file.algebra.is_empty() {
            return Err(self.err("algebra", None, "this command needs at least one [[algebra]] summand"));
        }
        let mut out: Option<GradedAlgebraFD> = None;
        for (i, spec) in self.file.algebra.iter().enumerate() {
            let a = self.summand(group, &format!("algebra[{i}]"), spec, checked)?;
            out = Some(match out {
                None => a,
                Some(acc) => acc.direct_sum(&a).map_err(|e| self.err(format!("algebra[{i}]"), None, e.to_string()))?,
            });
        }
        Ok(out.expect("nonempty"))
    }

    fn summand(&self, group: &FiniteGroup, field: &str, spec: &AlgebraSpec, checked: bool) -> Result<GradedAlgebraFD, InputError> {
        let g = group.clone();
        let need_n = || spec.n.filter(|&n| n > 0).ok_or_else(|| self.err(format!("{field}.n"), None, "a positive size n is required"));
        let degrees = || -> Result<Vec<usize>, InputError> {
            let d = spec.degrees.as_ref().ok_or_else(|| self.err(format!("{field}.degrees"), None, "basis degrees are required"))?;
            self.elements(group, &format!("{field}.degrees"), d)
        };
        match spec.kind.get_ref().as_str() {
            "field" => Ok(GradedAlgebraFD::field(g)),
            "matrix" => Ok(GradedAlgebraFD::matrix_algebra(g, need_n()?)),
            "group" => Ok(GradedAlgebraFD::group_algebra(g)),
            "upper-triangular" => Ok(GradedAlgebraFD::upper_triangular2(g)),
            "zero" => Ok(GradedAlgebraFD::zero_product(g, degrees()?)),
            "twisted" => {
                let sub = spec.subgroup.as_ref().ok_or_else(|| self.err(format!("{field}.subgroup"), None, "subgroup is required"))?;
                let sizes = spec.sizes.clone().ok_or_else(|| self.err(format!("{field}.sizes"), None, "sizes are required"))?;
                let gamma1 = self.elements(group, &format!("{field}.subgroup"), sub)?;
                let gamma0 = self.elements(group, &format!("{field}.zero"), &spec.zero)?;
                let fine = coset_decomposition(group, &gamma1, &gamma0).map_err(|e| self.err(format!("{field}.subgroup"), None, e.to_string()))?;
                let theta = self.pair_table(group, &format!("{field}.theta"), &spec.theta, gradconf::scalar::q(1))?;
                let t = TwistedMatrixAlgebra::new(group, &fine, &sizes, theta).map_err(|e| self.err(format!("{field}.theta"), None, e.to_string()))?;
                Ok(t.algebra().clone())
            }
            "table" => {
                let degs = degrees()?;
                let n = degs.len();
                let mut mult = vec![vec![vec![gradconf::scalar::q(0); n]; n]; n];
                for (k, p) in spec.products.iter().enumerate() {
                    let f = format!("{field}.products[{k}]");
                    if p.left >= n || p.right >= n || p.result.len() != n {
                        return Err(self.err(&f, None, format!("indices must be below {n} and result must have {n} entries")));
                    }
                    for (l, c) in p.result.iter().enumerate() {
                        mult[p.left][p.right][l] = self.rational(&format!("{f}.result[{l}]"), c)?;
                    }
                }
                let built = if checked {
                    GradedAlgebraFD::new(g, degs, mult)
                } else {
                    GradedAlgebraFD::new_unchecked(g, degs, mult)
                };
                built.map_err(|e| self.err(format!("{field}.products"), None, e.to_string()))
            }
            other => Err(self.err(format!("{field}.kind"), Some(spec.kind.span()), format!("unknown algebra kind {other:?}"))),
        }
    }

    pub fn has_conformal(&self) -> bool {
        self.file.conformal.is_some()
    }

    pub fn conformal(&self, ctx: &GradingContext) -> Result<GradedConformalAlgebra, InputError> {
        let spec = self.file.conformal.as_ref().ok_or_else(|| self.err("conformal", None, "missing [conformal] section"))?;
        let degrees = self.elements(ctx.group(), "conformal.degrees", &spec.degrees)?;
        let n = degrees.len();
        let mut structure = vec![vec![vec![Poly::zero(); n]; n]; n];
        for (k, p) in spec.products.iter().enumerate() {
            let f = format!("conformal.products[{k}]");
            if p.left >= n || p.right >= n || p.result.len() != n {
                return Err(self.err(&f, None, format!("indices must be below {n} and result must have {n} entries")));
            }
            for (l, s) in p.result.iter().enumerate() {
                structure[p.left][p.right][l] = parse_poly(s.get_ref()).map_err(|e| {
                    self.err(format!("{f}.result[{l}]"), Some(s.span().start + 1 + e.pos..s.span().end), e.to_string())
                })?;
            }
        }
        GradedConformalAlgebra::new(ctx.clone(), degrees, structure).map_err(|e| self.err("conformal.products", None, e.to_string()))
    }

    pub fn cend(&self, group: &FiniteGroup) -> Result<(Vec<usize>, CendMutation), InputError> {
        let spec = self.file.cend.as_ref().ok_or_else(|| self.err("cend", None, "missing [cend] section"))?;
        if spec.degrees.is_empty() {
            return Err(self.err("cend.degrees", None, "at least one degree is required"));
        }
        let degrees = self.elements(group, "cend.degrees", &spec.degrees)?;
        let mutation = match spec.mutation.as_ref().map(|m| (m.get_ref().as_str(), m.span())) {
            None | Some(("none", _)) => CendMutation::None,
            Some(("left-sigma", _)) => CendMutation::LeftSigma,
            Some(("left-phi", _)) => CendMutation::LeftPhi,
            Some(("right-t-sigma", _)) => CendMutation::RightTSigma,
            Some(("right-t-phi", _)) => CendMutation::RightTPhi,
            Some(("right-x-sigma", _)) => CendMutation::RightXSigma,
            Some(("right-x-phi", _)) => CendMutation::RightXPhi,
            Some((other, span)) => return Err(self.err("cend.mutation", Some(span), format!("unknown mutation {other:?}"))),
        };
        Ok((degrees, mutation))
    }

    pub fn has_representation(&self) -> bool {
        self.file.representation.is_some()
    }

    pub fn representation(&self, group: &FiniteGroup) -> Result<(Vec<usize>, Vec<(usize, Matrix<Rational>)>), InputError> {
        let spec = self.file.representation.as_ref().ok_or_else(|| self.err("representation", None, "missing [representation] section"))?;
        let v = self.elements(group, "representation.v_degrees", &spec.v_degrees)?;
        let mut basis = Vec::with_capacity(spec.basis.len());
        for (i, e) in spec.basis.iter().enumerate() {
            let f = format!("representation.basis[{i}]");
            let d = self.element(group, &format!("{f}.degree"), &e.degree)?;
            let m = self.matrix(&format!("{f}.matrix"), &e.matrix)?;
            if m.rows() != v.len() || m.cols() != v.len() {
                return Err(self.err(format!("{f}.matrix"), None, format!("must be {0}x{0}", v.len())));
            }
            basis.push((d, m));
        }
        gradconf::irreducible::check_homogeneous(group, &v, &basis)
            .map_err(|e| self.err("representation.basis", None, e.to_string()))?;
        Ok((v, basis))
    }

    pub fn fine(&self, group: &FiniteGroup) -> Result<FineData, InputError> {
        let spec = self.file.fine.as_ref().ok_or_else(|| self.err("fine", None, "missing [fine] section"))?;
        let gamma1 = self.elements(group, "fine.subgroup", &spec.subgroup)?;
        let gamma0 = self.elements(group, "fine.zero", &spec.zero)?;
        let fine = coset_decomposition(group, &gamma1, &gamma0).map_err(|e| self.err("fine.subgroup", None, e.to_string()))?;
        if spec.sizes.len() != fine.num_cosets() || spec.sizes.contains(&0) {
            return Err(self.err("fine.sizes", None, format!("need {} positive sizes, one per coset", fine.num_cosets())));
        }
        let theta = self.pair_table(group, "fine.theta", &spec.theta, gradconf::scalar::q(1))?;
        let mut iota = Vec::with_capacity(spec.iota.len());
        for (i, e) in spec.iota.iter().enumerate() {
            let f = format!("fine.iota[{i}]");
            let g = self.element(group, &format!("{f}.element"), &e.element)?;
            iota.push((g, self.matrix(&format!("{f}.matrix"), &e.matrix)?));
        }
        Ok(FineData { fine, sizes: spec.sizes.clone(), theta, iota })
    }
}

/// 1-based line and column of a byte offset.
fn line_col(source: &str, offset: usize) -> (usize, usize) {
    let before = &source[..offset.min(source.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}
