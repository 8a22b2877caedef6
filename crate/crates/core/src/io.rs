//! JSON documents: module definition files and self-contained result files.
//!
//! Matrices are row-major lists of strings in the expression grammar of
//! [`crate::parse`]. Indices in result files are one-based.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::display::{coeff_to_string, skew_to_string};
use crate::error::{Error, Result};
use crate::field::{FieldParams, Fq, RationalCoeff};
use crate::matrix::{KMatrix, SkewMatrix};
use crate::parse::{ParseError, Scope};
use crate::reduction::{
    coefficient_form_truncated, generator_image, split_ext0, substitute_generator, DegreeBounds, Discarded,
    ExtResult, GeneratorIndex, Method, ReductionStep, ReductionTrace,
};
use crate::skew::{Side, SkewPoly};
use crate::tmodule::TModule;

pub type MatrixText = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub t: MatrixText,
    #[serde(default = "tau")]
    pub side: Side,
}

fn tau() -> Side {
    Side::Tau
}

/// A definition file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub field: FieldParams,
    #[serde(default)]
    pub symbols: Vec<String>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleSpec>,
    /// Free-standing matrices, for `mul` and `adjoint`.
    #[serde(default)]
    pub matrices: BTreeMap<String, ModuleSpec>,
    /// Defaults for the command line; flags take precedence.
    #[serde(default)]
    pub job: Option<serde_json::Value>,
}

/// Converts a JSON error into a positioned parse error.
pub fn json_error(e: serde_json::Error, what: &str) -> Error {
    Error::Parse(
        ParseError {
            message: e.to_string(),
            line: e.line(),
            column: e.column(),
            token: String::new(),
            context: None,
        }
        .with_context(what.to_string()),
    )
}

fn in_context(e: Error, context: String) -> Error {
    match e {
        Error::Parse(p) => Error::Parse(p.with_context(context)),
        other => other,
    }
}

/// A parsed definition file.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub fq: Fq,
    pub scope: Scope,
    pub modules: BTreeMap<String, TModule>,
    pub matrices: BTreeMap<String, SkewMatrix>,
    pub job: Option<serde_json::Value>,
}

impl Workspace {
    pub fn from_json(src: &str) -> Result<Self> {
        let doc: InputDoc = serde_json::from_str(src).map_err(|e| json_error(e, "input file"))?;
        Workspace::from_doc(doc)
    }

    pub fn from_doc(doc: InputDoc) -> Result<Self> {
        let fq = Fq::new(&doc.field)?;
        let scope = Scope::new(fq, Side::Tau, &doc.symbols)?;
        let mut modules = BTreeMap::new();
        for (name, spec) in &doc.modules {
            let m = scope
                .clone()
                .on_side(spec.side)
                .parse_matrix(&spec.t)
                .map_err(|e| in_context(e, format!("module {name}")))?;
            let m = TModule::new(m).map_err(|e| match e {
                Error::InvalidModule(s) => Error::InvalidModule(format!("{name}: {s}")),
                other => other,
            })?;
            modules.insert(name.clone(), m);
        }
        let mut matrices = BTreeMap::new();
        for (name, spec) in &doc.matrices {
            let m = scope
                .clone()
                .on_side(spec.side)
                .parse_matrix(&spec.t)
                .map_err(|e| in_context(e, format!("matrix {name}")))?;
            matrices.insert(name.clone(), m);
        }
        Ok(Workspace {
            fq,
            scope,
            modules,
            matrices,
            job: doc.job,
        })
    }

    pub fn module(&self, name: &str) -> Result<&TModule> {
        self.modules
            .get(name)
            .ok_or_else(|| Error::InvalidModule(format!("no module named `{name}`")))
    }

    /// A module or a free-standing matrix.
    pub fn matrix(&self, name: &str) -> Result<&SkewMatrix> {
        if let Some(m) = self.matrices.get(name) {
            return Ok(m);
        }
        self.modules
            .get(name)
            .map(|m| m.t_matrix())
            .ok_or_else(|| Error::InvalidModule(format!("no matrix or module named `{name}`")))
    }
}

pub fn matrix_text(m: &SkewMatrix) -> MatrixText {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| skew_to_string(m.get(i, j))).collect())
        .collect()
}

fn kmatrix_text(m: &KMatrix) -> MatrixText {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| coeff_to_string(m.get(i, j))).collect())
        .collect()
}

fn collect_coeff(x: &RationalCoeff, out: &mut BTreeSet<String>) {
    for p in [x.numerator(), x.denominator()] {
        for v in p.vars() {
            if !v.name.is_theta() && !v.name.is_generator() {
                out.insert(v.name.as_str().to_string());
            }
        }
    }
}

fn collect_matrix(m: &SkewMatrix, out: &mut BTreeSet<String>) {
    for e in m.entries() {
        for c in e.coeffs() {
            collect_coeff(c, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub row: usize,
    pub col: usize,
    pub shift: usize,
    pub multiplier: String,
    pub basis: MatrixText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscardedDoc {
    pub column: usize,
    pub row: usize,
    pub col: usize,
    pub terms: String,
}

/// A result file: enough to rebuild and re-check every column.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDoc {
    pub field: FieldParams,
    pub symbols: Vec<String>,
    pub method: Method,
    pub side: Side,
    pub source: MatrixText,
    pub target: MatrixText,
    pub pi: MatrixText,
    pub bounds: Vec<Vec<usize>>,
    /// `[i, j, k]` of each coordinate, `i` and `j` one-based.
    pub ordering: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deleted: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi0: Option<MatrixText>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discarded: Vec<DiscardedDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<Vec<StepDoc>>>,
}

impl ResultDoc {
    pub fn new(res: &ExtResult, with_trace: bool) -> Self {
        let fq = res.pi.field();
        let mut params = fq.params().clone();
        if params.generator.is_none() {
            params.generator = fq.generator_name().map(String::from);
        }
        let mut symbols = BTreeSet::new();
        for m in [res.source.t_matrix(), res.target.t_matrix(), res.pi.t_matrix()] {
            collect_matrix(m, &mut symbols);
        }
        let traces = with_trace.then(|| {
            res.traces
                .iter()
                .map(|t| {
                    t.steps
                        .iter()
                        .map(|s| StepDoc {
                            row: s.row + 1,
                            col: s.col + 1,
                            shift: s.shift,
                            multiplier: coeff_to_string(&s.multiplier),
                            basis: kmatrix_text(&s.basis),
                        })
                        .collect()
                })
                .collect()
        });
        ResultDoc {
            field: params,
            symbols: symbols.into_iter().collect(),
            method: res.method,
            side: res.side(),
            source: matrix_text(res.source.t_matrix()),
            target: matrix_text(res.target.t_matrix()),
            pi: matrix_text(res.pi.t_matrix()),
            bounds: res.bounds.to_rows(),
            ordering: res.ordering.iter().map(|g| [g.i + 1, g.j + 1, g.k]).collect(),
            s: res.ext0.as_ref().map(|e| e.s),
            deleted: res.ext0.as_ref().map(|e| e.deleted.iter().map(|i| i + 1).collect()),
            pi0: res.ext0.as_ref().map(|e| matrix_text(e.pi0.t_matrix())),
            discarded: res
                .discarded
                .iter()
                .map(|d| DiscardedDoc {
                    column: d.column + 1,
                    row: d.i + 1,
                    col: d.j + 1,
                    terms: skew_to_string(&d.terms),
                })
                .collect(),
            traces,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents always serialize")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| json_error(e, "result file"))
    }
}

/// What `verify` established about a result file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub dim: usize,
    /// Columns rebuilt from their trace, if the file carried traces.
    pub replayed: Option<usize>,
    pub ext0_checked: bool,
}

fn parse_text(scope: &Scope, text: &MatrixText, what: &str) -> Result<SkewMatrix> {
    scope.parse_matrix(text).map_err(|e| in_context(e, what.to_string()))
}

/// Re-validates a result file. `Π_t` must be a t-module. When traces are
/// present each column is rebuilt: the generator image minus the replayed
/// inner biderivations is read off in coefficient form and compared with the
/// stored column and discarded terms. A stored Ext0 split is recomputed.
pub fn verify(doc: &ResultDoc) -> Result<VerifyReport> {
    let fq = Fq::new(&doc.field)?;
    let scope = Scope::new(fq, doc.side, &doc.symbols)?;
    let source = TModule::new(parse_text(&scope, &doc.source, "source")?)?;
    let target = TModule::new(parse_text(&scope, &doc.target, "target")?)?;
    let pi = TModule::new(parse_text(&scope, &doc.pi, "pi")?)?;
    let rows = doc.bounds.len();
    let cols = doc.bounds.first().map_or(0, Vec::len);
    if doc.bounds.iter().any(|r| r.len() != cols) || rows != target.dim() || cols != source.dim() {
        return Err(Error::DimensionMismatch("bounds do not match the modules".into()));
    }
    let bounds = DegreeBounds {
        rows,
        cols,
        n: doc.bounds.concat(),
    };
    let ordering: Vec<GeneratorIndex> = bounds.ordering();
    let stored: Vec<[usize; 3]> = ordering.iter().map(|g| [g.i + 1, g.j + 1, g.k]).collect();
    if stored != doc.ordering || ordering.len() != pi.dim() {
        return Err(Error::DimensionMismatch("ordering does not match the bounds".into()));
    }
    let mut report = VerifyReport {
        dim: pi.dim(),
        replayed: None,
        ext0_checked: false,
    };
    let mut reduced = Vec::new();
    let mut traces = Vec::new();
    if let Some(doc_traces) = &doc.traces {
        if doc_traces.len() != ordering.len() {
            return Err(Error::DimensionMismatch("one trace per column is required".into()));
        }
        let gen_scope = Scope::new(fq, doc.side, &doc.symbols)?.allowing_generator();
        for (col, (g, steps)) in ordering.iter().zip(doc_traces).enumerate() {
            let mut trace = ReductionTrace::default();
            for s in steps {
                let basis = gen_scope.parse_matrix(&s.basis)?;
                if basis.degree().is_some_and(|d| d > 0) {
                    return Err(Error::DimensionMismatch("a step basis must be scalar".into()));
                }
                let basis = basis.constant_term();
                if s.row == 0 || s.col == 0 {
                    return Err(Error::DimensionMismatch("step indices are one-based".into()));
                }
                trace.steps.push(ReductionStep {
                    row: s.row - 1,
                    col: s.col - 1,
                    shift: s.shift,
                    multiplier: gen_scope.parse_coeff(&s.multiplier)?,
                    basis,
                });
            }
            let image = generator_image(&target, source.dim(), *g)?;
            let r = image.sub(&trace.replay(&source, &target)?)?;
            let (coords, rest) = coefficient_form_truncated(&r, &bounds);
            for (row, x) in coords.iter().enumerate() {
                if &substitute_generator(x, doc.side)? != pi.t_matrix().get(row, col) {
                    return Err(Error::internal(format!(
                        "entry ({}, {}) does not match its replayed trace",
                        row + 1,
                        col + 1
                    )));
                }
            }
            let mut left: Vec<(usize, usize, String)> =
                rest.iter().map(|(i, j, p)| (i + 1, j + 1, skew_to_string(p))).collect();
            let mut listed: Vec<(usize, usize, String)> = doc
                .discarded
                .iter()
                .filter(|d| d.column == col + 1)
                .map(|d| (d.row, d.col, gen_scope.parse_poly(&d.terms).map(|p| skew_to_string(&p))))
                .map(|(a, b, p)| p.map(|p| (a, b, p)))
                .collect::<Result<_>>()?;
            left.sort();
            listed.sort();
            if left != listed {
                return Err(Error::internal(format!(
                    "column {} leaves terms above its bounds that the file does not list",
                    col + 1
                )));
            }
            reduced.push(r);
            traces.push(trace);
        }
        report.replayed = Some(ordering.len());
    }
    if let (Some(s), Some(deleted)) = (doc.s, &doc.deleted) {
        let res = ExtResult {
            method: doc.method,
            source,
            target,
            pi,
            bounds,
            ordering,
            reduced,
            traces,
            discarded: Vec::<Discarded>::new(),
            ext0: None,
        };
        let split = split_ext0(&res)?;
        let want: Vec<usize> = split.deleted.iter().map(|i| i + 1).collect();
        if split.s != s || &want != deleted {
            return Err(Error::Ext0Inconsistent(format!(
                "file states s = {s}, deleted {deleted:?}; recomputed s = {}, deleted {want:?}",
                split.s
            )));
        }
        if let Some(pi0) = &doc.pi0 {
            if &parse_text(&scope, pi0, "pi0")? != split.pi0.t_matrix() {
                return Err(Error::Ext0Inconsistent("stored pi0 differs from the minor".into()));
            }
        }
        report.ext0_checked = true;
    }
    Ok(report)
}

/// The entries of `m` as a JSON array of strings.
pub fn matrix_json(m: &SkewMatrix) -> serde_json::Value {
    serde_json::to_value(matrix_text(m)).expect("strings serialize")
}

/// A single polynomial as text.
pub fn poly_text(p: &SkewPoly) -> String {
    skew_to_string(p)
}
