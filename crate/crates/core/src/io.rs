//! JSON file formats.
//!
//! Rationals are strings `"p/q"` or `"p"`. An algebra reference is an inline
//! algebra object, a builtin name (`"Q"`, `"fun:x,y,w"`, `"fun:3"`,
//! `"trunc:3"`), or a path resolved against the referring file's directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{symmetric_power, AlgebraSpec, Element, PowerKind, SubalgebraSpec};
use crate::catalog::builtin_algebra;
use crate::charfn::LinMap;
use crate::classify::{HomClass, Outcome, SamplingPolicy, Verdict, Witness};
use crate::correspondence::{HomViolation, SymHom};
use crate::error::{Error, Result};
use crate::rational::{from_rat_matrix, from_rats, to_rat_matrix, to_rats, Rat};
use crate::reps::{MatrixRep, SuperRep};
use crate::series::TruncSeries;
use crate::symspace::{FiniteSpace, PQClass};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub dim: usize,
    pub labels: Vec<String>,
    pub unit: Vec<Rat>,
    pub mul: Vec<Vec<Vec<Rat>>>,
}

impl AlgebraFile {
    pub fn from_spec(spec: &AlgebraSpec) -> Self {
        Self {
            dim: spec.dim(),
            labels: spec.labels().to_vec(),
            unit: to_rats(spec.unit_coords()),
            mul: spec.dense_table().iter().map(|row| to_rat_matrix(row)).collect(),
        }
    }

    pub fn into_spec(self) -> Result<AlgebraSpec> {
        if self.labels.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, actual: self.labels.len() });
        }
        let mul = self.mul.into_iter().map(from_rat_matrix).collect();
        AlgebraSpec::from_dense(self.labels, from_rats(self.unit), mul)
    }
}

/// Parses JSON, reporting the line and column of syntax errors.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{origin}: {e}")))
}

/// A JSON document together with the directory used to resolve relative paths.
#[derive(Clone, Debug)]
pub struct Document {
    pub value: Value,
    pub dir: PathBuf,
    pub origin: String,
}

impl Document {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let origin = path.display().to_string();
        Ok(Self {
            value: parse_json(&text, &origin)?,
            dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
            origin,
        })
    }

    pub fn parse(text: &str, dir: &Path) -> Result<Self> {
        Ok(Self { value: parse_json(text, "<input>")?, dir: dir.to_path_buf(), origin: "<input>".into() })
    }

    fn field<T: for<'de> Deserialize<'de>>(&self, value: &Value) -> Result<T> {
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("{}: {e}", self.origin)))
    }

    fn get(&self, key: &str) -> Result<&Value> {
        self.value.get(key).ok_or_else(|| Error::Parse(format!("{}: missing field `{key}`", self.origin)))
    }
}

pub fn resolve_algebra(value: &Value, dir: &Path) -> Result<AlgebraSpec> {
    match value {
        Value::String(s) => match builtin_algebra(s) {
            Err(Error::UnknownLabel(_)) => load_algebra(&dir.join(s)),
            other => other,
        },
        Value::Object(_) => {
            let file: AlgebraFile =
                serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("algebra: {e}")))?;
            file.into_spec()
        }
        _ => Err(Error::Parse("an algebra is an object, a builtin name or a path".into())),
    }
}

pub fn load_algebra(path: &Path) -> Result<AlgebraSpec> {
    let doc = Document::read(path)?;
    resolve_algebra(&doc.value, &doc.dir)
}

pub fn algebra_json(spec: &AlgebraSpec) -> Value {
    serde_json::to_value(AlgebraFile::from_spec(spec)).expect("serializable")
}

#[derive(Deserialize)]
struct MapFile {
    domain: Value,
    codomain: Value,
    matrix: Vec<Vec<Rat>>,
}

pub fn map_from_document(doc: &Document) -> Result<LinMap> {
    let file: MapFile = doc.field(&doc.value)?;
    let domain = Arc::new(resolve_algebra(&file.domain, &doc.dir)?);
    let codomain = Arc::new(resolve_algebra(&file.codomain, &doc.dir)?);
    LinMap::new(domain, codomain, from_rat_matrix(file.matrix))
}

pub fn load_map(path: &Path) -> Result<LinMap> {
    map_from_document(&Document::read(path)?)
}

pub fn map_json(f: &LinMap) -> Value {
    json!({
        "domain": algebra_json(f.domain()),
        "codomain": algebra_json(f.codomain()),
        "matrix": to_rat_matrix(f.matrix()),
    })
}

pub fn element_json(e: &Element) -> Value {
    json!(to_rats(e.coords()))
}

pub fn series_json(s: &TruncSeries<Element>) -> Value {
    Value::Array(s.coeffs().iter().map(element_json).collect())
}

/// `{ "algebra": ref, "images": [...] }`, `{ "algebra": ref, "diagonal": [labels] }`
/// or `{ "algebra": ref, "regular": true }`.
#[derive(Deserialize)]
struct RepFile {
    algebra: Value,
    #[serde(default)]
    images: Option<Vec<Vec<Vec<Rat>>>>,
    #[serde(default)]
    diagonal: Option<Vec<String>>,
    #[serde(default)]
    regular: bool,
}

fn rep_from_value(doc: &Document, value: &Value) -> Result<MatrixRep> {
    let file: RepFile = doc.field(value)?;
    let alg = Arc::new(resolve_algebra(&file.algebra, &doc.dir)?);
    match (file.images, file.diagonal, file.regular) {
        (Some(images), None, false) => {
            let size = images.first().map_or(0, Vec::len);
            MatrixRep::new(alg, size, images.into_iter().map(from_rat_matrix).collect())
        }
        (None, Some(points), false) => {
            let idx = points
                .iter()
                .map(|p| alg.labels().iter().position(|l| l == p).ok_or_else(|| Error::UnknownLabel(p.clone())))
                .collect::<Result<Vec<_>>>()?;
            MatrixRep::diagonal(alg, &idx)
        }
        (None, None, true) => Ok(MatrixRep::regular(alg)),
        _ => Err(Error::Parse(format!(
            "{}: a representation has exactly one of `images`, `diagonal`, `regular`",
            doc.origin
        ))),
    }
}

pub fn rep_from_document(doc: &Document) -> Result<MatrixRep> {
    rep_from_value(doc, &doc.value)
}

/// `{ "plus": rep, "minus": rep }`.
pub fn super_rep_from_document(doc: &Document) -> Result<SuperRep> {
    let plus = rep_from_value(doc, doc.get("plus")?)?;
    let minus = rep_from_value(doc, doc.get("minus")?)?;
    SuperRep::new(plus, minus)
}

pub fn rep_json(rep: &MatrixRep) -> Value {
    json!({
        "algebra": algebra_json(rep.source()),
        "images": rep.images().iter().map(|m| to_rat_matrix(m)).collect::<Vec<_>>(),
    })
}

#[derive(Serialize, Deserialize)]
struct SpaceFile {
    points: Vec<String>,
}

pub fn space_from_document(doc: &Document) -> Result<FiniteSpace> {
    let file: SpaceFile = doc.field(&doc.value)?;
    FiniteSpace::new(file.points)
}

pub fn space_json(space: &FiniteSpace) -> Value {
    json!({ "points": space.points() })
}

#[derive(Serialize, Deserialize)]
struct ClassFile {
    pos: Vec<String>,
    neg: Vec<String>,
    p: usize,
    q: usize,
}

pub fn class_from_value(value: &Value, space: &FiniteSpace) -> Result<PQClass> {
    let file: ClassFile = serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("class: {e}")))?;
    let idx = |v: &[String]| v.iter().map(|s| space.index(s)).collect::<Result<Vec<_>>>();
    PQClass::new(idx(&file.pos)?, idx(&file.neg)?, file.p, file.q)
}

pub fn class_json(cls: &PQClass, space: &FiniteSpace) -> Value {
    let names = |v: &[usize]| v.iter().map(|&i| space.points()[i].clone()).collect::<Vec<_>>();
    json!({ "pos": names(cls.pos()), "neg": names(cls.neg()), "p": cls.p(), "q": cls.q() })
}

#[derive(Serialize, Deserialize)]
struct SymHomFile {
    base: Value,
    n: usize,
    target: Value,
    basis_labels: Vec<String>,
    matrix: Vec<Vec<Rat>>,
}

pub fn sym_hom_json(f: &SymHom) -> Value {
    json!({
        "base": algebra_json(f.source().base()),
        "n": f.n(),
        "target": algebra_json(f.target()),
        "basis_labels": f.source().induced().labels(),
        "matrix": to_rat_matrix(f.matrix()),
    })
}

pub fn sym_hom_from_document(doc: &Document, bound: usize) -> Result<SymHom> {
    let file: SymHomFile = doc.field(&doc.value)?;
    let base = resolve_algebra(&file.base, &doc.dir)?;
    let target = Arc::new(resolve_algebra(&file.target, &doc.dir)?);
    let source = Arc::new(symmetric_power(&base, file.n, bound)?);
    if source.induced().labels() != file.basis_labels.as_slice() {
        return Err(Error::Parse(format!(
            "{}: basis labels do not match the orbit-sum basis {:?}",
            doc.origin,
            source.induced().labels()
        )));
    }
    Ok(SymHom::new(source, target, from_rat_matrix(file.matrix))?.verified())
}

pub fn subalgebra_json(s: &SubalgebraSpec) -> Value {
    let base = s.base();
    let kind = match s.kind() {
        PowerKind::Symmetric { n } => json!({ "symmetric": { "n": n } }),
        PowerKind::Super { p, q } => json!({ "super": { "p": p, "q": q } }),
    };
    let basis: Vec<BTreeMap<String, Rat>> = s
        .basis_tensors()
        .iter()
        .map(|t| {
            t.terms()
                .iter()
                .map(|(tuple, c)| {
                    let key = tuple.iter().map(|&i| base.labels()[i].as_str()).collect::<Vec<_>>().join("⊗");
                    (key, Rat(c.clone()))
                })
                .collect()
        })
        .collect();
    json!({
        "kind": kind,
        "ambient": algebra_json(base),
        "dim": s.dim(),
        "basis": basis,
        "induced": algebra_json(s.induced()),
    })
}

pub fn policy_json(policy: &SamplingPolicy, k_max: Option<isize>) -> Value {
    json!({
        "basis_elements": true,
        "pairwise_sums": true,
        "random_samples": policy.samples,
        "seed": policy.seed,
        "k_max": k_max,
    })
}

pub fn witness_json(w: &Witness, domain: &AlgebraSpec) -> Value {
    match w {
        Witness::UnitImage { expected, actual } => {
            json!({ "kind": "unit_image", "expected": Rat(expected.clone()), "actual": element_json(actual) })
        }
        Witness::UnitNotNatural { actual } => json!({ "kind": "unit_not_integral", "actual": element_json(actual) }),
        Witness::DegreeAboveBound { n } => json!({ "kind": "degree_above_bound", "n": n }),
        Witness::Phi { tuple, value } => json!({
            "kind": "phi",
            "k": tuple.len(),
            "tuple": tuple.iter().map(|&i| domain.labels()[i].clone()).collect::<Vec<_>>(),
            "value": element_json(value),
        }),
        Witness::Hankel { element, k, value } => json!({
            "kind": "hankel",
            "k": k,
            "element": element_json(element),
            "value": element_json(value),
        }),
    }
}

pub fn verdict_name(v: &Verdict) -> Value {
    match v {
        Verdict::Polynomial(n) => json!({ "polynomial": { "n": n } }),
        Verdict::RationalPQ(p, q) => json!({ "rational": { "p": p, "q": q } }),
        Verdict::Undetermined(bound) => json!({ "undetermined": { "bound": bound } }),
    }
}

pub fn hom_class_json(c: &HomClass, domain: &AlgebraSpec, policy: Option<Value>) -> Value {
    json!({
        "verdict": verdict_name(&c.verdict),
        "witness": c.witness.as_ref().map(|w| witness_json(w, domain)),
        "policy": policy,
    })
}

pub fn outcome_json(o: &Outcome, domain: &AlgebraSpec, policy: Option<Value>) -> Value {
    json!({
        "verdict": if o.is_pass() { "pass" } else { "fail" },
        "witness": o.witness().map(|w| witness_json(w, domain)),
        "policy": policy,
    })
}

pub fn hom_violation_json(v: &HomViolation) -> Value {
    match v {
        HomViolation::Unit { actual } => json!({ "kind": "unit", "actual": element_json(actual) }),
        HomViolation::Product { i, j, image_of_product, product_of_images } => json!({
            "kind": "product",
            "i": i,
            "j": j,
            "image_of_product": element_json(image_of_product),
            "product_of_images": element_json(product_of_images),
        }),
    }
}

/// Guesses what a document describes from its keys.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Algebra,
    Map,
    Rep,
    SuperRep,
    Space,
    Class,
    SymHom,
}

pub fn document_kind(doc: &Document) -> Result<DocumentKind> {
    let has = |k: &str| doc.value.get(k).is_some();
    Ok(if has("mul") {
        DocumentKind::Algebra
    } else if has("basis_labels") {
        DocumentKind::SymHom
    } else if has("domain") {
        DocumentKind::Map
    } else if has("plus") {
        DocumentKind::SuperRep
    } else if has("algebra") {
        DocumentKind::Rep
    } else if has("points") {
        DocumentKind::Space
    } else if has("pos") {
        DocumentKind::Class
    } else {
        return Err(Error::Parse(format!("{}: unrecognized document", doc.origin)));
    })
}
