use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use nhom::algebra::{super_power, symmetric_power, validate_algebra, AlgebraSpec, Element};
use nhom::charfn::{newton_psi, LinMap};
use nhom::classify::{check_n_hom, check_pq_hom, classify, Outcome, Verdict};
use nhom::correspondence::{nhom_from_sym, roundtrip_nhom, roundtrip_sym, sym_from_nhom, RoundtripReport, Verification};
use nhom::io::{self, Document, DocumentKind};
use nhom::rational::{self, Rat};
use nhom::reps::{ber_pair, verify_ber_identity, verify_det_identity};
use nhom::symspace::{canonicalize_labels, check_image_equations, converse_probe, enumerate_classes, eval_functional, FiniteSpace, PQClass};
use nhom::{Error, Result};

use crate::report::Report;
use crate::GlobalOpts;

fn write_out(path: Option<&Path>, value: &Value) -> Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).expect("serializable");
        std::fs::write(p, text + "\n").map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn pq_k_max(opts: &GlobalOpts, p: usize, q: usize) -> isize {
    opts.k_max.unwrap_or((p + q + 4) as isize)
}

fn pq_policy_json(opts: &GlobalOpts, k_max: isize) -> Value {
    io::policy_json(&opts.policy(), Some(k_max))
}

fn validate_one(path: &Path) -> Result<(DocumentKind, Vec<String>)> {
    let doc = Document::read(path)?;
    let kind = io::document_kind(&doc)?;
    let violations = match kind {
        DocumentKind::Algebra => match io::resolve_algebra(&doc.value, &doc.dir) {
            Ok(spec) => validate_algebra(&spec).iter().map(ToString::to_string).collect(),
            Err(e) => vec![e.to_string()],
        },
        DocumentKind::Map => io::map_from_document(&doc).err().map(|e| e.to_string()).into_iter().collect(),
        DocumentKind::Rep => io::rep_from_document(&doc).err().map(|e| e.to_string()).into_iter().collect(),
        DocumentKind::SuperRep => io::super_rep_from_document(&doc).err().map(|e| e.to_string()).into_iter().collect(),
        DocumentKind::Space => io::space_from_document(&doc).err().map(|e| e.to_string()).into_iter().collect(),
        DocumentKind::Class => {
            let labels: BTreeSet<String> = ["pos", "neg"]
                .iter()
                .filter_map(|k| doc.value.get(*k).and_then(Value::as_array))
                .flatten()
                .filter_map(|v| v.as_str().map(str::to_string))
                .collect();
            match FiniteSpace::new(labels.into_iter().collect()) {
                Ok(space) => io::class_from_value(&doc.value, &space).err().map(|e| e.to_string()).into_iter().collect(),
                // An empty class is always well formed as far as labels go.
                Err(_) => {
                    let space = FiniteSpace::new(vec!["·".into()]).expect("one point");
                    io::class_from_value(&doc.value, &space).err().map(|e| e.to_string()).into_iter().collect()
                }
            }
        }
        DocumentKind::SymHom => match io::sym_hom_from_document(&doc, usize::MAX) {
            Ok(f) => match f.verification() {
                Verification::Failed(v) => vec![format!("not a homomorphism: {v}")],
                _ => Vec::new(),
            },
            Err(e) => vec![e.to_string()],
        },
    };
    Ok((kind, violations))
}

pub fn validate(_opts: &GlobalOpts, files: &[std::path::PathBuf]) -> Result<Report> {
    let mut entries = Vec::new();
    let mut lines = Vec::new();
    let mut failed = false;
    for f in files {
        let (kind, violations) = validate_one(f)?;
        failed |= !violations.is_empty();
        lines.push(format!(
            "{}: {:?} {}",
            f.display(),
            kind,
            if violations.is_empty() { "ok".to_string() } else { format!("INVALID ({})", violations.len()) }
        ));
        lines.extend(violations.iter().map(|v| format!("  {v}")));
        entries.push(json!({
            "file": f.display().to_string(),
            "kind": format!("{kind:?}").to_lowercase(),
            "valid": violations.is_empty(),
            "violations": violations,
        }));
    }
    let mut r = Report::new(json!({ "files": entries }));
    lines.iter().for_each(|l| r.line(l));
    r.failed_if(failed);
    Ok(r)
}

fn unit_multiple(f: &LinMap) -> Option<nhom::Q> {
    f.codomain().as_scalar(&f.unit_image())
}

pub fn analyze(opts: &GlobalOpts, path: &Path) -> Result<Report> {
    let f = io::load_map(path)?;
    let a = f.domain();
    let unit = f.unit_image();
    let chi = unit_multiple(&f);
    let mut psis = serde_json::Map::new();
    let mut text_psi = Vec::new();
    for (i, label) in a.labels().iter().enumerate() {
        let t = newton_psi(&f, &a.basis(i), opts.order)?;
        psis.insert(label.clone(), Value::Array(t.values.iter().map(io::element_json).collect()));
        let row: Vec<String> = t.values.iter().map(ToString::to_string).collect();
        text_psi.push(format!("  ψ(e_{label}) = {}", row.join(" ")));
    }
    let class = classify(&f, opts.max_n, opts.max_pq, opts.k_max, &opts.policy());
    let sampled = matches!(class.verdict, Verdict::RationalPQ(..));
    let policy = sampled.then(|| io::policy_json(&opts.policy(), opts.k_max));
    let mut r = Report::new(json!({
        "unit_image": io::element_json(&unit),
        "chi": chi.as_ref().map(|c| Rat(c.clone())),
        "psi": psis,
        "order": opts.order,
        "classification": io::hom_class_json(&class, a, policy),
    }));
    r.line(format!("f(1) = {unit}"));
    if let Some(c) = &chi {
        r.line(format!("χ = {}", rational::format(c)));
    }
    r.line(format!("ψ_0..ψ_{} on the basis:", opts.order));
    text_psi.iter().for_each(|l| r.line(l));
    let suffix = if sampled { " (sampled)" } else { "" };
    r.line(format!("verdict: {}{suffix}", class.verdict));
    if let Some(w) = &class.witness {
        r.line(format!("witness: {w}"));
    }
    Ok(r)
}

fn outcome_report(o: &Outcome, domain: &AlgebraSpec, policy: Option<Value>, label: &str) -> Report {
    let sampled = policy.is_some();
    let mut r = Report::new(io::outcome_json(o, domain, policy));
    match o {
        Outcome::Pass => r.line(format!("{label}: pass{}", if sampled { " (sampled)" } else { "" })),
        Outcome::Fail(w) => {
            r.line(format!("{label}: fail"));
            r.line(format!("witness: {w}"));
            r.fail();
        }
    }
    r
}

pub fn check_nhom(_opts: &GlobalOpts, path: &Path, n: usize) -> Result<Report> {
    let f = io::load_map(path)?;
    Ok(outcome_report(&check_n_hom(&f, n), f.domain(), None, &format!("{n}-homomorphism")))
}

pub fn check_pqhom(opts: &GlobalOpts, path: &Path, p: usize, q: usize) -> Result<Report> {
    let f = io::load_map(path)?;
    let k = pq_k_max(opts, p, q);
    let o = check_pq_hom(&f, p, q, k, &opts.policy());
    Ok(outcome_report(&o, f.domain(), Some(pq_policy_json(opts, k)), &format!("{p}|{q}-homomorphism")))
}

pub fn sympow(
    opts: &GlobalOpts,
    algebra: &str,
    n: Option<usize>,
    pq: Option<(usize, usize)>,
    out: Option<&Path>,
) -> Result<Report> {
    let spec = io::resolve_algebra(&Value::String(algebra.to_string()), Path::new("."))?;
    let (s, name) = match (n, pq) {
        (Some(n), None) => (symmetric_power(&spec, n, opts.size_bound)?, format!("S^{n}")),
        (None, Some((p, q))) => (super_power(&spec, p, q, opts.size_bound)?, format!("S^{{{p}|{q}}}")),
        _ => return Err(Error::Invalid("give either --n or both --p and --q".into())),
    };
    let value = io::subalgebra_json(&s);
    write_out(out, &value)?;
    let mut r = Report::new(value);
    r.line(format!("{name} A: dimension {} inside a tensor power of dimension {}", s.dim(), s.ambient_dim()));
    for l in s.induced().labels() {
        r.line(format!("  {l}"));
    }
    if let Some(p) = out {
        r.line(format!("written to {}", p.display()));
    }
    Ok(r)
}

pub fn to_sym(opts: &GlobalOpts, path: &Path, n: usize, out: Option<&Path>) -> Result<Report> {
    let f = io::load_map(path)?;
    let big = sym_from_nhom(&f, n, opts.size_bound)?;
    let value = io::sym_hom_json(&big);
    write_out(out, &value)?;
    let mut r = Report::new(value);
    r.line(format!("F_f on S^{n} A ({} basis vectors):", big.source().dim()));
    for (j, l) in big.source().induced().labels().iter().enumerate() {
        let col: Vec<nhom::Q> = big.matrix().iter().map(|row| row[j].clone()).collect();
        r.line(format!("  F({l}) = {}", Element::new(col)));
    }
    match big.verification() {
        Verification::Failed(v) => {
            r.line(format!("multiplicativity: fail ({v})"));
            r.fail();
        }
        _ => r.line("multiplicativity: pass"),
    }
    Ok(r)
}

pub fn from_sym(opts: &GlobalOpts, path: &Path, out: Option<&Path>) -> Result<Report> {
    let doc = Document::read(path)?;
    let big = io::sym_hom_from_document(&doc, opts.size_bound)?;
    let f = nhom_from_sym(&big);
    let value = io::map_json(&f);
    write_out(out, &value)?;
    let mut r = Report::new(json!({
        "map": value,
        "source_verification": match big.verification() {
            Verification::Failed(v) => io::hom_violation_json(v),
            _ => Value::Null,
        },
    }));
    r.line(format!("f_F(e_i) for the {} basis elements of A:", f.domain().dim()));
    for (i, l) in f.domain().labels().iter().enumerate() {
        r.line(format!("  f({l}) = {}", f.apply(&f.domain().basis(i))?));
    }
    if let Verification::Failed(v) = big.verification() {
        r.line(format!("warning: F is not a homomorphism ({v})"));
        r.fail();
    }
    Ok(r)
}

fn roundtrip_report(rep: &RoundtripReport, what: &str) -> Report {
    let diffs: Vec<Value> = rep
        .discrepancies
        .iter()
        .map(|(i, j, a, b)| json!({ "row": i, "col": j, "original": Rat(a.clone()), "recovered": Rat(b.clone()) }))
        .collect();
    let mut r = Report::new(json!({ "roundtrip": what, "exact": rep.is_exact(), "discrepancies": diffs }));
    if rep.is_exact() {
        r.line(format!("{what}: exact match"));
    } else {
        r.line(format!("{what}: {} differing entries", rep.discrepancies.len()));
        for (i, j, a, b) in &rep.discrepancies {
            r.line(format!("  [{i}][{j}]: {} vs {}", rational::format(a), rational::format(b)));
        }
        r.fail();
    }
    r
}

pub fn roundtrip(opts: &GlobalOpts, map: Option<&Path>, n: Option<usize>, sym: Option<&Path>) -> Result<Report> {
    match (map, n, sym) {
        (Some(m), Some(n), None) => {
            let f = io::load_map(m)?;
            Ok(roundtrip_report(&roundtrip_nhom(&f, n, opts.size_bound)?, "f -> F_f -> f"))
        }
        (None, None, Some(s)) => {
            let big = io::sym_hom_from_document(&Document::read(s)?, opts.size_bound)?;
            Ok(roundtrip_report(&roundtrip_sym(&big, opts.size_bound)?, "F -> f_F -> F"))
        }
        _ => Err(Error::Invalid("give a map with --n, or --sym".into())),
    }
}

fn load_space(path: &Path) -> Result<FiniteSpace> {
    io::space_from_document(&Document::read(path)?)
}

pub fn space_enumerate(opts: &GlobalOpts, path: &Path, p: usize, q: usize) -> Result<Report> {
    let space = load_space(path)?;
    let classes = enumerate_classes(&space, p, q, opts.size_bound)?;
    let mut r = Report::new(json!({
        "p": p,
        "q": q,
        "count": classes.len(),
        "classes": classes.iter().map(|c| io::class_json(c, &space)).collect::<Vec<_>>(),
    }));
    r.line(format!("{} classes in Sym^{{{p}|{q}}} X", classes.len()));
    for c in &classes {
        r.line(format!("  {}", c.display(&space)));
    }
    Ok(r)
}

pub fn space_canon(_opts: &GlobalOpts, path: &Path, p: usize, q: usize, tuple: &str) -> Result<Report> {
    let space = load_space(path)?;
    let labels: Vec<&str> = tuple.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let cls = canonicalize_labels(&space, &labels, p, q)?;
    let mut r = Report::new(io::class_json(&cls, &space));
    r.line(cls.display(&space).to_string());
    Ok(r)
}

pub fn space_check(
    opts: &GlobalOpts,
    path: &Path,
    p: usize,
    q: usize,
    class: Option<&Path>,
    functional: Option<&Path>,
) -> Result<Report> {
    let space = load_space(path)?;
    let alg = Arc::new(space.algebra());
    let k = pq_k_max(opts, p, q);
    let items: Vec<(String, LinMap)> = match (class, functional) {
        (Some(c), None) => {
            let cls: PQClass = io::class_from_value(&Document::read(c)?.value, &space)?;
            let name = cls.display(&space).to_string();
            vec![(name, eval_functional(&cls, alg.clone())?)]
        }
        (None, Some(m)) => {
            let f = io::load_map(m)?;
            if f.domain().as_ref() != alg.as_ref() {
                return Err(Error::AlgebraMismatch("the functional must be defined on C(X)".into()));
            }
            vec![(m.display().to_string(), f)]
        }
        _ => enumerate_classes(&space, p, q, opts.size_bound)?
            .iter()
            .map(|c| Ok((c.display(&space).to_string(), eval_functional(c, alg.clone())?)))
            .collect::<Result<_>>()?,
    };
    let mut results = Vec::new();
    let mut lines = Vec::new();
    let mut failed = false;
    for (name, f) in &items {
        let o = check_image_equations(f, p, q, k, &opts.policy())?;
        failed |= !o.is_pass();
        lines.push(match &o {
            Outcome::Pass => format!("  {name}: pass (sampled)"),
            Outcome::Fail(w) => format!("  {name}: fail, {w}"),
        });
        results.push(json!({ "item": name, "result": io::outcome_json(&o, &alg, None) }));
    }
    let mut r = Report::new(json!({ "p": p, "q": q, "policy": pq_policy_json(opts, k), "results": results }));
    r.line(format!("image equations of type {p}|{q}, k ≤ {k}:"));
    lines.iter().for_each(|l| r.line(l));
    r.failed_if(failed);
    Ok(r)
}

pub fn space_probe(opts: &GlobalOpts, path: &Path, p: usize, q: usize, grid: &str) -> Result<Report> {
    let space = load_space(path)?;
    let grid = grid.split(',').map(rational::parse).collect::<Result<Vec<_>>>()?;
    let k = pq_k_max(opts, p, q);
    let rep = converse_probe(&space, p, q, k, &grid, &opts.policy(), opts.size_bound)?;
    let mut r = Report::new(json!({
        "experimental": true,
        "p": p,
        "q": q,
        "grid": grid.iter().cloned().map(Rat).collect::<Vec<_>>(),
        "policy": pq_policy_json(opts, k),
        "tested": rep.tested,
        "passing": rep.passing,
        "passing_classes": rep.passing_classes,
        "non_class_solutions": rep.non_class_solutions.iter().map(|v| rational::to_rats(v)).collect::<Vec<_>>(),
    }));
    r.line("experimental converse probe (findings only, nothing is asserted)");
    r.line(format!(
        "tested {} vectors with Σ = {}: {} pass, {} of them class functionals",
        rep.tested,
        p as i64 - q as i64,
        rep.passing,
        rep.passing_classes
    ));
    for v in &rep.non_class_solutions {
        r.line(format!("  non-class solution {}", Element::new(v.clone())));
    }
    Ok(r)
}

pub fn rep_verify_det(opts: &GlobalOpts, path: &Path) -> Result<Report> {
    let rep = io::rep_from_document(&Document::read(path)?)?;
    let order = opts.order.max(rep.size());
    let mut failures = Vec::new();
    let elements = opts.policy().elements(rep.source());
    for a in &elements {
        if !verify_det_identity(&rep, a, order)?.holds() {
            failures.push(io::element_json(a));
        }
    }
    let mut r = Report::new(json!({
        "identity": "R(tr ρ, a, z) = det(1 + ρ(a) z)",
        "order": order,
        "checked": elements.len(),
        "failures": failures,
        "policy": io::policy_json(&opts.policy(), None),
    }));
    r.line(format!(
        "det identity to order {order} on {} elements: {}",
        elements.len(),
        if failures.is_empty() { "pass (sampled)".to_string() } else { format!("{} failures", failures.len()) }
    ));
    r.failed_if(!failures.is_empty());
    Ok(r)
}

pub fn rep_verify_ber(opts: &GlobalOpts, path: &Path) -> Result<Report> {
    let rep = io::super_rep_from_document(&Document::read(path)?)?;
    let (p, q) = rep.dims();
    let order = opts.order.max(p + q + 4);
    let elements = opts.policy().elements(rep.source());
    let mut series_failures = Vec::new();
    let mut ber_failures = Vec::new();
    let mut ber_checked = 0;
    for a in &elements {
        if !verify_ber_identity(&rep, a, order)?.holds() {
            series_failures.push(io::element_json(a));
        }
        match ber_pair(&rep, a, order) {
            Ok((x, y)) => {
                ber_checked += 1;
                if x != y {
                    ber_failures.push(json!({ "element": io::element_json(a), "from_series": Rat(x), "det_ratio": Rat(y) }));
                }
            }
            Err(Error::DivisionByZero(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let mut r = Report::new(json!({
        "identity": "R(str ρ, a, z) det(1 + ρ₋(a) z) = det(1 + ρ₊(a) z)",
        "p": p,
        "q": q,
        "order": order,
        "checked": elements.len(),
        "series_failures": series_failures,
        "ber_checked": ber_checked,
        "ber_failures": ber_failures,
        "policy": io::policy_json(&opts.policy(), None),
    }));
    r.line(format!(
        "Berezinian identity ({p}|{q}) to order {order} on {} elements: {}",
        elements.len(),
        if series_failures.is_empty() { "pass (sampled)".to_string() } else { format!("{} failures", series_failures.len()) }
    ));
    r.line(format!(
        "ber = det ρ₊ / det ρ₋ on {ber_checked} elements with det ρ₋ ≠ 0: {}",
        if ber_failures.is_empty() { "pass".to_string() } else { format!("{} failures", ber_failures.len()) }
    ));
    r.failed_if(!series_failures.is_empty() || !ber_failures.is_empty());
    Ok(r)
}
