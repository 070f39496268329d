//! Batch front door: a job names an instance, a command and its inputs;
//! [`run`] builds the instance, executes the command and returns a report.
//!
//! Inputs may be given inline in the job file or as paths (relative to the
//! job file). Every report carries the SHA-256 digest of the job with all
//! inputs inlined, so equal inputs give byte-identical reports.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cocycle::{
    check_coproduct_multiplicative, check_sigma_tau, OmegaSpec, SigmaFamily, SigmaSpec, TauFamily, TauSpec,
    ThreeCocycle,
};
use crate::error::{Error, Result};
use crate::framework::{
    check_h1, check_h2, check_h3, check_h4, check_h4prime, compare_products, invariant_basis,
    structure_constants, ComponentSystem, ProductKind, SystemSpec,
};
use crate::group::{ActionSpec, FiniteGroup, GroupAction, GroupSpec};
use crate::hopf::{
    build_extension, build_fusion_system, check_endo_lemma, fusion_product, fusion_table, oracle_tensor,
    AbelianExtension, HCharacterTable,
};
use crate::instances::burnside::{build_crossed_burnside, check_green_axioms, crossed_burnside_table, GreenFunctorMaps};
use crate::instances::group_algebra::{build_group_algebra, center_structure_constants};
use crate::scalar::{Scalar, ScalarKind};
use crate::twisted::{simple_modules, TwistedGroupAlgebra};
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Instance {
    GroupAlgebra,
    CrossedBurnside,
    Fusion,
    RawComponentSystem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Verify,
    StructureConstants,
    Simples,
    Fuse,
    Center,
    CrossedBurnside,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// An input given inline or as a path to a JSON file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(PathBuf),
    Inline(T),
}

impl<T: DeserializeOwned> Source<T> {
    fn resolve(self, base: &Path, field: &str) -> Result<Self> {
        match self {
            Source::Inline(v) => Ok(Source::Inline(v)),
            Source::Path(p) => Ok(Source::Inline(load_json(&base.join(p), field)?)),
        }
    }

    fn get(&self, field: &str) -> Result<&T> {
        match self {
            Source::Inline(v) => Ok(v),
            Source::Path(p) => Err(Error::input(field, format!("unresolved path {}", p.display()))),
        }
    }
}

fn load_json<T: DeserializeOwned>(path: &Path, field: &str) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::input(field, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::input(field, format!("{}: {e}", path.display())))
}

/// One batch job.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub instance: Instance,
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Source<GroupSpec>>,
    /// The acting group L; omitted means L = G acting by conjugation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actor: Option<Source<GroupSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Source<ActionSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Source<SigmaSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Source<TauSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Source<OmegaSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<Source<SystemSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
    /// Two simple labels `orbit:simple` for a single fusion product.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<[String; 2]>,
    #[serde(default)]
    pub all: bool,
    #[serde(default)]
    pub oracle: bool,
    #[serde(default)]
    pub format: Format,
}

impl JobSpec {
    pub fn new(instance: Instance, command: CommandKind) -> Self {
        JobSpec {
            instance,
            command,
            group: None,
            actor: None,
            action: None,
            sigma: None,
            tau: None,
            omega: None,
            system: None,
            coeff: None,
            pair: None,
            all: false,
            oracle: false,
            format: Format::Json,
        }
    }

    /// Reads a job file and inlines every referenced input.
    pub fn load(path: &Path) -> Result<Self> {
        let job: JobSpec = load_json(path, "input")?;
        job.resolve(path.parent().unwrap_or(Path::new(".")))
    }

    pub fn resolve(self, base: &Path) -> Result<Self> {
        fn opt<T: DeserializeOwned>(s: Option<Source<T>>, base: &Path, field: &str) -> Result<Option<Source<T>>> {
            s.map(|s| s.resolve(base, field)).transpose()
        }
        Ok(JobSpec {
            group: opt(self.group, base, "group")?,
            actor: opt(self.actor, base, "actor")?,
            action: opt(self.action, base, "action")?,
            sigma: opt(self.sigma, base, "sigma")?,
            tau: opt(self.tau, base, "tau")?,
            omega: opt(self.omega, base, "omega")?,
            system: opt(self.system, base, "system")?,
            ..self
        })
    }

    /// SHA-256 of the job with all inputs inlined, as hex.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("job serializes");
        Sha256::digest(bytes).iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    fn group(&self) -> Result<Arc<FiniteGroup>> {
        let spec = self.group.as_ref().ok_or_else(|| Error::input("group", "missing"))?;
        Ok(Arc::new(spec.get("group")?.build()?))
    }

    fn action(&self) -> Result<GroupAction> {
        let group = self.group()?;
        match (&self.actor, &self.action) {
            (None, None) => Ok(GroupAction::conjugation(group)),
            (Some(actor), None) => Ok(GroupAction::trivial(Arc::new(actor.get("actor")?.build()?), group)),
            (actor, Some(action)) => {
                let actor = match actor {
                    Some(a) => Arc::new(a.get("actor")?.build()?),
                    None => group.clone(),
                };
                GroupAction::new(actor, group, action.get("action")?.act.clone())
            }
        }
    }

    fn kind(&self) -> Result<ScalarKind> {
        self.coeff.as_deref().map_or(Ok(ScalarKind::Rational), ScalarKind::parse)
    }
}

/// A finished job: exit status and the rendered report.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// 0 success, 1 verification failure, 2 input error.
    pub status: i32,
    pub report: String,
}

struct Report {
    ok: bool,
    body: Value,
    /// Flat table for CSV and text output.
    rows: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
}

pub fn run(job: &JobSpec) -> RunOutcome {
    let digest = job.digest();
    let header = json!({
        "instance": job.instance,
        "command": job.command,
        "digest": digest,
    });
    let (status, body, rows) = match job.clone().resolve(Path::new(".")).and_then(|j| execute(&j)) {
        Ok(r) => (if r.ok { 0 } else { 1 }, r.body, r.rows),
        Err(e) => {
            let status = match e {
                Error::Input { .. } | Error::KindMismatch(_) => 2,
                _ => 1,
            };
            (status, error_json(&e), None)
        }
    };
    let mut doc = header;
    doc["status"] = json!(if status == 0 { "pass" } else { "fail" });
    doc["result"] = body;
    let report = match (job.format, rows) {
        (Format::Json, _) => serde_json::to_string_pretty(&doc).expect("report serializes") + "\n",
        (Format::Csv, Some((head, rows))) => {
            let mut s = head.join(",") + "\n";
            for r in rows {
                s += &(r.iter().map(|c| csv_cell(c)).collect::<Vec<_>>().join(",") + "\n");
            }
            s
        }
        (Format::Csv, None) if status != 0 => format!("error,{}\n", csv_cell(&doc["result"].to_string())),
        (Format::Csv, None) => {
            let e = Error::input("format", "csv is only available for flat structure-constant tables");
            return RunOutcome {
                status: 2,
                report: format!("error,{}\n", csv_cell(&e.to_string())),
            };
        }
        (Format::Text, rows) => render_text(&doc, rows),
    };
    RunOutcome { status, report }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn render_text(doc: &Value, rows: Option<(Vec<&'static str>, Vec<Vec<String>>)>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {} [{}]", doc["instance"].as_str().unwrap_or(""), doc["command"].as_str().unwrap_or(""), doc["status"].as_str().unwrap_or(""));
    let _ = writeln!(s, "digest {}", doc["digest"].as_str().unwrap_or(""));
    if let Some(checks) = doc["result"]["checks"].as_array() {
        for c in checks {
            let _ = write!(s, "{:<28} {}", c["name"].as_str().unwrap_or(""), c["status"].as_str().unwrap_or(""));
            if let Some(w) = c["witness"].as_str() {
                let _ = write!(s, "  ({w})");
            }
            s.push('\n');
        }
    }
    if let Some(e) = doc["result"].get("error") {
        let _ = writeln!(s, "error: {}", e["message"].as_str().unwrap_or(""));
    }
    if let Some((head, rows)) = rows.filter(|_| doc["result"]["checks"].is_null()) {
        let _ = writeln!(s, "{}", head.join("\t"));
        for r in rows {
            let _ = writeln!(s, "{}", r.join("\t"));
        }
    }
    s
}

fn error_json(e: &Error) -> Value {
    let (kind, field) = match e {
        Error::Input { field, .. } => ("input", Some(field.clone())),
        Error::KindMismatch(_) => ("kind-mismatch", None),
        Error::CheckFailed { check, .. } => ("check-failed", Some(check.clone())),
        _ => ("internal", None),
    };
    json!({ "error": { "kind": kind, "field": field, "message": e.to_string() } })
}

fn check_entry(name: &str, verdict: &Verdict) -> Value {
    json!({ "name": name, "status": if verdict.is_pass() { "pass" } else { "fail" }, "witness": verdict.witness() })
}

fn execute(job: &JobSpec) -> Result<Report> {
    use CommandKind as C;
    use Instance as I;
    match (job.instance, job.command) {
        (I::GroupAlgebra, C::Center) => center(job),
        (I::CrossedBurnside, C::CrossedBurnside) => crossed(job),
        (I::Fusion, C::Simples) => simples(job),
        (I::Fusion, C::Fuse) => fuse(job),
        (I::Fusion, C::Verify) => verify_fusion(job),
        (I::CrossedBurnside, C::Verify) => {
            let group = job.group()?;
            let sys = build_crossed_burnside(&group)?;
            let green = check_green_axioms(&GreenFunctorMaps::new(group)?);
            verify_system(&sys, vec![("green-axioms", green)])
        }
        (_, C::Verify) => verify_system(&system(job)?, vec![]),
        (_, C::StructureConstants) => constants(&system(job)?),
        (instance, command) => Err(Error::input(
            "command",
            format!(
                "{} does not support {}",
                json!(instance).as_str().unwrap_or(""),
                json!(command).as_str().unwrap_or("")
            ),
        )),
    }
}

fn system(job: &JobSpec) -> Result<ComponentSystem> {
    match job.instance {
        Instance::GroupAlgebra => build_group_algebra(&job.action()?, job.kind()?),
        Instance::CrossedBurnside => build_crossed_burnside(&job.group()?),
        Instance::Fusion => Ok(build_fusion_system(&extension(job)?)?.system().clone()),
        Instance::RawComponentSystem => {
            let spec = job.system.as_ref().ok_or_else(|| Error::input("system", "missing"))?;
            ComponentSystem::from_spec(spec.get("system")?)
        }
    }
}

fn verify_system(sys: &ComponentSystem, extra: Vec<(&str, Verdict)>) -> Result<Report> {
    let mut checks = vec![
        ("H1", check_h1(sys)),
        ("H2", check_h2(sys)),
        ("H3", check_h3(sys)),
        ("H4", check_h4(sys)),
        ("H4'", check_h4prime(sys)),
    ];
    // the orbit product needs one of H4, H4'
    let ok = checks[..3].iter().all(|c| c.1.is_pass())
        && (checks[3].1.is_pass() || checks[4].1.is_pass())
        && extra.iter().all(|c| c.1.is_pass());
    checks.extend(extra);
    let rows = checks
        .iter()
        .map(|(n, v)| vec![n.to_string(), if v.is_pass() { "pass" } else { "fail" }.into(), v.witness().unwrap_or("").into()])
        .collect();
    Ok(Report {
        ok,
        body: json!({ "checks": checks.iter().map(|(n, v)| check_entry(n, v)).collect::<Vec<_>>() }),
        rows: Some((vec!["check", "status", "witness"], rows)),
    })
}

fn table_rows(table: &[Vec<Vec<Scalar>>]) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    for (a, row) in table.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            for (c, s) in v.iter().enumerate().filter(|(_, s)| !s.is_zero()) {
                rows.push(vec![a.to_string(), b.to_string(), c.to_string(), s.to_string()]);
            }
        }
    }
    rows
}

fn table_json(table: &[Vec<Vec<Scalar>>]) -> Value {
    json!(table
        .iter()
        .map(|r| r.iter().map(|v| v.iter().map(Scalar::to_json).collect::<Vec<_>>()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn constants(sys: &ComponentSystem) -> Result<Report> {
    for (name, v) in [("H1", check_h1(sys)), ("H2", check_h2(sys)), ("H3", check_h3(sys))] {
        v.into_result(name)?;
    }
    let basis = invariant_basis(sys)?;
    let mut labels = Vec::new();
    for (i, o) in sys.orbits().iter().enumerate() {
        let count = basis.iter().filter(|b| !b.component(i).iter().all(Scalar::is_zero)).count();
        labels.extend((0..count).map(|j| format!("o{}:{j}", o.rep)));
    }
    let orbit = structure_constants(sys, ProductKind::Orbit)?;
    let mut body = json!({ "coeff": sys.kind().tag(), "basis": labels, "orbit": table_json(&orbit) });
    if check_h4(sys).is_pass() {
        body["full"] = table_json(&structure_constants(sys, ProductKind::Full)?);
        let mut indices = Vec::new();
        for a in &basis {
            for b in &basis {
                let cmp = compare_products(sys, a, b)?;
                if !cmp.holds {
                    return Err(Error::Internal("product comparison failed under H4".into()));
                }
                if indices.is_empty() {
                    indices = cmp.terms;
                }
            }
        }
        body["indices"] = json!(indices);
    }
    Ok(Report {
        ok: true,
        body,
        rows: Some((vec!["a", "b", "c", "coefficient"], table_rows(&orbit))),
    })
}

fn center(job: &JobSpec) -> Result<Report> {
    if job.actor.is_some() || job.action.is_some() {
        return Err(Error::input("action", "the center uses the conjugation action"));
    }
    let table = center_structure_constants(&job.group()?, job.kind()?)?;
    Ok(Report {
        ok: true,
        rows: Some((vec!["i", "j", "k", "coefficient"], table_rows(&table.constants))),
        body: serde_json::to_value(&table).expect("table serializes"),
    })
}

fn crossed(job: &JobSpec) -> Result<Report> {
    if job.kind()? != ScalarKind::Rational {
        return Err(Error::input("coeff", "crossed Burnside rings are computed over Q"));
    }
    let table = crossed_burnside_table(&job.group()?)?;
    let mut rows = Vec::new();
    for (a, row) in table.constants.iter().enumerate() {
        for (b, v) in row.iter().enumerate() {
            for (c, &n) in v.iter().enumerate().filter(|(_, &n)| n != 0) {
                rows.push(vec![a.to_string(), b.to_string(), c.to_string(), n.to_string()]);
            }
        }
    }
    Ok(Report {
        ok: true,
        rows: Some((vec!["a", "b", "c", "coefficient"], rows)),
        body: serde_json::to_value(&table).expect("table serializes"),
    })
}

fn sigma_tau(job: &JobSpec, action: &GroupAction) -> Result<(SigmaFamily, TauFamily)> {
    let sigma = match &job.sigma {
        Some(s) => SigmaFamily::from_spec(action.clone(), s.get("sigma")?)?,
        None => SigmaFamily::trivial(action.clone()),
    };
    let tau = match &job.tau {
        Some(t) => TauFamily::from_spec(action.clone(), t.get("tau")?)?,
        None => TauFamily::trivial(action.clone()),
    };
    Ok((sigma, tau))
}

fn omega(job: &JobSpec) -> Result<Option<ThreeCocycle>> {
    let Some(spec) = &job.omega else { return Ok(None) };
    if job.actor.is_some() || job.action.is_some() || job.sigma.is_some() || job.tau.is_some() {
        return Err(Error::input("omega", "omega excludes actor, action, sigma and tau"));
    }
    Ok(Some(ThreeCocycle::from_spec(job.group()?, spec.get("omega")?)?))
}

fn extension(job: &JobSpec) -> Result<AbelianExtension> {
    if let Some(w) = omega(job)? {
        return AbelianExtension::twisted_double(&w);
    }
    let (sigma, tau) = sigma_tau(job, &job.action()?)?;
    build_extension(sigma, tau)
}

/// Simples of k_{σ_g}L_g for each orbit representative g. This does not
/// need τ, so a single twisted group algebra is the case G = 1.
fn simples(job: &JobSpec) -> Result<Report> {
    let sigma = match omega(job)? {
        Some(w) => crate::cocycle::sigma_of_omega(&w)?,
        None => sigma_tau(job, &job.action()?)?.0,
    };
    sigma.check().into_result("sigma")?;
    let action = sigma.action().clone();
    let reps: Vec<usize> = action.orbits().iter().map(|o| o.rep).collect();
    let kind = match &job.coeff {
        Some(tag) => ScalarKind::parse(tag)?,
        None => {
            let mut n = sigma.modulus();
            for &g in &reps {
                let probe = TwistedGroupAlgebra::stabilizer_algebra(&sigma, g, ScalarKind::Cyclotomic(sigma.modulus()))?;
                n = n.lcm(&probe.working_order()?);
            }
            ScalarKind::Cyclotomic(n)
        }
    };
    let mut out = Vec::new();
    let mut rows = Vec::new();
    for &g in &reps {
        let table = simple_modules(&Arc::new(TwistedGroupAlgebra::stabilizer_algebra(&sigma, g, kind)?))?;
        for (s, d) in table.dims().into_iter().enumerate() {
            rows.push(vec![g.to_string(), s.to_string(), d.to_string()]);
        }
        let mut entry = table.to_json();
        entry["g"] = json!(g);
        out.push(entry);
    }
    Ok(Report {
        ok: true,
        body: json!({ "coeff": kind.tag(), "components": out }),
        rows: Some((vec!["g", "simple", "dim"], rows)),
    })
}

fn parse_label(ext: &AbelianExtension, text: &str) -> Result<usize> {
    let bad = || Error::input("pair", format!("expected `orbit:simple`, got `{text}`"));
    let (o, s) = text.split_once(':').ok_or_else(bad)?;
    let (o, s) = (o.trim().parse().map_err(|_| bad())?, s.trim().parse().map_err(|_| bad())?);
    ext.label_index(o, s).map_err(|_| Error::input("pair", format!("no simple `{text}`")))
}

fn product_json(labels: &[String], counts: &[u64]) -> Value {
    Value::Object(
        counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(c, &n)| (labels[c].clone(), json!(n)))
            .collect(),
    )
}

fn fuse(job: &JobSpec) -> Result<Report> {
    let ext = extension(job)?;
    let labels: Vec<String> = ext.simple_labels().iter().map(|l| l.to_string()).collect();
    let simple = |a: usize| {
        let l = &ext.simple_labels()[a];
        ext.table(ext.orbits()[l.orbit].rep).simples()[l.simple].clone()
    };
    let pairs: Vec<(usize, usize)> = match (&job.pair, job.all) {
        (Some(_), true) => return Err(Error::input("pair", "give either --pair or --all")),
        (Some([a, b]), false) => vec![(parse_label(&ext, a)?, parse_label(&ext, b)?)],
        (None, _) => (0..labels.len()).flat_map(|a| (0..labels.len()).map(move |b| (a, b))).collect(),
    };
    let products: Vec<Vec<u64>> = if job.pair.is_none() {
        let t = fusion_table(&ext)?;
        pairs.iter().map(|&(a, b)| t.constants[a][b].clone()).collect()
    } else {
        pairs
            .iter()
            .map(|&(a, b)| {
                let (la, lb) = (&ext.simple_labels()[a], &ext.simple_labels()[b]);
                fusion_product(&ext, la.orbit, &simple(a), lb.orbit, &simple(b))
            })
            .collect::<Result<_>>()?
    };
    let oracle = if job.oracle {
        let table = HCharacterTable::new(&ext)?;
        let simples = table.simples();
        Some(
            pairs
                .iter()
                .map(|&(a, b)| oracle_tensor(&ext, &table, &simples[a], &simples[b]))
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let mut ok = true;
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        let mut e = json!({ "left": labels[a], "right": labels[b], "product": product_json(&labels, &products[i]) });
        if let Some(o) = &oracle {
            let agrees = o[i] == products[i];
            ok &= agrees;
            e["oracle_agrees"] = json!(agrees);
            if !agrees {
                e["oracle"] = product_json(&labels, &o[i]);
            }
        }
        for (c, &n) in products[i].iter().enumerate().filter(|(_, &n)| n > 0) {
            rows.push(vec![labels[a].clone(), labels[b].clone(), labels[c].clone(), n.to_string()]);
        }
        entries.push(e);
    }
    let dims: Vec<Value> = ext.simple_labels().iter().map(|l| json!({ "label": l.to_string(), "dim": l.dim })).collect();
    Ok(Report {
        ok,
        body: json!({ "coeff": ext.kind().tag(), "simples": dims, "table": entries }),
        rows: Some((vec!["left", "right", "summand", "multiplicity"], rows)),
    })
}

fn verify_fusion(job: &JobSpec) -> Result<Report> {
    let mut extra: Vec<(&str, Verdict)> = Vec::new();
    let (sigma, tau) = match omega(job)? {
        Some(w) => {
            let v = w.check();
            let pass = v.is_pass();
            extra.push(("omega-cocycle", v));
            if !pass {
                return verify_failed(extra);
            }
            (crate::cocycle::sigma_of_omega(&w)?, crate::cocycle::tau_of_omega(&w)?)
        }
        None => sigma_tau(job, &job.action()?)?,
    };
    extra.push(("sigma-cocycle", sigma.check()));
    extra.push(("tau-normalized", tau.check_normalized()));
    extra.push(("sigma-tau", check_sigma_tau(&sigma, &tau)?));
    extra.push(("coproduct", check_coproduct_multiplicative(&sigma, &tau)?));
    if extra.iter().any(|c| !c.1.is_pass()) {
        return verify_failed(extra);
    }
    let ext = build_extension(sigma, tau)?;
    let endo = ext
        .action()
        .space()
        .elements()
        .map(|g| check_endo_lemma(&ext, g))
        .find(|v| !v.is_pass())
        .unwrap_or(Verdict::Pass);
    extra.push(("endomorphism-lemma", endo));
    let sys = build_fusion_system(&ext)?;
    verify_system(sys.system(), extra)
}

fn verify_failed(checks: Vec<(&str, Verdict)>) -> Result<Report> {
    Ok(Report {
        ok: false,
        body: json!({ "checks": checks.iter().map(|(n, v)| check_entry(n, v)).collect::<Vec<_>>() }),
        rows: None,
    })
}

#[derive(Debug, Parser)]
#[command(name = "classring", version, about = "Exact computations with rings graded by group orbits")]
pub struct Cli {
    #[command(subcommand)]
    sub: Option<Sub>,
    /// Job file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    instance: Option<Instance>,
    #[arg(long, global = true, value_enum)]
    command: Option<CommandKind>,
    /// Two simple labels `orbit:simple`.
    #[arg(long, global = true, num_args = 2, value_names = ["LEFT", "RIGHT"])]
    pair: Option<Vec<String>>,
    #[arg(long, global = true)]
    all: bool,
    /// Cross-check fusion products against tensor products of modules.
    #[arg(long, global = true)]
    oracle: bool,
    /// Coefficients: Q, Fp:<p> or Cyc:<m>.
    #[arg(long, global = true)]
    coeff: Option<String>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Class-sum structure constants of the center of a group algebra.
    Center {
        #[arg(long)]
        group: PathBuf,
    },
    /// Basis and structure constants of the crossed Burnside ring.
    CrossedBurnside {
        #[arg(long)]
        group: PathBuf,
    },
    /// Simple modules of a (twisted) group algebra.
    Simples {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        sigma: Option<PathBuf>,
    },
    /// Fusion rules of an abelian extension or twisted double.
    Fuse {
        /// JSON with `group` and optional `actor`, `action`, `sigma`, `tau`.
        #[arg(long)]
        extension: PathBuf,
        #[arg(long)]
        omega: Option<PathBuf>,
    },
}

/// Extension file for `fuse`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionSpec {
    group: Source<GroupSpec>,
    #[serde(default)]
    actor: Option<Source<GroupSpec>>,
    #[serde(default)]
    action: Option<Source<ActionSpec>>,
    #[serde(default)]
    sigma: Option<Source<SigmaSpec>>,
    #[serde(default)]
    tau: Option<Source<TauSpec>>,
}

impl Cli {
    /// Assembles the job described by the command line.
    pub fn job(&self) -> Result<JobSpec> {
        fn file<T>(p: &Path) -> Source<T> {
            Source::Path(p.to_path_buf())
        }
        let mut job = match &self.sub {
            Some(Sub::Center { group }) => {
                let mut j = JobSpec::new(Instance::GroupAlgebra, CommandKind::Center);
                j.group = Some(file(group));
                j
            }
            Some(Sub::CrossedBurnside { group }) => {
                let mut j = JobSpec::new(Instance::CrossedBurnside, CommandKind::CrossedBurnside);
                j.group = Some(file(group));
                j
            }
            Some(Sub::Simples { group, sigma }) => {
                // one twisted group algebra: L is the group, G is trivial
                let mut j = JobSpec::new(Instance::Fusion, CommandKind::Simples);
                j.group = Some(Source::Inline(GroupSpec::from_group(&FiniteGroup::trivial())));
                j.actor = Some(file(group));
                j.sigma = sigma.as_deref().map(file);
                j
            }
            Some(Sub::Fuse { extension, omega }) => {
                let spec: ExtensionSpec = load_json(extension, "extension")?;
                let base = extension.parent().unwrap_or(Path::new("."));
                let mut j = JobSpec::new(Instance::Fusion, CommandKind::Fuse);
                j.group = Some(spec.group.resolve(base, "group")?);
                j.actor = spec.actor.map(|s| s.resolve(base, "actor")).transpose()?;
                j.action = spec.action.map(|s| s.resolve(base, "action")).transpose()?;
                j.sigma = spec.sigma.map(|s| s.resolve(base, "sigma")).transpose()?;
                j.tau = spec.tau.map(|s| s.resolve(base, "tau")).transpose()?;
                j.omega = omega.as_deref().map(file);
                j
            }
            None => match &self.input {
                Some(path) => JobSpec::load(path)?,
                None => {
                    let instance = self.instance.ok_or_else(|| Error::input("instance", "give --input or --instance"))?;
                    let command = self.command.ok_or_else(|| Error::input("command", "missing"))?;
                    JobSpec::new(instance, command)
                }
            },
        };
        if let Some(i) = self.instance {
            job.instance = i;
        }
        if let Some(c) = self.command {
            job.command = c;
        }
        if let Some(p) = &self.pair {
            job.pair = Some([p[0].clone(), p[1].clone()]);
        }
        job.all |= self.all;
        job.oracle |= self.oracle;
        if self.coeff.is_some() {
            job.coeff = self.coeff.clone();
        }
        if let Some(f) = self.format {
            job.format = f;
        }
        job.resolve(Path::new("."))
    }
}

/// Parses the command line, runs the job and writes the report; returns
/// the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match cli.job() {
        Ok(job) => run(&job),
        Err(e) => RunOutcome {
            status: 2,
            report: serde_json::to_string_pretty(&json!({ "status": "fail", "result": error_json(&e) })).expect("serializes") + "\n",
        },
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.report) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{}", outcome.report),
    }
    outcome.status
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group_job(instance: Instance, command: CommandKind, g: &FiniteGroup) -> JobSpec {
        let mut j = JobSpec::new(instance, command);
        j.group = Some(Source::Inline(GroupSpec::from_group(g)));
        j
    }

    #[test]
    fn verify_s3_group_algebra() {
        let out = run(&group_job(Instance::GroupAlgebra, CommandKind::Verify, &FiniteGroup::symmetric(3)));
        assert_eq!(out.status, 0, "{}", out.report);
        let v: Value = serde_json::from_str(&out.report).unwrap();
        assert_eq!(v["result"]["checks"][3]["status"], "pass");
    }

    #[test]
    fn malformed_table_is_an_input_error() {
        let mut j = JobSpec::new(Instance::GroupAlgebra, CommandKind::Verify);
        j.group = Some(Source::Inline(GroupSpec::Table {
            order: 3,
            table: vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]],
        }));
        let out = run(&j);
        assert_eq!(out.status, 2);
        assert!(out.report.contains("\"kind\": \"input\""), "{}", out.report);
    }

    #[test]
    fn output_is_deterministic() {
        let j = group_job(Instance::CrossedBurnside, CommandKind::CrossedBurnside, &FiniteGroup::cyclic(2));
        let (a, b) = (run(&j), run(&j));
        assert_eq!(a.report, b.report);
        assert!(a.report.contains(&j.digest()));
    }

    #[test]
    fn unsupported_command() {
        let out = run(&group_job(Instance::CrossedBurnside, CommandKind::Fuse, &FiniteGroup::cyclic(2)));
        assert_eq!(out.status, 2);
    }

    #[test]
    fn csv_center() {
        let mut j = group_job(Instance::GroupAlgebra, CommandKind::Center, &FiniteGroup::symmetric(3));
        j.format = Format::Csv;
        let out = run(&j);
        assert_eq!(out.status, 0);
        assert!(out.report.starts_with("i,j,k,coefficient\n"));
        assert!(out.report.contains("1,1,0,3\n"));
    }

    #[test]
    fn fuse_pair_on_z2_double() {
        let mut j = group_job(Instance::Fusion, CommandKind::Fuse, &FiniteGroup::cyclic(2));
        j.pair = Some(["1:1".into(), "1:1".into()]);
        j.oracle = true;
        let out = run(&j);
        assert_eq!(out.status, 0, "{}", out.report);
        let v: Value = serde_json::from_str(&out.report).unwrap();
        assert_eq!(v["result"]["table"][0]["product"], json!({ "0:0": 1 }));
        assert_eq!(v["result"]["table"][0]["oracle_agrees"], true);
    }
}
