//! JSON and plain-text rendering of library results.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Number, Value};

use sigmagal::galois::{GroupReport, Problem, RelationCertificate, Witness};
use sigmagal::ratfield::{CoeffField, OperatorSpec, RatFunc};
use sigmagal::sigmalattice::{BoundedAnswer, ClosureReport, GroupKind, SigmaExponentVector, SigmaLatticeGroup};

fn big(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

#[derive(Serialize)]
pub struct Entry {
    /// 1-based.
    pub variable: usize,
    pub order: usize,
    pub exponent: Value,
}

pub fn entries(v: &SigmaExponentVector) -> Vec<Entry> {
    v.entries().map(|(var, order, e)| Entry { variable: var + 1, order, exponent: big(e) }).collect()
}

#[derive(Serialize)]
pub struct OperatorJson {
    pub sigma: &'static str,
    pub parameter: Option<String>,
    pub delta: &'static str,
    pub hbar: String,
}

impl OperatorJson {
    pub fn new(op: &OperatorSpec) -> Self {
        OperatorJson {
            sigma: op.sigma().name(),
            parameter: op.sigma().parameter(),
            delta: op.delta().name(),
            hbar: op.hbar().to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct GroupJson {
    pub n: usize,
    pub generators: Vec<Vec<Entry>>,
}

impl GroupJson {
    pub fn new(g: &SigmaLatticeGroup) -> Self {
        GroupJson { n: g.n(), generators: g.generators().iter().map(entries).collect() }
    }
}

#[derive(Serialize)]
pub struct FactorJson {
    pub factor: String,
    pub exponent: Value,
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum WitnessJson {
    LogDerivative { f: String, factors: Vec<FactorJson> },
    Antiderivative { g: String },
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub vector: Vec<Entry>,
    pub combined: String,
    pub witness: WitnessJson,
}

impl CertificateJson {
    pub fn new(c: &RelationCertificate) -> Self {
        let witness = match &c.witness {
            Witness::LogDerivative(w) => WitnessJson::LogDerivative {
                f: w.value().to_string(),
                factors: w
                    .factors
                    .iter()
                    .map(|(u, e)| FactorJson { factor: u.to_string(), exponent: big(e) })
                    .collect(),
            },
            Witness::Antiderivative(w) => WitnessJson::Antiderivative { g: w.antiderivative.to_string() },
        };
        CertificateJson { vector: entries(&c.vector), combined: c.combined.to_string(), witness }
    }
}

#[derive(Serialize)]
pub struct ClosureJson {
    pub dims: Vec<usize>,
    pub degrees: Vec<Value>,
}

impl ClosureJson {
    pub fn new(c: &ClosureReport) -> Self {
        ClosureJson {
            dims: c.dims(),
            degrees: c.degrees().iter().map(|d| d.as_ref().map_or_else(|| Value::from("inf"), big)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SigmaDimJson {
    pub value: usize,
    pub stabilized: bool,
}

#[derive(Serialize)]
pub struct BoundedJson {
    pub answer: bool,
    pub order_bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Entry>>,
}

impl BoundedJson {
    pub fn new(b: &BoundedAnswer) -> Self {
        BoundedJson { answer: b.holds, order_bound: b.order_bound, witness: b.witness.as_ref().map(entries) }
    }
}

#[derive(Serialize)]
pub struct ReportJson {
    pub input: Value,
    pub operator: OperatorJson,
    pub order: usize,
    pub group: GroupJson,
    pub presentation: String,
    pub certificates: Vec<CertificateJson>,
    pub closure: ClosureJson,
    pub sigma_dimension: SigmaDimJson,
    pub zariski_dense: BoundedJson,
    pub sigma_reduced: BoundedJson,
    pub pv_sigma_trdeg: usize,
}

impl ReportJson {
    pub fn new(r: &GroupReport) -> Self {
        let input = match &r.problem {
            Problem::Multiplicative(a) | Problem::Additive(a) => Value::from(a.to_string()),
            Problem::Diagonal(v) => Value::from(v.iter().map(|a| a.to_string()).collect::<Vec<_>>()),
        };
        ReportJson {
            input,
            operator: OperatorJson::new(&r.op),
            order: r.order,
            group: GroupJson::new(&r.group),
            presentation: r.group.presentation(),
            certificates: r.certificates.iter().map(CertificateJson::new).collect(),
            closure: ClosureJson::new(&r.closure),
            sigma_dimension: SigmaDimJson { value: r.sigma_dim.value, stabilized: r.sigma_dim.stabilized },
            zariski_dense: BoundedJson::new(&r.dense),
            sigma_reduced: BoundedJson::new(&r.sigma_reduced),
            pv_sigma_trdeg: r.pv_sigma_trdeg,
        }
    }
}

/// Output of `group-ops`.
#[derive(Serialize)]
pub struct GroupOpsJson {
    pub kind: &'static str,
    pub order: usize,
    pub group: GroupJson,
    pub presentation: String,
    pub closure: ClosureJson,
    pub sigma_dimension: SigmaDimJson,
    pub zariski_dense: BoundedJson,
    pub sigma_reduced: BoundedJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contains: Option<bool>,
}

#[derive(Serialize)]
pub struct JetJson {
    pub operator: OperatorJson,
    pub order: usize,
    pub dim: usize,
    pub matrix: Vec<Vec<String>>,
}

pub fn kind_name(k: GroupKind) -> &'static str {
    match k {
        GroupKind::Multiplicative => "multiplicative",
        GroupKind::Additive => "additive",
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn ambient(g: &SigmaLatticeGroup) -> String {
    match g.kind() {
        GroupKind::Multiplicative => format!("Gm^{}", g.n()),
        GroupKind::Additive => format!("Ga^{}", g.n()),
    }
}

fn write_group_summary(out: &mut String, g: &SigmaLatticeGroup, closure: &ClosureReport) {
    let gens: Vec<String> = g.generators().iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "group: <{}> in {}", gens.join(", "), ambient(g));
    let _ = writeln!(out, "presentation: {}", g.presentation());
    let _ = writeln!(out, "closures:");
    for e in &closure.entries {
        let degree = e.degree.as_ref().map_or_else(|| "inf".to_string(), ToString::to_string);
        let _ = writeln!(out, "  G[{}]: dim {}, degree {}", e.order, e.dim, degree);
    }
}

fn write_bounded(out: &mut String, label: &str, b: &BoundedAnswer) {
    let _ = write!(out, "{label} (orders <= {}): {}", b.order_bound, yes_no(b.holds));
    if let Some(w) = &b.witness {
        let _ = write!(out, ", witness {w}");
    }
    out.push('\n');
}

pub fn human_report(r: &GroupReport) -> String {
    let mut out = String::new();
    match &r.problem {
        Problem::Multiplicative(a) => {
            let _ = writeln!(out, "equation: delta(y) = a*y, a = {a}");
        }
        Problem::Additive(b) => {
            let _ = writeln!(out, "equation: delta(y) = b, b = {b}");
        }
        Problem::Diagonal(v) => {
            let items: Vec<String> = v.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "equation: delta(y_i) = a_i*y_i, a = [{}]", items.join(", "));
        }
    }
    let _ = writeln!(out, "operator: {}", r.op);
    let _ = writeln!(out, "order bound: D = {}", r.order);
    write_group_summary(&mut out, &r.group, &r.closure);
    let _ = writeln!(out, "certificates:");
    if r.certificates.is_empty() {
        let _ = writeln!(out, "  (none)");
    }
    for c in &r.certificates {
        let w = match &c.witness {
            Witness::LogDerivative(w) => format!("f = {}", w.value()),
            Witness::Antiderivative(w) => format!("g = {}", w.antiderivative),
        };
        let _ = writeln!(out, "  {}: combined {}, {}", c.vector, c.combined, w);
    }
    let stab = if r.sigma_dim.stabilized { "stabilized" } else { "not stabilized" };
    let _ = writeln!(out, "sigma-dimension: {} ({stab})", r.sigma_dim.value);
    write_bounded(&mut out, "Zariski dense", &r.dense);
    write_bounded(&mut out, "sigma-reduced", &r.sigma_reduced);
    let _ = writeln!(out, "sigma-trdeg of the extension: {}", r.pv_sigma_trdeg);
    out
}

pub fn human_group_ops(g: &SigmaLatticeGroup, order: usize, contains: Option<bool>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "order bound: D = {order}");
    write_group_summary(&mut out, g, &g.closure_report(order));
    let sd = g.sigma_dimension(order);
    let stab = if sd.stabilized { "stabilized" } else { "not stabilized" };
    let _ = writeln!(out, "sigma-dimension: {} ({stab})", sd.value);
    write_bounded(&mut out, "Zariski dense", &g.is_zariski_dense(order));
    write_bounded(&mut out, "sigma-reduced", &g.is_sigma_reduced(order));
    if let Some(c) = contains {
        let _ = writeln!(out, "contains the given group: {}", yes_no(c));
    }
    out
}

pub fn group_ops_json(g: &SigmaLatticeGroup, order: usize, contains: Option<bool>) -> GroupOpsJson {
    let sd = g.sigma_dimension(order);
    GroupOpsJson {
        kind: kind_name(g.kind()),
        order,
        group: GroupJson::new(g),
        presentation: g.presentation(),
        closure: ClosureJson::new(&g.closure_report(order)),
        sigma_dimension: SigmaDimJson { value: sd.value, stabilized: sd.stabilized },
        zariski_dense: BoundedJson::new(&g.is_zariski_dense(order)),
        sigma_reduced: BoundedJson::new(&g.is_sigma_reduced(order)),
        contains,
    }
}

pub fn render_matrix<F: CoeffField>(m: &[Vec<RatFunc<F>>]) -> Vec<Vec<String>> {
    m.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
}

pub fn human_matrix(rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for row in rows {
        let _ = writeln!(out, "[{}]", row.join(", "));
    }
    out
}
