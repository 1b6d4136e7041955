use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};
use spf_core::dualities::{
    koszul, koszul_complex, koszul_inverse_complex, serre_functor, square_check, KoszulResult,
};
use spf_core::homological::{
    bar_complex, derived_tensor, ext_groups, homology_json, koszul_resolution_exterior,
    koszul_resolution_symmetric, ChainComplex, ComplexJson, BAR_CONVENTION,
};
use spf_core::schur::{
    exterior_module, set_iso_seed, symmetric_module, ModuleJson, SchurAlgebra, SchurModule,
};
use spf_core::verify::{tensor_table, verify, Outcome, Suite};
use spf_core::{Error, RingSpec};

use crate::spec::ModuleSpec;
use crate::{Cli, Command, SchurWhat, Target};

pub const VERIFICATION_FAILURE: u8 = 1;
pub const USAGE: u8 = 2;
pub const INTERNAL: u8 = 3;

pub struct Output {
    pub json: Value,
    pub markdown: String,
    pub code: u8,
    pub notice: Option<String>,
}

impl Output {
    fn ok(json: Value, markdown: String) -> Self {
        Output { json, markdown, code: 0, notice: None }
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::NotPrime(_)
            | Error::WeightOutOfRange(..)
            | Error::RequiresNGeqD { .. }
            | Error::RequiresField
            | Error::RingNotField(_)
            | Error::RingNotIntegers(_)
            | Error::RingMismatch(..) => USAGE,
            _ => INTERNAL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: USAGE, message: msg.into() }
}

type Res<T> = std::result::Result<T, Failure>;

struct Job {
    ring: RingSpec,
    n: usize,
    d: usize,
    max_degree: usize,
}

impl Job {
    fn new(cli: &Cli) -> Res<Self> {
        let ring = RingSpec::parse(&cli.ring)?;
        let d = cli.d;
        let n = cli.n.unwrap_or(d);
        if d == 0 || n == 0 {
            return Err(usage("n and d must be positive"));
        }
        if (n > 3 || d > 3) && !cli.allow_large {
            return Err(usage(format!("n = {n}, d = {d} exceeds the default budget n, d ≤ 3; pass --allow-large")));
        }
        Ok(Job { ring, n, d, max_degree: cli.max_degree.unwrap_or(2 * d + 2) })
    }

    fn algebra(&self) -> Arc<SchurAlgebra> {
        SchurAlgebra::new(self.ring, self.n, self.d)
    }

    fn header(&self) -> Value {
        json!({ "ring": self.ring.to_string(), "n": self.n, "d": self.d })
    }
}

pub fn run(cli: &Cli) -> Res<Output> {
    set_iso_seed(cli.seed);
    let job = Job::new(cli)?;
    match &cli.command {
        Command::Schur { what } => schur(&job, *what),
        Command::Module { spec } => module(&job, spec),
        Command::TensorTable => table(&job),
        Command::Resolve { target, check_exact } => resolve(&job, *target, *check_exact),
        Command::Koszul { input, inverse, square } => koszul_cmd(&job, input, *inverse, *square),
        Command::Ext { from, to } => ext(&job, from, to),
        Command::Verify { suite } => verify_cmd(&job, suite),
    }
}

fn with_header(job: &Job, body: Value) -> Value {
    let mut h = job.header();
    if let (Value::Object(a), Value::Object(b)) = (&mut h, body) {
        a.extend(b);
    }
    h
}

fn schur(job: &Job, what: SchurWhat) -> Res<Output> {
    let alg = job.algebra();
    let labels: Vec<String> = (0..alg.dim()).map(|k| alg.label(k)).collect();
    Ok(match what {
        SchurWhat::Dim => Output::ok(with_header(job, json!({ "dim": alg.dim() })), format!("{}\n", alg.dim())),
        SchurWhat::Basis => {
            let md = labels.iter().enumerate().map(|(k, l)| format!("{k}. {l}\n")).collect();
            Output::ok(with_header(job, json!({ "basis": labels })), md)
        }
        SchurWhat::MultTable => {
            let ring = alg.ring();
            let mut table = Vec::new();
            let mut md = format!("| · | {} |\n|---|{}\n", labels.join(" | "), "---|".repeat(labels.len()));
            for a in 0..alg.dim() {
                let mut row = Vec::new();
                let mut cells = Vec::new();
                for b in 0..alg.dim() {
                    let p = alg.mul_basis(a, b);
                    row.push(p.iter().map(|(k, c)| json!([k, c.to_string()])).collect::<Vec<_>>());
                    let terms: Vec<String> = p
                        .iter()
                        .map(|(k, c)| if ring.is_one(c) { labels[*k].clone() } else { format!("{c}·{}", labels[*k]) })
                        .collect();
                    cells.push(if terms.is_empty() { "0".to_string() } else { terms.join(" + ") });
                }
                table.push(row);
                md += &format!("| {} | {} |\n", labels[a], cells.join(" | "));
            }
            let unit: Vec<String> = alg.unit().iter().map(|c| c.to_string()).collect();
            Output::ok(with_header(job, json!({ "basis": labels, "unit": unit, "table": table })), md)
        }
    })
}

fn build_module(job: &Job, spec: &str) -> Res<SchurModule> {
    let s: ModuleSpec = spec.parse()?;
    Ok(s.build(&job.algebra())?)
}

fn module(job: &Job, spec: &str) -> Res<Output> {
    let m = build_module(job, spec)?;
    if let Err(e) = m.check() {
        return Err(Failure { code: INTERNAL, message: format!("{spec}: {e}") });
    }
    let body = json!({
        "spec": spec,
        "rank": m.rank(),
        "weight_dims": m.weight_dims(),
        "check": "ok",
        "module": ModuleJson::from_module(&m),
    });
    let md = format!(
        "{} = {}: rank {}, weight dimensions {:?}, invariants ok\n",
        spec,
        m.label().unwrap_or("?"),
        m.rank(),
        m.weight_dims()
    );
    Ok(Output::ok(with_header(job, body), md))
}

fn table(job: &Job) -> Res<Output> {
    let t = tensor_table(job.ring, job.d)?;
    let mut out = Output::ok(
        with_header(job, serde_json::to_value(&t).expect("table serializes")),
        t.to_markdown(),
    );
    if !t.pass {
        out.code = VERIFICATION_FAILURE;
        let diff: Vec<String> = t
            .mismatches()
            .iter()
            .map(|c| format!("{} ⊗ {}: computed {}, expected {}", c.row, c.col, c.computed, c.expected.as_deref().unwrap_or("?")))
            .collect();
        out.notice = Some(format!("tensor table differs from the reference:\n{}", diff.join("\n")));
    }
    Ok(out)
}

fn resolve(job: &Job, target: Target, check_exact: bool) -> Res<Output> {
    let alg = job.algebra();
    let (name, complex, target_rank) = match target {
        Target::Lambda => {
            let c = if check_exact {
                koszul_resolution_exterior(job.ring, job.d, job.n)?.evaluated
            } else {
                bar_complex(job.ring, job.d)?.eval(&alg)?
            };
            (format!("Λ^{}", job.d), c, exterior_module(&alg, job.d)?.rank())
        }
        Target::Symmetric => {
            let c = if check_exact {
                koszul_resolution_symmetric(job.ring, job.d, job.n)?.evaluated
            } else {
                // Λ^d ⊗ − needs n ≥ d; evaluate there and restrict
                let big = SchurAlgebra::new(job.ring, job.n.max(job.d), job.d);
                let c = derived_tensor(&bar_complex(job.ring, job.d)?, &exterior_module(&big, job.d)?)?;
                if job.n < job.d { c.restrict(&alg)? } else { c }
            };
            (format!("S^{}", job.d), c, symmetric_module(&alg, job.d)?.rank())
        }
    };
    let ranks = complex.ranks();
    let mut augmented = ranks.clone();
    augmented.push(target_rank);
    let body = json!({
        "target": name,
        "degrees": [complex.lo(), complex.hi()],
        "ranks": ranks,
        "augmented_ranks": augmented,
        "exact": if check_exact { Value::Bool(true) } else { Value::Null },
        "convention": BAR_CONVENTION,
        "complex": ComplexJson::from_complex(&complex),
    });
    let md = format!(
        "resolution of {name} in degrees {}..{}\nranks {:?}, augmented {:?}{}\nconvention: {BAR_CONVENTION}\n",
        complex.lo(),
        complex.hi(),
        ranks,
        augmented,
        if check_exact { ", exact" } else { "" }
    );
    Ok(Output::ok(with_header(job, body), md))
}

enum Input {
    Module(SchurModule),
    Complex(ChainComplex),
}

// a module spec, or a JSON file holding a module, a complex or a previous koszul output
fn read_input(job: &Job, input: &str) -> Res<Input> {
    let path = Path::new(input);
    if !path.is_file() {
        return Ok(Input::Module(build_module(job, input)?));
    }
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{input}: {e}")))?;
    let mut v: Value = serde_json::from_str(&text).map_err(|e| usage(format!("{input}: {e}")))?;
    if let Some(inner) = v.get("output") {
        v = inner.clone();
    }
    let bad = |e: serde_json::Error| usage(format!("{input}: {e}"));
    if v.get("degrees").is_some() {
        let cj: ComplexJson = serde_json::from_value(v).map_err(bad)?;
        let c = cj.to_complex(&cj.algebra()?)?;
        return Ok(match c.objects() {
            [m] if c.lo() == 0 => Input::Module(m.clone()),
            _ => Input::Complex(c),
        });
    }
    let mj: ModuleJson = serde_json::from_value(v).map_err(bad)?;
    Ok(Input::Module(mj.to_module()?))
}

fn koszul_json(r: &KoszulResult, operation: &str) -> Value {
    json!({
        "input": r.input,
        "operation": operation,
        "output": ComplexJson::from_complex(&r.output),
        "homology": homology_json(&r.homology),
        "identified": r.identified,
    })
}

fn koszul_md(r: &KoszulResult, operation: &str) -> String {
    let mut md = format!("{operation}({}): complex in degrees {}..{}, ranks {:?}\n", r.input, r.output.lo(), r.output.hi(), r.output.ranks());
    for h in homology_json(&r.homology) {
        let tors = if h.torsion.is_empty() { String::new() } else { format!(" ⊕ torsion {:?}", h.torsion) };
        md += &format!("H^{} = free of rank {}{tors}\n", h.degree, h.free_rank);
    }
    md += &format!("identified: {}\n", r.identified.as_deref().unwrap_or("none"));
    md
}

fn koszul_cmd(job: &Job, input: &str, inverse: bool, square: bool) -> Res<Output> {
    let x = read_input(job, input)?;
    if square {
        let Input::Module(m) = x else {
            return Err(usage("--square needs a module, not a complex"));
        };
        let mut kk = koszul_complex(&koszul(&m)?.output)?;
        kk.input = input.to_string();
        let fx = serre_functor(&m)?;
        let degrees = square_check(&m, &fx)?;
        let pass = degrees.iter().all(|d| d.1);
        let f = KoszulResult::new(format!("S^{} ⊗^L {}", m.algebra().d(), m.label().unwrap_or(input)), fx)?;
        let mut body = koszul_json(&kk, "K∘K");
        body["serre"] = koszul_json(&f, "S^d ⊗^L");
        body["agrees_with_serre"] = json!(pass);
        body["degrees"] = json!(degrees);
        let mut md = koszul_md(&kk, "K∘K");
        md += &format!("agrees with S^d ⊗^L − on homology: {}\n", if pass { "yes" } else { "no" });
        let mut out = Output::ok(with_header(job, body), md);
        if !pass {
            out.code = VERIFICATION_FAILURE;
            out.notice = Some("K∘K disagrees with S^d ⊗^L − on homology".into());
        }
        return Ok(out);
    }
    let c = match x {
        Input::Module(m) => ChainComplex::concentrated(&m, 0),
        Input::Complex(c) => c,
    };
    let (mut r, op) = if inverse { (koszul_inverse_complex(&c)?, "K^-1") } else { (koszul_complex(&c)?, "K") };
    r.input = input.to_string();
    Ok(Output::ok(with_header(job, koszul_json(&r, op)), koszul_md(&r, op)))
}

fn ext(job: &Job, from: &str, to: &str) -> Res<Output> {
    let m = build_module(job, from)?;
    let n = build_module(job, to)?;
    let groups = ext_groups(&m, &n, job.max_degree)?;
    let rows: Vec<Value> = groups
        .iter()
        .enumerate()
        .map(|(i, (r, t))| json!({ "degree": i, "free_rank": r, "torsion": t.iter().map(|x| x.to_string()).collect::<Vec<_>>() }))
        .collect();
    let mut md = format!("| i | Ext^i({from}, {to}) |\n|---|---|\n");
    for (i, (r, t)) in groups.iter().enumerate() {
        let mut parts = Vec::new();
        if *r > 0 {
            parts.push(format!("{}^{r}", job.ring));
        }
        parts.extend(t.iter().map(|x| format!("Z/{x}")));
        md += &format!("| {i} | {} |\n", if parts.is_empty() { "0".into() } else { parts.join(" ⊕ ") });
    }
    let body = json!({ "from": from, "to": to, "max_degree": job.max_degree, "ext": rows });
    Ok(Output::ok(with_header(job, body), md))
}

fn verify_cmd(job: &Job, suite: &str) -> Res<Output> {
    let s: Suite = suite.parse()?;
    let r = verify(s, job.ring, job.d);
    let mut md = String::new();
    for c in &r.checks {
        let tag = match c.outcome {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Skipped => "SKIP",
            Outcome::Error => "ERROR",
        };
        md += &format!("{tag} {:?}/{}: {}\n", c.suite, c.name, c.detail);
    }
    md += if r.pass { "overall: PASS\n" } else { "overall: FAIL\n" };
    let mut out = Output::ok(serde_json::to_value(&r).expect("report serializes"), md);
    out.code = if r.pass {
        0
    } else if r.has_errors() {
        INTERNAL
    } else {
        VERIFICATION_FAILURE
    };
    Ok(out)
}
