//! Executes a request and collects the result with its certification status.

use hyperint::cohomology::cohomology_basis;
use hyperint::connection::irreducible_support;
use hyperint::decompose::hyperexp_decompose;
use hyperint::forms::{is_closed_twisted, log_derivative};
use hyperint::liouville::liouville_decompose;
use hyperint::ode::linearize_field;
use hyperint::{rational_integrate, Caps, HyperintError, OneForm};
use hyperint_algebra::parse::{split_top, Scope};
use hyperint_algebra::polyrat::mpoly::default_name;
use hyperint_algebra::{AlgebraError, Field, RFunc, Rat, URFunc};
use serde_json::{json, Map, Value};

use crate::request::{Command, Request};

type RF = RFunc<Rat>;

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub certified: bool,
    pub result: Map<String, Value>,
    pub error: Option<String>,
}

impl Report {
    fn failed(command: Command, e: String) -> Self {
        Report { command, certified: false, result: Map::new(), error: Some(e) }
    }

    pub fn status(&self) -> &'static str {
        match (&self.error, self.certified) {
            (Some(_), _) => "error",
            (None, true) => "pass",
            (None, false) => "fail",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("command".into(), json!(self.command.name()));
        m.insert("certification".into(), json!(self.status()));
        if let Some(e) = &self.error {
            m.insert("error".into(), json!(e));
        } else {
            m.insert("result".into(), Value::Object(self.result.clone()));
        }
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("command: {}\n", self.command);
        if let Some(e) = &self.error {
            s += &format!("error: {e}\n");
        }
        for (k, v) in &self.result {
            write_value(&mut s, k, v, 0);
        }
        s += &format!("certification: {}\n", self.status());
        s
    }
}

fn write_value(out: &mut String, key: &str, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            *out += &format!("{pad}{key}:\n");
            for (k, x) in m {
                write_value(out, k, x, indent + 1);
            }
        }
        Value::Array(xs) => {
            *out += &format!("{pad}{key}:\n");
            for (i, x) in xs.iter().enumerate() {
                write_value(out, &format!("[{}]", i + 1), x, indent + 1);
            }
        }
        Value::String(x) => *out += &format!("{pad}{key}: {x}\n"),
        x => *out += &format!("{pad}{key}: {x}\n"),
    }
}

/// Variable count and parsing scope for a request.
struct Env {
    n: usize,
    scope: Scope,
}

impl Env {
    fn new(req: &Request, vars: Option<usize>) -> Result<Env, String> {
        let from_form = |k: &str| req.get(k).map(|s| form_arity(s));
        let inferred = match req.command {
            Command::Linearize => Some(2),
            Command::RationalIntegrate => from_form("omega"),
            _ => from_form("eta"),
        }
        .unwrap_or(1);
        let n = vars.unwrap_or(inferred);
        if n != inferred {
            return Err(format!("--vars {n} does not match the {inferred} components of the input"));
        }
        let mut scope = Scope::standard(n);
        if let Some(d) = &req.with {
            scope.declare(d).map_err(|e| format!("in `with {d}`: {e}"))?;
        }
        Ok(Env { n, scope })
    }

    fn func(&self, req: &Request, key: &str) -> Result<RF, String> {
        let s = req.get(key).ok_or_else(|| format!("missing input `{key}`"))?;
        self.scope.parse(s).map_err(|e| diag(key, e))
    }

    fn form(&self, req: &Request, key: &str) -> Result<OneForm, String> {
        let s = req.get(key).ok_or_else(|| format!("missing input `{key}`"))?;
        let coeffs = self.scope.parse_form(s).map_err(|e| diag(key, e))?;
        if coeffs.len() != self.n {
            return Err(format!("`{key}` has {} components, expected {}", coeffs.len(), self.n));
        }
        Ok(OneForm::new(coeffs))
    }
}

fn diag(key: &str, e: AlgebraError) -> String {
    format!("in `{key}`: {e}")
}

/// Number of top-level arguments of `form(...)`, or 1 for anything else.
fn form_arity(s: &str) -> usize {
    let t = s.trim();
    match t.strip_prefix("form").map(str::trim_start).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')')) {
        Some(inner) => split_top(inner).len(),
        None => 1,
    }
}

fn rf(r: &RF) -> Value {
    json!(r.to_text(&default_name))
}

fn ur(u: &URFunc<Rat>, var: &str) -> Value {
    json!(u.to_text(var))
}

pub fn run(req: &Request, caps: &Caps, vars: Option<usize>) -> Report {
    let go = || -> Result<(bool, Map<String, Value>), String> {
        req.check_complete()?;
        let env = Env::new(req, vars)?;
        dispatch(req, &env, caps).map_err(|e| e.to_string())
    };
    match go() {
        Ok((certified, result)) => Report { command: req.command, certified, result, error: None },
        Err(e) => Report::failed(req.command, e),
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Module(HyperintError),
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Input(s) => f.write_str(s),
            Failure::Module(e) => write!(f, "{e}"),
        }
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Input(s)
    }
}

impl From<HyperintError> for Failure {
    fn from(e: HyperintError) -> Self {
        Failure::Module(e)
    }
}

fn dispatch(req: &Request, env: &Env, caps: &Caps) -> Result<(bool, Map<String, Value>), Failure> {
    let mut m = Map::new();
    let certified = match req.command {
        Command::RationalIntegrate => {
            let w = env.form(req, "omega")?;
            let rep = rational_integrate(&w, caps)?;
            m.insert("F0".into(), rf(&rep.f0));
            m.insert("A".into(), rf(&rep.a));
            m.insert("q".into(), json!(rep.q));
            if rep.field.degree() > 1 {
                m.insert(
                    "field".into(),
                    json!({ "name": rep.field.name(), "minpoly": rep.field.minpoly().to_text("t") }),
                );
            }
            let logs: Vec<Value> = rep
                .log_terms
                .iter()
                .map(|(lam, f)| {
                    json!({ "lambda": lam.to_text(), "minpoly": lam.minpoly().to_text("t"), "F": f.to_text(&default_name) })
                })
                .collect();
            m.insert("log_terms".into(), Value::Array(logs));
            log_derivative(&rep) == w
        }
        Command::HyperexpDecompose => {
            let eta = env.form(req, "eta")?;
            match hyperexp_decompose(&eta, caps)? {
                Some(d) => {
                    m.insert("F".into(), rf(&d.f));
                    m.insert("T".into(), rf(&d.t));
                    m.insert("g".into(), ur(&d.g, "z"));
                    d.certify(&eta)
                }
                None => {
                    m.insert("decomposition".into(), json!("none found"));
                    false
                }
            }
        }
        Command::Liouville => {
            let eta = env.form(req, "eta")?;
            let w = env.form(req, "omega")?;
            let d = liouville_decompose(&eta, &w, caps)?;
            m.insert("exact".into(), json!(d.exact));
            m.insert("R".into(), rf(&d.r));
            if !d.exact {
                m.insert("F".into(), rf(&d.f_map));
                m.insert("T".into(), rf(&d.t));
                m.insert("f".into(), ur(&d.f, "z"));
                m.insert("g".into(), ur(&d.g, "z"));
            }
            d.certify(&eta, &w)
        }
        Command::Cohomology => {
            let eta = env.form(req, "eta")?;
            let s = match req.get("s") {
                Some(_) => env.func(req, "s")?,
                None => RF::one(),
            };
            if !s.den().is_one() {
                return Err(Failure::Input("`s` must be a polynomial".into()));
            }
            let b = cohomology_basis(&eta, s.num(), caps)?;
            m.insert("dimension".into(), json!(b.dimension()));
            if b.dimension() > 0 {
                m.insert("F".into(), rf(&b.f));
                m.insert("T".into(), rf(&b.t));
                m.insert("g".into(), ur(&b.g, "z"));
                m.insert("Q".into(), json!(b.q.to_text("z")));
            }
            let forms: Vec<Value> = b
                .forms
                .iter()
                .zip(&b.u)
                .map(|(w, u)| json!({ "form": w.text(), "u": u.to_text("z") }))
                .collect();
            m.insert("basis".into(), Value::Array(forms));
            let support = irreducible_support(&[&b.sd]);
            let mut ok = true;
            for w in &b.forms {
                ok &= is_closed_twisted(&eta, w)?;
                ok &= irreducible_support(&[&w.common_den()]).iter().all(|p| support.contains(p));
            }
            ok
        }
        Command::Linearize => {
            let eta = env.form(req, "eta")?;
            let (p, q) = match (req.get("v"), req.get("p"), req.get("q")) {
                (Some(_), None, None) => (RF::one(), env.func(req, "v")?),
                (None, Some(_), Some(_)) => (env.func(req, "p")?, env.func(req, "q")?),
                _ => return Err(Failure::Input("`linearize` needs either `v` or both `p` and `q`".into())),
            };
            let lin = linearize_field(&p, &q, &eta, caps)?;
            m.insert("convention".into(), json!("dY/dX = a(X) + b(X)*Y along x' = p, y' = q (v: p = 1, q = v)"));
            m.insert("X".into(), rf(&lin.x));
            m.insert("Y".into(), rf(&lin.y));
            m.insert("a".into(), ur(&lin.a, "X"));
            m.insert("b".into(), ur(&lin.b, "X"));
            lin.certify(&p, &q)
        }
    };
    Ok((certified, m))
}
