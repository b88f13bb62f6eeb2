//! End-to-end acceptance suite: the four worked examples and the four random
//! oracle suites. Prints one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{Gen, P, RF, UR};
use hyperint::cohomology::{cohomology_basis, kernel_shell, univariate_reduce};
use hyperint::decompose::hyperexp_decompose;
use hyperint::forms::{is_closed_twisted, log_derivative};
use hyperint::liouville::{liouville_decompose, univariate_exact};
use hyperint::ode::linearize_field;
use hyperint::{rational_integrate, Caps, OneForm};
use hyperint_algebra::parse::{parse_urfunc, Scope};
use hyperint_algebra::rat::int;
use hyperint_algebra::{AlgNumber, Field, Rat, UPoly};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(t: Duration, secs: u64) -> Result<(), String> {
    ensure(t < Duration::from_secs(secs), format!("took {t:.2?}, limit {secs} s"))
}

fn form(s: &str, n: usize) -> OneForm {
    OneForm::new(Scope::standard(n).parse_form(s).unwrap())
}

fn rf(s: &str, n: usize) -> RF {
    Scope::standard(n).parse(s).unwrap()
}

fn u(s: &str) -> UR {
    parse_urfunc(s).unwrap()
}

fn example1() -> Outcome {
    let w = form(
        "form((2*x1^3-12*x1^2*x2-3*x1^2+6*x2^2)/(3*x1^2*(x1^2-2*x2^2)), 4*(3*x1-x2)/(3*(x1^2-2*x2^2)), 1/x3)",
        3,
    );
    let t = Instant::now();
    let rep = rational_integrate(&w, &Caps::default()).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    ensure(log_derivative(&rep) == w, "log_derivative(rep) differs from the input")?;
    ensure(rep.f0 == rf("1/x1", 3), format!("F0 = {}", rep.f0))?;
    ensure(rep.q == 3, format!("q = {}", rep.q))?;
    let a = rf("x3^3*(x1^2-2*x2^2)", 3);
    ensure(rep.a.div(&a).is_constant(), format!("A = {}", rep.a))?;
    ensure(rep.log_terms.len() == 1, "expected one log term")?;
    let lam = &rep.log_terms[0].0;
    ensure(lam.mul(lam) == AlgNumber::from_int(2), "λ² ≠ 2")?;
    within(el, 10)?;
    Ok(format!("F0 = 1/x1, q = 3, A = x3^3(x1^2-2x2^2), λ² = 2 ({el:.2?})"))
}

fn example2() -> Outcome {
    let mut notes = vec![];
    for a in [2i64, 3, 4] {
        let eta = form(&format!("form(2*(7*x1-2)/(x1^2-2), -{}/(x2^2-2))", 4 * a), 2);
        let t = Instant::now();
        let d = hyperexp_decompose(&eta, &Caps::default()).map_err(|e| e.to_string())?.ok_or("no decomposition")?;
        let el = t.elapsed();
        ensure(d.certify(&eta), format!("a = {a}: certification failed"))?;
        let deg = d.f.degree_in(1);
        ensure(deg as i64 == a, format!("a = {a}: deg F = {deg}"))?;
        within(el, 60)?;
        notes.push(format!("a={a}: deg F={deg} ({el:.2?})"));
    }
    Ok(notes.join(", "))
}

const EX3_P1: &str = "-3*x1^6*x2^2-9*x1^4*x2^4-9*x1^2*x2^6-3*x2^8+2*x1^6-2*x1^5*x2-6*x1^4*x2^2-2*x1^2*x2^4-6*x1*x2^5-2*x2^6-2*x1^4+4*x1^3*x2+4*x1*x2^3+2*x2^4";
const EX3_P2: &str = "3*x1^8+9*x1^6*x2^2+9*x1^4*x2^4+3*x1^2*x2^6+2*x1^6+6*x1^5*x2+2*x1^4*x2^2+6*x1^2*x2^4+2*x1*x2^5-2*x2^6-2*x1^4-4*x1^3*x2-4*x1*x2^3+2*x2^4";
const EX3_ETA: &str = "form(-2*(3*x1^5+6*x1^3*x2^2+3*x1*x2^4-x1^3-3*x1^2*x2-x1*x2^2+x2^3)/(x1^2+x2^2)^3, -2*(3*x1^4*x2+6*x1^2*x2^3+3*x2^5+x1^3-x1^2*x2-3*x1*x2^2-x2^3)/(x1^2+x2^2)^3)";

fn example3() -> Outcome {
    let caps = Caps::default();
    let eta = form(EX3_ETA, 2);
    let (p1, p2) = (rf(EX3_P1, 2), rf(EX3_P2, 2));
    let w = OneForm::new(vec![p2.clone(), p1.neg()]);
    let t = Instant::now();
    let d = liouville_decompose(&eta, &w, &caps).map_err(|e| e.to_string())?;
    ensure(!d.exact, "classified exact")?;
    ensure(d.certify(&eta, &w), "certification failed")?;
    let g = u("-(3*z^2-2)/z^3");
    ensure(d.g == g, format!("g = {}", d.g.to_text("z")))?;
    // the printed f, read through F ↦ −F and H ↦ H/(−8), differs from ours by ρ' + ρg
    let f_printed = u("-4*(33*z^4+22*z^2-4)*z");
    let h = f_printed.compose_u(&u("-z")).unwrap().scale(&Rat::new(1.into(), 8.into()));
    let rho = univariate_exact(&h.sub(&d.f), &d.g, &caps).ok_or("printed f is not equivalent to ours")?;
    let lin = linearize_field(&p1, &p2, &eta, &caps).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    ensure(lin.certify(&p1, &p2), "linearization failed certification")?;
    ensure(lin.b == u("(3*z^2-2)/z^3"), format!("b = {}", lin.b.to_text("z")))?;
    within(el, 60)?;
    Ok(format!(
        "F = {}, g = {}, f = {}, ρ = {}, b = {} ({el:.2?})",
        d.f_map,
        d.g.to_text("z"),
        d.f.to_text("z"),
        rho.to_text("z"),
        lin.b.to_text("z")
    ))
}

fn example4_data() -> (OneForm, P) {
    let eta = form(
        "form(2*(x1+x2)*(x1^2+2*x1*x2-x2^2)/(x1^2+x2^2)^3, -2*(x1+x2)*(x1^2-2*x1*x2-x2^2)/(x1^2+x2^2)^3)",
        2,
    );
    let s = rf("(x1^2+x2^2+x1+x2)*(x1^2+x2^2-x1-x2)*(x1+2*x2)", 2).num().clone();
    (eta, s)
}

fn example4() -> Outcome {
    let (eta, s) = example4_data();
    let t = Instant::now();
    let b = cohomology_basis(&eta, &s, &Caps::default()).map_err(|e| e.to_string())?;
    let el = t.elapsed();
    ensure(b.dimension() == 3, format!("dimension {}", b.dimension()))?;
    let sd = s.mul(&eta.common_den());
    let sd_factors = hyperint::connection::irreducible_support(&[&sd]);
    let bad = rf("x1+2*x2", 2).num().clone();
    for w in &b.forms {
        ensure(is_closed_twisted(&eta, w).unwrap(), "basis form not closed")?;
        let den = w.common_den();
        let supp = hyperint::connection::irreducible_support(&[&den]);
        ensure(supp.iter().all(|f| sd_factors.contains(f)), "denominator outside S·D")?;
        ensure(den.exact_div(&bad).is_none(), "x1+2x2 in a denominator")?;
    }
    within(el, 120)?;
    Ok(format!("3 forms, F = {}, g = {}, Q = {} ({el:.2?})", b.f, b.g.to_text("z"), b.q.to_text("z")))
}

fn round_trips() -> Outcome {
    let mut g = Gen::new(5);
    let caps = Caps::default();
    for k in 0..200 {
        let n = 1 + k % 3;
        let w = g.rep_form(n);
        let rep = rational_integrate(&w, &caps).map_err(|e| format!("case {k}: {e} on {}", w.text()))?;
        ensure(log_derivative(&rep) == w, format!("case {k}: round trip differs on {}", w.text()))?;
    }
    Ok("200/200".into())
}

fn exactness_oracle() -> Outcome {
    let mut g = Gen::new(6);
    let caps = Caps::default();
    for k in 0..100 {
        let n = 1 + k % 2;
        let eta = g.closed_eta(n);
        let r = g.rfunc(n, 2);
        let w = OneForm::d(&r, n).add(&eta.scale(&r));
        let d = liouville_decompose(&eta, &w, &caps).map_err(|e| format!("exact case {k}: {e}"))?;
        ensure(d.exact, format!("exact case {k} classified non-exact"))?;
        ensure(OneForm::d(&d.r, n).add(&eta.scale(&d.r)) == w, format!("exact case {k}: wrong R"))?;
    }
    for k in 0..20 {
        let f = RF::new(g.nonconstant_poly(2, 2, 3), g.nonzero_poly(2, 1, 2));
        if f.is_constant() {
            return Err("degenerate generator".into());
        }
        let t = RF::from_poly(g.nonzero_poly(2, 1, 2));
        // H = T·exp(−1/F), Hω = exp(−1/F) dF + d(H r)
        let eta = OneForm::d(&f.inv().neg(), 2).add(&OneForm::d(&t, 2).scale(&t.inv()));
        let r = g.rfunc(2, 1);
        let w = OneForm::d(&f, 2).scale(&t.inv()).add(&OneForm::d(&r, 2)).add(&eta.scale(&r));
        let d = liouville_decompose(&eta, &w, &caps).map_err(|e| format!("non-exact case {k}: {e}"))?;
        ensure(!d.exact, format!("non-exact case {k} classified exact"))?;
        ensure(d.certify(&eta, &w), format!("non-exact case {k}: certification failed"))?;
    }
    Ok("100/100 exact, 20/20 non-exact".into())
}

fn linear(c: i64) -> UPoly<Rat> {
    UPoly::new(vec![int(-c), Rat::one()])
}

fn univariate_suite() -> Outcome {
    let mut gen = Gen::new(7);
    let mut done = 0;
    let mut attempts = 0;
    while done < 100 {
        attempts += 1;
        if attempts > 2000 {
            return Err("generator exhausted".into());
        }
        let mut roots: Vec<i64> = vec![];
        let mut g2 = UPoly::one();
        let mut factors = vec![];
        for _ in 0..gen.range(1, 3) {
            let c = gen.range(-4, 4);
            if roots.contains(&c) {
                continue;
            }
            roots.push(c);
            let k = gen.range(1, 3) as u32;
            g2 = g2.mul(&linear(c).pow(k));
            factors.push(linear(c));
        }
        let d2 = g2.degree();
        if d2 < 2 {
            continue;
        }
        let g1 = UPoly::new((0..d2 - 1).map(|_| int(gen.range(-3, 3))).collect());
        if g1.is_zero() {
            continue;
        }
        let g = UR::new(g1, g2.clone());
        // a common factor of g1 and g2 would drop a root from the support
        if *g.den() != g2 || g.order_at_infinity() < 2 || kernel_shell(&g).kernel != g {
            continue;
        }
        let mut q = UPoly::one();
        for _ in 0..gen.range(0, 2) {
            let c = gen.range(-6, 6);
            if !roots.contains(&c) {
                roots.push(c);
                q = q.mul(&linear(c));
                factors.push(linear(c));
            }
        }
        let mut den = UPoly::one();
        for f in &factors {
            den = den.mul(&f.pow(gen.range(0, 2) as u32));
        }
        let num = UPoly::new((0..4).map(|_| int(gen.range(-3, 3))).collect());
        let r = UR::new(num, den);
        let f = r.derivative().add(&r.mul(&g));
        let red = univariate_reduce(&f, &g, &q).map_err(|e| format!("g = {}, Q = {}, r = {}: {e}", g, q.to_text("z"), r))?;
        ensure(red.coords.iter().all(|c| c.is_zero()), format!("nonzero coordinates for g = {g}, r = {r}"))?;
        ensure(red.r == r, format!("certificate {} ≠ {r} for g = {g}", red.r))?;
        done += 1;
    }
    Ok("100/100".into())
}

fn spanning() -> Outcome {
    let (eta, s) = example4_data();
    let caps = Caps::default();
    let b = cohomology_basis(&eta, &s, &caps).map_err(|e| e.to_string())?;
    let factors: Vec<P> = ["x1^2+x2^2+x1+x2", "x1^2+x2^2-x1-x2", "x1+2*x2", "x1^2+x2^2"]
        .iter()
        .map(|f| rf(f, 2).num().clone())
        .collect();
    let mut g = Gen::new(8);
    for k in 0..20 {
        let r = g.rfunc_over(2, 2, &factors);
        let a: Vec<Rat> = (0..b.dimension()).map(|_| int(g.range(-3, 3))).collect();
        let mut w = OneForm::d(&r, 2).add(&eta.scale(&r));
        for (ai, wi) in a.iter().zip(&b.forms) {
            w = w.add(&wi.scale_rat(ai));
        }
        let c = b.coordinates(&eta, &w, &caps).map_err(|e| format!("case {k}: {e}"))?;
        ensure(c == a, format!("case {k}: coordinates {c:?}, expected {a:?}"))?;
    }
    Ok("20/20".into())
}

// Runs without the libtest harness so that the per-criterion lines are
// always printed.
fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 Example 1 (rational integration)", example1),
        ("2 Example 2 (pullback decomposition, a = 2, 3, 4)", example2),
        ("3 Example 3 (Liouvillian decomposition, linearization)", example3),
        ("4 Example 4 (cohomology basis)", example4),
        ("5 round trips of rational integration", round_trips),
        ("6 twisted exactness oracle", exactness_oracle),
        ("7 univariate reduction", univariate_suite),
        ("8 spanning check on Example 4", spanning),
    ];
    let mut failed = vec![];
    for (name, f) in criteria {
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match out {
            Ok(msg) => println!("PASS criterion {name}: {msg}"),
            Err(msg) => {
                println!("FAIL criterion {name}: {msg}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all 8 acceptance criteria passed");
}
