//! Text, JSON and LaTeX renderings of every value type.
//!
//! Text output stays inside the expression language, so it can be fed back
//! to the parser.

use serde_json::{json, Value};

use crate::bernstein::BernsteinElt;
use crate::error::{Error, Result};
use crate::example_n2::{UBasis, UVec};
use crate::hecke::HeckeElt;
use crate::kl::{KLLabel, KlElt};
use crate::laurent::LaurentPoly;
use crate::modules::{FinDimModule, Matrix};
use crate::weyl::AffinePerm;

fn rho_text(m: i64) -> Option<String> {
    match m {
        0 => None,
        1 => Some("rho".to_string()),
        m => Some(format!("rho^{m}")),
    }
}

/// `c * monomial`, with the sign pulled out front when `c` is a single term.
fn scaled(c: &LaurentPoly, monomial: &str) -> String {
    if monomial.is_empty() {
        return c.to_string();
    }
    if c.is_one() {
        return monomial.to_string();
    }
    if c.num_terms() == 1 {
        let (e, k) = c.lowest_term().unwrap();
        let k = k.clone();
        if k == (-1).into() && e == 0 {
            return format!("-{monomial}");
        }
        return format!("{c}*{monomial}");
    }
    format!("({c})*{monomial}")
}

fn join_terms(parts: Vec<String>) -> String {
    if parts.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, p) in parts.into_iter().enumerate() {
        if idx == 0 {
            out.push_str(&p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&p);
        }
    }
    out
}

pub fn hecke_text(a: &HeckeElt) -> String {
    let parts = a
        .sorted_terms()
        .into_iter()
        .map(|(w, c)| {
            let rex = w.to_rex();
            let mut factors: Vec<String> = rho_text(rex.rho_power).into_iter().collect();
            factors.extend(rex.word.iter().map(|i| t_token(*i)));
            scaled(c, &factors.join("*"))
        })
        .collect();
    join_terms(parts)
}

fn t_token(i: usize) -> String {
    if i < 10 {
        format!("T{i}")
    } else {
        format!("T[{i}]")
    }
}

pub fn kl_label_text(l: &KLLabel) -> String {
    let mut factors: Vec<String> = rho_text(l.m).into_iter().collect();
    if !l.is_empty() {
        let w: String = l.word().iter().map(|i| i.to_string()).collect();
        factors.push(format!("b{w}"));
    }
    factors.join("*")
}

pub fn kl_text(a: &KlElt) -> String {
    let parts = a
        .terms()
        .map(|(l, c)| {
            let mono = kl_label_text(l);
            scaled(c, &mono)
        })
        .collect();
    join_terms(parts)
}

fn power(base: &str, e: i64) -> String {
    if e == 1 {
        base.to_string()
    } else {
        format!("{base}^{e}")
    }
}

pub fn bernstein_text(a: &BernsteinElt) -> String {
    let parts = a
        .sorted_terms()
        .into_iter()
        .map(|(w, l, c)| {
            let mut factors: Vec<String> = w.to_rex().word.iter().map(|i| t_token(*i)).collect();
            for (i, &e) in l.iter().enumerate() {
                if e != 0 {
                    factors.push(power(&format!("y{}", i + 1), e));
                }
            }
            scaled(c, &factors.join("*"))
        })
        .collect();
    join_terms(parts)
}

pub fn uvec_text(x: &UVec) -> String {
    join_terms(x.terms().map(|(b, c)| scaled(c, &b.to_string())).collect())
}

// ---------------------------------------------------------------- JSON

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Json(format!("missing field {key:?}")))
}

fn from_value<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T> {
    Ok(serde_json::from_value(v.clone())?)
}

fn poly_json(c: &LaurentPoly) -> Value {
    serde_json::to_value(c).expect("laurent polynomials serialize")
}

pub fn hecke_to_json(a: &HeckeElt) -> Value {
    let terms: Vec<Value> = a
        .sorted_terms()
        .into_iter()
        .map(|(w, c)| json!({"window": w.window(), "coeff": poly_json(c)}))
        .collect();
    json!({"n": a.n(), "basis": "standard", "terms": terms})
}

pub fn kl_to_json(a: &KlElt) -> Value {
    let terms: Vec<Value> = a
        .terms()
        .map(|(l, c)| json!({"label": {"m": l.m, "word": l.word()}, "coeff": poly_json(c)}))
        .collect();
    json!({"n": 2, "basis": "kl", "terms": terms})
}

/// Reads either basis; KL input is converted to the standard basis.
pub fn hecke_from_json(v: &Value) -> Result<HeckeElt> {
    let n: usize = from_value(field(v, "n")?)?;
    if v.get("basis").and_then(Value::as_str) == Some("kl") {
        return Ok(kl_from_json(v)?.to_std());
    }
    let mut out = HeckeElt::zero(n);
    for t in field(v, "terms")?.as_array().ok_or_else(|| Error::Json("terms must be an array".into()))? {
        let window: Vec<i64> = from_value(field(t, "window")?)?;
        if window.len() != n {
            return Err(Error::Json("window length does not match n".into()));
        }
        out.add_term(AffinePerm::new(window)?, from_value(field(t, "coeff")?)?);
    }
    Ok(out)
}

pub fn kl_from_json(v: &Value) -> Result<KlElt> {
    let n: usize = from_value(field(v, "n")?)?;
    if n != 2 {
        return Err(Error::RankUnsupported { n });
    }
    let mut out = KlElt::zero();
    for t in field(v, "terms")?.as_array().ok_or_else(|| Error::Json("terms must be an array".into()))? {
        let label = field(t, "label")?;
        let m: i64 = from_value(field(label, "m")?)?;
        let word: Vec<usize> = from_value(field(label, "word")?)?;
        out.add_term(KLLabel::new(m, word)?, from_value(field(t, "coeff")?)?);
    }
    Ok(out)
}

pub fn bernstein_to_json(a: &BernsteinElt) -> Value {
    let terms: Vec<Value> = a
        .sorted_terms()
        .into_iter()
        .map(|(w, l, c)| json!({"perm": w.window(), "lambda": l, "coeff": poly_json(c)}))
        .collect();
    json!({"n": a.n(), "terms": terms})
}

pub fn bernstein_from_json(v: &Value) -> Result<BernsteinElt> {
    let n: usize = from_value(field(v, "n")?)?;
    let mut out = BernsteinElt::zero(n);
    for t in field(v, "terms")?.as_array().ok_or_else(|| Error::Json("terms must be an array".into()))? {
        let perm: Vec<i64> = from_value(field(t, "perm")?)?;
        let lambda: Vec<i64> = from_value(field(t, "lambda")?)?;
        if perm.len() != n || lambda.len() != n {
            return Err(Error::Json("perm and lambda must have length n".into()));
        }
        let term = BernsteinElt::term(AffinePerm::new(perm)?, lambda, from_value(field(t, "coeff")?)?)?;
        out = out.add(&term)?;
    }
    Ok(out)
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(poly_json).collect())).collect())
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix> {
    let rows: Vec<Vec<LaurentPoly>> = from_value(v)?;
    Matrix::from_rows(rows)
}

pub fn module_to_json(m: &FinDimModule) -> Value {
    let mut gens = serde_json::Map::new();
    gens.insert("rho".into(), matrix_to_json(m.rho()));
    gens.insert("rho_inv".into(), matrix_to_json(m.rho_inv()));
    for i in 0..m.n() {
        if m.n() >= 2 {
            gens.insert(format!("T{i}"), matrix_to_json(&m.t(i).expect("index in range")));
        }
    }
    json!({"n": m.n(), "dim": m.dim(), "gens": gens})
}

/// `rho_inv` may be omitted when `rho` has finite order; a given `T0` must
/// agree with `rho T_{n-1} rho^-1`.
pub fn module_from_json(v: &Value) -> Result<FinDimModule> {
    let n: usize = from_value(field(v, "n")?)?;
    let dim: usize = from_value(field(v, "dim")?)?;
    let gens = field(v, "gens")?;
    let rho = matrix_from_json(field(gens, "rho")?)?;
    let mut t = Vec::new();
    for i in 1..n {
        t.push(matrix_from_json(field(gens, &format!("T{i}"))?)?);
    }
    let m = match gens.get("rho_inv") {
        Some(r) => FinDimModule::new(n, rho, matrix_from_json(r)?, t)?,
        None => FinDimModule::with_finite_order_rho(n, rho, t)?,
    };
    if m.dim() != dim {
        return Err(Error::Json(format!("dim is {dim} but matrices are {}x{}", m.dim(), m.dim())));
    }
    if let (Some(t0), true) = (gens.get("T0"), n >= 2) {
        if matrix_from_json(t0)? != m.t(0)? {
            return Err(Error::Module("T0 does not equal rho T_{n-1} rho^-1".into()));
        }
    }
    Ok(m)
}

pub fn uvec_to_json(x: &UVec) -> Value {
    let coeffs: serde_json::Map<String, Value> = x.terms().map(|(b, c)| (b.to_string(), poly_json(c))).collect();
    json!({"N": x.bound(), "coeffs": coeffs})
}

fn parse_ubasis(s: &str) -> Result<UBasis> {
    let bad = || Error::Json(format!("bad basis symbol {s:?}"));
    if let Some(k) = s.strip_prefix("u'") {
        return k.parse().map(UBasis::UPrime).map_err(|_| bad());
    }
    s.strip_prefix('u').and_then(|k| k.parse().ok()).map(UBasis::U).ok_or_else(bad)
}

pub fn uvec_from_json(v: &Value) -> Result<UVec> {
    let bound: usize = from_value(field(v, "N")?)?;
    let mut out = UVec::zero(bound);
    let coeffs = field(v, "coeffs")?.as_object().ok_or_else(|| Error::Json("coeffs must be an object".into()))?;
    for (k, c) in coeffs {
        out.add_term(parse_ubasis(k)?, from_value(c)?)?;
    }
    Ok(out)
}

pub fn value_to_json(v: &crate::expr::Value) -> Value {
    use crate::expr::Value as V;
    match v {
        V::Scalar(c) => poly_json(c),
        V::Hecke(h) => hecke_to_json(h),
        V::U(u) => uvec_to_json(u),
    }
}

// ---------------------------------------------------------------- LaTeX

fn latex_scaled(c: &LaurentPoly, mono: &str) -> String {
    if mono.is_empty() {
        return c.to_latex();
    }
    if c.is_one() {
        return mono.to_string();
    }
    if c.num_terms() == 1 {
        let (e, k) = c.lowest_term().unwrap();
        if e == 0 && *k == (-1).into() {
            return format!("-{mono}");
        }
        return format!("{} {mono}", c.to_latex());
    }
    format!("({}) {mono}", c.to_latex())
}

fn s_latex(i: usize) -> String {
    if i < 10 {
        format!("s_{i}")
    } else {
        format!("s_{{{i}}}")
    }
}

fn rho_latex(m: i64) -> Option<String> {
    match m {
        0 => None,
        1 => Some("\\rho".into()),
        m => Some(format!("\\rho^{{{m}}}")),
    }
}

pub fn hecke_latex(a: &HeckeElt) -> String {
    let parts = a
        .sorted_terms()
        .into_iter()
        .map(|(w, c)| {
            let rex = w.to_rex();
            let mut f: Vec<String> = rho_latex(rex.rho_power).into_iter().collect();
            if !rex.word.is_empty() {
                let s: Vec<String> = rex.word.iter().map(|i| s_latex(*i)).collect();
                f.push(format!("T_{{{}}}", s.join(" ")));
            }
            latex_scaled(c, &f.join(" "))
        })
        .collect();
    join_terms(parts)
}

pub fn kl_latex(a: &KlElt) -> String {
    let parts = a
        .terms()
        .map(|(l, c)| {
            let mut f: Vec<String> = rho_latex(l.m).into_iter().collect();
            if !l.is_empty() {
                f.push(format!("b_{{{}}}", l.word().iter().map(|i| i.to_string()).collect::<String>()));
            }
            latex_scaled(c, &f.join(" "))
        })
        .collect();
    join_terms(parts)
}

pub fn bernstein_latex(a: &BernsteinElt) -> String {
    let parts = a
        .sorted_terms()
        .into_iter()
        .map(|(w, l, c)| {
            let rex = w.to_rex();
            let mut f = Vec::new();
            if !rex.word.is_empty() {
                let s: Vec<String> = rex.word.iter().map(|i| s_latex(*i)).collect();
                f.push(format!("T_{{{}}}", s.join(" ")));
            }
            for (i, &e) in l.iter().enumerate() {
                match e {
                    0 => {}
                    1 => f.push(format!("y_{{{}}}", i + 1)),
                    e => f.push(format!("y_{{{}}}^{{{e}}}", i + 1)),
                }
            }
            latex_scaled(c, &f.join(" "))
        })
        .collect();
    join_terms(parts)
}

pub fn matrix_latex(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|c| c.to_latex()).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}

pub fn module_latex(m: &FinDimModule) -> String {
    let mut lines = vec![format!("[\\rho] = {}", matrix_latex(m.rho()))];
    if m.n() >= 2 {
        for i in 1..m.n() {
            lines.push(format!("[T_{{{i}}}] = {}", matrix_latex(&m.t(i).expect("index in range"))));
        }
        lines.push(format!("[T_{{0}}] = {}", matrix_latex(&m.t(0).expect("index in range"))));
    }
    lines.join("\n")
}

pub fn uvec_latex(x: &UVec) -> String {
    let parts = x
        .terms()
        .map(|(b, c)| {
            let mono = match b {
                UBasis::U(k) => format!("u_{{{k}}}"),
                UBasis::UPrime(k) => format!("u'_{{{k}}}"),
            };
            latex_scaled(c, &mono)
        })
        .collect();
    join_terms(parts)
}

pub fn value_latex(v: &crate::expr::Value) -> String {
    use crate::expr::Value as V;
    match v {
        V::Scalar(c) => c.to_latex(),
        V::Hecke(h) => hecke_latex(h),
        V::U(u) => uvec_latex(u),
    }
}

/// Text rendering of a module: one line per generator.
pub fn module_text(m: &FinDimModule) -> String {
    let mut lines = vec![format!("rho = {}", m.rho())];
    if m.n() >= 2 {
        for i in 0..m.n() {
            lines.push(format!("T{i} = {}", m.t(i).expect("index in range")));
        }
    }
    lines.join("\n")
}
