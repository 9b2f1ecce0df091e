//! JSON encodings of matrices, operators, series and certificates.
//!
//! Integers and rationals are decimal strings (`"p/q"` for rationals). Plain
//! JSON integers are accepted on input; floats are rejected. Objects use
//! sorted keys, so equal values serialise to equal bytes.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{parse_int, parse_rat, rat_to_string, ConeFacet, Int, IntMatrix, Rat, RatVector};
use crate::groebner::{MembershipCertificate, MembershipVerdict};
use crate::mgraph::{MGraphComponent, Verdict};
use crate::poly::{Exponent, Poly};
use crate::series::{AnnihilationReport, PuiseuxSeries, WindowVerdict};
use crate::systems::{BlockDecomposition, SystemSpec};
use crate::weyl::WeylOperator;

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

pub fn int_from_json(v: &Value) -> Result<Int> {
    match v {
        Value::String(s) => parse_int(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_int(&n.to_string()),
        _ => Err(bad(format!("expected an integer, found {v}"))),
    }
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rat(&n.to_string()),
        _ => Err(bad(format!("expected a rational, found {v}"))),
    }
}

fn u32_from_json(v: &Value) -> Result<u32> {
    v.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad(format!("expected an exponent, found {v}")))
}

pub fn rat_json(r: &Rat) -> Value {
    Value::String(rat_to_string(r))
}

pub fn int_json(i: &Int) -> Value {
    Value::String(i.to_string())
}

pub fn ints_json(v: &[Int]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn rat_vector_json(v: &RatVector) -> Value {
    Value::Array(v.0.iter().map(rat_json).collect())
}

pub fn rat_vector_from_json(v: &Value) -> Result<RatVector> {
    Ok(RatVector(as_array(v, "vector")?.iter().map(rat_from_json).collect::<Result<_>>()?))
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.row_vecs().iter().map(|r| ints_json(r)).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(v: &Value) -> Result<IntMatrix> {
    let rows = as_usize(field(v, "rows")?, "rows")?;
    let cols = as_usize(field(v, "cols")?, "cols")?;
    let entries = as_array(field(v, "entries")?, "entries")?;
    if entries.len() != rows {
        return Err(Error::DimensionMismatch(format!("declared {rows} rows, found {}", entries.len())));
    }
    let mut flat = Vec::with_capacity(rows * cols);
    for row in entries {
        let row = as_array(row, "matrix row")?;
        if row.len() != cols {
            return Err(Error::DimensionMismatch(format!("declared {cols} columns, found a row of {}", row.len())));
        }
        for x in row {
            flat.push(int_from_json(x)?);
        }
    }
    IntMatrix::new(rows, cols, flat)
}

fn exponent_json(e: &[u32]) -> Value {
    Value::Array(e.iter().map(|&k| json!(k)).collect())
}

fn exponent_from_json(v: &Value, n: usize) -> Result<Exponent> {
    let e: Exponent = as_array(v, "exponent")?.iter().map(u32_from_json).collect::<Result<_>>()?;
    if e.len() != n {
        return Err(Error::DimensionMismatch(format!("exponent of length {}, expected {n}", e.len())));
    }
    Ok(e)
}

/// Terms in decreasing order, as printed.
pub fn operator_json(p: &WeylOperator) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .map(|((mu, nu), c)| json!({"coeff": rat_json(c), "x": exponent_json(mu), "dx": exponent_json(nu)}))
        .collect();
    json!({"nvars": p.nvars(), "terms": terms, "text": p.to_string()})
}

pub fn operator_from_json(v: &Value) -> Result<WeylOperator> {
    let n = as_usize(field(v, "nvars")?, "nvars")?;
    let mut op = WeylOperator::zero(n);
    for t in as_array(field(v, "terms")?, "terms")? {
        let c = rat_from_json(field(t, "coeff")?)?;
        let mu = match t.get("x") {
            Some(x) => exponent_from_json(x, n)?,
            None => vec![0; n],
        };
        let nu = match t.get("dx") {
            Some(d) => exponent_from_json(d, n)?,
            None => vec![0; n],
        };
        op.add_term(mu, nu, c);
    }
    Ok(op)
}

pub fn operators_json(ops: &[WeylOperator]) -> Value {
    Value::Array(ops.iter().map(operator_json).collect())
}

/// A polynomial in `d` as an operator without `x` factors.
pub fn d_poly_json(p: &Poly) -> Value {
    operator_json(&WeylOperator::from_d_poly(p))
}

/// A list of operators: either a JSON array or `{"operators": [...]}`.
pub fn operators_from_json(v: &Value) -> Result<Vec<WeylOperator>> {
    let list = match v {
        Value::Array(a) => a,
        _ => match v.get("operators") {
            Some(a) => as_array(a, "operators")?,
            None => return Ok(vec![operator_from_json(v)?]),
        },
    };
    let ops: Vec<WeylOperator> = list.iter().map(operator_from_json).collect::<Result<_>>()?;
    if let Some(first) = ops.first() {
        if ops.iter().any(|o| o.nvars() != first.nvars()) {
            return Err(Error::DimensionMismatch("operators in different numbers of variables".into()));
        }
    }
    Ok(ops)
}

/// `u` lists lattice coordinates, so the exponent of a term is `v + L u`
/// with the columns of `L` given by `lattice`.
pub fn series_json(f: &PuiseuxSeries) -> Value {
    let lattice: Vec<Value> = f.lattice().columns().iter().map(|c| ints_json(c)).collect();
    let terms: Vec<Value> = f.terms().map(|(t, c)| json!({"u": ints_json(t), "coeff": rat_json(c)})).collect();
    json!({
        "v": rat_vector_json(f.v()),
        "lattice": lattice,
        "terms": terms,
        "window": f.window(),
        "reliable": f.reliable(),
    })
}

pub fn series_from_json(v: &Value) -> Result<PuiseuxSeries> {
    let base = rat_vector_from_json(field(v, "v")?)?;
    let n = base.len();
    let cols: Vec<Vec<Int>> = as_array(field(v, "lattice")?, "lattice")?
        .iter()
        .map(|c| as_array(c, "lattice vector")?.iter().map(int_from_json).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    if cols.iter().any(|c| c.len() != n) {
        return Err(Error::DimensionMismatch("lattice vector length differs from v".into()));
    }
    let lattice = IntMatrix::from_columns(&cols, n)?;
    let mut terms = BTreeMap::new();
    for t in as_array(field(v, "terms")?, "terms")? {
        let u: Vec<Int> = as_array(field(t, "u")?, "u")?.iter().map(int_from_json).collect::<Result<_>>()?;
        let c = rat_from_json(field(t, "coeff")?)?;
        if terms.insert(u, c).is_some() {
            return Err(bad("repeated lattice point in series terms"));
        }
    }
    let window = field(v, "window")?.as_u64().and_then(|x| u32::try_from(x).ok()).ok_or_else(|| bad("bad window"))?;
    let reliable = match v.get("reliable") {
        None | Some(Value::Null) => None,
        Some(r) => Some(u32_from_json(r)?),
    };
    PuiseuxSeries::new(base, lattice, terms, window, reliable)
}

pub fn certificate_json(c: &MembershipCertificate) -> Value {
    let member = match c.verdict {
        MembershipVerdict::Member => json!(true),
        MembershipVerdict::NonMember => json!(false),
        MembershipVerdict::Inconclusive => json!("inconclusive"),
    };
    json!({
        "member": member,
        "cofactors": operators_json(&c.cofactors),
        "basis_status": c.status.name(),
        "normal_form": operator_json(&c.normal_form),
    })
}

/// Facet supports are reported 1-based.
pub fn facet_json(f: &ConeFacet) -> Value {
    json!({
        "sigma": f.sigma.iter().map(|j| j + 1).collect::<Vec<_>>(),
        "nu": rat_vector_json(&f.nu),
    })
}

pub fn component_json(c: &MGraphComponent) -> Value {
    let verdict = match &c.verdict {
        Verdict::Bounded => json!({"kind": "bounded"}),
        Verdict::UnboundedCertified { from, to } => json!({"kind": "unbounded", "from": from, "to": to}),
        Verdict::CapExceeded(cap) => json!({"kind": "cap_exceeded", "cap": cap}),
    };
    json!({"representative": c.representative, "vertices": c.vertices, "verdict": verdict})
}

pub fn window_verdict_json(v: &WindowVerdict) -> Value {
    match v {
        WindowVerdict::ZeroOnWindow { reliable } => json!({"kind": "zero_on_window", "reliable": reliable}),
        WindowVerdict::Nonzero { exponent, coeff } => json!({
            "kind": "nonzero",
            "exponent": exponent.iter().map(rat_json).collect::<Vec<_>>(),
            "coeff": rat_json(coeff),
        }),
        WindowVerdict::Inconclusive => json!({"kind": "inconclusive"}),
    }
}

pub fn annihilation_json(gens: &[WeylOperator], report: &AnnihilationReport) -> Value {
    Value::Array(
        gens.iter()
            .zip(&report.verdicts)
            .map(|(g, v)| json!({"operator": g.to_string(), "verdict": window_verdict_json(v)}))
            .collect(),
    )
}

pub fn system_json(s: &SystemSpec) -> Value {
    json!({
        "kind": s.kind.name(),
        "A": matrix_json(&s.a),
        "B": s.b.as_ref().map(matrix_json),
        "beta": rat_vector_json(&s.beta),
        "binomials": operators_json(&s.binomials),
        "monomials": operators_json(&s.monomials),
        "euler": operators_json(&s.euler),
        "notes": s.notes,
    })
}

/// Column and row indices are reported 1-based.
pub fn decomposition_json(d: &BlockDecomposition) -> Value {
    let one = |v: &[usize]| v.iter().map(|j| j + 1).collect::<Vec<_>>();
    json!({
        "jbar": one(&d.jbar),
        "j": one(&d.j),
        "p_cols": one(&d.p_cols),
        "rest_cols": one(&d.rest_cols),
        "M": matrix_json(&d.m),
        "N": matrix_json(&d.n),
        "B_J": matrix_json(&d.b_j),
        "class": d.class.name(),
        "irreducibility": if d.irreducibility_verified { "verified" } else { "unverified" },
    })
}

/// Pretty-printed with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}
