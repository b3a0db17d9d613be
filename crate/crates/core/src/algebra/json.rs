//! JSON codecs for rings, scalars, polynomials and matrices.
//!
//! Scalars are strings: decimal, `num/den`, or the element index for 𝔽_{p^n}.
//! Polynomials are `{"vars": [...], "terms": [[[e1,…,en], "c"], …]}` with terms
//! in canonical order; matrices are `{"rows", "cols", "entries"}` row-major.

use serde_json::{json, Map, Value};

use super::error::AlgebraError;
use super::gf::GfField;
use super::matrix::Matrix;
use super::poly::{Polynomial, VarSet};
use super::scalar::{RingSpec, Scalar};

fn parse_err(msg: impl Into<String>) -> AlgebraError {
    AlgebraError::Parse(msg.into())
}

pub fn ring_to_json(spec: &RingSpec) -> Value {
    match spec {
        RingSpec::Integer => json!({"kind": "IntegerRing"}),
        RingSpec::Rational => json!({"kind": "RationalField"}),
        RingSpec::Prime(p) => json!({"kind": "PrimeField", "p": p}),
        RingSpec::Extension { p, degree } => {
            let modulus = GfField::new(*p, *degree).map(|f| f.modulus().to_vec()).unwrap_or_default();
            json!({"kind": "ExtensionField", "p": p, "degree": degree, "modulus": modulus})
        }
        RingSpec::Truncated { base, vars } => {
            let caps: Map<String, Value> = vars.iter().map(|(n, c)| (n.clone(), json!(c))).collect();
            json!({
                "kind": "TruncatedPolyRing",
                "base": ring_to_json(base),
                "vars": vars.iter().map(|v| v.0.clone()).collect::<Vec<_>>(),
                "caps": caps,
            })
        }
    }
}

fn field_u64(v: &Value, key: &str) -> Result<u64, AlgebraError> {
    v.get(key).and_then(Value::as_u64).ok_or_else(|| parse_err(format!("ring needs integer `{key}`")))
}

pub fn ring_from_json(v: &Value) -> Result<RingSpec, AlgebraError> {
    let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| parse_err("ring needs `kind`"))?;
    let spec = match kind {
        "IntegerRing" => RingSpec::Integer,
        "RationalField" => RingSpec::Rational,
        "PrimeField" => RingSpec::Prime(field_u64(v, "p")?),
        "ExtensionField" => {
            let p = field_u64(v, "p")?;
            let degree = u32::try_from(field_u64(v, "degree")?).map_err(|_| parse_err("degree too large"))?;
            let spec = RingSpec::Extension { p, degree };
            spec.validate()?;
            if let Some(m) = v.get("modulus") {
                let m: Vec<u64> = serde_json::from_value(m.clone()).map_err(|e| parse_err(e.to_string()))?;
                let fixed = GfField::new(p, degree)?.modulus().to_vec();
                if m != fixed {
                    return Err(AlgebraError::InvalidRing(format!(
                        "modulus {m:?} differs from the fixed modulus {fixed:?}"
                    )));
                }
            }
            spec
        }
        "TruncatedPolyRing" => {
            let base = ring_from_json(v.get("base").ok_or_else(|| parse_err("truncated ring needs `base`"))?)?;
            let names: Vec<String> = serde_json::from_value(v.get("vars").cloned().unwrap_or(Value::Null))
                .map_err(|e| parse_err(format!("`vars`: {e}")))?;
            let caps =
                v.get("caps").and_then(Value::as_object).ok_or_else(|| parse_err("truncated ring needs `caps`"))?;
            let vars = names
                .into_iter()
                .map(|n| {
                    let c = caps
                        .get(&n)
                        .and_then(Value::as_u64)
                        .and_then(|c| u16::try_from(c).ok())
                        .ok_or_else(|| parse_err(format!("missing cap for `{n}`")))?;
                    Ok((n, c))
                })
                .collect::<Result<Vec<_>, AlgebraError>>()?;
            RingSpec::Truncated { base: Box::new(base), vars }
        }
        other => return Err(parse_err(format!("unknown ring kind `{other}`"))),
    };
    spec.validate()?;
    Ok(spec)
}

pub fn scalar_from_json(v: &Value, spec: &RingSpec) -> Result<Scalar, AlgebraError> {
    match v {
        Value::String(s) => spec.parse(s),
        Value::Number(n) => spec.parse(&n.to_string()),
        _ => Err(parse_err(format!("expected a scalar string, got {v}"))),
    }
}

pub fn poly_to_json(p: &Polynomial<Scalar>) -> Value {
    let terms: Vec<Value> = p.terms().iter().map(|(e, c)| json!([e.to_vec(), c.encode()])).collect();
    json!({"vars": p.vars().names(), "terms": terms})
}

/// Decodes a polynomial; variables named in a truncated `spec` get its caps.
pub fn poly_from_json(v: &Value, spec: &RingSpec) -> Result<Polynomial<Scalar>, AlgebraError> {
    let names: Vec<String> = serde_json::from_value(v.get("vars").cloned().unwrap_or(Value::Null))
        .map_err(|e| parse_err(format!("polynomial `vars`: {e}")))?;
    let capped: Vec<(String, u16)> = match spec {
        RingSpec::Truncated { vars, .. } => vars.clone(),
        _ => Vec::new(),
    };
    let vars =
        VarSet::with_caps(names.iter().map(|n| (n.clone(), capped.iter().find(|(m, _)| m == n).map(|(_, c)| *c))))?;
    let zero = spec.zero()?;
    let raw = v.get("terms").and_then(Value::as_array).ok_or_else(|| parse_err("polynomial needs `terms`"))?;
    let mut terms = Vec::with_capacity(raw.len());
    for t in raw {
        let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| parse_err("term must be [exponents, coeff]"))?;
        let e: Vec<u16> = serde_json::from_value(pair[0].clone()).map_err(|e| parse_err(format!("exponents: {e}")))?;
        let c = scalar_from_json(&pair[1], spec)?;
        terms.push((e, c));
    }
    Polynomial::from_terms(vars, &zero, terms)
}

pub fn matrix_to_json(m: &Matrix<Scalar>) -> Value {
    let entries: Vec<String> = m.entries().iter().map(Scalar::encode).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

fn matrix_shape(v: &Value) -> Result<(usize, usize, &Vec<Value>), AlgebraError> {
    let r = v.get("rows").and_then(Value::as_u64).ok_or_else(|| parse_err("matrix needs `rows`"))? as usize;
    let c = v.get("cols").and_then(Value::as_u64).ok_or_else(|| parse_err("matrix needs `cols`"))? as usize;
    let e = v.get("entries").and_then(Value::as_array).ok_or_else(|| parse_err("matrix needs `entries`"))?;
    if r == 0 || c == 0 {
        return Err(parse_err("matrix dimensions must be positive"));
    }
    Ok((r, c, e))
}

pub fn matrix_from_json(v: &Value, spec: &RingSpec) -> Result<Matrix<Scalar>, AlgebraError> {
    let (r, c, e) = matrix_shape(v)?;
    let data = e.iter().map(|x| scalar_from_json(x, spec)).collect::<Result<Vec<_>, _>>()?;
    Matrix::new(r, c, data)
}

pub fn poly_matrix_to_json(m: &Matrix<Polynomial<Scalar>>) -> Value {
    let entries: Vec<Value> = m.entries().iter().map(poly_to_json).collect();
    json!({"rows": m.rows(), "cols": m.cols(), "entries": entries})
}

pub fn poly_matrix_from_json(v: &Value, spec: &RingSpec) -> Result<Matrix<Polynomial<Scalar>>, AlgebraError> {
    let (r, c, e) = matrix_shape(v)?;
    let data = e.iter().map(|x| poly_from_json(x, spec)).collect::<Result<Vec<_>, _>>()?;
    Matrix::new(r, c, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::PolyRing;
    use crate::algebra::ring::Ring;

    #[test]
    fn ring_round_trip() {
        let specs = [
            RingSpec::Integer,
            RingSpec::Rational,
            RingSpec::Prime(7),
            RingSpec::Extension { p: 3, degree: 2 },
            RingSpec::Truncated { base: Box::new(RingSpec::Prime(2)), vars: vec![("f1".into(), 2), ("f2".into(), 2)] },
        ];
        for s in specs {
            assert_eq!(ring_from_json(&ring_to_json(&s)).unwrap(), s);
        }
    }

    #[test]
    fn wrong_modulus_is_rejected() {
        let v = json!({"kind": "ExtensionField", "p": 2, "degree": 2, "modulus": [1, 0, 1]});
        assert!(ring_from_json(&v).is_err());
    }

    #[test]
    fn polynomial_round_trip_is_bit_exact() {
        let spec = RingSpec::Rational;
        let r = PolyRing::new(VarSet::new(["x", "y"]), &spec.zero().unwrap());
        let p = r.var("x") * &r.var("y") - &r.constant(spec.parse("3/4").unwrap()) + &r.var("y");
        let j = poly_to_json(&p);
        let back = poly_from_json(&j, &spec).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&poly_to_json(&back)).unwrap(), serde_json::to_string(&j).unwrap());
    }

    #[test]
    fn truncated_polynomials_keep_caps() {
        let spec = RingSpec::Truncated { base: Box::new(RingSpec::Prime(2)), vars: vec![("t".into(), 2)] };
        let v = json!({"vars": ["t"], "terms": [[[1], "1"]]});
        let t = poly_from_json(&v, &spec).unwrap();
        assert!((t.clone() * &t).is_zero());
    }

    #[test]
    fn matrix_round_trip() {
        let spec = RingSpec::Extension { p: 2, degree: 2 };
        let w = spec.parse("w").unwrap();
        let m = Matrix::diagonal(&[w.clone(), w.one_like()]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m), &spec).unwrap(), m);
    }
}
