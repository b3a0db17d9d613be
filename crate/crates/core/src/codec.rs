//! JSON documents for nets `{"ring", "A", "B", "C"}` and forms `{"ring", "Q"}`,
//! with entries in any ring a [`RingSpec`] describes.

use serde_json::{json, Value};

use crate::algebra::json::{matrix_from_json, matrix_to_json, ring_from_json, ring_to_json};
use crate::algebra::{AlgebraError, Matrix, RingSpec, Scalar};
use crate::forms::{AlternatingNet, TernarySymForm};

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, AlgebraError> {
    v.get(key).ok_or_else(|| AlgebraError::Parse(format!("document needs `{key}`")))
}

fn coerced(v: &Value, spec: &RingSpec) -> Result<Matrix<Scalar>, AlgebraError> {
    let m = matrix_from_json(v, spec)?;
    let data = m.entries().iter().map(|x| spec.coerce(x)).collect::<Result<Vec<_>, _>>()?;
    Matrix::new(m.rows(), m.cols(), data)
}

pub fn net_from_json(v: &Value) -> Result<(RingSpec, AlternatingNet<Scalar>), AlgebraError> {
    let spec = ring_from_json(field(v, "ring")?)?;
    let [a, b, c] = ["A", "B", "C"].map(|k| field(v, k).and_then(|m| coerced(m, &spec)));
    Ok((spec, AlternatingNet::new(a?, b?, c?)?))
}

pub fn net_to_json(spec: &RingSpec, net: &AlternatingNet<Scalar>) -> Value {
    json!({
        "ring": ring_to_json(spec),
        "A": matrix_to_json(net.a()),
        "B": matrix_to_json(net.b()),
        "C": matrix_to_json(net.c()),
    })
}

pub fn form_from_json(v: &Value) -> Result<(RingSpec, TernarySymForm<Scalar>), AlgebraError> {
    let spec = ring_from_json(field(v, "ring")?)?;
    let q = coerced(field(v, "Q")?, &spec)?;
    Ok((spec, TernarySymForm::new(q)?))
}

pub fn form_to_json(spec: &RingSpec, q: &TernarySymForm<Scalar>) -> Value {
    json!({"ring": ring_to_json(spec), "Q": matrix_to_json(q.matrix())})
}

/// Lifts an integer or rational form to ℚ.
pub fn rational_form(q: &TernarySymForm<Scalar>) -> Result<TernarySymForm<num_rational::BigRational>, AlgebraError> {
    q.try_map(|x| x.as_rational().ok_or_else(|| AlgebraError::RingMismatch("form is not over ZZ or QQ".into())))
}

/// An integer form over ℤ.
pub fn integer_form(q: &TernarySymForm<Scalar>) -> Result<TernarySymForm<num_bigint::BigInt>, AlgebraError> {
    q.try_map(|x| x.as_integer().ok_or_else(|| AlgebraError::RingMismatch("form is not over ZZ".into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    #[test]
    fn split_documents_round_trip() {
        for spec in [RingSpec::Integer, RingSpec::Prime(2), RingSpec::Extension { p: 3, degree: 2 }] {
            let zero = spec.zero().unwrap();
            let net = AlternatingNet::split(&zero);
            let doc = net_to_json(&spec, &net);
            let (s2, back) = net_from_json(&doc).unwrap();
            assert_eq!(s2, spec);
            assert_eq!(back, net);
            let q = TernarySymForm::split(&zero);
            assert_eq!(form_from_json(&form_to_json(&spec, &q)).unwrap().1, q);
        }
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(net_from_json(&json!({"ring": {"kind": "IntegerRing"}})).is_err());
        let bad = json!({"ring": {"kind": "IntegerRing"}, "Q": {"rows": 3, "cols": 3, "entries": ["1","2","0","0","1","0","0","0","1"]}});
        assert!(form_from_json(&bad).is_err());
        let q = json!({"ring": {"kind": "IntegerRing"}, "Q": {"rows": 3, "cols": 3, "entries": ["1","0","0","0","1","0","0","0","1"]}});
        let (_, form) = form_from_json(&q).unwrap();
        assert!(integer_form(&form).unwrap().det().is_one());
    }
}
