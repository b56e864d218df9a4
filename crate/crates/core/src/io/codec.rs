//! Canonical JSON encodings of the algebraic values.
//!
//! * Scalar: `"p/q"` or `"p/q+r/s*i"`
//! * Poly: `[{"c": Scalar, "exp": [e₁, …, eₙ]}, …]`
//! * Polyform: `[{"coeff": Poly, "blade": [i₁, …]}, …]`
//! * Vector: `[Poly, …]` of length `n`

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::{Blade, Monomial, Poly, Polyform, Scalar, Vector};
use crate::linalg::Matrix;

/// Values with a canonical JSON encoding and a notion of vanishing, used for
/// report residuals.
pub trait Encode {
    fn encode(&self) -> Value;
    fn is_zero_value(&self) -> bool;
}

impl Encode for Scalar {
    fn encode(&self) -> Value {
        Value::String(self.to_string())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Encode for Poly {
    fn encode(&self) -> Value {
        encode_poly(self, self.max_variable())
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Encode for Polyform {
    fn encode(&self) -> Value {
        encode_form(self)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Encode for Vector {
    fn encode(&self) -> Value {
        encode_vector(self)
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl Encode for Matrix {
    fn encode(&self) -> Value {
        Value::Array(
            (0..self.rows())
                .map(|i| Value::Array(self.row(i).iter().map(Encode::encode).collect()))
                .collect(),
        )
    }
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

impl<A: Encode, B: Encode> Encode for (A, B) {
    fn encode(&self) -> Value {
        json!([self.0.encode(), self.1.encode()])
    }
    fn is_zero_value(&self) -> bool {
        self.0.is_zero_value() && self.1.is_zero_value()
    }
}

impl<T: Encode> Encode for Vec<T> {
    fn encode(&self) -> Value {
        Value::Array(self.iter().map(Encode::encode).collect())
    }
    fn is_zero_value(&self) -> bool {
        self.iter().all(Encode::is_zero_value)
    }
}

pub fn encode_poly(p: &Poly, n: usize) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!({"c": c.to_string(), "exp": m.padded(n)}))
            .collect(),
    )
}

pub fn encode_form(f: &Polyform) -> Value {
    Value::Array(
        f.terms()
            .map(|(b, p)| json!({"coeff": encode_poly(p, f.dim()), "blade": b.indices()}))
            .collect(),
    )
}

pub fn encode_vector(v: &Vector) -> Value {
    Value::Array(v.components().iter().map(|p| encode_poly(p, v.dim())).collect())
}

pub fn decode_scalar(v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n
            .as_i64()
            .map(Scalar::int)
            .ok_or_else(|| Error::Input(format!("non-integer JSON number {n}; write it as \"p/q\""))),
        other => Err(Error::Input(format!("expected a scalar, found {other}"))),
    }
}

/// Decodes a canonical Poly list, or a bare scalar as a constant.
pub fn decode_poly(v: &Value, n: usize) -> Result<Poly> {
    match v {
        Value::Array(items) => {
            let mut p = Poly::zero();
            for it in items {
                let c = decode_scalar(
                    it.get("c")
                        .ok_or_else(|| Error::Input("monomial lacks \"c\"".into()))?,
                )?;
                let exps = match it.get("exp") {
                    None => Vec::new(),
                    Some(Value::Array(es)) => es
                        .iter()
                        .map(|e| {
                            e.as_u64()
                                .map(|x| x as u32)
                                .ok_or_else(|| Error::Input(format!("bad exponent {e}")))
                        })
                        .collect::<Result<Vec<u32>>>()?,
                    Some(other) => {
                        return Err(Error::Input(format!("bad exponent list {other}")))
                    }
                };
                let m = Monomial::from_exponents(&exps);
                if m.span() > n {
                    return Err(Error::Input(format!(
                        "monomial uses variable x{} beyond frame dimension {n}",
                        m.span()
                    )));
                }
                p.add_term(m, c);
            }
            Ok(p)
        }
        other => Ok(Poly::constant(decode_scalar(other)?)),
    }
}

pub fn decode_form_canonical(v: &Value, dim: usize) -> Result<Polyform> {
    let Value::Array(items) = v else {
        return Err(Error::Input(format!("expected a Polyform list, found {v}")));
    };
    let mut terms = Vec::new();
    for it in items {
        let blade = match it.get("blade") {
            Some(Value::Array(idx)) => {
                let idx: Vec<usize> = idx
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|k| k as usize)
                            .ok_or_else(|| Error::Input(format!("bad blade index {x}")))
                    })
                    .collect::<Result<_>>()?;
                Blade::from_indices(&idx)?
            }
            _ => return Err(Error::Input("term lacks a \"blade\" list".into())),
        };
        let coeff = decode_poly(
            it.get("coeff")
                .ok_or_else(|| Error::Input("term lacks \"coeff\"".into()))?,
            dim,
        )?;
        terms.push((blade, coeff));
    }
    Polyform::from_terms(dim, terms)
}

pub fn decode_vector_canonical(v: &Value, dim: usize) -> Result<Vector> {
    let Value::Array(items) = v else {
        return Err(Error::Input(format!("expected a Vector list, found {v}")));
    };
    if items.len() != dim {
        return Err(Error::dims(dim, items.len()));
    }
    Ok(Vector::new(
        items
            .iter()
            .map(|p| decode_poly(p, dim))
            .collect::<Result<_>>()?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn form_round_trip() {
        let x1 = Poly::var(1);
        let f = &Polyform::basis(3, &[1, 3]).mul_poly(&x1)
            + &Polyform::constant(3, Scalar::ratio(1, 2) + Scalar::i());
        let enc = encode_form(&f);
        assert_eq!(enc[0]["blade"], json!([]));
        assert_eq!(enc[0]["coeff"][0]["c"], "1/2+1/1*i");
        assert_eq!(enc[1]["coeff"][0]["exp"], json!([1, 0, 0]));
        assert_eq!(decode_form_canonical(&enc, 3).unwrap(), f);
    }

    #[test]
    fn vector_round_trip() {
        let v = Vector::basis(2, 2).mul_poly(&Poly::var(1));
        assert_eq!(decode_vector_canonical(&encode_vector(&v), 2).unwrap(), v);
        assert!(decode_vector_canonical(&encode_vector(&v), 3).is_err());
    }

    #[test]
    fn rejects_out_of_frame_data() {
        let bad = json!([{"coeff": [{"c": "1/1", "exp": []}], "blade": [4]}]);
        assert!(decode_form_canonical(&bad, 3).is_err());
        let bad = json!([{"c": "1/1", "exp": [0, 0, 0, 1]}]);
        assert!(decode_poly(&bad, 3).is_err());
    }
}
