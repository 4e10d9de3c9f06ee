//! JSON encodings of field elements, automorphisms and polynomials.

use anyhow::{anyhow, bail, Result};
use serde_json::{json, Map, Value};

use antimorph_core::ground::RatFn;
use antimorph_core::laurent::LaurentPoly;
use antimorph_core::{FiniteField, FrobeniusTower, FunctionField, Ground};

/// A backend whose elements and automorphisms can be read from and written
/// to JSON.
pub trait Codec: Ground {
    fn decode(&self, v: &Value) -> Result<Self::Elem>;
    fn encode(&self, x: &Self::Elem) -> Value;

    fn decode_aut(&self, v: &Value) -> Result<Self::Aut> {
        let name = v.as_str().ok_or_else(|| anyhow!("automorphisms are given by name, found {v}"))?;
        self.automorphism(name).ok_or_else(|| {
            let known: Vec<String> = self.automorphisms().into_iter().map(|(n, _)| n).collect();
            anyhow!("unknown automorphism {name:?}; known: {}", known.join(", "))
        })
    }

    fn encode_aut(&self, g: &Self::Aut) -> Value {
        match self.aut_name(g) {
            Some(n) => Value::String(n),
            None => Value::String(self.fmt_aut(g)),
        }
    }

    fn encode_laurent(&self, f: &LaurentPoly<Self::Elem>) -> Value {
        let map: Map<String, Value> = f.terms().iter().map(|(j, c)| (j.to_string(), self.encode(c))).collect();
        Value::Object(map)
    }
}

/// Reads `GF(p)` digits, lowest first, into an element code of `f`.
pub fn decode_digits(f: &FiniteField, v: &Value) -> Result<u32> {
    let arr = v.as_array().ok_or_else(|| anyhow!("finite field elements are coefficient arrays, found {v}"))?;
    let digits = arr
        .iter()
        .map(|d| d.as_u64().and_then(|d| u32::try_from(d).ok()).ok_or_else(|| anyhow!("bad coefficient {d}")))
        .collect::<Result<Vec<u32>>>()?;
    f.from_digits(&digits)
        .ok_or_else(|| anyhow!("{v} is not an element of GF({}^{})", f.p(), f.degree()))
}

pub fn encode_digits(f: &FiniteField, x: u32) -> Value {
    json!(f.digits(x))
}

impl Codec for FrobeniusTower {
    fn decode(&self, v: &Value) -> Result<u32> {
        decode_digits(self.field(), v)
    }

    fn encode(&self, x: &u32) -> Value {
        encode_digits(self.field(), *x)
    }
}

impl Codec for FunctionField {
    /// `{"num": [...], "den": [...]}` with coefficients given as element
    /// codes of `GF(q)`, lowest degree first; `den` defaults to `[1]`.
    fn decode(&self, v: &Value) -> Result<RatFn> {
        let obj = v.as_object().ok_or_else(|| anyhow!("function field elements are {{num, den}} objects, found {v}"))?;
        if let Some(k) = obj.keys().find(|k| *k != "num" && *k != "den") {
            bail!("unknown key {k:?} in function field element");
        }
        let q = self.constants().order();
        let poly = |key: &str, default: Vec<u32>| -> Result<Vec<u32>> {
            match obj.get(key) {
                None => Ok(default),
                Some(p) => p
                    .as_array()
                    .ok_or_else(|| anyhow!("{key} must be an array"))?
                    .iter()
                    .map(|c| {
                        c.as_u64()
                            .and_then(|c| u32::try_from(c).ok())
                            .filter(|&c| c < q)
                            .ok_or_else(|| anyhow!("bad coefficient {c} in {key}"))
                    })
                    .collect(),
            }
        };
        let num = poly("num", Vec::new())?;
        let den = poly("den", vec![1])?;
        self.ratio(num, den).ok_or_else(|| anyhow!("zero denominator in {v}"))
    }

    fn encode(&self, x: &RatFn) -> Value {
        json!({ "num": x.num, "den": x.den })
    }
}
