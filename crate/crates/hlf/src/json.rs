//! Canonical JSON file formats for nets, elements, and scaling nets.
//!
//! Net file:
//! `{"dim": d, "pieces": [{"box": [[lo,hi],...], "rule": {"kind": "const",
//! "value": int|"+inf"|"-inf"} | {"kind": "affine", "coeffs": [int,...],
//! "offset": int}}]}` with `null` for an unbounded lo/hi.
//!
//! Element file:
//! `{"dim": d, "prime": p, "terms": [{"index": [int,...], "num": int,
//! "den": positive int}]}` with coprime num/den and terms sorted strictly
//! in the inverse lexicographic order.
//!
//! Scaling net file: like a net file with `"rho": {"num": int, "den": int}
//! | "inf"` in place of the rule.
//!
//! Output is compact JSON with sorted object keys; integers of any size are
//! carried exactly. Emitting a loaded object reproduces the canonical bytes,
//! so serialization round-trips bit-exactly.

use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Number, Value};

use crate::arch::{RhoSpec, RhoValue};
use crate::element::LaurentElement;
use crate::error::{Error, Result};
use crate::extint::ExtInt;
use crate::index::MultiIndex;
use crate::net::{NetSpec, ValueRule};
use crate::region::{Interval, Region};

fn err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

fn big_to_number(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("integer literal"))
}

fn number_to_big(v: &Value, what: &str) -> Result<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string())
            .map_err(|_| err(format!("{what}: expected an integer, got {n}"))),
        other => Err(err(format!("{what}: expected an integer, got {other}"))),
    }
}

fn get<'a>(map: &'a Map<String, Value>, key: &str, ctx: &str) -> Result<&'a Value> {
    map.get(key)
        .ok_or_else(|| err(format!("{ctx}: missing field {key:?}")))
}

fn as_object<'a>(v: &'a Value, ctx: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| err(format!("{ctx}: expected an object")))
}

fn as_array<'a>(v: &'a Value, ctx: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| err(format!("{ctx}: expected an array")))
}

fn as_dim(v: &Value) -> Result<usize> {
    let d = number_to_big(v, "dim")?;
    let d = usize::try_from(&d).map_err(|_| err("dim: out of range"))?;
    if d == 0 {
        return Err(err("dim: must be at least 1"));
    }
    Ok(d)
}

fn box_to_value(region: &Region) -> Value {
    Value::Array(
        region
            .intervals
            .iter()
            .map(|iv| {
                Value::Array(vec![
                    iv.lo.as_ref().map_or(Value::Null, big_to_number),
                    iv.hi.as_ref().map_or(Value::Null, big_to_number),
                ])
            })
            .collect(),
    )
}

fn box_from_value(v: &Value, dim: usize) -> Result<Region> {
    let arr = as_array(v, "box")?;
    if arr.len() != dim {
        return Err(err(format!(
            "box: expected {dim} intervals, got {}",
            arr.len()
        )));
    }
    let mut intervals = Vec::with_capacity(dim);
    for entry in arr {
        let pair = as_array(entry, "box interval")?;
        if pair.len() != 2 {
            return Err(err("box interval: expected [lo, hi]"));
        }
        let bound = |v: &Value, what| -> Result<Option<BigInt>> {
            match v {
                Value::Null => Ok(None),
                other => number_to_big(other, what).map(Some),
            }
        };
        let iv = Interval {
            lo: bound(&pair[0], "box lo")?,
            hi: bound(&pair[1], "box hi")?,
        };
        if iv.is_empty() {
            return Err(err("box interval: lo > hi"));
        }
        intervals.push(iv);
    }
    Ok(Region::new(intervals))
}

fn extint_to_value(v: &ExtInt) -> Value {
    match v {
        ExtInt::NegInf => Value::String("-inf".into()),
        ExtInt::PosInf => Value::String("+inf".into()),
        ExtInt::Fin(n) => big_to_number(n),
    }
}

fn extint_from_value(v: &Value, what: &str) -> Result<ExtInt> {
    match v {
        Value::String(s) if s == "+inf" => Ok(ExtInt::PosInf),
        Value::String(s) if s == "-inf" => Ok(ExtInt::NegInf),
        Value::Number(_) => Ok(ExtInt::Fin(number_to_big(v, what)?)),
        other => Err(err(format!(
            "{what}: expected integer, \"+inf\" or \"-inf\", got {other}"
        ))),
    }
}

fn rule_to_value(rule: &ValueRule) -> Value {
    let mut map = Map::new();
    match rule {
        ValueRule::Const(v) => {
            map.insert("kind".into(), Value::String("const".into()));
            map.insert("value".into(), extint_to_value(v));
        }
        ValueRule::Affine { coeffs, offset } => {
            map.insert("kind".into(), Value::String("affine".into()));
            map.insert(
                "coeffs".into(),
                Value::Array(coeffs.iter().map(big_to_number).collect()),
            );
            map.insert("offset".into(), big_to_number(offset));
        }
    }
    Value::Object(map)
}

fn rule_from_value(v: &Value, dim: usize) -> Result<ValueRule> {
    let map = as_object(v, "rule")?;
    let kind = get(map, "kind", "rule")?
        .as_str()
        .ok_or_else(|| err("rule kind: expected a string"))?;
    match kind {
        "const" => Ok(ValueRule::Const(extint_from_value(
            get(map, "value", "rule")?,
            "rule value",
        )?)),
        "affine" => {
            let coeffs = as_array(get(map, "coeffs", "rule")?, "rule coeffs")?
                .iter()
                .map(|c| number_to_big(c, "rule coefficient"))
                .collect::<Result<Vec<_>>>()?;
            if coeffs.len() != dim {
                return Err(err(format!(
                    "rule coeffs: expected {dim} entries, got {}",
                    coeffs.len()
                )));
            }
            let offset = number_to_big(get(map, "offset", "rule")?, "rule offset")?;
            Ok(ValueRule::Affine { coeffs, offset })
        }
        other => Err(err(format!(
            "rule kind: expected \"const\" or \"affine\", got {other:?}"
        ))),
    }
}

/// Canonical JSON for a net.
pub fn net_to_json(net: &NetSpec) -> String {
    let mut root = Map::new();
    root.insert("dim".into(), Value::Number(Number::from(net.dim())));
    root.insert(
        "pieces".into(),
        Value::Array(
            net.pieces()
                .iter()
                .map(|(region, rule)| {
                    let mut piece = Map::new();
                    piece.insert("box".into(), box_to_value(region));
                    piece.insert("rule".into(), rule_to_value(rule));
                    Value::Object(piece)
                })
                .collect(),
        ),
    );
    serde_json::to_string(&Value::Object(root)).expect("serialization cannot fail")
}

/// Parses a net file. Structural validation only; callers needing evaluation
/// must also run [`NetSpec::validate_partition`].
pub fn net_from_json(text: &str) -> Result<NetSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let root = as_object(&value, "net")?;
    let dim = as_dim(get(root, "dim", "net")?)?;
    let pieces_value = as_array(get(root, "pieces", "net")?, "net pieces")?;
    if pieces_value.is_empty() {
        return Err(err("net pieces: must not be empty"));
    }
    let mut pieces = Vec::with_capacity(pieces_value.len());
    for piece in pieces_value {
        let map = as_object(piece, "piece")?;
        let region = box_from_value(get(map, "box", "piece")?, dim)?;
        let rule = rule_from_value(get(map, "rule", "piece")?, dim)?;
        pieces.push((region, rule));
    }
    Ok(NetSpec::new(dim, pieces))
}

fn is_small_prime(p: &BigInt) -> bool {
    let Ok(p) = u64::try_from(p) else {
        // primality of huge inputs is not checked; valuations remain exact
        // multiplicity counts either way
        return true;
    };
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Canonical JSON for an element: terms in inverse lexicographic order,
/// reduced fractions with positive denominators.
pub fn element_to_json(x: &LaurentElement) -> String {
    let mut root = Map::new();
    root.insert("dim".into(), Value::Number(Number::from(x.dim())));
    root.insert("prime".into(), big_to_number(x.prime()));
    root.insert(
        "terms".into(),
        Value::Array(
            x.terms()
                .map(|(index, coeff)| {
                    let mut term = Map::new();
                    term.insert(
                        "index".into(),
                        Value::Array(index.coords().iter().map(big_to_number).collect()),
                    );
                    term.insert("num".into(), big_to_number(coeff.numer()));
                    term.insert("den".into(), big_to_number(coeff.denom()));
                    Value::Object(term)
                })
                .collect(),
        ),
    );
    serde_json::to_string(&Value::Object(root)).expect("serialization cannot fail")
}

/// Parses an element file, enforcing the canonical form: nonzero reduced
/// coefficients, positive denominators, strictly increasing indices.
pub fn element_from_json(text: &str) -> Result<LaurentElement> {
    let value: Value = serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let root = as_object(&value, "element")?;
    let dim = as_dim(get(root, "dim", "element")?)?;
    let prime = number_to_big(get(root, "prime", "element")?, "prime")?;
    if !is_small_prime(&prime) {
        return Err(err(format!("prime: {prime} is not prime")));
    }
    let terms_value = as_array(get(root, "terms", "element")?, "element terms")?;
    let mut terms = Vec::with_capacity(terms_value.len());
    let mut previous: Option<MultiIndex> = None;
    for term in terms_value {
        let map = as_object(term, "term")?;
        let coords = as_array(get(map, "index", "term")?, "term index")?
            .iter()
            .map(|c| number_to_big(c, "index coordinate"))
            .collect::<Result<Vec<_>>>()?;
        if coords.len() != dim {
            return Err(err(format!(
                "term index: expected {dim} coordinates, got {}",
                coords.len()
            )));
        }
        let index = MultiIndex::new(coords);
        if let Some(prev) = &previous {
            if *prev >= index {
                return Err(err(format!(
                    "terms: indices must be strictly increasing (inverse lexicographic); \
                     {index} follows {prev}"
                )));
            }
        }
        let num = number_to_big(get(map, "num", "term")?, "num")?;
        let den = number_to_big(get(map, "den", "term")?, "den")?;
        if num.is_zero() {
            return Err(err("term: zero coefficients must be omitted"));
        }
        if !den.is_positive() {
            return Err(err("den: must be positive"));
        }
        if num.gcd(&den) != BigInt::one() {
            return Err(err(format!("term: {num}/{den} is not in lowest terms")));
        }
        previous = Some(index.clone());
        terms.push((index, BigRational::new_raw(num, den)));
    }
    Ok(LaurentElement::from_terms(dim, prime, terms))
}

/// Canonical JSON for a scaling net.
pub fn rho_to_json(rho: &RhoSpec) -> String {
    let mut root = Map::new();
    root.insert("dim".into(), Value::Number(Number::from(rho.dim())));
    root.insert(
        "pieces".into(),
        Value::Array(
            rho.pieces()
                .iter()
                .map(|(region, value)| {
                    let mut piece = Map::new();
                    piece.insert("box".into(), box_to_value(region));
                    let rho_value = match value {
                        RhoValue::Infinite => Value::String("inf".into()),
                        RhoValue::Finite(r) => {
                            let mut m = Map::new();
                            m.insert("num".into(), big_to_number(r.numer()));
                            m.insert("den".into(), big_to_number(r.denom()));
                            Value::Object(m)
                        }
                    };
                    piece.insert("rho".into(), rho_value);
                    Value::Object(piece)
                })
                .collect(),
        ),
    );
    serde_json::to_string(&Value::Object(root)).expect("serialization cannot fail")
}

/// Parses a scaling net file.
pub fn rho_from_json(text: &str) -> Result<RhoSpec> {
    let value: Value = serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let root = as_object(&value, "scaling net")?;
    let dim = as_dim(get(root, "dim", "scaling net")?)?;
    let pieces_value = as_array(get(root, "pieces", "scaling net")?, "pieces")?;
    if pieces_value.is_empty() {
        return Err(err("pieces: must not be empty"));
    }
    let mut pieces = Vec::with_capacity(pieces_value.len());
    for piece in pieces_value {
        let map = as_object(piece, "piece")?;
        let region = box_from_value(get(map, "box", "piece")?, dim)?;
        let rho = match get(map, "rho", "piece")? {
            Value::String(s) if s == "inf" => RhoValue::Infinite,
            Value::Object(m) => {
                let num = number_to_big(get(m, "num", "rho")?, "rho num")?;
                let den = number_to_big(get(m, "den", "rho")?, "rho den")?;
                if !den.is_positive() {
                    return Err(err("rho den: must be positive"));
                }
                RhoValue::Finite(BigRational::new(num, den))
            }
            other => Err(err(format!(
                "rho: expected {{num, den}} or \"inf\", got {other}"
            )))?,
        };
        pieces.push((region, rho));
    }
    Ok(RhoSpec::new(dim, pieces))
}
