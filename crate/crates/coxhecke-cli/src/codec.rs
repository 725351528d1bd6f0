//! JSON encodings of the scalar types.
//!
//! Rationals are numbers when they are integers in i64 range and "p/q" strings otherwise;
//! a cyclotomic is `{conductor, coords}`; a Laurent polynomial is an array of
//! `[exponent, coords, conductor]` triples in ascending exponent.

use coxhecke::ring::{Cyc, Laurent, Rat};
use serde_json::{json, Value};

use crate::error::CliError;

fn bad(what: &str, v: &Value) -> CliError {
    CliError::Input(format!("expected {what}, found {v}"))
}

pub fn rat_to_json(q: &Rat) -> Value {
    match q.to_i64() {
        Some(n) => json!(n),
        None => json!(q.to_string()),
    }
}

pub fn rat_from_json(v: &Value) -> Result<Rat, CliError> {
    match v {
        Value::Number(n) => n.as_i64().map(Rat::int).ok_or_else(|| bad("an integer or \"p/q\" string", v)),
        Value::String(s) => s.trim().parse().map_err(|_| bad("a rational", v)),
        _ => Err(bad("a rational", v)),
    }
}

pub fn cyc_to_json(c: &Cyc) -> Value {
    json!({
        "conductor": c.conductor(),
        "coords": c.coords().iter().map(rat_to_json).collect::<Vec<_>>(),
    })
}

fn coords_from_json(v: &Value) -> Result<Vec<Rat>, CliError> {
    v.as_array().ok_or_else(|| bad("a coordinate array", v))?.iter().map(rat_from_json).collect()
}

fn conductor_from_json(v: &Value) -> Result<u32, CliError> {
    v.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| bad("a conductor", v))
}

/// Accepts a plain rational or a `{conductor, coords}` object.
pub fn cyc_from_json(v: &Value) -> Result<Cyc, CliError> {
    match v {
        Value::Object(m) => {
            let n = conductor_from_json(m.get("conductor").ok_or_else(|| bad("a conductor field", v))?)?;
            let coords = coords_from_json(m.get("coords").ok_or_else(|| bad("a coords field", v))?)?;
            Ok(Cyc::new(n, &coords)?)
        }
        _ => Ok(Cyc::rational(rat_from_json(v)?)),
    }
}

pub fn laurent_to_json(p: &Laurent) -> Value {
    Value::Array(
        p.terms()
            .iter()
            .map(|(e, c)| json!([e, c.coords().iter().map(rat_to_json).collect::<Vec<_>>(), c.conductor()]))
            .collect(),
    )
}

pub fn laurent_from_json(v: &Value) -> Result<Laurent, CliError> {
    let terms = v.as_array().ok_or_else(|| bad("a Laurent polynomial", v))?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let [e, coords, n] = t.as_array().map(|a| a.as_slice()).unwrap_or_default() else {
            return Err(bad("an [exponent, coords, conductor] triple", t));
        };
        let e = e.as_i64().and_then(|e| i32::try_from(e).ok()).ok_or_else(|| bad("an exponent", e))?;
        out.push((e, Cyc::new(conductor_from_json(n)?, &coords_from_json(coords)?)?));
    }
    Ok(Laurent::from_terms(out))
}

pub fn word_to_json(word: &[usize]) -> Value {
    json!(word)
}

pub fn word_from_json(v: &Value) -> Result<Vec<usize>, CliError> {
    v.as_array()
        .ok_or_else(|| bad("a word", v))?
        .iter()
        .map(|s| s.as_u64().map(|s| s as usize).ok_or_else(|| bad("a generator index", s)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let q = Rat::new(-3, 7);
        assert_eq!(rat_from_json(&rat_to_json(&q)).unwrap(), q);
        let c = &Cyc::golden() + &Cyc::rational(Rat::new(1, 2));
        assert_eq!(cyc_from_json(&cyc_to_json(&c)).unwrap(), c);
        let p = Laurent::from_terms(vec![(-2, Cyc::sqrt2()), (0, Cyc::int(3)), (5, Cyc::root_of_unity(3, 1))]);
        assert_eq!(laurent_from_json(&laurent_to_json(&p)).unwrap(), p);
        assert_eq!(cyc_from_json(&json!("5/2")).unwrap(), Cyc::rational(Rat::new(5, 2)));
    }
}
