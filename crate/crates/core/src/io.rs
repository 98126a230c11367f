//! JSON formats. Integers are arbitrary precision; floats are rejected.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::arrangement::Arrangement;
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::IntVec;
use crate::polytope::HalfLatticePolytope;
use crate::poset::IntersectionPoset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Arrangement,
    Fan,
    Polytope,
    Weights,
}

pub fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Guesses the format of a document from its keys.
pub fn detect(value: &Value) -> Result<Kind> {
    let obj = value.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
    if obj.contains_key("positive_covectors") {
        Ok(Kind::Arrangement)
    } else if obj.contains_key("max_cones") {
        Ok(Kind::Fan)
    } else if obj.contains_key("doubled_vertices") {
        Ok(Kind::Polytope)
    } else if obj.contains_key("weights") {
        Ok(Kind::Weights)
    } else {
        Err(Error::Parse("unrecognised document".into()))
    }
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

pub fn int(v: &Value) -> Result<BigInt> {
    let Value::Number(n) = v else {
        return Err(Error::Parse(format!("expected an integer, got {v}")));
    };
    let s = n.to_string();
    if s.contains(['.', 'e', 'E']) {
        return Err(Error::Parse(format!("expected an integer, got {s}")));
    }
    BigInt::from_str(&s).map_err(|e| Error::Parse(e.to_string()))
}

fn index(v: &Value) -> Result<usize> {
    let i = int(v)?;
    usize::try_from(&i).map_err(|_| Error::Parse(format!("bad index {i}")))
}

pub fn int_vec(v: &Value) -> Result<IntVec> {
    v.as_array().ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))?.iter().map(int).collect()
}

fn int_rows(v: &Value) -> Result<Vec<IntVec>> {
    v.as_array().ok_or_else(|| Error::Parse("expected an array of rows".into()))?.iter().map(int_vec).collect()
}

pub fn int_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

pub fn vec_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_json).collect())
}

pub fn rows_json(rows: &[IntVec]) -> Value {
    Value::Array(rows.iter().map(|r| vec_json(r)).collect())
}

pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    arrangement_from_value(&parse_value(text)?)
}

pub fn arrangement_from_value(v: &Value) -> Result<Arrangement> {
    let rank = index(field(v, "rank")?)?;
    Arrangement::new(rank, int_rows(field(v, "positive_covectors")?)?)
}

pub fn arrangement_json(a: &Arrangement) -> Value {
    json!({ "rank": a.rank(), "positive_covectors": rows_json(a.covectors()) })
}

pub fn parse_fan(text: &str) -> Result<Fan> {
    fan_from_value(&parse_value(text)?)
}

pub fn fan_from_value(v: &Value) -> Result<Fan> {
    let rank = index(field(v, "rank")?)?;
    let rays = int_rows(field(v, "rays")?)?;
    let cones = field(v, "max_cones")?
        .as_array()
        .ok_or_else(|| Error::Parse("max_cones must be an array".into()))?
        .iter()
        .map(|c| c.as_array().ok_or_else(|| Error::Parse("cone must be an array".into()))?.iter().map(index).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    Fan::new(rank, rays, cones)
}

pub fn fan_json(f: &Fan) -> Value {
    json!({ "rank": f.rank(), "rays": rows_json(f.rays()), "max_cones": f.max_cones() })
}

pub fn polytope_from_value(v: &Value) -> Result<HalfLatticePolytope> {
    let rank = index(field(v, "rank")?)?;
    HalfLatticePolytope::from_vertices(rank, int_rows(field(v, "doubled_vertices")?)?)
}

pub fn polytope_json(p: &HalfLatticePolytope) -> Value {
    json!({ "rank": p.rank, "doubled_vertices": rows_json(&p.vertices) })
}

pub fn weights_from_value(v: &Value) -> Result<Vec<BigInt>> {
    int_vec(field(v, "weights")?)
}

pub fn weights_json(w: &[BigInt]) -> Value {
    json!({ "weights": vec_json(w) })
}

pub fn poset_json(p: &IntersectionPoset) -> Value {
    let rank = p.flats.first().map_or(0, |f| f.ambient());
    let flats: Vec<Value> =
        p.flats.iter().map(|f| json!({ "dim": f.dim(), "basis": rows_json(f.basis()) })).collect();
    let covers: Vec<Value> = p.covers.iter().map(|&(u, l)| json!([u, l])).collect();
    let mut m = Map::new();
    m.insert("rank".into(), json!(rank));
    m.insert("flats".into(), Value::Array(flats));
    m.insert("covers".into(), Value::Array(covers));
    Value::Object(m)
}

/// Pretty JSON with a trailing newline; key order is sorted, so output is
/// byte-stable.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::fan::fan_from_arrangement;

    #[test]
    fn arrangement_loading() {
        let a = parse_arrangement(r#"{"rank":2,"positive_covectors":[[1,0],[0,1]]}"#).unwrap();
        assert_eq!(a.len(), 2);
        assert!(matches!(
            parse_arrangement(r#"{"rank":2,"positive_covectors":[[2,0],[0,1]]}"#),
            Err(Error::NonPrimitive { .. })
        ));
        assert!(matches!(
            parse_arrangement(r#"{"rank":2,"positive_covectors":[[1,0],[-1,0]]}"#),
            Err(Error::Parallel { .. })
        ));
        assert!(matches!(parse_arrangement(r#"{"rank":2,"positive_covectors":[[1.0,0]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_arrangement("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn big_integers_survive() {
        let text = r#"{"weights":[123456789012345678901234567890,-1]}"#;
        let w = weights_from_value(&parse_value(text).unwrap()).unwrap();
        assert_eq!(w[0].to_string(), "123456789012345678901234567890");
        assert_eq!(serde_json::to_string(&weights_json(&w)).unwrap(), text);
    }

    #[test]
    fn fan_round_trip() {
        let f = fan_from_arrangement(&catalog("B_2").unwrap()).unwrap();
        let text = to_text(&fan_json(&f));
        assert_eq!(parse_fan(&text).unwrap(), f);
        assert_eq!(detect(&parse_value(&text).unwrap()).unwrap(), Kind::Fan);
    }
}
