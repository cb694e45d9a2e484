//! JSON encodings.
//!
//! Scalars: `"-inf"`, `"id"`, an integer, a `"p/q"` string, or `{"atom": i}`.
//! Semirings: `{"family": ..., "x", "y", "k", "size", "add", "mul", "adjoined_zero"}`
//! with only the fields relevant to the family present.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Family, FiniteSemiringTable, Scalar, Semiring};
use crate::rational::Rational;

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::NegInf => serializer.serialize_str("-inf"),
            Scalar::AdjoinedId => serializer.serialize_str("id"),
            Scalar::Rat(r) => match r.to_i64() {
                Some(n) => serializer.serialize_i64(n),
                None => serializer.collect_str(r),
            },
            Scalar::Atom(i) => {
                #[derive(Serialize)]
                struct AtomRepr {
                    atom: usize,
                }
                AtomRepr { atom: *i }.serialize(serializer)
            }
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
            Atom { atom: usize },
        }
        Ok(match Repr::deserialize(deserializer)? {
            Repr::Int(n) => Scalar::int(n),
            Repr::Str(s) => match s.trim() {
                "-inf" => Scalar::NegInf,
                "id" => Scalar::AdjoinedId,
                other => Scalar::Rat(other.parse().map_err(D::Error::custom)?),
            },
            Repr::Atom { atom } => Scalar::Atom(atom),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct SemiringRepr {
    family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    add: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mul: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    adjoined_zero: bool,
}

impl Serialize for Semiring {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut repr = SemiringRepr {
            family: self.family_name().to_string(),
            x: None,
            y: None,
            k: None,
            size: None,
            add: None,
            mul: None,
            adjoined_zero: self.adjoined_zero,
        };
        match &self.family {
            Family::Trunc { x, y } => {
                repr.x = Some(x.clone());
                repr.y = Some(y.clone());
            }
            Family::TruncNat { k } | Family::TruncNegNat { k } => repr.k = Some(*k),
            Family::Chain { size } => repr.size = Some(*size),
            Family::Table(t) => {
                repr.size = Some(t.size());
                repr.add = Some(t.add_table().to_vec());
                repr.mul = Some(t.mul_table().to_vec());
            }
            _ => {}
        }
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Semiring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = SemiringRepr::deserialize(deserializer)?;
        let missing = |field: &str| D::Error::custom(format!("family {} requires field {field:?}", repr.family));
        let family = match repr.family.as_str() {
            "tropical" => Family::Tropical,
            "nat_max" => Family::NatMax,
            "neg_nat_max" => Family::NegNatMax,
            "trunc" => Family::Trunc { x: repr.x.clone().ok_or_else(|| missing("x"))?, y: repr.y.clone().ok_or_else(|| missing("y"))? },
            "trunc_nat" => Family::TruncNat { k: repr.k.ok_or_else(|| missing("k"))? },
            "trunc_neg_nat" => Family::TruncNegNat { k: repr.k.ok_or_else(|| missing("k"))? },
            "chain" => Family::Chain { size: repr.size.ok_or_else(|| missing("size"))? },
            "boolean" => Family::Boolean,
            "table" => {
                let add = repr.add.clone().ok_or_else(|| missing("add"))?;
                let mul = repr.mul.clone().ok_or_else(|| missing("mul"))?;
                Family::Table(FiniteSemiringTable::new(add, mul).map_err(D::Error::custom)?)
            }
            other => return Err(D::Error::custom(format!("unknown semiring family {other:?}"))),
        };
        let semiring = Semiring::new(family).map_err(D::Error::custom)?;
        Ok(if repr.adjoined_zero { semiring.adjoin_zero() } else { semiring })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn scalar_encodings() {
        assert_eq!(serde_json::to_value(Scalar::NegInf).unwrap(), json!("-inf"));
        assert_eq!(serde_json::to_value(Scalar::AdjoinedId).unwrap(), json!("id"));
        assert_eq!(serde_json::to_value(Scalar::int(-4)).unwrap(), json!(-4));
        assert_eq!(serde_json::to_value(Scalar::rat(5, 2)).unwrap(), json!("5/2"));
        assert_eq!(serde_json::to_value(Scalar::Atom(3)).unwrap(), json!({"atom": 3}));
        for v in [json!("-inf"), json!("id"), json!(7), json!("-3/4"), json!({"atom": 1})] {
            let s: Scalar = serde_json::from_value(v.clone()).unwrap();
            assert_eq!(serde_json::to_value(&s).unwrap(), v);
        }
        let s: Scalar = serde_json::from_value(json!("6/4")).unwrap();
        assert_eq!(s, Scalar::rat(3, 2));
    }

    #[test]
    fn semiring_encodings() {
        let s: Semiring = serde_json::from_value(json!({"family": "trunc", "x": "1", "y": "5/2"})).unwrap();
        assert_eq!(s, Semiring::trunc(Rational::from(1), Rational::new(5, 2)).unwrap());
        let n: Semiring = serde_json::from_value(json!({"family": "nat_max", "adjoined_zero": true})).unwrap();
        assert!(n.adjoined_zero());
        let table = FiniteSemiringTable::no_identity_example();
        let t = Semiring::table(table);
        let back: Semiring = serde_json::from_value(serde_json::to_value(&t).unwrap()).unwrap();
        assert_eq!(back, t);
        assert_eq!(serde_json::to_value(Semiring::chain(4).unwrap()).unwrap(), json!({"family": "chain", "size": 4, "adjoined_zero": false}));
    }

    #[test]
    fn semiring_decode_errors() {
        assert!(serde_json::from_value::<Semiring>(json!({"family": "trunc", "x": "1"})).is_err());
        assert!(serde_json::from_value::<Semiring>(json!({"family": "trunc", "x": "2", "y": "1"})).is_err());
        assert!(serde_json::from_value::<Semiring>(json!({"family": "nope"})).is_err());
        let bad = json!({"family": "table", "add": [[0, 1], [1, 1]], "mul": [[1, 1], [0, 0]]});
        assert!(serde_json::from_value::<Semiring>(bad).is_err());
    }
}
