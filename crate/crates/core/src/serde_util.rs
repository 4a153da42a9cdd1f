//! Serde helpers shared by report types: exact rationals travel as "p/q"
//! decimal strings so JSON output is lossless and human-readable.

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// One exact rational together with its float rendering, for report fields.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: String,
    pub value: f64,
}

impl ExactValue {
    pub fn new(r: &BigRational) -> Self {
        ExactValue {
            exact: r.to_string(),
            value: crate::exactpoly::rational_to_f64(r),
        }
    }
}

pub fn parse_rational<E: serde::de::Error>(s: &str) -> Result<BigRational, E> {
    s.trim()
        .parse::<BigRational>()
        .map_err(|e| E::custom(format!("bad rational {s:?}: {e}")))
}

/// `#[serde(with = "rational_strings")]` for `Vec<BigRational>`.
pub mod rational_strings {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &[BigRational],
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(v.iter().map(|r| r.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Vec<BigRational>, D::Error> {
        Vec::<String>::deserialize(deserializer)?
            .iter()
            .map(|s| parse_rational(s))
            .collect()
    }
}

/// `#[serde(with = "opt_rational_strings")]` for `Option<Vec<BigRational>>`.
pub mod opt_rational_strings {
    use super::*;

    pub fn serialize<S: Serializer>(
        v: &Option<Vec<BigRational>>,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => serializer.collect_seq(v.iter().map(|r| Some(r.to_string()))),
            None => serializer.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<Option<Vec<BigRational>>, D::Error> {
        let raw = Option::<Vec<String>>::deserialize(deserializer)?;
        raw.map(|v| v.iter().map(|s| parse_rational(s)).collect())
            .transpose()
    }
}

/// `#[serde(with = "rational_string")]` for a single `BigRational`.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(
        r: &BigRational,
        serializer: S,
    ) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        deserializer: D,
    ) -> Result<BigRational, D::Error> {
        parse_rational(&String::deserialize(deserializer)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Wrap {
        #[serde(with = "rational_strings")]
        v: Vec<BigRational>,
        #[serde(with = "opt_rational_strings")]
        o: Option<Vec<BigRational>>,
    }

    #[test]
    fn round_trip() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let w = Wrap {
            v: vec![half.clone(), BigRational::from(BigInt::from(3))],
            o: None,
        };
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"v":["1/2","3"],"o":null}"#);
        assert_eq!(serde_json::from_str::<Wrap>(&json).unwrap(), w);

        let w2 = Wrap {
            v: vec![],
            o: Some(vec![half]),
        };
        let json2 = serde_json::to_string(&w2).unwrap();
        assert_eq!(serde_json::from_str::<Wrap>(&json2).unwrap(), w2);
    }

    #[test]
    fn exact_value_renders_both_forms() {
        let ev = ExactValue::new(&BigRational::new(BigInt::from(-1229), BigInt::from(8410)));
        assert_eq!(ev.exact, "-1229/8410");
        assert!((ev.value + 0.1461355529131985).abs() < 1e-15);
    }
}
