//! Extended-real helpers.
//!
//! `f64` already carries ±∞; these helpers pin down the two places where IEEE
//! semantics are not what the deciders need: `-∞ - -∞` (a tie, not NaN) and
//! JSON, which has no infinity literal.

/// `a - b` over the extended reals, with equal infinities treated as a tie.
pub fn sub(a: f64, b: f64) -> f64 {
    if a.is_infinite() && a == b {
        0.0
    } else {
        a - b
    }
}

/// Formats with `+inf` / `-inf` for the infinities.
pub fn fmt(x: f64) -> String {
    if x == f64::INFINITY {
        "+inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{x}")
    }
}

pub fn parse(s: &str) -> Option<f64> {
    match s.trim() {
        "+inf" | "inf" | "+∞" | "∞" => Some(f64::INFINITY),
        "-inf" | "-∞" => Some(f64::NEG_INFINITY),
        other => other.parse().ok(),
    }
}

/// Serde adapter: finite values as JSON numbers, infinities as `"+inf"` / `"-inf"`
/// and NaN as `"NaN"`.
pub mod serde_f64 {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(*x)
        } else {
            s.serialize_str(&super::fmt(*x))
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(x) => Ok(x),
            Repr::Str(s) => super::parse(&s).ok_or_else(|| de::Error::custom(format!("bad number {s:?}"))),
        }
    }
}

/// Same as [`serde_f64`] for `Option<f64>`.
pub mod serde_opt_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => super::serde_f64::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    #[derive(Deserialize)]
    struct Wrap(#[serde(with = "super::serde_f64")] f64);

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}
