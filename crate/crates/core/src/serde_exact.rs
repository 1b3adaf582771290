//! Serializers writing exact values as strings: rationals as `"num/den"`,
//! integers in decimal.

use serde::ser::{SerializeSeq, Serializer};

use crate::exact::{rational_string, ArbitraryInteger, ExactRational};

pub fn rational<S: Serializer>(q: &ExactRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(q))
}

pub fn opt_rational<S: Serializer>(q: &Option<ExactRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => rational(q, s),
        None => s.serialize_none(),
    }
}

pub fn rationals<S: Serializer>(qs: &[ExactRational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(qs.len()))?;
    for q in qs {
        seq.serialize_element(&rational_string(q))?;
    }
    seq.end()
}

pub fn integer<S: Serializer>(v: &ArbitraryInteger, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn opt_integer<S: Serializer>(v: &Option<ArbitraryInteger>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => integer(v, s),
        None => s.serialize_none(),
    }
}
