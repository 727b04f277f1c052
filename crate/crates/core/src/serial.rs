//! JSON representations shared by the reports: exact rationals as decimal
//! strings, complex rationals, and divisor classes as term lists.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::picard::{DivisorClass, Generator};
use crate::Rational;

/// `{"num": "-3", "den": "2"}`. On input, a bare integer or a string such as
/// `"-3/2"` is accepted as well.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for ExactRational {
    fn from(r: &Rational) -> Self {
        ExactRational { num: r.numer().to_string(), den: r.denom().to_string() }
    }
}

impl TryFrom<ExactRational> for Rational {
    type Error = String;
    fn try_from(e: ExactRational) -> Result<Self, String> {
        let num = BigInt::from_str(&e.num).map_err(|err| err.to_string())?;
        let den = BigInt::from_str(&e.den).map_err(|err| err.to_string())?;
        if den == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(num, den))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RationalInput {
    Exact(ExactRational),
    Int(i64),
    Text(String),
}

fn parse_rational(input: RationalInput) -> Result<Rational, String> {
    match input {
        RationalInput::Exact(e) => e.try_into(),
        RationalInput::Int(i) => Ok(crate::q(i)),
        RationalInput::Text(t) => Rational::from_str(t.trim()).map_err(|e| format!("{t:?}: {e}")),
    }
}

/// `#[serde(with = "crate::serial::rational")]`.
pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        ExactRational::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        parse_rational(RationalInput::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Same as [`rational`] for a vector.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ExactRational::from))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<RationalInput>::deserialize(d)?
            .into_iter()
            .map(|x| parse_rational(x).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// `{"re": ..., "im": ...}` with exact rational parts; `im` may be omitted.
pub mod complex {
    use super::*;

    #[derive(Serialize)]
    struct Out {
        re: ExactRational,
        im: ExactRational,
    }

    #[derive(Deserialize)]
    struct In {
        re: RationalInput,
        im: Option<RationalInput>,
    }

    pub fn serialize<S: Serializer>(z: &Complex<Rational>, s: S) -> Result<S::Ok, S::Error> {
        Out { re: (&z.re).into(), im: (&z.im).into() }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex<Rational>, D::Error> {
        let raw = In::deserialize(d)?;
        let re = parse_rational(raw.re).map_err(serde::de::Error::custom)?;
        let im = match raw.im {
            Some(i) => parse_rational(i).map_err(serde::de::Error::custom)?,
            None => crate::q(0),
        };
        Ok(Complex::new(re, im))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassTerm {
    pub generator: Generator,
    pub num: String,
    pub den: String,
}

/// A class as its nonzero terms in coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub g: u32,
    pub n: u32,
    pub terms: Vec<ClassTerm>,
}

impl From<&DivisorClass<Rational>> for ClassJson {
    fn from(c: &DivisorClass<Rational>) -> Self {
        let terms = c
            .terms()
            .into_iter()
            .map(|(generator, v)| {
                let e = ExactRational::from(&v);
                ClassTerm { generator, num: e.num, den: e.den }
            })
            .collect();
        ClassJson { g: c.genus(), n: c.markings(), terms }
    }
}

impl TryFrom<&ClassJson> for DivisorClass<Rational> {
    type Error = String;
    fn try_from(j: &ClassJson) -> Result<Self, String> {
        let mut c = DivisorClass::zero(j.g, j.n);
        for t in &j.terms {
            let v: Rational = ExactRational { num: t.num.clone(), den: t.den.clone() }.try_into()?;
            match t.generator {
                Generator::Lambda => c.add_lambda(v),
                Generator::Delta0 => c.add_delta0(v),
                Generator::Psi(i) if i >= 1 && i <= j.n => c.add_psi(i, v),
                Generator::Psi(i) => return Err(format!("ψ{i} out of range")),
                Generator::Boundary(b) => c.add_boundary(b, v),
            }
        }
        c.validate().map_err(|e| e.to_string())?;
        Ok(c)
    }
}
