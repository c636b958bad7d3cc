use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ExchangeLengths, Iet, IetError, Permutation};
use crate::scalar::{QuadraticReal, Rational, Scalar};

/// Which exact field the numbers of a description live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(NamedField),
    Sqrt { sqrt: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NamedField {
    Rational,
}

impl FieldSpec {
    pub const RATIONAL: FieldSpec = FieldSpec::Named(NamedField::Rational);
}

/// On-disk form of an exchange:
/// `{"n", "perm", "lambda", "origin", "field"}` with scalars as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IetDescription {
    pub n: usize,
    pub perm: Vec<usize>,
    pub lambda: Vec<String>,
    #[serde(default = "zero_string")]
    pub origin: String,
    #[serde(default = "rational_field")]
    pub field: FieldSpec,
}

fn zero_string() -> String {
    "0".into()
}

fn rational_field() -> FieldSpec {
    FieldSpec::RATIONAL
}

/// An exchange over whichever field its description names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyIet {
    Rational(Iet<Rational>),
    Quadratic(Iet<QuadraticReal>),
}

impl IetDescription {
    pub fn from_json(text: &str) -> Result<Self, IetError> {
        serde_json::from_str(text).map_err(|e| IetError::Description(e.to_string()))
    }

    pub fn from_path(path: &Path) -> Result<Self, IetError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| IetError::Description(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("description serializes")
    }

    fn build<S: Scalar>(&self) -> Result<Iet<S>, IetError> {
        if self.n != self.perm.len() || self.n != self.lambda.len() {
            return Err(IetError::Description(format!(
                "n = {} but perm has {} entries and lambda {}",
                self.n,
                self.perm.len(),
                self.lambda.len()
            )));
        }
        let lambda = self
            .lambda
            .iter()
            .map(|s| s.parse::<S>())
            .collect::<Result<Vec<S>, _>>()?;
        let origin: S = self.origin.parse()?;
        Iet::new(
            Permutation::new(self.perm.clone())?,
            ExchangeLengths::new(lambda)?,
            origin,
        )
    }

    /// Parses the numbers in the declared field.
    pub fn to_iet(&self) -> Result<AnyIet, IetError> {
        match self.field {
            FieldSpec::Named(NamedField::Rational) => self.build().map(AnyIet::Rational),
            FieldSpec::Sqrt { sqrt } => {
                let probe = QuadraticReal::sqrt(sqrt)?;
                let d = probe.field_radicand();
                let iet: Iet<QuadraticReal> = self.build()?;
                let stray = iet
                    .lambda()
                    .iter()
                    .chain(std::iter::once(iet.origin()))
                    .map(|v| v.field_radicand())
                    .find(|&e| e != 1 && e != d);
                if let Some(e) = stray {
                    return Err(IetError::Description(format!(
                        "value in Q(sqrt({e})) but field is Q(sqrt({sqrt}))"
                    )));
                }
                Ok(AnyIet::Quadratic(iet))
            }
        }
    }
}

impl<S: Scalar> Iet<S> {
    pub fn describe(&self) -> IetDescription {
        let d = self
            .lambda()
            .iter()
            .chain(std::iter::once(self.origin()))
            .map(|v| v.field_radicand())
            .find(|&d| d != 1);
        IetDescription {
            n: self.n(),
            perm: self.permutation().to_vec(),
            lambda: self.lambda().iter().map(|l| l.to_string()).collect(),
            origin: self.origin().to_string(),
            field: d.map_or(FieldSpec::RATIONAL, |sqrt| FieldSpec::Sqrt { sqrt }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_fields() {
        let rat = r#"{"n":2,"perm":[2,1],"lambda":["1/3","2/3"],"origin":"0","field":"rational"}"#;
        match IetDescription::from_json(rat).unwrap().to_iet().unwrap() {
            AnyIet::Rational(e) => assert_eq!(e.displacements()[1].to_string(), "-1/3"),
            other => panic!("unexpected {other:?}"),
        }
        let gold = r#"{"n":2,"perm":[2,1],
            "lambda":["3/2-1/2*sqrt(5)","-1/2+1/2*sqrt(5)"],"origin":"0","field":{"sqrt":5}}"#;
        let AnyIet::Quadratic(e) = IetDescription::from_json(gold).unwrap().to_iet().unwrap() else {
            panic!("expected quadratic")
        };
        let back = e.describe();
        assert_eq!(back.field, FieldSpec::Sqrt { sqrt: 5 });
        assert_eq!(IetDescription::from_json(&back.to_json()).unwrap(), back);
    }

    #[test]
    fn rejects_bad_descriptions() {
        let wrong_n = r#"{"n":3,"perm":[2,1],"lambda":["1/3","2/3"],"field":"rational"}"#;
        assert!(IetDescription::from_json(wrong_n).unwrap().to_iet().is_err());
        let mixed = r#"{"n":2,"perm":[2,1],"lambda":["sqrt(2)-1","2-sqrt(2)"],"field":{"sqrt":3}}"#;
        assert!(IetDescription::from_json(mixed).unwrap().to_iet().is_err());
        let surd_in_q = r#"{"n":2,"perm":[2,1],"lambda":["sqrt(2)-1","2-sqrt(2)"],"field":"rational"}"#;
        assert!(IetDescription::from_json(surd_in_q).unwrap().to_iet().is_err());
        assert!(IetDescription::from_json("{}").is_err());
    }
}
