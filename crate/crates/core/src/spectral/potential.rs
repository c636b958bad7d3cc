use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::SpectralError;
use crate::iet::Symbol;
use crate::scalar::{self, Scalar};

/// Coupling used when a configuration names none.
pub const DEFAULT_COUPLING: i64 = 2;

/// An injective map `V: {1..n} → R`, optionally scaled by a coupling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct Potential<S> {
    #[serde(with = "scalar::vec_as_string")]
    values: Vec<S>,
    #[serde(default, with = "opt_scalar", skip_serializing_if = "Option::is_none")]
    coupling: Option<S>,
}

impl<S: Scalar> Potential<S> {
    /// Checks injectivity of the effective values exactly.
    pub fn new(values: Vec<S>, coupling: Option<S>) -> Result<Self, SpectralError> {
        if values.is_empty() {
            return Err(SpectralError::InvalidPotential("no values".into()));
        }
        if let Some(c) = &coupling {
            if c.is_zero() {
                return Err(SpectralError::InvalidPotential("zero coupling".into()));
            }
        }
        let p = Self { values, coupling };
        let eff = p.effective_values();
        for i in 0..eff.len() {
            for j in i + 1..eff.len() {
                let ord = eff[i]
                    .try_cmp(&eff[j])
                    .map_err(|e| SpectralError::InvalidPotential(e.to_string()))?;
                if ord.is_eq() {
                    return Err(SpectralError::InvalidPotential(format!(
                        "V({}) = V({}) = {}",
                        i + 1,
                        j + 1,
                        eff[i]
                    )));
                }
            }
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn coupling(&self) -> Option<&S> {
        self.coupling.as_ref()
    }

    /// `V(i)` including the coupling.
    pub fn value(&self, symbol: Symbol) -> Result<S, SpectralError> {
        let i = symbol as usize;
        if i == 0 || i > self.values.len() {
            return Err(SpectralError::UnknownSymbol(symbol));
        }
        let v = self.values[i - 1].clone();
        Ok(match &self.coupling {
            Some(c) => v * c,
            None => v,
        })
    }

    pub fn effective_values(&self) -> Vec<S> {
        (1..=self.n())
            .map(|i| self.value(i as Symbol).expect("in range"))
            .collect()
    }

    /// Effective values as rationals; a mode error if any is irrational.
    pub fn rational_values(&self) -> Result<Vec<BigRational>, SpectralError> {
        self.effective_values()
            .iter()
            .map(|v| {
                v.to_rational()
                    .ok_or_else(|| SpectralError::Mode(format!("potential value {v} is not rational")))
            })
            .collect()
    }

    pub fn f64_values(&self) -> Vec<f64> {
        self.effective_values().iter().map(Scalar::to_f64).collect()
    }

    /// Effective values looked up by symbol, for inner loops.
    pub(crate) fn f64_lookup(&self, word: &[Symbol]) -> Result<Vec<f64>, SpectralError> {
        let vals = self.f64_values();
        word.iter()
            .map(|&s| {
                vals.get((s as usize).wrapping_sub(1))
                    .copied()
                    .ok_or(SpectralError::UnknownSymbol(s))
            })
            .collect()
    }
}

/// `V(i) = c (i - 1)` on `n` symbols.
pub fn default_potential<S: Scalar>(n: usize, coupling: S) -> Result<Potential<S>, SpectralError> {
    let values = (0..n as i64).map(S::from_integer).collect();
    Potential::new(values, Some(coupling))
}

mod opt_scalar {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Scalar, Ser: Serializer>(v: &Option<S>, ser: Ser) -> Result<Ser::Ok, Ser::Error> {
        v.as_ref().map(ToString::to_string).serialize(ser)
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(de: D) -> Result<Option<S>, D::Error> {
        Option::<String>::deserialize(de)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{QuadraticReal, Rational};

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn default_is_fibonacci_model() {
        let v = default_potential(2, r("2")).unwrap();
        assert_eq!(v.effective_values(), vec![r("0"), r("2")]);
        assert_eq!(v.value(3), Err(SpectralError::UnknownSymbol(3)));
    }

    #[test]
    fn injectivity_is_exact() {
        assert!(Potential::new(vec![r("1/3"), r("2/6")], None).is_err());
        assert!(Potential::new(vec![r("1/3"), r("1/3")], Some(r("0"))).is_err());
        let q: QuadraticReal = "0/1+1/1*sqrt(2)".parse().unwrap();
        let v = Potential::new(vec![QuadraticReal::zero(), q], None).unwrap();
        assert!(matches!(v.rational_values(), Err(SpectralError::Mode(_))));
    }

    #[test]
    fn json_round_trip() {
        let v = Potential::new(vec![r("0"), r("1/2")], Some(r("3"))).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"values":["0/1","1/2"],"coupling":"3/1"}"#);
        assert_eq!(serde_json::from_str::<Potential<Rational>>(&s).unwrap(), v);
    }
}
