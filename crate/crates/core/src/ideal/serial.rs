use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{MonomialOrder, PolyRing, VariableTable};

use super::ideal::Ideal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    pub degree: u32,
}

/// Serialized form of an ideal: its variables, order descriptor and generators
/// in the textual polynomial format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealSpec {
    pub variables: Vec<VariableSpec>,
    pub order: String,
    pub generators: Vec<String>,
}

impl IdealSpec {
    pub fn from_ideal(ideal: &Ideal) -> Self {
        let vars = &ideal.ring().vars;
        IdealSpec {
            variables: (0..vars.len())
                .map(|i| VariableSpec {
                    name: vars.name(i).to_string(),
                    degree: vars.degree(i),
                })
                .collect(),
            order: ideal.ring().order.descriptor(),
            generators: ideal.generators().iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn to_ideal(&self) -> Result<Ideal> {
        let vars: Vec<(&str, u32)> = self
            .variables
            .iter()
            .map(|v| (v.name.as_str(), v.degree))
            .collect();
        let ring = PolyRing::new(
            VariableTable::new(&vars)?,
            MonomialOrder::from_descriptor(&self.order)?,
        );
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        Ideal::parse(&ring, &gens)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ideal spec serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_deterministic() {
        let ring = PolyRing::new(
            VariableTable::new(&[("c1", 2), ("a2", 4), ("x", 2)]).unwrap(),
            MonomialOrder::Block(1),
        );
        let ideal = Ideal::parse(&ring, &["c1^2 - a2", "1/2*a2*x - c1*x^2"]).unwrap();
        let spec = IdealSpec::from_ideal(&ideal);
        let json = spec.to_json();
        let back = IdealSpec::from_json(&json).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.to_ideal().unwrap().generators(), ideal.generators());
        assert_eq!(
            IdealSpec::from_ideal(&back.to_ideal().unwrap()).to_json(),
            json
        );
    }
}
