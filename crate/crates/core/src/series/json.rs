use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{GradedSeries, Scalar, SeriesError, SeriesRing, Variable, VariableTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i32>,
    pub num: String,
    pub den: String,
}

/// Wire form of a series; terms in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub vars: Vec<Variable>,
    pub trunc_plus: i32,
    pub trunc_minus: i32,
    pub terms: Vec<TermJson>,
}

impl GradedSeries {
    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            vars: self.ring.vars().to_vec(),
            trunc_plus: self.ring.trunc_plus(),
            trunc_minus: self.ring.trunc_minus(),
            terms: self
                .terms()
                .map(|(m, c)| TermJson {
                    exp: m.exps().to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.to_json()).expect("series json is always serializable")
    }

    /// Parses into a fresh ring built from the embedded table.
    pub fn from_json(j: &SeriesJson) -> Result<GradedSeries, SeriesError> {
        let ring = SeriesRing::new(VariableTable::new(j.vars.clone())?, j.trunc_plus, j.trunc_minus)?;
        Self::from_json_in(&ring, j)
    }

    /// Parses into an existing ring; the embedded table must match it.
    pub fn from_json_in(ring: &Arc<SeriesRing>, j: &SeriesJson) -> Result<GradedSeries, SeriesError> {
        if ring.vars() != j.vars.as_slice()
            || ring.trunc_plus() != j.trunc_plus
            || ring.trunc_minus() != j.trunc_minus
        {
            return Err(SeriesError::MismatchedRings);
        }
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            let num: BigInt = t.num.parse().map_err(|_| SeriesError::Json(format!("bad numerator {}", t.num)))?;
            let den: BigInt = t.den.parse().map_err(|_| SeriesError::Json(format!("bad denominator {}", t.den)))?;
            let c = Scalar::from_parts(num, den).ok_or_else(|| SeriesError::Json("zero denominator".into()))?;
            terms.push((t.exp.clone(), c));
        }
        GradedSeries::from_terms(ring, terms)
    }

    pub fn from_json_str(s: &str) -> Result<GradedSeries, SeriesError> {
        let j: SeriesJson = serde_json::from_str(s).map_err(|e| SeriesError::Json(e.to_string()))?;
        Self::from_json(&j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_shape() {
        let ring = SeriesRing::from_vars(
            vec![Variable::laurent("t", 1, -16), Variable::power("b1", -1)],
            8,
            8,
        )
        .unwrap();
        let f = GradedSeries::from_terms(
            &ring,
            vec![(vec![-1, 0], Scalar::ratio(1, 3)), (vec![2, 1], Scalar::from_int(-5))],
        )
        .unwrap();
        let v = f.to_json_value();
        assert_eq!(v["vars"][0]["laurent_floor"], -16);
        assert!(v["vars"][1]["laurent_floor"].is_null());
        assert!(v["vars"][1].get("cap").is_none());
        assert_eq!(v["terms"][0]["exp"], serde_json::json!([-1, 0]));
        assert_eq!(v["terms"][0]["den"], "3");
        let s = serde_json::to_string(&v).unwrap();
        let g = GradedSeries::from_json_str(&s).unwrap();
        assert_eq!(g.to_json(), f.to_json());
        assert_eq!(GradedSeries::from_json_in(&ring, &f.to_json()).unwrap(), f);
    }
}
