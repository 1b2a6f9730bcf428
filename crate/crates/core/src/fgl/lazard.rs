use num_bigint::BigInt;
use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::series::{GradedSeries, Scalar};

use super::context::b_name;

/// An element of the Lazard ring, stored as its Hurewitz image: a
/// homogeneous polynomial in the ambient generators b_i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LazardElement {
    ambient: GradedSeries,
    dimension: i32,
    provenance: String,
}

impl LazardElement {
    pub fn new(ambient: GradedSeries, dimension: i32, provenance: impl Into<String>) -> Self {
        LazardElement { ambient, dimension, provenance: provenance.into() }
    }

    pub fn ambient(&self) -> &GradedSeries {
        &self.ambient
    }

    pub fn into_ambient(self) -> GradedSeries {
        self.ambient
    }

    pub fn dimension(&self) -> i32 {
        self.dimension
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn mul(&self, other: &LazardElement) -> Result<LazardElement> {
        Ok(LazardElement::new(
            self.ambient.mul(&other.ambient)?,
            self.dimension + other.dimension,
            format!("{}*{}", self.provenance, other.provenance),
        ))
    }

    pub fn add(&self, other: &LazardElement) -> Result<LazardElement> {
        if self.dimension != other.dimension && !self.ambient.is_zero() && !other.ambient.is_zero() {
            return Err(Error::InvalidArgument("adding Lazard elements of different dimension".into()));
        }
        Ok(LazardElement::new(
            self.ambient.add(&other.ambient)?,
            self.dimension.max(other.dimension),
            format!("{}+{}", self.provenance, other.provenance),
        ))
    }

    /// The characteristic number χ_J: coefficient of the b-monomial
    /// `prod b_i^e` given as (i, e) pairs.
    pub fn char_number(&self, monomial: &[(usize, i32)]) -> Result<Scalar> {
        if !self.ambient.is_integral() {
            return Err(Error::Integrality(format!(
                "{} has non-integral ambient coefficients",
                self.provenance
            )));
        }
        let names: Vec<(String, i32)> = monomial.iter().map(|&(i, e)| (b_name(i), e)).collect();
        let powers: Vec<(&str, i32)> = names.iter().map(|(n, e)| (n.as_str(), *e)).collect();
        Ok(self.ambient.coeff_of(&powers)?)
    }

    /// All characteristic numbers, in canonical monomial order.
    pub fn char_numbers(&self) -> Vec<(String, Scalar)> {
        self.ambient
            .terms()
            .map(|(m, c)| (self.ambient.render_monomial(m), c.clone()))
            .collect()
    }

    /// The additive characteristic number: coefficient of m_d after
    /// rewriting in logarithm coordinates. Since b_d = -m_d + (decomposables
    /// in m), it equals minus the coefficient of b_d.
    pub fn s_number(&self) -> Result<Scalar> {
        if self.dimension <= 0 {
            return Err(Error::InvalidArgument("s-number needs positive dimension".into()));
        }
        Ok(-self.ambient.coeff_of(&[(b_name(self.dimension as usize).as_str(), 1)])?)
    }

    /// Every characteristic number divisible by p.
    pub fn in_ip(&self, p: u32) -> bool {
        let p = BigInt::from(p);
        self.ambient
            .terms()
            .all(|(_, c)| c.is_integer() && (c.numer() % &p).is_zero())
    }

    /// In I(p), of dimension p^r - 1, with s-number not divisible by p^2.
    pub fn is_nu_r(&self, p: u32, r: u32) -> Result<bool> {
        let expected = (p as i64).pow(r) - 1;
        if self.dimension as i64 != expected {
            return Err(Error::InvalidArgument(format!(
                "dimension {} is not p^r - 1 = {expected}",
                self.dimension
            )));
        }
        let p2 = BigInt::from(p * p);
        let s = self.s_number()?;
        Ok(self.in_ip(p) && s.is_integer() && !(s.numer() % &p2).is_zero())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let mut v = self.ambient.to_json_value();
        v["dimension"] = json!(self.dimension);
        v["provenance"] = json!(self.provenance);
        v
    }
}

impl std::fmt::Display for LazardElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.ambient)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::{AmbientContext, ContextConfig};

    fn ctx() -> AmbientContext {
        AmbientContext::new(ContextConfig::new(5, 4)).unwrap()
    }

    #[test]
    fn char_numbers_of_p1() {
        let c = ctx();
        let p1 = c.pn_class(1).unwrap();
        assert_eq!(p1.char_number(&[(1, 1)]).unwrap(), Scalar::from_int(-2));
        assert_eq!(p1.char_number(&[(2, 1)]).unwrap(), Scalar::zero());
        assert!(p1.in_ip(2));
        assert!(!p1.in_ip(3));
    }

    #[test]
    fn s_numbers() {
        let c = ctx();
        for n in 1..=4 {
            assert_eq!(c.pn_class(n).unwrap().s_number().unwrap(), Scalar::from_int(n as i64 + 1));
        }
        let p1 = c.pn_class(1).unwrap();
        assert_eq!(p1.mul(&p1).unwrap().s_number().unwrap(), Scalar::zero());
        assert!(c.pn_class(0).unwrap().s_number().is_err());
    }

    #[test]
    fn nu_predicates() {
        let c = ctx();
        assert!(c.pn_class(1).unwrap().is_nu_r(2, 1).unwrap());
        assert!(c.pn_class(2).unwrap().is_nu_r(3, 1).unwrap());
        let p1 = c.pn_class(1).unwrap();
        let sq = p1.mul(&p1).unwrap();
        assert!(sq.is_nu_r(2, 1).is_err());
        assert!(!sq.is_nu_r(3, 1).unwrap());
    }

    #[test]
    fn json_tags() {
        let c = ctx();
        let v = c.pn_class(2).unwrap().to_json_value();
        assert_eq!(v["dimension"], 2);
        assert_eq!(v["provenance"], "P^2");
    }
}
