use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number, always in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    /// Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_parts(num: BigInt, den: BigInt) -> Option<Self> {
        if den.is_zero() {
            None
        } else {
            Some(Scalar(BigRational::new(num, den)))
        }
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.0.numer().clone())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// True when no power of `p` divides the denominator.
    pub fn is_p_integral(&self, p: u64) -> bool {
        !(self.denom() % BigInt::from(p)).is_zero() || self.denom().is_one()
    }

    /// True when every prime factor of the denominator divides `unit`.
    pub fn denominator_divides_power_of(&self, unit: &BigInt) -> bool {
        let mut d = self.denom().clone();
        let unit = unit.abs();
        if unit.is_zero() {
            return d.is_one();
        }
        loop {
            if d.is_one() {
                return true;
            }
            let g = d.gcd(&unit);
            if g.is_one() {
                return false;
            }
            while (&d % &g).is_zero() {
                d /= &g;
            }
        }
    }

    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Scalar(self.0.recip()))
    }

    pub fn pow(&self, e: i32) -> Self {
        Scalar(num_traits::Pow::pow(&self.0, e))
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// The integer in `[0, modulus)` congruent to `self` modulo `modulus`.
    ///
    /// Returns `None` when the denominator is not invertible modulo `modulus`.
    pub fn residue_mod(&self, modulus: &BigInt) -> Option<BigInt> {
        let num = self.numer().mod_floor(modulus);
        let den = self.denom().mod_floor(modulus);
        let inv = mod_inverse(&den, modulus)?;
        Some((num * inv).mod_floor(modulus))
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseScalarError(pub String);

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                Scalar::from_parts(n, d).ok_or_else(err)
            }
            None => Ok(Scalar::from_bigint(s.parse().map_err(|_| err())?)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let a = Scalar::ratio(4, -6);
        assert_eq!(a.numer(), &BigInt::from(-2));
        assert_eq!(a.denom(), &BigInt::from(3));
        assert_eq!(a.to_string(), "-2/3");
    }

    #[test]
    fn p_integrality() {
        assert!(Scalar::ratio(1, 2).is_p_integral(3));
        assert!(!Scalar::ratio(1, 6).is_p_integral(3));
        assert!(Scalar::from_int(9).is_p_integral(3));
    }

    #[test]
    fn denominator_power_test() {
        assert!(Scalar::ratio(5, 8).denominator_divides_power_of(&BigInt::from(2)));
        assert!(Scalar::ratio(5, 12).denominator_divides_power_of(&BigInt::from(-6)));
        assert!(!Scalar::ratio(5, 12).denominator_divides_power_of(&BigInt::from(2)));
    }

    #[test]
    fn residues() {
        let m = BigInt::from(9);
        // 1/2 = 5 mod 9
        assert_eq!(Scalar::ratio(1, 2).residue_mod(&m), Some(BigInt::from(5)));
        assert_eq!(Scalar::ratio(1, 3).residue_mod(&m), None);
        assert_eq!(Scalar::from_int(-1).residue_mod(&m), Some(BigInt::from(8)));
    }

    #[test]
    fn parse_round_trip() {
        let s: Scalar = "-12/18".parse().unwrap();
        assert_eq!(s, Scalar::ratio(-2, 3));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }
}
