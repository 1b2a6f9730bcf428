use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{Monomial, Scalar, SeriesError, SeriesRing};

/// An element of a truncated series ring, in canonical form.
///
/// Terms are kept sorted in the canonical monomial order and no stored
/// coefficient is zero, so structural equality is mathematical equality.
#[derive(Clone, Debug)]
pub struct GradedSeries {
    pub(crate) ring: Arc<SeriesRing>,
    pub(crate) terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for GradedSeries {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for GradedSeries {}

type Result<T> = std::result::Result<T, SeriesError>;

impl GradedSeries {
    pub fn zero(ring: &Arc<SeriesRing>) -> Self {
        GradedSeries { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &Arc<SeriesRing>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn constant(ring: &Arc<SeriesRing>, c: Scalar) -> Self {
        let exps = vec![0; ring.nvars()].into_boxed_slice();
        let mut s = Self::zero(ring);
        if let Ok(Some(m)) = ring.make_monomial(exps) {
            s.insert(m, c);
        }
        s
    }

    pub fn from_int(ring: &Arc<SeriesRing>, n: i64) -> Self {
        Self::constant(ring, Scalar::from_int(n))
    }

    /// The variable `name` to the first power.
    pub fn var(ring: &Arc<SeriesRing>, name: &str) -> Result<Self> {
        Self::var_pow(ring, name, 1)
    }

    /// `name^e`; negative `e` only for Laurent variables.
    pub fn var_pow(ring: &Arc<SeriesRing>, name: &str, e: i32) -> Result<Self> {
        let i = ring.require(name)?;
        let mut exps = vec![0; ring.nvars()];
        exps[i] = e;
        Self::monomial(ring, exps, Scalar::one())
    }

    /// `c * prod var_i^exps[i]`; zero if beyond truncation.
    pub fn monomial(ring: &Arc<SeriesRing>, exps: Vec<i32>, c: Scalar) -> Result<Self> {
        if exps.len() != ring.nvars() {
            return Err(SeriesError::InvalidTable(format!(
                "exponent vector of length {} for {} variables",
                exps.len(),
                ring.nvars()
            )));
        }
        let mut s = Self::zero(ring);
        if let Some(m) = ring.make_monomial(exps.into_boxed_slice())? {
            s.insert(m, c);
        }
        Ok(s)
    }

    /// `c * prod name^e` by variable name.
    pub fn term(ring: &Arc<SeriesRing>, c: Scalar, powers: &[(&str, i32)]) -> Result<Self> {
        let mut exps = vec![0; ring.nvars()];
        for (name, e) in powers {
            exps[ring.require(name)?] += e;
        }
        Self::monomial(ring, exps, c)
    }

    /// Builds a series from raw terms, combining duplicates and truncating.
    pub fn from_terms<I>(ring: &Arc<SeriesRing>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i32>, Scalar)>,
    {
        let mut s = Self::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.nvars() {
                return Err(SeriesError::InvalidTable("exponent vector length mismatch".into()));
            }
            if let Some(m) = ring.make_monomial(exps.into_boxed_slice())? {
                s.add_term(m, &c);
            }
        }
        Ok(s)
    }

    pub(crate) fn from_map(ring: &Arc<SeriesRing>, terms: BTreeMap<Monomial, Scalar>) -> Self {
        let mut s = GradedSeries { ring: ring.clone(), terms };
        s.terms.retain(|_, c| !c.is_zero());
        s
    }

    pub(crate) fn insert(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, c);
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// First term in canonical order.
    pub fn lead(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }

    pub(crate) fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(SeriesError::MismatchedRings)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        GradedSeries { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        GradedSeries { ring: self.ring.clone(), terms }
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&Scalar::from_int(n))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let ring = &self.ring;
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        let tp = ring.trunc_plus();
        let tm = ring.trunc_minus();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.plus + mb.plus > tp || ma.bweight + mb.bweight > tm {
                    continue;
                }
                if let Some(m) = ring.product_monomial(ma, mb)? {
                    let c = ca * cb;
                    match acc.get_mut(&m) {
                        Some(v) => *v += &c,
                        None => {
                            acc.insert(m, c);
                        }
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(GradedSeries { ring: ring.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut result = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Integer power; negative exponents go through `mul_inverse`.
    pub fn powi(&self, e: i32) -> Result<Self> {
        if e >= 0 {
            self.pow(e as u32)
        } else {
            self.mul_inverse()?.pow(e.unsigned_abs())
        }
    }

    /// Coefficient of an exact exponent vector.
    pub fn coeff(&self, exps: &[i32]) -> Scalar {
        match self.ring.make_monomial(exps.to_vec().into_boxed_slice()) {
            Ok(Some(m)) => self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero),
            _ => Scalar::zero(),
        }
    }

    /// Coefficient of the monomial given by name/exponent pairs (others zero).
    pub fn coeff_of(&self, powers: &[(&str, i32)]) -> Result<Scalar> {
        let mut exps = vec![0; self.ring.nvars()];
        for (name, e) in powers {
            exps[self.ring.require(name)?] += e;
        }
        Ok(self.coeff(&exps))
    }

    /// The constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.ring.nvars()])
    }

    /// Coefficient of `var^k` as a series in the remaining variables.
    pub fn coefficient(&self, var: &str, k: i32) -> Result<Self> {
        let i = self.ring.require(var)?;
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.exp(i) == k {
                let mut e = m.exps.to_vec();
                e[i] = 0;
                if let Some(mm) = self.ring.make_monomial(e.into_boxed_slice())? {
                    out.add_term(mm, c);
                }
            }
        }
        Ok(out)
    }

    /// Terms whose `var`-exponent satisfies the predicate.
    pub fn filter_exp(&self, var: &str, keep: impl Fn(i32) -> bool) -> Result<Self> {
        let i = self.ring.require(var)?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m.exp(i)))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Ok(GradedSeries { ring: self.ring.clone(), terms })
    }

    /// Terms satisfying an arbitrary predicate on the exponent vector.
    pub fn filter_terms(&self, keep: impl Fn(&[i32]) -> bool) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m.exps()))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        GradedSeries { ring: self.ring.clone(), terms }
    }

    /// Smallest exponent of `var` among the terms (`None` for zero).
    pub fn min_exp(&self, var: &str) -> Result<Option<i32>> {
        let i = self.ring.require(var)?;
        Ok(self.terms.keys().map(|m| m.exp(i)).min())
    }

    pub fn max_exp(&self, var: &str) -> Result<Option<i32>> {
        let i = self.ring.require(var)?;
        Ok(self.terms.keys().map(|m| m.exp(i)).max())
    }

    /// Multiplies by `var^k` (k may be negative for Laurent variables).
    pub fn shift(&self, var: &str, k: i32) -> Result<Self> {
        let i = self.ring.require(var)?;
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut e = m.exps.to_vec();
            e[i] += k;
            if let Some(mm) = self.ring.make_monomial(e.into_boxed_slice())? {
                out.add_term(mm, c);
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Result<Self> {
        let i = self.ring.require(var)?;
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let k = m.exp(i);
            if k == 0 {
                continue;
            }
            let mut e = m.exps.to_vec();
            e[i] -= 1;
            if let Some(mm) = self.ring.make_monomial(e.into_boxed_slice())? {
                out.add_term(mm, &(c * &Scalar::from_int(k as i64)));
            }
        }
        Ok(out)
    }

    /// Splits into (terms with `var`-degree <= 0, terms with `var`-degree > 0).
    pub fn split_parts(&self, var: &str) -> Result<(Self, Self)> {
        Ok((self.filter_exp(var, |e| e <= 0)?, self.filter_exp(var, |e| e > 0)?))
    }

    /// `split_parts` on the variable `t`.
    pub fn split_t_parts(&self) -> Result<(Self, Self)> {
        self.split_parts("t")
    }

    /// Residue in `var`: the coefficient of `var^-1`.
    pub fn residue(&self, var: &str) -> Result<Self> {
        self.coefficient(var, -1)
    }

    /// Sets every negative-weight (ambient b) variable to zero.
    pub fn drop_negative_weight(&self) -> Self {
        let neg: Vec<usize> =
            (0..self.ring.nvars()).filter(|&i| self.ring.var(i).weight < 0).collect();
        self.filter_terms(|e| neg.iter().all(|&i| e[i] == 0))
    }

    /// Maps into another ring by variable name. Variables absent from the
    /// target must not occur.
    pub fn embed(&self, target: &Arc<SeriesRing>) -> Result<Self> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> =
            self.ring.vars().iter().map(|v| target.index_of(&v.name)).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.nvars()];
            for (i, &k) in m.exps().iter().enumerate() {
                if k != 0 {
                    match map[i] {
                        Some(j) => e[j] = k,
                        None => {
                            return Err(SeriesError::UnknownVariable(self.ring.var(i).name.clone()))
                        }
                    }
                }
            }
            if let Some(mm) = target.make_monomial(e.into_boxed_slice())? {
                out.add_term(mm, c);
            }
        }
        Ok(out)
    }

    /// Re-truncates in the same variables with different bounds.
    pub fn retruncate(&self, target: &Arc<SeriesRing>) -> Result<Self> {
        self.embed(target)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Scalar::is_integer)
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.terms.values().all(|c| c.is_p_integral(p))
    }

    /// Whether every term has total weight `w` (positive weights count
    /// positively, b-weights negatively).
    pub fn is_homogeneous(&self, w: i32) -> bool {
        self.terms.keys().all(|m| m.order - m.bweight == w)
    }

    /// Names of the variables that actually occur.
    pub fn support_vars(&self) -> Vec<&str> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) != 0))
            .map(|i| self.ring.var(i).name.as_str())
            .collect()
    }

    /// Applies `f` to every coefficient (zero results dropped).
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        GradedSeries { ring: self.ring.clone(), terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Variable;

    fn ring() -> Arc<SeriesRing> {
        SeriesRing::from_vars(
            vec![
                Variable::laurent("t", 1, -16),
                Variable::power("x", 1),
                Variable::power("b1", -1),
                Variable::power("b2", -2),
            ],
            4,
            4,
        )
        .unwrap()
    }

    fn v(r: &Arc<SeriesRing>, n: &str) -> GradedSeries {
        GradedSeries::var(r, n).unwrap()
    }

    #[test]
    fn additive_inverse() {
        let r = ring();
        let x = v(&r, "x");
        assert!(x.add(&x.neg()).unwrap().is_zero());
    }

    #[test]
    fn laurent_terms_preserved() {
        let r = ring();
        let t = v(&r, "t");
        let ti = GradedSeries::var_pow(&r, "t", -1).unwrap();
        let s = ti.add(&t).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coeff_of(&[("t", -1)]).unwrap(), Scalar::one());
    }

    #[test]
    fn square_example() {
        let r = ring();
        let t = v(&r, "t");
        let b1 = v(&r, "b1");
        let f = t.add(&b1.mul(&t.pow(2).unwrap()).unwrap()).unwrap();
        let sq = f.pow(2).unwrap();
        let expect = t
            .pow(2)
            .unwrap()
            .add(&b1.mul(&t.pow(3).unwrap()).unwrap().scale_int(2))
            .unwrap()
            .add(&b1.pow(2).unwrap().mul(&t.pow(4).unwrap()).unwrap())
            .unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn truncation_contract() {
        let r = ring();
        let x = v(&r, "x");
        assert!(x.pow(4).unwrap().mul(&x).unwrap().is_zero());
        let one = GradedSeries::one(&r);
        let f = one.add(&x).unwrap().mul(&one.sub(&x).unwrap()).unwrap();
        assert_eq!(f, one.sub(&x.pow(2).unwrap()).unwrap());
    }

    #[test]
    fn split_parts_example() {
        let r = ring();
        let f = GradedSeries::var_pow(&r, "t", -2)
            .unwrap()
            .add(&GradedSeries::from_int(&r, 3))
            .unwrap()
            .add(&v(&r, "t"))
            .unwrap();
        let (np, pos) = f.split_t_parts().unwrap();
        assert_eq!(np.len(), 2);
        assert_eq!(pos, v(&r, "t"));
        let (a, b) = GradedSeries::zero(&r).split_t_parts().unwrap();
        assert!(a.is_zero() && b.is_zero());
    }

    #[test]
    fn residue_basics() {
        let r = ring();
        let ti = GradedSeries::var_pow(&r, "t", -1).unwrap();
        assert_eq!(ti.residue("t").unwrap(), GradedSeries::one(&r));
        let f = GradedSeries::one(&r).add(&v(&r, "t")).unwrap();
        assert!(f.residue("t").unwrap().is_zero());
    }

    #[test]
    fn mismatched_rings() {
        let r1 = ring();
        let r2 = SeriesRing::from_vars(vec![Variable::power("x", 1)], 4, 4).unwrap();
        let a = v(&r1, "x");
        let b = v(&r2, "x");
        assert_eq!(a.add(&b), Err(SeriesError::MismatchedRings));
        assert_eq!(a.embed(&r2).unwrap(), b);
    }
}
