//! Arithmetic in B = R[[t]]/([p]_F(t)/t) and its Laurent companion
//! R((t))/([p]_F(t) t), over p-local ambient coefficients.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fgl::AmbientContext;
use crate::series::{GradedSeries, Scalar, SeriesError, SeriesRing};

/// The "formal p": g(t) = [p]_F(t)/t = p + c1 t + c2 t^2 + ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalP {
    p: u32,
    g: GradedSeries,
    trunc_t: Option<i32>,
}

impl FormalP {
    /// The formal p of the universal law in `ctx`.
    pub fn new(ctx: &AmbientContext, p: u32) -> Result<Self> {
        let pt = ctx.formal_int_mul(p as i64)?;
        let g = pt.shift("t", -1)?;
        Self::from_generator(p, g)
    }

    /// The additive law: g = p, so B = (R/p)[[t]].
    pub fn additive(ring: &Arc<SeriesRing>, p: u32) -> Result<Self> {
        Self::from_generator(p, GradedSeries::from_int(ring, p as i64))
    }

    pub fn from_generator(p: u32, g: GradedSeries) -> Result<Self> {
        if g.constant_term() != Scalar::from_int(p as i64) {
            return Err(Error::InvalidArgument(format!(
                "generator must have constant term {p}, got {}",
                g.constant_term()
            )));
        }
        if g.min_exp("t")?.unwrap_or(0) < 0 {
            return Err(Error::InvalidArgument("generator must be a power series in t".into()));
        }
        Ok(FormalP { p, g, trunc_t: None })
    }

    /// Additionally works modulo t^(d+1).
    pub fn with_trunc_t(mut self, d: i32) -> Self {
        self.trunc_t = Some(d);
        self
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generator(&self) -> &GradedSeries {
        &self.g
    }

    pub fn trunc_t(&self) -> Option<i32> {
        self.trunc_t
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        self.g.ring()
    }

    fn cut(&self, f: GradedSeries) -> Result<GradedSeries> {
        match self.trunc_t {
            Some(d) => Ok(f.filter_exp("t", |e| e <= d)?),
            None => Ok(f),
        }
    }

    /// The canonical representative: every coefficient a digit in [0, p).
    ///
    /// Works lowest t-degree first, writing each coefficient as c = p q + r
    /// and replacing p q by -q (g - p), which only raises the t-degree.
    pub fn normal_form(&self, f: &GradedSeries) -> Result<GradedSeries> {
        if f.min_exp("t")?.unwrap_or(0) < 0 {
            return Err(Error::InvalidArgument("normal form needs a power series in t".into()));
        }
        if let Some((m, c)) = f.terms().find(|(_, c)| !c.is_p_integral(self.p as u64)) {
            return Err(Error::Integrality(format!(
                "coefficient {c} of {} is not {}-integral",
                f.render_monomial(m),
                self.p
            )));
        }
        let ring = f.ring().clone();
        let p = BigInt::from(self.p);
        let tail = self.g.sub(&GradedSeries::from_int(&ring, self.p as i64))?;
        let mut work = self.cut(f.clone())?;
        let mut done = GradedSeries::zero(&ring);
        let mut last = i32::MIN;
        while let Some(k) = work.min_exp("t")? {
            if k <= last {
                return Err(SeriesError::NonConvergent("normal form".into()).into());
            }
            last = k;
            let layer = work.filter_exp("t", |e| e == k)?;
            work = work.filter_exp("t", |e| e > k)?;
            let mut carry: BTreeMap<Vec<i32>, Scalar> = BTreeMap::new();
            let mut digits = Vec::new();
            for (m, c) in layer.terms() {
                let r = c.residue_mod(&p).expect("p-integral coefficient");
                let r = Scalar::from_bigint(r);
                let q = (c - &r) / Scalar::from_bigint(p.clone());
                if !r.is_zero() {
                    digits.push((m.exps().to_vec(), r));
                }
                if !q.is_zero() {
                    carry.insert(m.exps().to_vec(), q);
                }
            }
            done = done.add(&GradedSeries::from_terms(&ring, digits)?)?;
            if !carry.is_empty() {
                let q = GradedSeries::from_terms(&ring, carry)?;
                work = self.cut(work.sub(&q.mul(&tail)?)?)?;
            }
        }
        Ok(done)
    }

    /// The unique h with t-degrees in [lo, hi] such that `s - g h` has no
    /// t-degree in [lo, hi]; `s` must have no t-degree below `lo`.
    fn triangular_solve(&self, s: &GradedSeries, hi: i32) -> Result<GradedSeries> {
        let ring = s.ring().clone();
        let lo = match s.min_exp("t")? {
            Some(lo) if lo <= hi => lo,
            _ => return Ok(GradedSeries::zero(&ring)),
        };
        let p = Scalar::from_int(self.p as i64);
        let by_deg_g = self.g.by_power("t")?;
        let s_by = s.by_power("t")?;
        let mut phi: BTreeMap<i32, GradedSeries> = BTreeMap::new();
        for k in lo..=hi {
            let mut num = s_by.get(&k).cloned().unwrap_or_else(|| GradedSeries::zero(&ring));
            for (&j, ph) in &phi {
                if let Some(c) = by_deg_g.get(&(k - j)) {
                    if k - j > 0 {
                        num = num.sub(&c.mul(ph)?)?;
                    }
                }
            }
            let q = num.scale(&p.inv().unwrap());
            if let Some((m, c)) = q.terms().find(|(_, c)| !c.is_p_integral(self.p as u64)) {
                return Err(Error::PDivisibility {
                    exp: k,
                    witness: format!("{} has coefficient {}", q.render_monomial(m), c * &p),
                });
            }
            if !q.is_zero() {
                phi.insert(k, q);
            }
        }
        let mut out = GradedSeries::zero(&ring);
        for (k, ph) in phi {
            out = out.add(&ph.shift("t", k)?)?;
        }
        Ok(out)
    }

    /// The unique Φ with t-degrees in [-N, 0] such that S - g Φ has only
    /// positive t-degrees. Positive t-degrees of `s` play no role. Every
    /// division by p must be p-exact.
    pub fn divide_by_formal_p(&self, s: &GradedSeries) -> Result<GradedSeries> {
        self.triangular_solve(&s.filter_exp("t", |e| e <= 0)?, 0)
    }

    /// Removes the negative t-part of `f` modulo g, returning the p-local
    /// power-series representative (not yet in normal form).
    pub fn lift_to_power_series(&self, f: &GradedSeries) -> Result<GradedSeries> {
        if let Some((m, c)) = f.terms().find(|(_, c)| !c.is_p_integral(self.p as u64)) {
            return Err(Error::Integrality(format!(
                "coefficient {c} of {} has p in the denominator",
                f.render_monomial(m)
            )));
        }
        let neg = f.filter_exp("t", |e| e < 0)?;
        let h = self.triangular_solve(&neg, -1)?;
        let rep = f.sub(&self.g.mul(&h)?)?;
        debug_assert!(rep.min_exp("t")?.unwrap_or(0) >= 0);
        Ok(rep)
    }

    /// Whether `f` is congruent modulo g (over p-local Laurent series) to a
    /// power series in t without p in any denominator.
    pub fn is_integral_mod_ideal(&self, f: &GradedSeries) -> bool {
        self.lift_to_power_series(f).is_ok()
    }

    /// Normal form of a Laurent series via [`lift_to_power_series`](Self::lift_to_power_series).
    pub fn reduce(&self, f: &GradedSeries) -> Result<GradedSeries> {
        self.normal_form(&self.lift_to_power_series(f)?)
    }

    /// Whether a and b agree in the quotient.
    pub fn congruent(&self, a: &GradedSeries, b: &GradedSeries) -> Result<bool> {
        Ok(self.reduce(&a.sub(b)?)?.is_zero())
    }
}

/// An element of B, held in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSeries {
    ctx: FormalP,
    rep: GradedSeries,
}

impl QuotientSeries {
    pub fn new(ctx: &FormalP, f: &GradedSeries) -> Result<Self> {
        Ok(QuotientSeries { ctx: ctx.clone(), rep: ctx.reduce(f)? })
    }

    pub fn representative(&self) -> &GradedSeries {
        &self.rep
    }

    pub fn context(&self) -> &FormalP {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        Self::new(&self.ctx, &self.rep.add(&o.rep)?)
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        Self::new(&self.ctx, &self.rep.mul(&o.rep)?)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "generator_prime": self.ctx.p,
            "trunc_t": self.ctx.trunc_t,
            "representative": self.rep.to_json_value(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::ContextConfig;

    fn ctx() -> AmbientContext {
        AmbientContext::new(ContextConfig::new(5, 4)).unwrap()
    }

    #[test]
    fn generator_reduces_to_zero() {
        let c = ctx();
        for p in [2, 3, 5] {
            let fp = FormalP::new(&c, p).unwrap();
            assert_eq!(fp.generator().constant_term(), Scalar::from_int(p as i64));
            assert!(fp.normal_form(fp.generator()).unwrap().is_zero());
            assert_eq!(fp.normal_form(&c.t()).unwrap(), c.t());
        }
    }

    #[test]
    fn normal_form_of_p() {
        let c = ctx();
        let fp = FormalP::new(&c, 2).unwrap();
        // Over the ambient coefficients [p]_F(t) = B(p log t) is p times an
        // integral series with constant term 1, so p lies in the ideal.
        let unit = fp.generator().scale(&Scalar::ratio(1, 2));
        assert!(unit.is_integral());
        assert_eq!(unit.constant_term(), Scalar::one());
        assert!(fp.normal_form(&c.int(2)).unwrap().is_zero());
        let f = c.int(3).add(&c.b(1).unwrap().mul(&c.t()).unwrap().scale_int(5)).unwrap();
        let nf = fp.normal_form(&f).unwrap();
        assert_eq!(nf, c.one().add(&c.b(1).unwrap().mul(&c.t()).unwrap()).unwrap());
        assert_eq!(fp.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn integrality_examples() {
        let c = ctx();
        let fp = FormalP::new(&c, 2).unwrap();
        let half_g = fp.generator().scale(&Scalar::ratio(1, 2));
        assert!(fp.is_integral_mod_ideal(&half_g));
        assert!(!fp.is_integral_mod_ideal(&c.scalar(Scalar::ratio(1, 2))));
        assert!(fp.is_integral_mod_ideal(&c.t().scale(&Scalar::ratio(1, 3))));
        // g / t is a Laurent multiple of g
        let g_over_t = fp.generator().shift("t", -1).unwrap();
        assert!(fp.is_integral_mod_ideal(&g_over_t));
        assert!(fp.reduce(&g_over_t).unwrap().is_zero());
    }

    #[test]
    fn divide_by_formal_p_examples() {
        let c = ctx();
        let fp = FormalP::new(&c, 3).unwrap();
        let g = fp.generator();
        assert_eq!(fp.divide_by_formal_p(g).unwrap(), c.one());
        let s = g.shift("t", -1).unwrap().filter_exp("t", |e| e <= 0).unwrap();
        let t_inv = GradedSeries::var_pow(c.ring(), "t", -1).unwrap();
        assert_eq!(fp.divide_by_formal_p(&s).unwrap(), t_inv);
        match fp.divide_by_formal_p(&c.one()) {
            Err(Error::PDivisibility { exp, .. }) => assert_eq!(exp, 0),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn quotient_json() {
        let c = ctx();
        let fp = FormalP::new(&c, 2).unwrap();
        let q = QuotientSeries::new(&fp, &c.t()).unwrap();
        let v = q.to_json_value();
        assert_eq!(v["generator_prime"], 2);
        assert!(v["trunc_t"].is_null());
    }
}
