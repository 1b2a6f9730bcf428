use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fgl::{b_name, primed_name, AmbientContext, CosetReps};
use crate::series::{GradedSeries, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Identity,
    /// Quillen-style St(ī) into Laurent series in t with ī_s inverted.
    Steenrod,
    /// tom Dieck-style Sq, valued in B.
    TomDieck,
    /// Total Landweber-Novikov operation, coefficients in b'.
    LandweberNovikov,
    Custom,
}

/// A multiplicative operation, given by its series γ(x) over the target.
///
/// The coefficient map sends b_i to b̃_i, the coefficient of s^(i+1) in
/// γ(B(s/c(t))), c = γ'(0): the exponential of the twisted law F^γ.
#[derive(Debug, Clone)]
pub struct OperationDescriptor {
    ctx: Arc<AmbientContext>,
    kind: OpKind,
    reps: Option<CosetReps>,
    gamma: GradedSeries,
    c: GradedSeries,
    btilde: Vec<GradedSeries>,
}

impl OperationDescriptor {
    /// St(ī): γ = x ∏_j (x +_F [i_j]_F t).
    pub fn quillen_steenrod(ctx: &Arc<AmbientContext>, reps: &CosetReps) -> Result<Self> {
        let x = ctx.var("x")?;
        let mut gamma = x.clone();
        for &i in reps.reps() {
            let it = ctx.formal_int_mul(i)?;
            gamma = gamma.mul(&ctx.fgl_add(&x, &it)?)?;
        }
        let d = Self::build(ctx, OpKind::Steenrod, Some(reps.clone()), gamma)?;
        d.check_steenrod_lead()?;
        Ok(d)
    }

    /// Sq: γ = x ∏_{0<i<p} (x +_F [i]_F t), i.e. St for the least positive
    /// representatives, to be reduced into B.
    pub fn tom_dieck(ctx: &Arc<AmbientContext>, p: u32) -> Result<Self> {
        let mut d = Self::quillen_steenrod(ctx, &CosetReps::canonical(p)?)?;
        d.kind = OpKind::TomDieck;
        Ok(d)
    }

    /// S^Tot: γ = x + b'1 x^2 + b'2 x^3 + ... (needs a primed context).
    pub fn landweber_novikov(ctx: &Arc<AmbientContext>) -> Result<Self> {
        if !ctx.config().primed {
            return Err(Error::InvalidArgument(
                "Landweber-Novikov needs a context with primed generators".into(),
            ));
        }
        let x = ctx.var("x")?;
        let mut gamma = x.clone();
        for i in 1..=ctx.bweight() as usize {
            gamma = gamma.add(&ctx.var(&primed_name(i))?.mul(&x.pow(i as u32 + 1)?)?)?;
        }
        Self::build(ctx, OpKind::LandweberNovikov, None, gamma)
    }

    pub fn identity(ctx: &Arc<AmbientContext>) -> Result<Self> {
        Self::build(ctx, OpKind::Identity, None, ctx.var("x")?)
    }

    /// Any γ(x) with zero constant term and invertible linear coefficient.
    pub fn custom(ctx: &Arc<AmbientContext>, gamma: GradedSeries) -> Result<Self> {
        Self::build(ctx, OpKind::Custom, None, gamma)
    }

    fn build(
        ctx: &Arc<AmbientContext>,
        kind: OpKind,
        reps: Option<CosetReps>,
        gamma: GradedSeries,
    ) -> Result<Self> {
        if !gamma.coefficient("x", 0)?.is_zero() {
            return Err(Error::InvalidArgument("γ must have zero constant term".into()));
        }
        let c = gamma.coefficient("x", 1)?;
        let cinv = c.mul_inverse()?;
        let s = ctx.var("s")?;
        let arg = ctx.exp_of(&s.mul(&cinv)?)?;
        let twisted = gamma.compose("x", &arg)?;
        if twisted.coefficient("s", 1)? != ctx.one() {
            return Err(Error::Certificate("twisted exponential is not normalized".into()));
        }
        let btilde = (1..=ctx.bweight())
            .map(|i| twisted.coefficient("s", i + 1).map_err(Error::from))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperationDescriptor { ctx: ctx.clone(), kind, reps, gamma, c, btilde })
    }

    fn check_steenrod_lead(&self) -> Result<()> {
        let reps = self.reps.as_ref().expect("steenrod descriptor has reps");
        let p = reps.p() as i32;
        let (m, coeff) = self.c.lead().ok_or_else(|| Error::Certificate("c(t) = 0".into()))?;
        let expect = GradedSeries::var_pow(self.ctx.ring(), "t", p - 1)?;
        let lead_m = GradedSeries::monomial(self.ctx.ring(), m.exps().to_vec(), Scalar::one())?;
        if lead_m != expect || *coeff != Scalar::from_int(reps.product()) {
            return Err(Error::Certificate(format!(
                "c(t) does not start with {} t^{}",
                reps.product(),
                p - 1
            )));
        }
        Ok(())
    }

    pub fn ctx(&self) -> &Arc<AmbientContext> {
        &self.ctx
    }

    pub fn kind(&self) -> OpKind {
        self.kind
    }

    pub fn reps(&self) -> Option<&CosetReps> {
        self.reps.as_ref()
    }

    pub fn p(&self) -> Option<u32> {
        self.reps.as_ref().map(|r| r.p())
    }

    /// γ(x).
    pub fn gamma(&self) -> &GradedSeries {
        &self.gamma
    }

    /// c(t) = γ'(0).
    pub fn c(&self) -> &GradedSeries {
        &self.c
    }

    /// b̃_i for i = 1..W.
    pub fn btilde(&self, i: usize) -> &GradedSeries {
        &self.btilde[i - 1]
    }

    /// Stable operations are those with γ = x + O(x^2).
    pub fn is_stable(&self) -> bool {
        self.c == self.ctx.one()
    }

    /// γ(a).
    pub fn gamma_of(&self, a: &GradedSeries) -> Result<GradedSeries> {
        Ok(self.gamma.compose("x", a)?)
    }

    /// φ̂(u): u's ambient polynomial with b_i -> b̃_i.
    pub fn coefficient_map(&self, u: &GradedSeries) -> Result<GradedSeries> {
        let names: Vec<String> = (1..=self.btilde.len()).map(b_name).collect();
        let bindings: Vec<(&str, &GradedSeries)> =
            names.iter().map(String::as_str).zip(self.btilde.iter()).collect();
        Ok(u.substitute(self.ctx.ring(), &bindings)?)
    }

    /// The operation on L[[z1, z2, z3]]: b_i -> b̃_i and z_j -> γ(z_j).
    pub fn apply(&self, e: &GradedSeries) -> Result<GradedSeries> {
        let mut names: Vec<String> = (1..=self.btilde.len()).map(b_name).collect();
        let mut images: Vec<GradedSeries> = self.btilde.clone();
        for z in e.support_vars() {
            if z.starts_with('z') {
                names.push(z.to_string());
                images.push(self.gamma_of(&self.ctx.var(z)?)?);
            } else if !z.starts_with('b') {
                return Err(Error::InvalidArgument(format!(
                    "operations act on L[[z1..z3]]; found `{z}`"
                )));
            }
        }
        let bindings: Vec<(&str, &GradedSeries)> =
            names.iter().map(String::as_str).zip(images.iter()).collect();
        Ok(e.substitute(self.ctx.ring(), &bindings)?)
    }

    /// The FGL-morphism equation φ̂(F)(γ(u), γ(v)) = γ(F(u, v)).
    pub fn check_fgl_morphism(&self) -> Result<bool> {
        let ctx = &self.ctx;
        let f = ctx.universal_fgl();
        let phi_f = self.coefficient_map(f)?;
        let gu = self.gamma_of(&ctx.var("u")?)?;
        let gv = self.gamma_of(&ctx.var("v")?)?;
        let lhs = phi_f.substitute(ctx.ring(), &[("x", &gu), ("y", &gv)])?;
        let fuv = ctx.fgl_add(&ctx.var("u")?, &ctx.var("v")?)?;
        let rhs = self.gamma_of(&fuv)?;
        Ok(lhs == rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::ContextConfig;

    fn ctx() -> Arc<AmbientContext> {
        Arc::new(AmbientContext::new(ContextConfig::new(4, 3)).unwrap())
    }

    #[test]
    fn identity_is_identity() {
        let c = ctx();
        let id = OperationDescriptor::identity(&c).unwrap();
        for i in 1..=3 {
            assert_eq!(id.btilde(i), &c.b(i).unwrap());
        }
        assert!(id.is_stable());
    }

    #[test]
    fn steenrod_twisted_exponential_p2() {
        let c = ctx();
        let st = OperationDescriptor::quillen_steenrod(&c, &CosetReps::canonical(2).unwrap()).unwrap();
        let b1t = st.btilde(1);
        assert_eq!(b1t.coeff_of(&[("t", -2)]).unwrap(), Scalar::one());
        assert_eq!(b1t.coeff_of(&[("t", -1), ("b1", 1)]).unwrap(), Scalar::from_int(3));
        assert_eq!(b1t.coeff_of(&[("b2", 1)]).unwrap(), Scalar::from_int(3));
        assert_eq!(b1t.coeff_of(&[("b1", 2)]).unwrap(), Scalar::from_int(-2));
        assert!(!st.is_stable());
    }

    #[test]
    fn steenrod_gamma_low_terms() {
        let c = ctx();
        let st = OperationDescriptor::quillen_steenrod(&c, &CosetReps::canonical(2).unwrap()).unwrap();
        let g = st.gamma();
        assert_eq!(g.coeff_of(&[("x", 1), ("t", 1)]).unwrap(), Scalar::one());
        assert_eq!(g.coeff_of(&[("x", 2)]).unwrap(), Scalar::one());
        assert_eq!(g.coeff_of(&[("x", 2), ("t", 1), ("b1", 1)]).unwrap(), Scalar::from_int(2));
        assert_eq!(g.coeff_of(&[("x", 3), ("t", 1), ("b2", 1)]).unwrap(), Scalar::from_int(3));
    }

    #[test]
    fn morphism_equation() {
        let c = ctx();
        for reps in [CosetReps::canonical(2).unwrap(), CosetReps::symmetric(3).unwrap()] {
            let st = OperationDescriptor::quillen_steenrod(&c, &reps).unwrap();
            assert!(st.check_fgl_morphism().unwrap());
        }
    }

    #[test]
    fn st_of_z_is_gamma() {
        let c = ctx();
        let st = OperationDescriptor::quillen_steenrod(&c, &CosetReps::canonical(3).unwrap()).unwrap();
        let z = c.var("z1").unwrap();
        assert_eq!(st.apply(&z).unwrap(), st.gamma_of(&z).unwrap());
    }

    #[test]
    fn landweber_novikov_first_coefficient() {
        let c = Arc::new(AmbientContext::new(ContextConfig::new(4, 3).with_primed()).unwrap());
        let ln = OperationDescriptor::landweber_novikov(&c).unwrap();
        let expect = c.b(1).unwrap().add(&c.var("b'1").unwrap()).unwrap();
        assert_eq!(ln.btilde(1), &expect);
        assert!(ln.is_stable());
        assert!(OperationDescriptor::landweber_novikov(&ctx()).is_err());
    }
}
