use crate::error::{Error, Result};
use crate::series::GradedSeries;

use super::FormalLaw;

/// A continuous B-algebra automorphism of B[[x]], given by x^σ = Σ λ_j x^j
/// in normal form.
#[derive(Debug, Clone)]
pub struct ContinuousAutomorphism {
    var: String,
    image: GradedSeries,
    law: FormalLaw,
}

impl ContinuousAutomorphism {
    pub fn new(law: &FormalLaw, var: &str, image: &GradedSeries) -> Result<Self> {
        let image = law.reduce(image)?;
        let a = ContinuousAutomorphism { var: var.to_string(), image, law: law.clone() };
        a.check()?;
        Ok(a)
    }

    /// x ↦ F(x, [k]_F t).
    pub fn shift(law: &FormalLaw, var: &str, k: usize) -> Result<Self> {
        let x = law.ctx().var(var)?;
        let image = law.add(&x, &law.any_multiple_of_t(k)?)?;
        Self::new(law, var, &image)
    }

    pub fn identity(law: &FormalLaw, var: &str) -> Result<Self> {
        let x = law.ctx().var(var)?;
        Self::new(law, var, &x)
    }

    fn check(&self) -> Result<()> {
        let l1 = self.lambda(1)?;
        let c = l1.constant_term();
        let p = num_bigint::BigInt::from(self.law.p());
        if c.residue_mod(&p).is_none_or(|r| r == num_bigint::BigInt::from(0)) {
            return Err(Error::InvalidArgument(format!("λ_1 = {l1} is not a unit")));
        }
        if !self.lambda(0)?.constant_term().is_zero() {
            return Err(Error::InvalidArgument("λ_0 is not topologically nilpotent".into()));
        }
        Ok(())
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// x^σ.
    pub fn image(&self) -> &GradedSeries {
        &self.image
    }

    /// λ_j, the coefficient of x^j in x^σ.
    pub fn lambda(&self, j: i32) -> Result<GradedSeries> {
        Ok(self.image.coefficient(&self.var, j)?)
    }

    /// t_σ = λ_0.
    pub fn t_sigma(&self) -> Result<GradedSeries> {
        self.lambda(0)
    }

    /// φ(x^σ), reduced.
    pub fn apply(&self, phi: &GradedSeries) -> Result<GradedSeries> {
        let out = phi.substitute(phi.ring(), &[(self.var.as_str(), &self.image)])?;
        self.law.reduce(&out)
    }

    /// The automorphism x ↦ (x^σ)^τ: first σ, then τ.
    pub fn then(&self, tau: &Self) -> Result<Self> {
        if tau.var != self.var {
            return Err(Error::InvalidArgument("automorphisms act on different variables".into()));
        }
        Self::new(&self.law, &self.var, &tau.apply(&self.image)?)
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::identity(&self.law, &self.var)?;
        for _ in 0..k {
            acc = acc.then(self)?;
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.law.ctx().var(&self.var).is_ok_and(|x| x == self.image)
    }
}
