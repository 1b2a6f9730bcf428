use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fgl::{AmbientContext, CosetReps};
use crate::quotient::{FormalP, QuotientSeries};
use crate::series::GradedSeries;

use super::OperationDescriptor;

/// Φ(ī)(e) together with the data certifying it.
#[derive(Debug, Clone)]
pub struct PhiResult {
    /// Φ(ī)(e): t-degrees in [-N, 0].
    pub phi: GradedSeries,
    /// S = e^p - St(ī)(e).
    pub s: GradedSeries,
    /// S - [p]_Ω Φ: strictly positive t-degrees.
    pub remainder: GradedSeries,
}

/// Everything needed to evaluate St(ī), Φ(ī) and their slices for one
/// prime and choice of representatives.
#[derive(Debug, Clone)]
pub struct SymmetricOperation {
    st: OperationDescriptor,
    fp: FormalP,
    omega: GradedSeries,
}

impl SymmetricOperation {
    pub fn new(ctx: &Arc<AmbientContext>, reps: &CosetReps) -> Result<Self> {
        let st = OperationDescriptor::quillen_steenrod(ctx, reps)?;
        let fp = FormalP::new(ctx, reps.p())?;
        let omega = ctx.invariant_form()?;
        Ok(SymmetricOperation { st, fp, omega })
    }

    pub fn ctx(&self) -> &Arc<AmbientContext> {
        self.st.ctx()
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    pub fn reps(&self) -> &CosetReps {
        self.st.reps().expect("steenrod descriptor")
    }

    pub fn steenrod(&self) -> &OperationDescriptor {
        &self.st
    }

    pub fn formal_p(&self) -> &FormalP {
        &self.fp
    }

    pub fn omega(&self) -> &GradedSeries {
        &self.omega
    }

    /// St(ī)(e).
    pub fn st(&self, e: &GradedSeries) -> Result<GradedSeries> {
        self.st.apply(e)
    }

    /// Φ(ī)(e) from e^p - St(ī)(e), with its certificate checked.
    pub fn phi(&self, e: &GradedSeries) -> Result<PhiResult> {
        let s = e.pow(self.p())?.sub(&self.st(e)?)?;
        let phi = self.fp.divide_by_formal_p(&s)?;
        let remainder = s.sub(&self.fp.generator().mul(&phi)?)?;
        if remainder.min_exp("t")?.is_some_and(|k| k <= 0) {
            return Err(Error::Certificate(format!(
                "S - [p]Φ has a nonpositive t-degree: {}",
                remainder.filter_exp("t", |k| k <= 0)?
            )));
        }
        if phi.max_exp("t")?.is_some_and(|k| k > 0) {
            return Err(Error::Certificate("Φ has positive t-degrees".into()));
        }
        Ok(PhiResult { phi, s, remainder })
    }

    /// Φ(ī)^{q}: Res_{t=0} q Φ ω_t / t.
    pub fn slice(&self, phi: &GradedSeries, q: &GradedSeries) -> Result<GradedSeries> {
        residue_slice(phi, q, &self.omega)
    }

    /// st(ī)^{f}(v): the Chow trace of Res_{t=0} f St(v) ω_t / t.
    pub fn st_slice(&self, v: &GradedSeries, f: &GradedSeries) -> Result<GradedSeries> {
        Ok(chow_trace(&residue_slice(&self.st(v)?, f, &self.omega)?))
    }

    /// ∏_l ∏_j (λ_l +_F [i_j]_F t)^{m_l} for roots λ_l with multiplicities
    /// m_l (negative for virtual bundles).
    pub fn omega_che(&self, roots: &[(GradedSeries, i32)]) -> Result<GradedSeries> {
        omega_che(self.ctx(), self.reps(), roots)
    }
}

/// Res_{t=0} q f ω / t, i.e. the t^0 coefficient of q f ω.
pub fn residue_slice(f: &GradedSeries, q: &GradedSeries, omega: &GradedSeries) -> Result<GradedSeries> {
    Ok(q.mul(f)?.mul(omega)?.coefficient("t", 0)?)
}

/// The Chow trace: all ambient generators b_i set to zero.
pub fn chow_trace(e: &GradedSeries) -> GradedSeries {
    e.drop_negative_weight()
}

/// ∏_l ∏_j (λ_l +_F [i_j]_F t)^{m_l}.
pub fn omega_che(
    ctx: &AmbientContext,
    reps: &CosetReps,
    roots: &[(GradedSeries, i32)],
) -> Result<GradedSeries> {
    let mut out = ctx.one();
    for (lambda, mult) in roots {
        for &i in reps.reps() {
            let factor = ctx.fgl_add(lambda, &ctx.formal_int_mul(i)?)?;
            out = out.mul(&factor.powi(*mult)?)?;
        }
    }
    Ok(out)
}

/// Sq(e) in B, computed as St(1..p-1)(e) and reduced modulo [p]_F(t) t.
pub fn tom_dieck_sq(
    sq: &OperationDescriptor,
    fp: &FormalP,
    e: &GradedSeries,
) -> Result<QuotientSeries> {
    let lifted = sq.apply(e)?;
    QuotientSeries::new(fp, &lifted).map_err(|err| match err {
        Error::Integrality(w) | Error::PDivisibility { witness: w, .. } => {
            Error::Integrality(format!("Sq({e}) is not integral: {w}"))
        }
        other => other,
    })
}
