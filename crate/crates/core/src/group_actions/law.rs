use std::sync::Arc;

use crate::error::Result;
use crate::fgl::AmbientContext;
use crate::quotient::FormalP;
use crate::series::{GradedSeries, SeriesRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LawKind {
    Universal,
    Additive,
}

/// A formal group law F(x, y) in the ambient ring together with its
/// quotient B = R[[t]]/([p]_F(t)/t).
#[derive(Debug, Clone)]
pub struct FormalLaw {
    kind: LawKind,
    ctx: Arc<AmbientContext>,
    fgl: GradedSeries,
    fp: FormalP,
    /// [i]_F(t) for i = 0..p.
    multiples: Vec<GradedSeries>,
    /// Total degree kept in t, x, y, ... (variables in `heavy` count p).
    degree: i32,
    heavy: Vec<String>,
}

/// Output variables of the invariant decomposition stand for orbit
/// products, so they carry weight p in the truncation.
const HEAVY: [&str; 2] = ["u", "v"];

impl FormalLaw {
    pub fn universal(ctx: &Arc<AmbientContext>, p: u32) -> Result<Self> {
        let fp = FormalP::new(ctx, p)?;
        let multiples = (0..=p as i64).map(|i| ctx.formal_int_mul(i)).collect::<Result<_>>()?;
        Ok(Self::assemble(LawKind::Universal, ctx, ctx.universal_fgl().clone(), fp, multiples))
    }

    /// F(x, y) = x + y; B = (R/p)[[t]].
    pub fn additive(ctx: &Arc<AmbientContext>, p: u32) -> Result<Self> {
        let fp = FormalP::additive(ctx.ring(), p)?;
        let fgl = ctx.var("x")?.add(&ctx.var("y")?)?;
        let multiples = (0..=p as i64).map(|i| ctx.t().scale_int(i)).collect();
        Ok(Self::assemble(LawKind::Additive, ctx, fgl, fp, multiples))
    }

    fn assemble(
        kind: LawKind,
        ctx: &Arc<AmbientContext>,
        fgl: GradedSeries,
        fp: FormalP,
        multiples: Vec<GradedSeries>,
    ) -> Self {
        let degree = ctx.deg();
        let fp = fp.with_trunc_t(degree);
        let heavy = HEAVY.iter().map(|s| s.to_string()).collect();
        FormalLaw { kind, ctx: ctx.clone(), fgl, fp, multiples, degree, heavy }
    }

    /// The same law with every variable of weight one in the truncation.
    pub fn with_light_vars(mut self) -> Self {
        self.heavy.clear();
        self
    }

    /// The total degree D kept by [`truncate`](Self::truncate).
    pub fn degree(&self) -> i32 {
        self.degree
    }

    /// Drops every term of total degree > D, where t and the positive
    /// generators count one (p for the heavy output variables).
    ///
    /// Unlike the ambient truncation, this ideal is stable under x ↦ F(x, t)
    /// and under normal forms.
    pub fn truncate(&self, f: &GradedSeries) -> GradedSeries {
        let p = self.p() as i32;
        let weights: Vec<i32> = f
            .ring()
            .vars()
            .iter()
            .map(|v| {
                if v.weight <= 0 {
                    0
                } else if self.heavy.contains(&v.name) {
                    p
                } else {
                    1
                }
            })
            .collect();
        let d = self.degree;
        f.filter_terms(|e| e.iter().zip(&weights).map(|(a, w)| a * w).sum::<i32>() <= d)
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    pub fn ctx(&self) -> &Arc<AmbientContext> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        self.ctx.ring()
    }

    pub fn p(&self) -> u32 {
        self.fp.p()
    }

    pub fn formal_p(&self) -> &FormalP {
        &self.fp
    }

    pub fn fgl(&self) -> &GradedSeries {
        &self.fgl
    }

    pub fn add(&self, a: &GradedSeries, b: &GradedSeries) -> Result<GradedSeries> {
        Ok(self.fgl.substitute(self.ring(), &[("x", a), ("y", b)])?)
    }

    /// [i]_F(t), 0 <= i <= p.
    pub fn multiple_of_t(&self, i: usize) -> &GradedSeries {
        &self.multiples[i]
    }

    /// [k]_F(t) for any k >= 0, by repeated addition past p.
    pub fn any_multiple_of_t(&self, k: usize) -> Result<GradedSeries> {
        if k < self.multiples.len() {
            return Ok(self.multiples[k].clone());
        }
        let mut acc = self.multiples.last().unwrap().clone();
        for _ in self.multiples.len()..=k {
            acc = self.add(&acc, &self.ctx.t())?;
        }
        Ok(acc)
    }

    /// ∏_{i=0}^{p-1} F(a, [i]_F t): the orbit product of a under the shift.
    pub fn orbit_product_of(&self, a: &GradedSeries) -> Result<GradedSeries> {
        let mut out = a.clone();
        for i in 1..self.p() as usize {
            out = out.mul(&self.add(a, &self.multiples[i])?)?;
        }
        Ok(out)
    }

    /// c(t) = ∏_{0<i<p} [i]_F t, the linear coefficient of the orbit product.
    pub fn orbit_unit(&self) -> Result<GradedSeries> {
        let mut out = self.ctx.one();
        for m in &self.multiples[1..self.p() as usize] {
            out = out.mul(m)?;
        }
        Ok(out)
    }

    /// Normal form in B, truncated.
    pub fn reduce(&self, f: &GradedSeries) -> Result<GradedSeries> {
        Ok(self.truncate(&self.fp.normal_form(&self.truncate(f))?))
    }

    /// [`reduce`](Self::reduce) for a Laurent series in t that is
    /// integral modulo the ideal.
    pub fn reduce_laurent(&self, f: &GradedSeries) -> Result<GradedSeries> {
        Ok(self.truncate(&self.fp.reduce(f)?))
    }
}
