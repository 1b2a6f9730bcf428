use crate::error::Result;
use crate::group_actions::{
    check_minor_determinant, check_minors, compositions, invariant_decompose, prop_xy_series, random_invariant,
    twisted_fgl_alpha, ContinuousAutomorphism, FormalLaw,
};

use super::{check, Report, SuiteConfig};

fn blocks_label(b: &[usize]) -> String {
    b.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
}

/// det A(n; N) for every composition with N <= max_n; all N x N minors of
/// A(n; m), m <= N + 2, for N < max_n.
pub(super) fn minors(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut rep = Report::new("minors", None, None);
    if let Some(blocks) = &cfg.blocks {
        let n: usize = blocks.iter().sum();
        let widths: Vec<usize> = match cfg.width {
            Some(w) => vec![w],
            None => (n..=n + 2).collect(),
        };
        let label = format!("A({};{})", blocks_label(blocks), cfg.width.unwrap_or(n));
        let r = check_minors(blocks, &widths);
        rep.case(label, r.and_then(|r| check(r.determinant_ok && r.minors_divisible, || r.witness.unwrap_or_default())));
        return Ok(vec![rep]);
    }
    for n in 1..=cfg.max_n {
        for blocks in compositions(n) {
            let exhaustive = n < cfg.max_n;
            let r = check_minor_determinant(&blocks, exhaustive);
            let label = format!("A({};{})", blocks_label(&blocks), n);
            rep.case(
                label,
                r.and_then(|r| {
                    check(r.determinant_ok && r.minors_divisible, || r.witness.clone().unwrap_or_default())
                }),
            );
        }
    }
    Ok(vec![rep])
}

pub(super) fn theorem_g(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut rng = cfg.rng();
    let mut out = Vec::new();
    for &p in &cfg.primes {
        let mut rep = Report::new("thmG", Some(p), None);
        let law = FormalLaw::universal(&ctx, p)?;
        let sigma = ContinuousAutomorphism::shift(&law, "x", 1)?;
        rep.case(
            "sigma^p = id",
            sigma.pow(p as usize).map(|s| (!s.is_identity()).then(|| format!("σ^p: x ↦ {}", s.image()))),
        );
        for k in 0..cfg.samples {
            let outcome = random_invariant(&law, &mut rng).and_then(|(phi, psi)| {
                let d = invariant_decompose(&law, &phi, &sigma, "u")?;
                if let Some(c) = d.certificates.iter().find(|c| !c.divisible) {
                    return Ok(Some(format!("step {} not divisible", c.degree)));
                }
                check(d.psi == psi, || format!("ψ = {}, expected {psi}", d.psi))
            });
            rep.case(format!("random invariant #{k}"), outcome);
        }
        out.push(rep);
    }
    let law = FormalLaw::additive(&ctx, 2)?;
    let mut rep = Report::new("thmG-additive", Some(2), None);
    let sigma = ContinuousAutomorphism::shift(&law, "x", 1)?;
    let x = ctx.var("x")?;
    let phi = x.mul(&x.add(&ctx.t())?)?;
    rep.case(
        "x(x+t)",
        invariant_decompose(&law, &phi, &sigma, "u").and_then(|d| {
            let u = ctx.var("u")?;
            check(d.psi == u, || format!("ψ = {}", d.psi))
        }),
    );
    out.push(rep);
    Ok(out)
}

pub(super) fn xy(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    let mut run = |law: FormalLaw, label: &str| -> Result<()> {
        let p = law.p();
        let mut rep = Report::new(label, Some(p), None);
        let additive = law.kind() == crate::group_actions::LawKind::Additive;
        let uv = ctx.var("u")?.add(&ctx.var("v")?)?;
        rep.case(
            "G(u,v)",
            prop_xy_series(&law).and_then(|r| {
                if !r.identity_holds {
                    return Ok(Some(format!("G(π(x),π(y)) ≠ π(F(x,y)) for G = {}", r.g)));
                }
                if !r.all_integral() {
                    return Ok(Some(format!("non-integral coefficient in {}", r.g)));
                }
                check(!additive || r.g == uv, || format!("additive G = {}", r.g))
            }),
        );
        rep.case(
            "F^alpha",
            twisted_fgl_alpha(&law).and_then(|r| {
                if let Some(c) = r.coefficients.iter().find(|c| !c.integral) {
                    return Ok(Some(format!("coefficient of u^{} v^{} not integral", c.i, c.j)));
                }
                if !r.is_fgl() {
                    return Ok(Some(format!(
                        "not a FGL: unit {}, commutative {}, associative {}",
                        r.unit, r.commutative, r.associative
                    )));
                }
                if !r.frobenius {
                    return Ok(Some("t = 0 specialization differs from the p-th power twist".into()));
                }
                check(!additive || r.reduced == uv, || format!("additive F^α = {}", r.reduced))
            }),
        );
        out.push(rep);
        Ok(())
    };
    for &p in &cfg.primes {
        run(FormalLaw::universal(&ctx, p)?, "xy")?;
    }
    run(FormalLaw::additive(&ctx, 2)?, "xy-additive")?;
    Ok(out)
}
