use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{GradedSeries, Scalar, SeriesError};

use super::{ContinuousAutomorphism, FormalLaw};

/// One stripping step: α_n was divisible by c(t)^n.
#[derive(Debug, Clone, Serialize)]
pub struct StripCertificate {
    pub degree: i32,
    /// t-adic order of α_n in normal form (None when α_n = 0).
    pub t_order: Option<i32>,
    /// (p - 1) n, the order of c(t)^n.
    pub required: i32,
    pub divisible: bool,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// ψ in the output variable with φ(x) = ψ(π(x)).
    pub psi: GradedSeries,
    pub certificates: Vec<StripCertificate>,
}

/// Writes a σ-invariant φ(x) as ψ(π(x)), π(x) = ∏_i x^{σ^i}, stripping the
/// lowest x-coefficient at every step. Other variables ride along as
/// coefficients.
pub fn invariant_decompose(
    law: &FormalLaw,
    phi: &GradedSeries,
    sigma: &ContinuousAutomorphism,
    out_var: &str,
) -> Result<Decomposition> {
    let var = sigma.var();
    let phi = law.reduce(phi)?;
    let moved = sigma.apply(&phi)?.sub(&phi)?;
    if !moved.is_zero() {
        return Err(Error::NotInvariant(format!("φ(x^σ) - φ(x) = {moved}")));
    }
    let p = law.p() as i32;
    let ctx = law.ctx();
    let pi = law.reduce(&law.orbit_product_of(&ctx.var(var)?)?)?;
    let c = law.orbit_unit()?;
    let y = ctx.var(out_var)?;

    let mut rest = phi;
    let mut psi = ctx.zero();
    let mut certificates = Vec::new();
    let mut last = -1;
    while let Some(n) = rest.min_exp(var)? {
        if n <= last {
            return Err(SeriesError::NonConvergent("invariant stripping".into()).into());
        }
        last = n;
        let alpha = rest.coefficient(var, n)?;
        let required = (p - 1) * n;
        let t_order = alpha.min_exp("t")?;
        let quotient = match alpha.exact_divide(&c.pow(n as u32)?) {
            Ok(q) => Some(q),
            Err(SeriesError::NotDivisible { .. }) => None,
            Err(e) => return Err(e.into()),
        };
        certificates.push(StripCertificate { degree: n, t_order, required, divisible: quotient.is_some() });
        let Some(q) = quotient else {
            return Err(Error::Certificate(format!(
                "coefficient of {var}^{n} is not divisible by c(t)^{n}: {alpha}"
            )));
        };
        let gamma = law.reduce(&q)?;
        psi = psi.add(&gamma.mul(&y.pow(n as u32)?)?)?;
        rest = law.reduce(&rest.sub(&gamma.mul(&pi.pow(n as u32)?)?)?)?;
    }
    Ok(Decomposition { psi: law.truncate(&psi), certificates })
}

/// A random invariant Σ_k r_k π(x)^k with small integer polynomials r_k in
/// t, b1, b2, and the ψ it should decompose to.
pub fn random_invariant<R: rand::Rng>(law: &FormalLaw, rng: &mut R) -> Result<(GradedSeries, GradedSeries)> {
    let ctx = law.ctx();
    let ring = ctx.ring();
    let pi = law.orbit_product_of(&ctx.var("x")?)?;
    let u = ctx.var("u")?;
    let b_monomials: &[&[(&str, i32)]] = &[&[], &[("b1", 1)], &[("b2", 1)], &[("b1", 2)]];
    let bw = ctx.bweight();
    let mut phi = ctx.zero();
    let mut psi = ctx.zero();
    for k in 0..=(law.degree() / law.p() as i32) {
        let mut r = ctx.zero();
        for _ in 0..3 {
            let c = rng.gen_range(-3i64..=3);
            let a = rng.gen_range(0..=3);
            let mut powers = vec![("t", a)];
            powers.extend(b_monomials[rng.gen_range(0..b_monomials.len())].iter().copied());
            if powers.iter().filter(|(v, _)| v.starts_with('b')).map(|(v, e)| e * v[1..].parse::<i32>().unwrap()).sum::<i32>() > bw {
                continue;
            }
            r = r.add(&GradedSeries::term(ring, Scalar::from_int(c), &powers)?)?;
        }
        phi = phi.add(&r.mul(&pi.pow(k as u32)?)?)?;
        psi = psi.add(&r.mul(&u.pow(k as u32)?)?)?;
    }
    Ok((law.clone().with_light_vars().reduce(&phi)?, law.reduce(&psi)?))
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientVerdict {
    pub i: i32,
    pub j: i32,
    pub integral: bool,
}

#[derive(Debug, Clone)]
pub struct XyResult {
    /// G(u, v) in normal form.
    pub g: GradedSeries,
    pub certificates: Vec<StripCertificate>,
    pub coefficients: Vec<CoefficientVerdict>,
    /// G(π(x), π(y)) ≡ π(F(x, y)).
    pub identity_holds: bool,
}

impl XyResult {
    pub fn all_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.integral) && self.certificates.iter().all(|c| c.divisible)
    }
}

fn coefficient_grid(f: &GradedSeries) -> Result<Vec<(i32, i32, GradedSeries)>> {
    let mut out = Vec::new();
    for (i, fi) in f.by_power("u")? {
        for (j, fij) in fi.by_power("v")? {
            out.push((i, j, fij));
        }
    }
    Ok(out)
}

/// The series G(u, v) with π(F(x, y)) = G(π(x), π(y)), found by decomposing
/// first in x and then in y.
pub fn prop_xy_series(law: &FormalLaw) -> Result<XyResult> {
    let ctx = law.ctx();
    let (x, y) = (ctx.var("x")?, ctx.var("y")?);
    let target = law.reduce(&law.orbit_product_of(&law.add(&x, &y)?)?)?;
    let sigma = ContinuousAutomorphism::shift(law, "x", 1)?;
    let tau = ContinuousAutomorphism::shift(law, "y", 1)?;
    let first = invariant_decompose(law, &target, &sigma, "u")?;
    let second = invariant_decompose(law, &first.psi, &tau, "v")?;
    let g = second.psi;

    let fp = law.formal_p();
    let coefficients = coefficient_grid(&g)?
        .into_iter()
        .map(|(i, j, c)| CoefficientVerdict { i, j, integral: fp.is_integral_mod_ideal(&c) })
        .collect();
    let pix = law.orbit_product_of(&x)?;
    let piy = law.orbit_product_of(&y)?;
    let light = law.clone().with_light_vars();
    let back = light.reduce(&g.substitute(ctx.ring(), &[("u", &pix), ("v", &piy)])?)?;
    let mut certificates = first.certificates;
    certificates.extend(second.certificates);
    Ok(XyResult { g, certificates, coefficients, identity_holds: back == target })
}

#[derive(Debug, Clone)]
pub struct AlphaResult {
    /// F^α with t inverted, before reduction.
    pub laurent: GradedSeries,
    /// F^α with coefficients in B (normal form); integral coefficients only.
    pub reduced: GradedSeries,
    pub coefficients: Vec<CoefficientVerdict>,
    pub unit: bool,
    pub commutative: bool,
    pub associative: bool,
    /// F^α at t = 0 agrees with Σ a_ij^p u^i v^j mod p.
    pub frobenius: bool,
}

impl AlphaResult {
    pub fn all_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.integral)
    }

    pub fn is_fgl(&self) -> bool {
        self.unit && self.commutative && self.associative
    }
}

/// F^α(u, v) = α(F(β(u), β(v))) for α(x) = x ∏_{0<i<p} F(x, [i]t) and
/// β = α^{-1}, with an integrality verdict per coefficient.
pub fn twisted_fgl_alpha(law: &FormalLaw) -> Result<AlphaResult> {
    let law = &law.clone().with_light_vars();
    let ctx = law.ctx();
    let ring = ctx.ring();
    let fp = law.formal_p();
    let (u, v, w) = (ctx.var("u")?, ctx.var("v")?, ctx.var("w")?);
    let alpha = law.orbit_product_of(&ctx.var("x")?)?;
    let beta = alpha.compositional_inverse("x")?;
    let sum = law.add(&beta.compose("x", &u)?, &beta.compose("x", &v)?)?;
    let laurent = alpha.compose("x", &sum)?;

    let mut coefficients = Vec::new();
    let mut reduced = ctx.zero();
    for (i, j, c) in coefficient_grid(&laurent)? {
        let integral = fp.is_integral_mod_ideal(&c);
        coefficients.push(CoefficientVerdict { i, j, integral });
        if integral {
            let mono = GradedSeries::term(ring, Scalar::one(), &[("u", i), ("v", j)])?;
            reduced = reduced.add(&law.reduce_laurent(&c)?.mul(&mono)?)?;
        }
    }
    let reduced = law.truncate(&reduced);
    let g = &reduced;
    let at = |a: &GradedSeries, b: &GradedSeries| -> Result<GradedSeries> {
        law.reduce(&g.substitute(ring, &[("u", a), ("v", b)])?)
    };
    let unit = at(&u, &ctx.zero())? == u && at(&ctx.zero(), &v)? == v;
    let commutative = at(&v, &u)? == *g;
    let associative = at(&at(&u, &v)?, &w)? == at(&u, &at(&v, &w)?)?;

    let p = law.p();
    let mut frob = ctx.zero();
    for (i, j, a) in coefficient_grid(&law.fgl().substitute(ring, &[("x", &u), ("y", &v)])?)? {
        let mono = GradedSeries::term(ring, Scalar::one(), &[("u", i), ("v", j)])?;
        frob = frob.add(&a.pow(p)?.mul(&mono)?)?;
    }
    let frobenius = law.reduce(&frob)? == g.filter_exp("t", |e| e == 0)?;

    Ok(AlphaResult { laurent, reduced, coefficients, unit, commutative, associative, frobenius })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::fgl::{AmbientContext, ContextConfig};

    fn ctx() -> Arc<AmbientContext> {
        Arc::new(AmbientContext::new(ContextConfig::new(5, 4)).unwrap())
    }

    #[test]
    fn orbit_product_decomposes_to_u() {
        let c = Arc::new(AmbientContext::new(ContextConfig::new(6, 4)).unwrap());
        for p in [2, 3] {
            let law = FormalLaw::universal(&c, p).unwrap();
            let sigma = ContinuousAutomorphism::shift(&law, "x", 1).unwrap();
            let pi = law.orbit_product_of(&c.var("x").unwrap()).unwrap();
            let d = invariant_decompose(&law, &pi, &sigma, "u").unwrap();
            assert_eq!(d.psi, c.var("u").unwrap());
            let sq = pi.pow(2).unwrap().add(&law.formal_p().generator().mul(&c.var("x").unwrap()).unwrap()).unwrap();
            let d = invariant_decompose(&law, &sq, &sigma, "u").unwrap();
            assert_eq!(d.psi, c.var("u").unwrap().pow(2).unwrap());
        }
    }

    #[test]
    fn additive_p2() {
        let c = ctx();
        let law = FormalLaw::additive(&c, 2).unwrap();
        let sigma = ContinuousAutomorphism::shift(&law, "x", 1).unwrap();
        let x = c.var("x").unwrap();
        let phi = x.mul(&x.add(&c.t()).unwrap()).unwrap();
        assert_eq!(invariant_decompose(&law, &phi, &sigma, "u").unwrap().psi, c.var("u").unwrap());

        let xy = prop_xy_series(&law).unwrap();
        assert_eq!(xy.g.to_string(), "u + v");
        assert!(xy.identity_holds && xy.all_integral());

        let fa = twisted_fgl_alpha(&law).unwrap();
        assert_eq!(fa.reduced.to_string(), "u + v");
        assert!(fa.all_integral() && fa.is_fgl() && fa.frobenius);
    }

    #[test]
    fn random_invariants_recovered() {
        use rand::SeedableRng;
        let c = Arc::new(AmbientContext::new(ContextConfig::new(6, 3)).unwrap());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for p in [2, 3] {
            let law = FormalLaw::universal(&c, p).unwrap();
            let sigma = ContinuousAutomorphism::shift(&law, "x", 1).unwrap();
            for _ in 0..3 {
                let (phi, psi) = random_invariant(&law, &mut rng).unwrap();
                let d = invariant_decompose(&law, &phi, &sigma, "u").unwrap();
                assert_eq!(d.psi, psi);
                assert!(d.certificates.iter().all(|c| c.divisible));
            }
        }
    }

    #[test]
    fn non_invariant_rejected() {
        let c = ctx();
        let law = FormalLaw::universal(&c, 2).unwrap();
        let sigma = ContinuousAutomorphism::shift(&law, "x", 1).unwrap();
        let err = invariant_decompose(&law, &c.var("x").unwrap(), &sigma, "u").unwrap_err();
        assert!(matches!(err, Error::NotInvariant(_)));
    }

    #[test]
    fn universal_xy_p2() {
        let c = ctx();
        let law = FormalLaw::universal(&c, 2).unwrap();
        let xy = prop_xy_series(&law).unwrap();
        assert!(xy.identity_holds && xy.all_integral());
        assert_eq!(xy.g.coeff_of(&[("u", 1)]).unwrap(), Scalar::one());
        assert_eq!(xy.g.coeff_of(&[("v", 1)]).unwrap(), Scalar::one());
        // v = 0 recovers u.
        let at0 = law.reduce(&xy.g.substitute(c.ring(), &[("v", &c.zero())]).unwrap()).unwrap();
        assert_eq!(at0, c.var("u").unwrap());
    }

    #[test]
    fn universal_alpha_p2() {
        let c = ctx();
        let law = FormalLaw::universal(&c, 2).unwrap();
        let fa = twisted_fgl_alpha(&law).unwrap();
        assert!(fa.all_integral());
        assert!(fa.is_fgl());
        assert!(fa.frobenius);
    }
}
