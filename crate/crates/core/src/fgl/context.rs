use std::sync::Arc;

use crate::error::{Error, Result};
use crate::series::{GradedSeries, Scalar, SeriesRing, Variable};

use super::LazardElement;

/// Truncation settings for an [`AmbientContext`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ContextConfig {
    /// Largest degree retained in the geometric variables (x, y, z, s, ...).
    pub deg: i32,
    /// Largest retained b-weight.
    pub bweight: i32,
    /// Lowest exponent allowed for the Laurent variable t.
    pub tfloor: i32,
    /// Adds a second set of generators b'1.. for Landweber-Novikov targets.
    pub primed: bool,
}

impl Default for ContextConfig {
    fn default() -> Self {
        ContextConfig { deg: 8, bweight: 8, tfloor: -64, primed: false }
    }
}

impl ContextConfig {
    pub fn new(deg: i32, bweight: i32) -> Self {
        ContextConfig { deg, bweight, ..Default::default() }
    }

    pub fn with_primed(mut self) -> Self {
        self.primed = true;
        self
    }

    pub fn with_tfloor(mut self, tfloor: i32) -> Self {
        self.tfloor = tfloor;
        self
    }
}

/// Names of the geometric variables of the ambient ring, in table order.
pub const GEOMETRIC_VARS: [&str; 9] = ["s", "x", "y", "w", "z1", "z2", "z3", "u", "v"];

/// The universal formal group law over Z[b1, b2, ...] in Hurewitz
/// coordinates, with its exponential, logarithm and invariant form.
///
/// All series live in one ring: `t` (Laurent), the geometric variables of
/// [`GEOMETRIC_VARS`], the generators `b1..bW` (and `b'1..b'W` if primed).
/// The geometric degree bound is at least `W + 1`, so that every FGL
/// coefficient of b-weight at most `W` is present.
#[derive(Debug, Clone)]
pub struct AmbientContext {
    config: ContextConfig,
    ring: Arc<SeriesRing>,
    exp: GradedSeries,
    log: GradedSeries,
    fgl: GradedSeries,
}

pub fn b_name(i: usize) -> String {
    format!("b{i}")
}

pub fn primed_name(i: usize) -> String {
    format!("b'{i}")
}

impl AmbientContext {
    pub fn new(config: ContextConfig) -> Result<Self> {
        if config.deg < 1 || config.bweight < 0 {
            return Err(Error::InvalidArgument("truncation bounds must be positive".into()));
        }
        if config.tfloor > -1 {
            return Err(Error::InvalidArgument("t floor must be negative".into()));
        }
        let w = config.bweight;
        let mut vars = vec![Variable::laurent("t", 1, config.tfloor)];
        vars.extend(GEOMETRIC_VARS.iter().map(|n| Variable::power(*n, 1)));
        vars.extend((1..=w as usize).map(|i| Variable::power(b_name(i), -(i as i32))));
        if config.primed {
            vars.extend((1..=w as usize).map(|i| Variable::power(primed_name(i), -(i as i32))));
        }
        let ring = SeriesRing::from_vars(vars, config.deg.max(w + 1), w)?;
        let s = GradedSeries::var(&ring, "s")?;
        let mut exp = s.clone();
        for i in 1..=w as usize {
            let term = GradedSeries::var(&ring, &b_name(i))?.mul(&s.pow(i as u32 + 1)?)?;
            exp = exp.add(&term)?;
        }
        let log = exp.compositional_inverse("s")?;
        let lx = log.compose("s", &GradedSeries::var(&ring, "x")?)?;
        let ly = log.compose("s", &GradedSeries::var(&ring, "y")?)?;
        let fgl = exp.compose("s", &lx.add(&ly)?)?;
        Ok(AmbientContext { config, ring, exp, log, fgl })
    }

    pub fn with_defaults() -> Result<Self> {
        Self::new(ContextConfig::default())
    }

    pub fn config(&self) -> &ContextConfig {
        &self.config
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    pub fn deg(&self) -> i32 {
        self.config.deg
    }

    pub fn bweight(&self) -> i32 {
        self.config.bweight
    }

    pub fn var(&self, name: &str) -> Result<GradedSeries> {
        Ok(GradedSeries::var(&self.ring, name)?)
    }

    pub fn t(&self) -> GradedSeries {
        self.var("t").expect("t is always present")
    }

    pub fn b(&self, i: usize) -> Result<GradedSeries> {
        self.var(&b_name(i))
    }

    pub fn int(&self, n: i64) -> GradedSeries {
        GradedSeries::from_int(&self.ring, n)
    }

    pub fn scalar(&self, c: Scalar) -> GradedSeries {
        GradedSeries::constant(&self.ring, c)
    }

    pub fn zero(&self) -> GradedSeries {
        GradedSeries::zero(&self.ring)
    }

    pub fn one(&self) -> GradedSeries {
        GradedSeries::one(&self.ring)
    }

    /// The exponential B(s) = s + b1 s^2 + b2 s^3 + ...
    pub fn exp_series(&self) -> &GradedSeries {
        &self.exp
    }

    /// The logarithm B^-1(s).
    pub fn log_series(&self) -> &GradedSeries {
        &self.log
    }

    /// F(x, y) = B(B^-1(x) + B^-1(y)).
    pub fn universal_fgl(&self) -> &GradedSeries {
        &self.fgl
    }

    /// F(a, b) for series without constant term.
    pub fn fgl_add(&self, a: &GradedSeries, b: &GradedSeries) -> Result<GradedSeries> {
        Ok(self.fgl.substitute(&self.ring, &[("x", a), ("y", b)])?)
    }

    /// B^-1(a).
    pub fn log_of(&self, a: &GradedSeries) -> Result<GradedSeries> {
        Ok(self.log.compose("s", a)?)
    }

    /// B(a).
    pub fn exp_of(&self, a: &GradedSeries) -> Result<GradedSeries> {
        Ok(self.exp.compose("s", a)?)
    }

    /// [n]_F(a) = B(n B^-1(a)); negative n through the formal inverse.
    pub fn formal_mul(&self, n: i64, a: &GradedSeries) -> Result<GradedSeries> {
        if n == 0 {
            return Ok(self.zero());
        }
        self.exp_of(&self.log_of(a)?.scale_int(n))
    }

    /// [n]_F(t).
    pub fn formal_int_mul(&self, n: i64) -> Result<GradedSeries> {
        self.formal_mul(n, &self.t())
    }

    /// The formal inverse ι(a) with F(a, ι(a)) = 0.
    pub fn formal_inverse(&self, a: &GradedSeries) -> Result<GradedSeries> {
        self.formal_mul(-1, a)
    }

    /// The coefficient a_ij of x^i y^j in F.
    pub fn fgl_coefficient(&self, i: i32, j: i32) -> Result<GradedSeries> {
        Ok(self.fgl.coefficient("x", i)?.coefficient("y", j)?)
    }

    /// ω(var) = (B^-1)'(var) = Σ [P^i] var^i.
    pub fn invariant_form_in(&self, var: &str) -> Result<GradedSeries> {
        let d = self.log.derivative("s")?;
        Ok(d.compose("s", &self.var(var)?)?)
    }

    /// ω_t.
    pub fn invariant_form(&self) -> Result<GradedSeries> {
        self.invariant_form_in("t")
    }

    /// [P^n] = (n + 1) * (coefficient of s^(n+1) in B^-1).
    pub fn pn_class(&self, n: i32) -> Result<LazardElement> {
        self.check_dim(n)?;
        let c = self.log.coefficient("s", n + 1)?.scale_int(n as i64 + 1);
        Ok(LazardElement::new(c, n, format!("P^{n}")))
    }

    /// π_*(f) for π: P^n -> pt, f a power series in `var`:
    /// Res_{var=0} f ω(var) / var^(n+1), i.e. the coefficient of var^n in f ω.
    pub fn proj_pushforward(&self, f: &GradedSeries, var: &str, n: i32) -> Result<GradedSeries> {
        if f.min_exp(var)?.unwrap_or(0) < 0 {
            return Err(Error::InvalidArgument(format!("pushforward input has a pole in {var}")));
        }
        let truncated = f.filter_exp(var, |e| e <= n)?;
        let prod = truncated.mul(&self.invariant_form_in(var)?)?;
        Ok(prod.coefficient(var, n)?)
    }

    /// The class of a degree-d hypersurface in P^n: π_*([d]_F(x)).
    pub fn hypersurface_class(&self, n: i32, d: i32) -> Result<LazardElement> {
        if n < 1 || d < 1 {
            return Err(Error::InvalidArgument("hypersurface needs n >= 1 and d >= 1".into()));
        }
        self.check_dim(n - 1)?;
        let x = self.var("x")?;
        let dx = self.formal_mul(d as i64, &x)?;
        let c = self.proj_pushforward(&dx, "x", n)?;
        Ok(LazardElement::new(c, n - 1, format!("H({n},{d})")))
    }

    fn check_dim(&self, n: i32) -> Result<()> {
        if n < 0 {
            return Err(Error::InvalidArgument(format!("negative dimension {n}")));
        }
        if n > self.config.bweight || n + 1 > self.ring.trunc_plus() {
            return Err(Error::InvalidArgument(format!(
                "dimension {n} exceeds the b-weight truncation {}",
                self.config.bweight
            )));
        }
        Ok(())
    }

    /// Lazard element from an ambient series (checked to be a polynomial in b).
    pub fn lazard(&self, ambient: GradedSeries, provenance: &str) -> Result<LazardElement> {
        let support = ambient.support_vars();
        if let Some(v) = support.iter().find(|v| !v.starts_with('b')) {
            return Err(Error::InvalidArgument(format!("`{v}` is not an ambient generator")));
        }
        let d = ambient.lead().map(|(m, _)| m.bweight()).unwrap_or(0);
        if !ambient.is_homogeneous(-d) {
            return Err(Error::InvalidArgument("Lazard element must be homogeneous".into()));
        }
        Ok(LazardElement::new(ambient, d, provenance.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> AmbientContext {
        AmbientContext::new(ContextConfig::new(5, 4)).unwrap()
    }

    #[test]
    fn low_degree_fgl_coefficients() {
        let c = ctx();
        let b1 = c.b(1).unwrap();
        let b2 = c.b(2).unwrap();
        assert_eq!(c.fgl_coefficient(1, 1).unwrap(), b1.scale_int(2));
        let a21 = b2.scale_int(3).sub(&b1.pow(2).unwrap().scale_int(2)).unwrap();
        assert_eq!(c.fgl_coefficient(2, 1).unwrap(), a21);
        assert!(c.fgl_coefficient(3, 0).unwrap().is_zero());
        assert!(c.universal_fgl().is_integral());
    }

    #[test]
    fn formal_multiples() {
        let c = ctx();
        let t = c.t();
        assert_eq!(c.formal_int_mul(1).unwrap(), t);
        let two = c.formal_int_mul(2).unwrap();
        assert_eq!(two, c.fgl_add(&t, &t).unwrap());
        assert_eq!(two.coeff_of(&[("t", 1)]).unwrap(), Scalar::from_int(2));
        assert_eq!(two.coeff_of(&[("t", 2), ("b1", 1)]).unwrap(), Scalar::from_int(2));
        assert_eq!(two.coeff_of(&[("t", 3), ("b2", 1)]).unwrap(), Scalar::from_int(6));
        assert_eq!(two.coeff_of(&[("t", 3), ("b1", 2)]).unwrap(), Scalar::from_int(-4));
        let inv = c.formal_int_mul(-1).unwrap();
        assert_eq!(inv.coeff_of(&[("t", 2), ("b1", 1)]).unwrap(), Scalar::from_int(2));
        assert_eq!(inv.coeff_of(&[("t", 3), ("b1", 2)]).unwrap(), Scalar::from_int(-4));
        assert!(c.fgl_add(&t, &inv).unwrap().is_zero());
    }

    #[test]
    fn classes() {
        let c = ctx();
        let b1 = c.b(1).unwrap();
        let b2 = c.b(2).unwrap();
        assert_eq!(c.pn_class(0).unwrap().ambient(), &c.one());
        assert_eq!(c.pn_class(1).unwrap().ambient(), &b1.scale_int(-2));
        let p2 = b1.pow(2).unwrap().scale_int(6).sub(&b2.scale_int(3)).unwrap();
        assert_eq!(c.pn_class(2).unwrap().ambient(), &p2);
        assert_eq!(c.hypersurface_class(2, 2).unwrap().ambient(), &b1.scale_int(-2));
    }

    #[test]
    fn pushforward_normalization() {
        let c = ctx();
        let x = c.var("x").unwrap();
        for n in 0..=4 {
            let xn = x.pow(n as u32).unwrap();
            assert_eq!(c.proj_pushforward(&xn, "x", n).unwrap(), c.one());
            assert_eq!(
                c.proj_pushforward(&c.one(), "x", n).unwrap(),
                *c.pn_class(n).unwrap().ambient()
            );
            assert!(c.proj_pushforward(&x.pow(n as u32 + 1).unwrap(), "x", n).unwrap().is_zero());
        }
    }

    #[test]
    fn omega_low_terms() {
        let c = ctx();
        let w = c.invariant_form().unwrap();
        assert_eq!(w.coeff_of(&[]).unwrap(), Scalar::one());
        assert_eq!(w.coeff_of(&[("t", 1), ("b1", 1)]).unwrap(), Scalar::from_int(-2));
        // residue(ω_t / t^2) = [P^1]
        let r = w.shift("t", -2).unwrap().residue("t").unwrap();
        assert_eq!(r, c.b(1).unwrap().scale_int(-2));
    }
}
