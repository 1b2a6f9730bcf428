use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::series::{GradedSeries, Scalar, SeriesRing, Variable};

use super::CosetReps;

/// Chow-theoretic model of U = P^n (d = 0) or a degree-d hypersurface in
/// P^n, with hyperplane class h and h^(dim U + 1) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChowModel {
    n: i32,
    d: i32,
}

impl ChowModel {
    pub fn projective(n: i32) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn hypersurface(n: i32, d: i32) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidArgument("hypersurface degree must be >= 1".into()));
        }
        Self::new(n, d)
    }

    pub fn new(n: i32, d: i32) -> Result<Self> {
        if n < 1 || d < 0 {
            return Err(Error::InvalidArgument(format!("bad Chow model ({n}, {d})")));
        }
        Ok(ChowModel { n, d })
    }

    /// `Pn` or `H(n,d)`.
    pub fn parse(label: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("`{label}` is not Pn or H(n,d)"));
        if let Some(n) = label.strip_prefix('P') {
            return Self::projective(n.parse().map_err(|_| bad())?);
        }
        let inner = label.strip_prefix("H(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
        let (n, d) = inner.split_once(',').ok_or_else(bad)?;
        Self::hypersurface(n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?)
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn d(&self) -> i32 {
        self.d
    }

    pub fn dim(&self) -> i32 {
        if self.d == 0 {
            self.n
        } else {
            self.n - 1
        }
    }

    /// deg(h^dim U).
    pub fn top_degree(&self) -> i64 {
        if self.d == 0 {
            1
        } else {
            self.d as i64
        }
    }

    pub fn label(&self) -> String {
        if self.d == 0 {
            format!("P{}", self.n)
        } else {
            format!("H({},{})", self.n, self.d)
        }
    }

    /// A ring in t (Laurent, floor `tfloor`) and h (capped at dim U).
    pub fn ring(&self, tfloor: i32) -> Result<Arc<SeriesRing>> {
        let dim = self.dim();
        Ok(SeriesRing::from_vars(
            vec![Variable::laurent("t", 1, tfloor), Variable::power("h", 1).with_cap(dim)],
            dim,
            0,
        )?)
    }

    /// c(T_U)(t) = (t+h)^(n+1) / t, divided further by (t + d h) for a
    /// hypersurface.
    pub fn chern_series(&self, ring: &Arc<SeriesRing>) -> Result<GradedSeries> {
        let t = GradedSeries::var(ring, "t")?;
        let h = GradedSeries::var(ring, "h")?;
        let mut c = t.add(&h)?.pow(self.n as u32 + 1)?.shift("t", -1)?;
        if self.d > 0 {
            let normal = t.add(&h.scale_int(self.d as i64))?;
            c = c.mul(&normal.mul_inverse()?)?;
        }
        Ok(c)
    }

    /// ∏_j c(-T_U)(i_j t).
    pub fn chern_che(&self, reps: &CosetReps) -> Result<GradedSeries> {
        let p = reps.p() as i32;
        let tfloor = -2 * p * (self.dim() + 1) - 4;
        let ring = self.ring(tfloor)?;
        let inv = self.chern_series(&ring)?.mul_inverse()?;
        let t = GradedSeries::var(&ring, "t")?;
        let mut out = GradedSeries::one(&ring);
        for &i in reps.reps() {
            let it = t.scale_int(i);
            out = out.mul(&inv.substitute(&ring, &[("t", &it)])?)?;
        }
        Ok(out)
    }

    /// deg of the coefficient of t^(-p dim U) in [`chern_che`](Self::chern_che).
    pub fn che_degree(&self, reps: &CosetReps) -> Result<Scalar> {
        let che = self.chern_che(reps)?;
        let p = reps.p() as i32;
        let dim = self.dim();
        let c = che.coeff_of(&[("t", -p * dim), ("h", dim)])?;
        Ok(c * Scalar::from_int(self.top_degree()))
    }

    /// η_{p,ī}(U) = -deg(...)/p, checked to lie in Z[1/ī_s].
    pub fn eta(&self, reps: &CosetReps) -> Result<Scalar> {
        let deg = self.che_degree(reps)?;
        let eta = -deg / Scalar::from_int(reps.p() as i64);
        if !eta.denominator_divides_power_of(&BigInt::from(reps.product())) {
            return Err(Error::Certificate(format!(
                "eta of {} is {eta}, not in Z[1/{}]",
                self.label(),
                reps.product()
            )));
        }
        Ok(eta)
    }
}
