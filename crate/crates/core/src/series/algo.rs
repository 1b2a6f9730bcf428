use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::{GradedSeries, Monomial, Scalar, SeriesError, SeriesRing};

type Result<T> = std::result::Result<T, SeriesError>;

/// Cached integer powers of one binding.
struct PowerCache {
    base: GradedSeries,
    pos: Vec<GradedSeries>,
    inv: Option<GradedSeries>,
    neg: Vec<GradedSeries>,
}

impl PowerCache {
    fn new(base: GradedSeries) -> Self {
        let one = GradedSeries::one(base.ring());
        PowerCache { base, pos: vec![one.clone()], inv: None, neg: vec![one] }
    }

    fn get(&mut self, e: i32) -> Result<&GradedSeries> {
        if e >= 0 {
            let e = e as usize;
            while self.pos.len() <= e {
                let next = self.pos.last().unwrap().mul(&self.base)?;
                self.pos.push(next);
            }
            Ok(&self.pos[e])
        } else {
            let e = (-e) as usize;
            if self.inv.is_none() {
                self.inv = Some(self.base.mul_inverse()?);
            }
            while self.neg.len() <= e {
                let next = self.neg.last().unwrap().mul(self.inv.as_ref().unwrap())?;
                self.neg.push(next);
            }
            Ok(&self.neg[e])
        }
    }
}

impl GradedSeries {
    /// Applies `var -> series` bindings, producing a series in `target`.
    ///
    /// Bound series must live in `target`. Unbound variables are carried over
    /// by name. A binding with a nonzero constant term is rejected: applied to
    /// a truncated series it would silently lose the truncated tail.
    pub fn substitute(
        &self,
        target: &Arc<SeriesRing>,
        bindings: &[(&str, &GradedSeries)],
    ) -> Result<GradedSeries> {
        for (name, b) in bindings {
            let c = b.constant_term();
            if !c.is_zero() {
                return Err(SeriesError::OrderZeroSubstitution {
                    var: name.to_string(),
                    constant: c.to_string(),
                });
            }
        }
        self.substitute_unchecked(target, bindings)
    }

    /// Like [`substitute`](Self::substitute) but allows constant terms in the
    /// bindings, treating `self` as the polynomial it stores.
    pub fn evaluate(
        &self,
        target: &Arc<SeriesRing>,
        bindings: &[(&str, &GradedSeries)],
    ) -> Result<GradedSeries> {
        self.substitute_unchecked(target, bindings)
    }

    /// Replaces variables by scalars, as a polynomial evaluation.
    pub fn specialize(&self, values: &[(&str, Scalar)]) -> Result<GradedSeries> {
        let consts: Vec<(String, GradedSeries)> = values
            .iter()
            .map(|(n, c)| (n.to_string(), GradedSeries::constant(&self.ring, c.clone())))
            .collect();
        let b: Vec<(&str, &GradedSeries)> = consts.iter().map(|(n, s)| (n.as_str(), s)).collect();
        self.evaluate(&self.ring.clone(), &b)
    }

    fn substitute_unchecked(
        &self,
        target: &Arc<SeriesRing>,
        bindings: &[(&str, &GradedSeries)],
    ) -> Result<GradedSeries> {
        let src = &self.ring;
        let mut bound: Vec<usize> = Vec::new();
        let mut caches: Vec<PowerCache> = Vec::new();
        for (name, b) in bindings {
            let i = src.require(name)?;
            if !(Arc::ptr_eq(b.ring(), target) || **b.ring() == **target) {
                return Err(SeriesError::MismatchedRings);
            }
            if bound.contains(&i) {
                return Err(SeriesError::DuplicateVariable(name.to_string()));
            }
            bound.push(i);
            caches.push(PowerCache::new((*b).clone()));
        }
        let is_bound: Vec<Option<usize>> =
            (0..src.nvars()).map(|i| bound.iter().position(|&j| j == i)).collect();
        let map: Vec<Option<usize>> =
            src.vars().iter().map(|v| target.index_of(&v.name)).collect();

        // Group terms by their bound exponents; the rest is carried over.
        let mut groups: BTreeMap<Vec<i32>, GradedSeries> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = vec![0; bound.len()];
            let mut rest = vec![0; target.nvars()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match is_bound[i] {
                    Some(k) => key[k] = e,
                    None => match map[i] {
                        Some(j) => rest[j] = e,
                        None => {
                            return Err(SeriesError::UnknownVariable(src.var(i).name.clone()))
                        }
                    },
                }
            }
            let g = groups.entry(key).or_insert_with(|| GradedSeries::zero(target));
            if let Some(mm) = target.make_monomial(rest.into_boxed_slice())? {
                g.add_term(mm, c);
            }
        }

        let mut out = GradedSeries::zero(target);
        for (key, rest) in groups {
            if rest.is_zero() {
                continue;
            }
            let mut prod = rest;
            for (k, &e) in key.iter().enumerate() {
                if e != 0 {
                    prod = prod.mul(caches[k].get(e)?)?;
                    if prod.is_zero() {
                        break;
                    }
                }
            }
            for (m, c) in prod.terms {
                out.add_term(m, &c);
            }
        }
        Ok(out)
    }

    /// Substitutes `var -> g` within the same ring.
    pub fn compose(&self, var: &str, g: &GradedSeries) -> Result<GradedSeries> {
        self.substitute(&self.ring.clone(), &[(var, g)])
    }

    /// Multiplicative inverse at truncation.
    ///
    /// The lead term must be a nonzero scalar times a monomial in Laurent
    /// variables only; the rest is inverted as a geometric series.
    pub fn mul_inverse(&self) -> Result<GradedSeries> {
        let ring = self.ring.clone();
        let (m0, c0) = self
            .lead()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| SeriesError::NonInvertible("zero series".into()))?;
        for (i, &e) in m0.exps().iter().enumerate() {
            if e != 0 && !ring.var(i).is_laurent() {
                return Err(SeriesError::NonInvertible(format!(
                    "lead monomial {} is not a unit",
                    self.render_monomial(&m0)
                )));
            }
        }
        let inv_exps: Vec<i32> = m0.exps().iter().map(|e| -e).collect();
        let lead_inv = GradedSeries::monomial(&ring, inv_exps, c0.inv().unwrap())?;
        // self = lead * (1 + r)
        let normalized = self.mul(&lead_inv)?;
        let r = normalized.sub(&GradedSeries::one(&ring))?;
        let neg_r = r.neg();
        let mut sum = GradedSeries::one(&ring);
        let mut pw = GradedSeries::one(&ring);
        let guard = iteration_guard(&ring);
        for _ in 0..guard {
            pw = pw.mul(&neg_r)?;
            if pw.is_zero() {
                return sum.mul(&lead_inv);
            }
            sum = sum.add(&pw)?;
        }
        Err(SeriesError::NonConvergent("geometric series for mul_inverse".into()))
    }

    /// The compositional inverse in `var`: g with f(g) = var and g(f) = var.
    pub fn compositional_inverse(&self, var: &str) -> Result<GradedSeries> {
        let ring = self.ring.clone();
        let i = ring.require(var)?;
        if self.terms.keys().any(|m| m.exp(i) == 0) {
            return Err(SeriesError::NotUnivariate(format!(
                "{var} (nonzero constant term in {var})"
            )));
        }
        if self.terms.keys().any(|m| m.exp(i) < 0) {
            return Err(SeriesError::NotUnivariate(var.to_string()));
        }
        let a1 = self.coefficient(var, 1)?;
        let a1_inv = a1.mul_inverse()?;
        let x = GradedSeries::var(&ring, var)?;
        let mut g = x.mul(&a1_inv)?;
        let guard = iteration_guard(&ring);
        for _ in 0..guard {
            let fg = self.compose(var, &g)?;
            let err = fg.sub(&x)?;
            if err.is_zero() {
                return Ok(g);
            }
            g = g.sub(&err.mul(&a1_inv)?)?;
        }
        Err(SeriesError::NonConvergent(format!("compositional inverse in {var}")))
    }

    /// Exact quotient `self / g` with rational coefficients.
    pub fn exact_divide(&self, g: &GradedSeries) -> Result<GradedSeries> {
        self.exact_divide_checked(g, |_| true)
    }

    /// Exact quotient whose coefficients must all be integers.
    pub fn exact_divide_integral(&self, g: &GradedSeries) -> Result<GradedSeries> {
        self.exact_divide_checked(g, Scalar::is_integer)
    }

    /// Exact quotient by long division on lead terms; every quotient
    /// coefficient must satisfy `accept`.
    pub fn exact_divide_checked(
        &self,
        g: &GradedSeries,
        accept: impl Fn(&Scalar) -> bool,
    ) -> Result<GradedSeries> {
        self.same_ring(g)?;
        let ring = self.ring.clone();
        let (mg, cg) = g
            .lead()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| SeriesError::NonInvertible("division by zero series".into()))?;
        let mut rem = self.clone();
        let mut q = GradedSeries::zero(&ring);
        let guard = 64 * iteration_guard(&ring) + 4 * self.len();
        for _ in 0..guard {
            let (mr, cr) = match rem.lead() {
                None => return Ok(q),
                Some((m, c)) => (m.clone(), c.clone()),
            };
            let not_div = || SeriesError::NotDivisible { monomial: rem.render_monomial(&mr) };
            let e: Vec<i32> = mr.exps().iter().zip(mg.exps()).map(|(a, b)| a - b).collect();
            if e.iter().enumerate().any(|(i, &k)| k < 0 && !ring.var(i).is_laurent()) {
                return Err(not_div());
            }
            let qc = &cr / &cg;
            if !accept(&qc) {
                return Err(not_div());
            }
            let qm = match ring.make_monomial(e.into_boxed_slice()) {
                Ok(Some(m)) => m,
                _ => return Err(not_div()),
            };
            let step = GradedSeries::from_map(&ring, BTreeMap::from([(qm.clone(), qc.clone())]));
            q.add_term(qm, &qc);
            let before = mr;
            rem = rem.sub(&step.mul(g)?)?;
            if let Some((m, _)) = rem.lead() {
                if *m == before {
                    // the lead term beyond truncation in the product
                    return Err(SeriesError::NotDivisible {
                        monomial: rem.render_monomial(m),
                    });
                }
            }
        }
        Err(SeriesError::NonConvergent("exact division".into()))
    }

    /// Renders one monomial of this ring (used in error messages).
    pub fn render_monomial(&self, m: &Monomial) -> String {
        super::render::monomial_string(&self.ring, m.exps())
    }

    /// Groups terms by the exponent of `var`: `self = Σ_k coeffs[k] var^k`.
    pub fn by_power(&self, var: &str) -> Result<BTreeMap<i32, GradedSeries>> {
        let i = self.ring.require(var)?;
        let mut out: BTreeMap<i32, GradedSeries> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = m.exps().to_vec();
            let k = e[i];
            e[i] = 0;
            if let Some(mm) = self.ring.make_monomial(e.into_boxed_slice())? {
                out.entry(k).or_insert_with(|| GradedSeries::zero(&self.ring)).add_term(mm, c);
            }
        }
        Ok(out)
    }

    /// Sum of products, computed with one accumulation map.
    pub fn dot(pairs: &[(&GradedSeries, &GradedSeries)], ring: &Arc<SeriesRing>) -> Result<GradedSeries> {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (a, b) in pairs {
            let p = a.mul(b)?;
            for (m, c) in p.terms {
                *acc.entry(m).or_insert_with(Scalar::zero) += &c;
            }
        }
        Ok(GradedSeries::from_map(ring, acc.into_iter().collect()))
    }
}

fn iteration_guard(ring: &SeriesRing) -> usize {
    let caps: i32 = ring.vars().iter().filter_map(|v| v.cap).sum();
    let floors: i32 = ring.vars().iter().filter_map(|v| v.laurent_floor).map(|f| -f).sum();
    (ring.trunc_plus() + ring.trunc_minus() + caps + floors) as usize + 8
}
