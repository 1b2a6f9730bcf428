use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::Result;
use crate::fgl::{AmbientContext, CosetReps};
use crate::operations::{chow_trace, omega_che, parse_element, tom_dieck_sq, OperationDescriptor, SymmetricOperation};
use crate::series::{GradedSeries, Scalar};

use super::classes::chow_model;
use super::{check, Report, SuiteConfig, GRID_INPUTS};

/// One (p, ī) cell of the grid with memoized St and Φ.
struct Cell {
    ctx: Arc<AmbientContext>,
    op: SymmetricOperation,
    phi: HashMap<String, GradedSeries>,
}

impl Cell {
    fn new(ctx: &Arc<AmbientContext>, reps: &CosetReps) -> Result<Self> {
        Ok(Cell { ctx: ctx.clone(), op: SymmetricOperation::new(ctx, reps)?, phi: HashMap::new() })
    }

    fn elem(&self, src: &str) -> Result<GradedSeries> {
        parse_element(&self.ctx, src)
    }

    fn phi(&mut self, src: &str) -> Result<GradedSeries> {
        if let Some(v) = self.phi.get(src) {
            return Ok(v.clone());
        }
        let v = self.op.phi(&self.elem(src)?)?.phi;
        self.phi.insert(src.to_string(), v.clone());
        Ok(v)
    }

    fn g(&self) -> &GradedSeries {
        self.op.formal_p().generator()
    }
}

fn cells(cfg: &SuiteConfig, allowed: &[u32]) -> Result<Vec<(u32, CosetReps)>> {
    let mut out = Vec::new();
    for p in cfg.primes_in(allowed) {
        for reps in cfg.reps_grid(p)? {
            out.push((p, reps));
        }
    }
    Ok(out)
}

fn pairs() -> Vec<(&'static str, &'static str)> {
    let mut out = Vec::new();
    for (i, a) in GRID_INPUTS.iter().enumerate() {
        for b in &GRID_INPUTS[i..] {
            out.push((*a, *b));
        }
    }
    out
}

const ALL: [u32; 3] = [2, 3, 5];

/// Thm SOp: the nonpositive part of e^p - St(e) divides exactly by g, with
/// a strictly positive remainder.
pub(super) fn sop(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for (p, reps) in cells(cfg, &ALL)? {
        let mut rep = Report::new("sop", Some(p), Some(&reps));
        let mut cell = Cell::new(&ctx, &reps)?;
        for src in GRID_INPUTS {
            rep.guarded(cfg, &[&[src]], src, || cell.phi(src).map(|_| None));
        }
        if p == 2 && reps.reps() == [1] {
            let expect = ctx.t().powi(-2)?.add(&ctx.b(1)?.scale_int(2).mul(&ctx.t().powi(-1)?)?)?;
            rep.case("Φ(P1) = t^-2 + 2b1 t^-1", cell.phi("P1").and_then(|f| {
                check(f == expect, || format!("Φ(P1) = {f}"))
            }));
        }
        out.push(rep);
    }
    Ok(out)
}

/// Φ(1) = 0 and Φ(z^k) = 0 for k <= 4.
pub(super) fn emb(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for (p, reps) in cells(cfg, &ALL)? {
        let mut rep = Report::new("emb", Some(p), Some(&reps));
        let mut cell = Cell::new(&ctx, &reps)?;
        for src in ["1", "z", "z^2", "z^3", "z^4"] {
            rep.guarded(cfg, &[&[src]], src, || cell.phi(src).and_then(|f| check(f.is_zero(), || format!("Φ = {f}"))));
        }
        out.push(rep);
    }
    Ok(out)
}

/// Sq(e) is integral, Sq(1) = 1, Sq(z) = γ(z), and the t^0 part of Sq(e)
/// is e^p mod p.
pub(super) fn tom_dieck(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for p in cfg.primes_in(&ALL) {
        let mut rep = Report::new("tomdieck", Some(p), None);
        let sq = OperationDescriptor::tom_dieck(&ctx, p)?;
        let fp = crate::quotient::FormalP::new(&ctx, p)?;
        for src in GRID_INPUTS {
            rep.guarded(cfg, &[&[src]], src, || -> Result<Option<String>> {
                let e = parse_element(&ctx, src)?;
                let s = tom_dieck_sq(&sq, &fp, &e)?;
                let t0 = s.representative().filter_exp("t", |k| k == 0)?;
                let pth = fp.normal_form(&e.pow(p)?)?.filter_exp("t", |k| k == 0)?;
                if t0 != pth {
                    return Ok(Some(format!("t^0 part {t0} ≠ e^p = {pth}")));
                }
                match src {
                    "1" => check(s.representative() == &ctx.one(), || format!("Sq(1) = {}", s.representative())),
                    "z" => {
                        let g = fp.normal_form(&sq.gamma_of(&e)?)?;
                        check(s.representative() == &g, || format!("Sq(z) = {}", s.representative()))
                    }
                    _ => Ok(None),
                }
            });
        }
        out.push(rep);
    }
    Ok(out)
}

/// f_p(u, v) = Σ_{0<l<p} binom(p, l)/p u^l v^(p-l).
pub fn f_p(p: u32, u: &GradedSeries, v: &GradedSeries) -> Result<GradedSeries> {
    let mut out = GradedSeries::zero(u.ring());
    let mut binom = BigInt::from(1);
    for l in 1..p {
        binom = binom * BigInt::from(p - l + 1) / BigInt::from(l);
        let c = Scalar::from_bigint(binom.clone()) / Scalar::from_int(p as i64);
        out = out.add(&u.pow(l)?.mul(&v.pow(p - l)?)?.scale(&c))?;
    }
    Ok(out)
}

pub(super) fn add_phi(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for (p, reps) in cells(cfg, &ALL)? {
        let mut rep = Report::new("addPhi", Some(p), Some(&reps));
        let mut cell = Cell::new(&ctx, &reps)?;
        for (a, b) in pairs() {
            rep.guarded(cfg, &[&[a], &[b]], format!("{a}, {b}"), || -> Result<Option<String>> {
                let sum = cell.phi(&format!("({a}) + ({b})"))?;
                let lhs = sum.sub(&cell.phi(a)?)?.sub(&cell.phi(b)?)?;
                let rhs = f_p(p, &cell.elem(a)?, &cell.elem(b)?)?;
                check(lhs == rhs, || format!("Φ(u+v)-Φ(u)-Φ(v) = {lhs}, f_p = {rhs}"))
            });
        }
        out.push(rep);
    }
    Ok(out)
}

/// Φ(uv) = [Φ(u)St(v) + St(u)Φ(v) + Φ(u)Φ(v)g]_{≤0}.
pub(super) fn mult_phi(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for (p, reps) in cells(cfg, &[2, 3])? {
        let mut rep = Report::new("multPhi", Some(p), Some(&reps));
        let mut cell = Cell::new(&ctx, &reps)?;
        for (a, b) in pairs() {
            rep.guarded(cfg, &[&[a, b]], format!("{a}, {b}"), || -> Result<Option<String>> {
                let lhs = cell.phi(&format!("({a}) * ({b})"))?;
                let (pu, pv) = (cell.phi(a)?, cell.phi(b)?);
                let su = cell.op.st(&cell.elem(a)?)?;
                let sv = cell.op.st(&cell.elem(b)?)?;
                let e = pu.mul(&sv)?.add(&su.mul(&pv)?)?.add(&pu.mul(&pv)?.mul(cell.g())?)?;
                let rhs = e.filter_exp("t", |k| k <= 0)?;
                check(lhs == rhs, || format!("Φ(uv) = {lhs}, expected {rhs}"))
            });
        }
        out.push(rep);
    }
    Ok(out)
}

/// Leading form: St(z^r u) ≡ z^r c(t)^r φ̂(u) mod z^(r+1), and
/// c(t) - ī_s t^(p-1) only has higher t-degrees with b-coefficients.
pub(super) fn grad(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for (p, reps) in cells(cfg, &ALL)? {
        let mut rep = Report::new("grad", Some(p), Some(&reps));
        let cell = Cell::new(&ctx, &reps)?;
        let st = cell.op.steenrod();
        let c = st.c().clone();
        let lead = ctx.t().pow(p - 1)?.scale_int(reps.product());
        let rest = c.sub(&lead)?;
        let ti = ctx.ring().require("t")?;
        rep.case(
            "c(t) leading form",
            check(rest.terms().all(|(m, _)| m.exp(ti) > p as i32 - 1 && m.bweight() > 0), || {
                format!("c(t) - ī_s t^(p-1) = {rest}")
            }),
        );
        for r in 1..=3u32 {
            let zr_label = format!("z^{r}");
            for u_src in ["1", "P1", "P2"] {
                rep.guarded(cfg, &[&[&zr_label, u_src]], format!("z^{r}*{u_src}"), || -> Result<Option<String>> {
                    let u = cell.elem(u_src)?;
                    let z = ctx.var("z1")?;
                    let zr = z.pow(r)?;
                    let cut = |f: &GradedSeries| f.filter_exp("z1", |k| k <= r as i32);
                    let lhs = cut(&st.apply(&zr.mul(&u)?)?)?;
                    let rhs = cut(&zr.mul(&c.pow(r)?)?.mul(&st.coefficient_map(&u)?)?)?;
                    check(lhs == rhs, || format!("difference {}", lhs.sub(&rhs).unwrap()))
                });
            }
        }
        out.push(rep);
    }
    Ok(out)
}

/// pr Φ^q(u v) = η(U) st^{q t^(-p dim U)}(v), and the special slice
/// pr Φ^{t^k}(u v) = η(U) ī_s^codim(v) pr(v) for k = p dim U - (p-1) codim v > 0.
pub(super) fn uv(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for (p, reps) in cells(cfg, &ALL)? {
        let mut rep = Report::new("uv", Some(p), Some(&reps));
        let mut cell = Cell::new(&ctx, &reps)?;
        for u_src in ["P1", "P2"] {
            let model = chow_model(u_src)?;
            let dim = model.dim();
            let eta = match model.eta(&reps) {
                Ok(e) => e,
                Err(e) => {
                    rep.case(format!("η({u_src})"), Err(e));
                    continue;
                }
            };
            for (v_src, codim) in [("z", 1i32), ("z^2", 2)] {
                let prod = format!("{u_src}*{v_src}");
                for (q_src, q) in [("1", ctx.one()), ("t", ctx.t())] {
                    rep.guarded(cfg, &[&[u_src, v_src]], format!("u={u_src}, v={v_src}, q={q_src}"), || -> Result<Option<String>> {
                        let phi = cell.phi(&prod)?;
                        let lhs = chow_trace(&cell.op.slice(&phi, &q)?);
                        let f = q.mul(&ctx.t().powi(-(p as i32) * dim)?)?;
                        let rhs = cell.op.st_slice(&cell.elem(v_src)?, &f)?.scale(&eta);
                        check(lhs == rhs, || format!("lhs {lhs}, rhs {rhs}"))
                    });
                }
                let k = p as i32 * dim - (p as i32 - 1) * codim;
                if k > 0 {
                    rep.guarded(cfg, &[&[u_src, v_src]], format!("u={u_src}, v={v_src}, special t^{k}"), || -> Result<Option<String>> {
                        let phi = cell.phi(&prod)?;
                        let lhs = chow_trace(&cell.op.slice(&phi, &ctx.t().pow(k as u32)?)?);
                        let factor = &eta * &Scalar::from_int(reps.product()).pow(codim);
                        let rhs = chow_trace(&cell.elem(v_src)?).scale(&factor);
                        check(lhs == rhs, || format!("lhs {lhs}, rhs {rhs}"))
                    });
                }
            }
        }
        out.push(rep);
    }
    Ok(out)
}

/// Hyperplane model: Φ^q(z g) = z Φ^{q che(O(1))}(g).
pub(super) fn rr(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for (p, reps) in cells(cfg, &ALL)? {
        let mut rep = Report::new("rr", Some(p), Some(&reps));
        let mut cell = Cell::new(&ctx, &reps)?;
        let z = ctx.var("z1")?;
        let che = omega_che(&ctx, &reps, &[(z.clone(), 1)])?;
        let p1 = cell.elem("P1")?;
        let qs = [("1", ctx.one()), ("t", ctx.t()), ("t^2", ctx.t().pow(2)?), ("P1*t", p1.mul(&ctx.t())?)];
        for g_src in ["1", "z", "P1*z"] {
            for (q_src, q) in &qs {
                rep.guarded(cfg, &[&["z", g_src]], format!("g={g_src}, q={q_src}"), || -> Result<Option<String>> {
                    let zg = cell.phi(&format!("z*({g_src})"))?;
                    let lhs = cell.op.slice(&zg, q)?;
                    let g = cell.phi(g_src)?;
                    let rhs = z.mul(&cell.op.slice(&g, &q.mul(&che)?)?)?;
                    check(lhs == rhs, || format!("lhs {lhs}, rhs {rhs}"))
                });
            }
        }
        out.push(rep);
    }
    Ok(out)
}

/// St(ī)(e) ≡ St(ī')(e) ≡ Sq(e) modulo ([p]_F t) across the grid, and the
/// t^0 part of Sq(e) is e^p mod p.
pub(super) fn diagram(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for p in cfg.primes_in(&ALL) {
        let mut rep = Report::new("diagram", Some(p), None);
        let grid = cfg.reps_grid(p)?;
        let sts = grid
            .iter()
            .map(|r| OperationDescriptor::quillen_steenrod(&ctx, r))
            .collect::<Result<Vec<_>>>()?;
        let sq = OperationDescriptor::tom_dieck(&ctx, p)?;
        let fp = crate::quotient::FormalP::new(&ctx, p)?;
        for src in GRID_INPUTS {
            rep.guarded(cfg, &[&[src]], src, || -> Result<Option<String>> {
                let e = parse_element(&ctx, src)?;
                let sq_e = tom_dieck_sq(&sq, &fp, &e)?;
                for (reps, st) in grid.iter().zip(&sts) {
                    let diff = st.apply(&e)?.sub(sq_e.representative())?;
                    let reduced = fp.reduce(&diff)?;
                    if !reduced.is_zero() {
                        return Ok(Some(format!("St({:?}) - Sq ≡ {reduced}", reps.reps())));
                    }
                }
                let t0 = sq_e.representative().filter_exp("t", |k| k == 0)?;
                let pth = fp.normal_form(&e.pow(p)?)?.filter_exp("t", |k| k == 0)?;
                check(t0 == pth, || format!("t^0 part {t0} ≠ e^p = {pth}"))
            });
        }
        out.push(rep);
    }
    Ok(out)
}

/// p = 2: Φ^{g q}(e) = q(0) e^2 - Res(q St(e) ω / t), for ī = {1} and {-1}.
pub(super) fn soold(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    if !cfg.primes.contains(&2) {
        return Ok(out);
    }
    for reps in [CosetReps::canonical(2)?, CosetReps::symmetric(2)?] {
        let mut rep = Report::new("soold", Some(2), Some(&reps));
        let mut cell = Cell::new(&ctx, &reps)?;
        let p1 = cell.elem("P1")?;
        let qs = [("1", ctx.one()), ("t", ctx.t()), ("t^2", ctx.t().pow(2)?), ("P1*t", p1.mul(&ctx.t())?)];
        for src in GRID_INPUTS {
            for (q_src, q) in &qs {
                rep.guarded(cfg, &[&[src]], format!("{src}, q={q_src}"), || -> Result<Option<String>> {
                    let e = cell.elem(src)?;
                    let gq = q.mul(cell.g())?;
                    let phi = cell.phi(src)?;
                    let lhs = cell.op.slice(&phi, &gq)?;
                    let q0 = q.coefficient("t", 0)?;
                    let st_slice = cell.op.slice(&cell.op.st(&e)?, q)?;
                    let rhs = q0.mul(&e.pow(2)?)?.sub(&st_slice)?;
                    check(lhs == rhs, || format!("lhs {lhs}, rhs {rhs}"))
                });
            }
        }
        out.push(rep);
    }
    Ok(out)
}
