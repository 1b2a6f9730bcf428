use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::fgl::{AmbientContext, ChowModel, ContextConfig};
use crate::operations::{parse_element, OperationDescriptor, SymmetricOperation};
use crate::series::Scalar;

use super::{check, Report, SuiteConfig, Verdict};

/// Unit, commutativity, associativity through joint degree 8, the first
/// coefficients, and the morphism equation of St for every configured p.
pub(super) fn fgl_axioms(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let mut rep = Report::new("fglaxioms", None, None);
    let big = AmbientContext::new(ContextConfig::new(cfg.deg.max(8), cfg.bweight.max(7)))?;
    let f = big.universal_fgl();
    let (x, y, w) = (big.var("x")?, big.var("y")?, big.var("w")?);
    let ring = big.ring();
    rep.case("F(x,0) = x", f.substitute(ring, &[("y", &big.zero())]).map_err(Error::from).and_then(|g| {
        check(g == x, || format!("F(x,0) = {g}"))
    }));
    rep.case("F(x,y) = F(y,x)", f.substitute(ring, &[("x", &y), ("y", &x)]).map_err(Error::from).and_then(|g| {
        check(g == *f, || "F is not symmetric".into())
    }));
    let assoc = (|| -> Result<Option<String>> {
        let left = f.substitute(ring, &[("x", f), ("y", &w)])?;
        let yw = big.fgl_add(&y, &w)?;
        let right = f.substitute(ring, &[("y", &yw)])?;
        check(left == right, || format!("difference {}", left.sub(&right).unwrap()))
    })();
    rep.case(format!("associativity through degree {}", ring.trunc_plus()), assoc);
    let b1 = big.b(1)?;
    let b2 = big.b(2)?;
    rep.case("a_11 = 2b1", big.fgl_coefficient(1, 1).and_then(|a| {
        check(a == b1.scale_int(2), || format!("a_11 = {a}"))
    }));
    rep.case("a_21 = 3b2 - 2b1^2", big.fgl_coefficient(2, 1).and_then(|a| {
        let expect = b2.scale_int(3).sub(&b1.pow(2)?.scale_int(2))?;
        check(a == expect, || format!("a_21 = {a}"))
    }));

    let ctx = cfg.context()?;
    for &p in &cfg.primes {
        for reps in cfg.reps_grid(p)? {
            let outcome = OperationDescriptor::quillen_steenrod(&ctx, &reps)
                .and_then(|d| d.check_fgl_morphism())
                .map(|ok| (!ok).then(|| "φ̂(F)(γ(u),γ(v)) ≠ γ(F(u,v))".to_string()));
            rep.case(format!("St morphism p={p} reps={:?}", reps.reps()), outcome);
        }
    }
    Ok(vec![rep])
}

pub(crate) fn chow_model(label: &str) -> Result<ChowModel> {
    ChowModel::parse(label)
}

const F1_CASES: [(u32, &str); 5] = [(2, "P1"), (2, "P3"), (3, "P2"), (2, "H(3,2)"), (3, "H(4,3)")];

/// deg Φ^{t^{p n}}([U]) against the Chow-side η.
pub(super) fn f1(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for p in cfg.primes_in(&[2, 3]) {
        for reps in cfg.reps_grid(p)? {
            let mut rep = Report::new("f1", Some(p), Some(&reps));
            let op = SymmetricOperation::new(&ctx, &reps)?;
            for (_, label) in F1_CASES.iter().filter(|(q, _)| *q == p) {
                rep.guarded(cfg, &[&[label]], *label, || -> Result<Option<String>> {
                    let model = chow_model(label)?;
                    let u = parse_element(&ctx, label)?;
                    let phi = op.phi(&u)?.phi;
                    let q = ctx.t().pow((p as i32 * model.dim()) as u32)?;
                    let slice = op.slice(&phi, &q)?;
                    let eta = model.eta(&reps)?;
                    check(slice == ctx.scalar(eta.clone()), || format!("slice {slice}, η = {eta}"))
                });
            }
            out.push(rep);
        }
    }
    Ok(out)
}

fn il_classes() -> Vec<String> {
    let mut out: Vec<String> = (1..=5).map(|n| format!("P{n}")).collect();
    for n in 2..=5 {
        for d in 2..=4 {
            out.push(format!("H({n},{d})"));
        }
    }
    out
}

/// η̄ mod p agrees across the representative grid on I(p)-classes.
pub(super) fn il1(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for &p in &cfg.primes {
        let mut rep = Report::new("il1", Some(p), None);
        let grid = cfg.reps_grid(p)?;
        let modulus = BigInt::from(p);
        for label in il_classes() {
            if let Some(reason) = cfg.unrepresentable(&[&label]) {
                rep.skip(label, reason);
                continue;
            }
            let model = chow_model(&label)?;
            let class = ctx.lazard(parse_element(&ctx, &label)?, &label)?;
            if !class.in_ip(p) {
                continue;
            }
            let outcome = (|| -> Result<Option<String>> {
                let mut seen: Vec<(Vec<i64>, Scalar, BigInt)> = Vec::new();
                for reps in &grid {
                    let eta = model.eta(reps)?;
                    let bar = eta.residue_mod(&modulus).ok_or_else(|| {
                        Error::Certificate(format!("η = {eta} has p in the denominator"))
                    })?;
                    seen.push((reps.reps().to_vec(), eta, bar));
                }
                let agree = seen.windows(2).all(|w| w[0].2 == w[1].2);
                check(agree, || {
                    seen.iter().map(|(r, e, b)| format!("{r:?}: η = {e} ≡ {b}")).collect::<Vec<_>>().join("; ")
                })
            })();
            rep.case(label, outcome);
        }
        if rep.cases.iter().all(|c| c.verdict == Verdict::Skip) {
            rep.note("none", format!("no tested class lies in I({p})"));
        }
        out.push(rep);
    }
    Ok(out)
}

fn binom_mod(n: u64, k: u64, p: u64) -> u64 {
    // Lucas' theorem keeps this exact for any size.
    let (mut n, mut k, mut acc) = (n, k, 1u64);
    while n > 0 || k > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        let mut c = BigInt::from(1);
        for i in 0..ki {
            c = c * BigInt::from(ni - i) / BigInt::from(i + 1);
        }
        let c: u64 = c.mod_floor(&BigInt::from(p)).try_into().unwrap();
        acc = acc * c % p;
        n /= p;
        k /= p;
    }
    acc
}

const IL3_CASES: [(u32, u32); 3] = [(2, 1), (3, 1), (2, 2)];

/// χ_{b_{p-1}^d}(Q)/p mod p for a degree-p hypersurface Q in P^{p^r}.
pub(super) fn il3(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut out = Vec::new();
    for p in cfg.primes.iter().copied() {
        let mut cases: Vec<u32> = IL3_CASES.iter().filter(|(q, _)| *q == p).map(|(_, r)| *r).collect();
        if let Some(r) = cfg.r {
            cases = vec![r];
        }
        if cases.is_empty() {
            continue;
        }
        let mut rep = Report::new("il3", Some(p), None);
        for r in cases {
            let n = (p as i64).pow(r);
            let dim = n - 1;
            let d = dim / (p as i64 - 1);
            let label = format!("H({n},{p}) r={r}");
            if dim > cfg.bweight as i64 {
                rep.skip(label, format!("needs b-weight {dim} > {}", cfg.bweight));
                continue;
            }
            // Ok(Ok(note)) passes with a note, Ok(Err(witness)) fails.
            let outcome = (|| -> Result<std::result::Result<String, String>> {
                let class = ctx.hypersurface_class(n as i32, p as i32)?;
                let chi = class.char_number(&[(p as usize - 1, d as i32)])?;
                let quotient = &chi / &Scalar::from_int(p as i64);
                let Some(q) = quotient.to_integer() else {
                    return Ok(Err(format!("χ = {chi} is not divisible by {p}")));
                };
                let pu = p as u64;
                let qv: u64 = q.mod_floor(&BigInt::from(p)).try_into().unwrap();
                let top = (pu.pow(r + 1) - 1) / (pu - 1);
                let b = binom_mod(top, d as u64, pu);
                let signed = if r % 2 == 0 { b } else { (pu - b) % pu };
                if qv == 0 {
                    return Ok(Err(format!("χ/p = {quotient} ≡ 0")));
                }
                if qv != b && qv != (pu - b) % pu {
                    return Ok(Err(format!("χ/p ≡ {qv}, binomial ≡ {b}")));
                }
                let sign = if qv == signed { "(-1)^r" } else { "-(-1)^r" };
                Ok(Ok(format!("χ = {chi}, χ/p = {quotient} ≡ {qv}; binom({top},{d}) ≡ {b}; χ/p ≡ {sign}·binom")))
            })();
            match outcome {
                Ok(Ok(note)) => rep.note(label, note),
                Ok(Err(w)) => rep.case(label, Ok(Some(w))),
                Err(e) => rep.case(label, Err(e)),
            }
        }
        out.push(rep);
    }
    Ok(out)
}

/// [H(2,2)] = [P1] and s_{n-1}(H(n,d)) = d(n+1) - d^n.
pub(super) fn hyper(cfg: &SuiteConfig) -> Result<Vec<Report>> {
    let ctx = cfg.context()?;
    let mut rep = Report::new("hyper", None, None);
    rep.case("H(2,2) = P1", (|| {
        let h = ctx.hypersurface_class(2, 2)?;
        let p1 = ctx.pn_class(1)?;
        check(h.ambient() == p1.ambient(), || format!("[H(2,2)] = {}", h.ambient()))
    })());
    for n in 2..=5i64 {
        for d in 1..=4i64 {
            let label = format!("H({n},{d})");
            rep.guarded(cfg, &[&[&label]], format!("s({label})"), || {
                let s = ctx.hypersurface_class(n as i32, d as i32)?.s_number()?;
                let expect = Scalar::from_int(d * (n + 1) - d.pow(n as u32));
                check(s == expect, || format!("s = {s}, expected {expect}"))
            });
        }
    }
    Ok(vec![rep])
}
