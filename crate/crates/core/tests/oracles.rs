//! Independent recomputations of derived values with a throwaway
//! polynomial arithmetic, compared against the engine and frozen.

use std::collections::BTreeMap;
use std::sync::Arc;

use cobcalc_core::fgl::{AmbientContext, ChowModel, ContextConfig, CosetReps};
use cobcalc_core::operations::{parse_element, SymmetricOperation};
use cobcalc_core::{GradedSeries, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

const NB: usize = 4;
const W: u32 = 4;
/// Series length in s (powers 0..N).
const N: usize = 6;

type Q = BigRational;
/// Polynomial in b1..b4, truncated at b-weight W.
type BPoly = BTreeMap<[u32; NB], Q>;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn weight(e: &[u32; NB]) -> u32 {
    e.iter().enumerate().map(|(i, k)| (i as u32 + 1) * k).sum()
}

fn bconst(c: Q) -> BPoly {
    let mut p = BPoly::new();
    if !c.is_zero() {
        p.insert([0; NB], c);
    }
    p
}

fn bvar(i: usize) -> BPoly {
    let mut e = [0; NB];
    e[i - 1] = 1;
    BPoly::from([(e, Q::one())])
}

fn badd(a: &BPoly, b: &BPoly) -> BPoly {
    let mut out = a.clone();
    for (e, c) in b {
        let v = out.entry(*e).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            out.remove(e);
        }
    }
    out
}

fn bscale(a: &BPoly, c: &Q) -> BPoly {
    a.iter().map(|(e, v)| (*e, v * c)).filter(|(_, v)| !v.is_zero()).collect()
}

fn bmul(a: &BPoly, b: &BPoly) -> BPoly {
    let mut out = BPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let mut e = [0; NB];
            for i in 0..NB {
                e[i] = ea[i] + eb[i];
            }
            if weight(&e) <= W {
                out = badd(&out, &BPoly::from([(e, ca * cb)]));
            }
        }
    }
    out
}

/// Univariate series in s with BPoly coefficients.
type Ser = Vec<BPoly>;

fn smul(a: &Ser, b: &Ser) -> Ser {
    let mut out = vec![BPoly::new(); N + 1];
    for i in 0..=N {
        for j in 0..=N - i {
            out[i + j] = badd(&out[i + j], &bmul(&a[i], &b[j]));
        }
    }
    out
}

fn sadd(a: &Ser, b: &Ser) -> Ser {
    a.iter().zip(b).map(|(x, y)| badd(x, y)).collect()
}

/// f(g) for g without constant term, by Horner.
fn compose(f: &Ser, g: &Ser) -> Ser {
    let mut acc = vec![BPoly::new(); N + 1];
    for c in f.iter().rev() {
        acc = smul(&acc, g);
        acc[0] = badd(&acc[0], c);
    }
    acc
}

fn s_var() -> Ser {
    let mut s = vec![BPoly::new(); N + 1];
    s[1] = bconst(Q::one());
    s
}

/// B(s) = s + b1 s^2 + ... + b4 s^5.
fn exp_b() -> Ser {
    let mut b = s_var();
    for i in 1..=NB.min(N - 1) {
        b[i + 1] = bvar(i);
    }
    b
}

/// L with B(L(s)) = s, by fixed-point iteration (one order per step).
fn log_b() -> Ser {
    let b = exp_b();
    let s = s_var();
    let mut l = s.clone();
    for _ in 0..=N {
        let err = sadd(&compose(&b, &l), &s.iter().map(|c| bscale(c, &q(-1))).collect());
        l = sadd(&l, &err.iter().map(|c| bscale(c, &q(-1))).collect());
    }
    l
}

/// Coefficients a_ij of F(x, y) = B(L(x) + L(y)) for i + j <= N, expanding
/// B on the bivariate argument term by term.
fn fgl_coefficients() -> BTreeMap<(usize, usize), BPoly> {
    type Bi = BTreeMap<(usize, usize), BPoly>;
    let l = log_b();
    let mut arg = Bi::new();
    for (k, c) in l.iter().enumerate() {
        if !c.is_empty() {
            arg.insert((k, 0), c.clone());
            arg.insert((0, k), c.clone());
        }
    }
    let bimul = |a: &Bi, b: &Bi| {
        let mut out = Bi::new();
        for ((i, j), ca) in a {
            for ((k, m), cb) in b {
                if i + j + k + m <= N {
                    let e = out.entry((i + k, j + m)).or_default();
                    *e = badd(e, &bmul(ca, cb));
                }
            }
        }
        out
    };
    let b = exp_b();
    let mut out = Bi::new();
    let mut power = Bi::from([((0, 0), bconst(Q::one()))]);
    for coeff in b.iter().skip(1) {
        power = bimul(&power, &arg);
        for (k, v) in &power {
            let e = out.entry(*k).or_default();
            *e = badd(e, &bmul(coeff, v));
        }
    }
    out.retain(|_, v| !v.is_empty());
    out
}

fn ctx() -> Arc<AmbientContext> {
    Arc::new(AmbientContext::new(ContextConfig::new(N as i32, W as i32)).unwrap())
}

/// An oracle b-polynomial times t^k as an engine series.
fn engine(ctx: &AmbientContext, p: &BPoly, tpow: i32) -> GradedSeries {
    let mut out = ctx.zero();
    for (e, c) in p {
        let names: Vec<String> = (1..=NB).map(|i| format!("b{i}")).collect();
        let mut powers: Vec<(&str, i32)> =
            names.iter().zip(e).filter(|(_, k)| **k > 0).map(|(n, k)| (n.as_str(), *k as i32)).collect();
        if tpow != 0 {
            powers.push(("t", tpow));
        }
        let c = Scalar::from_parts(c.numer().clone(), c.denom().clone()).unwrap();
        out = out.add(&GradedSeries::term(ctx.ring(), c, &powers).unwrap()).unwrap();
    }
    out
}

fn engine_ser(ctx: &AmbientContext, s: &Ser, upto: usize) -> GradedSeries {
    let mut out = ctx.zero();
    for (k, c) in s.iter().enumerate().take(upto + 1) {
        out = out.add(&engine(ctx, c, k as i32)).unwrap();
    }
    out
}

fn t_cut(f: &GradedSeries, k: i32) -> GradedSeries {
    f.filter_exp("t", |e| e <= k).unwrap()
}

#[test]
fn fgl_coefficients_by_direct_composition() {
    let c = ctx();
    let oracle = fgl_coefficients();
    assert_eq!(oracle[&(1, 0)], bconst(Q::one()));
    assert!(!oracle.contains_key(&(2, 0)));
    for i in 1..N {
        for j in 1..=N - i {
            let want = engine(&c, oracle.get(&(i, j)).unwrap_or(&BPoly::new()), 0);
            assert_eq!(c.fgl_coefficient(i as i32, j as i32).unwrap(), want, "a_{i}{j}");
        }
    }
    // Frozen.
    assert_eq!(oracle[&(1, 1)], bscale(&bvar(1), &q(2)));
    assert_eq!(oracle[&(2, 1)], badd(&bscale(&bvar(2), &q(3)), &bscale(&bmul(&bvar(1), &bvar(1)), &q(-2))));
    assert_eq!(c.fgl_coefficient(2, 1).unwrap().to_string(), "3b2 - 2b1^2");
}

#[test]
fn formal_multiples_and_invariant_form() {
    let c = ctx();
    let l = log_b();
    let two_l: Ser = l.iter().map(|x| bscale(x, &q(2))).collect();
    let two = compose(&exp_b(), &two_l);
    assert_eq!(t_cut(&c.formal_int_mul(2).unwrap(), N as i32), engine_ser(&c, &two, N));
    assert_eq!(t_cut(&c.formal_int_mul(2).unwrap(), 3).to_string(), "2t + 2b1 t^2 + (6b2-4b1^2) t^3");
    let three_l: Ser = l.iter().map(|x| bscale(x, &q(3))).collect();
    let three = compose(&exp_b(), &three_l);
    assert_eq!(t_cut(&c.formal_int_mul(3).unwrap(), N as i32), engine_ser(&c, &three, N));
    // ω = L'(t)
    let dl: Ser = (0..=N)
        .map(|k| if k < N { bscale(&l[k + 1], &q(k as i64 + 1)) } else { BPoly::new() })
        .collect();
    let omega = c.invariant_form().unwrap();
    assert_eq!(t_cut(&omega, N as i32 - 1), engine_ser(&c, &dl, N - 1));
    assert_eq!(t_cut(&omega, 1).to_string(), "1 - 2b1 t");
}

#[test]
fn projective_and_hypersurface_classes() {
    let c = ctx();
    let l = log_b();
    for n in 1..=W as usize {
        let want = bscale(&l[n + 1], &q(n as i64 + 1));
        assert_eq!(*c.pn_class(n as i32).unwrap().ambient(), engine(&c, &want, 0), "P{n}");
    }
    assert_eq!(c.pn_class(1).unwrap().ambient().to_string(), "-2b1");
    // [H(n,d)] = coefficient of x^n in [d]_F(x) L'(x).
    let dl: Ser = (0..=N)
        .map(|k| if k < N { bscale(&l[k + 1], &q(k as i64 + 1)) } else { BPoly::new() })
        .collect();
    for n in 2..=4usize {
        for d in 1..=3i64 {
            let dx = compose(&exp_b(), &l.iter().map(|x| bscale(x, &q(d))).collect());
            let want = smul(&dx, &dl)[n].clone();
            let h = c.hypersurface_class(n as i32, d as i32).unwrap();
            assert_eq!(*h.ambient(), engine(&c, &want, 0), "H({n},{d})");
        }
    }
    let h22 = c.hypersurface_class(2, 2).unwrap();
    assert_eq!(h22.char_number(&[(1, 1)]).unwrap(), Scalar::from_int(-2));
}

#[test]
fn phi_of_p1_by_triangular_solve() {
    // p = 2, ī = {1}: St has γ(x) = x F(x, t) and c = t, so
    // b̃1 = t^-2 + (b1 + a_11) t^-1 + Σ_{j>=2} a_1j t^(j-2), St([P1]) = -2 b̃1,
    // S = [P1]^2 - St([P1]) and Φ solves (g Φ)_{<=0} = S_{<=0} with g = [2](t)/t.
    let c = ctx();
    let a = fgl_coefficients();
    let a1 = |j: usize| a.get(&(1, j)).cloned().unwrap_or_default();
    let p1 = bscale(&bvar(1), &q(-2));
    let mut s: BTreeMap<i32, BPoly> = BTreeMap::new();
    s.insert(-2, bconst(q(2)));
    s.insert(-1, bscale(&badd(&bvar(1), &a1(1)), &q(2)));
    s.insert(0, badd(&bmul(&p1, &p1), &bscale(&a1(2), &q(2))));
    let l = log_b();
    let two = compose(&exp_b(), &l.iter().map(|x| bscale(x, &q(2))).collect());
    let g: Vec<BPoly> = two.iter().skip(1).cloned().collect();
    let mut phi: BTreeMap<i32, BPoly> = BTreeMap::new();
    for k in -2..=0 {
        let mut rhs = s[&k].clone();
        for (j, gj) in g.iter().enumerate().skip(1) {
            if let Some(f) = phi.get(&(k - j as i32)) {
                rhs = badd(&rhs, &bscale(&bmul(gj, f), &q(-1)));
            }
        }
        phi.insert(k, bscale(&rhs, &(Q::one() / q(2))));
    }
    let mut want = c.zero();
    for (k, v) in &phi {
        want = want.add(&engine(&c, v, *k)).unwrap();
    }
    let op = SymmetricOperation::new(&c, &CosetReps::canonical(2).unwrap()).unwrap();
    let got = op.phi(&parse_element(&c, "P1").unwrap()).unwrap().phi;
    assert_eq!(got, want);
    assert_eq!(got.to_string(), "t^-2 + 2b1 t^-1");
}

#[test]
fn eta_two_routes_frozen() {
    let c = Arc::new(AmbientContext::new(ContextConfig::new(6, 6)).unwrap());
    let cases: [(u32, &[i64], &str, Scalar); 7] = [
        (2, &[1], "P1", Scalar::from_int(1)),
        (2, &[1], "P3", Scalar::from_int(10)),
        (3, &[1, 2], "P2", Scalar::from_int(-1)),
        (3, &[1, -1], "P2", Scalar::from_int(-1)),
        (2, &[1], "H(3,2)", Scalar::from_int(-2)),
        (3, &[1, 2], "H(4,3)", Scalar::ratio(-45, 32)),
        (3, &[1, -1], "H(4,3)", Scalar::from_int(0)),
    ];
    for (p, reps, label, frozen) in cases {
        let reps = CosetReps::new(p, reps.to_vec()).unwrap();
        let model = ChowModel::parse(label).unwrap();
        let eta = model.eta(&reps).unwrap();
        let op = SymmetricOperation::new(&c, &reps).unwrap();
        let phi = op.phi(&parse_element(&c, label).unwrap()).unwrap().phi;
        let tq = c.t().pow(p * model.dim() as u32).unwrap();
        let slice = op.slice(&phi, &tq).unwrap();
        assert_eq!(slice, c.scalar(eta.clone()), "{label} p={p}");
        assert_eq!(eta, frozen, "{label} p={p} reps={:?}", reps.reps());
    }
}

#[test]
fn s_numbers_classical() {
    let c = ctx();
    for n in 2..=5 {
        for d in 1..=4i64 {
            let s = c.hypersurface_class(n, d as i32).unwrap().s_number().unwrap();
            assert_eq!(s, Scalar::from_int(d * (n as i64 + 1) - d.pow(n as u32)));
        }
    }
}
