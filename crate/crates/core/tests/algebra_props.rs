use std::sync::{Arc, OnceLock};

use cobcalc_core::fgl::{AmbientContext, ContextConfig, CosetReps};
use cobcalc_core::group_actions::{ContinuousAutomorphism, FormalLaw};
use cobcalc_core::operations::{parse_element, tom_dieck_sq, OperationDescriptor, SymmetricOperation};
use cobcalc_core::quotient::FormalP;
use cobcalc_core::{GradedSeries, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;

fn ctx() -> &'static Arc<AmbientContext> {
    static CTX: OnceLock<Arc<AmbientContext>> = OnceLock::new();
    CTX.get_or_init(|| Arc::new(AmbientContext::new(ContextConfig::new(5, 4)).unwrap()))
}

const ATOMS: [&str; 7] = ["1", "z", "z2", "P1", "P2", "P1*z", "z*z2"];

/// Integer combinations of a few atoms in L[[z1, z2]].
fn element() -> impl Strategy<Value = (String, GradedSeries)> {
    prop::collection::vec((0..ATOMS.len(), -3..=3i64), 1..4).prop_map(|v| {
        let src = v.iter().map(|(i, c)| format!("({c})*({})", ATOMS[*i])).collect::<Vec<_>>().join(" + ");
        let e = parse_element(ctx(), &src).unwrap();
        (src, e)
    })
}

/// Integral power series in t and b.
fn tb_series() -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec((0..=3i32, 0..=2usize, -6..=6i64), 0..5).prop_map(|v| {
        let c = ctx();
        let mut out = c.zero();
        for (t, b, n) in v {
            let mut term = c.t().pow(t as u32).unwrap().scale_int(n);
            if b > 0 {
                term = term.mul(&c.b(b).unwrap()).unwrap();
            }
            out = out.add(&term).unwrap();
        }
        out
    })
}

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3u32)]
}

fn reps_for(p: u32, seed: u64) -> CosetReps {
    CosetReps::random(p, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn normal_forms(p in prime(), f in tb_series(), h in tb_series()) {
        let fp = FormalP::new(ctx(), p).unwrap();
        let nf = fp.normal_form(&f).unwrap();
        prop_assert_eq!(fp.normal_form(&nf).unwrap(), nf.clone());
        let digit = |c: &Scalar| c.to_i64().is_some_and(|d| (0..p as i64).contains(&d));
        prop_assert!(nf.terms().all(|(_, c)| digit(c)));
        let gh = fp.generator().mul(&h).unwrap();
        prop_assert!(fp.reduce(&gh).unwrap().is_zero());
        prop_assert!(fp.congruent(&f, &f.add(&gh).unwrap()).unwrap());
    }

    #[test]
    fn steenrod_is_a_ring_map(p in prime(), seed in any::<u64>(), (_, u) in element(), (_, v) in element()) {
        let st = OperationDescriptor::quillen_steenrod(ctx(), &reps_for(p, seed)).unwrap();
        let s = |e: &GradedSeries| st.apply(e).unwrap();
        prop_assert_eq!(s(&u.mul(&v).unwrap()), s(&u).mul(&s(&v)).unwrap());
        prop_assert_eq!(s(&u.add(&v).unwrap()), s(&u).add(&s(&v)).unwrap());
    }

    #[test]
    fn phi_additivity_defect(p in prime(), seed in any::<u64>(), (_, u) in element(), (_, v) in element()) {
        let op = SymmetricOperation::new(ctx(), &reps_for(p, seed)).unwrap();
        let phi = |e: &GradedSeries| op.phi(e).unwrap().phi;
        let lhs = phi(&u.add(&v).unwrap()).sub(&phi(&u)).unwrap().sub(&phi(&v)).unwrap();
        let uv = u.mul(&v).unwrap();
        let defect = if p == 2 { uv } else { uv.mul(&u.add(&v).unwrap()).unwrap() };
        prop_assert_eq!(lhs, defect);
    }

    #[test]
    fn sq_is_integral_with_pth_power_at_zero(p in prime(), (src, e) in element()) {
        let fp = FormalP::new(ctx(), p).unwrap();
        let sq = OperationDescriptor::tom_dieck(ctx(), p).unwrap();
        let r = tom_dieck_sq(&sq, &fp, &e).unwrap();
        let t0 = r.representative().filter_exp("t", |k| k == 0).unwrap();
        let pth = fp.normal_form(&e.pow(p).unwrap()).unwrap().filter_exp("t", |k| k == 0).unwrap();
        prop_assert_eq!(t0, pth, "{}", src);
    }

    #[test]
    fn shifts_compose(p in prime(), k in 0..3usize, l in 0..3usize) {
        let law = FormalLaw::universal(ctx(), p).unwrap();
        let a = ContinuousAutomorphism::shift(&law, "x", k).unwrap();
        let b = ContinuousAutomorphism::shift(&law, "x", l).unwrap();
        let ab = a.then(&b).unwrap();
        let direct = ContinuousAutomorphism::shift(&law, "x", (k + l) % p as usize).unwrap();
        prop_assert_eq!(ab.image(), direct.image());
    }

    #[test]
    fn random_representatives_are_valid(p in prop_oneof![Just(2u32), Just(3), Just(5), Just(7)], seed in any::<u64>()) {
        let r = reps_for(p, seed);
        let mut residues: Vec<i64> = r.reps().iter().map(|i| i.rem_euclid(p as i64)).collect();
        residues.sort();
        prop_assert_eq!(residues, (1..p as i64).collect::<Vec<_>>());
        prop_assert!(CosetReps::new(p, r.reps().to_vec()).is_ok());
    }
}
