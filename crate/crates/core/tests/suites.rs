use cobcalc_core::verify::{run_suite, SuiteConfig, Verdict, SUITES};

fn small() -> SuiteConfig {
    SuiteConfig { deg: 4, bweight: 4, max_n: 3, samples: 3, ..SuiteConfig::default() }
}

#[test]
fn reports_are_deterministic() {
    let cfg = SuiteConfig { seed: 11, ..small() }.with_primes(&[3]);
    for name in ["thmG", "sop", "il1"] {
        let a = serde_json::to_string(&run_suite(name, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(name, &cfg).unwrap()).unwrap();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn fixed_representatives_replace_the_grid() {
    let cfg = SuiteConfig { reps: Some(vec![-1, 1]), ..small() }.with_primes(&[3]);
    let reports = run_suite("emb", &cfg).unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0].reps.as_deref(), Some(&[-1, 1][..]));
    assert!(reports[0].passed());
    let bad = SuiteConfig { reps: Some(vec![1, 4]), ..small() }.with_primes(&[3]);
    assert!(run_suite("emb", &bad).is_err());
}

#[test]
fn oversized_inputs_are_skipped_visibly() {
    // P3 needs b-weight 3 and P2 * P3 needs 5.
    let cfg = SuiteConfig { deg: 4, bweight: 2, ..SuiteConfig::default() }.with_primes(&[2]);
    let reports = run_suite("sop", &cfg).unwrap();
    let skipped: Vec<_> = reports[0].cases.iter().filter(|c| c.verdict == Verdict::Skip).map(|c| c.input.as_str()).collect();
    assert_eq!(skipped, ["P3"]);
    assert_eq!(reports[0].summary.skip, 1);
    let cfg = SuiteConfig { bweight: 4, ..small() }.with_primes(&[2]);
    let reports = run_suite("multphi", &cfg).unwrap();
    let case = reports[0].cases.iter().find(|c| c.input == "P2, P3").unwrap();
    assert_eq!(case.verdict, Verdict::Skip);
    assert_eq!(case.witness.as_deref(), Some("needs b-weight 5 > 4"));
    let json = serde_json::to_value(&reports[0]).unwrap();
    assert!(json["summary"]["skip"].as_u64().unwrap() > 0);
}

#[test]
fn every_suite_runs_small() {
    let cfg = small().with_primes(&[2]);
    for name in SUITES {
        let reports = run_suite(name, &cfg).unwrap();
        for r in &reports {
            assert!(r.passed(), "{name}: {:?}", r.first_failure());
        }
    }
}
