//! Property suites. Each suite returns one report per (p, ī) it covers;
//! failures are recorded with witnesses, never thrown.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgl::{AmbientContext, ContextConfig, CosetReps};

mod classes;
mod group;
mod ops;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The case does not fit the configured truncation.
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub input: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    #[serde(skip_serializing_if = "is_zero")]
    pub skip: usize,
}

fn is_zero(n: &usize) -> bool {
    *n == 0
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub prop: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reps: Option<Vec<i64>>,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(prop: &str, p: Option<u32>, reps: Option<&CosetReps>) -> Self {
        Report {
            prop: prop.to_string(),
            p,
            reps: reps.map(|r| r.reps().to_vec()),
            cases: Vec::new(),
            summary: Summary::default(),
        }
    }

    fn push(&mut self, input: String, verdict: Verdict, witness: Option<String>) {
        match verdict {
            Verdict::Pass => self.summary.pass += 1,
            Verdict::Fail => self.summary.fail += 1,
            Verdict::Skip => self.summary.skip += 1,
        }
        self.cases.push(CaseResult { input, verdict, witness });
    }

    /// Records a case: `Ok(None)` passes, `Ok(Some(w))` fails with witness
    /// `w`, and an error fails with the error as witness.
    pub fn case(&mut self, input: impl Into<String>, outcome: Result<Option<String>>) {
        let (verdict, witness) = match outcome {
            Ok(None) => (Verdict::Pass, None),
            Ok(Some(w)) => (Verdict::Fail, Some(w)),
            Err(e) => (Verdict::Fail, Some(e.to_string())),
        };
        self.push(input.into(), verdict, witness);
    }

    /// Records an informational passing case with a note.
    pub fn note(&mut self, input: impl Into<String>, note: impl Into<String>) {
        self.push(input.into(), Verdict::Pass, Some(note.into()));
    }

    /// Records a case that cannot be evaluated at the configured truncation.
    pub fn skip(&mut self, input: impl Into<String>, reason: impl Into<String>) {
        self.push(input.into(), Verdict::Skip, Some(reason.into()));
    }

    /// Runs `f` as a case unless one of the `inputs` (each a product of
    /// grid labels) does not fit the truncation of `cfg`.
    pub(crate) fn guarded(
        &mut self,
        cfg: &SuiteConfig,
        inputs: &[&[&str]],
        input: impl Into<String>,
        f: impl FnOnce() -> Result<Option<String>>,
    ) {
        match inputs.iter().find_map(|factors| cfg.unrepresentable(factors)) {
            Some(reason) => self.skip(input, reason),
            None => self.case(input, f()),
        }
    }

    pub fn total(&self) -> usize {
        self.summary.pass + self.summary.fail + self.summary.skip
    }

    /// No failures; skipped cases are not failures but are reported.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn first_failure(&self) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.verdict == Verdict::Fail)
    }
}

/// `Ok(None)` if `ok`, else the witness.
pub(crate) fn check(ok: bool, witness: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok((!ok).then(witness))
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub deg: i32,
    pub bweight: i32,
    pub tfloor: i32,
    /// Primes to cover; suites with a fixed prime list intersect with it.
    pub primes: Vec<u32>,
    /// Replaces the representative grid (only meaningful with one prime).
    pub reps: Option<Vec<i64>>,
    pub seed: u64,
    /// Largest N for the minors suite; maximal minors are checked up to N - 1.
    pub max_n: usize,
    /// Randomized invariants per prime for thmG.
    pub samples: usize,
    /// Restricts il3 to this r.
    pub r: Option<u32>,
    /// Restricts minors to one block structure, optionally at one width.
    pub blocks: Option<Vec<usize>>,
    pub width: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            deg: 6,
            bweight: 6,
            tfloor: -64,
            primes: vec![2, 3, 5],
            reps: None,
            seed: 0,
            max_n: 6,
            samples: 20,
            r: None,
            blocks: None,
            width: None,
        }
    }
}

impl SuiteConfig {
    /// Why an input built from `factors` (grid labels, multiplied together)
    /// cannot be represented at this truncation, if it cannot.
    pub fn unrepresentable(&self, factors: &[&str]) -> Option<String> {
        let (mut dim, mut zdeg) = (0, 0);
        for f in factors {
            let (d, z) = label_degrees(f);
            dim += d;
            zdeg += z;
        }
        let plus = self.deg.max(self.bweight + 1);
        if dim > self.bweight {
            Some(format!("needs b-weight {dim} > {}", self.bweight))
        } else if zdeg > plus {
            Some(format!("needs z-degree {zdeg} > {plus}"))
        } else {
            None
        }
    }

    pub fn context(&self) -> Result<Arc<AmbientContext>> {
        let cfg = ContextConfig::new(self.deg, self.bweight).with_tfloor(self.tfloor);
        Ok(Arc::new(AmbientContext::new(cfg)?))
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn with_primes(mut self, primes: &[u32]) -> Self {
        self.primes = primes.to_vec();
        self
    }

    /// Primes of `allowed` that are also configured.
    pub(crate) fn primes_in(&self, allowed: &[u32]) -> Vec<u32> {
        self.primes.iter().copied().filter(|p| allowed.contains(p)).collect()
    }

    /// The representative grid for p: least positive residues, the
    /// symmetric choice, and one seeded random choice, without repeats.
    pub fn reps_grid(&self, p: u32) -> Result<Vec<CosetReps>> {
        if let Some(r) = &self.reps {
            return Ok(vec![CosetReps::new(p, r.clone())?]);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ (p as u64) << 32);
        let mut out: Vec<CosetReps> = Vec::new();
        for r in [CosetReps::canonical(p)?, CosetReps::symmetric(p)?, CosetReps::random(p, &mut rng)?] {
            if !out.contains(&r) {
                out.push(r);
            }
        }
        Ok(out)
    }
}

/// (dimension, z-degree) of a product of atoms `Pn`, `H(n,d)`, `z`, `zk`,
/// each optionally raised to a power, e.g. `P1*z^2`.
fn label_degrees(label: &str) -> (i32, i32) {
    let (mut dim, mut zdeg) = (0, 0);
    for factor in label.split('*').map(str::trim) {
        let (atom, e) = match factor.rsplit_once('^') {
            Some((a, e)) if !a.ends_with(')') || a.starts_with("H(") => (a, e.parse().unwrap_or(1)),
            _ => (factor, 1),
        };
        if let Some(n) = atom.strip_prefix('P') {
            dim += e * n.parse::<i32>().unwrap_or(0);
        } else if let Some(inner) = atom.strip_prefix("H(") {
            let n: i32 = inner.split(',').next().and_then(|n| n.trim().parse().ok()).unwrap_or(1);
            dim += e * (n - 1);
        } else if atom.starts_with('z') {
            zdeg += e;
        }
    }
    (dim, zdeg)
}

/// Grid inputs for the operation suites.
pub const GRID_INPUTS: [&str; 8] = ["1", "z", "z^2", "P1", "P2", "P3", "P1*z", "H(3,3)"];

/// Every suite name, in the order `all` runs them.
pub const SUITES: [&str; 18] = [
    "fglaxioms", "minors", "thmG", "xy", "sop", "emb", "tomdieck", "addphi", "multphi", "grad", "uv",
    "rr", "f1", "il1", "il3", "diagram", "soold", "hyper",
];

/// Runs one suite by name.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<Report>> {
    match name {
        "fglaxioms" => classes::fgl_axioms(cfg),
        "minors" => group::minors(cfg),
        "thmG" | "thmg" => group::theorem_g(cfg),
        "xy" => group::xy(cfg),
        "sop" => ops::sop(cfg),
        "emb" => ops::emb(cfg),
        "tomdieck" => ops::tom_dieck(cfg),
        "addphi" => ops::add_phi(cfg),
        "multphi" => ops::mult_phi(cfg),
        "grad" => ops::grad(cfg),
        "uv" => ops::uv(cfg),
        "rr" => ops::rr(cfg),
        "f1" => classes::f1(cfg),
        "il1" => classes::il1(cfg),
        "il3" => classes::il3(cfg),
        "diagram" => ops::diagram(cfg),
        "soold" => ops::soold(cfg),
        "hyper" => classes::hyper(cfg),
        other => Err(Error::InvalidArgument(format!(
            "unknown suite `{other}`; known: {}",
            SUITES.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_json_shape() {
        let mut r = Report::new("addPhi", Some(3), Some(&CosetReps::symmetric(3).unwrap()));
        r.case("P1", Ok(None));
        r.case("P2", Ok(Some("mismatch".into())));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["prop"], "addPhi");
        assert_eq!(v["reps"], serde_json::json!([1, -1]));
        assert_eq!(v["cases"][0], serde_json::json!({"input": "P1", "verdict": "pass"}));
        assert_eq!(v["cases"][1]["witness"], "mismatch");
        assert_eq!(v["summary"], serde_json::json!({"pass": 1, "fail": 1}));
        assert!(!r.passed());
    }

    #[test]
    fn label_degrees_of_grid() {
        assert_eq!(label_degrees("P1*z"), (1, 1));
        assert_eq!(label_degrees("H(3,3)"), (2, 0));
        assert_eq!(label_degrees("z^2"), (0, 2));
        assert_eq!(label_degrees("P2^2*z"), (4, 1));
        assert_eq!(label_degrees("1"), (0, 0));
        let cfg = SuiteConfig { bweight: 4, ..SuiteConfig::default() };
        assert!(cfg.unrepresentable(&["P2", "P3"]).is_some());
        assert!(cfg.unrepresentable(&["P1", "P3"]).is_none());
    }

    #[test]
    fn reps_grid_dedupes() {
        let cfg = SuiteConfig::default();
        let g = cfg.reps_grid(3).unwrap();
        assert!(g.len() >= 2);
        assert_eq!(g[0].reps(), &[1, 2]);
        assert_eq!(g[1].reps(), &[1, -1]);
        assert!(run_suite("nope", &cfg).is_err());
    }
}
