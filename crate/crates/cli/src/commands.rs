use std::sync::Arc;

use cobcalc_core::fgl::{AmbientContext, ChowModel, ContextConfig, CosetReps, LazardElement};
use cobcalc_core::operations::{
    parse_element, parse_series, tom_dieck_sq, OperationDescriptor, SymmetricOperation,
};
use cobcalc_core::quotient::FormalP;
use cobcalc_core::verify::{run_suite, SuiteConfig, Verdict, SUITES};
use cobcalc_core::{Error, GradedSeries};
use serde_json::{json, Value};

use crate::{Format, OpWhich, RunArgs};

pub struct Output {
    pub text: String,
    pub code: u8,
    /// First failing witness, reported on stderr.
    pub failure: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0, failure: None }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PDivisibility { .. } | Error::Integrality(_) | Error::Certificate(_) | Error::NotInvariant(_) => 3,
            Error::InvalidArgument(_) | Error::Series(_) => 2,
        };
        CliError { code, message: e.to_string() }
    }
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError { code: 2, message: msg.into() }
}

type CliResult = Result<Output, CliError>;

const DEFAULT_DEG: i32 = 8;
const DEFAULT_BWEIGHT: i32 = 8;

fn context(run: &RunArgs, primed: bool) -> Result<Arc<AmbientContext>, CliError> {
    let deg = run.deg.unwrap_or(DEFAULT_DEG);
    let bweight = run.bweight.unwrap_or(DEFAULT_BWEIGHT);
    // deg 1 is allowed so that linear terms can be printed on their own.
    if deg < 1 || bweight < 2 {
        return Err(bad(format!("truncations too small: deg {deg}, bweight {bweight}")));
    }
    let mut cfg = ContextConfig::new(deg, bweight).with_tfloor(run.tfloor);
    if primed {
        cfg = cfg.with_primed();
    }
    Ok(Arc::new(AmbientContext::new(cfg)?))
}

fn prime(run: &RunArgs) -> u32 {
    run.p.unwrap_or(2)
}

fn reps(run: &RunArgs) -> Result<CosetReps, CliError> {
    let p = prime(run);
    Ok(match &run.reps {
        Some(r) => CosetReps::new(p, r.clone())?,
        None => CosetReps::canonical(p)?,
    })
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn json_line(v: &Value) -> String {
    line(serde_json::to_string(v).expect("json values serialize"))
}

/// Terms of total degree <= deg in the positive variables t, x, y.
fn cut(ctx: &AmbientContext, f: &GradedSeries) -> GradedSeries {
    let ring = ctx.ring();
    let idx: Vec<usize> = ["t", "x", "y"].iter().filter_map(|v| ring.index_of(v)).collect();
    f.filter_terms(|e| idx.iter().map(|&i| e[i]).sum::<i32>() <= ctx.deg())
}

pub fn fgl(run: &RunArgs, what: &str, n: i64, i: i32, j: i32) -> CliResult {
    let ctx = context(run, false)?;
    let series = match what {
        "F" => cut(&ctx, ctx.universal_fgl()),
        "[n]" => cut(&ctx, &ctx.formal_int_mul(n)?),
        "a_ij" => ctx.fgl_coefficient(i, j)?,
        "omega" => cut(&ctx, &ctx.invariant_form()?),
        "inverse" => cut(&ctx, &ctx.formal_inverse(&ctx.t())?),
        other => return Err(bad(format!("unknown --what `{other}`"))),
    };
    Ok(Output::ok(match run.format {
        Format::Text => line(&series),
        Format::Json => json_line(&series.to_json_value()),
    }))
}

fn nu_index(p: u32, dim: i32) -> Option<u32> {
    (1..=16u32).find(|&r| (p as i64).checked_pow(r).is_some_and(|q| q - 1 == dim as i64))
}

pub fn class(run: &RunArgs, n: i32, d: Option<i32>) -> CliResult {
    let ctx = context(run, false)?;
    let p = prime(run);
    let class: LazardElement = match d {
        None => ctx.pn_class(n)?,
        Some(d) => ctx.hypersurface_class(n, d)?,
    };
    let dim = class.dimension();
    let s = if dim > 0 { Some(class.s_number()?) } else { None };
    let numbers = class.char_numbers();
    let in_ip = class.in_ip(p);
    let nu = match nu_index(p, dim) {
        Some(r) => Some((r, class.is_nu_r(p, r)?)),
        None => None,
    };
    let equals_pn = match d {
        Some(_) if dim >= 0 => Some(*class.ambient() == *ctx.pn_class(dim)?.ambient()),
        _ => None,
    };
    if run.format == Format::Json {
        let mut v = class.to_json_value();
        v["s_number"] = s.as_ref().map_or(Value::Null, |s| json!(s.to_string()));
        v["char_numbers"] = numbers.iter().map(|(m, c)| json!({"monomial": m, "value": c.to_string()})).collect();
        v["in_ip"] = json!({"p": p, "value": in_ip});
        if let Some((r, b)) = nu {
            v["nu"] = json!({"p": p, "r": r, "value": b});
        }
        if let Some(e) = equals_pn {
            v["equals_pn"] = json!(e);
        }
        return Ok(Output::ok(json_line(&v)));
    }
    let mut out = line(class.ambient());
    out += &line(format!("dimension: {dim}"));
    out += &line(match &s {
        Some(s) => format!("s: {s}"),
        None => "s: undefined".to_string(),
    });
    for (m, c) in &numbers {
        out += &line(format!("chi[{m}] = {c}"));
    }
    out += &line(format!("I({p}): {in_ip}"));
    if let Some((r, b)) = nu {
        out += &line(format!("nu_{r}(p={p}): {b}"));
    }
    if let Some(e) = equals_pn {
        out += &line(format!("equals [P^{dim}]: {e}"));
    }
    Ok(Output::ok(out))
}

fn read_input(ctx: &Arc<AmbientContext>, src: &str) -> Result<GradedSeries, CliError> {
    let path = std::path::Path::new(src);
    if src.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| bad(format!("{src}: {e}")))?;
        let j = serde_json::from_str(&text).map_err(|e| bad(format!("{src}: {e}")))?;
        return GradedSeries::from_json_in(ctx.ring(), &j).map_err(|e| bad(e.to_string()));
    }
    Ok(parse_element(ctx, src)?)
}

pub fn op(run: &RunArgs, which: OpWhich, input: &str, q: &str) -> CliResult {
    let ctx = context(run, which == OpWhich::Ln)?;
    let e = read_input(&ctx, input)?;
    let mut extra = Vec::new();
    let result = match which {
        OpWhich::St => OperationDescriptor::quillen_steenrod(&ctx, &reps(run)?)?.apply(&e)?,
        OpWhich::Sq => {
            let p = prime(run);
            let fp = FormalP::new(&ctx, p)?;
            let sq = OperationDescriptor::tom_dieck(&ctx, p)?;
            tom_dieck_sq(&sq, &fp, &e)?.representative().clone()
        }
        OpWhich::Ln => OperationDescriptor::landweber_novikov(&ctx)?.apply(&e)?,
        OpWhich::Phi => {
            let r = SymmetricOperation::new(&ctx, &reps(run)?)?.phi(&e)?;
            let k = r.remainder.min_exp("t").map_err(Error::from)?;
            extra.push((
                "remainder_min_t",
                k.map_or(Value::Null, |k| json!(k)),
                match k {
                    Some(k) => format!("certificate: e^p - St(e) - [p]Φ has t-degrees >= {k}"),
                    None => "certificate: e^p - St(e) = [p]Φ exactly".to_string(),
                },
            ));
            r.phi
        }
        OpWhich::Slice => {
            let op = SymmetricOperation::new(&ctx, &reps(run)?)?;
            let qs = parse_series(&ctx, q)?;
            op.slice(&op.phi(&e)?.phi, &qs)?
        }
    };
    if run.format == Format::Json {
        let mut v = json!({
            "op": format!("{which:?}").to_lowercase(),
            "input": input,
            "result": result.to_json_value(),
            "text": result.to_string(),
        });
        for (k, val, _) in extra {
            v[k] = val;
        }
        return Ok(Output::ok(json_line(&v)));
    }
    let mut out = line(&result);
    for (_, _, text) in extra {
        out += &line(text);
    }
    Ok(Output::ok(out))
}

pub fn eta(run: &RunArgs, u: &str) -> CliResult {
    let model = ChowModel::parse(u)?;
    let reps = reps(run)?;
    let p = reps.p();
    let eta = model.eta(&reps)?;
    let bar = eta.residue_mod(&p.into());
    if run.format == Format::Json {
        return Ok(Output::ok(json_line(&json!({
            "U": model.label(),
            "p": p,
            "reps": reps.reps(),
            "eta": eta.to_string(),
            "eta_mod_p": bar.map(|b| b.to_string()),
        }))));
    }
    let mut out = line(&eta);
    if let Some(b) = bar {
        out += &line(format!("mod {p}: {b}"));
    }
    Ok(Output::ok(out))
}

pub struct VerifyOpts {
    pub max_n: Option<usize>,
    pub r: Option<u32>,
    pub samples: Option<usize>,
    pub blocks: Option<Vec<usize>>,
    pub width: Option<usize>,
}

pub fn verify(run: &RunArgs, suite: &str, opts: VerifyOpts) -> CliResult {
    let mut cfg = SuiteConfig::default();
    if let Some(d) = run.deg {
        cfg.deg = d;
    }
    if let Some(w) = run.bweight {
        cfg.bweight = w;
    }
    if cfg.deg < 2 || cfg.bweight < 2 {
        return Err(bad("verify needs deg >= 2 and bweight >= 2"));
    }
    cfg.tfloor = run.tfloor;
    cfg.seed = run.seed;
    if let Some(p) = run.p {
        cfg.primes = vec![p];
    }
    if let Some(r) = &run.reps {
        if run.p.is_none() {
            return Err(bad("--reps needs --p"));
        }
        cfg.reps = Some(r.clone());
    }
    cfg.max_n = opts.max_n.unwrap_or(cfg.max_n);
    cfg.samples = opts.samples.unwrap_or(cfg.samples);
    cfg.r = opts.r;
    cfg.blocks = opts.blocks;
    cfg.width = opts.width;
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    let mut text = String::new();
    let mut failure = None;
    for name in names {
        for rep in run_suite(name, &cfg)? {
            if failure.is_none() {
                if let Some(c) = rep.first_failure() {
                    failure = Some(format!("{} {}: {}", rep.prop, c.input, c.witness.as_deref().unwrap_or("")));
                }
            }
            if run.format == Format::Json {
                text += &json_line(&serde_json::to_value(&rep).expect("reports serialize"));
                continue;
            }
            let verdict = if rep.passed() { "pass" } else { "FAIL" };
            let mut head = format!("{verdict} {}", rep.prop);
            if let Some(p) = rep.p {
                head += &format!(" p={p}");
            }
            if let Some(r) = &rep.reps {
                head += &format!(" reps={r:?}");
            }
            let skipped = match rep.summary.skip {
                0 => String::new(),
                k => format!(" ({k} skipped)"),
            };
            text += &line(format!("{head} {}/{}{skipped}", rep.summary.pass, rep.total()));
            for c in &rep.cases {
                if let Some(w) = &c.witness {
                    let tag = match c.verdict {
                        Verdict::Pass => "note",
                        Verdict::Fail => "fail",
                        Verdict::Skip => "skip",
                    };
                    text += &line(format!("  {tag} {}: {w}", c.input));
                }
            }
        }
    }
    let code = if failure.is_some() { 1 } else { 0 };
    Ok(Output { text, code, failure })
}
