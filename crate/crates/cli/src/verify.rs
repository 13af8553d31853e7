use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use pmepr_codes::construct::{
    a_code, a_code_log2_size, certify_pmepr, complementary_set, golay_pair, is_path_form, l_code, pair_family, r_code,
    random_path_instance,
};
use pmepr_codes::corr::{is_complementary_set, restriction_sides, Complementarity};
use pmepr_codes::{
    GeneralizedBooleanFunction as Gbf, IndexSplit, Metric, PmeprMeter64, ZqVector, ZrmParams,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::Suite;
use crate::code::{Code, Settings};
use crate::error::{CliError, CliResult};
use crate::output::{fixed, number};

const CHUNK: usize = 4096;

pub struct Report {
    pub suite: &'static str,
    pub pass: bool,
    pub details: Map<String, Value>,
    pub witness: Option<Value>,
}

impl Report {
    fn new(suite: &'static str) -> Self {
        Self {
            suite,
            pass: true,
            details: Map::new(),
            witness: None,
        }
    }

    fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    fn fail(mut self, witness: Value) -> Self {
        self.pass = false;
        self.witness = Some(witness);
        self
    }

    pub fn summary_line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        let details = self
            .details
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        match &self.witness {
            Some(w) => format!("{}: {status} ({details}) witness {w}", self.suite),
            None => format!("{}: {status} ({details})", self.suite),
        }
    }

    pub fn json(&self) -> Value {
        json!({
            "suite": self.suite,
            "status": if self.pass { "PASS" } else { "FAIL" },
            "details": self.details,
            "witness": self.witness,
        })
    }
}

pub struct VerifyArgs<'a> {
    pub settings: &'a Settings,
    pub q: Option<u32>,
    pub trials: u64,
}

impl VerifyArgs<'_> {
    fn m(&self, default: u32) -> u32 {
        self.settings.code.m.unwrap_or(default)
    }

    fn k(&self, default: u32) -> u32 {
        self.settings.code.k.unwrap_or(default)
    }

    fn q(&self, default: u32) -> u32 {
        self.q
            .or(self.settings.code.h.map(|h| 1 << h))
            .unwrap_or(default)
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.settings.seed.unwrap_or(0))
    }

    fn split(&self, m: u32, k: u32) -> CliResult<IndexSplit> {
        Ok(match &self.settings.code.restricted {
            Some(j) => IndexSplit::new(m as usize, j.clone())?,
            None => IndexSplit::top(m as usize, k as usize)?,
        })
    }

    fn zrm(&self) -> CliResult<ZrmParams> {
        let need = |v: Option<u32>, name: &str| v.ok_or_else(|| CliError::invalid(format!("missing --{name}")));
        let c = &self.settings.code;
        Ok(ZrmParams::new(need(c.h, "h")?, c.p.unwrap_or(0), need(c.r, "r")?, need(c.m, "m")?)?)
    }
}

fn check_q(q: u32) -> CliResult<()> {
    if q < 2 || !q.is_power_of_two() {
        return Err(CliError::invalid(format!("q = {q} must be a power of two")));
    }
    Ok(())
}

pub fn run(suite: Suite, args: &VerifyArgs) -> CliResult<Report> {
    match suite {
        Suite::Lemma1 => lemma1(args),
        Suite::Thm2 => thm2(args),
        Suite::Thm3 => thm3(args),
        Suite::Thm4 => thm4(args),
        Suite::Thm5 => thm5(args),
        Suite::Cor1 => cor1(args),
        Suite::Counting => counting(args),
    }
}

fn lemma1(args: &VerifyArgs) -> CliResult<Report> {
    let (m, q) = (args.m(4), args.q(4));
    check_q(q)?;
    let mut report = Report::new("lemma1");
    report.set("m", m);
    report.set("q", q);
    report.set("trials", args.trials);
    let mut rng = args.rng();
    let n = 1i64 << m;
    for _ in 0..args.trials {
        let f = Gbf::new(m as usize, q, (0..n).map(|_| rng.gen_range(0..q)).collect())?;
        let vars: Vec<usize> = (0..m as usize).filter(|_| rng.gen_bool(0.5)).collect();
        let shift = rng.gen_range(-(n - 1)..n);
        let (lhs, rhs) = restriction_sides::<BigInt>(&f, &vars, shift)?;
        if lhs != rhs {
            return Ok(report.fail(json!({
                "coeffs": f.coeffs(),
                "vars": vars,
                "shift": shift,
                "lhs": lhs.coords().iter().map(ToString::to_string).collect::<Vec<_>>(),
                "rhs": rhs.coords().iter().map(ToString::to_string).collect::<Vec<_>>(),
            })));
        }
    }
    Ok(report)
}

fn complementarity_witness(result: Complementarity<BigInt>) -> Option<Value> {
    match result {
        Complementarity::Complementary => None,
        Complementarity::Violation { shift, sum } => Some(json!({
            "shift": shift,
            "sum": sum.coords().iter().map(ToString::to_string).collect::<Vec<_>>(),
        })),
    }
}

fn thm2(args: &VerifyArgs) -> CliResult<Report> {
    let (m, q) = (args.m(3), args.q(2));
    check_q(q)?;
    let half_factorial: f64 = (1..=m).map(f64::from).product::<f64>() / 2.0;
    let log2_family = half_factorial.log2() + f64::from(m + 1) * f64::from(q).log2();
    if log2_family > f64::from(args.settings.cap) {
        return Err(CliError::Cap(format!(
            "pair family has 2^{:.3} members, above the cap 2^{}",
            log2_family, args.settings.cap
        )));
    }
    let family = pair_family(m as usize, q)?;
    let distinct: HashSet<ZqVector> = family.iter().map(Gbf::evaluate).collect();
    let mut report = Report::new("thm2");
    report.set("m", m);
    report.set("q", q);
    report.set("functions", family.len());
    report.set("distinct", distinct.len());
    if distinct.len() != family.len() {
        return Ok(report.fail(json!({"duplicates": family.len() - distinct.len()})));
    }
    let split = IndexSplit::new(m as usize, vec![])?;
    let mut pairs = 0u64;
    for f in &family {
        let form = is_path_form(f, &split, 0)?.ok_or_else(|| CliError::invalid("family member without path form"))?;
        let (a0, a1) = form.endpoints();
        for a in [a0, a1] {
            for c_prime in [0, q / 2] {
                let (x, y) = golay_pair(f, &split, 0, a, c_prime)?;
                if let Some(w) = complementarity_witness(is_complementary_set(&[x, y])?) {
                    return Ok(report.fail(json!({"coeffs": f.coeffs(), "endpoint": a, "offset": c_prime, "violation": w})));
                }
                pairs += 1;
            }
        }
    }
    report.set("pairs", pairs);
    Ok(report)
}

fn thm3(args: &VerifyArgs) -> CliResult<Report> {
    let (m, k, q) = (args.m(4), args.k(1), args.q(4));
    check_q(q)?;
    let split = args.split(m, k)?;
    let mut report = Report::new("thm3");
    report.set("m", m);
    report.set("k", split.k());
    report.set("q", q);
    report.set("J", split.restricted().to_vec());
    report.set("trials", args.trials);
    report.set("set_size", 2 * split.patterns());
    let mut rng = args.rng();
    for _ in 0..args.trials {
        let (f, a_map) = random_path_instance(&mut rng, q, &split)?;
        let set = complementary_set(&f, &split, &a_map)?;
        if let Some(w) = complementarity_witness(is_complementary_set(&set)?) {
            return Ok(report.fail(json!({"coeffs": f.coeffs(), "endpoints": a_map, "violation": w})));
        }
    }
    Ok(report)
}

fn thm4(args: &VerifyArgs) -> CliResult<Report> {
    let params = args.zrm()?;
    let code = params.code();
    let mut report = Report::new("thm4");
    report.set("h", params.h());
    report.set("p", params.p());
    report.set("r", params.r());
    report.set("m", params.m());
    for (key, metric) in [("d_H", Metric::Hamming), ("d_L", Metric::Lee)] {
        let measured = code.min_distance(metric, args.settings.cap)?;
        let expected = params.expected_min_distance(metric);
        report.set(key, measured);
        if measured != Some(expected) {
            return Ok(report.fail(json!({"metric": key, "measured": measured, "expected": expected})));
        }
    }
    Ok(report)
}

fn measure_stream(
    code: &Code,
    settings: &Settings,
    bound: f64,
) -> CliResult<(u64, f64, Option<(BigUint, ZqVector, f64)>)> {
    let meter = PmeprMeter64::new(code.n(), settings.envelope)?;
    let mut stream = code.stream(settings)?;
    let (mut count, mut worst) = (0u64, 0.0f64);
    loop {
        let chunk: Vec<(BigUint, ZqVector)> = stream.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return Ok((count, worst, None));
        }
        let values: Vec<f64> = chunk
            .par_iter()
            .map(|(_, w)| meter.pmepr_word(w).expect("codeword length matches"))
            .collect();
        for ((index, word), r) in chunk.into_iter().zip(values) {
            count += 1;
            worst = worst.max(r);
            if r > bound {
                return Ok((count, worst, Some((index, word, r))));
            }
        }
    }
}

fn thm5(args: &VerifyArgs) -> CliResult<Report> {
    let code = Code::from_settings(args.settings)?;
    let bound = code
        .pmepr_bound()
        .ok_or_else(|| CliError::invalid("thm5 needs --class I, II or III"))?;
    let mut report = Report::new("thm5");
    report.set("size", code.size().to_string());
    report.set("bound", bound);
    report.set("oversample", args.settings.envelope.oversample());
    let (count, worst, violation) = measure_stream(&code, args.settings, bound as f64 + 1e-9)?;
    report.set("words", count);
    report.set("max_pmepr", number(worst));
    if let Some((index, word, r)) = violation {
        return Ok(report.fail(json!({"index": index.to_string(), "word": word.values(), "pmepr": fixed(r)})));
    }
    Ok(report)
}

fn cor1(args: &VerifyArgs) -> CliResult<Report> {
    let (m, k, q) = (args.m(4), args.k(1), args.q(4));
    check_q(q)?;
    let split = args.split(m, k)?;
    let bound = 1u64 << (split.k() + 1);
    let meter = PmeprMeter64::new(1 << m, args.settings.envelope)?;
    let mut report = Report::new("cor1");
    report.set("m", m);
    report.set("k", split.k());
    report.set("q", q);
    report.set("trials", args.trials);
    report.set("bound", bound);
    let mut rng = args.rng();
    let mut worst = 0.0f64;
    for _ in 0..args.trials {
        let (f, _) = random_path_instance(&mut rng, q, &split)?;
        if certify_pmepr(&f, &split)? != Some(bound) {
            return Ok(report.fail(json!({"coeffs": f.coeffs(), "reason": "no certificate"})));
        }
        let r = meter.pmepr_word(&f.evaluate())?;
        worst = worst.max(r);
        if r > bound as f64 + 1e-9 {
            return Ok(report.fail(json!({"coeffs": f.coeffs(), "pmepr": fixed(r)})));
        }
    }
    report.set("max_pmepr", number(worst));
    Ok(report)
}

fn counting(args: &VerifyArgs) -> CliResult<Report> {
    let params = args.zrm()?;
    let (h, p, r, m) = (params.h(), params.p(), params.r(), params.m());
    let cap = args.settings.cap;
    let mut report = Report::new("counting");
    report.set("h", h);
    report.set("p", p);
    report.set("r", r);
    report.set("m", m);
    report.set("zrm_log2", params.log2_size());
    if params.log2_size() <= cap {
        let count = params.code().enumerate(cap)?.collect::<HashSet<_>>().len() as u64;
        report.set("zrm_enumerated", count);
        if count != 1 << params.log2_size() {
            return Ok(report.fail(json!({"code": "zrm", "enumerated": count, "formula_log2": params.log2_size()})));
        }
    }

    let k = args.k(0);
    let split = args.split(m, k)?;
    let formula = a_code_log2_size(h, p, split.k() as u32, r, m);
    let a = a_code(h, p, r, &split)?;
    report.set("k", split.k());
    report.set("a_log2", formula);
    if a.size_log2() != formula {
        return Ok(report.fail(json!({"code": "A", "generators_log2": a.size_log2(), "formula_log2": formula})));
    }
    let l = l_code(h, &split)?;
    if l.size_log2().min(params.log2_size()) <= cap {
        let brute = if l.size_log2() <= params.log2_size() {
            let mut hits = 0u64;
            for w in l.enumerate(cap)? {
                hits += u64::from(params.contains(&w)?);
            }
            hits
        } else {
            params.code().enumerate(cap)?.filter(|w| l.contains(w)).count() as u64
        };
        report.set("a_brute_force", brute);
        if brute != 1 << formula {
            return Ok(report.fail(json!({"code": "A", "intersection": brute, "formula_log2": formula})));
        }
    }

    if split.free().len() >= 2 {
        let reps = r_code(h, &split)?;
        let expected = reps.len();
        let half_factorial: BigUint = (1..=split.free().len() as u64).product::<BigUint>() / 2u32;
        if expected != num_traits::pow(half_factorial, split.patterns()) {
            return Ok(report.fail(json!({"code": "R", "count": expected.to_string()})));
        }
        if expected <= BigUint::one() << cap {
            let distinct = reps.iter().map(|(_, b)| b.evaluate()).collect::<HashSet<_>>().len();
            report.set("r_distinct", distinct);
            if Some(distinct as u64) != expected.to_u64() {
                return Ok(report.fail(json!({"code": "R", "distinct": distinct, "count": expected.to_string()})));
            }
        }
    }
    Ok(report)
}
