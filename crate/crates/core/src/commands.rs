//! Command dispatch and report assembly for the command-line tool.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::complex::{FreeComplex, RhoSpec};
use crate::corpus;
use crate::error::{Error, Result};
use crate::field::ExtField;
use crate::fox::{h1_presentation, presentation_complex, GroupPresentation};
use crate::genericity::{check_genericity, find_generic_rho};
use crate::homology::homology_field;
use crate::ideal::{strong_groebner, IdealGenerators};
use crate::io::{format_complex, parse_input, poly_strings, Input};
use crate::jumping::{all_characters, crosscheck_with_ideal, intersection_observables, jumping_ideal, sample_characters};
use crate::pipeline::{fg_pipeline, module_fg_over_z, novikov_betti, torsion_check, FgOptions, DEFAULT_BUDGET};
use crate::random::{random_complex, RandomSpec};
use crate::ring::{CoeffRing, RingSpec};

pub const SCHEMA: &str = "alexmod-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INCONSISTENT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Validate,
    JumpingIdeals,
    JumpLocusSample,
    Genericity,
    FindRho,
    Specialize,
    Homology,
    Alexander,
    Fg,
    Novikov,
    Crosscheck,
}

const COMMANDS: &[(&str, Command)] = &[
    ("validate", Command::Validate),
    ("jumping-ideals", Command::JumpingIdeals),
    ("jump-locus-sample", Command::JumpLocusSample),
    ("genericity", Command::Genericity),
    ("find-rho", Command::FindRho),
    ("specialize", Command::Specialize),
    ("homology", Command::Homology),
    ("alexander", Command::Alexander),
    ("fg", Command::Fg),
    ("novikov", Command::Novikov),
    ("crosscheck", Command::Crosscheck),
];

impl FromStr for Command {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        COMMANDS.iter().find(|(n, _)| *n == s).map(|(_, c)| *c).ok_or_else(|| {
            let names: Vec<&str> = COMMANDS.iter().map(|(n, _)| *n).collect();
            Error::Usage(format!("unknown command {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = COMMANDS.iter().find(|(_, c)| c == self).map(|(n, _)| *n).unwrap_or("?");
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RhoChoice {
    Explicit(Vec<i64>),
    /// Seeded search in `[-B, B]^r`.
    FindGeneric(i64),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    /// A file path, or `builtin:<name>` for a shipped example.
    pub input: Option<String>,
    pub window: Option<(i64, i64)>,
    pub rho: Option<RhoChoice>,
    pub primes: Vec<u64>,
    pub seed: u64,
    pub budget: usize,
    /// Characteristic of the sampling fields.
    pub char_prime: Option<u64>,
    pub ext_degrees: Vec<u32>,
    /// Number of characters (jump-locus-sample) or random complexes (crosscheck); 0 means all characters.
    pub count: usize,
    pub dual: bool,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            input: None,
            window: None,
            rho: None,
            primes: vec![2, 3, 5, 7],
            seed: 0,
            budget: DEFAULT_BUDGET,
            char_prime: None,
            ext_degrees: vec![1],
            count: 0,
            dual: false,
            threads: None,
        }
    }

    pub fn check(&self) -> Result<()> {
        if let Some((a, b)) = self.window {
            if a > b {
                return Err(Error::Usage(format!("window {a}:{b} is not ordered")));
            }
        }
        if let Some(&p) = self.primes.iter().find(|&&p| !crate::ring::is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        if let Some(p) = self.char_prime {
            if !crate::ring::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        if let Some(RhoChoice::FindGeneric(b)) = self.rho {
            if b < 1 {
                return Err(Error::Usage("box bound must be at least 1".into()));
            }
        }
        if self.ext_degrees.contains(&0) {
            return Err(Error::Usage("extension degrees must be positive".into()));
        }
        if self.budget == 0 {
            return Err(Error::Usage("budget must be positive".into()));
        }
        Ok(())
    }

    fn to_json(&self) -> Value {
        json!({
            "input": self.input,
            "window": self.window.map(|(a, b)| [a, b]),
            "rho": match &self.rho {
                None => Value::Null,
                Some(RhoChoice::Explicit(a)) => json!({ "explicit": a }),
                Some(RhoChoice::FindGeneric(b)) => json!({ "find_generic": b }),
            },
            "primes": self.primes,
            "budget": self.budget,
            "char_prime": self.char_prime,
            "ext_degrees": self.ext_degrees,
            "count": self.count,
            "dual": self.dual,
        })
    }
}

pub struct Outcome {
    pub exit_code: i32,
    /// Pretty JSON report, newline terminated.
    pub report: String,
}

struct Loaded {
    source: String,
    digest: String,
    input: Input,
}

fn load(spec: &str) -> Result<Loaded> {
    let text = match spec.strip_prefix("builtin:") {
        Some(name) => corpus::source(name)
            .ok_or_else(|| {
                let names: Vec<&str> = corpus::CORPUS.iter().map(|(n, _)| *n).collect();
                Error::Usage(format!("no built-in example {name:?}; available: {}", names.join(", ")))
            })?
            .to_string(),
        None => std::fs::read_to_string(spec).map_err(|e| Error::Usage(format!("cannot read {spec}: {e}")))?,
    };
    let digest = hex::encode(Sha256::digest(text.as_bytes()));
    Ok(Loaded { source: spec.to_string(), digest, input: parse_input(&text)? })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::Usage(_) => "usage",
        Error::Inconsistent(_) => "inconsistent",
        Error::NonGenericRho(_) => "non-generic-rho",
        Error::GenericSearchExhausted(_) => "generic-search-exhausted",
        Error::NotPrime(_) => "not-prime",
        Error::Shape(_) | Error::DegreeOutOfRange { .. } => "shape",
        Error::RhoLength { .. } | Error::ZeroRho => "rho",
        Error::NuNotBalanced { .. } | Error::GeneratorIndex { .. } => "presentation",
        _ => "invalid-input",
    }
}

fn error_json(e: &Error) -> Value {
    let mut v = json!({ "kind": error_kind(e), "message": e.to_string() });
    if let Error::Parse { line, column, .. } = e {
        v["line"] = json!(line);
        v["column"] = json!(column);
    }
    v
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Inconsistent(_) => EXIT_INCONSISTENT,
        _ => EXIT_USAGE,
    }
}

/// Runs one command. The report is deterministic in the configuration.
pub fn run(config: &RunConfig) -> Outcome {
    let mut report = json!({
        "schema": SCHEMA,
        "tool": "alexmod",
        "version": env!("CARGO_PKG_VERSION"),
        "command": config.command.to_string(),
        "seed": config.seed,
        "config": config.to_json(),
    });
    let result = match config.threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build() {
            Ok(pool) => pool.install(|| execute(config, &mut report)),
            Err(e) => Err(Error::Usage(format!("cannot start thread pool: {e}"))),
        },
        None => execute(config, &mut report),
    };
    let exit_code = match result {
        Ok(code) => code,
        Err(e) => {
            report["error"] = error_json(&e);
            exit_code_for(&e)
        }
    };
    report["exit_code"] = json!(exit_code);
    Outcome { exit_code, report: serde_json::to_string_pretty(&report).expect("serializable") + "\n" }
}

fn as_complex(input: &Input) -> FreeComplex {
    match input {
        Input::Complex(c) => c.clone(),
        Input::Presentation(p) => presentation_complex(p),
    }
}

fn require_valid(c: &FreeComplex) -> Result<()> {
    let v = c.validate();
    match v.violation {
        None => Ok(()),
        Some(w) => Err(Error::Usage(format!(
            "input is not a complex: d_{} d_{} has nonzero entry {} at ({}, {})",
            w.degree,
            w.degree + 1,
            w.value,
            w.row,
            w.col
        ))),
    }
}

fn window_or(config: &RunConfig, c: &FreeComplex, default: (i64, i64)) -> Result<(i64, i64)> {
    let w = config.window.unwrap_or(default);
    c.check_degree(w.0)?;
    c.check_degree(w.1)?;
    Ok(w)
}

/// Resolves ρ: explicit, searched against `ideal`, or `(1)` in one variable.
fn resolve_rho(config: &RunConfig, ideal: &IdealGenerators, report: &mut Value) -> Result<RhoSpec> {
    let r = ideal.ring().nvars;
    let rho = match &config.rho {
        Some(RhoChoice::Explicit(a)) => RhoSpec::new(a.clone())?,
        Some(RhoChoice::FindGeneric(b)) => {
            let s = find_generic_rho(ideal, *b, config.seed)?;
            report["rho_search"] = to_value(&s);
            s.rho
        }
        None if r == 1 => RhoSpec::new(vec![1])?,
        None => return Err(Error::Usage(format!("{r} variables: pass --rho or --find-generic"))),
    };
    rho.check_len(r)?;
    if let Some(w) = rho.warning() {
        report["rho_warning"] = json!(w);
    }
    report["rho"] = to_value(&rho);
    Ok(rho)
}

fn execute(config: &RunConfig, report: &mut Value) -> Result<i32> {
    config.check()?;
    if config.command == Command::Crosscheck && config.input.is_none() {
        return crosscheck_random(config, report);
    }
    let spec = config.input.as_deref().ok_or_else(|| Error::Usage("missing input".into()))?;
    let loaded = load(spec)?;
    report["input"] = json!({
        "source": loaded.source,
        "sha256": loaded.digest,
        "kind": match loaded.input { Input::Complex(_) => "complex", Input::Presentation(_) => "presentation" },
    });
    let c = as_complex(&loaded.input);
    let ring = c.ring();
    report["ring"] = json!(ring.to_string());
    if config.command == Command::Validate {
        let v = c.validate();
        report["result"] = json!({
            "ok": v.ok,
            "violation": to_value(&v.violation),
            "degrees": [c.lo(), c.hi()],
            "ranks": c.ranks(),
            "euler_characteristic": c.euler_characteristic(),
        });
        return Ok(if v.ok { EXIT_OK } else { EXIT_USAGE });
    }
    require_valid(&c)?;
    let full = (c.lo(), c.hi());
    let result = match config.command {
        Command::Validate => unreachable!(),
        Command::JumpingIdeals => {
            let w = window_or(config, &c, full)?;
            let mut out = Vec::new();
            for i in w.0..=w.1 {
                let j = jumping_ideal(&c, i)?;
                out.push(json!({ "degree": i, "generators": poly_strings(j.gens()) }));
            }
            let obs = intersection_observables(&c, w, config.budget)?;
            json!({ "window": [w.0, w.1], "jumping_ideals": out, "observables": to_value(&obs) })
        }
        Command::JumpLocusSample | Command::Crosscheck => jump_locus(config, &c, full)?,
        Command::Genericity => {
            let w = window_or(config, &c, full)?;
            let obs = intersection_observables(&c, w, config.budget)?;
            let rho = resolve_rho(config, &obs.product, report)?;
            let g = check_genericity(&obs.product, &rho)?;
            json!({ "window": [w.0, w.1], "ideal": poly_strings(obs.product.gens()), "truncated": obs.truncated, "generic": g.passes(), "report": to_value(&g) })
        }
        Command::FindRho => {
            let w = window_or(config, &c, full)?;
            let obs = intersection_observables(&c, w, config.budget)?;
            let b = match config.rho {
                Some(RhoChoice::FindGeneric(b)) => b,
                _ => 10,
            };
            let s = find_generic_rho(&obs.product, b, config.seed)?;
            json!({ "window": [w.0, w.1], "ideal": poly_strings(obs.product.gens()), "truncated": obs.truncated, "search": to_value(&s) })
        }
        Command::Specialize => {
            let ideal = intersection_observables(&c, full, config.budget)?.product;
            let rho = resolve_rho(config, &ideal, report)?;
            let s = c.specialize(&rho)?;
            let text = format_complex(&s);
            json!({ "complex": serde_json::from_str::<Value>(&text).expect("own output") })
        }
        Command::Homology => homology(config, &c, report)?,
        Command::Alexander => alexander(config, &loaded.input, &c, report)?,
        Command::Fg => {
            let w = window_or(config, &c, (c.lo(), (c.hi() - 1).max(c.lo())))?;
            let obs = intersection_observables(&c, w, config.budget)?;
            let ideal = if config.dual { obs.product.involute() } else { obs.product };
            let rho = resolve_rho(config, &ideal, report)?;
            let opts = FgOptions { primes: config.primes.clone(), budget: config.budget, dual: config.dual };
            let r = fg_pipeline(&c, w, &rho, &opts)?;
            let cx = if config.dual { c.dualize() } else { c.clone() };
            let tw = if config.dual { (c.lo() + c.hi() - w.1, c.lo() + c.hi() - w.0) } else { w };
            let t = torsion_check(&cx, &rho, tw, &config.primes)?;
            json!({ "verdict": to_value(&r.verdict), "report": to_value(&r), "torsion_check": to_value(&t) })
        }
        Command::Novikov => {
            let ideal = intersection_observables(&c, full, config.budget)?.product;
            let rho = resolve_rho(config, &ideal, report)?;
            let n = novikov_betti(&c, &rho, &config.primes)?;
            to_value(&n)
        }
    };
    report["result"] = result;
    Ok(EXIT_OK)
}

fn homology(config: &RunConfig, c: &FreeComplex, report: &mut Value) -> Result<Value> {
    let ring = c.ring();
    let s = if ring.nvars == 1 {
        c.clone()
    } else {
        let ideal = intersection_observables(c, (c.lo(), c.hi()), config.budget)?.product;
        let rho = resolve_rho(config, &ideal, report)?;
        c.specialize(&rho)?
    };
    let fields: Vec<CoeffRing> = match ring.coeffs {
        CoeffRing::Integers => std::iter::once(CoeffRing::Rationals).chain(config.primes.iter().map(|&p| CoeffRing::PrimeField(p))).collect(),
        k => vec![k],
    };
    let mut out = Vec::new();
    for k in fields {
        let h = homology_field(&s.base_change(k)?)?;
        out.push(json!({ "field": k.to_string(), "homology": to_value(&h) }));
    }
    Ok(json!({ "fields": out }))
}

fn alexander(config: &RunConfig, input: &Input, c: &FreeComplex, report: &mut Value) -> Result<Value> {
    let ring = c.ring();
    let mut out = serde_json::Map::new();
    let rho = if ring.nvars == 1 && config.rho.is_none() {
        RhoSpec::new(vec![1])?
    } else {
        let ideal = intersection_observables(c, (c.lo(), c.hi()), config.budget)?.product;
        resolve_rho(config, &ideal, report)?
    };
    if let Input::Presentation(p) = input {
        out.insert("h1".into(), h1_report(p, &rho)?);
    }
    let s = c.specialize(&rho)?;
    if ring.coeffs == CoeffRing::Integers {
        let mut fields = Vec::new();
        for k in std::iter::once(CoeffRing::Rationals).chain(config.primes.iter().map(|&p| CoeffRing::PrimeField(p))) {
            let h = homology_field(&s.base_change(k)?)?;
            fields.push(json!({ "field": k.to_string(), "homology": to_value(&h) }));
        }
        out.insert("invariant_factors".into(), Value::Array(fields));
    } else {
        out.insert("invariant_factors".into(), json!([{ "field": ring.coeffs.to_string(), "homology": to_value(&homology_field(&s)?) }]));
    }
    Ok(Value::Object(out))
}

fn h1_report(p: &GroupPresentation, rho: &RhoSpec) -> Result<Value> {
    let h = match h1_presentation(p, rho) {
        Ok(h) => h,
        Err(Error::NoShortcut(m)) => return Ok(json!({ "available": false, "reason": m })),
        Err(e) => return Err(e),
    };
    let rows: Vec<Vec<String>> = (0..h.matrix.rows()).map(|i| poly_strings(h.matrix.row(i))).collect();
    let basis = strong_groebner(&h.fitting_ideal)?;
    let m = module_fg_over_z(&h.matrix)?;
    Ok(json!({
        "available": true,
        "deleted_generator": p.names()[h.deleted_generator],
        "presentation_matrix": rows,
        "fitting_ideal": poly_strings(h.fitting_ideal.gens()),
        "fitting_ideal_strong_basis": poly_strings(basis.gens()),
        "fg_over_z": to_value(&m),
    }))
}

fn character_fields(config: &RunConfig, ring: RingSpec) -> Result<Vec<Arc<ExtField>>> {
    let p = match (ring.coeffs, config.char_prime) {
        (CoeffRing::PrimeField(q), Some(p)) if p != q => return Err(Error::CharacteristicMismatch { ring: q, field: p }),
        (CoeffRing::PrimeField(q), _) => q,
        (CoeffRing::Rationals, _) => return Err(Error::CharacteristicMismatch { ring: 0, field: config.char_prime.unwrap_or(0) }),
        (CoeffRing::Integers, p) => p.unwrap_or(5),
    };
    config.ext_degrees.iter().map(|&e| Ok(Arc::new(ExtField::new(p, e)?))).collect()
}

/// Jumping-ideal membership against homology at characters; hard failure on disagreement.
fn jump_locus(config: &RunConfig, c: &FreeComplex, full: (i64, i64)) -> Result<Value> {
    let w = window_or(config, c, full)?;
    let fields = character_fields(config, c.ring())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    let (mut checked, mut agreed) = (0usize, 0usize);
    for f in &fields {
        let sample = if config.count == 0 {
            all_characters(f, c.ring().nvars)
        } else {
            sample_characters(&mut rng, f, c.ring().nvars, config.count)
        };
        for i in w.0..=w.1 {
            let j = jumping_ideal(c, i)?;
            let s = crosscheck_with_ideal(c, i, &j, &sample)?;
            checked += s.entries.len();
            agreed += s.entries.len();
            out.push(json!({
                "field_order": f.order(),
                "degree": i,
                "jumping_ideal": poly_strings(j.gens()),
                "characters": s.entries.len(),
                "in_locus": s.in_locus_count(),
                "entries": if config.command == Command::JumpLocusSample { to_value(&s.entries) } else { Value::Null },
            }));
        }
    }
    Ok(json!({ "window": [w.0, w.1], "samples": out, "checked": checked, "agreement": agreed as f64 / checked.max(1) as f64 }))
}

/// Crosscheck over seeded random complexes over `F_p[t1^±, t2^±]`, ranks at most 3.
fn crosscheck_random(config: &RunConfig, report: &mut Value) -> Result<i32> {
    let p = config.char_prime.unwrap_or(5);
    let ring = RingSpec::new(CoeffRing::prime_field(p)?, 2)?;
    let count = if config.count == 0 { 100 } else { config.count };
    let degrees = if config.ext_degrees == [1] { vec![2] } else { config.ext_degrees.clone() };
    let fields = degrees.iter().map(|&e| Ok(Arc::new(ExtField::new(p, e)?))).collect::<Result<Vec<_>>>()?;
    let chars: Vec<_> = fields.iter().map(|f| all_characters(f, 2)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let spec = RandomSpec::new(ring);
    let mut triples = 0usize;
    let mut in_locus = 0usize;
    let mut per_complex = Vec::new();
    for n in 0..count {
        let c = random_complex(&mut rng, &spec)?;
        let mut ideals = BTreeMap::new();
        for i in c.degrees() {
            let j = jumping_ideal(&c, i)?;
            for sample in &chars {
                let s = crosscheck_with_ideal(&c, i, &j, sample)
                    .map_err(|e| Error::Inconsistent(format!("random complex {n}: {e}\n{}", format_complex(&c))))?;
                triples += s.entries.len();
                in_locus += s.in_locus_count();
            }
            ideals.insert(i.to_string(), poly_strings(j.gens()));
        }
        per_complex.push(json!({ "index": n, "ranks": c.ranks(), "jumping_ideals": ideals }));
    }
    report["result"] = json!({
        "ring": ring.to_string(),
        "field_orders": fields.iter().map(|f| f.order()).collect::<Vec<_>>(),
        "complexes": count,
        "triples": triples,
        "in_locus": in_locus,
        "agreement": 1.0,
        "per_complex": per_complex,
    });
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(cmd: Command, input: &str) -> RunConfig {
        let mut c = RunConfig::new(cmd);
        c.input = Some(input.into());
        c
    }

    fn result(o: &Outcome) -> Value {
        serde_json::from_str(&o.report).unwrap()
    }

    #[test]
    fn validate_torus() {
        let o = run(&cfg(Command::Validate, "builtin:torus"));
        assert_eq!(o.exit_code, 0);
        assert_eq!(result(&o)["result"]["ok"], json!(true));
    }

    #[test]
    fn fg_knot_5_2() {
        let o = run(&cfg(Command::Fg, "builtin:knot_5_2"));
        assert_eq!(o.exit_code, 0, "{}", o.report);
        assert_eq!(result(&o)["result"]["verdict"], json!("NOT_FG"));
    }

    #[test]
    fn alexander_knot_5_2() {
        let o = run(&cfg(Command::Alexander, "builtin:knot_5_2"));
        assert_eq!(o.exit_code, 0, "{}", o.report);
        let r = result(&o);
        assert_eq!(r["result"]["h1"]["fitting_ideal_strong_basis"], json!(["2*t^2 - 3*t + 2"]));
    }

    #[test]
    fn deterministic() {
        let mut c = cfg(Command::FindRho, "builtin:torus");
        c.seed = 9;
        assert_eq!(run(&c).report, run(&c).report);
    }

    #[test]
    fn usage_errors() {
        let o = run(&cfg(Command::Fg, "builtin:nope"));
        assert_eq!(o.exit_code, 1);
        let mut c = cfg(Command::Fg, "builtin:torus");
        c.window = Some((1, 0));
        assert_eq!(run(&c).exit_code, 1);
        assert!("frobnicate".parse::<Command>().is_err());
    }

    #[test]
    fn small_crosscheck() {
        let mut c = RunConfig::new(Command::Crosscheck);
        c.count = 3;
        c.seed = 42;
        let o = run(&c);
        assert_eq!(o.exit_code, 0, "{}", o.report);
        assert_eq!(result(&o)["result"]["agreement"], json!(1.0));
    }
}
