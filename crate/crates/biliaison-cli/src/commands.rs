//! One function per subcommand. Each returns an [`Outcome`]: the report, a
//! short human summary and, for commands that produce a curve or a chain, the
//! emitted file contents.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use biliaison::curve::{validate_curve, CurveFamily};
use biliaison::gradedmod::{GradedModule, TestModule};
use biliaison::groebner::Ideal;
use biliaison::liaison::{connect_by_biliaisons, link, replay, trivial_biliaison, BiliaisonStep};
use biliaison::polyring::Poly;
use biliaison::raoclass::{
    assemble_e_p_f_n, biliaison_equivalent, e_type_resolution, liaison_parity, n_type_resolution, Equivalence, Parity,
};
use biliaison::Error;
use serde_json::{json, Value};

use crate::corpus;
use crate::curvefile::{parse_ring, render_ring, CurveFile};
use crate::report::{ChainFile, InputDigest, Report, StepRecord, CHAIN_SCHEMA, REPORT_SCHEMA};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{0}")]
    Io(String),
    #[error("`{0}` is neither a readable file nor a corpus name")]
    UnknownInput(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::Parse(_)) => 3,
            CliError::Lib(Error::Undecided(_)) => 4,
            _ => 2,
        }
    }

    /// Variant name without payload, for reports.
    pub fn kind(&self) -> String {
        match self {
            CliError::Lib(e) => {
                let d = format!("{e:?}");
                d.split(['(', '{', ' ']).next().unwrap_or_default().to_string()
            }
            CliError::Io(_) => "Io".into(),
            CliError::UnknownInput(_) => "UnknownInput".into(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug)]
pub struct Opts {
    pub seed: u64,
    pub trials: usize,
    pub degree_margin: i32,
    pub dual_numbers: bool,
    pub timings: bool,
}

impl Default for Opts {
    fn default() -> Self {
        Opts { seed: 1, trials: 32, degree_margin: 2, dual_numbers: false, timings: false }
    }
}

#[derive(Clone, Debug)]
pub struct Input {
    pub name: String,
    pub file: CurveFile,
}

impl Input {
    fn digest(&self) -> InputDigest {
        InputDigest::of(&self.name, &self.file.render())
    }

    fn poly(&self, s: &str) -> CliResult<Poly> {
        Ok(Poly::parse(self.file.ring, s)?)
    }

    fn curve(&self) -> CliResult<CurveFamily> {
        Ok(validate_curve(&self.file.ideal()?)?)
    }
}

/// Reads a curve from a file path or, failing that, from the corpus.
pub fn load_input(arg: &str, opts: &Opts) -> CliResult<Input> {
    let file = if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| CliError::Io(format!("{arg}: {e}")))?;
        CurveFile::parse(&text)?
    } else {
        corpus::get(arg).ok_or_else(|| CliError::UnknownInput(arg.to_string()))?
    };
    let file = if opts.dual_numbers && !file.ring.is_dual() { file.to_dual() } else { file };
    Ok(Input { name: arg.to_string(), file })
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub text: String,
    pub emitted: Option<String>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_code
    }
}

struct Builder<'a> {
    command: Vec<String>,
    inputs: Vec<InputDigest>,
    opts: &'a Opts,
    start: Instant,
}

impl<'a> Builder<'a> {
    fn new(command: &[&str], inputs: &[&Input], opts: &'a Opts) -> Self {
        Builder {
            command: command.iter().map(|s| s.to_string()).collect(),
            inputs: inputs.iter().map(|i| i.digest()).collect(),
            opts,
            start: Instant::now(),
        }
    }

    fn finish(self, status: &str, exit_code: i32, result: Value, text: String, emitted: Option<String>) -> Outcome {
        let timings_ms =
            self.opts.timings.then(|| BTreeMap::from([("total".to_string(), self.start.elapsed().as_millis() as u64)]));
        let report = Report {
            schema: REPORT_SCHEMA.into(),
            command: self.command,
            inputs: self.inputs,
            seed: self.opts.seed,
            trials: self.opts.trials,
            status: status.into(),
            exit_code,
            result,
            timings_ms,
        };
        Outcome { report, text, emitted }
    }

    fn ok(self, result: Value, text: String) -> Outcome {
        self.finish("ok", 0, result, text, None)
    }

    fn fail(self, err: CliError) -> Outcome {
        let code = err.exit_code();
        let status = if code == 4 { "undecided" } else { "error" };
        let result = json!({ "error": err.kind(), "message": err.to_string() });
        let text = format!("error ({}): {}", err.kind(), err);
        self.finish(status, code, result, text, None)
    }
}

/// An outcome for a failure that happened before any input was read.
pub fn error_outcome(command: &[&str], err: CliError, opts: &Opts) -> Outcome {
    Builder::new(command, &[], opts).fail(err)
}

fn run(b: Builder, body: impl FnOnce() -> CliResult<(Value, String, Option<String>)>) -> Outcome {
    match body() {
        Ok((v, t, e)) => {
            let mut o = b.ok(v, t);
            o.emitted = e;
            o
        }
        Err(e) => b.fail(e),
    }
}

fn polys(v: &[Poly]) -> Vec<String> {
    v.iter().map(|p| p.to_string()).collect()
}

fn dims_json(d: &BTreeMap<i32, usize>) -> Value {
    Value::Object(d.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn twists_str(t: &[i32]) -> String {
    let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn equivalence_json(e: &Equivalence) -> Value {
    match e {
        Equivalence::Yes(h) => json!({ "answer": "Yes", "shift": h }),
        Equivalence::No(w) => json!({ "answer": "No", "reason": w }),
        Equivalence::Undecided(w) => json!({ "answer": "Undecided", "reason": w }),
    }
}

fn equivalence_text(e: &Equivalence) -> String {
    match e {
        Equivalence::Yes(h) => format!("Yes({h})"),
        Equivalence::No(_) => "No".into(),
        Equivalence::Undecided(_) => "Undecided".into(),
    }
}

fn curve_summary(c: &CurveFamily) -> CliResult<Value> {
    Ok(json!({
        "degree": c.degree,
        "genus": c.genus,
        "regularity": c.regularity,
        "rao_dims": dims_json(&c.rao_module()?.dims),
        "gens": polys(c.ideal().gens()),
    }))
}

pub fn validate(inp: &Input, opts: &Opts) -> Outcome {
    run(Builder::new(&["validate", &inp.name], &[inp], opts), || {
        let c = inp.curve()?;
        let text = format!("valid curve: d={} g={}", c.degree, c.genus);
        Ok((json!({ "valid": true, "degree": c.degree, "genus": c.genus }), text, None))
    })
}

pub fn invariants(inp: &Input, opts: &Opts) -> Outcome {
    run(Builder::new(&["invariants", &inp.name], &[inp], opts), || {
        let c = inp.curve()?;
        let hi = c.regularity + opts.degree_margin;
        let q = GradedModule::quotient_ring(c.ideal());
        let hf: Vec<i64> = (0..=hi).map(|n| q.hf(n)).collect();
        let table = c.ideal_module().cohomology_table(TestModule::A, -2, hi)?;
        let cohom: Vec<Value> = table.iter().map(|(n, h)| json!({ "n": n, "h0": h[0], "h1": h[1] })).collect();
        let rao = &c.rao_module()?.dims;
        let mut v = curve_summary(&c)?;
        v["hilbert_function"] = json!(hf);
        v["ideal_cohomology"] = json!(cohom);
        let rao_txt: Vec<String> = rao.iter().map(|(n, d)| format!("{n}:{d}")).collect();
        let text = format!("d={} g={} reg={} rao={{{}}}", c.degree, c.genus, c.regularity, rao_txt.join(", "));
        Ok((v, text, None))
    })
}

pub fn saturate(inp: &Input, opts: &Opts) -> Outcome {
    run(Builder::new(&["saturate", &inp.name], &[inp], opts), || {
        let sat = inp.file.ideal()?.saturate();
        let c = validate_curve(&sat)?;
        let out = CurveFile::from_ideal(c.ideal()).render();
        Ok((curve_summary(&c)?, format!("saturated: d={} g={}", c.degree, c.genus), Some(out)))
    })
}

pub fn link_cmd(inp: &Input, f: &str, g: &str, opts: &Opts) -> Outcome {
    run(Builder::new(&["link", &inp.name, f, g], &[inp], opts), || {
        let c = inp.curve()?;
        let (fp, gp) = (inp.poly(f)?, inp.poly(g)?);
        let l = link(&c, &fp, &gp)?;
        let out = CurveFile::from_ideal(l.ideal()).render();
        let text = format!("linked curve: d={} g={}", l.degree, l.genus);
        Ok((curve_summary(&l)?, text, Some(out)))
    })
}

pub fn bilink(inp: &Input, q: &str, hpoly: &str, height: i32, opts: &Opts) -> Outcome {
    let hs = height.to_string();
    run(Builder::new(&["bilink", &inp.name, q, hpoly, &hs], &[inp], opts), || {
        let c = inp.curve()?;
        let (c2, _) = trivial_biliaison(&c, &inp.poly(q)?, &inp.poly(hpoly)?, height)?;
        let out = CurveFile::from_ideal(c2.ideal()).render();
        let text = format!("bilinked curve: d={} g={}", c2.degree, c2.genus);
        Ok((curve_summary(&c2)?, text, Some(out)))
    })
}

pub fn ntype(inp: &Input, opts: &Opts) -> Outcome {
    run(Builder::new(&["ntype", &inp.name], &[inp], opts), || {
        let c = inp.curve()?;
        let r = n_type_resolution(&c)?;
        r.certify()?;
        let (nt, pt) = (r.n_twists(), r.p_twists());
        let v = json!({
            "n_twists": nt,
            "p_twists": pt,
            "n_rank": r.n.series().rank(),
            "n_free": r.n.is_free(),
            "surjection": polys(&r.surj),
            "certified": true,
        });
        Ok((v, format!("N {} P {} certified", twists_str(&nt), twists_str(&pt)), None))
    })
}

pub fn etype(inp: &Input, opts: &Opts) -> Outcome {
    run(Builder::new(&["etype", &inp.name], &[inp], opts), || {
        let c = inp.curve()?;
        let r = e_type_resolution(&c)?;
        r.certify()?;
        let (et, ft) = (r.e_twists(), r.f_twists());
        let v = json!({ "e_twists": et, "f_twists": ft, "surjection": polys(&r.surj), "certified": true });
        Ok((v, format!("E {} F {} certified", twists_str(&et), twists_str(&ft)), None))
    })
}

fn decided(b: Builder, e: &Equivalence, mut v: Value, text: String) -> Outcome {
    let (status, code) = match e {
        Equivalence::Yes(_) => ("yes", 0),
        Equivalence::No(_) => ("no", 1),
        Equivalence::Undecided(_) => ("undecided", 4),
    };
    v["decision"] = equivalence_json(e);
    b.finish(status, code, v, text, None)
}

pub fn compare(a: &Input, b: &Input, opts: &Opts) -> Outcome {
    let bld = Builder::new(&["compare", &a.name, &b.name], &[a, b], opts);
    let res = (|| -> CliResult<_> { Ok(biliaison_equivalent(&a.curve()?, &b.curve()?, opts.trials, opts.seed)?) })();
    match res {
        Err(e) => bld.fail(e),
        Ok(d) => {
            let v = json!({
                "n_route": equivalence_json(&d.n_route),
                "rao_route": d.rao_route.as_ref().map(equivalence_json),
            });
            let text = format!("same biliaison class: {}", equivalence_text(&d.result));
            decided(bld, &d.result, v, text)
        }
    }
}

pub fn parity(a: &Input, b: &Input, opts: &Opts) -> Outcome {
    let bld = Builder::new(&["parity", &a.name, &b.name], &[a, b], opts);
    let res = (|| -> CliResult<_> { Ok(liaison_parity(&a.curve()?, &b.curve()?, opts.trials, opts.seed)?) })();
    match res {
        Err(e) => bld.fail(e),
        Ok(r) => {
            let (name, status, code) = match r.parity {
                Parity::Even => ("Even", "yes", 0),
                Parity::Odd => ("Odd", "yes", 0),
                Parity::Both => ("Both", "yes", 0),
                Parity::Neither => ("Neither", "no", 1),
                Parity::Undecided => ("Undecided", "undecided", 4),
            };
            let v = json!({ "parity": name, "even": equivalence_json(&r.even), "odd": equivalence_json(&r.odd) });
            bld.finish(status, code, v, format!("liaison parity: {name}"), None)
        }
    }
}

fn step_record(s: &BiliaisonStep) -> StepRecord {
    StepRecord { surface: s.surface.to_string(), height: s.height, source: polys(&s.source), images: polys(&s.images) }
}

pub fn connect(a: &Input, b: &Input, opts: &Opts) -> Outcome {
    let bld = Builder::new(&["connect", &a.name, &b.name], &[a, b], opts);
    let res = (|| -> CliResult<_> {
        let (c, c2) = (a.curve()?, b.curve()?);
        Ok((connect_by_biliaisons(&c, &c2, opts.degree_margin, opts.trials, opts.seed)?, c, c2))
    })();
    match res {
        Err(CliError::Lib(Error::NotEquivalent)) => {
            let v = json!({ "decision": { "answer": "No", "reason": "curves are not biliaison equivalent" } });
            bld.finish("no", 1, v, "curves are not biliaison equivalent".into(), None)
        }
        Err(e) => bld.fail(e),
        Ok((chain, c, c2)) => {
            let file = ChainFile {
                schema: CHAIN_SCHEMA.into(),
                ring: render_ring(c.ring()),
                source: polys(c.ideal().gens()),
                target: polys(c2.ideal().gens()),
                shift: chain.shift,
                steps: chain.steps.iter().map(step_record).collect(),
            };
            let steps: Vec<Value> = chain
                .steps
                .iter()
                .zip(&chain.curves[1..])
                .map(|(s, i)| json!({ "surface": s.surface.to_string(), "height": s.height, "curve": polys(i.gens()) }))
                .collect();
            let v = json!({ "length": chain.len(), "shift": chain.shift, "verified": true, "steps": steps });
            let text = format!("chain of {} elementary biliaisons, replay verified", chain.len());
            let emitted = serde_json::to_string_pretty(&file).expect("chain serializes") + "\n";
            bld.finish("ok", 0, v, text, Some(emitted))
        }
    }
}

/// Parses a chain file and replays it from its source ideal.
pub fn replay_chain(name: &str, text: &str, opts: &Opts) -> Outcome {
    let digest = InputDigest::of(name, text);
    let mut bld = Builder::new(&["replay", name], &[], opts);
    bld.inputs.push(digest);
    run(bld, || {
        let file: ChainFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("chain file: {e}")))?;
        if file.schema != CHAIN_SCHEMA {
            return Err(Error::Parse(format!("unsupported chain schema `{}`", file.schema)).into());
        }
        let ring = parse_ring(&file.ring)?;
        let parse = |v: &[String]| v.iter().map(|s| Poly::parse(ring, s)).collect::<Result<Vec<_>, _>>();
        let steps = file
            .steps
            .iter()
            .map(|s| {
                Ok(BiliaisonStep {
                    surface: Poly::parse(ring, &s.surface)?,
                    height: s.height,
                    source: parse(&s.source)?,
                    images: parse(&s.images)?,
                })
            })
            .collect::<Result<Vec<_>, Error>>()?;
        let start = Ideal::new(ring, parse(&file.source)?)?;
        let target = Ideal::new(ring, parse(&file.target)?)?;
        let end = replay(&start, &steps)?;
        if !end.same_as(&target) {
            return Err(Error::Certification("replay does not reach the recorded target".into()).into());
        }
        let text = format!("replayed {} steps, target reached", steps.len());
        Ok((json!({ "steps": steps.len(), "reached_target": true }), text, None))
    })
}

/// Validation, invariants and both resolutions with their certificates.
fn corpus_entry(name: &str, opts: &Opts) -> Value {
    let body = || -> CliResult<Value> {
        let inp = load_input(name, opts)?;
        let c = inp.curve()?;
        let n = n_type_resolution(&c)?;
        n.certify()?;
        let e = e_type_resolution(&c)?;
        e.certify()?;
        assemble_e_p_f_n(&n, &e)?;
        let mut v = curve_summary(&c)?;
        v["n_twists"] = json!(n.n_twists());
        v["p_twists"] = json!(n.p_twists());
        v["e_twists"] = json!(e.e_twists());
        v["f_twists"] = json!(e.f_twists());
        v["certified"] = json!(true);
        Ok(v)
    };
    match body() {
        Ok(v) => json!({ "name": name, "status": "ok", "result": v }),
        Err(e) => json!({ "name": name, "status": "error", "error": e.kind(), "message": e.to_string() }),
    }
}

/// Runs every fixture on its own thread with a seed derived from its index.
pub fn corpus_run(opts: &Opts) -> Outcome {
    let bld = Builder::new(&["corpus", "run"], &[], opts);
    let names = corpus::names();
    let entries: Vec<Value> = std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let o = Opts { seed: opts.seed.wrapping_add(i as u64), dual_numbers: false, ..opts.clone() };
                s.spawn(move || corpus_entry(name, &o))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("fixture thread")).collect()
    });
    let failed = entries.iter().filter(|e| e["status"] != "ok").count();
    let text = entries
        .iter()
        .map(|e| format!("{:<28} {}", e["name"].as_str().unwrap(), e["status"].as_str().unwrap()))
        .collect::<Vec<_>>()
        .join("\n");
    let v = json!({ "fixtures": entries, "failed": failed });
    if failed == 0 {
        bld.ok(v, text)
    } else {
        bld.finish("error", 2, v, text, None)
    }
}

pub fn corpus_list(opts: &Opts) -> Outcome {
    let names = corpus::names();
    Builder::new(&["corpus", "list"], &[], opts).ok(json!({ "names": names }), names.join("\n"))
}

pub fn corpus_show(name: &str, opts: &Opts) -> Outcome {
    let bld = Builder::new(&["corpus", "show", name], &[], opts);
    match corpus::text(name) {
        Some(t) => {
            let mut o = bld.ok(json!({ "name": name }), String::new());
            o.emitted = Some(t.to_string());
            o
        }
        None => bld.fail(CliError::UnknownInput(name.to_string())),
    }
}
