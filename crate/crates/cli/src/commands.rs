use std::fmt::Write as _;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use vsa_core::affine::{
    build_realization, sugawara, sugawara_central_charge, verify_affine_ope, verify_conformal_embedding, verify_coset, AffineRealization,
    RealizationPair,
};
use vsa_core::arcjet::{certify_classical_freeness, jet_invariant_dims, quotient_dims, CertifyOptions, DiffPresentation, HilbertTable};
use vsa_core::fockspan::{c2_presentation, character, subalgebra_graded_dims, C2Presentation, WeightDim};
use vsa_core::freefield::{central_charge, ope, FreeFieldContext};
use vsa_core::rational::fmt_q;
use vsa_core::{Error, Weight, SCHEMA, VERSION};

use crate::config::{parse_weight, CharTarget, Cli, Command, OutputFormat, RunConfig, Triple};
use crate::parse::{parse_expr, ParseError};

/// Exit code and rendered report.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

struct Report {
    passed: bool,
    result: Value,
    text: String,
    table: Option<Vec<WeightDim>>,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Parse(ParseError),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) | Failure::Parse(_) => 2,
            Failure::Core(e) => match e {
                Error::Inconsistent(_) | Error::NotVirasoro { .. } | Error::SolveFailure(..) => 1,
                _ => 2,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(s) => s.clone(),
            Failure::Core(e) => e.to_string(),
            Failure::Parse(e) => format!("parse error at {e}"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Outcome { code, report: e.to_string() };
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run_config(&cfg),
        Err(e) => {
            let f = Failure::Core(e);
            Outcome { code: f.code(), report: error_report(None, &f, OutputFormat::Json) }
        }
    }
}

fn error_report(cfg: Option<&RunConfig>, f: &Failure, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let v = json!({
                "schema": SCHEMA,
                "tool_version": VERSION,
                "config": cfg,
                "status": "error",
                "error": f.message(),
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        _ => format!("FAILED: {}\n", f.message()),
    }
}

/// Runs a validated configuration, honouring `threads`.
pub fn run_config(cfg: &RunConfig) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let f = Failure::Usage(format!("cannot build thread pool: {e}"));
            return Outcome { code: 2, report: error_report(Some(cfg), &f, cfg.format) };
        }
    };
    let res = pool.install(|| dispatch(cfg));
    let outcome = match res {
        Ok(rep) => render(cfg, rep),
        Err(f) => Outcome { code: f.code(), report: error_report(Some(cfg), &f, cfg.format) },
    };
    if let Some(path) = &cfg.output {
        if let Err(e) = std::fs::write(path, &outcome.report) {
            let f = Failure::Usage(format!("cannot write {}: {e}", path.display()));
            return Outcome { code: 2, report: error_report(Some(cfg), &f, OutputFormat::Text) };
        }
    }
    outcome
}

fn render(cfg: &RunConfig, rep: Report) -> Outcome {
    let code = if rep.passed { 0 } else { 1 };
    let report = match cfg.format {
        OutputFormat::Json => {
            let v = json!({
                "schema": SCHEMA,
                "tool_version": VERSION,
                "config": cfg,
                "status": if rep.passed { "pass" } else { "fail" },
                "result": rep.result,
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        OutputFormat::Text => rep.text,
        OutputFormat::Csv => match rep.table {
            Some(t) => table_csv(&t),
            None => {
                let f = Failure::Usage("csv output is only available for table commands (char, arc-hilbert, invariants)".into());
                return Outcome { code: 2, report: error_report(Some(cfg), &f, OutputFormat::Text) };
            }
        },
    };
    Outcome { code, report }
}

fn table_csv(t: &[WeightDim]) -> String {
    let mut s = String::from("weight,dim\n");
    for d in t {
        let _ = writeln!(s, "{},{}", d.weight, d.dim);
    }
    s
}

fn table_text(title: &str, t: &[WeightDim]) -> String {
    let mut s = format!("{title}\n");
    for d in t {
        let _ = writeln!(s, "  weight {:>4}: {}", d.weight, d.dim);
    }
    s
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn realization(real: &crate::config::Realization) -> Result<RealizationPair, Failure> {
    let Triple { n, m, r } = real.params;
    Ok(build_realization(real.family.core(), n, m, r)?)
}

fn weight(s: &str) -> Result<Weight, Failure> {
    Ok(parse_weight(s)?)
}

fn dispatch(cfg: &RunConfig) -> Result<Report, Failure> {
    match &cfg.command {
        Command::Ope { a, b, bg, bc } => cmd_ope(a, b, *bg, *bc),
        Command::VerifyOpe { real } => {
            let pair = realization(real)?;
            let reports = [verify_affine_ope(&pair.inner)?, verify_affine_ope(&pair.coset)?];
            let passed = reports.iter().all(|r| r.passed());
            let mut text = String::new();
            for (side, r) in ["inner", "coset"].iter().zip(&reports) {
                let _ = writeln!(text, "{side} {} level {}: {}/{} pairs pass", r.algebra, fmt_q(&r.level), r.pairs_passed, r.pairs_checked);
                for f in &r.failures {
                    let _ = writeln!(text, "  {} x {} pole {}: expected {} got {}", f.labels.0, f.labels.1, f.pole, f.expected, f.got);
                }
            }
            Ok(Report { passed, result: json!({ "inner": reports[0], "coset": reports[1] }), text, table: None })
        }
        Command::CosetCheck { real } => {
            let pair = realization(real)?;
            let r = verify_coset(&pair)?;
            let mut text = format!("{} mixed pairs, {} with singular terms\n", r.pairs_checked, r.violations.len());
            for v in &r.violations {
                let _ = writeln!(text, "  {} x {}: {:?}", v.inner, v.coset, v.poles);
            }
            Ok(Report { passed: r.passed(), result: to_value(&r), text, table: None })
        }
        Command::EmbedCheck { real } => {
            let pair = realization(real)?;
            let r = verify_conformal_embedding(&pair)?;
            let text = format!(
                "c_inner = {}, c_coset = {}, c_ambient = {}\ncentral charges match: {}\nL_inner + L_coset = L_ambient: {}\n",
                fmt_q(&r.c_inner),
                fmt_q(&r.c_coset),
                fmt_q(&r.c_expected),
                r.central_charges_match,
                r.vector_identity_holds
            );
            Ok(Report { passed: r.passed(), result: to_value(&r), text, table: None })
        }
        Command::Sugawara { real } => {
            let pair = realization(real)?;
            let mut results = Vec::new();
            let mut text = String::new();
            let mut passed = true;
            for (side, a) in [("inner", &pair.inner), ("coset", &pair.coset)] {
                let (v, ok) = sugawara_entry(a)?;
                passed &= ok;
                let _ = writeln!(text, "{side} {} level {}: c = {} (expected {})", v["algebra"].as_str().unwrap_or(""), fmt_q(&a.level), v["c"].as_str().unwrap_or(""), v["c_expected"].as_str().unwrap_or(""));
                results.push(json!({ "side": side, "sugawara": v }));
            }
            Ok(Report { passed, result: Value::Array(results), text, table: None })
        }
        Command::Char { real, trunc, of } => {
            let pair = realization(real)?;
            let n = weight(&trunc.max_weight)?;
            let dims: Vec<WeightDim> = match of {
                CharTarget::Fock => character(pair.ctx(), n).into_iter().enumerate().map(|(w, d)| WeightDim { weight: Weight(w as i64), dim: d as usize }).collect(),
                CharTarget::Coset => subalgebra_graded_dims(&pair.coset.currents, n, &cfg.caps)?.dims(),
                CharTarget::Inner => subalgebra_graded_dims(&pair.inner.currents, n, &cfg.caps)?.dims(),
            };
            let title = format!("graded dimensions ({of:?})").to_lowercase();
            Ok(Report { passed: true, result: json!({ "target": of, "dims": dims }), text: table_text(&title, &dims), table: Some(dims) })
        }
        Command::Zhu { params, trunc, dmax } => {
            let n = weight(&trunc.max_weight)?;
            let pres = zhu(params, n, *dmax, cfg)?;
            let labels: Vec<String> = pres.generators.iter().map(|g| g.label.clone()).collect();
            let mut text = format!("generators: {}\n", labels.join(", "));
            let _ = writeln!(text, "R_V dims: {:?}", pres.dims_rv.iter().map(|d| d.dim).collect::<Vec<_>>());
            for r in &pres.relations {
                let _ = writeln!(text, "  degree {} weight {}: {}", r.degree, r.weight, r.text);
            }
            let _ = writeln!(text, "odd squares: {}", pres.odd_squares.len());
            Ok(Report { passed: true, result: to_value(&pres), text, table: None })
        }
        Command::ArcHilbert { params, trunc, dmax } => {
            let n = weight(&trunc.max_weight)?;
            let pres = zhu(params, n, *dmax, cfg)?;
            let diff = DiffPresentation::from_c2(&pres)?;
            let t = quotient_dims(&diff, n, &cfg.caps)?;
            Ok(table_report("arc space Hilbert series", t))
        }
        Command::Invariants { params, trunc } => {
            let n = weight(&trunc.max_weight)?;
            let t = jet_invariant_dims(params.n, params.m, params.r, n, &cfg.caps)?;
            Ok(table_report("jet invariants", t))
        }
        Command::Certify { params, trunc, dmax, delta_max, dmax_cap } => {
            let n = weight(&trunc.max_weight)?;
            let mut opts = CertifyOptions::for_weight(n);
            opts.caps = cfg.caps;
            if let Some(d) = delta_max {
                opts.delta_max = weight(d)?;
            }
            if let Some(d) = dmax {
                opts.dmax = *d;
                opts.dmax_cap = (*d).max(opts.dmax_cap);
            }
            if let Some(c) = dmax_cap {
                opts.dmax_cap = *c;
            }
            let c = certify_classical_freeness(params.n, params.m, params.r, n, &opts)?;
            let mut text = format!("verdict: {}\n", c.verdict);
            let _ = writeln!(text, "dims_V:   {:?}", c.dims_v.iter().map(|d| d.dim).collect::<Vec<_>>());
            let _ = writeln!(text, "dims_arc: {:?}", c.dims_arc.iter().map(|d| d.dim).collect::<Vec<_>>());
            if let Some(l) = &c.label {
                let _ = writeln!(text, "note: {l}");
            }
            Ok(Report { passed: c.verdict.is_equal(), result: to_value(&c), text, table: None })
        }
    }
}

fn table_report(title: &str, t: HilbertTable) -> Report {
    let text = table_text(title, &t.dims);
    Report { passed: true, result: to_value(&t), text, table: Some(t.dims) }
}

fn zhu(p: &Triple, n: Weight, dmax: Option<usize>, cfg: &RunConfig) -> Result<C2Presentation, Failure> {
    let pair = build_realization(vsa_core::affine::RealizationFamily::S2, p.n, p.m, p.r)?;
    let space = subalgebra_graded_dims(&pair.coset.currents, n, &cfg.caps)?;
    let d = dmax.unwrap_or((n.0 / 2).max(1) as usize);
    Ok(c2_presentation(&space, &pair.coset.currents, &pair.coset.current_labels(), d)?)
}

fn sugawara_entry(a: &AffineRealization) -> Result<(Value, bool), Failure> {
    let l = sugawara(a)?;
    let c = central_charge(&l)?;
    let expected = sugawara_central_charge(a)?;
    let ok = c == expected;
    Ok((
        json!({
            "algebra": a.g.name,
            "level": fmt_q(&a.level),
            "c": fmt_q(&c),
            "c_expected": fmt_q(&expected),
            "vector": l,
        }),
        ok,
    ))
}

fn cmd_ope(a: &str, b: &str, bg: Option<u32>, bc: Option<u32>) -> Result<Report, Failure> {
    let ea = parse_expr(a, None).map_err(Failure::Parse)?;
    let eb = parse_expr(b, None).map_err(Failure::Parse)?;
    let (ga, ca) = ea.min_context();
    let (gb, cb) = eb.min_context();
    let ctx = FreeFieldContext::new(bg.unwrap_or(ga.max(gb)), bc.unwrap_or(ca.max(cb))).map_err(|_| Failure::Usage("expressions use no generators; pass --bg or --bc".into()))?;
    // reparse with the context to range-check indices
    let ea = parse_expr(a, Some(ctx)).map_err(Failure::Parse)?;
    let eb = parse_expr(b, Some(ctx)).map_err(Failure::Parse)?;
    let (fa, fb) = (ea.eval(ctx)?, eb.eval(ctx)?);
    let r = ope(&fa, &fb)?;
    let mut text = String::new();
    if r.is_regular() {
        text.push_str("regular\n");
    }
    for (p, f) in r.poles.iter().rev() {
        let _ = writeln!(text, "(z-w)^-{p}: {f}");
    }
    Ok(Report { passed: true, result: json!({ "a": fa, "b": fb, "ope": r }), text, table: None })
}
