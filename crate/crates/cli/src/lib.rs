//! Batch front-end for `stammer-core`: one job per invocation, a report on
//! standard output and an exit status that separates analytic negatives
//! from failures.

mod config;
mod plot;

use std::fmt;
use std::fs;
use std::path::Path;

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value};
use stammer_core::approximants::{
    audit_witness, criterion_report, hensel_approximant, periodic_approximant, ApproxValue, AuditEntry, BaseSpec,
    EnclosureText, WitnessSource, REPORT_BITS,
};
use stammer_core::automata::{generate_aligned, to_uniform_morphism, Alignment, KAutomaton};
use stammer_core::complexity::complexity_profile;
use stammer_core::expansions::{
    b_adic_digits, beta_expansion, classify_algebraic_integer, hensel_digits, lacunary_digits, pattern_count_digits,
    AlgebraicIntegerSpec, Beta, BetaInput,
};
use stammer_core::morphisms::{default_fixed_point, fixed_point, morphic_image, Morphism};
use stammer_core::numeric::Rational;
use stammer_core::stammer::{
    extract_witness, verify_witness, witness_hunt, witnesses_for_automatic, witnesses_for_morphic, WitnessReport,
    WitnessSequence,
};
use stammer_core::{Alphabet, Error, SequenceSource, Symbol};

pub use config::{Analysis, Cli, Command, Format, JobConfig, Kind, Method, NumberBase, SourceSpec, WitnessPlan};
pub use plot::{emit_plot_data, witness_rows, PlotData, WitnessRow};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for tool failures.
pub const EXIT_ERROR: i32 = 1;
/// Exit status for `NotApplicable` and `NoRepeat`.
pub const EXIT_NEGATIVE: i32 = 2;

/// Header line for digit-pattern sources.
pub const PATTERN_CONVENTION: &str =
    "occurrences are overlapping and counted in the base-k digits of n written without leading zeros";

/// A failed job: the error name and a message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobError {
    pub name: String,
    pub message: String,
    pub analytic_negative: bool,
}

impl JobError {
    pub fn new(name: &str, message: impl Into<String>) -> Self {
        JobError { name: name.to_string(), message: message.into(), analytic_negative: false }
    }

    fn in_file(path: &Path, e: Error) -> Self {
        match e {
            Error::Parse { line, msg } => JobError::new("ParseError", format!("{}:{line}: {msg}", path.display())),
            other => {
                let mut j = JobError::from(other);
                j.message = format!("{}: {}", path.display(), j.message);
                j
            }
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.analytic_negative {
            EXIT_NEGATIVE
        } else {
            EXIT_ERROR
        }
    }
}

impl From<Error> for JobError {
    fn from(e: Error) -> Self {
        JobError { name: e.name().to_string(), message: e.to_string(), analytic_negative: e.is_analytic_negative() }
    }
}

impl fmt::Display for JobError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.message)
    }
}

/// What a job printed and how it ended. Output written before a failure
/// is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub error: Option<JobError>,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.error.as_ref().map_or(EXIT_OK, JobError::exit_code)
    }
}

/// The loaded sequence plus what is known about how it was made.
struct Loaded {
    seq: SequenceSource,
    automaton: Option<(KAutomaton, Alignment)>,
    /// Generating morphism and start letter, when there is no coding.
    morphism: Option<(Morphism, Symbol)>,
    pattern: bool,
}

fn read(path: &Path) -> Result<String, JobError> {
    fs::read_to_string(path).map_err(|e| JobError::new("Io", format!("{}: {e}", path.display())))
}

fn beta_alphabet(beta: &Beta) -> Alphabet {
    let size = match beta {
        Beta::Integer(b) => *b as u32,
        other => other.enclosure(64).floors().1.to_u32().expect("small base") + 1,
    };
    Alphabet::digits(size)
}

fn beta_source(xi: &Rational, beta: &Beta, hint: usize, max_bits: u32) -> Result<SequenceSource, JobError> {
    let input = BetaInput::Rational(xi.clone());
    let first = beta_expansion(&input, beta, hint, max_bits)?;
    let id = format!("beta({xi},{})", beta.poly());
    let alphabet = beta_alphabet(beta);
    if let Some(p) = first.period {
        let head = first.digits[..p.preperiod].to_vec();
        let period = first.digits[p.preperiod..p.preperiod + p.period].to_vec();
        return Ok(SequenceSource::eventually_periodic(id, alphabet, head, period)?);
    }
    let beta = beta.clone();
    let mut digits = first.digits;
    Ok(SequenceSource::from_fn(id, alphabet, move |i| {
        if i >= digits.len() {
            let n = (2 * digits.len()).max(i + 1);
            digits = beta_expansion(&input, &beta, n, max_bits)
                .expect("β-expansion beyond the precomputed prefix needs more precision")
                .digits;
        }
        digits[i]
    }))
}

// Prefix length a job may read, used to size precomputed expansions.
fn length_hint(cfg: &JobConfig) -> usize {
    let n = match &cfg.analysis {
        Analysis::Gen { count } => *count,
        Analysis::Complexity { window, .. } => *window,
        Analysis::Stammer { n_to, kappa, .. } => (kappa + 1) * n_to + 1,
        Analysis::Witness(p) | Analysis::Audit { plan: p, .. } => p.hunt_len,
        Analysis::Report(p) => p.hunt_len.max(cfg.scan_limit),
        Analysis::Approx { r, s } => 4 * (r + s),
        Analysis::Classify { .. } => 0,
    };
    n.max(64)
}

fn load(spec: &SourceSpec, cfg: &JobConfig) -> Result<Loaded, JobError> {
    let plain = |seq| Loaded { seq, automaton: None, morphism: None, pattern: false };
    Ok(match spec {
        SourceSpec::Automaton { path, align } => {
            let a = KAutomaton::parse(&read(path)?).map_err(|e| JobError::in_file(path, e))?;
            Loaded { seq: generate_aligned(&a, *align), automaton: Some((a, *align)), morphism: None, pattern: false }
        }
        SourceSpec::Morphism { path, start, coding } => {
            let phi = Morphism::parse(&read(path)?).map_err(|e| JobError::in_file(path, e))?;
            let x = match start {
                Some(tok) => {
                    let s = phi
                        .source()
                        .symbol(tok)
                        .ok_or_else(|| JobError::new("InvalidArgument", format!("--start {tok:?} is not a letter")))?;
                    fixed_point(&phi, s)?
                }
                None => default_fixed_point(&phi)?,
            };
            match coding {
                Some(cpath) => {
                    let psi = Morphism::parse(&read(cpath)?).map_err(|e| JobError::in_file(cpath, e))?;
                    plain(morphic_image(&psi, &x).map_err(|e| JobError::in_file(cpath, e))?)
                }
                None => {
                    let s = x.get(1);
                    Loaded { seq: x, automaton: None, morphism: Some((phi, s)), pattern: false }
                }
            }
        }
        SourceSpec::BAdic { xi, base } => plain(b_adic_digits(xi, *base)?),
        SourceSpec::Beta { xi, beta } => plain(beta_source(xi, beta, length_hint(cfg), cfg.precision_bits)?),
        SourceSpec::Hensel { alpha, prime } => plain(hensel_digits(alpha, *prime)?.tail()),
        SourceSpec::Pattern { k, pattern, base } => {
            let mut l = plain(pattern_count_digits(*k, pattern, *base)?);
            l.pattern = true;
            l
        }
        SourceSpec::Lacunary { exponents, base } => plain(lacunary_digits(exponents.clone(), *base)?),
    })
}

fn resolve_method(l: &Loaded, m: Method) -> Method {
    match m {
        Method::Auto => match (&l.automaton, &l.morphism) {
            (Some((_, Alignment::FromZero)), _) => Method::Automatic,
            (_, Some(_)) => Method::Morphic,
            _ => Method::Hunt,
        },
        other => other,
    }
}

fn witnesses(l: &Loaded, plan: &WitnessPlan, scan_limit: usize) -> Result<WitnessSequence, JobError> {
    Ok(match resolve_method(l, plan.method) {
        Method::Automatic => {
            let (a, _) = l.automaton.as_ref().expect("validated source");
            let d = to_uniform_morphism(a)?;
            witnesses_for_automatic(&d.sigma, &d.coding, plan.count)?
        }
        Method::Morphic => {
            let (phi, start) = l.morphism.as_ref().expect("validated source");
            witnesses_for_morphic(phi, *start, plan.count, scan_limit)?
        }
        _ => witness_hunt(&l.seq, plan.w_min, plan.ratio_cap, plan.hunt_len)?,
    })
}

fn ratio_text(x: &Rational) -> String {
    x.to_string()
}

fn json_line(out: &mut String, v: &impl Serialize) {
    out.push_str(&serde_json::to_string(v).expect("serializable"));
    out.push('\n');
}

fn json_doc(out: &mut String, mut v: Value, pattern: bool) {
    if pattern {
        if let Value::Object(m) = &mut v {
            m.insert("convention".into(), Value::String(PATTERN_CONVENTION.into()));
        }
    }
    out.push_str(&serde_json::to_string_pretty(&v).expect("serializable"));
    out.push('\n');
}

fn header(out: &mut String, l: &Loaded, format: Format) {
    if !l.pattern {
        return;
    }
    match format {
        Format::Tsv => out.push_str(&format!("# {PATTERN_CONVENTION}\n")),
        Format::Json => json_line(out, &json!({ "convention": PATTERN_CONVENTION })),
        Format::Raw => {}
    }
}

fn base_spec(b: &NumberBase) -> BaseSpec {
    match b {
        NumberBase::Integer(b) => BaseSpec::Integer(*b),
        NumberBase::Beta(beta) => BaseSpec::Beta(beta.clone()),
        NumberBase::Prime(p) => BaseSpec::Prime(*p),
    }
}

#[derive(Serialize)]
struct AuditLine {
    index: usize,
    r: usize,
    s: usize,
    #[serde(flatten)]
    entry: AuditEntry,
}

fn run(cfg: &JobConfig, out: &mut String) -> Result<(), JobError> {
    if let Analysis::Classify { poly } = &cfg.analysis {
        let kind = classify_algebraic_integer(&AlgebraicIntegerSpec::new(poly.clone())?, cfg.precision_bits)?;
        match cfg.format {
            Format::Json => json_doc(out, json!({ "poly": poly.to_string(), "kind": kind }), false),
            _ => out.push_str(&format!("poly\tkind\n{poly}\t{kind:?}\n")),
        }
        return Ok(());
    }
    let spec = cfg.source.as_ref().ok_or_else(|| JobError::new("InvalidArgument", "no source"))?;
    let l = load(spec, cfg)?;
    let a = &l.seq;
    match &cfg.analysis {
        Analysis::Gen { count } => {
            let p = a.prefix(*count);
            match cfg.format {
                Format::Raw => {
                    out.push_str(&a.alphabet().render(&p));
                    out.push('\n');
                }
                Format::Tsv => {
                    header(out, &l, cfg.format);
                    out.push_str("index\tsymbol\n");
                    for (i, &c) in p.iter().enumerate() {
                        out.push_str(&format!("{}\t{}\n", i + 1, a.alphabet().token(c)));
                    }
                }
                Format::Json => json_doc(
                    out,
                    json!({ "source": a.id(), "count": count, "symbols": a.alphabet().render(&p) }),
                    l.pattern,
                ),
            }
        }
        Analysis::Complexity { n_max, window } => {
            let prof = complexity_profile(a, *n_max, *window)?;
            match cfg.format {
                Format::Json => json_doc(
                    out,
                    json!({
                        "source": a.id(),
                        "nMax": prof.n_max,
                        "window": prof.window,
                        "counts": prof.counts,
                        "stable": prof.stable,
                    }),
                    l.pattern,
                ),
                _ => {
                    header(out, &l, cfg.format);
                    out.push_str(&emit_plot_data(&PlotData::Profile(&prof)));
                }
            }
        }
        Analysis::Stammer { n_from, n_to, kappa } => {
            header(out, &l, cfg.format);
            if cfg.format == Format::Tsv {
                out.push_str("n\tcase\tu_len\tv_len\tw_num\tw_den\tverified\n");
            }
            for n in *n_from..=*n_to {
                let (ws, trace) = extract_witness(a, n, *kappa)?;
                let verified = verify_witness(a, &ws);
                match cfg.format {
                    Format::Json => json_line(out, &WitnessReport::new(&ws, Some(trace.case), verified)),
                    _ => out.push_str(&format!(
                        "{n}\t{}\t{}\t{}\t{}\t{}\t{verified}\n",
                        trace.case,
                        ws.u.len(),
                        ws.v.len(),
                        ws.w.numer(),
                        ws.w.denom()
                    )),
                }
            }
        }
        Analysis::Witness(plan) => {
            let ws = witnesses(&l, plan, cfg.scan_limit)?;
            header(out, &l, cfg.format);
            match cfg.format {
                Format::Json => {
                    for w in &ws.witnesses {
                        json_line(out, &WitnessReport::new(w, None, verify_witness(a, w)));
                    }
                }
                _ => out.push_str(&emit_plot_data(&PlotData::Witnesses(&witness_rows(a, &ws)))),
            }
        }
        Analysis::Approx { r, s } => {
            let (r, s) = (*r, *s);
            let mut fields: Vec<(String, String)> = vec![("r".into(), r.to_string()), ("s".into(), s.to_string())];
            match &cfg.base {
                NumberBase::Prime(p) => {
                    let digits = a.digit_values(2 * (r + s) + 64);
                    let h = hensel_approximant(&digits, r, s, *p)?;
                    fields.push(("p".into(), p.to_string()));
                    fields.push(("p_n".into(), h.numerator.to_string()));
                    fields.push(("value".into(), ratio_text(&h.value)));
                    fields.push(("valuation".into(), h.valuation.value.to_string()));
                    fields.push(("valuation_exact".into(), h.valuation.exact.to_string()));
                }
                NumberBase::Integer(_) | NumberBase::Beta(_) => {
                    let beta = match &cfg.base {
                        NumberBase::Integer(b) => Beta::Integer(*b),
                        NumberBase::Beta(beta) => beta.clone(),
                        NumberBase::Prime(_) => unreachable!(),
                    };
                    let digits = a.digit_values(r + s);
                    let ap = periodic_approximant(&digits, r, s, &beta, REPORT_BITS)?;
                    fields.push(("base".into(), base_spec(&cfg.base).to_string()));
                    fields.push(("polynomial".into(), ap.poly.to_string()));
                    match &ap.value {
                        ApproxValue::Exact(q) => fields.push(("value".into(), ratio_text(q))),
                        ApproxValue::Field(x) => {
                            fields.push(("value_a".into(), ratio_text(&x.a)));
                            fields.push(("value_b".into(), ratio_text(&x.b)));
                        }
                        ApproxValue::Enclosure(i) => {
                            let t = EnclosureText::from(i);
                            fields.push(("value_lo".into(), t.lo));
                            fields.push(("value_hi".into(), t.hi));
                        }
                    }
                }
            }
            match cfg.format {
                Format::Json => {
                    let mut m = serde_json::Map::new();
                    m.insert("source".into(), Value::String(a.id().to_string()));
                    for (k, v) in fields {
                        m.insert(k, Value::String(v));
                    }
                    json_doc(out, Value::Object(m), l.pattern);
                }
                _ => {
                    header(out, &l, cfg.format);
                    out.push_str("key\tvalue\n");
                    for (k, v) in fields {
                        out.push_str(&format!("{k}\t{v}\n"));
                    }
                }
            }
        }
        Analysis::Audit { plan, min_s } => {
            let NumberBase::Integer(b) = cfg.base else {
                return Err(JobError::new("InvalidArgument", "audit needs an integer base"));
            };
            let ws = witnesses(&l, plan, cfg.scan_limit)?;
            header(out, &l, cfg.format);
            if cfg.format == Format::Tsv {
                out.push_str("index\tr\ts\tH\tH_lo\tH_hi\tPi_lo\tPi_hi\texp_lo\texp_hi\tdigits_used\n");
            }
            for w in ws.witnesses.iter().filter(|w| w.v.len() >= *min_s && verify_witness(a, w)) {
                let (r, s) = (w.u.len(), w.v.len());
                match audit_witness(a, b, w, cfg.precision_bits) {
                    Ok(rep) => {
                        let e = AuditEntry::new(r + s, &rep);
                        match cfg.format {
                            Format::Json => json_line(out, &AuditLine { index: w.index, r, s, entry: e }),
                            _ => out.push_str(&format!(
                                "{}\t{r}\t{s}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                                w.index,
                                e.height,
                                e.h_enclosure.lo,
                                e.h_enclosure.hi,
                                e.pi_enclosure.lo,
                                e.pi_enclosure.hi,
                                e.exponent_enclosure.lo,
                                e.exponent_enclosure.hi,
                                e.digits_used
                            )),
                        }
                    }
                    Err(e) => match cfg.format {
                        Format::Json => json_line(
                            out,
                            &json!({ "index": w.index, "r": r, "s": s, "error": e.name(), "message": e.to_string() }),
                        ),
                        _ => out.push_str(&format!("# index {}: {}: {e}\n", w.index, e.name())),
                    },
                }
            }
        }
        Analysis::Report(plan) => {
            let fallback = (plan.w_min, plan.ratio_cap, plan.hunt_len);
            let source = match resolve_method(&l, plan.method) {
                Method::Morphic => {
                    let (phi, start) = l.morphism.clone().expect("validated source");
                    WitnessSource::Morphic { phi, start, count: plan.count, fallback }
                }
                Method::Automatic => WitnessSource::Given(witnesses(&l, plan, cfg.scan_limit)?),
                _ => WitnessSource::Hunt { w_min: plan.w_min, ratio_cap: plan.ratio_cap, prefix: plan.hunt_len },
            };
            let rep = criterion_report(a, &base_spec(&cfg.base), &source, cfg.scan_limit, cfg.precision_bits)?;
            json_doc(out, serde_json::to_value(&rep).expect("serializable"), l.pattern);
        }
        Analysis::Classify { .. } => unreachable!("handled above"),
    }
    Ok(())
}

/// Runs one job. The output depends only on the configuration.
pub fn run_job(cfg: &JobConfig) -> Outcome {
    let mut stdout = String::new();
    let error = run(cfg, &mut stdout).err();
    Outcome { stdout, error }
}

/// Parses arguments (without the program name) and runs the job.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match JobConfig::from_args(args) {
        Ok(cfg) => run_job(&cfg),
        Err(e) => Outcome { stdout: String::new(), error: Some(e) },
    }
}
