//! The `diffcap` command line.
//!
//! Every run produces a [`Report`]: an echo of the input and its
//! parameters, a command-specific payload, and provenance (version, the
//! full parsed configuration, tolerances, thread count, wall time). Text is
//! printed by default and `--json` prints the report itself. Bound sweeps
//! print CSV with columns `n, delta_n, lower, upper`.
//!
//! Exit codes: 0 success, 1 usage error, 2 computation budget exceeded,
//! 3 internal invariant violation.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bounds::{self, ROUNDING_SLACK};
use crate::brute;
use crate::error::{Error, Result};
use crate::jsr::{self, CapacityMode, CapacityOptions, CapacityReport};
use crate::patterns::{PatternSet, DEFAULT_EXPANSION_BUDGET};
use crate::positivity::{self, Nae3SatInstance, Verdict};
use crate::transfer;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

/// Code lengths checked by `sigma` before it emits a family.
pub const SIGMA_CHECK_N: usize = 3;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(
    name = "diffcap",
    version,
    about = "Capacity of codes avoiding forbidden difference patterns"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the output to FILE. For reduce-nae3sat this receives the pattern file.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// Parameters, positivity, and the capacity floor.
    Analyze(PatternArgs),
    /// Exact δ_n with a witness code.
    Delta(DeltaArgs),
    /// Capacity brackets from brute-force δ_n.
    Bounds(BoundsArgs),
    /// Decide cap(D) > 0 and show a shortest admissible word.
    Positivity(BudgetArgs),
    /// Print a shortest admissible word, if any.
    ShortestWord(BudgetArgs),
    /// Dump Σ(D) after checking it against the brute-force oracle.
    Sigma(PatternArgs),
    /// Bracket the JSR and the capacity.
    Jsr(JsrArgs),
    /// Certify the capacity with an invariant polytope.
    Certify(JsrArgs),
    /// Build the pattern set of a NAE-3SAT instance.
    #[command(name = "reduce-nae3sat")]
    ReduceNae3sat(CnfArgs),
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct PatternArgs {
    /// Pattern file: one pattern per line over + - 0 x, '#' comments.
    #[arg(long, value_name = "FILE")]
    pub patterns: PathBuf,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BudgetArgs {
    #[arg(long, value_name = "FILE")]
    pub patterns: PathBuf,
    /// Largest ± expansion allowed.
    #[arg(long, default_value_t = DEFAULT_EXPANSION_BUDGET as u64)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct DeltaArgs {
    #[arg(long, value_name = "FILE")]
    pub patterns: PathBuf,
    /// Code length.
    #[arg(long)]
    pub n: usize,
    /// Search node budget.
    #[arg(long, default_value_t = brute::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct BoundsArgs {
    #[arg(long, value_name = "FILE")]
    pub patterns: PathBuf,
    /// Single code length.
    #[arg(long, conflicts_with_all = ["n_max", "eps"])]
    pub n: Option<usize>,
    /// Sweep every code length up to this one (CSV output).
    #[arg(long, conflicts_with = "eps")]
    pub n_max: Option<usize>,
    /// Pick the code length that guarantees this bracket width.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Search node budget per code length.
    #[arg(long, default_value_t = brute::DEFAULT_NODE_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct JsrArgs {
    #[arg(long, value_name = "FILE")]
    pub patterns: PathBuf,
    /// Target capacity bracket width (jsr only).
    #[arg(long, default_value_t = 1e-3)]
    pub eps: f64,
    /// Longest product enumerated.
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Products evaluated before the enumeration stops.
    #[arg(long, default_value_t = jsr::products::DEFAULT_PRODUCT_BUDGET as u64)]
    pub budget: u64,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct CnfArgs {
    /// DIMACS CNF with three literals per clause.
    #[arg(long, value_name = "FILE")]
    pub cnf: PathBuf,
}

/// Echo of a pattern set and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetEcho {
    pub patterns: Vec<String>,
    pub m: usize,
    #[serde(rename = "M")]
    pub total_len: usize,
    pub r: usize,
    pub r1: usize,
    pub r2: usize,
}

impl SetEcho {
    pub fn of(d: &PatternSet) -> Self {
        SetEcho {
            patterns: d.patterns().iter().map(|p| p.to_string()).collect(),
            m: d.m(),
            total_len: d.total_len(),
            r: d.r(),
            r1: d.r1(),
            r2: d.r2(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Input {
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub set: Option<SetEcho>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cnf: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub version: String,
    pub config: Value,
    pub tolerances: BTreeMap<String, f64>,
    pub threads: usize,
    pub wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub input: Input,
    pub payload: Value,
    pub exit_code: i32,
    pub provenance: Provenance,
}

impl Report {
    /// Pretty JSON with every real rounded to 15 significant digits.
    pub fn to_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        round_reals(&mut v);
        serde_json::to_string_pretty(&v).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad report: {e}")))
    }
}

/// Rounds to 15 significant digits.
pub fn round15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

fn round_reals(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round15(n.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_reals),
        Value::Object(map) => map.values_mut().for_each(round_reals),
        _ => {}
    }
}

/// Everything a run produced, before anything is printed.
#[derive(Clone, Debug)]
pub struct Execution {
    pub report: Report,
    pub text: String,
    /// Pattern file written by reduce-nae3sat.
    pub artifact: Option<String>,
    /// Diagnostics for stderr.
    pub notes: Vec<String>,
}

impl Execution {
    pub fn exit_code(&self) -> i32 {
        self.report.exit_code
    }
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::BudgetExhausted(_) | Error::WindowTooLong { .. } => EXIT_BUDGET,
        Error::Invariant(_) | Error::Numerical(_) => EXIT_INVARIANT,
        _ => EXIT_USAGE,
    }
}

struct Outcome {
    payload: Value,
    text: String,
    code: i32,
    artifact: Option<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn ok(payload: Value, text: String) -> Self {
        Outcome {
            payload,
            text,
            code: EXIT_OK,
            artifact: None,
            notes: Vec::new(),
        }
    }
}

fn read_set(path: &Path) -> Result<PatternSet> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    PatternSet::parse(&text)
}

fn plain(d: &PatternSet, budget: usize) -> Result<PatternSet> {
    if d.is_extended() {
        d.expand_within(budget)
    } else {
        Ok(d.clone())
    }
}

fn tolerances() -> BTreeMap<String, f64> {
    BTreeMap::from([
        ("rounding_slack".to_string(), ROUNDING_SLACK),
        ("cert_slack".to_string(), jsr::CERT_SLACK),
        ("orbit_add_tol".to_string(), jsr::ADD_TOL),
        ("prune_tol".to_string(), jsr::PRUNE_TOL),
    ])
}

fn params_line(d: &PatternSet) -> String {
    format!(
        "m={} M={} r={} r1={} r2={}",
        d.m(),
        d.total_len(),
        d.r(),
        d.r1(),
        d.r2()
    )
}

/// Runs a parsed command in a pool of the requested size.
pub fn execute(cli: &Cli) -> Result<Execution> {
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = cli.threads {
            b = b.num_threads(t.max(1));
        }
        b.build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?
    };
    let threads = pool.current_num_threads();
    let start = Instant::now();
    let (input, outcome) = pool.install(|| dispatch(&cli.command))?;
    let report = Report {
        command: command_name(&cli.command).to_string(),
        input,
        payload: outcome.payload,
        exit_code: outcome.code,
        provenance: Provenance {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: serde_json::to_value(cli).expect("config serializes"),
            tolerances: tolerances(),
            threads,
            wall_time_s: start.elapsed().as_secs_f64(),
        },
    };
    Ok(Execution {
        report,
        text: outcome.text,
        artifact: outcome.artifact,
        notes: outcome.notes,
    })
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze(_) => "analyze",
        Command::Delta(_) => "delta",
        Command::Bounds(_) => "bounds",
        Command::Positivity(_) => "positivity",
        Command::ShortestWord(_) => "shortest-word",
        Command::Sigma(_) => "sigma",
        Command::Jsr(_) => "jsr",
        Command::Certify(_) => "certify",
        Command::ReduceNae3sat(_) => "reduce-nae3sat",
    }
}

fn set_input(path: &Path) -> Result<(PatternSet, Input)> {
    let d = read_set(path)?;
    let input = Input {
        file: path.display().to_string(),
        set: Some(SetEcho::of(&d)),
        cnf: None,
    };
    Ok((d, input))
}

fn dispatch(command: &Command) -> Result<(Input, Outcome)> {
    match command {
        Command::Analyze(a) => {
            let (d, input) = set_input(&a.patterns)?;
            Ok((input, analyze(&d)?))
        }
        Command::Delta(a) => {
            let (d, input) = set_input(&a.patterns)?;
            Ok((input, delta(&d, a)?))
        }
        Command::Bounds(a) => {
            let (d, input) = set_input(&a.patterns)?;
            Ok((input, bounds_cmd(&d, a)?))
        }
        Command::Positivity(a) => {
            let (d, input) = set_input(&a.patterns)?;
            Ok((input, positivity_cmd(&d, a.budget, false)?))
        }
        Command::ShortestWord(a) => {
            let (d, input) = set_input(&a.patterns)?;
            Ok((input, positivity_cmd(&d, a.budget, true)?))
        }
        Command::Sigma(a) => {
            let (d, input) = set_input(&a.patterns)?;
            Ok((input, sigma(&d)?))
        }
        Command::Jsr(a) => {
            let (d, input) = set_input(&a.patterns)?;
            Ok((input, jsr_cmd(&d, a, CapacityMode::Bracket { eps: a.eps })?))
        }
        Command::Certify(a) => {
            let (d, input) = set_input(&a.patterns)?;
            Ok((input, jsr_cmd(&d, a, CapacityMode::Certify)?))
        }
        Command::ReduceNae3sat(a) => reduce(&a.cnf),
    }
}

fn analyze(d: &PatternSet) -> Result<Outcome> {
    let expanded = plain(d, DEFAULT_EXPANSION_BUDGET)?;
    let pos = positivity::analyze_positivity(&expanded);
    let floor = pos.positive.then(|| bounds::positive_floor(d));
    let zero_bound = bounds::zero_capacity_code_bound(d);
    let n10 = bounds::n_for_accuracy(d, 0.1)?;
    let mut text = String::new();
    writeln!(text, "patterns   {d}").unwrap();
    writeln!(text, "parameters {}", params_line(d)).unwrap();
    if d.is_extended() {
        writeln!(text, "expanded   {} plain patterns", expanded.len()).unwrap();
    }
    match &pos.verdict {
        Verdict::Admissible(w) => {
            writeln!(text, "capacity   positive, admissible word {w}").unwrap();
            writeln!(text, "floor      cap ≥ 1/(2M+m) = {:.12}", floor.unwrap_or(0.0)).unwrap();
        }
        v => {
            writeln!(text, "capacity   zero ({})", verdict_text(v)).unwrap();
            writeln!(text, "codes      δ_n ≤ {zero_bound} for every n").unwrap();
        }
    }
    writeln!(text, "accuracy   n = {n10} gives a bracket of width ≤ 0.1").unwrap();
    let payload = json!({
        "extended": d.is_extended(),
        "expanded_size": expanded.len(),
        "positive": pos.positive,
        "verdict": pos.verdict,
        "automaton_states": pos.states,
        "floor": floor,
        "zero_capacity_code_bound": zero_bound,
        "n_for_width_0_1": n10,
    });
    Ok(Outcome::ok(payload, text))
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::AllZeroPattern(p) => format!("all-zero pattern {p}"),
        Verdict::SuffixBlocked(p) => format!("{p} blocks the suffix"),
        Verdict::Unreachable => "the suffix state is unreachable".to_string(),
        Verdict::Admissible(w) => format!("admissible word {w}"),
    }
}

fn delta(d: &PatternSet, a: &DeltaArgs) -> Result<Outcome> {
    let r = brute::max_code_with_budget(a.n, d, a.budget)?;
    let words: Vec<String> = r.witness.words().iter().map(|w| w.to_string()).collect();
    let mut text = format!("delta_{} = {}\nwitness:\n", a.n, r.size);
    for w in &words {
        writeln!(text, "  {w}").unwrap();
    }
    writeln!(text, "search nodes {}", r.nodes).unwrap();
    let payload = json!({"n": a.n, "delta_n": r.size, "witness": words, "nodes": r.nodes});
    Ok(Outcome::ok(payload, text))
}

#[derive(Serialize)]
struct BoundsRow {
    n: usize,
    delta_n: u64,
    lower: f64,
    upper: f64,
}

fn bounds_cmd(d: &PatternSet, a: &BoundsArgs) -> Result<Outcome> {
    let first = (d.r1() + d.r2()).max(1);
    let (lengths, sweep): (Vec<usize>, bool) = match (a.n, a.n_max, a.eps) {
        (Some(n), _, _) => (vec![n], false),
        (None, Some(n_max), _) => ((first..=n_max).collect(), true),
        (None, None, Some(eps)) => (vec![bounds::n_for_accuracy(d, eps)?.max(first)], false),
        (None, None, None) => {
            return Err(Error::InvalidArgument("bounds needs --n, --n-max or --eps".into()))
        }
    };
    if lengths.is_empty() {
        return Err(Error::InvalidArgument(format!("--n-max is below r1 + r2 = {first}")));
    }
    let mut rows = Vec::new();
    let mut brackets = Vec::new();
    let mut specials = Vec::new();
    let mut budget_hit = None;
    for &n in &lengths {
        let size = match brute::max_code_with_budget(n, d, a.budget) {
            Ok(r) => r.size as u64,
            Err(e @ Error::BudgetExhausted(_)) if sweep && !rows.is_empty() => {
                budget_hit = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        };
        let b = bounds::theorem1_bracket(n, size, d)?;
        let special = bounds::corollary2_bracket(n, size, d).ok();
        rows.push(BoundsRow {
            n,
            delta_n: size,
            lower: b.lower,
            upper: b.upper,
        });
        brackets.push(json!({"theorem1": b, "corollary2": special}));
        specials.push(special);
    }
    let best_lower = rows.iter().map(|r| r.lower).fold(0.0, f64::max);
    let best_upper = rows.iter().map(|r| r.upper).fold(1.0, f64::min);
    let text = if sweep {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &rows {
            w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?)
            .expect("csv is utf-8")
    } else {
        let r = &rows[0];
        let mut t = format!(
            "delta_{} = {}\n{:.12} ≤ cap ≤ {:.12}\n",
            r.n, r.delta_n, r.lower, r.upper
        );
        if let Some((case, b)) = &specials[0] {
            writeln!(t, "{case:?}: {:.12} ≤ cap ≤ {:.12}", b.lower, b.upper).unwrap();
        }
        t
    };
    let mut out = Outcome::ok(
        json!({
            "rows": brackets,
            "best_lower": best_lower,
            "best_upper": best_upper,
            "partial": budget_hit.is_some(),
        }),
        text,
    );
    if let Some(msg) = budget_hit {
        out.code = EXIT_BUDGET;
        out.notes.push(msg);
    }
    Ok(out)
}

fn positivity_cmd(d: &PatternSet, budget: u64, word_only: bool) -> Result<Outcome> {
    let expanded = plain(d, budget as usize)?;
    let start = Instant::now();
    let pos = positivity::analyze_positivity(&expanded);
    let elapsed = start.elapsed().as_secs_f64();
    let word = pos.word().map(|w| w.to_string());
    let bound = 2 * expanded.total_len() + 2 * expanded.m();
    let text = match (&word, word_only) {
        (Some(w), true) => format!("{w}\n"),
        (None, true) => "none\n".to_string(),
        (Some(w), false) => format!(
            "positive capacity\nadmissible word {w} (length {}, bound {bound})\n",
            w.chars().count()
        ),
        (None, false) => format!(
            "zero capacity\nno admissible word: {}\n",
            verdict_text(&pos.verdict)
        ),
    };
    let payload = json!({
        "positive": pos.positive,
        "verdict": pos.verdict,
        "word": word,
        "word_len": word.as_ref().map(|w| w.chars().count()),
        "length_bound": bound,
        "automaton_states": pos.states,
        "decide_time_s": elapsed,
    });
    Ok(Outcome::ok(payload, text))
}

fn sigma(d: &PatternSet) -> Result<Outcome> {
    let d = plain(d, DEFAULT_EXPANSION_BUDGET)?;
    let fam = transfer::build_sigma(&d)?;
    let checks = transfer::self_check(&fam, &d, SIGMA_CHECK_N)?;
    if let Some(bad) = checks.iter().find(|c| !c.agrees()) {
        return Err(Error::Invariant(format!(
            "products give δ_{} = {} but the clique oracle gives {}",
            bad.code_len, bad.from_products, bad.from_brute
        )));
    }
    let mut text = format!(
        "Σ(D): {} matrices of size {} (window {})\n",
        fam.len(),
        fam.dim,
        fam.window
    );
    for (k, a) in fam.matrices.iter().enumerate() {
        writeln!(text, "A_{k}").unwrap();
        for i in 0..fam.dim {
            let row: String = (0..fam.dim).map(|j| if a.get(i, j) == 1 { '1' } else { '0' }).collect();
            writeln!(text, "  {row}").unwrap();
        }
    }
    for c in &checks {
        writeln!(
            text,
            "check delta_{} = {} (products) = {} (brute)",
            c.code_len, c.from_products, c.from_brute
        )
        .unwrap();
    }
    let matrices: Vec<Vec<Vec<u8>>> = fam
        .matrices
        .iter()
        .map(|a| (0..fam.dim).map(|i| (0..fam.dim).map(|j| a.get(i, j)).collect()).collect())
        .collect();
    let payload = json!({
        "window": fam.window,
        "dim": fam.dim,
        "matrices": matrices,
        "self_check": checks,
    });
    Ok(Outcome::ok(payload, text))
}

fn jsr_cmd(d: &PatternSet, a: &JsrArgs, mode: CapacityMode) -> Result<Outcome> {
    let d = plain(d, DEFAULT_EXPANSION_BUDGET)?;
    let mut opts = CapacityOptions::new(mode);
    opts.bracket.n_max = a.n_max;
    opts.bracket.product_budget = a.budget as usize;
    let r = jsr::capacity_with(&d, opts)?;
    if !r.consistent() {
        return Err(Error::Invariant(format!(
            "JSR interval [{}, {}] misses the brute-force bracket",
            r.cap_lower, r.cap_upper
        )));
    }
    let text = capacity_text(&r);
    let mut out = Outcome::ok(serde_json::to_value(&r).expect("report serializes"), text);
    match mode {
        CapacityMode::Certify if r.certificate.is_none() => {
            out.code = EXIT_BUDGET;
            out.notes
                .push("no invariant polytope within the step and vertex caps".into());
        }
        CapacityMode::Bracket { eps } if r.cap_width() > eps => {
            out.code = EXIT_BUDGET;
            out.notes.push(format!(
                "bracket width {:.3e} is above eps = {eps:e}",
                r.cap_width()
            ));
        }
        _ => {}
    }
    Ok(out)
}

fn capacity_text(r: &CapacityReport) -> String {
    let mut t = String::new();
    writeln!(t, "patterns {}", r.patterns).unwrap();
    writeln!(t, "Σ(D): {} matrices of size {}", r.sigma_size, r.dim).unwrap();
    let p = &r.products;
    writeln!(
        t,
        "products up to length {}{}: {:.12} ≤ ρ ≤ {:.12}",
        p.depth,
        if p.partial { " (partial)" } else { "" },
        p.lower,
        p.upper
    )
    .unwrap();
    writeln!(t, "best product {:?}", p.best_product).unwrap();
    if let Some(c) = &r.certificate {
        writeln!(
            t,
            "invariant polytope: {} vertices after {} steps{}, margin {:.2e}, re-verified",
            c.vertex_count(),
            c.steps,
            if c.augmented { " (augmented seed)" } else { "" },
            c.margin
        )
        .unwrap();
    }
    if let Some(it) = &r.iterate {
        writeln!(
            t,
            "polytope iteration: {} steps, {:.12} ≤ ρ ≤ {:.12}",
            it.history.len(),
            it.bracket.lower,
            it.bracket.upper
        )
        .unwrap();
    }
    writeln!(t, "ρ in [{:.15}, {:.15}]", r.jsr_lower, r.jsr_upper).unwrap();
    if let Some(b) = &r.theorem1 {
        writeln!(
            t,
            "brute-force check at n={}: {:.6} ≤ cap ≤ {:.6}",
            b.n, b.lower, b.upper
        )
        .unwrap();
    }
    match r.exact {
        Some(c) => writeln!(t, "capacity {c:.12}").unwrap(),
        None => writeln!(
            t,
            "capacity in [{:.12}, {:.12}]",
            r.cap_lower, r.cap_upper
        )
        .unwrap(),
    }
    t
}

fn reduce(path: &Path) -> Result<(Input, Outcome)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let inst = Nae3SatInstance::parse_dimacs(&text)?;
    let d = positivity::reduce_nae3sat(&inst)?;
    let positive = positivity::decide_positive_extended(&d)?;
    let satisfiable = if inst.num_vars() <= positivity::MAX_BRUTE_VARS {
        Some(positivity::nae3sat_brute(&inst)?)
    } else {
        None
    };
    if let Some(s) = satisfiable {
        if s != positive {
            return Err(Error::Invariant(format!(
                "instance is {}NAE-satisfiable but the reduced set has {} capacity",
                if s { "" } else { "not " },
                if positive { "positive" } else { "zero" }
            )));
        }
    }
    let file = d.to_file_string();
    let input = Input {
        file: path.display().to_string(),
        set: None,
        cnf: Some(json!({"vars": inst.num_vars(), "clauses": inst.clauses().len()})),
    };
    let sat_text = match satisfiable {
        Some(true) => "NAE-satisfiable",
        Some(false) => "not NAE-satisfiable",
        None => "too many variables for the brute-force check",
    };
    let note = format!(
        "{} patterns; instance {sat_text}; reduced set has {} capacity",
        d.len(),
        if positive { "positive" } else { "zero" }
    );
    let payload = json!({
        "patterns": d.patterns().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "set": SetEcho::of(&d),
        "nae_satisfiable": satisfiable,
        "positive": positive,
    });
    let mut out = Outcome::ok(payload, file.clone());
    out.artifact = Some(file);
    out.notes.push(note);
    Ok((input, out))
}

/// Parses `argv` (including the program name), runs the command, prints
/// the result, and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(exec) => match emit(&cli, &exec) {
            Ok(()) => exec.exit_code(),
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn emit(cli: &Cli, exec: &Execution) -> Result<()> {
    let rendered = if cli.json {
        let mut s = exec.report.to_json();
        s.push('\n');
        s
    } else {
        exec.text.clone()
    };
    match (&cli.out, &exec.artifact) {
        (Some(path), Some(artifact)) => {
            std::fs::write(path, artifact)?;
            print!("{rendered}");
        }
        (Some(path), None) => std::fs::write(path, rendered)?,
        (None, _) => print!("{rendered}"),
    }
    for n in &exec.notes {
        eprintln!("{n}");
    }
    Ok(())
}
