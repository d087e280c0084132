//! Command dispatch for the `stabfin` binary.
//!
//! Every invocation yields an exit code and one JSON value for standard
//! output, on success and on every error path. Exit codes: `0` success or
//! pass, `1` property violated or infeasible, `2` usage or parse error,
//! `3` resource limit exceeded.

use std::fmt::Display;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use stabfin::algebra::{AlgebraError, Element, GroupElement};
use stabfin::embedding::{
    injectivity_rank, inverse_search, mat_inverse_search, verify_coordinate_lemma, verify_support_lemma, CheckReport,
    ElementMatrix, EmbeddingError, GammaSequence, InverseOutcome, MatrixInverseOutcome, PhiMap, Side,
};
use stabfin::limits::{LimitError, Limits};
use stabfin::oper::{
    boundary_exactness_check, build_rep, convergence_report, infiniteness_witness, OperError, RepConfig,
};
use stabfin::parse::{parse_element, parse_group_element, parse_group_word, parse_word, ParseError};
use stabfin::states::{gram_psd_check, trace_f2, FreeMonoidState, FreeProductState, StateConfig, StateError};
use stabfin::words::{enumerate_words, Universe};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

/// Tolerance on `n · ‖ρ(aₙ) − ρ(δ_p)‖ − 1` in `rep-report`.
const CONVERGENCE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(name = "stabfin", version, about = "Exact and numerical checks for the bicyclic/free *-monoid embedding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
struct Common {
    /// Algebra the inputs live in: bc, sinf, bcs or f2.
    #[arg(long, default_value = "bcs")]
    universe: String,
    /// Lift every resource limit.
    #[arg(long)]
    force: bool,
    /// Cap on alternating blocks in moment computations.
    #[arg(long)]
    max_blocks: Option<usize>,
    /// JSON file whose keys mirror these flags; explicit flags win.
    #[arg(long)]
    config: Option<String>,
}

#[derive(Debug, Clone, Args)]
struct Bounds {
    /// Word length bound.
    #[arg(long)]
    m: usize,
    /// Generator index bound.
    #[arg(long)]
    k: u32,
    /// Gamma sequence: 1/n, c/n, c, c/n^2, or a list such as 1,2/5.
    #[arg(long, default_value = "1/n")]
    gamma: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the normal form of an element.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Multiply elements left to right.
    Mul {
        #[arg(required = true, num_args = 2.., allow_hyphen_values = true)]
        exprs: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Apply the involution.
    Star {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Coefficient of a word in an element.
    Coord {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Image of an element of the free *-monoid algebra under phi.
    Phi {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "1/n")]
        gamma: String,
        #[command(flatten)]
        common: Common,
    },
    /// Support property of phi on all words of length <= m.
    LemmaSupport {
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        common: Common,
    },
    /// Leading-coordinate property of phi on all words of length <= m.
    LemmaCoord {
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        common: Common,
    },
    /// Exact rank of phi on the span of words of length <= m.
    Rank {
        #[command(flatten)]
        bounds: Bounds,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a one-sided inverse with bounded support.
    InvSearch {
        /// An element, or with --matrix a square matrix written "a, b; c, d".
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value = "right")]
        side: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        k_extra: u32,
        #[arg(long)]
        matrix: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Free-product state of an element.
    Moment {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// vacuum, character, or character:z
        #[arg(long, default_value = "character")]
        state: String,
        #[command(flatten)]
        common: Common,
    },
    /// Positive semidefiniteness of the Gram matrix of words.
    Gram {
        /// Words; omit and pass --m/--k to use all words of bounded length and index.
        words: Vec<String>,
        #[arg(long, default_value = "character")]
        state: String,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Canonical trace of an element of the free group algebra.
    Trace {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Norm convergence of a_n to p in the truncated representation.
    RepReport {
        #[arg(long, default_value_t = 256)]
        dim: usize,
        #[arg(long, default_value_t = 20)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Exactness of the truncated shifts away from the boundary.
    BoundaryCheck {
        #[arg(long, default_value_t = 4)]
        l: usize,
        #[arg(long, default_value_t = 256)]
        dim: usize,
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Mul { .. } => "mul",
            Command::Star { .. } => "star",
            Command::Coord { .. } => "coord",
            Command::Phi { .. } => "phi",
            Command::LemmaSupport { .. } => "lemma-support",
            Command::LemmaCoord { .. } => "lemma-coord",
            Command::Rank { .. } => "rank",
            Command::InvSearch { .. } => "inv-search",
            Command::Moment { .. } => "moment",
            Command::Gram { .. } => "gram",
            Command::Trace { .. } => "trace",
            Command::RepReport { .. } => "rep-report",
            Command::BoundaryCheck { .. } => "boundary-check",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Normalize { common, .. }
            | Command::Mul { common, .. }
            | Command::Star { common, .. }
            | Command::Coord { common, .. }
            | Command::Phi { common, .. }
            | Command::LemmaSupport { common, .. }
            | Command::LemmaCoord { common, .. }
            | Command::Rank { common, .. }
            | Command::InvSearch { common, .. }
            | Command::Moment { common, .. }
            | Command::Gram { common, .. }
            | Command::Trace { common, .. }
            | Command::RepReport { common, .. }
            | Command::BoundaryCheck { common, .. } => common,
        }
    }
}

/// A failure carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn usage(message: impl Display) -> Self {
        Failure { code: EXIT_USAGE, kind: "usage", message: message.to_string() }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure { code: EXIT_USAGE, kind: "parse", message: e.to_string() }
    }
}

impl From<LimitError> for Failure {
    fn from(e: LimitError) -> Self {
        Failure { code: EXIT_LIMIT, kind: "limit", message: e.to_string() }
    }
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::usage(e)
    }
}

impl From<EmbeddingError> for Failure {
    fn from(e: EmbeddingError) -> Self {
        match e {
            EmbeddingError::Limit(l) => l.into(),
            other => Failure::usage(other),
        }
    }
}

impl From<StateError> for Failure {
    fn from(e: StateError) -> Self {
        match e {
            StateError::Limit(l) => l.into(),
            other => Failure::usage(other),
        }
    }
}

impl From<OperError> for Failure {
    fn from(e: OperError) -> Self {
        match e {
            OperError::Limit(l) => l.into(),
            other => Failure::usage(other),
        }
    }
}

/// Output of a successful dispatch: the exit code (0 or 1) and the JSON body.
type Outcome = Result<(i32, Value), Failure>;

/// Runs one invocation. `args[0]` is the program name. Human-readable text
/// (help, version) is returned in the JSON under `"text"`; the binary
/// prints it to standard error.
pub fn run<S: AsRef<str>>(args: &[S]) -> (i32, Value) {
    let args: Vec<String> = args.iter().map(|s| s.as_ref().to_string()).collect();
    let args = match merge_config(args) {
        Ok(a) => a,
        Err(f) => return failure_json(None, f),
    };
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, json!({ "help": true, "text": text })),
                _ => {
                    let message = text
                        .lines()
                        .take_while(|l| !l.trim().is_empty())
                        .map(str::trim)
                        .collect::<Vec<_>>()
                        .join(" ")
                        .trim_start_matches("error: ")
                        .to_string();
                    (EXIT_USAGE, json!({ "error": "usage", "message": message, "exit_code": EXIT_USAGE, "text": text }))
                }
            };
        }
    };
    let name = cli.command.name();
    match dispatch(&cli.command) {
        Ok((code, mut body)) => {
            if let Value::Object(map) = &mut body {
                map.insert("command".into(), json!(name));
            }
            (code, body)
        }
        Err(f) => failure_json(Some(name), f),
    }
}

fn failure_json(command: Option<&str>, f: Failure) -> (i32, Value) {
    let mut body = json!({ "error": f.kind, "message": f.message, "exit_code": f.code });
    if let Some(c) = command {
        body["command"] = json!(c);
    }
    (f.code, body)
}

/// Expands `--config FILE` into explicit flags, inserted after the
/// subcommand. Keys are flag names (`k_extra` and `k-extra` both work);
/// `true` becomes a bare flag, `false` and `null` are dropped, arrays of
/// strings become positional arguments under the key `args`. Flags given
/// on the command line take precedence.
fn merge_config(args: Vec<String>) -> Result<Vec<String>, Failure> {
    let mut path = None;
    let mut rest = Vec::with_capacity(args.len());
    let mut iter = args.into_iter();
    while let Some(a) = iter.next() {
        if a == "--config" {
            path = Some(iter.next().ok_or_else(|| Failure::usage("--config needs a file path"))?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let text = std::fs::read_to_string(&path).map_err(|e| Failure::usage(format!("cannot read config {path}: {e}")))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("config {path} is not valid JSON: {e}")))?;
    let Value::Object(map) = value else {
        return Err(Failure::usage(format!("config {path} must be a JSON object")));
    };
    let present = |flag: &str| rest.iter().any(|a| a == flag || a.starts_with(&format!("{flag}=")));
    let mut extra = Vec::new();
    for (key, val) in map {
        if key == "args" {
            let Value::Array(items) = val else { return Err(Failure::usage("config key args must be an array")) };
            for item in items {
                extra.push(scalar_text(&item).ok_or_else(|| Failure::usage("config args must be strings or numbers"))?);
            }
            continue;
        }
        let flag = format!("--{}", key.replace('_', "-"));
        if present(&flag) {
            continue;
        }
        match val {
            Value::Bool(true) => extra.push(flag),
            Value::Bool(false) | Value::Null => {}
            other => {
                let text =
                    scalar_text(&other).ok_or_else(|| Failure::usage(format!("config key {key} must be a scalar")))?;
                extra.extend([flag, text]);
            }
        }
    }
    let at = rest.len().min(2);
    rest.splice(at..at, extra);
    Ok(rest)
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn limits(common: &Common) -> Limits {
    let mut lim = if common.force { Limits::unbounded() } else { Limits::default() };
    if let Some(b) = common.max_blocks {
        lim.max_blocks = b;
    }
    lim
}

fn universe(common: &Common) -> Result<Universe, Failure> {
    common.universe.parse().map_err(Failure::usage)
}

/// An element of a monoid algebra or of the free group algebra.
enum AnyElement {
    Monoid(Element),
    Group(GroupElement),
}

impl AnyElement {
    fn parse(text: &str, universe: Universe) -> Result<Self, Failure> {
        Ok(match universe {
            Universe::FreeGroup => AnyElement::Group(parse_group_element(text)?),
            u => AnyElement::Monoid(parse_element(text, u)?),
        })
    }

    fn mul(&self, rhs: &AnyElement) -> Result<AnyElement, Failure> {
        Ok(match (self, rhs) {
            (AnyElement::Monoid(a), AnyElement::Monoid(b)) => AnyElement::Monoid(a.try_mul(b)?),
            (AnyElement::Group(a), AnyElement::Group(b)) => AnyElement::Group(a.try_mul(b)?),
            _ => return Err(Failure::usage("cannot mix free-group and monoid elements")),
        })
    }

    fn star(&self) -> AnyElement {
        match self {
            AnyElement::Monoid(a) => AnyElement::Monoid(a.star()),
            AnyElement::Group(a) => AnyElement::Group(a.star()),
        }
    }

    fn render(&self) -> String {
        match self {
            AnyElement::Monoid(a) => a.to_string(),
            AnyElement::Group(a) => a.to_string(),
        }
    }
}

fn check_json(report: CheckReport) -> (i32, Value) {
    let code = if report.result.passed() { EXIT_OK } else { EXIT_VIOLATED };
    (code, serde_json::to_value(report).expect("reports serialize"))
}

fn gamma(text: &str) -> Result<GammaSequence, Failure> {
    Ok(text.parse::<GammaSequence>()?)
}

fn state_config(text: &str) -> Result<StateConfig, Failure> {
    Ok(StateConfig { s_state: text.parse::<FreeMonoidState>()? })
}

fn dispatch(cmd: &Command) -> Outcome {
    let common = cmd.common();
    let lim = limits(common);
    match cmd {
        Command::Normalize { expr, .. } => {
            let x = AnyElement::parse(expr, universe(common)?)?;
            Ok((EXIT_OK, json!({ "universe": common.universe, "result": x.render() })))
        }
        Command::Mul { exprs, .. } => {
            let u = universe(common)?;
            let mut acc = AnyElement::parse(&exprs[0], u)?;
            for e in &exprs[1..] {
                acc = acc.mul(&AnyElement::parse(e, u)?)?;
            }
            Ok((EXIT_OK, json!({ "universe": common.universe, "result": acc.render() })))
        }
        Command::Star { expr, .. } => {
            let x = AnyElement::parse(expr, universe(common)?)?;
            Ok((EXIT_OK, json!({ "universe": common.universe, "result": x.star().render() })))
        }
        Command::Coord { expr, word, .. } => {
            let u = universe(common)?;
            let c = match AnyElement::parse(expr, u)? {
                AnyElement::Group(x) => x.coeff(&parse_group_word(word)?),
                AnyElement::Monoid(x) => x.coordinate(&parse_word(word, u)?)?,
            };
            Ok((EXIT_OK, json!({ "universe": common.universe, "word": word, "result": c.to_string() })))
        }
        Command::Phi { expr, gamma: g, .. } => {
            let phi = PhiMap::new(gamma(g)?);
            let x = parse_element(expr, Universe::Free)?;
            let y = phi.apply(&x)?;
            Ok((EXIT_OK, json!({ "gamma": phi.gamma.to_string(), "input": x.to_string(), "result": y.to_string() })))
        }
        Command::LemmaSupport { bounds, .. } => {
            Ok(check_json(verify_support_lemma(bounds.m, bounds.k, &gamma(&bounds.gamma)?, &lim)?))
        }
        Command::LemmaCoord { bounds, .. } => {
            Ok(check_json(verify_coordinate_lemma(bounds.m, bounds.k, &gamma(&bounds.gamma)?, &lim)?))
        }
        Command::Rank { bounds, .. } => {
            Ok(check_json(injectivity_rank(bounds.m, bounds.k, &gamma(&bounds.gamma)?, &lim)?))
        }
        Command::InvSearch { expr, side, m, k_extra, matrix, .. } => {
            let u = universe(common)?;
            let side: Side = side.parse().map_err(Failure::usage)?;
            Limits::check("m", *m, lim.max_len)?;
            let started = Instant::now();
            let base = json!({ "universe": common.universe, "side": side, "m": m, "k_extra": k_extra });
            let (code, mut body) = if *matrix {
                let a = parse_matrix(expr, u)?;
                match mat_inverse_search(&a, side, *m, *k_extra, &lim)? {
                    MatrixInverseOutcome::Found(x) => (EXIT_OK, json!({ "result": "found", "inverse": x.to_string() })),
                    MatrixInverseOutcome::Infeasible(c) => {
                        (EXIT_VIOLATED, json!({ "result": "infeasible", "certificate": c }))
                    }
                }
            } else {
                let a = parse_element(expr, u)?;
                match inverse_search(&a, side, *m, *k_extra, &lim)? {
                    InverseOutcome::Found(x) => (EXIT_OK, json!({ "result": "found", "inverse": x.to_string() })),
                    InverseOutcome::Infeasible(c) => {
                        (EXIT_VIOLATED, json!({ "result": "infeasible", "certificate": c }))
                    }
                }
            };
            merge(&mut body, base);
            body["elapsed_ms"] = json!(started.elapsed().as_millis() as u64);
            Ok((code, body))
        }
        Command::Moment { expr, state, .. } => {
            let cfg = state_config(state)?;
            let x = parse_element(expr, universe(common)?)?;
            let mu = FreeProductState::new(cfg.clone(), &lim);
            let value = mu.moment(&x)?;
            Ok((EXIT_OK, json!({ "state_config": cfg, "input": x.to_string(), "result": value.to_string() })))
        }
        Command::Gram { words, state, m, k, .. } => {
            let u = universe(common)?;
            let list = match (words.is_empty(), m) {
                (false, None) if k.is_none() => {
                    words.iter().map(|w| parse_word(w, u)).collect::<Result<Vec<_>, _>>()?
                }
                (true, Some(m)) => enumerate_words(*m, k.unwrap_or(0), u, &lim)?,
                _ => return Err(Failure::usage("gram takes either explicit words or --m [--k], not both")),
            };
            if list.is_empty() {
                return Err(Failure::usage("gram needs at least one word"));
            }
            let mut seen = std::collections::HashSet::new();
            if let Some(dup) = list.iter().find(|w| !seen.insert(*w)) {
                return Err(Failure::usage(format!("word {dup} is listed twice")));
            }
            Limits::check("gram entries", list.len() * list.len(), lim.max_matrix_entries)?;
            let mu = FreeProductState::new(state_config(state)?, &lim);
            let report = gram_psd_check(&list, &mu)?;
            let code = if report.psd { EXIT_OK } else { EXIT_VIOLATED };
            Ok((code, serde_json::to_value(report).expect("reports serialize")))
        }
        Command::Trace { expr, .. } => {
            let x = parse_group_element(expr)?;
            Ok((EXIT_OK, json!({ "universe": "f2", "input": x.to_string(), "result": trace_f2(&x).to_string() })))
        }
        Command::RepReport { dim, n, .. } => {
            let rep = build_rep(&RepConfig { dim: *dim, max_index: *n }, &lim)?;
            let report = convergence_report(*n, &rep)?;
            let ok = report
                .rows
                .iter()
                .all(|r| r.converged && (f64::from(r.n) * r.norm_an_minus_p - 1.0).abs() <= CONVERGENCE_TOLERANCE);
            let mut body = serde_json::to_value(&report).expect("reports serialize");
            body["result"] = json!(if ok { "pass" } else { "fail" });
            body["witness"] = serde_json::to_value(infiniteness_witness(&rep)).expect("reports serialize");
            Ok((if ok { EXIT_OK } else { EXIT_VIOLATED }, body))
        }
        Command::BoundaryCheck { l, dim, .. } => {
            let rep = build_rep(&RepConfig { dim: *dim, max_index: 0 }, &lim)?;
            let report = boundary_exactness_check(*l, &rep)?;
            let code = if report.passed { EXIT_OK } else { EXIT_VIOLATED };
            let mut body = serde_json::to_value(&report).expect("reports serialize");
            body["result"] = json!(if report.passed { "pass" } else { "fail" });
            Ok((code, body))
        }
    }
}

fn merge(body: &mut Value, extra: Value) {
    if let (Value::Object(b), Value::Object(e)) = (body, extra) {
        for (k, v) in e {
            b.entry(k).or_insert(v);
        }
    }
}

/// `"a, b; c, d"`: rows separated by `;`, entries by `,`.
fn parse_matrix(text: &str, universe: Universe) -> Result<ElementMatrix, Failure> {
    let rows: Vec<Vec<&str>> =
        text.trim().trim_start_matches('[').trim_end_matches(']').split(';').map(|r| r.split(',').collect()).collect();
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(Failure::usage(format!("matrix {text:?} is not square")));
    }
    let entries = rows.iter().flatten().map(|e| parse_element(e.trim(), universe)).collect::<Result<Vec<_>, _>>()?;
    Ok(ElementMatrix::new(n, n, universe, entries)?)
}
