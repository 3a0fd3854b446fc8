//! Request parsing, dispatch and rendering for the `hurwitzcalc` binary.
//!
//! A request names a variety (complete intersection, toric, game or graph)
//! and a query. It arrives either as one JSON document or through shorthand
//! flags, and the answer is printed as a plain table or as canonical JSON.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use hurwitz_core::apps::{
    game_to_toric, graph_degree_matrix, graph_hurwitz_degree, graph_multidegree, nash_hurwitz_degree, AppsError,
    GameSpec, GraphSpec,
};
use hurwitz_core::chowring::{Ambient, ChowClass, ExponentVector};
use hurwitz_core::ci::{
    chow_degrees, genus_ci_with_mode, genus_polynomial_ci, hurwitz_degree_ci, is_curve_section, multidegree_ci,
    CiError, DegreeMatrix, DegreeReport, GenusMode,
};
use hurwitz_core::polytope::{volume_polynomial, VolumeForm};
use hurwitz_core::toric::{
    is_curve_section_toric, toric_genus, toric_genus_polynomial, toric_hurwitz_degree, toric_multidegree, ToricError,
    ToricSpec,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Rejected(String),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Rejected(_) => 3,
            CliError::Validation(_) | CliError::Io(_) => 2,
        }
    }
}

impl From<CiError> for CliError {
    fn from(e: CiError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<ToricError> for CliError {
    fn from(e: ToricError) -> Self {
        if e.is_rejection() {
            CliError::Rejected(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

impl From<AppsError> for CliError {
    fn from(e: AppsError) -> Self {
        match e {
            AppsError::Toric(t) => t.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Query {
    Multidegree,
    Genus,
    Hurwitz,
    Chow,
}

impl Query {
    fn name(self) -> &'static str {
        match self {
            Query::Multidegree => "multidegree",
            Query::Genus => "genus",
            Query::Hurwitz => "hurwitz",
            Query::Chow => "chow",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Raw,
    Gated,
}

impl From<ModeArg> for GenusMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Raw => GenusMode::Raw,
            ModeArg::Gated => GenusMode::Gated,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpecInput {
    CompleteIntersection { ambient: Vec<u32>, degrees: Vec<Vec<u32>> },
    Toric { dim: usize, supports: Vec<Vec<Vec<i64>>> },
    Game { format: Vec<u32> },
    Graph { vertices: usize, edges: Vec<[usize; 2]> },
}

impl SpecInput {
    fn kind(&self) -> &'static str {
        match self {
            SpecInput::CompleteIntersection { .. } => "complete_intersection",
            SpecInput::Toric { .. } => "toric",
            SpecInput::Game { .. } => "game",
            SpecInput::Graph { .. } => "graph",
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OptionsInput {
    genus_mode: Option<ModeArg>,
    output: Option<OutputFormat>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RequestInput {
    schema: u32,
    spec: SpecInput,
    query: Option<Query>,
    alpha: Option<Vec<u32>>,
    beta: Option<Vec<u32>>,
    #[serde(default)]
    options: OptionsInput,
}

/// A fully shape-checked request.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub spec: SpecInput,
    pub query: Query,
    pub alpha: Option<Vec<u32>>,
    pub beta: Option<Vec<u32>>,
    pub genus_mode: Option<GenusMode>,
    pub output: OutputFormat,
}

#[derive(Debug, Parser)]
#[command(
    name = "hurwitzcalc",
    version,
    about = "Degrees of multigraded Hurwitz and Chow forms"
)]
pub struct Args {
    /// What to compute.
    #[arg(value_enum)]
    pub query: Option<Query>,
    #[arg(long = "query", value_enum, conflicts_with = "query")]
    pub query_flag: Option<Query>,
    /// JSON request file; stdin is read when no spec flag is given.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Projective dimensions, e.g. `2,2`.
    #[arg(long)]
    pub ambient: Option<String>,
    /// Degree matrix with rows separated by `;`, e.g. `2,1;3,4`.
    #[arg(long)]
    pub degree_matrix: Option<String>,
    /// Toric data as JSON: `{"dim": d, "supports": [[[..], ..], ..]}`.
    #[arg(long)]
    pub toric: Option<String>,
    /// Game format as strategy counts, e.g. `2,2,2`.
    #[arg(long)]
    pub game: Option<String>,
    /// Graph as `vertices:edges`, e.g. `3:1-2,2-3`.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| invalid(format!("bad {what} entry `{t}`"))))
        .collect()
}

fn parse_graph(s: &str) -> Result<SpecInput, CliError> {
    let (v, e) = s.split_once(':').unwrap_or((s, ""));
    let vertices = v
        .trim()
        .parse()
        .map_err(|_| invalid(format!("bad vertex count `{v}`")))?;
    let mut edges = Vec::new();
    for t in e.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = t.split_once('-').ok_or_else(|| invalid(format!("bad edge `{t}`")))?;
        let a = a.trim().parse().map_err(|_| invalid(format!("bad edge `{t}`")))?;
        let b = b.trim().parse().map_err(|_| invalid(format!("bad edge `{t}`")))?;
        edges.push([a, b]);
    }
    Ok(SpecInput::Graph { vertices, edges })
}

/// Parses a JSON request document.
pub fn parse_request(text: &str) -> Result<Request, CliError> {
    let input: RequestInput = serde_json::from_str(text).map_err(|e| invalid(format!("malformed request: {e}")))?;
    if input.schema != SCHEMA_VERSION {
        return Err(invalid(format!("unsupported schema version {}", input.schema)));
    }
    Ok(Request {
        spec: input.spec,
        query: input.query.unwrap_or(Query::Multidegree),
        alpha: input.alpha,
        beta: input.beta,
        genus_mode: input.options.genus_mode.map(Into::into),
        output: input.options.output.unwrap_or_default(),
    })
}

/// Builds a request from flags, reading JSON from `--input` or `stdin` when
/// no shorthand spec flag is present. Flags override document fields.
pub fn request_from_args(args: &Args, stdin: impl Read) -> Result<Request, CliError> {
    let shorthand = shorthand_spec(args)?;
    let mut req = match shorthand {
        Some(spec) => Request {
            spec,
            query: Query::Multidegree,
            alpha: None,
            beta: None,
            genus_mode: None,
            output: OutputFormat::Table,
        },
        None => {
            let text = match &args.input {
                Some(path) => std::fs::read_to_string(path)?,
                None => {
                    let mut s = String::new();
                    let mut stdin = stdin;
                    stdin.read_to_string(&mut s)?;
                    s
                }
            };
            parse_request(&text)?
        }
    };
    if let Some(q) = args.query.or(args.query_flag) {
        req.query = q;
    }
    if let Some(a) = &args.alpha {
        req.alpha = Some(parse_list(a, "alpha")?);
    }
    if let Some(b) = &args.beta {
        req.beta = Some(parse_list(b, "beta")?);
    }
    if let Some(m) = args.mode {
        req.genus_mode = Some(m.into());
    }
    if let Some(f) = args.format {
        req.output = f;
    }
    Ok(req)
}

fn shorthand_spec(args: &Args) -> Result<Option<SpecInput>, CliError> {
    let given = [
        args.degree_matrix.is_some(),
        args.toric.is_some(),
        args.game.is_some(),
        args.graph.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if given > 1 {
        return Err(invalid("give at most one of --degree-matrix, --toric, --game, --graph"));
    }
    if given == 1 && args.input.is_some() {
        return Err(invalid("--input cannot be combined with a shorthand spec flag"));
    }
    if args.ambient.is_some() && args.degree_matrix.is_none() {
        return Err(invalid("--ambient needs --degree-matrix"));
    }
    if let Some(m) = &args.degree_matrix {
        let ambient = args
            .ambient
            .as_deref()
            .ok_or_else(|| invalid("--degree-matrix needs --ambient"))?;
        let degrees = m
            .split(';')
            .map(|row| parse_list(row, "degree matrix"))
            .collect::<Result<_, _>>()?;
        return Ok(Some(SpecInput::CompleteIntersection {
            ambient: parse_list(ambient, "ambient")?,
            degrees,
        }));
    }
    if let Some(t) = &args.toric {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct ToricInput {
            dim: usize,
            supports: Vec<Vec<Vec<i64>>>,
        }
        let t: ToricInput = serde_json::from_str(t).map_err(|e| invalid(format!("malformed --toric: {e}")))?;
        return Ok(Some(SpecInput::Toric {
            dim: t.dim,
            supports: t.supports,
        }));
    }
    if let Some(g) = &args.game {
        return Ok(Some(SpecInput::Game {
            format: parse_list(g, "game format")?,
        }));
    }
    if let Some(g) = &args.graph {
        return Ok(Some(parse_graph(g)?));
    }
    Ok(None)
}

enum Variety {
    Ci { n: Ambient, b: DegreeMatrix },
    Toric(ToricSpec),
    Game { game: GameSpec, toric: ToricSpec },
    Graph(GraphSpec),
}

impl Variety {
    fn build(spec: &SpecInput) -> Result<Self, CliError> {
        Ok(match spec {
            SpecInput::CompleteIntersection { ambient, degrees } => {
                let n = Ambient::new(ambient.clone()).map_err(CiError::from)?;
                let b = DegreeMatrix::new(degrees.clone())?;
                multidegree_ci(&n, &b)?;
                Variety::Ci { n, b }
            }
            SpecInput::Toric { dim, supports } => Variety::Toric(ToricSpec::from_points(*dim, supports.clone())?),
            SpecInput::Game { format } => {
                let game = GameSpec::from_format(format)?;
                let toric = game_to_toric(&game)?;
                Variety::Game { game, toric }
            }
            SpecInput::Graph { vertices, edges } => {
                let edges: Vec<(usize, usize)> = edges.iter().map(|&[a, b]| (a, b)).collect();
                Variety::Graph(GraphSpec::new(*vertices, &edges)?)
            }
        })
    }

    fn ambient(&self) -> Ambient {
        match self {
            Variety::Ci { n, .. } => n.clone(),
            Variety::Toric(t) | Variety::Game { toric: t, .. } => t.ambient().clone(),
            Variety::Graph(g) => g.ambient(),
        }
    }

    fn codim(&self) -> u32 {
        match self {
            Variety::Ci { b, .. } => b.codim(),
            Variety::Toric(t) | Variety::Game { toric: t, .. } => t.codim(),
            Variety::Graph(g) => g.codim(),
        }
    }

    fn default_mode(&self) -> GenusMode {
        match self {
            Variety::Ci { .. } | Variety::Graph(_) => GenusMode::Raw,
            Variety::Toric(_) | Variety::Game { .. } => GenusMode::Gated,
        }
    }

    fn multidegree(&self) -> Result<ChowClass, CliError> {
        Ok(match self {
            Variety::Ci { n, b } => multidegree_ci(n, b)?,
            Variety::Toric(t) | Variety::Game { toric: t, .. } => toric_multidegree(t)?,
            Variety::Graph(g) => graph_multidegree(g),
        })
    }

    fn genus_polynomial(&self, mode: GenusMode) -> Result<ChowClass, CliError> {
        Ok(match self {
            Variety::Ci { n, b } => genus_polynomial_ci(n, b, mode)?,
            Variety::Toric(t) | Variety::Game { toric: t, .. } => toric_genus_polynomial(t, mode)?,
            Variety::Graph(g) => {
                let (n, b) = graph_degree_matrix(g);
                genus_polynomial_ci(&n, &b, mode)?
            }
        })
    }

    fn genus(&self, beta: &ExponentVector, mode: GenusMode) -> Result<(BigInt, bool), CliError> {
        Ok(match self {
            Variety::Ci { n, b } => (genus_ci_with_mode(n, b, beta, mode)?, is_curve_section(n, b, beta)?),
            Variety::Toric(t) | Variety::Game { toric: t, .. } => {
                (toric_genus(t, beta, mode)?, is_curve_section_toric(t, beta)?)
            }
            Variety::Graph(g) => {
                let (n, b) = graph_degree_matrix(g);
                (genus_ci_with_mode(&n, &b, beta, mode)?, is_curve_section(&n, &b, beta)?)
            }
        })
    }

    fn hurwitz(&self, alpha: &ExponentVector, mode: GenusMode) -> Result<DegreeReport, CliError> {
        Ok(match self {
            Variety::Ci { n, b } => hurwitz_degree_ci(n, b, alpha, mode)?,
            Variety::Toric(t) => toric_hurwitz_degree(t, alpha)?,
            Variety::Game { game, toric } => {
                if game.alpha_star().as_ref() == Some(alpha) {
                    nash_hurwitz_degree(game)?
                } else {
                    toric_hurwitz_degree(toric, alpha)?
                }
            }
            Variety::Graph(g) => graph_hurwitz_degree(g, alpha, mode)?,
        })
    }

    fn volume_polynomial(&self) -> Result<Option<VolumeForm>, CliError> {
        Ok(match self {
            Variety::Toric(t) | Variety::Game { toric: t, .. } => {
                Some(volume_polynomial(t.polytopes()).map_err(ToricError::from)?)
            }
            _ => None,
        })
    }
}

/// One line of a Hurwitz sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub index: usize,
    pub report: DegreeReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Multidegree {
        class: ChowClass,
        volume_polynomial: Option<VolumeForm>,
    },
    GenusPolynomial {
        mode: GenusMode,
        class: ChowClass,
    },
    Genus {
        mode: GenusMode,
        beta: ExponentVector,
        genus: BigInt,
        curve: bool,
    },
    Report(DegreeReport),
    Sweep(Vec<SweepRow>),
    ChowDegrees(Vec<(ExponentVector, Vec<BigInt>)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub query: Query,
    pub spec_kind: &'static str,
    pub ambient: Vec<u32>,
    pub codim: u32,
    pub outcome: Outcome,
}

fn exponent(v: &[u32], len: usize, what: &str) -> Result<ExponentVector, CliError> {
    if v.len() != len {
        return Err(invalid(format!("{what} has {} entries, expected {len}", v.len())));
    }
    Ok(ExponentVector::new(v.to_vec()))
}

/// Evaluates a request.
pub fn run(req: &Request) -> Result<Response, CliError> {
    let variety = Variety::build(&req.spec)?;
    let n = variety.ambient();
    let l = n.factors();
    let mode = req.genus_mode.unwrap_or_else(|| variety.default_mode());
    if req.alpha.is_some() && !matches!(req.query, Query::Hurwitz | Query::Chow) {
        return Err(invalid(format!("alpha is not used by the {} query", req.query.name())));
    }
    if req.beta.is_some() && req.query != Query::Genus {
        return Err(invalid(format!("beta is not used by the {} query", req.query.name())));
    }
    let alpha = req.alpha.as_deref().map(|a| exponent(a, l, "alpha")).transpose()?;
    let beta = req.beta.as_deref().map(|b| exponent(b, l, "beta")).transpose()?;

    let outcome = match req.query {
        Query::Multidegree => Outcome::Multidegree {
            class: variety.multidegree()?,
            volume_polynomial: variety.volume_polynomial()?,
        },
        Query::Genus => match beta {
            None => Outcome::GenusPolynomial {
                mode,
                class: variety.genus_polynomial(mode)?,
            },
            Some(beta) => {
                let (genus, curve) = variety.genus(&beta, mode)?;
                Outcome::Genus {
                    mode,
                    beta,
                    genus,
                    curve,
                }
            }
        },
        Query::Hurwitz => match alpha {
            Some(alpha) => Outcome::Report(variety.hurwitz(&alpha, mode)?),
            None => {
                let md = variety.multidegree()?;
                let rows = md
                    .terms()
                    .enumerate()
                    .map(|(index, (a, _))| {
                        Ok(SweepRow {
                            index,
                            report: variety.hurwitz(a, mode)?,
                        })
                    })
                    .collect::<Result<_, CliError>>()?;
                Outcome::Sweep(rows)
            }
        },
        Query::Chow => {
            let md = variety.multidegree()?;
            let c = variety.codim();
            if c == 0 {
                return Err(invalid("Chow forms need positive codimension"));
            }
            let rows = match alpha {
                Some(a) => vec![(a.clone(), chow_degrees(&md, &a)?)],
                None => n
                    .exponents_of_degree(c - 1)
                    .into_iter()
                    .map(|a| {
                        let d = chow_degrees(&md, &a)?;
                        Ok((a, d))
                    })
                    .filter(|r: &Result<(ExponentVector, Vec<BigInt>), CliError>| {
                        r.as_ref()
                            .map_or(true, |(_, d)| d.iter().any(|x| x != &BigInt::from(0)))
                    })
                    .collect::<Result<_, CliError>>()?,
            };
            Outcome::ChowDegrees(rows)
        }
    };
    Ok(Response {
        query: req.query,
        spec_kind: req.spec.kind(),
        ambient: n.dims().to_vec(),
        codim: variety.codim(),
        outcome,
    })
}

/// Renders a response in the requested format, newline-terminated.
pub fn render(resp: &Response, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => render_table(resp),
        OutputFormat::Json => render_json(resp),
    }
}

fn degree_list(v: &[BigInt]) -> String {
    let items: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn flag_list(r: &DegreeReport) -> String {
    if r.flags.is_empty() {
        "none".to_string()
    } else {
        r.flags.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

fn ambient_text(dims: &[u32]) -> String {
    dims.iter().map(|d| format!("P^{d}")).collect::<Vec<_>>().join(" x ")
}

fn grid(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        format!("{}\n", padded.join(" | ").trim_end())
    };
    let mut out = line(header.to_vec());
    out.push_str(&format!(
        "{}\n",
        widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().join("-+-")
    ));
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn render_table(resp: &Response) -> String {
    let mut out = format!(
        "ambient: {}\ncodimension: {}\n",
        ambient_text(&resp.ambient),
        resp.codim
    );
    match &resp.outcome {
        Outcome::Multidegree {
            class,
            volume_polynomial,
        } => {
            out.push_str(&format!("multidegree: {class}\n"));
            if let Some(v) = volume_polynomial {
                out.push_str(&format!("volume polynomial: {v}\n"));
            }
        }
        Outcome::GenusPolynomial { mode, class } => {
            out.push_str(&format!("genus polynomial ({mode}): {class}\n"));
        }
        Outcome::Genus {
            mode,
            beta,
            genus,
            curve,
        } => {
            out.push_str(&format!("beta: {}\n", beta.monomial_string()));
            out.push_str(&format!("genus ({mode}): {genus}\n"));
            out.push_str(&format!("curve section: {}\n", if *curve { "yes" } else { "no" }));
        }
        Outcome::Report(r) => {
            out.push_str(&format!("alpha: {}\n", r.alpha.monomial_string()));
            out.push_str(&format!("delta: {}\n", r.delta));
            out.push_str(&format!("genus vector: {}\n", degree_list(&r.genus_vector)));
            out.push_str(&format!("hurwitz degree: {}\n", degree_list(&r.hurwitz_degree)));
            out.push_str(&format!("flags: {}\n", flag_list(r)));
            if let Some(note) = &r.note {
                out.push_str(&format!("note: {note}\n"));
            }
        }
        Outcome::Sweep(rows) => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    vec![
                        row.index.to_string(),
                        row.report.delta.to_string(),
                        row.report.alpha.monomial_string(),
                        degree_list(&row.report.hurwitz_degree),
                        degree_list(&row.report.genus_vector),
                        flag_list(&row.report),
                    ]
                })
                .collect();
            out.push_str(&grid(
                &["index", "delta", "alpha", "hurwitz degree", "genus vector", "flags"],
                &cells,
            ));
            if let Some(note) = rows.first().and_then(|r| r.report.note.as_ref()) {
                out.push_str(&format!("note: {note}\n"));
            }
        }
        Outcome::ChowDegrees(rows) => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|(a, d)| vec![a.monomial_string(), degree_list(d)])
                .collect();
            out.push_str(&grid(&["alpha", "chow degrees"], &cells));
        }
    }
    out
}

fn int(x: &BigInt) -> Value {
    Value::Number(
        x.to_string()
            .parse::<Number>()
            .expect("integers are valid JSON numbers"),
    )
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

fn exps(e: &ExponentVector) -> Value {
    json!(e.as_slice())
}

fn rational(q: &BigRational) -> Value {
    if q.is_integer() {
        int(&q.to_integer())
    } else {
        Value::String(format!("{}/{}", q.numer(), q.denom()))
    }
}

fn class_json(c: &ChowClass) -> Value {
    let terms: Vec<Value> = c
        .terms()
        .map(|(e, k)| json!({"exponent": exps(e), "coefficient": int(k)}))
        .collect();
    json!({"text": c.to_string(), "terms": terms})
}

fn report_json(r: &DegreeReport) -> Value {
    json!({
        "alpha": exps(&r.alpha),
        "monomial": r.alpha.monomial_string(),
        "delta": int(&r.delta),
        "genus_vector": ints(&r.genus_vector),
        "hurwitz_degree": ints(&r.hurwitz_degree),
        "flags": r.flags.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "note": r.note,
    })
}

fn result_json(outcome: &Outcome) -> Value {
    match outcome {
        Outcome::Multidegree {
            class,
            volume_polynomial,
        } => {
            let mut m = Map::new();
            m.insert("multidegree".into(), class_json(class));
            if let Some(v) = volume_polynomial {
                let terms: Vec<Value> = v
                    .terms()
                    .map(|(e, q)| json!({"exponent": exps(e), "coefficient": rational(q)}))
                    .collect();
                m.insert(
                    "volume_polynomial".into(),
                    json!({"text": v.to_string(), "terms": terms}),
                );
            }
            Value::Object(m)
        }
        Outcome::GenusPolynomial { mode, class } => {
            json!({"genus_mode": mode.to_string(), "genus_polynomial": class_json(class)})
        }
        Outcome::Genus {
            mode,
            beta,
            genus,
            curve,
        } => json!({
            "beta": exps(beta),
            "genus": int(genus),
            "genus_mode": mode.to_string(),
            "curve_section": curve,
        }),
        Outcome::Report(r) => json!({"report": report_json(r)}),
        Outcome::Sweep(rows) => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|row| {
                    let mut v = report_json(&row.report);
                    v["index"] = json!(row.index);
                    v
                })
                .collect();
            json!({"rows": rows})
        }
        Outcome::ChowDegrees(rows) => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|(a, d)| json!({"alpha": exps(a), "monomial": a.monomial_string(), "chow_degrees": ints(d)}))
                .collect();
            json!({"rows": rows})
        }
    }
}

/// Canonical JSON: sorted keys, two-space indentation, trailing newline.
pub fn render_json(resp: &Response) -> String {
    let v = json!({
        "schema": SCHEMA_VERSION,
        "query": resp.query.name(),
        "spec_kind": resp.spec_kind,
        "ambient": resp.ambient,
        "codimension": resp.codim,
        "result": result_json(&resp.outcome),
    });
    canonical(&v)
}

/// Re-serializes any JSON value in the canonical layout.
pub fn canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Runs a full invocation and returns `(exit code, stdout, stderr)`.
pub fn execute(args: &Args, stdin: impl Read) -> (i32, String, String) {
    let result = request_from_args(args, stdin).and_then(|req| Ok((run(&req)?, req.output)));
    match result {
        Ok((resp, format)) => (0, render(&resp, format), String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ci_request(query: Query) -> Request {
        Request {
            spec: SpecInput::CompleteIntersection {
                ambient: vec![2, 2],
                degrees: vec![vec![2, 1], vec![3, 4]],
            },
            query,
            alpha: None,
            beta: None,
            genus_mode: None,
            output: OutputFormat::Table,
        }
    }

    #[test]
    fn parses_documents() {
        let req = parse_request(
            r#"{"schema":1,"spec":{"kind":"graph","vertices":3,"edges":[[1,2],[2,3]]},"query":"hurwitz","options":{"output":"json"}}"#,
        )
        .unwrap();
        assert_eq!(req.query, Query::Hurwitz);
        assert_eq!(req.output, OutputFormat::Json);
        assert!(matches!(req.spec, SpecInput::Graph { vertices: 3, .. }));
    }

    #[test]
    fn rejects_bad_documents() {
        for doc in [
            "{",
            r#"{"schema":2,"spec":{"kind":"game","format":[2,2]}}"#,
            r#"{"schema":1,"spec":{"kind":"game","format":[2,2],"extra":1}}"#,
            r#"{"schema":1,"spec":{"kind":"circle"}}"#,
            r#"{"schema":1,"spec":{"kind":"game","format":[2,2]},"query":"volume"}"#,
        ] {
            assert_eq!(parse_request(doc).unwrap_err().exit_code(), 2, "{doc}");
        }
    }

    #[test]
    fn shorthand_graph() {
        assert_eq!(
            parse_graph("3:1-2, 2-3").unwrap(),
            SpecInput::Graph {
                vertices: 3,
                edges: vec![[1, 2], [2, 3]]
            }
        );
        assert_eq!(
            parse_graph("1").unwrap(),
            SpecInput::Graph {
                vertices: 1,
                edges: vec![]
            }
        );
        assert!(parse_graph("3:1+2").is_err());
    }

    #[test]
    fn dispatch_ci() {
        let resp = run(&ci_request(Query::Genus)).unwrap();
        match resp.outcome {
            Outcome::GenusPolynomial { class, .. } => assert_eq!(class.to_string(), "21*T1^2*T2 + 18*T1*T2^2"),
            other => panic!("{other:?}"),
        }
        let mut req = ci_request(Query::Hurwitz);
        req.alpha = Some(vec![1, 1]);
        match run(&req).unwrap().outcome {
            Outcome::Report(r) => assert_eq!(r.hurwitz_degree, vec![BigInt::from(62), BigInt::from(56)]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn error_codes() {
        let mut req = ci_request(Query::Hurwitz);
        req.alpha = Some(vec![1, 1, 1]);
        assert_eq!(run(&req).unwrap_err().exit_code(), 2);
        let mut req = ci_request(Query::Multidegree);
        req.beta = Some(vec![2, 1]);
        assert_eq!(run(&req).unwrap_err().exit_code(), 2);
        let req = Request {
            spec: SpecInput::Toric {
                dim: 2,
                supports: vec![vec![vec![0, 0], vec![2, 0], vec![0, 1]]],
            },
            ..ci_request(Query::Multidegree)
        };
        assert_eq!(run(&req).unwrap_err().exit_code(), 3);
    }

    #[test]
    fn json_is_canonical() {
        let resp = run(&ci_request(Query::Multidegree)).unwrap();
        let text = render_json(&resp);
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(canonical(&reparsed), text);
    }

    #[test]
    fn rationals_are_strings() {
        assert_eq!(rational(&BigRational::new(1.into(), 3.into())), json!("1/3"));
        assert_eq!(rational(&BigRational::from_integer(4.into())), json!(4));
    }
}
