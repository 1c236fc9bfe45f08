//! Command-line front end. [`run`] takes the arguments and output streams so
//! it can be driven from tests.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::clutter::{self, Clutter, ForestMode};
use crate::complex::{self, from_minimal_covers, independence_complex, SimplicialComplex};
use crate::digraph::{self, Acyclicity, Classification, Digraph};
use crate::error::Error;
use crate::families;
use crate::graph::Graph;
use crate::homology::{self, FieldSpec};
use crate::ideal::SquarefreeMonomialIdeal;
use crate::shelling::{self, CertificateDocument, Outcome, ShellingCertificate, ShellingCheck};
use crate::Check;

pub const SCHEMA: &str = "shellkit/1";

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;
pub const EXIT_LIMIT: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "shellkit", version, about = "Shellability and sequential Cohen-Macaulayness of independence and clutter complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide shellability and print a certificate
    Shellable(ShellableArgs),
    /// Sequential Cohen-Macaulayness via pure skeletons
    Scm(HomologyArgs),
    /// Cohen-Macaulayness via links
    Cm(HomologyArgs),
    /// Alexander dual of an ideal (or clutter) given one generator per line
    Dual(DualArgs),
    /// Search for an ordering with linear quotients
    Linquot(LinquotArgs),
    /// Clutter properties
    Clutter(ClutterArgs),
    /// Digraph of a bipartite graph with a perfect matching
    Digraph(DigraphArgs),
    /// Run the cross-checking suites on small families
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Graph,
    Complex,
    Clutter,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Bipartite,
    Chordal,
    Brute,
    ClutterFvp,
}

#[derive(Args, Debug)]
struct Common {
    /// Input file, or `-` for standard input
    input: String,
    /// Emit a JSON verdict
    #[arg(long)]
    json: bool,
    /// How to read the input
    #[arg(long, value_enum, default_value = "graph")]
    format: Format,
}

#[derive(Args, Debug)]
struct ShellableArgs {
    #[command(flatten)]
    common: Common,
    /// Decision procedure to run
    #[arg(long, value_enum, default_value = "auto")]
    method: Method,
    /// Facet cap for the brute-force search
    #[arg(long, default_value_t = shelling::DEFAULT_FACET_LIMIT)]
    facet_limit: usize,
    /// Recheck a certificate (a JSON verdict or certificate document)
    /// against the input instead of searching
    #[arg(long, value_name = "FILE")]
    check_certificate: Option<String>,
}

#[derive(Args, Debug)]
struct HomologyArgs {
    #[command(flatten)]
    common: Common,
    /// Coefficient field: 0 for the rationals, or a prime
    #[arg(long, default_value_t = 0)]
    field: u64,
    /// Vertex cap for homology computations
    #[arg(long, default_value_t = complex::DEFAULT_UNIVERSE_LIMIT)]
    universe_limit: usize,
}

#[derive(Args, Debug)]
struct DualArgs {
    /// Input file, or `-` for standard input
    input: String,
    /// Emit a JSON verdict
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct LinquotArgs {
    /// Input file, or `-` for standard input
    input: String,
    /// Emit a JSON verdict
    #[arg(long)]
    json: bool,
    /// Use the Alexander dual of the input
    #[arg(long)]
    dual: bool,
    /// Restrict to the degree-d component first
    #[arg(long)]
    degree: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Property {
    FreeVertex,
    TotallyBalanced,
    FForest,
    Unmixed,
}

#[derive(Args, Debug)]
struct ClutterArgs {
    /// Input file, or `-` for standard input
    input: String,
    /// Emit a JSON verdict
    #[arg(long)]
    json: bool,
    /// Property to decide
    #[arg(long, value_enum, default_value = "free-vertex")]
    property: Property,
    /// Greedy leaf stripping instead of checking every subclutter
    #[arg(long)]
    greedy: bool,
    /// Vertex cap for the free vertex search, edge cap for the f-forest
    /// check, or row cap for the balance check
    #[arg(long)]
    limit: Option<usize>,
}

#[derive(Args, Debug)]
struct DigraphArgs {
    /// Input file, or `-` for standard input
    input: String,
    /// Emit a JSON verdict
    #[arg(long)]
    json: bool,
    /// Pairing as `x1=y1,x2=y2,…`
    #[arg(long)]
    pair: Option<String>,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    /// Emit a JSON verdict
    #[arg(long)]
    json: bool,
    /// Seed for the random families
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// A command failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::LimitExceeded { .. } => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_failure(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INPUT,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Runs one command; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    let mut io = Io { out, err };
    let result = match cli.command {
        Command::Shellable(a) => shellable(&a, &mut io),
        Command::Scm(a) => homology_cmd(&a, true, &mut io),
        Command::Cm(a) => homology_cmd(&a, false, &mut io),
        Command::Dual(a) => dual(&a, &mut io),
        Command::Linquot(a) => linquot(&a, &mut io),
        Command::Clutter(a) => clutter_cmd(&a, &mut io),
        Command::Digraph(a) => digraph_cmd(&a, &mut io),
        Command::Selftest(a) => selftest(&a, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_input(path: &str) -> std::result::Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| input_failure(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| input_failure(format!("{path}: {e}")))
    }
}

enum Input {
    Graph(Graph),
    Complex(SimplicialComplex),
    Clutter(Clutter),
}

impl Input {
    fn load(c: &Common) -> std::result::Result<Input, Failure> {
        let text = read_input(&c.input)?;
        Ok(match c.format {
            Format::Graph => Input::Graph(Graph::parse(&text)?),
            Format::Complex => Input::Complex(SimplicialComplex::parse(&text)?),
            Format::Clutter => Input::Clutter(Clutter::parse(&text)?),
        })
    }

    fn complex(&self) -> SimplicialComplex {
        match self {
            Input::Graph(g) => independence_complex(g),
            Input::Complex(d) => d.clone(),
            Input::Clutter(c) => from_minimal_covers(c),
        }
    }
}

fn warn_limit(io: &mut Io, name: &str, value: usize, default: usize) {
    if value > default {
        let _ = writeln!(
            io.err,
            "warning: {name} raised to {value} (default {default}); this may be slow"
        );
    }
}

fn answer_value(answer: Option<bool>) -> Value {
    match answer {
        Some(b) => Value::Bool(b),
        None => Value::String("inconclusive".into()),
    }
}

fn code_of(answer: Option<bool>) -> i32 {
    match answer {
        Some(true) => EXIT_TRUE,
        Some(false) => EXIT_FALSE,
        None => EXIT_INCONCLUSIVE,
    }
}

fn emit(
    io: &mut Io,
    json_mode: bool,
    question: &str,
    answer: Option<bool>,
    method: &str,
    certificate: Value,
    text: &str,
) -> i32 {
    if json_mode {
        let doc = json!({
            "schema": SCHEMA,
            "question": question,
            "answer": answer_value(answer),
            "method": method,
            "certificate": certificate,
        });
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        let verdict = match answer {
            Some(true) => "yes",
            Some(false) => "no",
            None => "inconclusive",
        };
        let _ = writeln!(io.out, "{question}: {verdict} ({method})");
        if !text.is_empty() {
            let _ = write!(io.out, "{text}");
        }
    }
    code_of(answer)
}

fn certificate_text(c: &ShellingCertificate) -> String {
    let mut s = String::from("order:\n");
    for (k, f) in c.order_labels().iter().enumerate() {
        s.push_str(&format!("  {}: {{{}}}\n", k + 1, f.join(",")));
    }
    s
}

fn shellable(a: &ShellableArgs, io: &mut Io) -> CmdResult {
    warn_limit(io, "facet limit", a.facet_limit, shelling::DEFAULT_FACET_LIMIT);
    let input = Input::load(&a.common)?;
    let delta = input.complex();
    let json_mode = a.common.json;

    if let Some(path) = &a.check_certificate {
        return check_certificate(path, &delta, json_mode, io);
    }

    let brute = |io: &mut Io, method: &str| -> CmdResult {
        let found = shelling::find_shelling_bruteforce_with_limit(&delta, a.facet_limit)?;
        Ok(match found {
            Some(c) => emit(io, json_mode, "shellable", Some(true), method, json!(c.to_document()), &certificate_text(&c)),
            None => emit(
                io,
                json_mode,
                "shellable",
                Some(false),
                method,
                json!({"reason": "no facet order is a shelling"}),
                "reason: no facet order is a shelling\n",
            ),
        })
    };

    let method = match (a.method, &input) {
        (Method::Auto, Input::Graph(g)) if g.is_bipartite() => Method::Bipartite,
        (Method::Auto, Input::Graph(g)) if g.is_chordal().is_some() => Method::Chordal,
        (Method::Auto, Input::Clutter(_)) => Method::ClutterFvp,
        (Method::Auto, _) => Method::Brute,
        (m, _) => m,
    };
    match method {
        Method::Brute | Method::Auto => brute(io, "brute-force"),
        Method::Bipartite => {
            let Input::Graph(g) = &input else {
                return Err(input_failure("--method bipartite needs a graph input"));
            };
            let rec = shelling::shell_bipartite(g)?;
            Ok(match rec.outcome {
                Outcome::Shelled(c) => {
                    emit(io, json_mode, "shellable", Some(true), "bipartite", json!(c.to_document()), &certificate_text(&c))
                }
                Outcome::Stuck(node) => {
                    let vs = node.vertices().join(",");
                    emit(
                        io,
                        json_mode,
                        "shellable",
                        Some(false),
                        "bipartite",
                        json!({"reason": "no degree-1 vertex", "subgraph": node.vertices(), "edges": node.edges()}),
                        &format!("reason: no degree-1 vertex in the subgraph on {{{vs}}}\n"),
                    )
                }
            })
        }
        Method::Chordal => {
            let Input::Graph(g) = &input else {
                return Err(input_failure("--method chordal needs a graph input"));
            };
            let c = shelling::shell_chordal(g)?;
            Ok(emit(io, json_mode, "shellable", Some(true), "chordal", json!(c.to_document()), &certificate_text(&c)))
        }
        Method::ClutterFvp => {
            let Input::Clutter(cl) = &input else {
                return Err(input_failure("--method clutter-fvp needs --format clutter"));
            };
            let rec = shelling::shell_free_vertex_clutter(cl)?;
            match rec.outcome {
                Outcome::Shelled(c) => Ok(emit(
                    io,
                    json_mode,
                    "shellable",
                    Some(true),
                    "clutter-fvp",
                    json!(c.to_document()),
                    &certificate_text(&c),
                )),
                Outcome::Stuck(minor) => {
                    let _ = writeln!(
                        io.err,
                        "note: free-vertex recursion failed at a minor with no free vertex: {}",
                        edges_text(&minor)
                    );
                    if a.method == Method::Auto && delta.facet_count() <= a.facet_limit {
                        return brute(io, "brute-force after free-vertex recursion failed");
                    }
                    Ok(emit(
                        io,
                        json_mode,
                        "shellable",
                        None,
                        "clutter-fvp",
                        json!({"reason": "free-vertex recursion failed", "minor": minor.edges()}),
                        "reason: free-vertex recursion failed\n",
                    ))
                }
            }
        }
    }
}

fn edges_text(c: &Clutter) -> String {
    c.edges()
        .iter()
        .map(|e| format!("{{{}}}", e.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn check_certificate(path: &str, delta: &SimplicialComplex, json_mode: bool, io: &mut Io) -> CmdResult {
    let text = read_input(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| input_failure(format!("{path}: {e}")))?;
    let doc_value = match value.get("certificate") {
        Some(c) => c.clone(),
        None => value,
    };
    let doc: CertificateDocument =
        serde_json::from_value(doc_value).map_err(|e| input_failure(format!("{path}: {e}")))?;
    let order = doc
        .order
        .iter()
        .map(|f| {
            let labels: Vec<&str> = f.iter().map(String::as_str).collect();
            delta.mask_of(&labels)
        })
        .collect::<crate::Result<Vec<u64>>>()?;
    let witnesses_ok = ShellingCertificate::from_document(&doc, delta.universe())
        .and_then(|c| c.check_against(delta));
    let verdict = shelling::verify_shelling(delta, &order)?;
    Ok(match (verdict, witnesses_ok) {
        (ShellingCheck::Valid(c), Ok(())) => emit(
            io,
            json_mode,
            "shellable",
            Some(true),
            "certificate",
            json!(c.to_document()),
            &certificate_text(&c),
        ),
        (ShellingCheck::Valid(_), Err(e)) => {
            return Err(input_failure(format!("the order is a shelling but the witnesses are wrong: {e}")))
        }
        (ShellingCheck::Counterexample { i, j }, _) => {
            return Err(input_failure(format!("not a shelling: pair ({}, {}) has no witness", i + 1, j + 1)))
        }
    })
}

fn field_of(p: u64) -> std::result::Result<FieldSpec, Failure> {
    if p == 0 {
        Ok(FieldSpec::Rationals)
    } else {
        Ok(FieldSpec::prime(p)?)
    }
}

fn homology_cmd(a: &HomologyArgs, sequential: bool, io: &mut Io) -> CmdResult {
    warn_limit(io, "universe limit", a.universe_limit, complex::DEFAULT_UNIVERSE_LIMIT);
    let field = field_of(a.field)?;
    let delta = Input::load(&a.common)?.complex();
    let method = format!("{} over {field}", if sequential { "pure skeletons and links" } else { "links" });
    let (question, failure) = if sequential {
        let r = homology::is_sequentially_cm_with_limit(&delta, field, a.universe_limit)?;
        (
            "seq_cm",
            r.witness().map(|w| {
                (
                    json!({"skeleton": w.dimension, "face": w.failure.face, "degree": w.failure.degree}),
                    format!(
                        "reason: pure {}-skeleton: link of {{{}}} has homology in degree {}\n",
                        w.dimension,
                        w.failure.face.join(","),
                        w.failure.degree
                    ),
                )
            }),
        )
    } else {
        let r = homology::is_cohen_macaulay_with_limit(&delta, field, a.universe_limit)?;
        (
            "cm",
            r.witness().map(|w| {
                (
                    json!({"face": w.face, "degree": w.degree}),
                    format!("reason: link of {{{}}} has homology in degree {}\n", w.face.join(","), w.degree),
                )
            }),
        )
    };
    Ok(match failure {
        None => emit(io, a.common.json, question, Some(true), &method, Value::Null, ""),
        Some((cert, text)) => emit(io, a.common.json, question, Some(false), &method, cert, &text),
    })
}

fn dual(a: &DualArgs, io: &mut Io) -> CmdResult {
    let ideal = SquarefreeMonomialIdeal::parse(&read_input(&a.input)?)?;
    let d = ideal.alexander_dual()?;
    if a.json {
        let doc = json!({
            "schema": SCHEMA,
            "question": "alexander_dual",
            "variables": d.variables(),
            "generators": d.generators(),
        });
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        let _ = write!(io.out, "{}", d.to_text());
    }
    Ok(EXIT_TRUE)
}

fn linquot(a: &LinquotArgs, io: &mut Io) -> CmdResult {
    let mut ideal = SquarefreeMonomialIdeal::parse(&read_input(&a.input)?)?;
    if a.dual {
        ideal = ideal.alexander_dual()?;
    }
    if let Some(d) = a.degree {
        ideal = ideal.degree_component(d)?;
    }
    let found = ideal.linear_quotients();
    let mut text = String::new();
    if let Some(lq) = &found {
        for (g, colon) in lq.order.iter().zip(&lq.colons) {
            text.push_str(&g.join(" "));
            if !colon.is_empty() {
                text.push_str(&format!("    # colon: {}", colon.join(" ")));
            }
            text.push('\n');
        }
    }
    let cert = found.as_ref().map_or(Value::Null, |lq| json!(lq));
    Ok(emit(io, a.json, "linear_quotients", Some(found.is_some()), "backtracking", cert, &text))
}

fn clutter_cmd(a: &ClutterArgs, io: &mut Io) -> CmdResult {
    let c = Clutter::parse(&read_input(&a.input)?)?;
    let (question, answer, method, cert, text) = match a.property {
        Property::FreeVertex => {
            let limit = a.limit.unwrap_or(clutter::DEFAULT_FVP_LIMIT);
            warn_limit(io, "vertex limit", limit, clutter::DEFAULT_FVP_LIMIT);
            match c.has_free_vertex_property_with_limit(limit)? {
                Check::Holds => ("free_vertex_property", true, "minor search", Value::Null, String::new()),
                Check::Fails(m) => (
                    "free_vertex_property",
                    false,
                    "minor search",
                    json!({"minor": m.edges(), "vertices": m.vertices()}),
                    format!("reason: minor without a free vertex: {}\n", edges_text(&m)),
                ),
            }
        }
        Property::TotallyBalanced => {
            let limit = a.limit.unwrap_or(clutter::DEFAULT_BALANCE_LIMIT);
            warn_limit(io, "row limit", limit, clutter::DEFAULT_BALANCE_LIMIT);
            match c.is_totally_balanced_with_limit(limit)? {
                Check::Holds => ("totally_balanced", true, "submatrix search", Value::Null, String::new()),
                Check::Fails(w) => (
                    "totally_balanced",
                    false,
                    "submatrix search",
                    json!({"rows": w.rows, "columns": w.columns}),
                    format!(
                        "reason: 2-regular submatrix on rows {{{}}}\n",
                        w.rows.join(",")
                    ),
                ),
            }
        }
        Property::FForest => {
            let limit = a.limit.unwrap_or(clutter::DEFAULT_FOREST_LIMIT);
            warn_limit(io, "edge limit", limit, clutter::DEFAULT_FOREST_LIMIT);
            let mode = if a.greedy { ForestMode::Greedy } else { ForestMode::Exhaustive };
            let ok = c.is_f_forest_with_limit(mode, limit)?;
            let method = if a.greedy { "greedy leaf removal" } else { "every subclutter" };
            let leaf = c.find_f_leaf()?;
            let cert = leaf.map_or(Value::Null, |l| json!({"leaf": l.edge, "witness": l.witness}));
            ("f_forest", ok, method, cert, String::new())
        }
        Property::Unmixed => {
            let covers = c.minimal_vertex_covers();
            let ok = homology::is_unmixed(&c);
            ("unmixed", ok, "cover sizes", json!({"covers": covers}), String::new())
        }
    };
    Ok(emit(io, a.json, question, Some(answer), method, cert, &text))
}

fn parse_pairs(s: &str) -> std::result::Result<Vec<(String, String)>, Failure> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (x, y) = p
                .split_once('=')
                .ok_or_else(|| input_failure(format!("pair `{p}` is not of the form x=y")))?;
            Ok((x.trim().to_string(), y.trim().to_string()))
        })
        .collect()
}

fn digraph_cmd(a: &DigraphArgs, io: &mut Io) -> CmdResult {
    let g = Graph::parse(&read_input(&a.input)?)?;
    let pairs = a.pair.as_deref().map(parse_pairs).transpose()?;
    let borrowed: Option<Vec<(&str, &str)>> = pairs
        .as_ref()
        .map(|ps| ps.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect());
    let m = digraph::check_conditions(&g, borrowed.as_deref())?;
    let d = Digraph::build(&m);
    let acyclic = d.is_acyclic();
    let transitive = d.is_transitive();
    let class = digraph::classify_cm_bipartite(&m);
    let cm = class == Classification::CohenMacaulay;
    let verdict = if cm { "cm" } else { "not_cm" };
    if a.json {
        let mut doc = json!({
            "schema": SCHEMA,
            "question": "cm_bipartite_classification",
            "answer": cm,
            "method": "digraph",
            "pairs": m.pairs(),
            "arcs": d.arcs(),
            "acyclic": matches!(acyclic, Acyclicity::Order(_)),
            "transitive": transitive.holds(),
            "verdict": verdict,
        });
        match &acyclic {
            Acyclicity::Order(o) => doc["topological_order"] = json!(o),
            Acyclicity::Cycle(c) => doc["cycle"] = json!(c),
        }
        if let Some(t) = transitive.witness() {
            doc["failing_triple"] = json!(t);
        }
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        let arcs: Vec<String> = d.arcs().iter().map(|(x, y)| format!("({x},{y})")).collect();
        let _ = writeln!(io.out, "arcs: {}", arcs.join(" "));
        match &acyclic {
            Acyclicity::Order(o) => {
                let _ = writeln!(io.out, "acyclic: yes, order {}", o.join(" "));
            }
            Acyclicity::Cycle(c) => {
                let _ = writeln!(io.out, "acyclic: no, cycle {}", c.join(" "));
            }
        }
        match transitive.witness() {
            None => {
                let _ = writeln!(io.out, "transitive: yes");
            }
            Some(t) => {
                let _ = writeln!(io.out, "transitive: no, ({},{}),({},{}) without ({},{})", t[0], t[1], t[1], t[2], t[0], t[2]);
            }
        }
        let _ = writeln!(io.out, "verdict: {verdict}");
    }
    Ok(if cm { EXIT_TRUE } else { EXIT_FALSE })
}

/// A small version of the cross-checking suites.
fn selftest(a: &SelftestArgs, io: &mut Io) -> CmdResult {
    let q = FieldSpec::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let mut report: Vec<(&str, usize, usize)> = Vec::new();

    let (mut n, mut bad) = (0, 0);
    for g in families::all_bipartite_graphs(5) {
        n += 1;
        let delta = independence_complex(&g);
        let rec = shelling::shell_bipartite(&g)?.certificate().is_some();
        let brute = shelling::find_shelling_bruteforce(&delta)?.is_some();
        let scm = homology::is_sequentially_cm(&delta, q)?.holds();
        if !(rec == brute && brute == scm) {
            bad += 1;
        }
    }
    report.push(("bipartite recursion, brute force and homology agree", n, bad));

    let (mut n, mut bad) = (0, 0);
    for _ in 0..30 {
        n += 1;
        let g = families::random_chordal(&mut rng, 9);
        let delta = independence_complex(&g);
        let ok = shelling::shell_chordal(&g)?.check_against(&delta).is_ok()
            && homology::is_sequentially_cm(&delta, q)?.holds();
        if !ok {
            bad += 1;
        }
    }
    report.push(("chordal certificates verify", n, bad));

    let (mut n, mut bad) = (0, 0);
    for m in families::all_matched_bipartite(3) {
        n += 1;
        let delta = independence_complex(m.graph());
        let direct = homology::is_cohen_macaulay(&delta, q)?.holds();
        let class = digraph::classify_cm_bipartite(&m) == Classification::CohenMacaulay;
        let transitive = Digraph::build(&m).is_transitive().holds();
        if direct != class || transitive != digraph::is_unmixed_graph(&m) {
            bad += 1;
        }
    }
    report.push(("digraph classification matches homology", n, bad));

    let (mut n, mut bad) = (0, 0);
    for c in families::all_clutters(4, 4) {
        n += 1;
        let forest = c.is_f_forest(ForestMode::Exhaustive)?;
        let balanced = c.is_totally_balanced()?.holds();
        let fvp = c.has_free_vertex_property()?.holds();
        if forest != balanced || (balanced && !fvp) {
            bad += 1;
        }
    }
    report.push(("f-forests, total balance and free vertices agree", n, bad));

    let failed = report.iter().any(|r| r.2 > 0);
    if a.json {
        let suites: Vec<Value> = report
            .iter()
            .map(|(name, n, bad)| json!({"suite": name, "cases": n, "failures": bad}))
            .collect();
        let doc = json!({"schema": SCHEMA, "question": "selftest", "answer": !failed, "suites": suites});
        let _ = writeln!(io.out, "{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        for (name, n, bad) in &report {
            let status = if *bad == 0 { "ok" } else { "FAILED" };
            let _ = writeln!(io.out, "{status:6} {name}: {n} cases, {bad} failures");
        }
    }
    Ok(if failed { EXIT_FALSE } else { EXIT_TRUE })
}
