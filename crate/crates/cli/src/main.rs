use std::fmt::Write as _;
use std::io::IsTerminal;
use std::path::Path;
use std::process::ExitCode;

use bohme_core::cert::{
    bundled_certificate, search_certificates, verify_certificate, Certificate, Schema,
    SearchBounds, VerificationReport,
};
use bohme_core::cycle::{
    cycle_intersection, enumerate_cycles, is_bohme_system, piece_components, Cycle,
};
use bohme_core::family::{generate_petersen_family, identify_family_member, FamilyName};
use bohme_core::graph::Graph;
use bohme_core::linking::{omega_trials, DisjointMode};
use bohme_core::par::Execution;
use bohme_core::sphere::{is_combinatorial_sphere, CycleSystem};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "bohme",
    version,
    about = "Petersen family graphs, Bohme systems, non-flatness certificates and linking numbers"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the seven Petersen family graphs with their exchange provenance.
    Family,
    /// Enumerate the simple cycles of a graph.
    Cycles {
        /// Graph JSON file or family member name.
        graph: String,
        #[arg(long)]
        max_len: Option<usize>,
        /// Only chordless cycles.
        #[arg(long)]
        induced: bool,
    },
    /// Check that a set of cycles pairwise meets in connected pieces.
    BohmeCheck {
        graph: String,
        /// JSON array of cycles, each a vertex sequence.
        cycles: String,
    },
    /// Check that a cycle system panels into a sphere.
    SphereCheck {
        graph: String,
        /// JSON object `{"faces": [...]}`.
        system: String,
    },
    /// Verify or search for non-flatness certificates.
    #[command(subcommand)]
    Cert(CertCommand),
    /// Linking numbers of random straight-line embeddings.
    #[command(subcommand)]
    Linking(LinkingCommand),
    /// Export a graph for external tools.
    #[command(subcommand)]
    Export(ExportCommand),
}

#[derive(Subcommand)]
enum CertCommand {
    /// Run every certificate check against a graph.
    Verify(VerifyArgs),
    /// Search a graph for certificates.
    Search {
        graph: String,
        #[arg(long, default_value_t = 6)]
        max_base_len: usize,
        /// Restrict to a schema; repeat for several. Defaults to all.
        #[arg(long = "schema")]
        schemas: Vec<Schema>,
        #[arg(long, default_value_t = 100)]
        max_results: usize,
    },
}

#[derive(Args)]
struct VerifyArgs {
    graph: String,
    /// Certificate JSON file.
    #[arg(required_unless_present = "bundled", conflicts_with = "bundled")]
    cert: Option<String>,
    /// Use the shipped certificate for the named family member.
    #[arg(long)]
    bundled: bool,
}

#[derive(Subcommand)]
enum LinkingCommand {
    /// Parity of the sum of linking numbers over disjoint cycle pairs.
    Omega {
        graph: String,
        /// First seed; trial `k` uses `seed + k`.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
        /// Coordinates are drawn from [-radius, radius].
        #[arg(long, default_value_t = 100)]
        radius: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Triangles,
    All,
}

impl From<Mode> for DisjointMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Triangles => DisjointMode::TrianglesOnly,
            Mode::All => DisjointMode::AllDisjointCycles,
        }
    }
}

#[derive(Subcommand)]
enum ExportCommand {
    /// Graphviz DOT.
    Dot { graph: String },
}

/// A finished command: its output and whether the check it ran passed.
struct Done {
    text: String,
    json: Value,
    ok: bool,
}

impl Done {
    fn ok(text: String, json: Value) -> Self {
        Done {
            text,
            json,
            ok: true,
        }
    }
}

struct Style {
    color: bool,
}

impl Style {
    fn verdict(&self, pass: bool) -> String {
        let (word, code) = if pass { ("PASS", "32") } else { ("FAIL", "31") };
        if self.color {
            format!("\x1b[{code}m{word}\x1b[0m")
        } else {
            word.to_string()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style {
        color: cli.format == Format::Text
            && std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty())
            && std::io::stdout().is_terminal(),
    };
    match run(cli.command, &style) {
        Ok(done) => {
            match cli.format {
                Format::Text => print!("{}", done.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&done.json).expect("json value")
                ),
            }
            if done.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

/// Parses a JSON file, naming the offending field on failure.
fn parse<T: DeserializeOwned>(path: &str) -> Result<T, String> {
    let text = read(path)?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de)
        .map_err(|e| format!("{path}: at `{}`: {}", e.path(), e.inner()))
}

/// A graph file, or the name of a family member when no such file exists.
fn load_graph(arg: &str) -> Result<(String, Graph), String> {
    if Path::new(arg).is_file() {
        let g: Graph = parse(arg)?;
        let name =
            identify_family_member(&g).map_or_else(|| "graph".to_string(), |n| n.to_string());
        return Ok((name, g));
    }
    match arg.parse::<FamilyName>() {
        Ok(n) => Ok((n.to_string(), n.graph())),
        Err(_) => Err(format!(
            "`{arg}` is neither a graph file nor a family member"
        )),
    }
}

fn run(cmd: Command, style: &Style) -> Result<Done, String> {
    match cmd {
        Command::Family => Ok(family()),
        Command::Cycles {
            graph,
            max_len,
            induced,
        } => {
            let (_, g) = load_graph(&graph)?;
            let cycles = enumerate_cycles(&g, max_len, induced);
            let mut text = String::new();
            for c in &cycles {
                writeln!(text, "{c}").unwrap();
            }
            Ok(Done::ok(text, json!(cycles)))
        }
        Command::BohmeCheck { graph, cycles } => {
            let (_, g) = load_graph(&graph)?;
            let cs: Vec<Cycle> = parse(&cycles)?;
            let v = is_bohme_system(&cs, &g).map_err(|e| format!("{cycles}: {e}"))?;
            let mut text = format!("bohme-system: {}\n", style.verdict(v.ok));
            if let Some((a, b)) = &v.witness {
                let p = cycle_intersection(a, b);
                writeln!(
                    text,
                    "  {a} and {b} meet in {p} ({} components)",
                    piece_components(&p)
                )
                .unwrap();
            }
            Ok(Done {
                text,
                json: json!(v),
                ok: v.ok,
            })
        }
        Command::SphereCheck { graph, system } => {
            let (_, g) = load_graph(&graph)?;
            let s: CycleSystem = parse(&system)?;
            s.validate_in(&g).map_err(|e| format!("{system}: {e}"))?;
            let v = is_combinatorial_sphere(&s);
            let mut text = format!(
                "sphere: {} (closed surface: {}, euler characteristic {})\n",
                style.verdict(v.is_sphere),
                v.is_closed_surface,
                v.euler_characteristic
            );
            for f in &v.failures {
                writeln!(text, "  {}", f.detail).unwrap();
            }
            Ok(Done {
                text,
                json: json!(v),
                ok: v.is_sphere,
            })
        }
        Command::Cert(CertCommand::Verify(args)) => cert_verify(args, style),
        Command::Cert(CertCommand::Search {
            graph,
            max_base_len,
            schemas,
            max_results,
        }) => {
            let (_, g) = load_graph(&graph)?;
            let schemas = if schemas.is_empty() {
                Schema::ALL.to_vec()
            } else {
                schemas
            };
            let bounds = SearchBounds {
                max_base_len,
                schemas,
                max_results,
            };
            let found = search_certificates(&g, &bounds).map_err(|e| e.to_string())?;
            let mut text = format!("{} certificate(s)\n", found.len());
            for c in &found {
                let base = match c.base_cycle() {
                    Some(b) => b.to_string(),
                    None => format!("Y at {}", c.y_center().unwrap_or("?")),
                };
                let conns: Vec<String> = c.connectors.iter().map(|p| p.join("-")).collect();
                writeln!(
                    text,
                    "{} base {base} connectors {}",
                    c.schema,
                    conns.join(" ")
                )
                .unwrap();
            }
            let json = Value::Array(found.iter().map(|c| json!(c.to_json())).collect());
            Ok(Done::ok(text, json))
        }
        Command::Linking(LinkingCommand::Omega {
            graph,
            seed,
            trials,
            mode,
            radius,
        }) => {
            let (name, g) = load_graph(&graph)?;
            if trials == 0 {
                return Err("--trials must be positive".into());
            }
            let seeds: Vec<u64> = (0..trials).map(|k| seed.wrapping_add(k)).collect();
            let mode = DisjointMode::from(mode);
            let runs = omega_trials(&g, &seeds, radius, mode, Execution::default())
                .map_err(|e| e.to_string())?;
            let odd = runs.iter().filter(|t| t.report.parity == 1).count();
            let even = runs.len() - odd;
            let mut text = format!(
                "{name} {} over {} embedding(s), radius {radius}\n",
                mode.as_str(),
                runs.len()
            );
            for t in &runs {
                let linked = t.report.pairs.iter().filter(|p| p.lk != 0).count();
                writeln!(
                    text,
                    "  seed {}: parity {} ({} pairs, {linked} linked)",
                    t.seed,
                    t.report.parity,
                    t.report.pairs.len()
                )
                .unwrap();
            }
            writeln!(text, "parity histogram: 0 -> {even}, 1 -> {odd}").unwrap();
            writeln!(text, "all odd: {}", style.verdict(even == 0)).unwrap();
            let json = json!({
                "graph": name,
                "mode": mode,
                "radius": radius,
                "histogram": {"0": even, "1": odd},
                "trials": runs,
            });
            Ok(Done {
                text,
                json,
                ok: even == 0,
            })
        }
        Command::Export(ExportCommand::Dot { graph }) => {
            let (name, g) = load_graph(&graph)?;
            let dot = g.to_dot(&name);
            Ok(Done::ok(dot.clone(), json!({ "dot": dot })))
        }
    }
}

fn family() -> Done {
    let members = generate_petersen_family();
    let mut text = String::new();
    for m in &members {
        let steps: Vec<String> = m.provenance.iter().map(|e| e.to_string()).collect();
        let prov = if steps.is_empty() {
            "start".to_string()
        } else {
            steps.join(", ")
        };
        writeln!(
            text,
            "{:<12} {:>2} vertices {:>2} edges  {prov}",
            m.name.as_str(),
            m.graph.vertex_count(),
            m.graph.edge_count()
        )
        .unwrap();
    }
    let json = Value::Array(
        members
            .iter()
            .map(|m| {
                json!({
                    "name": m.name,
                    "vertex_count": m.graph.vertex_count(),
                    "edge_count": m.graph.edge_count(),
                    "graph": m.graph,
                    "provenance": m.provenance,
                })
            })
            .collect(),
    );
    Done::ok(text, json)
}

fn cert_verify(args: VerifyArgs, style: &Style) -> Result<Done, String> {
    let (name, g) = load_graph(&args.graph)?;
    let cert: Certificate = if args.bundled {
        let member = name.parse::<FamilyName>().map_err(|_| {
            format!(
                "`{}` is not a family member, so there is no bundled certificate",
                args.graph
            )
        })?;
        bundled_certificate(member).clone()
    } else {
        let path = args.cert.expect("clap requires a certificate path");
        Certificate::from_json_str(&read(&path)?).map_err(|e| format!("{path}: {e}"))?
    };
    let report =
        verify_certificate(&g, &cert).map_err(|e| format!("malformed certificate: {e}"))?;
    Ok(Done {
        text: report_text(&cert, &report, style),
        json: json!(report),
        ok: report.pass,
    })
}

fn report_text(cert: &Certificate, r: &VerificationReport, style: &Style) -> String {
    let mut text = format!(
        "{} {} certificate: {}\n",
        cert.graph_name,
        cert.schema,
        style.verdict(r.pass)
    );
    for c in &r.checks {
        writeln!(text, "  {:<24} {}", c.name.as_str(), style.verdict(c.pass)).unwrap();
        if let Some(w) = &c.witness {
            writeln!(text, "    {w}").unwrap();
        }
    }
    text
}
