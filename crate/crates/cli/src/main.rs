use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use digitopo::export::{self, MetricsRow};
use digitopo::graphmetrics::{self, CycleWitness, FiniteGraph};
use digitopo::harness::{self, HarnessConfig, Suite};
use digitopo::homotopy::{self, Flavor};
use digitopo::hyperspace::{self, FamilyKind, SubsetFamily};
use digitopo::{io, DigitalImage, Error};

mod check;

#[derive(Parser)]
#[command(name = "digitopo", version, about = "Digital images, their hyperspaces and function graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(flatten)]
    budgets: Budgets,
}

#[derive(clap::Args, Clone, Copy)]
struct Budgets {
    /// Largest image whose hyperspaces may be enumerated.
    #[arg(long, global = true, default_value_t = hyperspace::DEFAULT_HYPERSPACE_POINTS, value_parser = positive)]
    budget_points: usize,
    /// Most continuous maps in a function graph.
    #[arg(long, global = true, default_value_t = homotopy::DEFAULT_FUNCTION_GRAPH_VERTICES, value_parser = positive)]
    budget_functions: usize,
    /// Most vertices for the exact longest-cycle search.
    #[arg(long, global = true, default_value_t = graphmetrics::DEFAULT_LONGEST_CYCLE_VERTICES, value_parser = positive)]
    budget_cycle: usize,
    /// Most vertices for the exact dominating-set search.
    #[arg(long, global = true, default_value_t = graphmetrics::DEFAULT_DOMINATING_VERTICES, value_parser = positive)]
    budget_dominating: usize,
    /// Most points of a subdivision S(X, r).
    #[arg(long, global = true, default_value_t = digitopo::multivalued::DEFAULT_SUBDIVISION_POINTS, value_parser = positive)]
    budget_subdivision: usize,
    /// Most search nodes for generator search.
    #[arg(long, global = true, default_value_t = digitopo::multivalued::DEFAULT_EGS_NODES as usize, value_parser = positive)]
    budget_nodes: usize,
    /// Largest subdivision factor tried for generated multifunctions.
    #[arg(long, global = true, default_value_t = 4, value_parser = positive)]
    r_max: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the hyperspace graph of an image.
    Hyperspace {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = KindArg::Connected)]
        kind: KindArg,
    },
    /// Decide a property of a map, multifunction or image.
    Check {
        #[arg(value_enum)]
        name: check::CheckName,
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
        /// Point held fixed, e.g. `2` or `1,0`.
        #[arg(long)]
        basepoint: Option<String>,
        /// Validate homotopies in the strong sense.
        #[arg(long)]
        strong: bool,
    },
    /// Run the seeded property suites.
    Verify {
        #[arg(default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100, value_parser = positive)]
        samples: usize,
        #[arg(long, default_value_t = 6, value_parser = positive)]
        max_points: usize,
    },
    /// Shortest and longest cycles of an image or one of its hyperspaces.
    Girth {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// A minimum dominating set of an image or one of its hyperspaces.
    Dominate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// Metric table for one or more images.
    Metrics {
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
    },
    /// DOT for an image graph, a hyperspace graph (--kind) or a function
    /// graph (two inputs X, Y and --flavor).
    ExportDot {
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
        /// Draw a longest cycle in red.
        #[arg(long)]
        highlight_cycle: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(ValueEnum, Clone, Copy)]
enum KindArg {
    Full,
    Connected,
}

impl From<KindArg> for FamilyKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Full => FamilyKind::Full,
            KindArg::Connected => FamilyKind::Connected,
        }
    }
}

#[derive(ValueEnum, Clone, Copy)]
enum FlavorArg {
    Phi,
    Psi,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Phi => Flavor::Phi,
            FlavorArg::Psi => Flavor::Psi,
        }
    }
}

/// Why a command did not succeed; each maps to an exit code.
enum Failure {
    /// Exit 1: a check answered no, a suite failed, or a witness did not
    /// survive re-validation.
    Verification(String),
    /// Exit 2.
    Usage(String),
    /// Exit 2 or 3 depending on the kind.
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_image(path: &Path) -> Result<DigitalImage, Failure> {
    io::read_image(&read(path)?).map_err(|e| with_path(path, e))
}

/// Prefixes parse errors with the file they came from.
fn with_path(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse(msg) => Failure::Lib(Error::Parse(format!("{}: {msg}", path.display()))),
        other => Failure::Lib(other),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::ResourceLimit { .. } => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let b = cli.budgets;
    match &cli.command {
        Command::Hyperspace { input, kind } => cmd_hyperspace(cli.format, b, input, (*kind).into()),
        Command::Check {
            name,
            input,
            kind,
            flavor,
            basepoint,
            strong,
        } => {
            let req = check::Request {
                inputs: input,
                kind: kind.map(Into::into),
                flavor: flavor.map(Into::into),
                basepoint: basepoint.as_deref(),
                strong: *strong,
                budgets: b,
            };
            let verdict = check::run(*name, &req)?;
            let out = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&verdict.to_json()).expect("json")),
                _ => verdict.to_text(),
            };
            if verdict.result {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Verify {
            suite,
            seed,
            samples,
            max_points,
        } => {
            let cfg = HarnessConfig {
                seed: *seed,
                samples: *samples,
                max_points: *max_points,
                hyperspace_points: b.budget_points,
                function_vertices: b.budget_functions,
                cycle_vertices: b.budget_cycle,
                r_max: b.r_max,
            };
            let report = harness::run_suite(suite.parse()?, &cfg)?;
            let out = match cli.format {
                Format::Json => format!("{}\n", serde_json::to_string_pretty(&report).expect("json")),
                _ => report.to_text(),
            };
            if report.passed() {
                Ok(out)
            } else {
                Err(Failure::Verification(out))
            }
        }
        Command::Girth { input, kind } => cmd_girth(cli.format, b, input, kind.map(Into::into)),
        Command::Dominate { input, kind } => cmd_dominate(cli.format, b, input, kind.map(Into::into)),
        Command::Metrics { input, kind } => cmd_metrics(cli.format, b, input, kind.map(Into::into)),
        Command::ExportDot {
            input,
            kind,
            flavor,
            highlight_cycle,
        } => cmd_export_dot(b, input, kind.map(Into::into), flavor.map(Into::into), *highlight_cycle),
    }
}

/// The image graph, or the hyperspace graph of the given kind, labeled.
fn target_graph(image: &DigitalImage, kind: Option<FamilyKind>, b: Budgets) -> Result<FiniteGraph, Failure> {
    Ok(match kind {
        None => image.graph(),
        Some(kind) => {
            let fam = SubsetFamily::of_kind(image, kind, b.budget_points)?;
            hyperspace::hyperspace_graph(&fam).graph().clone()
        }
    })
}

fn cmd_hyperspace(format: Format, b: Budgets, input: &Path, kind: FamilyKind) -> Outcome {
    let image = load_image(input)?;
    let fam = SubsetFamily::of_kind(&image, kind, b.budget_points)?;
    let view = hyperspace::hyperspace_graph(&fam);
    let g = view.graph();
    Ok(match format {
        Format::Dot => export::hyperspace_to_dot(&view, None),
        Format::Json => {
            let members: Vec<String> = fam.members().iter().map(|&s| fam.label(s)).collect();
            let doc = json!({
                "kind": kind.to_string(),
                "vertices": g.n(),
                "edges": g.edge_count(),
                "connected": g.is_connected(),
                "members": members,
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        Format::Csv => export::metrics_csv(&[MetricsRow::compute(
            &kind.to_string(),
            g,
            b.budget_cycle,
            b.budget_dominating,
        )])?,
        Format::Text => format!(
            "kind: {kind}\nvertices: {}\nedges: {}\nconnected: {}\n",
            g.n(),
            g.edge_count(),
            g.is_connected()
        ),
    })
}

fn cycle_text(g: &FiniteGraph, c: &CycleWitness) -> String {
    c.vertices().iter().map(|&v| g.label(v)).collect::<Vec<_>>().join(" ")
}

fn cycle_json(g: &FiniteGraph, c: Option<&CycleWitness>) -> serde_json::Value {
    match c {
        Some(c) => json!({
            "length": c.len(),
            "cycle": c.vertices().iter().map(|&v| g.label(v)).collect::<Vec<_>>(),
        }),
        None => json!(null),
    }
}

fn cmd_girth(format: Format, b: Budgets, input: &Path, kind: Option<FamilyKind>) -> Outcome {
    let image = load_image(input)?;
    let g = target_graph(&image, kind, b)?;
    let short = graphmetrics::girth(&g);
    let long = graphmetrics::longest_cycle(&g, b.budget_cycle)?;
    for c in short.iter().chain(long.iter()) {
        if !c.is_valid_in(&g) {
            return Err(Failure::Verification(format!("internal: cycle witness {:?} rejected\n", c.vertices())));
        }
    }
    Ok(match format {
        Format::Dot => export::graph_to_dot(&g, "girth", long.as_ref()),
        Format::Json => {
            let doc = json!({"girth": cycle_json(&g, short.as_ref()), "longest_cycle": cycle_json(&g, long.as_ref())});
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        _ => {
            let mut out = String::new();
            for (name, c) in [("girth", &short), ("longest cycle", &long)] {
                match c {
                    Some(c) => writeln!(out, "{name}: {} ({})", c.len(), cycle_text(&g, c)).unwrap(),
                    None => writeln!(out, "{name}: acyclic").unwrap(),
                }
            }
            out
        }
    })
}

fn cmd_dominate(format: Format, b: Budgets, input: &Path, kind: Option<FamilyKind>) -> Outcome {
    let image = load_image(input)?;
    let g = target_graph(&image, kind, b)?;
    let set = graphmetrics::minimum_dominating_set(&g, b.budget_dominating)?;
    if !graphmetrics::is_dominating(&set, &g) {
        return Err(Failure::Verification(format!("internal: dominating set {set:?} rejected\n")));
    }
    let labels: Vec<String> = set.iter().map(|&v| g.label(v)).collect();
    Ok(match format {
        Format::Json => {
            let doc = json!({"size": set.len(), "set": labels});
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
        }
        _ => format!("domination number: {}\nset: {}\n", set.len(), labels.join(" ")),
    })
}

fn cmd_metrics(format: Format, b: Budgets, inputs: &[PathBuf], kind: Option<FamilyKind>) -> Outcome {
    let mut rows = Vec::new();
    for path in inputs {
        let image = load_image(path)?;
        let g = target_graph(&image, kind, b)?;
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let name = match kind {
            Some(k) => format!("{stem}:{k}"),
            None => stem,
        };
        rows.push(MetricsRow::compute(&name, &g, b.budget_cycle, b.budget_dominating));
    }
    Ok(match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rows).expect("json")),
        Format::Csv => export::metrics_csv(&rows)?,
        _ => {
            let show = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
            let mut out = String::from("name vertices edges components girth longest domination radius diameter\n");
            for r in &rows {
                writeln!(
                    out,
                    "{} {} {} {} {} {} {} {} {}",
                    r.name,
                    r.vertices,
                    r.edges,
                    r.components,
                    show(r.girth),
                    show(r.longest_cycle),
                    show(r.domination_number),
                    show(r.radius),
                    show(r.diameter)
                )
                .unwrap();
            }
            out
        }
    })
}

fn cmd_export_dot(
    b: Budgets,
    inputs: &[PathBuf],
    kind: Option<FamilyKind>,
    flavor: Option<Flavor>,
    highlight: bool,
) -> Outcome {
    let cycle_of = |g: &FiniteGraph| -> Result<Option<CycleWitness>, Failure> {
        if highlight {
            Ok(graphmetrics::longest_cycle(g, b.budget_cycle)?)
        } else {
            Ok(None)
        }
    };
    match (inputs, flavor) {
        ([x, y], Some(flavor)) => {
            let x = std::sync::Arc::new(load_image(x)?);
            let y = std::sync::Arc::new(load_image(y)?);
            let fg = homotopy::build_function_graph(&x, &y, flavor, b.budget_functions)?;
            let c = cycle_of(fg.graph())?;
            Ok(export::function_graph_to_dot(&fg, c.as_ref()))
        }
        ([x], None) => {
            let image = load_image(x)?;
            let g = target_graph(&image, kind, b)?;
            let c = cycle_of(&g)?;
            let name = kind.map_or("image".to_string(), |k| format!("{k} hyperspace"));
            Ok(export::graph_to_dot(&g, &name, c.as_ref()))
        }
        _ => Err(Failure::Usage(
            "export-dot takes one image, or a domain and a codomain image with --flavor".into(),
        )),
    }
}
