use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use copcover::bounds::{
    bounds_table, bounds_table_csv, nonorientable_upper_bound, orientable_upper_bound, NonorientableMethod,
    OrientableMethod,
};
use copcover::covering::{check_weak_cover, double_cover, CoveringMap};
use copcover::embedding::{
    add_crosscap, euler_genus, is_orientable_scheme, min_euler_genus, trace_faces, validate_scheme, EmbeddingScheme,
    GenusMode, DEFAULT_GENUS_BUDGET,
};
use copcover::game::{analyze_winning, play, transfer_strategy, RobberPlayer, ScriptedRobber, DEFAULT_MAX_NODES};
use copcover::graph::{generate, parse_graph6, write_graph6, Family, Graph};
use copcover::harness::{load_graph_corpus, run_corpus, verify_corpus, CorpusCommand};
use copcover::solver::{
    cop_number, dismantle, extract_strategies, solve_k_copwin, CopStrategy, RobberStrategy, SolveResult,
};

#[derive(Parser)]
#[command(name = "copcover", version, about = "Cops and robber on graphs, surfaces and covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CorpusOp {
    Copnum,
    Dismantle,
    Faces,
    Genus,
}

#[derive(Subcommand)]
enum Command {
    /// Print a generated graph in graph6, e.g. `gen cycle 5` or `gen grid 3 4`.
    Gen {
        /// Family name, or a full spec such as `disjoint_union(cycle:4,path:2)`.
        family: String,
        params: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Cop number of a graph (graph6 string or file).
    Copnum { graph: String },
    /// Solve the k-cop game.
    Solve {
        graph: String,
        #[arg(short)]
        k: usize,
        /// Write the extracted cop strategy here.
        #[arg(long)]
        strategy: Option<PathBuf>,
    },
    /// Dismantling order, or the irreducible remainder.
    Dismantle { graph: String },
    /// Play the solved cop strategy against the optimal or a scripted robber.
    Play {
        graph: String,
        #[arg(short)]
        k: usize,
        /// Robber script: start vertex then one vertex per move.
        #[arg(long, value_delimiter = ',')]
        robber: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Transfer a cover strategy to the base graph; verify it exhaustively,
    /// or with --simulate play one game.
    Transfer {
        #[arg(long)]
        cover: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
        #[arg(long)]
        simulate: bool,
        #[arg(long, value_delimiter = ',')]
        robber: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Faces of an embedding JSON file.
    Faces { embedding: PathBuf },
    /// Minimum Euler genus by exhaustive search.
    Genus {
        graph: String,
        /// Accepted for clarity; exhaustive search is the only method.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value = "any")]
        mode: GenusMode,
        #[arg(long, default_value_t = DEFAULT_GENUS_BUDGET)]
        budget: u128,
    },
    /// Add a crosscap to an orientable embedding.
    Crosscap { embedding: PathBuf },
    /// Orientable double cover of an embedding.
    Doublecover {
        embedding: PathBuf,
        /// Write the covering map here.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Check a covering map from G onto H.
    Weakcover {
        #[arg(long)]
        check: PathBuf,
        source: String,
        target: String,
    },
    /// Surface cop-number bounds.
    Bounds {
        #[arg(long)]
        table: bool,
        #[arg(long, default_value_t = 7)]
        max_genus: u64,
        /// Single genus instead of a table.
        #[arg(long)]
        genus: Option<u64>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run the cover pipeline over embedding (and covering-map) files.
    Verify {
        embeddings: PathBuf,
        #[arg(long)]
        covers: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run one analysis over a graph6 file or directory.
    Corpus {
        #[arg(value_enum)]
        op: CorpusOp,
        path: PathBuf,
        #[arg(long, default_value = "any")]
        mode: GenusMode,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// Distinguishes "the answer is no" from "the input was bad".
enum Failure {
    Verification(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A graph6 string, or a file whose first non-comment line is one.
fn read_graph(arg: &str) -> anyhow::Result<Graph> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        let body = read_text(path)?;
        body.lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .ok_or_else(|| anyhow!("{arg}: no graph6 line"))?
            .to_string()
    } else {
        arg.to_string()
    };
    parse_graph6(&text).with_context(|| format!("parsing graph6 `{text}`"))
}

fn read_scheme(path: &Path) -> anyhow::Result<EmbeddingScheme> {
    let s: EmbeddingScheme =
        serde_json::from_str(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if let Err(vs) = validate_scheme(&s) {
        let list: Vec<String> = vs.iter().map(ToString::to_string).collect();
        bail!("{}: invalid embedding: {}", path.display(), list.join("; "));
    }
    Ok(s)
}

/// Writes to stdout; a closed pipe (e.g. `| head`) ends the process quietly.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing stdout: {e}");
    }
}

fn print_json(v: &impl serde::Serialize) {
    emit(&(serde_json::to_string_pretty(v).expect("serialisable") + "\n"));
}

fn solve_doc(res: &SolveResult, cop_number: Option<usize>, started: Instant) -> Value {
    let histogram: serde_json::Map<String, Value> = res
        .ranks_histogram()
        .into_iter()
        .map(|(rank, count)| (rank.map_or_else(|| "unresolved".to_string(), |r| r.to_string()), json!(count)))
        .collect();
    let mut doc = json!({
        "n": res.graph().order(),
        "k": res.k(),
        "copwin": res.copwin,
        "states": res.states(),
        "ranks_histogram": histogram,
        "best_placement": res.best_placement,
        "elapsed_ms": started.elapsed().as_millis() as u64,
    });
    if let Some(c) = cop_number {
        doc["cop_number"] = json!(c);
    }
    doc
}

fn robber_player<'a>(
    script: Option<Vec<usize>>,
    fallback: &'a SolveResult,
) -> anyhow::Result<Box<dyn RobberPlayer + 'a>> {
    Ok(match script {
        Some(s) if s.is_empty() => bail!("--robber needs at least a start vertex"),
        Some(s) => Box::new(ScriptedRobber::new(s[0], s[1..].to_vec())),
        None => Box::new(RobberStrategy::new(fallback)),
    })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Gen { family, params, seed } => {
            let fam =
                if family.contains([':', '(']) { Family::parse(&family) } else { Family::from_name(&family, &params) }
                    .map_err(anyhow::Error::from)?;
            let g = generate(&fam, seed).map_err(anyhow::Error::from)?;
            emit(&(write_graph6(&g).map_err(anyhow::Error::from)? + "\n"));
        }
        Command::Copnum { graph } => {
            let g = read_graph(&graph)?;
            let started = Instant::now();
            let (c, res) = cop_number(&g).map_err(anyhow::Error::from)?;
            print_json(&solve_doc(&res, Some(c), started));
        }
        Command::Solve { graph, k, strategy } => {
            let g = read_graph(&graph)?;
            let started = Instant::now();
            let res = solve_k_copwin(&g, k).map_err(anyhow::Error::from)?;
            if let Some(path) = strategy {
                let (cop, _) = extract_strategies(&res).map_err(|e| Failure::Verification(e.to_string()))?;
                fs::write(&path, cop.to_json().map_err(anyhow::Error::from)? + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            print_json(&solve_doc(&res, None, started));
        }
        Command::Dismantle { graph } => print_json(&dismantle(&read_graph(&graph)?)),
        Command::Play { graph, k, robber, limit } => {
            let g = read_graph(&graph)?;
            let res = solve_k_copwin(&g, k).map_err(anyhow::Error::from)?;
            let (cop, _) = extract_strategies(&res).map_err(|e| Failure::Verification(e.to_string()))?;
            let mut robber = robber_player(robber, &res)?;
            let t = play(&g, &mut &cop, &mut robber, limit).map_err(anyhow::Error::from)?;
            print_json(&t);
        }
        Command::Transfer { cover, strategy, simulate, robber, limit } => {
            let map = CoveringMap::from_json(&read_text(&cover)?).map_err(anyhow::Error::from)?;
            let strat =
                CopStrategy::from_json(&read_text(&strategy)?).map_err(|e| anyhow!("{}: {e}", strategy.display()))?;
            let player = transfer_strategy(&map, &strat).map_err(anyhow::Error::from)?;
            let base = &map.target;
            if simulate {
                let res = solve_k_copwin(base, strat.k).map_err(anyhow::Error::from)?;
                let mut robber = robber_player(robber, &res)?;
                let mut cops = player;
                let t = play(base, &mut cops, &mut robber, limit).map_err(|e| Failure::Verification(e.to_string()))?;
                print_json(&t);
            } else {
                let analysis = analyze_winning(base, &player, strat.k, DEFAULT_MAX_NODES);
                print_json(&analysis);
                if !analysis.winning {
                    return Err(Failure::Verification(analysis.failure.unwrap_or_default()));
                }
            }
        }
        Command::Faces { embedding } => {
            let s = read_scheme(&embedding)?;
            let faces = trace_faces(&s);
            let lengths: Vec<usize> = faces.faces.iter().map(Vec::len).collect();
            print_json(&json!({
                "faces": faces.count(),
                "face_lengths": lengths,
                "euler_characteristic": s.euler_characteristic(),
                "euler_genus": euler_genus(&s),
                "orientable": is_orientable_scheme(&s),
            }));
        }
        Command::Genus { graph, exhaustive: _, mode, budget } => {
            let g = read_graph(&graph)?;
            print_json(&min_euler_genus(&g, mode, budget).map_err(anyhow::Error::from)?);
        }
        Command::Crosscap { embedding } => {
            let s = read_scheme(&embedding)?;
            print_json(&add_crosscap(&s).map_err(anyhow::Error::from)?);
        }
        Command::Doublecover { embedding, map } => {
            let s = read_scheme(&embedding)?;
            let (cover, m) = double_cover(&s);
            if let Some(path) = map {
                fs::write(&path, m.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            print_json(&cover);
        }
        Command::Weakcover { check, source, target } => {
            let map = CoveringMap::from_json(&read_text(&check)?).map_err(anyhow::Error::from)?;
            let (g, h) = (read_graph(&source)?, read_graph(&target)?);
            if g != map.source || h != map.target {
                return Err(Failure::Input(anyhow!("graphs differ from those recorded in {}", check.display())));
            }
            match check_weak_cover(&map.p, &g, &h) {
                Ok(cert) => print_json(&cert),
                Err(v) => return Err(Failure::Verification(v.to_string())),
            }
        }
        Command::Bounds { table, max_genus, genus, format } => match (table, genus) {
            (false, Some(g)) => print_json(&json!({
                "g": g,
                "orientable_quilliot": orientable_upper_bound(g, OrientableMethod::Quilliot),
                "orientable_schroder": orientable_upper_bound(g, OrientableMethod::Schroder),
                "nonorientable_andreae": nonorientable_upper_bound(g, NonorientableMethod::Andreae),
                "nonorientable_nowakowski_schroder": nonorientable_upper_bound(g, NonorientableMethod::NowakowskiSchroder),
                "nonorientable_double_cover": nonorientable_upper_bound(g, NonorientableMethod::DoubleCover),
            })),
            (true, None) => {
                let rows = bounds_table(max_genus);
                match format {
                    Format::Csv => emit(&bounds_table_csv(&rows)),
                    Format::Json => print_json(&rows),
                }
            }
            _ => return Err(Failure::Input(anyhow!("pass either --table or --genus"))),
        },
        Command::Verify { embeddings, covers, workers, format } => {
            for dir in std::iter::once(&embeddings).chain(covers.as_ref()) {
                if !dir.is_dir() {
                    return Err(Failure::Input(anyhow!("{} is not a directory", dir.display())));
                }
            }
            let report = verify_corpus(&embeddings, covers.as_deref(), workers).map_err(anyhow::Error::from)?;
            match format {
                Format::Json => emit(&(report.to_json() + "\n")),
                Format::Csv => emit(&report.to_csv()),
            }
            if !report.all_pass() {
                return Err(Failure::Verification(format!(
                    "{} of {} instances failed",
                    report.summary.failures, report.summary.instances
                )));
            }
        }
        Command::Corpus { op, path, mode, workers, format } => {
            let command = match op {
                CorpusOp::Copnum => CorpusCommand::Copnum,
                CorpusOp::Dismantle => CorpusCommand::Dismantle,
                CorpusOp::Faces => CorpusCommand::Faces,
                CorpusOp::Genus => CorpusCommand::Genus(mode),
            };
            let items = load_graph_corpus(&path).map_err(anyhow::Error::from)?;
            let report = run_corpus(command, &items, workers);
            match format {
                Format::Json => emit(&(report.to_json() + "\n")),
                Format::Csv => emit(&report.to_csv()),
            }
            if report.errors > 0 {
                return Err(Failure::Input(anyhow!(
                    "{} of {} items could not be processed",
                    report.errors,
                    report.items
                )));
            }
        }
    }
    Ok(())
}
