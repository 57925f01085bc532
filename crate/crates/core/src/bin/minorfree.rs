use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use minorfree::generators::{generate, Family, GenSpec};
use minorfree::graph::io::write_graph;
use minorfree::hamiltonicity::{EstimatorConfig, OneSidedConfig};
use minorfree::harness::probe::{spread, ProbeSpec};
use minorfree::harness::{
    execute_all, query_scaling_probe, run_suite, ExperimentReport, Format, GraphSource, Header, RunOptions, RunSpec,
    SpanParams, Task, TOOL_VERSION,
};
use minorfree::oracles::OracleSpec;
use minorfree::property::PropertyConfig;
use minorfree::Error;

#[derive(Parser)]
#[command(name = "minorfree", version, about = "Sublinear algorithms on minor-free graphs")]
struct Cli {
    /// Master seed; trials use seed, seed+1, ...
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output file (stdout if absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Jsonl)]
    format: OutFormat,
    /// Required whenever parameters depart from the analysed formulas.
    #[arg(long, global = true)]
    scaled_mode_ack: bool,
    /// Record wall time per run (reports are then no longer byte-reproducible).
    #[arg(long, global = true)]
    timings: bool,
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Jsonl,
    Csv,
}

impl From<OutFormat> for Format {
    fn from(f: OutFormat) -> Format {
        match f {
            OutFormat::Jsonl => Format::Jsonl,
            OutFormat::Csv => Format::Csv,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated instance in the text edge-list format.
    Generate {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        wmax: Option<u64>,
        #[arg(long)]
        block: Option<usize>,
        /// Also write the ground truth as JSON here.
        #[arg(long)]
        truth: Option<PathBuf>,
    },
    /// Cover sizes, connectivity and query cost of a covering oracle.
    OracleStats {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value_t = 100)]
        calls: usize,
        /// Derive a partition from the covers and report its cut.
        #[arg(long)]
        derive: bool,
    },
    /// Hamiltonian-path testing and distance estimation.
    TestHam {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, value_enum, default_value_t = HamMode::OneSided)]
        mode: HamMode,
    },
    /// Spanning subgraphs: exact, global or per-edge.
    BuildSpanner {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        span: SpanArgs,
        #[arg(long, value_enum, default_value_t = SpanAlgorithm::Global)]
        algorithm: SpanAlgorithm,
        /// Answer only this many sampled edges (local algorithms).
        #[arg(long)]
        edges: Option<usize>,
    },
    /// One-sided test of a monotone additive property.
    PropertyTest {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value = "bipartite")]
        property: String,
    },
    /// Run every experiment of a TOML suite.
    RunSuite { config: PathBuf },
    /// Mean per-item queries across graph sizes.
    ScalingProbe {
        #[arg(long)]
        family: Family,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, value_enum)]
        algorithm: ProbeAlgorithm,
        #[command(flatten)]
        oracle: OracleArgs,
        #[command(flatten)]
        span: SpanArgs,
        #[arg(long)]
        wmax: Option<u64>,
        #[arg(long)]
        block: Option<usize>,
        #[arg(long)]
        edges: Option<usize>,
        #[arg(long, default_value_t = 1)]
        trials: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HamMode {
    OneSided,
    Tolerant,
    Estimate,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpanAlgorithm {
    Global,
    LocalBounded,
    LocalUnbounded,
    Kruskal,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProbeAlgorithm {
    LocalBounded,
    LocalUnbounded,
    Kruskal,
    OneSided,
    Property,
    OracleStats,
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file in the text edge-list format.
    #[arg(long, conflicts_with_all = ["family", "n"])]
    graph: Option<PathBuf>,
    #[arg(long, requires = "n")]
    family: Option<Family>,
    #[arg(long, requires = "family")]
    n: Option<usize>,
    #[arg(long)]
    wmax: Option<u64>,
    #[arg(long)]
    block: Option<usize>,
    #[arg(long, default_value_t = 0.5)]
    epsilon: f64,
    #[arg(long, default_value_t = 1)]
    trials: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Exhaustive,
    Ball,
    Walk,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    oracle: Option<OracleMode>,
    /// Part size of the exhaustive oracle (automatic if absent).
    #[arg(long)]
    k: Option<usize>,
    /// Ball radius (ceil(1/eps) if absent).
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    cap: usize,
    #[arg(long, default_value_t = 4)]
    ell: u64,
    #[arg(long, default_value_t = 1)]
    c: u32,
    #[arg(long, default_value_t = 8)]
    walks: usize,
}

impl OracleArgs {
    fn spec(&self, default: OracleMode) -> OracleSpec {
        match self.oracle.unwrap_or(default) {
            OracleMode::Exhaustive => OracleSpec::Exhaustive { k: self.k },
            OracleMode::Ball => OracleSpec::Ball {
                radius: self.radius,
                cap: self.cap,
            },
            OracleMode::Walk => OracleSpec::Walk {
                ell: self.ell,
                c: self.c,
                walks_per_length: self.walks,
                part_size_cap: self.cap,
            },
        }
    }
}

#[derive(Args)]
struct SpanArgs {
    #[arg(long, default_value_t = 9.0)]
    r: f64,
    #[arg(long)]
    heavy_threshold: Option<f64>,
    #[arg(long)]
    sample_size: Option<usize>,
}

impl SpanArgs {
    fn params(&self, oracle: OracleSpec) -> SpanParams {
        SpanParams {
            r: self.r,
            heavy_threshold: self.heavy_threshold,
            sample_size: self.sample_size,
            oracle,
        }
    }
}

fn seeds(seed: u64, trials: u64) -> Vec<u64> {
    (0..trials.max(1)).map(|i| seed.wrapping_add(i)).collect()
}

fn source(g: &GraphArgs, seed: u64) -> Result<GraphSource, Error> {
    match (&g.graph, g.family, g.n) {
        (Some(p), _, _) => Ok(GraphSource::File(p.display().to_string())),
        (None, Some(family), Some(n)) => Ok(GraphSource::Generate(GenSpec {
            family,
            n,
            seed,
            wmax: g.wmax,
            block: g.block,
        })),
        _ => Err(Error::Usage("give --graph FILE or --family and --n".into())),
    }
}

fn output(out: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn check_ack(task: &Task, ack: bool) -> Result<(), Error> {
    if task.is_scaled() && !ack {
        return Err(Error::Usage(format!(
            "{} parameters depart from the default formulas; pass --scaled-mode-ack",
            task.name()
        )));
    }
    Ok(())
}

fn single(cli: &Cli, subcommand: &str, graph: &GraphArgs, task: Task) -> Result<usize, Error> {
    check_ack(&task, cli.scaled_mode_ack)?;
    let seeds = seeds(cli.seed, graph.trials);
    let specs = seeds
        .iter()
        .map(|&s| {
            Ok(RunSpec {
                graph: source(graph, s)?,
                seed: s,
                epsilon: graph.epsilon,
                task: task.clone(),
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let runs = execute_all(&specs, RunOptions { timings: cli.timings }, cli.threads)?;
    let header = Header {
        tool_version: TOOL_VERSION.to_string(),
        subcommand: subcommand.to_string(),
        name: None,
        params: json!({
            "graph": specs[0].graph,
            "epsilon": graph.epsilon,
            "task": task,
            "trials": seeds.len(),
        }),
        scaled_mode: task.is_scaled(),
        seeds,
        warnings: Vec::new(),
    };
    let report = ExperimentReport::new(header, runs);
    let mut w = output(&cli.out)?;
    report.write(&mut w, cli.format.into())?;
    w.flush()?;
    Ok(report.aggregate.errors)
}

#[derive(Serialize)]
#[serde(tag = "record", rename_all = "snake_case")]
enum ProbeLine<'a> {
    Header {
        tool_version: &'a str,
        subcommand: &'a str,
        params: &'a ProbeSpec,
    },
    Row(&'a minorfree::harness::ProbeRow),
    Aggregate {
        spread: f64,
    },
}

/// Number of runs that recorded an error.
fn run(cli: &Cli) -> Result<usize, Error> {
    match &cli.cmd {
        Cmd::Generate {
            family,
            n,
            wmax,
            block,
            truth,
        } => {
            let inst = generate(&GenSpec {
                family: *family,
                n: *n,
                seed: cli.seed,
                wmax: *wmax,
                block: *block,
            })?;
            let mut w = output(&cli.out)?;
            w.write_all(write_graph(&inst.graph).as_bytes())?;
            w.flush()?;
            if let Some(p) = truth {
                std::fs::write(p, serde_json::to_string_pretty(&inst.truth)?)?;
            }
            Ok(0)
        }
        Cmd::OracleStats {
            graph,
            oracle,
            calls,
            derive,
        } => single(
            cli,
            "oracle-stats",
            graph,
            Task::OracleStats {
                oracle: oracle.spec(OracleMode::Ball),
                calls: *calls,
                derive: *derive,
            },
        ),
        Cmd::TestHam { graph, oracle, mode } => {
            let task = match mode {
                HamMode::OneSided => Task::OneSidedHam {
                    oracle: oracle.spec(OracleMode::Ball),
                    config: OneSidedConfig::default(),
                },
                HamMode::Tolerant => Task::TolerantHam {
                    oracle: oracle.spec(OracleMode::Exhaustive),
                    config: EstimatorConfig::default(),
                },
                HamMode::Estimate => Task::EstimateHam {
                    oracle: oracle.spec(OracleMode::Exhaustive),
                    config: EstimatorConfig::default(),
                },
            };
            single(cli, "test-ham", graph, task)
        }
        Cmd::BuildSpanner {
            graph,
            oracle,
            span,
            algorithm,
            edges,
        } => {
            let span = span.params(oracle.spec(OracleMode::Exhaustive));
            let task = match algorithm {
                SpanAlgorithm::Global => Task::GlobalSpanner { span },
                SpanAlgorithm::LocalBounded => Task::LocalBounded { span, edges: *edges },
                SpanAlgorithm::LocalUnbounded => Task::LocalUnbounded { span, edges: *edges },
                SpanAlgorithm::Kruskal => Task::Kruskal {},
            };
            single(cli, "build-spanner", graph, task)
        }
        Cmd::PropertyTest {
            graph,
            oracle,
            property,
        } => single(
            cli,
            "property-test",
            graph,
            Task::Property {
                property: property.clone(),
                oracle: oracle.spec(OracleMode::Ball),
                config: PropertyConfig::default(),
            },
        ),
        Cmd::RunSuite { config } => {
            let reports = run_suite(config, cli.scaled_mode_ack, RunOptions { timings: cli.timings })?;
            let mut w = output(&cli.out)?;
            minorfree::harness::report::write_reports(&reports, &mut w, cli.format.into())?;
            w.flush()?;
            Ok(reports.iter().map(|r| r.aggregate.errors).sum())
        }
        Cmd::ScalingProbe {
            family,
            ns,
            epsilon,
            algorithm,
            oracle,
            span,
            wmax,
            block,
            edges,
            trials,
        } => {
            let task = match algorithm {
                ProbeAlgorithm::LocalBounded => Task::LocalBounded {
                    span: span.params(oracle.spec(OracleMode::Ball)),
                    edges: *edges,
                },
                ProbeAlgorithm::LocalUnbounded => Task::LocalUnbounded {
                    span: span.params(oracle.spec(OracleMode::Exhaustive)),
                    edges: *edges,
                },
                ProbeAlgorithm::Kruskal => Task::Kruskal {},
                ProbeAlgorithm::OneSided => Task::OneSidedHam {
                    oracle: oracle.spec(OracleMode::Ball),
                    config: OneSidedConfig::default(),
                },
                ProbeAlgorithm::Property => Task::Property {
                    property: "bipartite".into(),
                    oracle: oracle.spec(OracleMode::Ball),
                    config: PropertyConfig::default(),
                },
                ProbeAlgorithm::OracleStats => Task::OracleStats {
                    oracle: oracle.spec(OracleMode::Ball),
                    calls: 100,
                    derive: false,
                },
            };
            check_ack(&task, cli.scaled_mode_ack)?;
            let spec = ProbeSpec {
                family: *family,
                ns: ns.clone(),
                epsilon: *epsilon,
                task,
                seeds: seeds(cli.seed, *trials),
                wmax: *wmax,
                block: *block,
            };
            let rows = query_scaling_probe(&spec, cli.threads)?;
            let mut w = output(&cli.out)?;
            match cli.format {
                OutFormat::Jsonl => {
                    let mut lines = vec![ProbeLine::Header {
                        tool_version: TOOL_VERSION,
                        subcommand: "scaling-probe",
                        params: &spec,
                    }];
                    lines.extend(rows.iter().map(ProbeLine::Row));
                    lines.push(ProbeLine::Aggregate { spread: spread(&rows) });
                    for l in lines {
                        serde_json::to_writer(&mut w, &l)?;
                        w.write_all(b"\n")?;
                    }
                }
                OutFormat::Csv => {
                    let mut wr = csv::Writer::from_writer(&mut w);
                    for r in &rows {
                        wr.serialize(r).map_err(|e| Error::Usage(format!("csv output failed: {e}")))?;
                    }
                    wr.flush()?;
                }
            }
            w.flush()?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(failed) => {
            eprintln!("error: {failed} run(s) failed; see the `error` field");
            ExitCode::FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Usage(_) | Error::Parse { .. } => ExitCode::from(2),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
