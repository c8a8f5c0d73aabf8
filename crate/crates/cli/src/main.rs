use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wedgehom_cli::report::Report;
use wedgehom_cli::spec::{parse_spec, GraphSpec};
use wedgehom_cli::sweep::{instances, render_text, run_sweep, SweepFamily, SweepParams};
use wedgehom_cli::{
    check_folds, cmd_homology, cmd_predict, cmd_reduce, cmd_verify, verify_exit_code, CliError,
    Config, FieldArg,
};

/// Independence complexes of paths, cycles and their wedges: brute-force
/// homology, fold reductions and closed-form predictions.
#[derive(Debug, Parser)]
#[command(name = "wedgehom", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Refuse graphs with more vertices than this.
    #[arg(long, global = true, env = "WEDGEHOM_MAX_VERTICES", default_value_t = 26)]
    max_vertices: usize,
    /// Refuse independence complexes with more faces than this.
    #[arg(long, global = true, env = "WEDGEHOM_MAX_FACES", default_value_t = 1 << 20)]
    max_faces: usize,
    /// Coefficients: auto (integers, GF(32003) for large complexes),
    /// integers, or a prime.
    #[arg(long, global = true, env = "WEDGEHOM_FIELD", default_value = "auto")]
    field: String,
    /// Step budget for collapse searches; ten per face when unset.
    #[arg(long, global = true, env = "WEDGEHOM_COLLAPSE_BUDGET")]
    collapse_budget: Option<usize>,
    /// Sweep worker threads; 0 means one per core.
    #[arg(long, global = true, env = "WEDGEHOM_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Seed for random corpora.
    #[arg(long, global = true, env = "WEDGEHOM_SEED", default_value_t = 0)]
    seed: u64,
    /// Newline-delimited JSON reports instead of text.
    #[arg(long, global = true, env = "WEDGEHOM_JSON")]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced homology of I(G).
    Homology { spec: String },
    /// Fold reduction trace of G.
    Reduce { spec: String },
    /// Closed-form prediction, with the oracle alongside. Always exits 0.
    Predict { spec: String },
    /// Prediction against the oracle. Exit 0 match, 2 mismatch, 3 unknown.
    Verify {
        spec: String,
        /// Attach the deletion/link splitting at the wedge point.
        #[arg(long)]
        decompose: bool,
    },
    /// Verify a whole family over a parameter grid. Exit 2 on any mismatch.
    Sweep(SweepArgs),
    /// Fold invariance on seeded random graphs. Exit 2 on any failure.
    CheckFolds {
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Largest random graph.
        #[arg(long, default_value_t = 12)]
        graph_size: usize,
    },
}

#[derive(Debug, Args)]
struct SweepArgs {
    family: SweepFamily,
    /// Smallest size parameter (family default when unset).
    #[arg(long)]
    min: Option<usize>,
    /// Largest size parameter (family default when unset).
    #[arg(long)]
    max: Option<usize>,
    /// Number of cycles for k-cycles.
    #[arg(long, default_value_t = 3)]
    cycles: usize,
    /// Quotients a, b, c of the cycle-wedge-path residue grid.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    abc: Vec<usize>,
    /// cycle-wedge-path over n, m in [min, max] and k <= ceil(m/2).
    #[arg(long)]
    ranged: bool,
    /// Arm lengths for terminal-paths; empty means [min, max].
    #[arg(long, value_delimiter = ',', default_value = "4,5,7,8")]
    arms: Vec<usize>,
    #[arg(long, default_value_t = 2)]
    min_arms: usize,
    #[arg(long, default_value_t = 3)]
    max_arms: usize,
    /// Attach deletion/link splittings to cycle wedges.
    #[arg(long)]
    decompose: bool,
    /// Also write PREFIX.txt and PREFIX.ndjson.
    #[arg(long, value_name = "PREFIX")]
    output: Option<String>,
}

fn config(g: &GlobalArgs) -> Result<Config, CliError> {
    Ok(Config {
        max_vertices: g.max_vertices,
        max_faces: g.max_faces,
        coefficients: g.field.parse::<FieldArg>()?.0,
        collapse_budget: g.collapse_budget.filter(|&b| b > 0),
        decompose: false,
    })
}

fn emit(report: &Report, json: bool) -> Result<(), CliError> {
    if json {
        println!("{}", serde_json::to_string(report)?);
    } else {
        print!("{report}");
    }
    Ok(())
}

fn single(
    spec: &str,
    cfg: &Config,
    json: bool,
    cmd: fn(&GraphSpec, &Config) -> Result<Report, CliError>,
) -> Result<Report, CliError> {
    let report = cmd(&parse_spec(spec)?, cfg)?;
    emit(&report, json)?;
    Ok(report)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let mut cfg = config(&cli.global)?;
    let json = cli.global.json;
    match cli.command {
        Command::Homology { spec } => single(&spec, &cfg, json, cmd_homology).map(|_| 0),
        Command::Reduce { spec } => single(&spec, &cfg, json, cmd_reduce).map(|_| 0),
        Command::Predict { spec } => single(&spec, &cfg, json, cmd_predict).map(|_| 0),
        Command::Verify { spec, decompose } => {
            cfg.decompose = decompose;
            single(&spec, &cfg, json, cmd_verify).map(|r| verify_exit_code(&r))
        }
        Command::Sweep(args) => {
            cfg.decompose = args.decompose;
            let params = SweepParams {
                min: args.min,
                max: args.max,
                cycles: args.cycles,
                abc: args.abc,
                ranged: args.ranged,
                arms: args.arms,
                min_arms: args.min_arms,
                max_arms: args.max_arms,
            };
            let result = run_sweep(instances(args.family, &params)?, &cfg, cli.global.jobs)?;
            for r in result.reports.iter().filter(|r| r.skipped.is_some()) {
                eprintln!("warning: skipped {}: {}", r.spec, r.skipped.as_deref().unwrap_or_default());
            }
            let ndjson = result
                .reports
                .iter()
                .map(serde_json::to_string)
                .collect::<Result<Vec<_>, _>>()?
                .join("\n");
            let text = render_text(&result);
            if json {
                println!("{ndjson}");
            } else {
                print!("{text}");
            }
            if let Some(prefix) = args.output {
                fs::write(format!("{prefix}.txt"), &text)?;
                fs::write(format!("{prefix}.ndjson"), ndjson + "\n")?;
            }
            Ok(result.exit_code())
        }
        Command::CheckFolds { count, graph_size } => {
            let c = check_folds(count, graph_size, cli.global.seed, &cfg)?;
            if json {
                println!("{}", serde_json::to_string(&c)?);
            } else {
                println!(
                    "seed {}: {} graphs, {} with a fold, {} failures",
                    c.seed,
                    c.graphs,
                    c.folded,
                    c.failures.len()
                );
                for (n, edges) in &c.failures {
                    println!("  failure on {n} vertices: {edges:?}");
                }
            }
            Ok(if c.failures.is_empty() { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => {
            let _ = std::io::stdout().flush();
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
