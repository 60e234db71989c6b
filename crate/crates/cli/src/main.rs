use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use motifcf_core::artifacts::{
    compare, read_json, read_motifs, render_instances, render_summary, write_json, CfFile, ReportFile,
    TableFormat,
};
use motifcf_core::dataset::load_ucr;
use motifcf_core::error::{Error, ErrorKind, Stage, StageExt};
use motifcf_core::mining::{validate_fractions, MiningConfig};
use motifcf_core::pipeline::{self, ClassifierKind, RunConfig};
use motifcf_core::{LabelMap, Method};

/// Mine class-discriminative motifs from UCR-format time series and use them
/// to build counterfactual explanations for a black-box classifier.
#[derive(Parser, Debug)]
#[command(name = "motifcf", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mine one motif per class from a training file and write motifs.json.
    Mine(MineArgs),
    /// Generate counterfactuals for every test series and write cfs.json.
    Explain(ExplainArgs),
    /// Compute metrics for a cfs.json and write report.json.
    Evaluate(EvaluateArgs),
    /// Print the per-instance metrics of a report as CSV or JSON.
    Report(ReportArgs),
    /// Run mine, explain and evaluate in one go.
    Run(RunArgs),
    /// Tabulate aggregate metrics from several reports, one row per dataset and method.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
struct DataArgs {
    /// Training file (UCR text format).
    #[arg(long)]
    train: PathBuf,
    /// Raw label to class mapping, e.g. "-1:0,1:1". Defaults to ascending raw labels.
    #[arg(long, allow_hyphen_values = true)]
    label_map: Option<String>,
}

#[derive(Args, Debug)]
struct MiningArgs {
    /// Motif lengths as fractions of the series length.
    #[arg(long, value_delimiter = ',', default_values_t = [0.3, 0.5, 0.7])]
    fractions: Vec<f64>,
    /// Score every candidate in full instead of abandoning hopeless ones.
    #[arg(long)]
    no_early_abandon: bool,
}

impl MiningArgs {
    fn config(&self) -> MiningConfig {
        MiningConfig {
            fractions: self.fractions.clone(),
            early_abandon: !self.no_early_abandon,
        }
    }
}

#[derive(Args, Debug)]
struct MineArgs {
    #[command(flatten)]
    data: DataArgs,
    #[command(flatten)]
    mining: MiningArgs,
    /// Output path for motifs.json.
    #[arg(long, default_value = "motifs.json")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ExplainArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Test file (UCR text format); every series is explained.
    #[arg(long)]
    test: PathBuf,
    /// motifs.json from `mine` (required for mgcf).
    #[arg(long)]
    motifs: Option<PathBuf>,
    /// Explanation method: mgcf or nun.
    #[arg(long, default_value = "mgcf")]
    method: String,
    /// Classifier to explain.
    #[arg(long, default_value = "1nn")]
    classifier: String,
    /// Output path for cfs.json.
    #[arg(long, default_value = "cfs.json")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    /// cfs.json from `explain`.
    #[arg(long)]
    cfs: PathBuf,
    /// Mining time to record in the report, in seconds.
    #[arg(long)]
    mining_runtime: Option<f64>,
    /// Output path for report.json.
    #[arg(long, default_value = "report.json")]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ReportArgs {
    /// report.json from `evaluate` or `run`.
    #[arg(long, default_value = "report.json")]
    report: PathBuf,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Test file (UCR text format); every series is explained.
    #[arg(long)]
    test: PathBuf,
    #[command(flatten)]
    mining: MiningArgs,
    /// Explanation method: mgcf or nun.
    #[arg(long, default_value = "mgcf")]
    method: String,
    /// Classifier to explain.
    #[arg(long, default_value = "1nn")]
    classifier: String,
    /// Directory for motifs.json, cfs.json and report.json.
    #[arg(long, env = "MOTIFCF_OUTPUT_DIR", default_value = "out")]
    output_dir: PathBuf,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Report files.
    #[arg(required = true)]
    reports: Vec<PathBuf>,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn label_map(arg: &Option<String>) -> Result<Option<LabelMap>, Error> {
    arg.as_deref().map(str::parse).transpose()
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_train(data: &DataArgs) -> Result<motifcf_core::LabeledDataset, Error> {
    let map = label_map(&data.label_map)?;
    load_ucr(&data.train, map.as_ref()).stage(Stage::Dataset)
}

fn mine(args: MineArgs) -> Result<(), Error> {
    let config = args.mining.config();
    validate_fractions(&config.fractions)?;
    let train = load_train(&args.data)?;
    let mined = pipeline::mine(&train, &config)?;
    log::info!(
        "mined {} candidates ({} abandoned) in {:.3}s",
        mined.stats.candidates,
        mined.stats.abandoned,
        mined.runtime_seconds
    );
    write_json(&args.out, &mined.motifs).stage(Stage::Mine)
}

fn explain(args: ExplainArgs) -> Result<(), Error> {
    let method: Method = args.method.parse()?;
    let classifier: ClassifierKind = args.classifier.parse()?;
    let map = label_map(&args.data.label_map)?;
    let (train, test) = pipeline::load_datasets(&args.data.train, &args.test, map.as_ref())?;
    let motifs = match (&args.motifs, method) {
        (Some(path), _) => Some(read_motifs(path).stage(Stage::Explain)?),
        (None, Method::Mgcf) => {
            return Err(Error::InvalidArgument(
                "--motifs is required for --method mgcf".into(),
            ))
        }
        (None, Method::Nun) => None,
    };
    let cfs = pipeline::explain(&train, &test, motifs.as_ref(), method, classifier)?;
    write_json(&args.out, &cfs).stage(Stage::Explain)
}

fn evaluate(args: EvaluateArgs) -> Result<(), Error> {
    let cfs: CfFile = read_json(&args.cfs).stage(Stage::Evaluate)?;
    let report = pipeline::evaluate_cfs(&cfs, args.mining_runtime)?;
    write_json(&args.out, &report).stage(Stage::Evaluate)
}

fn report(args: ReportArgs) -> Result<(), Error> {
    let format: TableFormat = args.format.parse()?;
    let report: ReportFile = read_json(&args.report).stage(Stage::Report)?;
    emit(&render_instances(&report, format)?, &args.out)
}

fn run(args: RunArgs) -> Result<(), Error> {
    let mut cfg = RunConfig::new(&args.data.train, &args.test, &args.output_dir);
    cfg.fractions = args.mining.fractions.clone();
    cfg.early_abandon = !args.mining.no_early_abandon;
    cfg.method = args.method.parse()?;
    cfg.classifier = args.classifier.parse()?;
    cfg.label_map = label_map(&args.data.label_map)?;
    validate_fractions(&cfg.fractions)?;
    let out = pipeline::run_pipeline(&cfg)?;
    let r = &out.report;
    println!(
        "{} {}: flip_rate={:.4} mean_sparsity={:.4} mean_proximity={:.4} mean_segments={:.4} runtime={:.4}s mining={:.3}s",
        r.dataset,
        r.method,
        r.flip_rate,
        r.mean_sparsity,
        r.mean_proximity,
        r.mean_segments,
        r.runtime_seconds,
        r.mining_runtime_seconds.unwrap_or(0.0),
    );
    println!("wrote {}", cfg.output_dir.display());
    Ok(())
}

fn compare_cmd(args: CompareArgs) -> Result<(), Error> {
    let format: TableFormat = args.format.parse()?;
    let rows = compare(&args.reports)?;
    emit(&render_summary(&rows, format)?, &args.out)
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Usage => 1,
        ErrorKind::Data => 2,
        ErrorKind::Internal => 3,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Mine(a) => mine(a),
        Command::Explain(a) => explain(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Report(a) => report(a),
        Command::Run(a) => run(a),
        Command::Compare(a) => compare_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
