use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use netmobility::equality::Spacing;
use netmobility::generators::{generate, GrowthConfig, GrowthModel};
use netmobility::taxonomy::default_t1_fractions;
use netmobility::{Delimiter, FormatOptions, Scaling};
use netmobility_cli::output::{self, Warning};
use netmobility_cli::pipeline::{self, AnalysisOptions, RunConfig};

#[derive(Parser)]
#[command(
    name = "netmobility",
    version,
    about = "Equality and hierarchical mobility of growing networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and canonicalize an edge list; print its summary.
    Ingest(IngestArgs),
    /// Gini trajectory of the degree distribution.
    Equality(EqualityArgs),
    /// Mobility taxonomy at each t1 against the full stream.
    Taxonomy(TaxonomyArgs),
    /// Two-component PCA over a taxonomy.csv.
    Pca(PcaArgs),
    /// Generate a synthetic growth-model edge list.
    Generate(GenerateArgs),
    /// Full analysis of every dataset in a manifest.
    Run(RunArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum DelimiterArg {
    Comma,
    Tab,
    Whitespace,
}

impl From<DelimiterArg> for Delimiter {
    fn from(d: DelimiterArg) -> Self {
        match d {
            DelimiterArg::Comma => Delimiter::Comma,
            DelimiterArg::Tab => Delimiter::Tab,
            DelimiterArg::Whitespace => Delimiter::Whitespace,
        }
    }
}

#[derive(Args, Clone)]
struct FormatArgs {
    #[arg(long, value_enum, default_value = "whitespace")]
    delimiter: DelimiterArg,
    /// Zero-based column of the source node.
    #[arg(long, default_value_t = 0)]
    source_col: usize,
    #[arg(long, default_value_t = 1)]
    target_col: usize,
    #[arg(long, default_value_t = 2)]
    time_col: usize,
    /// Keep only the first N distinct edges in time order.
    #[arg(long)]
    max_edges: Option<usize>,
}

impl FormatArgs {
    fn format(&self) -> FormatOptions {
        FormatOptions {
            delimiter: self.delimiter.into(),
            source_col: self.source_col,
            target_col: self.target_col,
            time_col: self.time_col,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SpacingArg {
    Time,
    Edges,
}

#[derive(Args, Clone)]
struct AnalysisArgs {
    #[command(flatten)]
    format: FormatArgs,
    /// Number of equality snapshots.
    #[arg(long, default_value_t = 100)]
    n_points: usize,
    /// Equality snapshot spacing: normalized time or edge fraction.
    #[arg(long, value_enum, default_value = "time")]
    spacing: SpacingArg,
    /// Comma-separated t1 edge fractions.
    #[arg(long, value_delimiter = ',')]
    t1_fractions: Option<Vec<f64>>,
}

impl AnalysisArgs {
    fn options(&self) -> AnalysisOptions {
        AnalysisOptions {
            format: self.format.format(),
            max_edges: self.format.max_edges,
            n_points: self.n_points,
            spacing: match self.spacing {
                SpacingArg::Time => Spacing::NormalizedTime,
                SpacingArg::Edges => Spacing::EdgeFraction,
            },
            t1_fractions: self
                .t1_fractions
                .clone()
                .unwrap_or_else(default_t1_fractions),
        }
    }
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    format: FormatArgs,
    /// Write the canonical edge list here.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write the node-id to label mapping (CSV) here.
    #[arg(long)]
    mapping: Option<PathBuf>,
}

#[derive(Args)]
struct EqualityArgs {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to the input file stem.
    #[arg(long)]
    dataset_id: Option<String>,
    #[command(flatten)]
    analysis: AnalysisArgs,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
}

#[derive(Args)]
struct TaxonomyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    dataset_id: Option<String>,
    #[command(flatten)]
    analysis: AnalysisArgs,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
}

#[derive(Args)]
struct PcaArgs {
    /// A taxonomy.csv produced by `taxonomy` or `run`.
    #[arg(long)]
    input: PathBuf,
    /// Center only instead of z-scoring each feature.
    #[arg(long)]
    raw_covariance: bool,
    #[arg(long, default_value = ".")]
    output_dir: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Ba,
    Fortunato,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    model: ModelArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    /// Rank exponent for the fortunato model.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "whitespace")]
    delimiter: DelimiterArg,
    /// Defaults to stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    manifest: PathBuf,
    #[command(flatten)]
    analysis: AnalysisArgs,
    #[arg(long)]
    raw_covariance: bool,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    workers: usize,
    #[arg(long, default_value = "results")]
    output_dir: PathBuf,
}

fn dataset_id(explicit: &Option<String>, input: &Path) -> String {
    explicit.clone().unwrap_or_else(|| {
        input
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "dataset".to_owned())
    })
}

fn scaling(raw: bool) -> Scaling {
    if raw {
        Scaling::RawCovariance
    } else {
        Scaling::Standardized
    }
}

fn ingest(args: IngestArgs) -> Result<()> {
    let options = AnalysisOptions {
        format: args.format.format(),
        max_edges: args.format.max_edges,
        ..AnalysisOptions::default()
    };
    let (stream, skipped) = pipeline::load_stream(&args.input, &options)?;
    if let Some(path) = &args.output {
        fs::write(path, stream.to_edge_list(options.format.delimiter))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(path) = &args.mapping {
        let mut w = csv::Writer::from_path(path)?;
        w.write_record(["node_id", "label"])?;
        for (i, label) in stream.labels().iter().enumerate() {
            w.write_record([i.to_string().as_str(), label])?;
        }
        w.flush()?;
    }
    let summary = serde_json::json!({
        "input": args.input,
        "nodes": stream.node_count(),
        "edges": stream.edge_count(),
        "skipped_lines": skipped,
        "t_min": stream.t_min(),
        "t_max": stream.t_max(),
    });
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(())
}

fn equality(args: EqualityArgs) -> Result<()> {
    let id = dataset_id(&args.dataset_id, &args.input);
    let options = args.analysis.options();
    options.validate()?;
    fs::create_dir_all(&args.output_dir)?;
    let r = pipeline::analyse_file(&id, &args.input, &options)?;
    let rows: Vec<_> = r.equality.iter().map(|p| (id.clone(), *p)).collect();
    output::write_equality(&args.output_dir.join("equality.csv"), &rows)?;
    let warnings: Vec<Warning> = r
        .warnings
        .into_iter()
        .filter(|w| w.stage == "equality")
        .collect();
    output::write_warnings(&args.output_dir.join("warnings.jsonl"), &warnings)?;
    eprintln!("{id}: {} equality points", rows.len());
    Ok(())
}

fn taxonomy(args: TaxonomyArgs) -> Result<()> {
    let id = dataset_id(&args.dataset_id, &args.input);
    let options = args.analysis.options();
    options.validate()?;
    fs::create_dir_all(&args.output_dir)?;
    let (stream, _) = pipeline::load_stream(&args.input, &options)?;
    let traj = netmobility::taxonomy::taxonomy_trajectory_at(&stream, &options.t1_fractions);
    let rows: Vec<_> = traj.points.iter().map(|p| (id.clone(), *p)).collect();
    output::write_taxonomy(&args.output_dir.join("taxonomy.csv"), &rows)?;
    let warnings: Vec<Warning> = traj
        .warnings
        .into_iter()
        .map(|m| Warning::new(&id, "taxonomy", m))
        .collect();
    output::write_warnings(&args.output_dir.join("warnings.jsonl"), &warnings)?;
    eprintln!("{id}: {} taxonomy points", rows.len());
    Ok(())
}

fn pca(args: PcaArgs) -> Result<()> {
    let groups = output::read_taxonomy(&args.input)?;
    fs::create_dir_all(&args.output_dir)?;
    let mut warnings = Vec::new();
    let result = pipeline::fit_landscape(&groups, scaling(args.raw_covariance), &mut warnings);
    match &result {
        Some(r) => output::write_pca(&args.output_dir, r)?,
        None => output::write_empty_pca(&args.output_dir)?,
    }
    output::write_warnings(&args.output_dir.join("warnings.jsonl"), &warnings)?;
    match result {
        Some(r) => {
            eprintln!("{} projections", r.projections.len());
            Ok(())
        }
        None => anyhow::bail!("PCA could not be fitted; see warnings.jsonl"),
    }
}

fn generate_cmd(args: GenerateArgs) -> Result<()> {
    let model = match args.model {
        ModelArg::Ba => GrowthModel::Preferential,
        ModelArg::Fortunato => GrowthModel::Rank,
    };
    let config = GrowthConfig::new(args.n, args.m, args.seed).with_alpha(args.alpha);
    let stream = generate(model, &config)?;
    let text = stream.to_edge_list(args.delimiter.into());
    match &args.output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let config = RunConfig {
        manifest: args.manifest,
        output_dir: args.output_dir,
        analysis: args.analysis.options(),
        scaling: scaling(args.raw_covariance),
        workers: args.workers,
    };
    let summary = pipeline::run_pipeline(&config)?;
    eprintln!(
        "{} of {} datasets analysed, {} PCA rows, {} warnings",
        summary.datasets_ok, summary.datasets_total, summary.pca_rows, summary.warnings
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Ingest(a) => ingest(a),
        Command::Equality(a) => equality(a),
        Command::Taxonomy(a) => taxonomy(a),
        Command::Pca(a) => pca(a),
        Command::Generate(a) => generate_cmd(a),
        Command::Run(a) => run(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
