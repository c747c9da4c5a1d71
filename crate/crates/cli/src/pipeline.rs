//! Batch analysis of a corpus manifest.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use netmobility::equality::{equality_trajectory, Spacing};
use netmobility::pca::FeatureMatrix;
use netmobility::stream::parse_edge_list;
use netmobility::taxonomy::{default_t1_fractions, taxonomy_trajectory_at};
use netmobility::{
    canonicalize, parse_manifest, pca_project, CorpusEntry, EdgeStream, EqualityPoint,
    FormatOptions, Scaling, TaxonomyPoint,
};
use rayon::prelude::*;
use serde::Serialize;

use crate::output::{self, PlotData, Warning};

/// Per-dataset analysis settings.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisOptions {
    pub format: FormatOptions,
    pub max_edges: Option<usize>,
    pub n_points: usize,
    pub spacing: Spacing,
    pub t1_fractions: Vec<f64>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            format: FormatOptions::default(),
            max_edges: None,
            n_points: 100,
            spacing: Spacing::NormalizedTime,
            t1_fractions: default_t1_fractions(),
        }
    }
}

impl AnalysisOptions {
    pub fn validate(&self) -> Result<()> {
        if self.n_points == 0 {
            bail!("n_points must be positive");
        }
        if self.t1_fractions.is_empty() {
            bail!("t1_fractions must not be empty");
        }
        if let Some(bad) = self.t1_fractions.iter().find(|f| !(**f > 0.0 && **f < 1.0)) {
            bail!("t1 fraction {bad} is outside (0, 1)");
        }
        if self.t1_fractions.windows(2).any(|w| w[0] >= w[1]) {
            bail!("t1_fractions must be strictly increasing");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub manifest: PathBuf,
    pub output_dir: PathBuf,
    pub analysis: AnalysisOptions,
    pub scaling: Scaling,
    /// Worker threads; 0 lets the pool pick.
    pub workers: usize,
}

/// Loads one edge list and canonicalizes it. Returns the stream and the
/// number of skipped comment/blank lines.
pub fn load_stream(path: &Path, options: &AnalysisOptions) -> Result<(EdgeStream, usize)> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_edge_list(&text, &options.format)
        .with_context(|| format!("parsing {}", path.display()))?;
    let skipped = parsed.skipped_lines;
    let stream = canonicalize(parsed.edges, options.max_edges)
        .with_context(|| format!("canonicalizing {}", path.display()))?;
    Ok((stream, skipped))
}

/// Everything computed for one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetResult {
    pub dataset_id: String,
    pub nodes: usize,
    pub edges: usize,
    pub skipped_lines: usize,
    pub equality: Vec<EqualityPoint>,
    pub taxonomy: Vec<TaxonomyPoint>,
    pub warnings: Vec<Warning>,
    pub seconds: f64,
}

pub fn analyse_stream(
    dataset_id: &str,
    stream: &EdgeStream,
    options: &AnalysisOptions,
) -> Result<DatasetResult> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let eq = equality_trajectory(stream, options.n_points, options.spacing)?;
    warnings.extend(
        eq.warnings
            .into_iter()
            .map(|m| Warning::new(dataset_id, "equality", m)),
    );
    let tax = taxonomy_trajectory_at(stream, &options.t1_fractions);
    warnings.extend(
        tax.warnings
            .into_iter()
            .map(|m| Warning::new(dataset_id, "taxonomy", m)),
    );
    Ok(DatasetResult {
        dataset_id: dataset_id.to_owned(),
        nodes: stream.node_count(),
        edges: stream.edge_count(),
        skipped_lines: 0,
        equality: eq.points,
        taxonomy: tax.points,
        warnings,
        seconds: start.elapsed().as_secs_f64(),
    })
}

pub fn analyse_file(
    dataset_id: &str,
    path: &Path,
    options: &AnalysisOptions,
) -> Result<DatasetResult> {
    let (stream, skipped) = load_stream(path, options)?;
    let mut result = analyse_stream(dataset_id, &stream, options)?;
    result.skipped_lines = skipped;
    Ok(result)
}

/// Fits the joint PCA over every dataset's taxonomy points. Rows with an
/// undefined aspect are dropped with a warning.
pub fn fit_landscape(
    datasets: &[(String, Vec<TaxonomyPoint>)],
    scaling: Scaling,
    warnings: &mut Vec<Warning>,
) -> Option<netmobility::PcaResult> {
    let mut matrix = FeatureMatrix::default();
    for (id, points) in datasets {
        for ex in matrix.push_points(id, points) {
            warnings.push(Warning::new(
                &ex.dataset_id,
                "pca",
                format!(
                    "t1={}: excluded, undefined {}",
                    ex.t1_fraction,
                    ex.undefined.join(", ")
                ),
            ));
        }
    }
    match pca_project(&matrix, scaling) {
        Ok(r) => Some(r),
        Err(e) => {
            warnings.push(Warning::new("", "pca", e.to_string()));
            None
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DatasetSummary {
    pub id: String,
    pub name: String,
    pub status: &'static str,
    pub nodes: usize,
    pub edges: usize,
    pub skipped_lines: usize,
    pub equality_points: usize,
    pub taxonomy_points: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub datasets_total: usize,
    pub datasets_ok: usize,
    pub datasets_failed: usize,
    pub pca_rows: usize,
    pub warnings: usize,
    pub datasets: Vec<DatasetSummary>,
    pub elapsed_seconds: f64,
}

fn resolve(manifest_dir: &Path, entry: &CorpusEntry) -> PathBuf {
    if entry.path.is_absolute() {
        entry.path.clone()
    } else {
        manifest_dir.join(&entry.path)
    }
}

/// Runs equality and taxonomy on every manifest entry, fits the pooled PCA,
/// and writes every table into `output_dir`.
///
/// A failing dataset is reported in `warnings.jsonl` and skipped. The run
/// errors only when the configuration is invalid or every dataset fails.
pub fn run_pipeline(config: &RunConfig) -> Result<RunSummary> {
    let start = Instant::now();
    config.analysis.validate()?;
    let manifest_text = fs::read_to_string(&config.manifest)
        .with_context(|| format!("reading manifest {}", config.manifest.display()))?;
    let entries = parse_manifest(&manifest_text)?;
    if entries.is_empty() {
        bail!("manifest lists no datasets");
    }
    let manifest_dir = config
        .manifest
        .parent()
        .map(Path::to_path_buf)
        .unwrap_or_default();
    fs::create_dir_all(&config.output_dir)
        .with_context(|| format!("creating {}", config.output_dir.display()))?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()?;
    // collect() on an indexed parallel iterator keeps manifest order
    let results: Vec<Result<DatasetResult>> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| analyse_file(&e.id, &resolve(&manifest_dir, e), &config.analysis))
            .collect()
    });

    let mut warnings = Vec::new();
    let mut summaries = Vec::new();
    let mut equality_rows = Vec::new();
    let mut taxonomy_rows = Vec::new();
    let mut pooled = Vec::new();
    for (entry, result) in entries.iter().zip(results) {
        match result {
            Ok(r) => {
                warnings.extend(r.warnings.iter().cloned());
                equality_rows.extend(r.equality.iter().map(|p| (r.dataset_id.clone(), *p)));
                taxonomy_rows.extend(r.taxonomy.iter().map(|p| (r.dataset_id.clone(), *p)));
                summaries.push(DatasetSummary {
                    id: entry.id.clone(),
                    name: entry.name.clone(),
                    status: "ok",
                    nodes: r.nodes,
                    edges: r.edges,
                    skipped_lines: r.skipped_lines,
                    equality_points: r.equality.len(),
                    taxonomy_points: r.taxonomy.len(),
                    seconds: r.seconds,
                });
                pooled.push((r.dataset_id, r.taxonomy));
            }
            Err(e) => {
                warnings.push(Warning::new(&entry.id, "load", format!("{e:#}")));
                summaries.push(DatasetSummary {
                    id: entry.id.clone(),
                    name: entry.name.clone(),
                    status: "failed",
                    nodes: 0,
                    edges: 0,
                    skipped_lines: 0,
                    equality_points: 0,
                    taxonomy_points: 0,
                    seconds: 0.0,
                });
            }
        }
    }

    let out = &config.output_dir;
    output::write_equality(&out.join("equality.csv"), &equality_rows)?;
    output::write_taxonomy(&out.join("taxonomy.csv"), &taxonomy_rows)?;
    let landscape = if pooled.is_empty() {
        None
    } else {
        fit_landscape(&pooled, config.scaling, &mut warnings)
    };
    match &landscape {
        Some(r) => output::write_pca(out, r)?,
        None => output::write_empty_pca(out)?,
    }

    let plot_dir = out.join("plot");
    fs::create_dir_all(&plot_dir)?;
    output::emit_plot_data(
        &plot_dir,
        PlotData::Equality(&equality_rows),
        &entries,
        &mut warnings,
    )?;
    output::emit_plot_data(
        &plot_dir,
        PlotData::Taxonomy(&taxonomy_rows),
        &entries,
        &mut warnings,
    )?;
    if let Some(r) = &landscape {
        output::emit_plot_data(&plot_dir, PlotData::Pca(r), &entries, &mut warnings)?;
    }
    output::write_warnings(&out.join("warnings.jsonl"), &warnings)?;

    let ok = pooled.len();
    let summary = RunSummary {
        datasets_total: entries.len(),
        datasets_ok: ok,
        datasets_failed: entries.len() - ok,
        pca_rows: landscape.as_ref().map_or(0, |r| r.projections.len()),
        warnings: warnings.len(),
        datasets: summaries,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    };
    let file = fs::File::create(out.join("run_summary.json"))?;
    serde_json::to_writer_pretty(file, &summary)?;

    if ok == 0 {
        return Err(anyhow!(
            "all {} datasets failed; see warnings.jsonl",
            entries.len()
        ));
    }
    Ok(summary)
}
