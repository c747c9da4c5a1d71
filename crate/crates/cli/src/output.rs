//! Result tables.
//!
//! Every real number is written with 12 significant digits; an undefined
//! correlation is an empty field.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use netmobility::numfmt::format_sig;
use netmobility::pca::{PcaResult, FEATURE_NAMES};
use netmobility::taxonomy::{Aspect, Aspects};
use netmobility::{CorpusEntry, EqualityPoint, TaxonomyPoint};
use serde::Serialize;

pub const EQUALITY_HEADER: [&str; 4] = ["dataset_id", "tau", "gini", "node_count"];
pub const TAXONOMY_HEADER: [&str; 10] = [
    "dataset_id",
    "t1_fraction",
    "mobility",
    "assortativity",
    "philanthropy",
    "community",
    "change_in_assortativity",
    "neighbour_mobility",
    "gini_t1",
    "included_nodes",
];
pub const PROJECTIONS_HEADER: [&str; 4] = ["dataset_id", "t1_fraction", "pc1", "pc2"];
pub const COMPONENTS_HEADER: [&str; 3] = ["feature", "pc1_loading", "pc2_loading"];
pub const EIGENVALUES_HEADER: [&str; 3] = ["rank", "eigenvalue", "explained_variance_ratio"];

pub const EQUALITY_PLOT_HEADER: [&str; 7] = [
    "dataset_id",
    "data_type",
    "structure",
    "tau",
    "gini",
    "node_count",
    "name",
];
pub const TAXONOMY_LONG_HEADER: [&str; 6] = [
    "dataset_id",
    "data_type",
    "structure",
    "t1_fraction",
    "aspect",
    "value",
];
pub const PCA_TRAILS_HEADER: [&str; 6] = [
    "dataset_id",
    "data_type",
    "structure",
    "t1_fraction",
    "pc1",
    "pc2",
];

/// One line of `warnings.jsonl`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Warning {
    pub dataset_id: String,
    pub stage: String,
    pub message: String,
}

impl Warning {
    pub fn new(dataset_id: &str, stage: &str, message: impl Into<String>) -> Self {
        Self {
            dataset_id: dataset_id.to_owned(),
            stage: stage.to_owned(),
            message: message.into(),
        }
    }
}

fn writer(path: &Path) -> Result<csv::Writer<BufWriter<File>>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(csv::Writer::from_writer(BufWriter::new(file)))
}

fn opt(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

pub fn write_equality(path: &Path, rows: &[(String, EqualityPoint)]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(EQUALITY_HEADER)?;
    for (id, p) in rows {
        w.write_record([
            id.as_str(),
            &format_sig(p.tau),
            &format_sig(p.gini),
            &p.node_count.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_taxonomy(path: &Path, rows: &[(String, TaxonomyPoint)]) -> Result<()> {
    let mut w = writer(path)?;
    w.write_record(TAXONOMY_HEADER)?;
    for (id, p) in rows {
        let mut record = vec![id.clone(), format_sig(p.t1_fraction)];
        record.extend(p.aspects.values().into_iter().map(opt));
        record.push(format_sig(p.gini_t1));
        record.push(p.included_nodes.to_string());
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a file written by [`write_taxonomy`], grouping points by dataset in
/// order of first appearance.
pub fn read_taxonomy(path: &Path) -> Result<Vec<(String, Vec<TaxonomyPoint>)>> {
    let mut reader =
        csv::Reader::from_path(path).with_context(|| format!("opening {}", path.display()))?;
    let header = reader.headers()?.clone();
    if header.iter().ne(TAXONOMY_HEADER) {
        bail!("{}: unexpected header {:?}", path.display(), header);
    }
    let mut groups: Vec<(String, Vec<TaxonomyPoint>)> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = i + 2;
        let num = |j: usize| -> Result<f64> {
            record[j]
                .parse::<f64>()
                .with_context(|| format!("line {line}: bad `{}`", TAXONOMY_HEADER[j]))
        };
        let mut aspects = Aspects::default();
        for (k, aspect) in Aspect::ALL.into_iter().enumerate() {
            let field = &record[2 + k];
            let value = if field.is_empty() {
                None
            } else {
                Some(num(2 + k)?)
            };
            aspects.set(aspect, value);
        }
        let point = TaxonomyPoint {
            t1_fraction: num(1)?,
            aspects,
            gini_t1: num(8)?,
            included_nodes: record[9]
                .parse()
                .with_context(|| format!("line {line}: bad `included_nodes`"))?,
        };
        let id = record[0].to_owned();
        let slot = *index.entry(id.clone()).or_insert_with(|| {
            groups.push((id, Vec::new()));
            groups.len() - 1
        });
        groups[slot].1.push(point);
    }
    Ok(groups)
}

pub fn write_pca(dir: &Path, result: &PcaResult) -> Result<()> {
    let mut w = writer(&dir.join("pca_projections.csv"))?;
    w.write_record(PROJECTIONS_HEADER)?;
    for p in &result.projections {
        w.write_record([
            p.dataset_id.as_str(),
            &format_sig(p.t1_fraction),
            &format_sig(p.pc1),
            &format_sig(p.pc2),
        ])?;
    }
    w.flush()?;

    let mut w = writer(&dir.join("pca_components.csv"))?;
    w.write_record(COMPONENTS_HEADER)?;
    let [c1, c2] = result.components();
    for (j, name) in FEATURE_NAMES.iter().enumerate() {
        w.write_record([*name, &format_sig(c1[j]), &format_sig(c2[j])])?;
    }
    w.flush()?;

    let mut w = writer(&dir.join("pca_eigenvalues.csv"))?;
    w.write_record(EIGENVALUES_HEADER)?;
    let ratio = result.explained_variance_ratio();
    for (k, l) in result.eigenvalues.iter().enumerate() {
        w.write_record([(k + 1).to_string(), format_sig(*l), format_sig(ratio[k])])?;
    }
    w.flush()?;
    Ok(())
}

/// Header-only PCA tables, written when no fit was possible.
pub fn write_empty_pca(dir: &Path) -> Result<()> {
    for (name, header) in [
        ("pca_projections.csv", &PROJECTIONS_HEADER[..]),
        ("pca_components.csv", &COMPONENTS_HEADER[..]),
        ("pca_eigenvalues.csv", &EIGENVALUES_HEADER[..]),
    ] {
        let mut w = writer(&dir.join(name))?;
        w.write_record(header)?;
        w.flush()?;
    }
    Ok(())
}

pub fn write_warnings(path: &Path, warnings: &[Warning]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut out = BufWriter::new(file);
    for w in warnings {
        serde_json::to_writer(&mut out, w)?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Data-type and structure tags joined from the manifest.
pub struct Tags<'a> {
    by_id: BTreeMap<&'a str, &'a CorpusEntry>,
}

impl<'a> Tags<'a> {
    pub fn new(manifest: &'a [CorpusEntry]) -> Self {
        Self {
            by_id: manifest.iter().map(|e| (e.id.as_str(), e)).collect(),
        }
    }

    /// `(data_type, structure, name)`; empty strings and a warning when the
    /// id is not in the manifest.
    fn lookup(&self, id: &str, warnings: &mut Vec<Warning>) -> (String, String, String) {
        match self.by_id.get(id) {
            Some(e) => (
                e.data_type.to_string(),
                e.structure.to_string(),
                e.name.clone(),
            ),
            None => {
                if !warnings
                    .iter()
                    .any(|w| w.dataset_id == id && w.stage == "plot")
                {
                    warnings.push(Warning::new(id, "plot", "dataset id not found in manifest"));
                }
                Default::default()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Equality,
    Taxonomy,
    Pca,
}

/// Plot-ready results for one figure kind.
pub enum PlotData<'a> {
    Equality(&'a [(String, EqualityPoint)]),
    Taxonomy(&'a [(String, TaxonomyPoint)]),
    Pca(&'a PcaResult),
}

impl PlotData<'_> {
    pub fn kind(&self) -> PlotKind {
        match self {
            PlotData::Equality(_) => PlotKind::Equality,
            PlotData::Taxonomy(_) => PlotKind::Taxonomy,
            PlotData::Pca(_) => PlotKind::Pca,
        }
    }

    pub fn file_name(&self) -> &'static str {
        match self.kind() {
            PlotKind::Equality => "equality_plot.csv",
            PlotKind::Taxonomy => "taxonomy_long.csv",
            PlotKind::Pca => "pca_trails.csv",
        }
    }
}

/// Writes a long-format table tagged with manifest metadata into `dir`,
/// returning the path written. Unknown dataset ids keep their rows with
/// empty tags and add a warning.
pub fn emit_plot_data(
    dir: &Path,
    data: PlotData<'_>,
    manifest: &[CorpusEntry],
    warnings: &mut Vec<Warning>,
) -> Result<std::path::PathBuf> {
    let tags = Tags::new(manifest);
    let path = dir.join(data.file_name());
    let mut w = writer(&path)?;
    match data {
        PlotData::Equality(rows) => {
            w.write_record(EQUALITY_PLOT_HEADER)?;
            for (id, p) in rows {
                let (ty, st, name) = tags.lookup(id, warnings);
                w.write_record([
                    id.as_str(),
                    &ty,
                    &st,
                    &format_sig(p.tau),
                    &format_sig(p.gini),
                    &p.node_count.to_string(),
                    &name,
                ])?;
            }
        }
        PlotData::Taxonomy(rows) => {
            w.write_record(TAXONOMY_LONG_HEADER)?;
            for (id, p) in rows {
                let (ty, st, _) = tags.lookup(id, warnings);
                for aspect in Aspect::ALL {
                    w.write_record([
                        id.as_str(),
                        &ty,
                        &st,
                        &format_sig(p.t1_fraction),
                        aspect.name(),
                        &opt(p.aspects.get(aspect)),
                    ])?;
                }
            }
        }
        PlotData::Pca(result) => {
            w.write_record(PCA_TRAILS_HEADER)?;
            let mut trail: Vec<_> = result.projections.iter().collect();
            trail.sort_by(|a, b| {
                a.dataset_id
                    .cmp(&b.dataset_id)
                    .then(a.t1_fraction.total_cmp(&b.t1_fraction))
            });
            for p in trail {
                let (ty, st, _) = tags.lookup(&p.dataset_id, warnings);
                w.write_record([
                    p.dataset_id.as_str(),
                    &ty,
                    &st,
                    &format_sig(p.t1_fraction),
                    &format_sig(p.pc1),
                    &format_sig(p.pc2),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(path)
}
