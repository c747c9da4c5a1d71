//! Orchestration for the `netmobility` command: single-file analyses,
//! manifest runs, and the CSV/JSON result tables they write.

pub mod output;
pub mod pipeline;

pub use output::{emit_plot_data, PlotData, PlotKind, Warning};
pub use pipeline::{
    analyse_file, load_stream, run_pipeline, AnalysisOptions, RunConfig, RunSummary,
};
