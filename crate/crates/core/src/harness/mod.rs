//! End-to-end pipeline, experiments, diagnostics and the command line.

pub mod cli;
mod diagnostic;
mod experiment;
pub mod io;
mod pipeline;

pub use diagnostic::{triangle_diagnostic, TriangleReport};
pub use experiment::{
    emit_outputs, fit_scaling, least_squares, median, records_csv, scaling_experiment, scaling_svg, ExperimentOutcome,
    ScalingFit, CSV_HEADER,
};
pub use pipeline::{
    keep_probability, onan_budget, pipeline_theorem, sparsify, t_value, target_exponent, verified_block_graph,
    verified_geometry, ExperimentRecord, PipelineConfig, VerifiedGeometry,
};
