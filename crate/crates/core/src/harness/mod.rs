//! Experiment orchestration: configs, Monte Carlo sweeps, presets and CSV.

pub mod config;
pub mod presets;
pub mod report;
pub mod run;

pub use config::{ExperimentConfig, Normalize, PowerSpec, ScenarioKind, SweepPoint, SweepVar};
pub use presets::{figure_preset, PRESET_NAMES};
pub use report::{emit_csv, parse_csv, read_csv, write_csv, EsgReport, EsgRow, CSV_HEADER};
pub use run::{
    received_snr_db, run_scenario, run_scenario_on, simulate_pair, snr_calibrate, Estimate,
    PointResult, RunMode,
};
