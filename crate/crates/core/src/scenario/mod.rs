//! The four verification pipelines and their configuration/report plumbing.

pub mod common;
pub mod config;
pub mod fano13;
pub mod fano6;
pub mod fano7;
pub mod fano9;
pub mod report;

pub use config::ScenarioConfig;
pub use report::{Check, CheckStatus, Runner, ScenarioReport};

/// Run one scenario by name.
pub fn run_scenario(name: &str, cfg: &ScenarioConfig) -> Option<ScenarioReport> {
    match name {
        "fano13" => Some(fano13::run(cfg)),
        "fano9" => Some(fano9::run(cfg)),
        "fano7" => Some(fano7::run(cfg)),
        "fano6" => Some(fano6::run(cfg)),
        _ => None,
    }
}

pub const SCENARIOS: [&str; 4] = ["fano13", "fano9", "fano7", "fano6"];
