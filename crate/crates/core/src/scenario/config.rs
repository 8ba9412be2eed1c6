//! Scenario configuration: prime, seed, image mode, retry budget, check filter.

use crate::error::{CasError, Result};
use crate::field::{Fp, DEFAULT_PRIME};
use crate::geom::ImageMode;

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub prime: u64,
    pub seed: u64,
    /// None picks the per-scenario default: exact elimination everywhere
    /// except the genus-6 pipeline, whose image ideal is only reachable
    /// degree-wise in reasonable time.
    pub image_mode: Option<ImageMode>,
    pub retry_limit: u32,
    /// substring filter on check ids; non-matching checks are reported as skipped
    pub checks: Option<String>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            prime: DEFAULT_PRIME,
            seed: 0,
            image_mode: None,
            retry_limit: 20,
            checks: None,
        }
    }
}

impl ScenarioConfig {
    pub fn field(&self) -> Result<Fp> {
        Fp::new(self.prime)
    }

    /// The mode a scenario actually runs with.
    pub fn effective_mode(&self, scenario: &str) -> ImageMode {
        self.image_mode.unwrap_or(match scenario {
            "fano6" => ImageMode::Degreewise { max_d: 5 },
            _ => ImageMode::Elimination,
        })
    }

    pub fn mode_label_for(&self, scenario: &str) -> String {
        mode_label(self.effective_mode(scenario))
    }

    pub fn parse_mode(text: &str) -> Result<ImageMode> {
        if text == "elim" || text == "elimination" {
            return Ok(ImageMode::Elimination);
        }
        if let Some(d) = text.strip_prefix("degreewise:") {
            let max_d: usize = d.parse().map_err(|_| CasError::Syntax {
                pos: 0,
                msg: format!("bad degreewise bound `{d}`"),
            })?;
            if max_d == 0 {
                return Err(CasError::Syntax {
                    pos: 0,
                    msg: "degreewise bound must be positive".into(),
                });
            }
            return Ok(ImageMode::Degreewise { max_d });
        }
        Err(CasError::Syntax {
            pos: 0,
            msg: format!("unknown mode `{text}`; expected elim or degreewise:D"),
        })
    }
}

pub fn mode_label(mode: ImageMode) -> String {
    match mode {
        ImageMode::Elimination => "elim".into(),
        ImageMode::Degreewise { max_d } => format!("degreewise:{max_d}"),
    }
}
