//! Scoring configuration: command-line flags over a TOML file over defaults.

use std::fs;
use std::path::PathBuf;

use anyhow::{anyhow, Context};
use vdd_core::{ScoringConfig, StdEstimator, StdMode};

use crate::{parse_std_estimator, parse_std_mode, CliResult, Failure};

#[derive(Debug, Default, clap::Args)]
pub struct ConfigArgs {
    /// Minimum detection confidence, inclusive [default: 0.8].
    #[arg(long)]
    pub tau: Option<f64>,
    /// Generator-row std: pairwise_distance or raw_counts [default: pairwise_distance].
    #[arg(long, value_parser = parse_std_mode)]
    pub std_mode: Option<StdMode>,
    /// Std estimator: sample (n - 1) or population (n) [default: sample].
    #[arg(long, value_parser = parse_std_estimator)]
    pub std_estimator: Option<StdEstimator>,
    /// TOML file with scoring options; flags override its values.
    #[arg(long, env = "VDD_CONFIG")]
    pub config: Option<PathBuf>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> CliResult<ScoringConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("cannot read config {}", path.display()))
                    .map_err(Failure::io)?;
                parse_config(&text)
                    .with_context(|| format!("config {}", path.display()))
                    .map_err(Failure::validation)?
            }
            None => ScoringConfig::default(),
        };
        if let Some(tau) = self.tau {
            cfg.confidence_threshold = tau;
        }
        if let Some(mode) = self.std_mode {
            cfg.std_mode = mode;
        }
        if let Some(est) = self.std_estimator {
            cfg.std_estimator = est;
        }
        cfg.validate().map_err(|e| Failure::usage(anyhow!(e)))?;
        Ok(cfg)
    }
}

pub fn parse_config(text: &str) -> anyhow::Result<ScoringConfig> {
    let cfg: ScoringConfig = toml::from_str(text)?;
    cfg.validate()?;
    Ok(cfg)
}
