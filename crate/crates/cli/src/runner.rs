//! Experiment execution: loads or generates the input once, runs every
//! requested (method, eps) combination in canonical order, and attaches
//! the exact oracle when asked and affordable.

use std::path::PathBuf;
use std::time::Instant;

use diam_core::directional::{
    agarwal_diameter, chan_recursive_diameter, two_approx_baseline,
};
use diam_core::exact::brute_force_diameter;
use diam_core::geometry::PointSet;
use diam_core::pipeline::{approximate_diameter, exact_diameter, DiameterEstimate, Method};

use crate::error::{HarnessError, Result};
use crate::generate::{generate, Kind};
use crate::pointio::read_points;
use crate::report::{Report, RunRecord};

pub const DEFAULT_CAP: usize = 4096;
pub const DEFAULT_ORACLE_CEILING: usize = 5000;

/// Where the points come from.
#[derive(Debug, Clone)]
pub enum InputSpec {
    File(PathBuf),
    Generator { kind: Kind, n: usize, d: usize, seed: u64 },
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub input: InputSpec,
    pub methods: Vec<Method>,
    pub eps_list: Vec<f64>,
    pub cap: usize,
    pub oracle: bool,
    pub oracle_ceiling: usize,
}

impl ExperimentConfig {
    /// Normalizes the sweep: canonical method order, ascending distinct
    /// eps values, both deduplicated.
    pub fn normalize(&mut self) {
        self.methods.sort();
        self.methods.dedup();
        self.eps_list
            .sort_by(|a, b| a.partial_cmp(b).expect("eps values are finite"));
        self.eps_list.dedup();
    }

    pub fn input_echo(&self) -> String {
        match &self.input {
            InputSpec::File(path) => format!("file:{}", path.display()),
            InputSpec::Generator { kind, n, d, seed } => {
                format!("gen:{kind} n={n} d={d} seed={seed}")
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(HarnessError::Usage("no methods requested".into()));
        }
        if self.cap == 0 {
            return Err(HarnessError::Usage("cap must be at least 1".into()));
        }
        for &eps in &self.eps_list {
            if !(eps > 0.0 && eps <= 1.0) {
                return Err(HarnessError::Usage(format!(
                    "eps must lie in (0, 1], got {eps}"
                )));
            }
        }
        if self.methods.iter().any(|m| m.uses_eps()) && self.eps_list.is_empty() {
            return Err(HarnessError::Usage(
                "the requested methods need at least one --eps value".into(),
            ));
        }
        Ok(())
    }
}

fn load_points(input: &InputSpec) -> Result<PointSet> {
    match input {
        InputSpec::File(path) => read_points(path),
        InputSpec::Generator { kind, n, d, seed } => generate(*kind, *n, *d, *seed),
    }
}

fn dispatch(
    method: Method,
    s: &PointSet,
    eps: Option<f64>,
    cap: usize,
) -> Result<(DiameterEstimate, Option<diam_core::pipeline::PhaseStats>)> {
    Ok(match method {
        Method::Exact => (exact_diameter(s)?, None),
        Method::TwoApprox => (two_approx_baseline(s)?, None),
        Method::Agarwal => (agarwal_diameter(s, eps.expect("eps checked"))?, None),
        Method::Chan => {
            let eps = eps.expect("eps checked");
            let pts: Vec<(Vec<f64>, usize)> =
                s.iter().enumerate().map(|(i, p)| (p.to_vec(), i)).collect();
            let (_, cand) = chan_recursive_diameter(s, &pts, s.dim(), eps)?;
            (
                DiameterEstimate::from_witness(s, cand.i, cand.j, Method::Chan, Some(eps)),
                None,
            )
        }
        Method::Paper => {
            let (est, stats) = approximate_diameter(s, eps.expect("eps checked"), cap)?;
            (est, Some(stats))
        }
    })
}

/// Runs the whole sweep and assembles the report. Runs are ordered by
/// (method, eps); methods that take no accuracy parameter run once.
pub fn execute(config: &ExperimentConfig) -> Result<Report> {
    let mut config = config.clone();
    config.normalize();
    config.validate()?;
    let s = load_points(&config.input)?;

    let mut oracle_skipped = false;
    let oracle = if config.oracle {
        if s.len() <= config.oracle_ceiling {
            let (value_sq, witness) = brute_force_diameter(&s)?;
            Some((value_sq.sqrt(), value_sq, witness))
        } else {
            eprintln!(
                "warning: oracle skipped, {} points above ceiling {}",
                s.len(),
                config.oracle_ceiling
            );
            oracle_skipped = true;
            None
        }
    } else {
        None
    };

    let mut runs = Vec::new();
    for &method in &config.methods {
        let eps_slots: Vec<Option<f64>> = if method.uses_eps() {
            config.eps_list.iter().map(|&e| Some(e)).collect()
        } else {
            vec![None]
        };
        for eps in eps_slots {
            let start = Instant::now();
            let (estimate, stats) = dispatch(method, &s, eps, config.cap)?;
            let wall_ms = start.elapsed().as_secs_f64() * 1e3;
            let ratio = oracle.map(|(value, value_sq, _)| {
                if estimate.value_sq == value_sq {
                    1.0
                } else {
                    value / estimate.value
                }
            });
            let truncated = stats
                .as_ref()
                .map(|st| st.truncated_coarse || st.truncated_mid)
                .unwrap_or(false);
            runs.push(RunRecord {
                n: s.len(),
                d: s.dim(),
                estimate,
                exact: oracle,
                ratio,
                truncated,
                stats,
                wall_ms,
            });
        }
    }
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config,
        oracle_skipped,
        runs,
    })
}
