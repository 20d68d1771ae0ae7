//! Report assembly and rendering.
//!
//! Reports are an indented key-value tree with a stable field order, so
//! two runs of the same configuration can be compared byte for byte.
//! All wall-clock values live under `timing:` subtrees, which
//! [`mask_timing`] strips for such comparisons.

use diam_core::pipeline::{DiameterEstimate, PhaseStats};

use crate::runner::ExperimentConfig;

/// One executed (method, eps) combination.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub estimate: DiameterEstimate,
    pub n: usize,
    pub d: usize,
    /// Exact diameter, when the oracle ran: (value, value_sq, witness).
    pub exact: Option<(f64, f64, (usize, usize))>,
    /// exact / estimate, 1 exactly when the squared values agree bitwise.
    pub ratio: Option<f64>,
    pub truncated: bool,
    pub stats: Option<PhaseStats>,
    pub wall_ms: f64,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub version: String,
    pub config: ExperimentConfig,
    pub oracle_skipped: bool,
    pub runs: Vec<RunRecord>,
}

struct TreeWriter {
    out: String,
}

impl TreeWriter {
    fn new() -> Self {
        Self { out: String::new() }
    }

    fn line(&mut self, depth: usize, key: &str, value: impl std::fmt::Display) {
        for _ in 0..depth {
            self.out.push_str("  ");
        }
        self.out.push_str(key);
        self.out.push_str(": ");
        self.out.push_str(&value.to_string());
        self.out.push('\n');
    }

    fn open(&mut self, depth: usize, key: &str) {
        for _ in 0..depth {
            self.out.push_str("  ");
        }
        self.out.push_str(key);
        self.out.push_str(":\n");
    }
}

fn join<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl Report {
    pub fn render(&self) -> String {
        let mut w = TreeWriter::new();
        w.open(0, "diam-report");
        w.line(1, "version", &self.version);
        w.open(1, "config");
        w.line(2, "input", self.config.input_echo());
        w.line(2, "methods", join(self.config.methods.iter().map(|m| m.tag())));
        if !self.config.eps_list.is_empty() {
            w.line(2, "eps", join(self.config.eps_list.iter()));
        }
        w.line(2, "cap", self.config.cap);
        w.line(2, "oracle", self.config.oracle);
        w.line(2, "oracle_ceiling", self.config.oracle_ceiling);
        if self.oracle_skipped {
            w.line(1, "oracle_skipped", true);
        }
        w.open(1, "runs");
        for r in &self.runs {
            w.open(2, "run");
            w.line(3, "method", r.estimate.method.tag());
            if let Some(eps) = r.estimate.eps {
                w.line(3, "eps", eps);
            }
            w.line(3, "n", r.n);
            w.line(3, "d", r.d);
            w.line(3, "estimate", r.estimate.value);
            w.line(3, "estimate_sq", r.estimate.value_sq);
            w.line(
                3,
                "witness",
                format!("{} {}", r.estimate.witness.0, r.estimate.witness.1),
            );
            if let Some((value, value_sq, witness)) = r.exact {
                w.line(3, "exact", value);
                w.line(3, "exact_sq", value_sq);
                w.line(3, "exact_witness", format!("{} {}", witness.0, witness.1));
            }
            if let Some(ratio) = r.ratio {
                w.line(3, "ratio", ratio);
            }
            w.line(3, "truncated", r.truncated);
            if let Some(stats) = &r.stats {
                w.open(3, "counts");
                w.line(4, "input", stats.n_input);
                w.line(4, "cell_centers", stats.n_cell_centers);
                w.line(4, "mid_lattice", stats.n_mid_lattice);
                w.line(4, "coarse_lattice", stats.n_coarse_lattice);
                w.line(4, "coarse_pruned", stats.n_coarse_pruned);
                w.line(4, "pairs_coarse", stats.pairs_coarse);
                w.line(4, "pairs_mid", stats.pairs_mid);
                w.line(4, "truncated_coarse", stats.truncated_coarse);
                w.line(4, "truncated_mid", stats.truncated_mid);
                w.line(
                    4,
                    "max_cube_mid",
                    format!("{} {}", stats.max_cube_mid_first, stats.max_cube_mid_second),
                );
                w.line(
                    4,
                    "max_cube_fine",
                    format!("{} {}", stats.max_cube_fine_first, stats.max_cube_fine_second),
                );
                w.line(4, "within_bounds", stats.counts_within_bounds());
            }
            w.open(3, "timing");
            w.line(4, "wall_ms", r.wall_ms);
            if let Some(stats) = &r.stats {
                w.line(4, "rounding_ms", stats.timing.rounding_ms);
                w.line(4, "coarse_scan_ms", stats.timing.coarse_scan_ms);
                w.line(4, "refine_mid_ms", stats.timing.refine_mid_ms);
                w.line(4, "refine_fine_ms", stats.timing.refine_fine_ms);
                w.line(4, "total_ms", stats.timing.total_ms);
            }
        }
        w.out
    }
}

/// Drops every `timing:` subtree (the header line and all deeper-indented
/// lines that follow it), leaving only deterministic content.
pub fn mask_timing(text: &str) -> String {
    let mut out = String::new();
    let mut skip_deeper_than: Option<usize> = None;
    for line in text.lines() {
        let indent = line.len() - line.trim_start().len();
        if let Some(level) = skip_deeper_than {
            if indent > level {
                continue;
            }
            skip_deeper_than = None;
        }
        if line.trim_end().ends_with("timing:") && line.trim_start().starts_with("timing:") {
            skip_deeper_than = Some(indent);
            continue;
        }
        out.push_str(line);
        out.push('\n');
    }
    out
}
