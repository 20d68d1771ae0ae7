//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on runtime failures.

use std::path::PathBuf;

use diam_core::pipeline::Method;

use crate::error::{HarnessError, Result};
use crate::generate::{generate, Kind};
use crate::pointio::write_points;
use crate::runner::{execute, ExperimentConfig, InputSpec, DEFAULT_CAP, DEFAULT_ORACLE_CEILING};

pub const USAGE: &str = "\
usage:
  diam gen --kind KIND --n N --d D --seed S --out FILE
  diam run --method METHOD --input FILE --out FILE
           [--eps E[,E...]] [--oracle] [--cap C] [--oracle-ceiling N]
  diam compare --methods M[,M...] --eps E[,E...] --input FILE --out FILE
           [--oracle] [--cap C] [--oracle-ceiling N]

kinds:   uniform-ball, sphere-shell, gaussian-clusters, grid-aligned, collinear
methods: exact, two-approx, agarwal, chan, paper";

#[derive(Debug)]
pub enum Command {
    Gen {
        kind: Kind,
        n: usize,
        d: usize,
        seed: u64,
        out: PathBuf,
    },
    Sweep {
        config: ExperimentConfig,
        out: PathBuf,
    },
}

fn usage_err(msg: impl Into<String>) -> HarnessError {
    HarnessError::Usage(msg.into())
}

struct Flags {
    pairs: Vec<(String, Option<String>)>,
}

impl Flags {
    /// Collects `--key value` pairs; `--oracle` is the only bare flag.
    fn parse(args: &[String]) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut it = args.iter().peekable();
        while let Some(arg) = it.next() {
            let key = arg
                .strip_prefix("--")
                .ok_or_else(|| usage_err(format!("unexpected argument {arg:?}")))?;
            if key == "oracle" {
                pairs.push((key.to_string(), None));
                continue;
            }
            let value = it
                .next()
                .ok_or_else(|| usage_err(format!("--{key} needs a value")))?;
            pairs.push((key.to_string(), Some(value.clone())));
        }
        Ok(Self { pairs })
    }

    fn take(&mut self, key: &str) -> Option<String> {
        let idx = self.pairs.iter().position(|(k, _)| k == key)?;
        self.pairs.remove(idx).1
    }

    fn take_flag(&mut self, key: &str) -> bool {
        if let Some(idx) = self.pairs.iter().position(|(k, _)| k == key) {
            self.pairs.remove(idx);
            true
        } else {
            false
        }
    }

    fn require(&mut self, key: &str) -> Result<String> {
        self.take(key)
            .ok_or_else(|| usage_err(format!("missing required --{key}")))
    }

    fn finish(self) -> Result<()> {
        if let Some((k, _)) = self.pairs.into_iter().next() {
            return Err(usage_err(format!("unknown option --{k}")));
        }
        Ok(())
    }
}

fn parse_usize(key: &str, raw: &str) -> Result<usize> {
    raw.parse()
        .map_err(|_| usage_err(format!("--{key}: not a count: {raw:?}")))
}

fn parse_eps_list(raw: &str) -> Result<Vec<f64>> {
    raw.split(',')
        .map(|tok| {
            let eps: f64 = tok
                .trim()
                .parse()
                .map_err(|_| usage_err(format!("--eps: not a number: {tok:?}")))?;
            if !(eps > 0.0 && eps <= 1.0) {
                return Err(usage_err(format!("--eps: {eps} outside (0, 1]")));
            }
            Ok(eps)
        })
        .collect()
}

fn parse_methods(raw: &str) -> Result<Vec<Method>> {
    raw.split(',')
        .map(|tok| {
            Method::from_tag(tok.trim())
                .ok_or_else(|| usage_err(format!("unknown method {tok:?}")))
        })
        .collect()
}

pub fn parse(args: &[String]) -> Result<Command> {
    let (sub, rest) = args
        .split_first()
        .ok_or_else(|| usage_err("missing subcommand"))?;
    let mut flags = Flags::parse(rest)?;
    let command = match sub.as_str() {
        "gen" => {
            let kind_raw = flags.require("kind")?;
            let kind = Kind::from_tag(&kind_raw)
                .ok_or_else(|| usage_err(format!("unknown kind {kind_raw:?}")))?;
            let n = parse_usize("n", &flags.require("n")?)?;
            let d = parse_usize("d", &flags.require("d")?)?;
            let seed = flags
                .require("seed")?
                .parse()
                .map_err(|_| usage_err("--seed: not a 64-bit unsigned integer"))?;
            let out = PathBuf::from(flags.require("out")?);
            Command::Gen {
                kind,
                n,
                d,
                seed,
                out,
            }
        }
        "run" | "compare" => {
            let methods = if sub == "run" {
                parse_methods(&flags.require("method")?)?
            } else {
                parse_methods(&flags.require("methods")?)?
            };
            let eps_list = match flags.take("eps") {
                Some(raw) => parse_eps_list(&raw)?,
                None => Vec::new(),
            };
            let input = PathBuf::from(flags.require("input")?);
            let out = PathBuf::from(flags.require("out")?);
            let cap = match flags.take("cap") {
                Some(raw) => {
                    let cap = parse_usize("cap", &raw)?;
                    if cap == 0 {
                        return Err(usage_err("--cap must be at least 1"));
                    }
                    cap
                }
                None => DEFAULT_CAP,
            };
            let oracle_ceiling = match flags.take("oracle-ceiling") {
                Some(raw) => parse_usize("oracle-ceiling", &raw)?,
                None => DEFAULT_ORACLE_CEILING,
            };
            let oracle = flags.take_flag("oracle");
            Command::Sweep {
                config: ExperimentConfig {
                    input: InputSpec::File(input),
                    methods,
                    eps_list,
                    cap,
                    oracle,
                    oracle_ceiling,
                },
                out,
            }
        }
        other => return Err(usage_err(format!("unknown subcommand {other:?}"))),
    };
    flags.finish()?;
    Ok(command)
}

pub fn run_command(command: Command) -> Result<()> {
    match command {
        Command::Gen {
            kind,
            n,
            d,
            seed,
            out,
        } => {
            let s = generate(kind, n, d, seed)?;
            let header = format!("kind={kind} n={n} d={d} seed={seed}");
            write_points(&s, &out, Some(&header))
        }
        Command::Sweep { config, out } => {
            let report = execute(&config)?;
            std::fs::write(&out, report.render()).map_err(|e| HarnessError::Io {
                path: out.display().to_string(),
                source: e,
            })
        }
    }
}

/// Full entry point; returns the process exit code.
pub fn main_entry(args: &[String]) -> i32 {
    let command = match parse(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!("{USAGE}");
            return 1;
        }
    };
    match run_command(command) {
        Ok(()) => 0,
        Err(e) => {
            if e.is_usage() {
                eprintln!("error: {e}");
                eprintln!("{USAGE}");
                1
            } else {
                eprintln!("error: {e}");
                2
            }
        }
    }
}
