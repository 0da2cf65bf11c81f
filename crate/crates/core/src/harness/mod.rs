//! Corpus runs: every selected suite on every item, merged into one report
//! ordered by suite and item name.

pub mod corpus;
pub mod suites;

use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use corpus::{load_item, read_index};
pub use suites::{Bounds, ItemRun, Status, SuiteResult, SUITES};

#[derive(Clone, Copy, Debug)]
pub struct RunFlags {
    pub bound: usize,
    pub trials: usize,
    pub seed: u64,
    /// Record wall-clock time per result; reports then differ between runs.
    pub timings: bool,
}

impl Default for RunFlags {
    fn default() -> Self {
        RunFlags { bound: 8, trials: 20, seed: 42, timings: false }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suites: Vec<String>,
    pub bounds: Bounds,
    pub summary: Summary,
    pub results: Vec<SuiteResult>,
}

impl Report {
    pub fn is_success(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn get(&self, suite: &str, item: &str) -> Option<&SuiteResult> {
        self.results.iter().find(|r| r.suite == suite && r.item == item)
    }
}

/// `A`, `B`, `C`, `L` or `all`.
pub fn suite_names(name: &str) -> Result<Vec<String>> {
    if name == "all" {
        return Ok(SUITES.iter().map(|s| s.to_string()).collect());
    }
    let mut out = Vec::new();
    for part in name.split(',') {
        if !SUITES.contains(&part) {
            return Err(Error::Definition(format!("unknown suite `{part}` (expected A, B, C, L or all)")));
        }
        out.push(part.to_string());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Runs `suites` over the corpus in `dir`. A malformed index aborts the run;
/// a malformed item fails that item only.
pub fn run_corpus(dir: &Path, suites: &[String], flags: RunFlags) -> Result<Report> {
    let index = read_index(dir)?;
    let mut results: Vec<SuiteResult> = index
        .item
        .par_iter()
        .flat_map_iter(|spec| {
            let rows: Vec<SuiteResult> = match load_item(spec, dir) {
                Ok(item) => {
                    let run = ItemRun::new(&item, flags.bound, flags.trials, flags.seed);
                    suites.iter().map(|s| run.run(s, flags.timings)).collect()
                }
                Err(e) => suites
                    .iter()
                    .map(|s| SuiteResult {
                        suite: s.clone(),
                        item: spec.name.clone(),
                        status: Status::Fail(format!("item aborted: {e}")),
                        hypotheses: Default::default(),
                        checks: Default::default(),
                        bounds: Bounds { bound: flags.bound, trials: flags.trials, seed: flags.seed },
                        timings: None,
                    })
                    .collect(),
            };
            rows
        })
        .collect();
    results.sort_by(|a, b| (&a.suite, &a.item).cmp(&(&b.suite, &b.item)));
    let mut summary = Summary::default();
    for r in &results {
        match r.status {
            Status::Pass => summary.pass += 1,
            Status::Fail(_) => summary.fail += 1,
            Status::Skipped(_) => summary.skipped += 1,
        }
    }
    Ok(Report {
        suites: suites.to_vec(),
        bounds: Bounds { bound: flags.bound, trials: flags.trials, seed: flags.seed },
        summary,
        results,
    })
}
