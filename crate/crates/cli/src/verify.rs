use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use anyhow::{bail, Result};
use clap::Args;
use quadbetti_core::harness::suite::{builtin_suite, SuiteEntry};
use quadbetti_core::Verdict;
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::emit;

#[derive(Args)]
pub struct VerifyArgs {
    /// Seed for the perturbation families
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    jobs: Option<usize>,
    /// Run only jobs whose name starts with this prefix
    #[arg(long)]
    only: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn failed(name: &str, err: &quadbetti_core::Error) -> SuiteEntry {
    SuiteEntry {
        name: name.to_string(),
        verdict: Verdict::Inconclusive,
        details: vec![("error".to_string(), err.to_string())],
    }
}

pub fn run(a: &VerifyArgs) -> Result<Verdict> {
    let jobs: Vec<_> = builtin_suite(a.seed)
        .into_iter()
        .filter(|j| a.only.as_deref().is_none_or(|p| j.name.starts_with(p)))
        .collect();
    if jobs.is_empty() {
        bail!("no suite job matches the filter");
    }
    let workers = a
        .jobs
        .unwrap_or_else(|| thread::available_parallelism().map_or(1, |n| n.get()))
        .clamp(1, jobs.len());
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<SuiteEntry>>> = Mutex::new(vec![None; jobs.len()]);
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let n = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(n) else { break };
                let e = job.run().unwrap_or_else(|err| failed(&job.name, &err));
                results.lock().unwrap()[n] = Some(e);
            });
        }
    });
    let entries: Vec<SuiteEntry> = results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(Option::unwrap)
        .collect();
    let overall = Verdict::all(entries.iter().map(|e| e.verdict));

    let text = match a.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|e| {
                    let d: Vec<String> = e.details.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    vec![e.name.clone(), e.verdict.as_str().to_string(), d.join("; ")]
                })
                .collect();
            emit::csv(&["name", "verdict", "details"], &rows)?
        }
        Format::Json => {
            let count = |v: Verdict| entries.iter().filter(|e| e.verdict == v).count();
            let results: Vec<Value> = entries
                .iter()
                .map(|e| {
                    let details: Map<String, Value> =
                        e.details.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                    json!({"name": e.name, "verdict": e.verdict.as_str(), "details": details})
                })
                .collect();
            emit::json(&json!({
                "seed": a.seed,
                "results": results,
                "summary": {
                    "pass": count(Verdict::Pass),
                    "inconclusive": count(Verdict::Inconclusive),
                    "violation": count(Verdict::Violation),
                },
                "overall": overall.as_str(),
            }))
        }
    };
    emit::write(a.output.as_deref(), &text)?;
    Ok(overall)
}
