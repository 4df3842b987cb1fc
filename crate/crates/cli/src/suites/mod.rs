//! Verification suites behind `varlat verify`. Each suite returns a list
//! of checks; `all` runs every suite plus the plumbing checks and asserts
//! that every public operation of every module was exercised.

mod counterexamples;
mod derivations;
mod figures;
mod lemma_cancellable;
mod plumbing;
mod theorem_necessity;

pub use derivations::product_power_chain;

use std::collections::VecDeque;
use std::sync::Mutex;

use crate::report::{Check, Coverage};

type SuiteResult = Option<(Vec<Check>, Coverage)>;

pub const SUITES: &[&str] = &[
    "figures",
    "lemma-cancellable",
    "theorem-necessity",
    "counterexamples",
    "derivations",
    "all",
];

const COMPONENT_SUITES: &[&str] = &[
    "figures",
    "lemma-cancellable",
    "theorem-necessity",
    "counterexamples",
    "derivations",
];

pub fn run_suite(name: &str, cov: &mut Coverage) -> Option<Vec<Check>> {
    match name {
        "figures" => Some(figures::run(cov)),
        "lemma-cancellable" => Some(lemma_cancellable::run(cov)),
        "theorem-necessity" => Some(theorem_necessity::run(cov)),
        "counterexamples" => Some(counterexamples::run(cov)),
        "derivations" => Some(derivations::run(cov)),
        "all" => Some(run_all(cov)),
        _ => None,
    }
}

/// Worker-thread cap: `VARLAT_THREADS` if set, else the machine's
/// available parallelism.
fn thread_cap() -> usize {
    if let Ok(v) = std::env::var("VARLAT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

/// Runs the component suites (on up to `VARLAT_THREADS` workers; results
/// are assembled in the fixed suite order, so output is identical to a
/// sequential run), then the plumbing checks, then the coverage assertion.
fn run_all(cov: &mut Coverage) -> Vec<Check> {
    cov.mark("cli.verify");
    let workers = thread_cap().min(COMPONENT_SUITES.len());
    let mut results: Vec<SuiteResult> = (0..COMPONENT_SUITES.len()).map(|_| None).collect();

    if workers <= 1 {
        for (i, name) in COMPONENT_SUITES.iter().enumerate() {
            let mut local = Coverage::new();
            let checks = run_suite(name, &mut local).unwrap();
            results[i] = Some((checks, local));
        }
    } else {
        let queue: Mutex<VecDeque<usize>> = Mutex::new((0..COMPONENT_SUITES.len()).collect());
        let slots: Vec<Mutex<SuiteResult>> =
            (0..COMPONENT_SUITES.len()).map(|_| Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let job = queue.lock().unwrap().pop_front();
                    let Some(i) = job else { break };
                    let mut local = Coverage::new();
                    let checks = run_suite(COMPONENT_SUITES[i], &mut local).unwrap();
                    *slots[i].lock().unwrap() = Some((checks, local));
                });
            }
        });
        for (i, slot) in slots.into_iter().enumerate() {
            results[i] = slot.into_inner().unwrap();
        }
    }

    let mut checks = Vec::new();
    for slot in results {
        let (suite_checks, local) = slot.expect("suite ran");
        checks.extend(suite_checks);
        cov.merge(local);
    }

    checks.extend(plumbing::run(cov));

    let missing = cov.missing();
    let detail = if missing.is_empty() {
        format!("all {} operations exercised", crate::report::ALL_OPS.len())
    } else {
        format!("missing: {}", missing.join(", "))
    };
    checks.push(Check::new("coverage.all-ops", missing.is_empty(), detail));
    checks
}
