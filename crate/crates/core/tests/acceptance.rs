//! Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use atto::verify::{self, PropertyResult, DEFAULT_SEED};

struct Check {
    property: &'static str,
    trials: usize,
    threshold: Option<f64>,
}

const fn check(property: &'static str, trials: usize, threshold: Option<f64>) -> Check {
    Check { property, trials, threshold }
}

struct Criterion {
    id: u32,
    title: &'static str,
    checks: &'static [Check],
    time_limit: Option<Duration>,
}

static CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "zero-symbol forward",
        checks: &[check("zero_forward", 200, Some(1e-9))],
        time_limit: Some(Duration::from_secs(20)),
    },
    Criterion {
        id: 2,
        title: "zero-symbol converse",
        checks: &[check("zero_converse", 200, Some(1e-10))],
        time_limit: Some(Duration::from_secs(20)),
    },
    Criterion {
        id: 3,
        title: "canonical-pair reduction",
        checks: &[check("canonical_reduction", 100, Some(1e-9)), check("shift_invariance", 100, Some(1e-9))],
        time_limit: None,
    },
    Criterion {
        id: 4,
        title: "Crofoot suite",
        checks: &[
            check("crofoot_unitary", 50, Some(1e-10)),
            check("kernel_transform", 100, Some(1e-10)),
            check("transport_conjugation", 50, Some(1e-9)),
        ],
        time_limit: None,
    },
    Criterion {
        id: 5,
        title: "rank-one suite",
        checks: &[
            check("rank_one_interior_a", 50, Some(1e-9)),
            check("rank_one_interior_b", 50, Some(1e-9)),
            check("rank_one_boundary", 50, Some(1e-8)),
            check("rank_one_radial_limit", 50, None),
        ],
        time_limit: None,
    },
    Criterion {
        id: 6,
        title: "quadrature vs Fourier oracle",
        checks: &[check("oracle_agreement", 100, Some(1e-8))],
        time_limit: None,
    },
    Criterion {
        id: 7,
        title: "conjugation",
        checks: &[
            check("conjugation_unitary_symmetric", 30, Some(1e-10)),
            check("conjugation_kernel_interior", 30, Some(1e-10)),
            check("conjugation_kernel_boundary", 30, Some(1e-10)),
        ],
        time_limit: None,
    },
];

fn describe(r: &PropertyResult) -> String {
    let res = r.max_residual.map_or("-".to_string(), |v| format!("{v:.2e}"));
    format!("{}[{} trials, max {res}, {} failed]", r.name, r.trials, r.failures)
}

fn run_criterion(c: &Criterion) -> (bool, String) {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for ch in c.checks {
        let Some(p) = verify::property(ch.property) else {
            return (false, format!("unknown property {}", ch.property));
        };
        if p.threshold != ch.threshold {
            return (false, format!("{} threshold {:?} differs from {:?}", ch.property, p.threshold, ch.threshold));
        }
        let r = verify::run_property(p, DEFAULT_SEED, Some(ch.trials));
        ok &= r.pass && r.trials == ch.trials;
        if let Some(e) = &r.first_error {
            parts.push(e.clone());
        }
        parts.push(describe(&r));
    }
    let elapsed = start.elapsed();
    if let Some(limit) = c.time_limit {
        ok &= elapsed < limit;
        parts.push(format!("{:.2}s (limit {}s)", elapsed.as_secs_f64(), limit.as_secs()));
    } else {
        parts.push(format!("{:.2}s", elapsed.as_secs_f64()));
    }
    (ok, parts.join("; "))
}

fn full_verify() -> (bool, String) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_atto")).arg("verify").output();
    let elapsed = start.elapsed();
    match out {
        Ok(o) => {
            let code = o.status.code();
            let ok = code == Some(0) && elapsed < Duration::from_secs(60);
            (ok, format!("exit {code:?}; {:.2}s (limit 60s)", elapsed.as_secs_f64()))
        }
        Err(e) => (false, format!("could not run binary: {e}")),
    }
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |id: u32, title: &str, (ok, detail): (bool, String)| {
        all &= ok;
        println!("criterion {id} {:<30} {} {detail}", title, if ok { "PASS" } else { "FAIL" });
    };
    for c in CRITERIA {
        report(c.id, c.title, run_criterion(c));
    }
    report(8, "full verify run", full_verify());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
