//! Acceptance run: every criterion is a suite run at default settings plus
//! coverage requirements read off the report, under a wall-clock budget.
//! Prints one PASS/FAIL line per criterion and fails if any criterion fails.

use std::io::Write;
use std::time::{Duration, Instant};

use gtbv::harness::{run_suite, Report, Suite, SuiteConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    suites: &'static [Suite],
    check: fn(&[Report]) -> Vec<String>,
}

fn need(problems: &mut Vec<String>, r: &Report, key: &str, at_least: u64) {
    let got = r.coverage(key);
    if got < at_least {
        problems.push(format!("{}: coverage `{key}` = {got} < {at_least}", r.suite));
    }
}

fn trials(problems: &mut Vec<String>, r: &Report, at_least: usize) {
    if r.trials.len() < at_least {
        problems.push(format!("{}: {} trials < {at_least}", r.suite, r.trials.len()));
    }
}

const MIN: u64 = 60;

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            title: "GT_AXIOMS on torus and pants",
            budget: Duration::from_secs(2 * MIN),
            suites: &[Suite::GtAxioms],
            check: |r| {
                let mut p = Vec::new();
                trials(&mut p, &r[0], 50);
                need(&mut p, &r[0], "nonzero_bracket", 1);
                need(&mut p, &r[0], "nonzero_cobracket", 1);
                p
            },
        },
        Criterion {
            id: 2,
            title: "realization and skeleton independence",
            budget: Duration::from_secs(2 * MIN),
            suites: &[Suite::Realization],
            check: |r| {
                let mut p = Vec::new();
                let n = r[0].trials.len() as u64;
                need(&mut p, &r[0], "realization_seeds", 8 * n);
                need(&mut p, &r[0], "moved_skeletons", 3 * n);
                need(&mut p, &r[0], "nonzero_cobracket", 1);
                p
            },
        },
        Criterion {
            id: 3,
            title: "GOLDMAN_EVEN incl. Tr–logdet and logdet–logdet rows",
            budget: Duration::from_secs(2 * MIN),
            suites: &[Suite::GoldmanEven],
            check: |r| {
                let mut p = Vec::new();
                trials(&mut p, &r[0], 10);
                for k in ["tr_tr_nonzero", "logdet_tr_nonzero", "logdet_logdet_nonzero", "alternative_representatives"] {
                    need(&mut p, &r[0], k, 1);
                }
                // every nonzero sample rules out the opposite sign convention
                need(&mut p, &r[0], "opposite_sign_rejected", r[0].coverage("nonzero"));
                p
            },
        },
        Criterion {
            id: 4,
            title: "FR_INVARIANCE + FR_QUASI",
            budget: Duration::from_secs(3 * MIN),
            suites: &[Suite::FrInvariance, Suite::FrQuasi],
            check: |r| {
                let mut p = Vec::new();
                need(&mut p, &r[0], "moves", 1);
                need(&mut p, &r[0], "fusions", 1);
                need(&mut p, &r[0], "nonzero", 1);
                trials(&mut p, &r[1], 10);
                need(&mut p, &r[1], "nonzero", 1);
                p
            },
        },
        Criterion {
            id: 5,
            title: "BV_INVARIANCE + BV_SQUARE incl. the ν-term",
            budget: Duration::from_secs(5 * MIN),
            suites: &[Suite::BvInvariance, Suite::BvSquare],
            check: |r| {
                let mut p = Vec::new();
                need(&mut p, &r[0], "moves", 1);
                need(&mut p, &r[0], "nonzero_with_nu", 1);
                trials(&mut p, &r[1], 10);
                need(&mut p, &r[1], "nonzero", 1);
                p
            },
        },
        Criterion {
            id: 6,
            title: "GEOMETRIC_BV incl. boundary and inflated realizations",
            budget: Duration::from_secs(5 * MIN),
            suites: &[Suite::GeometricBv],
            check: |r| {
                let mut p = Vec::new();
                trials(&mut p, &r[0], 30);
                need(&mut p, &r[0], "nonzero_with_boundary_crossing", 1);
                need(&mut p, &r[0], "nonzero_inflated", 1);
                need(&mut p, &r[0], "nonzero_with_nu", 1);
                p
            },
        },
        Criterion {
            id: 7,
            title: "ODD_GOLDMAN with self and mutual intersections",
            budget: Duration::from_secs(10 * MIN),
            suites: &[Suite::OddGoldman],
            check: |r| {
                let mut p = Vec::new();
                trials(&mut p, &r[0], 10);
                need(&mut p, &r[0], "self_intersection", 1);
                need(&mut p, &r[0], "mutual_intersection", 1);
                need(&mut p, &r[0], "nonzero", 1);
                p
            },
        },
        Criterion {
            id: 8,
            title: "ODD_GOLDMAN_EXT, all three H₁ cases",
            budget: Duration::from_secs(5 * MIN),
            suites: &[Suite::OddGoldmanExt],
            check: |r| {
                let mut p = Vec::new();
                for k in ["h1_alone", "h1_h1", "h1_loop", "nonzero"] {
                    need(&mut p, &r[0], k, 1);
                }
                p
            },
        },
        Criterion {
            id: 9,
            title: "ALGEBRA_IDS",
            budget: Duration::from_secs(MIN),
            suites: &[Suite::AlgebraIds],
            check: |_| Vec::new(),
        },
        Criterion {
            id: 10,
            title: "fusion formulas",
            budget: Duration::from_secs(MIN),
            suites: &[Suite::Fusion],
            check: |r| {
                let mut p = Vec::new();
                need(&mut p, &r[0], "cross_term_nonzero", 1);
                p
            },
        },
    ]
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in criteria() {
        let start = Instant::now();
        let mut problems = Vec::new();
        let mut reports = Vec::new();
        for &s in c.suites {
            match run_suite(&SuiteConfig::new(s)) {
                Ok(r) => {
                    if !r.passed() {
                        problems.push(format!(
                            "{s}: {} failing trial(s); first counterexample {}",
                            r.failures(),
                            r.first_counterexample().map(|v| v.to_string()).unwrap_or_default()
                        ));
                    }
                    reports.push(r);
                }
                Err(e) => problems.push(format!("{s}: {e}")),
            }
        }
        if reports.len() == c.suites.len() {
            problems.extend((c.check)(&reports));
        }
        let elapsed = start.elapsed();
        if elapsed > c.budget {
            problems.push(format!("took {elapsed:?}, budget {:?}", c.budget));
        }
        let n: usize = reports.iter().map(|r| r.trials.len()).sum();
        // written to the handle directly so the lines show without --nocapture
        let mut out = std::io::stdout().lock();
        if problems.is_empty() {
            let _ = writeln!(out, "criterion {:>2} PASS  {} ({n} trials, {:.1}s)", c.id, c.title, elapsed.as_secs_f64());
        } else {
            let _ = writeln!(out, "criterion {:>2} FAIL  {}: {}", c.id, c.title, problems.join("; "));
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
