//! One PASS/FAIL line per acceptance criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use difcat::report::Report;
use difcat::suites::{self, KleisliConfig, DEFAULT_SEED};
use difcat::Z2;

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_report(r: difcat::Result<Report>, limit: Option<Duration>, took: Duration) -> Outcome {
    match r {
        Err(e) => Outcome { passed: false, detail: format!("error: {e}") },
        Ok(r) => {
            let in_time = limit.map_or(true, |l| took < l);
            let mut detail = format!("{} checks, {} cases, {:.1} s", r.checks.len(), r.total_cases(), took.as_secs_f64());
            if let Some(l) = limit {
                detail += &format!(" (limit {} s)", l.as_secs());
            }
            for c in r.failures() {
                detail += &format!("\n    failed {}: {}", c.name, c.counterexample.as_deref().unwrap_or("-"));
            }
            Outcome { passed: r.passed && in_time, detail }
        }
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> difcat::Result<Report>) -> Outcome {
    let start = Instant::now();
    let r = f();
    from_report(r, limit, start.elapsed())
}

fn mutations() -> Outcome {
    let start = Instant::now();
    match suites::mutation_suite(DEFAULT_SEED) {
        Err(e) => Outcome { passed: false, detail: format!("error: {e}") },
        Ok((report, found)) => {
            let mut detail = format!("{} sabotages, {:.1} s", found.len(), start.elapsed().as_secs_f64());
            for m in &found {
                let status = if m.detected { "caught" } else { "MISSED" };
                let witness = m.counterexample.as_deref().unwrap_or("-");
                let witness: String = witness.chars().take(160).collect();
                detail += &format!("\n    {status} {} by {}: {witness}", m.name, m.suite);
            }
            Outcome { passed: report.passed && found.len() == 5, detail }
        }
    }
}

fn main() -> ExitCode {
    // libtest-style arguments such as `--nocapture` or filters are ignored.
    let criteria: Vec<(&str, Box<dyn FnOnce() -> Outcome>)> = vec![
        ("CDC axioms on Poly over nat, int, rat, zmod:5", Box::new(|| {
            timed(Some(Duration::from_secs(60)), || Ok(suites::cdc_suite(200, DEFAULT_SEED)))
        })),
        ("Q modality laws over Z/2 and Z/3, dim <= 2, degree <= 3", Box::new(|| {
            timed(Some(Duration::from_secs(300)), || Ok(suites::modality_suite(2, 3, None)))
        })),
        ("co-Kleisli category of Q agrees with Faa over Z/2", Box::new(|| {
            timed(None, || suites::kleisli_suite::<Z2>(&KleisliConfig::default()))
        })),
        ("Faa di Bruno composite and differential on 100 pairs", Box::new(|| {
            timed(None, || Ok(suites::faa_suite(100, DEFAULT_SEED, 4, None)))
        })),
        ("iterated derivative decomposition and higher components", Box::new(|| {
            timed(None, || Ok(suites::iterated_suite(100, DEFAULT_SEED)))
        })),
        ("partition and partial bijection combinatorics", Box::new(|| timed(None, || Ok(suites::combinat_suite())))),
        ("Yoneda full fidelity and presheaf axioms on Mat(Z/2)", Box::new(|| {
            timed(None, || suites::embedding_suite(2))
        })),
        ("each sabotage is detected", Box::new(mutations)),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let o = run();
        all &= o.passed;
        println!("criterion {} [{}] {name}: {}", i + 1, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
