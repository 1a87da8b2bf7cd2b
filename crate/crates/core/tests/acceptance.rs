//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use loopcell::homology::{config_complex, config_homology, thom_dims, SparseMatrix};
use loopcell::spectral::{dl_basis, snaith_check};
use loopcell::verify::{self, RunConfig, SuiteReport};

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_suite(r: SuiteReport) -> Outcome {
    let detail = if r.passed {
        format!("{} checks", r.cases)
    } else {
        format!("{} checks, failures: {}", r.cases, r.failures.join("; "))
    };
    Outcome {
        passed: r.passed,
        detail,
    }
}

fn boundaries_square_to_zero() -> Outcome {
    let mut complexes = 0;
    for n in 1..=6 {
        for d in 1..=3 {
            let c = match config_complex(n, d) {
                Ok(c) => c,
                Err(e) => {
                    return Outcome {
                        passed: false,
                        detail: format!("C_{n}(R^{d}): {e}"),
                    }
                }
            };
            for deg in 1..c.len() {
                let (lo, hi): (&SparseMatrix, &SparseMatrix) =
                    (c.boundary(deg - 1).unwrap(), c.boundary(deg).unwrap());
                let prod = lo.mul(hi).expect("shapes agree");
                if prod.iter().any(|e| e.2 % 2 != 0) {
                    return Outcome {
                        passed: false,
                        detail: format!("C_{n}(R^{d}) degree {deg}"),
                    };
                }
            }
            complexes += 1;
        }
    }
    Outcome {
        passed: true,
        detail: format!("{complexes} complexes"),
    }
}

/// Totals computed here from the two pipelines directly, then compared with
/// the library's own report.
fn snaith_tables() -> Outcome {
    let d_max = 6;
    let mut mismatches = Vec::new();
    for (k, m) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
        let mut thom = vec![0usize; d_max + 1];
        for p in 1..=d_max / k {
            let t = thom_dims(k, m, p, d_max - k).expect("in range");
            for (&q, &dim) in &t.dims {
                thom[q + k] += dim;
            }
        }
        let mut dl = vec![0usize; d_max + 1];
        for ((d, _), c) in dl_basis(m, k, d_max, d_max) {
            dl[d] += c;
        }
        if thom[1..] != dl[1..] {
            mismatches.push(format!(
                "({k},{m}): thom {:?} vs dyer-lashof {:?}",
                &thom[1..],
                &dl[1..]
            ));
        }
        if !snaith_check(k, m, d_max).map(|r| r.passed).unwrap_or(false) {
            mismatches.push(format!("({k},{m}): report failed"));
        }
    }
    Outcome {
        passed: mismatches.is_empty(),
        detail: if mismatches.is_empty() {
            "4 pairs, degrees 1..=6".into()
        } else {
            mismatches.join("; ")
        },
    }
}

fn config_gate() -> Outcome {
    let r = verify::config_gate_suite(&RunConfig::default());
    // the two-point case once more against ℝP^{d-1}, outside the suite
    let rp = (1..=4).all(|d| {
        config_homology(2, d)
            .map(|b| b == vec![1; d])
            .unwrap_or(false)
    });
    let mut o = from_suite(r);
    o.passed &= rp;
    o
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Option<Duration>, Check)> = vec![
        (
            "operad axioms",
            Some(Duration::from_secs(5)),
            Box::new(|| from_suite(verify::operad_suite(&cfg))),
        ),
        (
            "filtration invariance",
            None,
            Box::new(|| from_suite(verify::filtration_suite(&cfg))),
        ),
        (
            "tubular invariants",
            None,
            Box::new(|| from_suite(verify::tubular_suite(&cfg))),
        ),
        (
            "bar construction",
            None,
            Box::new(|| from_suite(verify::bar_suite(&cfg))),
        ),
        (
            "scanning",
            None,
            Box::new(|| from_suite(verify::scanning_suite(&cfg))),
        ),
        (
            "homology engine",
            None,
            Box::new(|| {
                let a = boundaries_square_to_zero();
                let b = from_suite(verify::snf_suite(&cfg));
                Outcome {
                    passed: a.passed && b.passed,
                    detail: format!("d^2 = 0 on {}; snf {}", a.detail, b.detail),
                }
            }),
        ),
        (
            "configuration-model gate",
            Some(Duration::from_secs(30)),
            Box::new(config_gate),
        ),
        (
            "one cell per stage (m = 1)",
            None,
            Box::new(|| from_suite(verify::cells_suite(&cfg))),
        ),
        (
            "snaith consistency",
            Some(Duration::from_secs(60)),
            Box::new(snaith_tables),
        ),
        (
            "orientability",
            None,
            Box::new(|| from_suite(verify::orientability_suite(&cfg))),
        ),
    ];
    let mut all = true;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > *limit {
                outcome.passed = false;
                outcome
                    .detail
                    .push_str(&format!(" (over the {limit:?} limit)"));
            }
        }
        all &= outcome.passed;
        println!(
            "criterion {:>2} {:<28} {}  {:.2?}  {}",
            i + 1,
            name,
            if outcome.passed { "PASS" } else { "FAIL" },
            elapsed,
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
