//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use crystalzeta::arith::divisor_sigma;
use crystalzeta::asymptotics::{convergence_report, partial_sums, SumKind};
use crystalzeta::counting::{check_prime_identities, degree_estimate};
use crystalzeta::lattice::lattices_of_index;
use crystalzeta::verify::{self, Status, Suite};
use crystalzeta::{a_closed, c_closed, series, AmbientGroup, Oracle};

const ORACLE_MAX: u64 = 24;

/// Collects sub-checks for one criterion.
#[derive(Default)]
struct Outcome {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Outcome {
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn within(&mut self, elapsed: Duration, budget: Duration, what: &str) {
        self.note(format!("{what} {:.2}s", elapsed.as_secs_f64()));
        self.require(
            elapsed < budget,
            format!(
                "{what} took {:.2}s, budget {:?}",
                elapsed.as_secs_f64(),
                budget
            ),
        );
    }
}

fn golden_values() -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    for (n, want) in [(2, 31), (4, 155), (8, 187), (16, 199)] {
        let got = c_closed(n);
        o.require(got == want, format!("c_{n} = {got}, expected {want}"));
    }
    for n in (3..=999).step_by(2) {
        let got = c_closed(n);
        o.require(got == 0, format!("c_{n} = {got}, expected 0"));
    }
    let rows = check_prime_identities(999);
    o.require(
        rows.len() == 167,
        format!("{} odd primes below 1000", rows.len()),
    );
    for r in rows.iter().filter(|r| !r.passed()) {
        o.require(false, format!("prime identity fails at p = {}: {r:?}", r.p));
    }
    o.within(start.elapsed(), Duration::from_secs(1), "runtime");
    o
}

fn triple_agreement() -> Outcome {
    let mut o = Outcome::default();
    let n_max = 100_000usize;

    let start = Instant::now();
    let a = series(AmbientGroup::P2m, n_max, false).expect("zeta series");
    let c = series(AmbientGroup::P2m, n_max, true).expect("normal zeta series");
    let convolution_time = start.elapsed();
    if let Some(n) = (1..=n_max).find(|&n| a_closed(n as u64) != a.get(n)) {
        o.require(
            false,
            format!(
                "a_{n}: closed {} vs series {}",
                a_closed(n as u64),
                a.get(n)
            ),
        );
    }
    if let Some(n) = (1..=n_max).find(|&n| c_closed(n as u64) != c.get(n)) {
        o.require(
            false,
            format!(
                "c_{n}: closed {} vs series {}",
                c_closed(n as u64),
                c.get(n)
            ),
        );
    }
    o.within(convolution_time, Duration::from_secs(30), "convolution");

    let start = Instant::now();
    let oracle = Oracle::with_limit(ORACLE_MAX);
    for n in 1..=ORACLE_MAX {
        let all = oracle
            .oracle_count(AmbientGroup::P2m, n, false)
            .expect("oracle");
        let normal = oracle
            .oracle_count(AmbientGroup::P2m, n, true)
            .expect("oracle");
        o.require(
            all as i64 == a_closed(n),
            format!("a_{n}: oracle {all} vs {}", a_closed(n)),
        );
        o.require(
            normal as i64 == c_closed(n),
            format!("c_{n}: oracle {normal} vs {}", c_closed(n)),
        );
    }
    o.within(start.elapsed(), Duration::from_secs(300), "oracle");
    o
}

fn building_blocks() -> Outcome {
    let mut o = Outcome::default();
    let oracle = Oracle::with_limit(ORACLE_MAX);
    for group in [
        AmbientGroup::P1,
        AmbientGroup::P1Bar,
        AmbientGroup::P2,
        AmbientGroup::Pm,
    ] {
        for normal in [false, true] {
            let s = series(group, ORACLE_MAX as usize, normal).expect("series");
            for n in 1..=ORACLE_MAX {
                let want = oracle.oracle_count(group, n, normal).expect("oracle") as i64;
                let got = s.get(n as usize);
                o.require(
                    got == want,
                    format!("{group} normal={normal} n={n}: series {got}, oracle {want}"),
                );
            }
        }
    }

    // The published Pm zeta function has a garbled factor; the report must say
    // which reading is used.
    let report = verify::run(&[Suite::Oracle], oracle);
    let flagged = report
        .checks
        .iter()
        .find(|c| c.status == Status::Note && c.name.starts_with("Pm zeta"));
    match flagged {
        Some(c) => o.note(format!("Pm reading flagged: {}", c.detail)),
        None => o.require(false, "verify report does not flag the Pm zeta reading"),
    }
    o
}

fn structure() -> Outcome {
    let mut o = Outcome::default();
    o.require(a_closed(2) == 31 && c_closed(2) == 31, "a_2 = c_2 = 31");
    let oracle = Oracle::with_limit(ORACLE_MAX);
    for group in AmbientGroup::ALL {
        let all = oracle.oracle_count(group, 2, false).expect("oracle");
        let normal = oracle.oracle_count(group, 2, true).expect("oracle");
        o.require(
            all == normal,
            format!("{group}: {all} index-2 subgroups, {normal} normal"),
        );
    }
    if let Some(n) = (1..=10_000u64).find(|&n| a_closed(n) < c_closed(n)) {
        o.require(false, format!("a_{n} < c_{n}"));
    }
    for group in AmbientGroup::ALL {
        for n in 1..=ORACLE_MAX {
            for normal in [false, true] {
                let list = oracle
                    .enumerate_subgroups(group, n, normal)
                    .expect("oracle");
                o.require(
                    list.windows(2).all(|w| w[0] < w[1]),
                    format!("{group} n={n} normal={normal}: not strictly sorted"),
                );
                o.require(
                    list.iter().all(|d| d.canonicalize() == *d),
                    format!("{group} n={n} normal={normal}: non-canonical descriptor"),
                );
            }
        }
    }
    let z3 = series(AmbientGroup::P1, 200, false).expect("series");
    for n in 1..=200usize {
        let count = lattices_of_index(n as u64).len() as i64;
        o.require(
            count == z3.get(n),
            format!("index {n}: {count} lattices vs {}", z3.get(n)),
        );
    }
    o
}

fn asymptotics() -> Outcome {
    let mut o = Outcome::default();
    let start = Instant::now();
    let plans: [(SumKind, &[u64], f64); 4] = [
        (SumKind::SumA, &[1_000, 10_000, 100_000], 0.01),
        (SumKind::SumC, &[1_000, 10_000, 100_000], 0.02),
        (SumKind::Lemma, &[100, 1_000, 10_000], 0.01),
        (SumKind::Sigma, &[1_000, 10_000, 100_000], 0.001),
    ];
    for (kind, xs, tol) in plans {
        let r = convergence_report(kind, xs).expect("report");
        let last = r.last();
        o.note(format!(
            "{kind}: rel err {:.2e} at x = {}, exponent {:.3}",
            last.rel_err, last.x, r.fitted_exponent
        ));
        o.require(
            last.rel_err < tol,
            format!("{kind}: rel err {} >= {tol}", last.rel_err),
        );
        o.require(
            r.fitted_exponent <= f64::from(kind.degree()) - 0.5 + 0.3,
            format!("{kind}: fitted exponent {}", r.fitted_exponent),
        );
        if kind == SumKind::SumA {
            o.require(
                r.rows.windows(2).all(|w| w[1].rel_err < w[0].rel_err),
                "a: relative error not strictly decreasing",
            );
        }
    }
    o.within(start.elapsed(), Duration::from_secs(120), "runtime");
    o
}

fn self_consistency() -> Outcome {
    let mut o = Outcome::default();
    let xs: Vec<u64> = (1..=2000).collect();
    let sieve = partial_sums(SumKind::Lemma, &xs);
    let mut naive = 0i128;
    for (&x, &s) in xs.iter().zip(&sieve) {
        for q in (1..=x).filter(|q| x % q == 0) {
            naive += q as i128 * divisor_sigma(q) as i128;
        }
        if naive != s {
            o.require(
                false,
                format!("lemma sum at x = {x}: sieve {s}, naive {naive}"),
            );
            break;
        }
    }
    let slope = degree_estimate(9998).prime_slope.expect("enough primes");
    o.note(format!("slope {slope:.4}"));
    o.require(
        (slope - 3.0).abs() <= 0.05,
        format!("degree slope {slope:.4} over primes <= 4999 is outside 3.00 +/- 0.05"),
    );
    o
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("golden values", golden_values),
        ("triple agreement for P2/m", triple_agreement),
        ("building blocks vs oracle", building_blocks),
        ("structural properties", structure),
        ("asymptotic constants", asymptotics),
        ("oracle self-consistency", self_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        let status = if o.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let mut detail = o.notes.join("; ");
        if !o.failures.is_empty() {
            failed += 1;
            let shown: Vec<&str> = o.failures.iter().take(5).map(String::as_str).collect();
            detail = format!(
                "{} failure(s): {}; {detail}",
                o.failures.len(),
                shown.join("; ")
            );
        }
        println!("criterion {} ({name}): {status} [{detail}]", i + 1);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
