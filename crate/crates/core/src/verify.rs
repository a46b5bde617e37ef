//! Self-verification suites producing a markdown report.

use std::fmt::Write as _;
use std::time::Instant;

use crate::arith::{divisor_sigma, primes_up_to};
use crate::asymptotics::{convergence_report, lemma_sum_naive, partial_sums, SumKind};
use crate::counting::{a_closed, c_closed, check_prime_identities, degree_estimate};
use crate::dirichlet::{pm_zeta_series, series, PmReading};
use crate::enumeration::{AmbientGroup, Oracle};
use crate::lattice::lattices_of_index;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Exact,
    Oracle,
    Asymptotic,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Exact, Suite::Oracle, Suite::Asymptotic];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Oracle => "oracle",
            Suite::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Informational; never fails the run.
    Note,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn to_markdown(&self) -> String {
        let mut md = String::from("# crystalzeta verification report\n");
        for suite in Suite::ALL {
            let checks: Vec<&Check> = self.checks.iter().filter(|c| c.suite == suite).collect();
            if checks.is_empty() {
                continue;
            }
            let _ = writeln!(md, "\n## {} suite\n", suite.name());
            md.push_str("| status | check | detail | time (s) |\n|---|---|---|---|\n");
            for c in checks {
                let status = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Note => "NOTE",
                };
                let _ = writeln!(
                    md,
                    "| {status} | {} | {} | {:.2} |",
                    c.name,
                    c.detail.replace('|', "\\|"),
                    c.seconds
                );
            }
        }
        let failed = self
            .checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .count();
        let _ = writeln!(
            md,
            "\n**{}**: {} checks, {} failed\n",
            if failed == 0 {
                "ALL PASSED"
            } else {
                "FAILURES"
            },
            self.checks.len(),
            failed
        );
        md
    }
}

struct Recorder<'a> {
    report: &'a mut Report,
    suite: Suite,
}

impl Recorder<'_> {
    fn check(&mut self, name: &str, f: impl FnOnce() -> (Status, String)) {
        let start = Instant::now();
        let (status, detail) = f();
        self.report.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            status,
            detail,
            seconds: start.elapsed().as_secs_f64(),
        });
    }
}

fn verdict(ok: bool, detail: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

/// Runs the requested suites in order.
pub fn run(suites: &[Suite], oracle: Oracle) -> Report {
    let mut report = Report::default();
    for &suite in suites {
        let mut rec = Recorder {
            report: &mut report,
            suite,
        };
        match suite {
            Suite::Exact => exact_suite(&mut rec),
            Suite::Oracle => oracle_suite(&mut rec, oracle),
            Suite::Asymptotic => asymptotic_suite(&mut rec),
        }
    }
    report
}

fn exact_suite(rec: &mut Recorder<'_>) {
    rec.check("golden normal counts", || {
        let got: Vec<i64> = [2, 4, 8, 16].map(c_closed).to_vec();
        verdict(
            got == [31, 155, 187, 199],
            format!("c_2, c_4, c_8, c_16 = {got:?}"),
        )
    });
    rec.check("odd normal counts vanish", || {
        let bad: Vec<u64> = (3..=999).step_by(2).filter(|&n| c_closed(n) != 0).collect();
        verdict(
            bad.is_empty(),
            format!("odd 3 <= n <= 999 with c_n != 0: {bad:?}"),
        )
    });
    rec.check("prime identities", || {
        let rows = check_prime_identities(999);
        let bad: Vec<u64> = rows.iter().filter(|r| !r.passed()).map(|r| r.p).collect();
        verdict(
            bad.is_empty(),
            format!("{} odd primes < 1000, failures {bad:?}", rows.len()),
        )
    });
    rec.check("closed forms vs convolution, n <= 100000", || {
        let n_max = 100_000;
        let (a, c) = match (
            series(AmbientGroup::P2m, n_max, false),
            series(AmbientGroup::P2m, n_max, true),
        ) {
            (Ok(a), Ok(c)) => (a, c),
            (Err(e), _) | (_, Err(e)) => return (Status::Fail, e.to_string()),
        };
        let bad_a = (1..=n_max).find(|&n| a_closed(n as u64) != a.get(n));
        let bad_c = (1..=n_max).find(|&n| c_closed(n as u64) != c.get(n));
        verdict(
            bad_a.is_none() && bad_c.is_none(),
            format!("first a_n mismatch {bad_a:?}, first c_n mismatch {bad_c:?}"),
        )
    });
    rec.check("a_n >= c_n and index-2 normality", || {
        let bad = (1..=10_000u64).find(|&n| a_closed(n) < c_closed(n));
        let (a2, c2) = (a_closed(2), c_closed(2));
        verdict(
            bad.is_none() && a2 == 31 && c2 == 31,
            format!("first n <= 10000 with a_n < c_n: {bad:?}; a_2 = {a2}, c_2 = {c2}"),
        )
    });
    rec.check("lattice counts vs Z^3 series, n <= 200", || {
        let z3 = match series(AmbientGroup::P1, 200, false) {
            Ok(t) => t,
            Err(e) => return (Status::Fail, e.to_string()),
        };
        let bad = (1..=200usize).find(|&n| lattices_of_index(n as u64).len() as i64 != z3.get(n));
        verdict(bad.is_none(), format!("first mismatch {bad:?}"))
    });
    rec.check("lemma sum: sieve vs naive, x <= 2000", || {
        let xs: Vec<u64> = (1..=2000).collect();
        let sieve = partial_sums(SumKind::Lemma, &xs);
        let mut naive = 0i128;
        let mut bad = None;
        for (&x, &s) in xs.iter().zip(&sieve) {
            naive += (1..=x)
                .filter(|q| x % q == 0)
                .map(|q| q as i128 * divisor_sigma(q) as i128)
                .sum::<i128>();
            if naive != s {
                bad = Some(x);
                break;
            }
        }
        let spot = lemma_sum_naive(2000) == sieve[1999];
        verdict(bad.is_none() && spot, format!("first mismatch {bad:?}"))
    });
    rec.check("degree: slope of log a_2p on log p, primes <= 4999", || {
        let slope = degree_estimate(9998).prime_slope.unwrap_or(f64::NAN);
        verdict(
            (slope - 3.0).abs() <= 0.05,
            format!("slope {slope:.5}, required 3.00 +/- 0.05"),
        )
    });
    rec.check("degree: slope over primes <= 10^6", || {
        let pts: Vec<(f64, f64)> = primes_up_to(1_000_000)
            .into_iter()
            .filter(|&p| p != 2)
            .map(|p| ((p as f64).ln(), (a_closed(2 * p) as f64).ln()))
            .collect();
        let slope = crate::counting::least_squares_slope(&pts).unwrap_or(f64::NAN);
        let d = degree_estimate(10_000);
        (
            Status::Note,
            format!(
                "slope {slope:.5}; log a_N / log N at N = 10000 is {:.4}; max ratio {:.4} at n = {}",
                d.final_ratio, d.max_ratio, d.argmax
            ),
        )
    });
}

fn oracle_suite(rec: &mut Recorder<'_>, oracle: Oracle) {
    let n_max = oracle.limit();
    rec.check(
        &format!("P2/m: oracle = closed form = series, n <= {n_max}"),
        || {
            let mut bad = Vec::new();
            for normal in [false, true] {
                let s = match series(AmbientGroup::P2m, n_max as usize, normal) {
                    Ok(s) => s,
                    Err(e) => return (Status::Fail, e.to_string()),
                };
                for n in 1..=n_max {
                    let closed = if normal { c_closed(n) } else { a_closed(n) };
                    match oracle.oracle_count(AmbientGroup::P2m, n, normal) {
                        Ok(count) if count as i64 == closed && closed == s.get(n as usize) => {}
                        other => bad.push(format!("n={n} normal={normal}: {other:?}")),
                    }
                }
            }
            verdict(bad.is_empty(), format!("mismatches: {bad:?}"))
        },
    );
    for group in AmbientGroup::ALL {
        if group == AmbientGroup::P2m {
            continue;
        }
        for normal in [false, true] {
            let label = format!(
                "{}: {} series vs oracle, n <= {n_max}",
                group,
                if normal { "normal zeta" } else { "zeta" }
            );
            rec.check(&label, || series_vs_oracle(oracle, group, normal));
        }
    }
    rec.check("Pm zeta: reading of the ambiguous third factor", || {
        let literal = pm_zeta_series(PmReading::ZetaZetaZeta1, n_max as usize);
        let first_bad = literal.ok().and_then(|t| {
            (1..=n_max).find(|&n| {
                oracle.oracle_count(AmbientGroup::Pm, n, false).ok() != Some(t.get(n as usize) as u64)
            })
        });
        (
            Status::Note,
            format!(
                "published factor is garbled; the zeta*zeta*zeta_1 reading disagrees with the oracle first at n = {}; \
                 the zeta*zeta_1*zeta_1 reading (used here, and in the P2/m zeta function) agrees",
                first_bad.map_or("none".to_string(), |n| n.to_string())
            ),
        )
    });
    rec.check("index-2 subgroups are normal", || {
        let mut detail = Vec::new();
        let mut ok = true;
        for g in AmbientGroup::ALL {
            let all = oracle.oracle_count(g, 2, false);
            let normal = oracle.oracle_count(g, 2, true);
            ok &= all.is_ok() && all == normal;
            detail.push(format!("{g}: {all:?}/{normal:?}"));
        }
        verdict(ok, detail.join(", "))
    });
    rec.check("enumeration sorted, duplicate-free, normal subset", || {
        for g in AmbientGroup::ALL {
            for n in 1..=n_max {
                let (all, normal) = match (
                    oracle.enumerate_subgroups(g, n, false),
                    oracle.enumerate_subgroups(g, n, true),
                ) {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => return (Status::Fail, e.to_string()),
                };
                let sorted = all.windows(2).all(|w| w[0] < w[1]);
                let canonical = all.iter().all(|d| d.canonicalize() == *d);
                let subset = normal.iter().all(|d| all.binary_search(d).is_ok());
                if !(sorted && canonical && subset) {
                    return (Status::Fail, format!("{g} n={n}"));
                }
            }
        }
        (Status::Pass, format!("all groups, n <= {n_max}"))
    });
}

fn series_vs_oracle(oracle: Oracle, group: AmbientGroup, normal: bool) -> (Status, String) {
    let n_max = oracle.limit();
    let s = match series(group, n_max as usize, normal) {
        Ok(s) => s,
        Err(e) => return (Status::Fail, e.to_string()),
    };
    let bad: Vec<String> = (1..=n_max)
        .filter_map(|n| match oracle.oracle_count(group, n, normal) {
            Ok(c) if c as i64 == s.get(n as usize) => None,
            other => Some(format!(
                "n={n}: oracle {other:?}, series {}",
                s.get(n as usize)
            )),
        })
        .collect();
    let note = if group == AmbientGroup::Pm && !normal && !bad.is_empty() {
        " (ambiguous third factor of the published Pm zeta function)"
    } else {
        ""
    };
    verdict(bad.is_empty(), format!("mismatches: {bad:?}{note}"))
}

/// Evaluation points and the relative-error bound at the last point.
pub fn asymptotic_plan(kind: SumKind) -> (Vec<u64>, f64) {
    match kind {
        SumKind::SumA => (vec![1_000, 10_000, 100_000], 0.01),
        SumKind::SumC => (vec![1_000, 10_000, 100_000], 0.02),
        SumKind::Lemma => (vec![100, 1_000, 10_000], 0.01),
        SumKind::Sigma => (vec![1_000, 10_000, 100_000], 0.001),
    }
}

fn asymptotic_suite(rec: &mut Recorder<'_>) {
    for kind in SumKind::ALL {
        let (xs, tol) = asymptotic_plan(kind);
        rec.check(&format!("partial sum '{kind}' vs leading term"), || {
            let r = match convergence_report(kind, &xs) {
                Ok(r) => r,
                Err(e) => return (Status::Fail, e.to_string()),
            };
            let last = r.last();
            let decreasing = kind != SumKind::SumA || r.rel_err_strictly_decreasing();
            let ok = last.rel_err < tol && r.exponent_ok() && decreasing;
            verdict(
                ok,
                format!(
                    "x = {}: normalized {:.8}, target {:.8}, rel err {:.3e} (< {tol}); fitted error exponent {:.3} (<= {:.1})",
                    last.x,
                    last.normalized,
                    last.target,
                    last.rel_err,
                    r.fitted_exponent,
                    kind.max_error_exponent()
                ),
            )
        });
    }
}
