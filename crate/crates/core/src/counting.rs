//! Closed-form subgroup counts `a_n` and normal subgroup counts `c_n` of P2/m,
//! plus checks on the degree of subgroup growth.

use crate::arith::{divisors_with_info, primes_up_to};

/// A single count request.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountQuery {
    pub n: u64,
    pub normal: bool,
}

impl CountQuery {
    pub fn new(n: u64, normal: bool) -> Option<Self> {
        (n >= 1).then_some(CountQuery { n, normal })
    }

    pub fn evaluate(&self) -> i64 {
        if self.normal {
            c_closed(self.n)
        } else {
            a_closed(self.n)
        }
    }
}

/// Divisor sums over `l | m` used by the closed forms.
#[derive(Debug, Default, Clone, Copy)]
struct DivisorSums {
    /// `Σ σ(l)`
    sigma: i128,
    /// `Σ l·d(l)`
    l_count: i128,
    /// `Σ l·σ(l)`
    l_sigma: i128,
}

fn divisor_sums(m: u64) -> DivisorSums {
    divisors_with_info(m)
        .into_iter()
        .fold(DivisorSums::default(), |acc, d| DivisorSums {
            sigma: acc.sigma + d.sigma as i128,
            l_count: acc.l_count + d.value as i128 * d.count as i128,
            l_sigma: acc.l_sigma + d.value as i128 * d.sigma as i128,
        })
}

fn sigma(m: u64) -> i128 {
    divisors_with_info(m)
        .into_iter()
        .map(|d| d.value as i128)
        .sum()
}

fn narrow(v: i128, what: &str, n: u64) -> i64 {
    i64::try_from(v).unwrap_or_else(|_| panic!("{what} overflows i64 at n = {n}"))
}

/// Number of subgroups of index `n` in P2/m, by residue of `n` mod 8.
pub fn a_closed(n: u64) -> i64 {
    assert!(n >= 1, "index must be positive");
    let nn = n as i128;
    let full = divisor_sums(n);
    let value = if n % 2 == 1 {
        nn * full.sigma
    } else {
        let half = divisor_sums(n / 2);
        let base =
            nn * full.sigma + 10 * nn * half.sigma + half.l_count + (nn / 2 + 1) * half.l_sigma;
        match n % 8 {
            2 | 6 => base,
            r => {
                let quarter = divisor_sums(n / 4);
                let with_quarter =
                    base + 9 * nn * quarter.sigma + 9 * quarter.l_count + 8 * quarter.l_sigma;
                if r == 4 {
                    with_quarter
                } else {
                    with_quarter + 6 * divisor_sums(n / 8).l_count
                }
            }
        }
    };
    narrow(value, "a_n", n)
}

/// Number of normal subgroups of index `n` in P2/m.
///
/// The four explicit values take precedence over the residue-class branches.
pub fn c_closed(n: u64) -> i64 {
    assert!(n >= 1, "index must be positive");
    let value: i128 = match n {
        1 => 1,
        _ if n % 2 == 1 => 0,
        2 => 31,
        4 => 155,
        8 => 187,
        16 => 199,
        _ => match n % 16 {
            0 | 8 => {
                let constant = if n % 16 == 0 { 40 } else { 36 };
                constant
                    + sigma(n / 2)
                    + 11 * sigma(n / 4)
                    + 12 * sigma(n / 8)
                    + 3 * divisor_sums(n / 8).sigma
                    + divisor_sums(n / 4).sigma
            }
            4 | 12 => 14 + sigma(n / 2) + 11 * sigma(n / 4) + divisor_sums(n / 4).sigma,
            _ => 1 + sigma(n / 2),
        },
    };
    narrow(value, "c_n", n)
}

/// `a_p = p² + 2p` and `a_{2p} = p³ + 30p² + 60p + 2` for one odd prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeIdentityRow {
    pub p: u64,
    pub a_p: i64,
    pub a_p_expected: i64,
    pub a_2p: i64,
    pub a_2p_expected: i64,
}

impl PrimeIdentityRow {
    pub fn passed(&self) -> bool {
        self.a_p == self.a_p_expected && self.a_2p == self.a_2p_expected
    }
}

/// Checks both prime identities for every odd prime `p ≤ p_max`.
pub fn check_prime_identities(p_max: u64) -> Vec<PrimeIdentityRow> {
    primes_up_to(p_max)
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| {
            let pp = p as i64;
            PrimeIdentityRow {
                p,
                a_p: a_closed(p),
                a_p_expected: pp * pp + 2 * pp,
                a_2p: a_closed(2 * p),
                a_2p_expected: pp * pp * pp + 30 * pp * pp + 60 * pp + 2,
            }
        })
        .collect()
}

/// Empirical growth degree of `a_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeEstimate {
    /// `max_{2 ≤ n ≤ N} log a_n / log n`.
    pub max_ratio: f64,
    /// The `n` attaining `max_ratio`.
    pub argmax: u64,
    /// `log a_N / log N`.
    pub final_ratio: f64,
    /// Least-squares slope of `log a_{2p}` against `log p`, primes `3 ≤ p ≤ N/2`.
    pub prime_slope: Option<f64>,
}

pub fn degree_estimate(max_n: u64) -> DegreeEstimate {
    assert!(max_n >= 2, "degree estimate needs N >= 2");
    let ratio = |n: u64| (a_closed(n) as f64).ln() / (n as f64).ln();
    let (argmax, max_ratio) =
        (2..=max_n)
            .map(|n| (n, ratio(n)))
            .fold(
                (2, f64::MIN),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
    let final_ratio = ratio(max_n);

    let points: Vec<(f64, f64)> = primes_up_to(max_n / 2)
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| ((p as f64).ln(), (a_closed(2 * p) as f64).ln()))
        .collect();
    DegreeEstimate {
        max_ratio,
        argmax,
        final_ratio,
        prime_slope: least_squares_slope(&points),
    }
}

/// Slope of the ordinary least-squares line through `points`; `None` for fewer
/// than two points or a degenerate abscissa.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
