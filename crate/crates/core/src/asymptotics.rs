//! Partial sums of the subgroup counts and the divisor sums behind them,
//! compared with their leading asymptotic terms.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::arith::{divisor_sigma, sigma_sieve};
use crate::counting::{a_closed, c_closed, least_squares_slope};

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202056903159594;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticsError {
    #[error("need at least 3 evaluation points to fit an error exponent, got {0}")]
    TooFewPoints(usize),
    #[error("evaluation points must be strictly increasing")]
    NotIncreasing,
    #[error("evaluation point {0} is below the minimum of 10")]
    PointTooSmall(u64),
    #[error("error term vanished at x = {0}; cannot take its logarithm")]
    ZeroError(u64),
}

/// Which partial sum to examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    /// `Σ_{n≤x} a_n ~ π²ζ(3)/384 · x⁴`
    SumA,
    /// `Σ_{n≤x} c_n ~ (3/32 + 7π²/4608) π² · x²`
    SumC,
    /// `Σ_{n≤x} Σ_{q|n} qσ(q) ~ π²ζ(3)/18 · x³`
    Lemma,
    /// `Σ_{q≤t} σ(q) ~ π²/12 · t²`
    Sigma,
}

impl SumKind {
    pub const ALL: [SumKind; 4] = [SumKind::SumA, SumKind::SumC, SumKind::Lemma, SumKind::Sigma];

    /// Degree of the main term.
    pub fn degree(self) -> i32 {
        match self {
            SumKind::SumA => 4,
            SumKind::SumC | SumKind::Sigma => 2,
            SumKind::Lemma => 3,
        }
    }

    /// Leading constant of the main term.
    pub fn target(self) -> f64 {
        let pi2 = PI * PI;
        match self {
            SumKind::SumA => pi2 * ZETA_3 / 384.0,
            SumKind::SumC => (3.0 / 32.0 + 7.0 * pi2 / 4608.0) * pi2,
            SumKind::Lemma => pi2 * ZETA_3 / 18.0,
            SumKind::Sigma => pi2 / 12.0,
        }
    }

    /// Upper bound on the fitted error exponent: one half below the main degree,
    /// plus 0.3 slack for logarithmic factors.
    pub fn max_error_exponent(self) -> f64 {
        self.degree() as f64 - 0.5 + 0.3
    }

    pub fn name(self) -> &'static str {
        match self {
            SumKind::SumA => "a",
            SumKind::SumC => "c",
            SumKind::Lemma => "lemma",
            SumKind::Sigma => "sigma",
        }
    }
}

impl fmt::Display for SumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SumKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SumKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown sum kind {s:?} (expected a, c, lemma or sigma)"))
    }
}

pub fn sum_a(x: u64) -> i128 {
    (1..=x).map(|n| a_closed(n) as i128).sum()
}

pub fn sum_c(x: u64) -> i128 {
    (1..=x).map(|n| c_closed(n) as i128).sum()
}

/// `Σ_{q≤t} σ(q)`.
pub fn sigma_partial_sum(t: u64) -> i128 {
    sigma_sieve(t as usize).iter().map(|&s| s as i128).sum()
}

/// `Σ_{n≤x} Σ_{q|n} qσ(q)`, evaluated as `Σ_{d≤x} Σ_{q≤x/d} qσ(q)`.
pub fn lemma_sum(x: u64) -> i128 {
    lemma_sums(&[x])[0]
}

/// The same double sum by direct iteration over `n` and its divisors.
pub fn lemma_sum_naive(x: u64) -> i128 {
    (1..=x)
        .map(|n| {
            (1..=n)
                .filter(|q| n % q == 0)
                .map(|q| q as i128 * divisor_sigma(q) as i128)
                .sum::<i128>()
        })
        .sum()
}

fn lemma_sums(xs: &[u64]) -> Vec<i128> {
    let max = xs.iter().copied().max().unwrap_or(0) as usize;
    let sigma = sigma_sieve(max);
    // prefix[m] = Σ_{q≤m} qσ(q)
    let mut prefix = vec![0i128; max + 1];
    for q in 1..=max {
        prefix[q] = prefix[q - 1] + q as i128 * sigma[q] as i128;
    }
    xs.iter()
        .map(|&x| (1..=x).map(|d| prefix[(x / d) as usize]).sum())
        .collect()
}

/// Exact partial sums of `kind` at each `x`.
pub fn partial_sums(kind: SumKind, xs: &[u64]) -> Vec<i128> {
    let max = xs.iter().copied().max().unwrap_or(0);
    let cumulative = |coeff: &dyn Fn(u64) -> i128| {
        let mut acc = Vec::with_capacity(max as usize + 1);
        acc.push(0i128);
        for n in 1..=max {
            let prev = acc[n as usize - 1];
            acc.push(prev + coeff(n));
        }
        xs.iter().map(|&x| acc[x as usize]).collect::<Vec<_>>()
    };
    match kind {
        SumKind::SumA => cumulative(&|n| a_closed(n) as i128),
        SumKind::SumC => cumulative(&|n| c_closed(n) as i128),
        SumKind::Sigma => {
            let sigma = sigma_sieve(max as usize);
            cumulative(&|n| sigma[n as usize] as i128)
        }
        SumKind::Lemma => lemma_sums(xs),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub x: u64,
    pub raw_sum: i128,
    /// `raw_sum / x^d`
    pub normalized: f64,
    pub target: f64,
    /// `|normalized − target| / target`
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub kind: SumKind,
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `log |raw_sum − target·x^d|` against `log x`.
    pub fitted_exponent: f64,
}

impl ConvergenceReport {
    pub fn exponent_ok(&self) -> bool {
        self.fitted_exponent <= self.kind.max_error_exponent()
    }

    pub fn rel_err_strictly_decreasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].rel_err < w[0].rel_err)
    }

    pub fn last(&self) -> &ConvergenceRow {
        self.rows.last().expect("report has at least 3 rows")
    }
}

pub fn convergence_report(
    kind: SumKind,
    xs: &[u64],
) -> Result<ConvergenceReport, AsymptoticsError> {
    if let Some(&x) = xs.iter().find(|&&x| x < 10) {
        return Err(AsymptoticsError::PointTooSmall(x));
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(AsymptoticsError::NotIncreasing);
    }
    if xs.len() < 3 {
        return Err(AsymptoticsError::TooFewPoints(xs.len()));
    }

    let target = kind.target();
    let d = kind.degree();
    let sums = partial_sums(kind, xs);
    let mut rows = Vec::with_capacity(xs.len());
    let mut fit = Vec::with_capacity(xs.len());
    for (&x, &raw_sum) in xs.iter().zip(&sums) {
        let xf = x as f64;
        let main = target * xf.powi(d);
        let normalized = raw_sum as f64 / xf.powi(d);
        let err = (raw_sum as f64 - main).abs();
        if err == 0.0 {
            return Err(AsymptoticsError::ZeroError(x));
        }
        fit.push((xf.ln(), err.ln()));
        rows.push(ConvergenceRow {
            x,
            raw_sum,
            normalized,
            target,
            rel_err: (normalized - target).abs() / target,
        });
    }
    let fitted_exponent = least_squares_slope(&fit).expect("x values are distinct");
    Ok(ConvergenceReport {
        kind,
        rows,
        fitted_exponent,
    })
}
