//! Truncated Dirichlet series with exact integer coefficients, and the zeta and
//! normal zeta series of P1, P-1, P2, Pm and P2/m assembled from them.
//!
//! `ζ_k` denotes the translate `ζ(s − k)` whose `n`-th coefficient is `n^k`.
//! Every product below is a Dirichlet convolution of coefficient tables; a
//! finite polynomial in `2^{-s}` acts by pulling coefficients back along
//! divisors.

use thiserror::Error;

use crate::enumeration::AmbientGroup;

pub use crate::arith::{divisor_count, divisor_sigma};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirichletError {
    #[error("coefficient tables have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },
    #[error("coefficient overflow at n = {n}")]
    Overflow { n: usize },
    #[error("table length must be at least 1")]
    Empty,
    #[error("Dirichlet polynomial bases must be positive and distinct (offending base {base})")]
    BadBase { base: u64 },
}

/// Coefficients `a_1, …, a_N` of a truncated Dirichlet series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTable {
    coeffs: Vec<i64>,
}

impl CoeffTable {
    pub fn zeros(max_index: usize) -> Result<Self, DirichletError> {
        if max_index == 0 {
            return Err(DirichletError::Empty);
        }
        Ok(CoeffTable {
            coeffs: vec![0; max_index],
        })
    }

    /// The constant series `1`.
    pub fn unit(max_index: usize) -> Result<Self, DirichletError> {
        let mut t = Self::zeros(max_index)?;
        t.coeffs[0] = 1;
        Ok(t)
    }

    /// Builds a table from `a_1, a_2, …`.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self, DirichletError> {
        if coeffs.is_empty() {
            return Err(DirichletError::Empty);
        }
        Ok(CoeffTable { coeffs })
    }

    pub fn max_index(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient at `n` (1-based). Panics outside `1..=max_index`.
    pub fn get(&self, n: usize) -> i64 {
        assert!(
            (1..=self.coeffs.len()).contains(&n),
            "index {n} outside 1..={}",
            self.coeffs.len()
        );
        self.coeffs[n - 1]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.coeffs
    }

    /// `(n, a_n)` pairs in increasing `n`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().enumerate().map(|(i, &c)| (i + 1, c))
    }

    pub fn checked_add(&self, other: &CoeffTable) -> Result<CoeffTable, DirichletError> {
        same_len(self, other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .map(|(i, (a, b))| {
                a.checked_add(*b)
                    .ok_or(DirichletError::Overflow { n: i + 1 })
            })
            .collect::<Result<_, _>>()?;
        Ok(CoeffTable { coeffs })
    }

    pub fn convolve(&self, other: &CoeffTable) -> Result<CoeffTable, DirichletError> {
        convolve(self, other)
    }
}

fn same_len(a: &CoeffTable, b: &CoeffTable) -> Result<(), DirichletError> {
    if a.max_index() != b.max_index() {
        return Err(DirichletError::LengthMismatch {
            left: a.max_index(),
            right: b.max_index(),
        });
    }
    Ok(())
}

/// Coefficients of `ζ_k(s) = Σ n^k n^{-s}` up to `max_index`.
pub fn zeta_translate(k: u32, max_index: usize) -> Result<CoeffTable, DirichletError> {
    if max_index == 0 {
        return Err(DirichletError::Empty);
    }
    let coeffs = (1..=max_index)
        .map(|n| {
            i64::try_from(n)
                .ok()
                .and_then(|n| n.checked_pow(k))
                .ok_or(DirichletError::Overflow { n })
        })
        .collect::<Result<_, _>>()?;
    Ok(CoeffTable { coeffs })
}

/// Dirichlet convolution `(f * g)(n) = Σ_{l | n} f(l) g(n / l)`.
pub fn convolve(a: &CoeffTable, b: &CoeffTable) -> Result<CoeffTable, DirichletError> {
    same_len(a, b)?;
    let n_max = a.max_index();
    let mut out = vec![0i64; n_max];
    for l in 1..=n_max {
        let fl = a.coeffs[l - 1];
        if fl == 0 {
            continue;
        }
        for m in 1..=n_max / l {
            let n = l * m;
            let term = fl
                .checked_mul(b.coeffs[m - 1])
                .ok_or(DirichletError::Overflow { n })?;
            out[n - 1] = out[n - 1]
                .checked_add(term)
                .ok_or(DirichletError::Overflow { n })?;
        }
    }
    Ok(CoeffTable { coeffs: out })
}

/// A finite Dirichlet polynomial `Σ c · k^{-s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirichletPoly {
    terms: Vec<(i64, u64)>,
}

impl DirichletPoly {
    /// Terms are `(coefficient, base)`; bases must be distinct and positive.
    pub fn new(terms: impl IntoIterator<Item = (i64, u64)>) -> Result<Self, DirichletError> {
        let terms: Vec<(i64, u64)> = terms.into_iter().collect();
        for (idx, &(_, base)) in terms.iter().enumerate() {
            if base == 0 || terms[..idx].iter().any(|&(_, b)| b == base) {
                return Err(DirichletError::BadBase { base });
            }
        }
        Ok(DirichletPoly { terms })
    }

    /// `Σ_e coeffs[e] · 2^{-e s}`, skipping zero coefficients.
    pub fn in_powers_of_two(coeffs: &[i64]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (c, 1u64 << e))
            .collect();
        DirichletPoly { terms }
    }

    pub fn terms(&self) -> &[(i64, u64)] {
        &self.terms
    }
}

/// Multiplies a series by a Dirichlet polynomial: `out(n) = Σ_{(c,k), k | n} c · A(n / k)`.
pub fn apply_poly(poly: &DirichletPoly, table: &CoeffTable) -> Result<CoeffTable, DirichletError> {
    let n_max = table.max_index();
    let mut out = vec![0i64; n_max];
    for &(c, base) in poly.terms() {
        let Ok(k) = usize::try_from(base) else {
            continue;
        };
        for m in 1..=n_max / k {
            let n = k * m;
            let term = c
                .checked_mul(table.coeffs[m - 1])
                .ok_or(DirichletError::Overflow { n })?;
            out[n - 1] = out[n - 1]
                .checked_add(term)
                .ok_or(DirichletError::Overflow { n })?;
        }
    }
    Ok(CoeffTable { coeffs: out })
}

/// Products of zeta translates, built once per table length.
struct ZetaProducts {
    n: usize,
}

impl ZetaProducts {
    fn product(&self, shifts: &[u32]) -> Result<CoeffTable, DirichletError> {
        let mut acc = CoeffTable::unit(self.n)?;
        for &k in shifts {
            acc = convolve(&acc, &zeta_translate(k, self.n)?)?;
        }
        Ok(acc)
    }

    /// `Σ poly_i · Π ζ_{k}` over the given terms.
    fn combine(&self, terms: &[(&[i64], &[u32])]) -> Result<CoeffTable, DirichletError> {
        let mut acc = CoeffTable::zeros(self.n)?;
        for (poly, shifts) in terms {
            let part = apply_poly(
                &DirichletPoly::in_powers_of_two(poly),
                &self.product(shifts)?,
            )?;
            acc = acc.checked_add(&part)?;
        }
        Ok(acc)
    }
}

/// How to read the third zeta factor in the first summand of `ζ_Pm`.
///
/// The published formula has a garbled factor between `ζ(s)` and `ζ₁(s)`. Brute
/// force enumeration shows that `ζ(s)ζ₁(s)ζ₁(s)` is the correct one, which is
/// also what the P2/m zeta function uses for its Pm share.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PmReading {
    /// `(1 + 9·2^{-s} + 6·2^{-2s}) ζ ζ₁ ζ₁ + 2^{-s} ζ ζ₁ ζ₂`
    ZetaZeta1Zeta1,
    /// `(1 + 9·2^{-s} + 6·2^{-2s}) ζ ζ ζ₁ + 2^{-s} ζ ζ₁ ζ₂`
    ZetaZetaZeta1,
}

/// Zeta series of Pm under an explicit reading of the ambiguous factor.
pub fn pm_zeta_series(reading: PmReading, max_index: usize) -> Result<CoeffTable, DirichletError> {
    let z = ZetaProducts { n: max_index };
    let first: &[u32] = match reading {
        PmReading::ZetaZeta1Zeta1 => &[0, 1, 1],
        PmReading::ZetaZetaZeta1 => &[0, 0, 1],
    };
    z.combine(&[(&[1, 9, 6], first), (&[0, 1], &[0, 1, 2])])
}

/// Exact coefficients of `ζ_G` (or `ζ_G^◁` when `normal`) for `n ≤ max_index`.
pub fn series(
    group: AmbientGroup,
    max_index: usize,
    normal: bool,
) -> Result<CoeffTable, DirichletError> {
    let z = ZetaProducts { n: max_index };
    match (group, normal) {
        // ℤ³ is abelian, so every subgroup is normal.
        (AmbientGroup::P1, _) => z.product(&[0, 1, 2]),
        (AmbientGroup::P1Bar, false) => z.combine(&[(&[1], &[1, 2, 3]), (&[0, 1], &[0, 1, 2])]),
        (AmbientGroup::P1Bar, true) => z.combine(&[(&[1, 14, 28, 8], &[]), (&[0, 1], &[0, 1, 2])]),
        (AmbientGroup::P2, false) => z.combine(&[(&[1, 8], &[0, 1, 2])]),
        (AmbientGroup::P2, true) => z.combine(&[(&[1, 13, 22, 4], &[0]), (&[0, 1, 3], &[0, 0, 1])]),
        (AmbientGroup::Pm, false) => pm_zeta_series(PmReading::ZetaZeta1Zeta1, max_index),
        (AmbientGroup::Pm, true) => z.combine(&[(&[1, 11, 12], &[0, 1]), (&[0, 1, 3], &[0, 0, 1])]),
        (AmbientGroup::P2m, false) => z.combine(&[
            (&[1, 20, 36], &[1, 1, 2]),
            (&[0, 1, 9, 6], &[0, 1, 1]),
            (&[0, 1, 8], &[0, 1, 2]),
            (&[0, 1], &[1, 2, 3]),
        ]),
        (AmbientGroup::P2m, true) => z.combine(&[
            (&[1, 29, 126, 92, 8], &[]),
            (&[0, 1, 13, 22, 4], &[0]),
            (&[0, 1, 11, 12], &[0, 1]),
            (&[0, 0, 1, 3], &[0, 0, 1]),
        ]),
    }
}
