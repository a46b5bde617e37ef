//! Finite-index sublattices of ℤ³ in row Hermite normal form.
//!
//! A lattice is spanned by the rows
//!
//! ```text
//! (g, h, i)
//! (0, j, k)
//! (0, 0, l)
//! ```
//!
//! with `g, j, l ≥ 1`, `0 ≤ h < j` and `0 ≤ i, k < l`. Every sublattice of
//! finite index has exactly one such basis, so structural equality is lattice
//! equality.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::group::{apply_point, sub, IVec3, PointOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("diagonal entries must be positive, got g={g}, j={j}, l={l}")]
    NonPositiveDiagonal { g: i64, j: i64, l: i64 },
    #[error("off-diagonal entries not reduced: need 0 <= h < j and 0 <= i, k < l")]
    NotReduced,
    #[error("rows are not upper triangular")]
    NotTriangular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct HnfLattice {
    g: i64,
    h: i64,
    i: i64,
    j: i64,
    k: i64,
    l: i64,
}

impl HnfLattice {
    pub fn new(g: i64, h: i64, i: i64, j: i64, k: i64, l: i64) -> Result<Self, LatticeError> {
        if g < 1 || j < 1 || l < 1 {
            return Err(LatticeError::NonPositiveDiagonal { g, j, l });
        }
        if !(0..j).contains(&h) || !(0..l).contains(&i) || !(0..l).contains(&k) {
            return Err(LatticeError::NotReduced);
        }
        Ok(HnfLattice { g, h, i, j, k, l })
    }

    pub fn from_rows(rows: [IVec3; 3]) -> Result<Self, LatticeError> {
        let [[g, h, i], [z0, j, k], [z1, z2, l]] = rows;
        if z0 != 0 || z1 != 0 || z2 != 0 {
            return Err(LatticeError::NotTriangular);
        }
        Self::new(g, h, i, j, k, l)
    }

    pub fn diagonal(g: i64, j: i64, l: i64) -> Result<Self, LatticeError> {
        Self::new(g, 0, 0, j, 0, l)
    }

    /// The full translation lattice ℤ³.
    pub fn full() -> Self {
        HnfLattice {
            g: 1,
            h: 0,
            i: 0,
            j: 1,
            k: 0,
            l: 1,
        }
    }

    pub fn rows(&self) -> [IVec3; 3] {
        [
            [self.g, self.h, self.i],
            [0, self.j, self.k],
            [0, 0, self.l],
        ]
    }

    pub fn diag(&self) -> [i64; 3] {
        [self.g, self.j, self.l]
    }

    /// Index in ℤ³, the determinant `g·j·l`.
    pub fn index(&self) -> i64 {
        self.g * self.j * self.l
    }

    /// Sort key for the canonical `(g, j, l, h, i, k)` order.
    fn key(&self) -> [i64; 6] {
        [self.g, self.j, self.l, self.h, self.i, self.k]
    }

    /// Solves `v = α·row₀ + β·row₁ + γ·row₂` by back-substitution, returning the
    /// remainder left in the fundamental box `[0,g)×[0,j)×[0,l)`.
    pub fn reduce(&self, v: IVec3) -> IVec3 {
        let rows = self.rows();
        let mut v = v;
        for (axis, row) in rows.iter().enumerate() {
            let q = v[axis].div_euclid(row[axis]);
            if q != 0 {
                v = sub(v, scale(*row, q));
            }
        }
        v
    }

    /// True iff `v` is an integer combination of the rows.
    pub fn contains(&self, v: IVec3) -> bool {
        self.reduce(v) == [0, 0, 0]
    }

    /// True iff `p` maps the lattice onto itself.
    pub fn is_stable_under(&self, p: PointOp) -> bool {
        self.rows()
            .iter()
            .all(|row| self.contains(apply_point(p, *row)))
    }

    /// All reduced coset representatives of ℤ³ / L, in lexicographic order.
    pub fn coset_reps(&self) -> impl Iterator<Item = IVec3> + '_ {
        (0..self.g)
            .flat_map(move |a| (0..self.j).flat_map(move |b| (0..self.l).map(move |c| [a, b, c])))
    }
}

impl PartialOrd for HnfLattice {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HnfLattice {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for HnfLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}, {}], [0, {}, {}], [0, 0, {}]]",
            self.g, self.h, self.i, self.j, self.k, self.l
        )
    }
}

fn scale(v: IVec3, s: i64) -> IVec3 {
    v.map(|x| x.checked_mul(s).expect("translation overflow"))
}

pub fn lattice_index(lattice: &HnfLattice) -> i64 {
    lattice.index()
}

pub fn lattice_contains(lattice: &HnfLattice, v: IVec3) -> bool {
    lattice.contains(v)
}

pub fn lattice_reduce(lattice: &HnfLattice, v: IVec3) -> IVec3 {
    lattice.reduce(v)
}

pub fn lattice_stable(lattice: &HnfLattice, p: PointOp) -> bool {
    lattice.is_stable_under(p)
}

/// Every sublattice of ℤ³ of index `n`, each exactly once, sorted by `(g, j, l, h, i, k)`.
pub fn lattices_of_index(n: u64) -> Vec<HnfLattice> {
    assert!(n >= 1, "lattice index must be positive");
    let n = i64::try_from(n).expect("lattice index out of range");
    let mut out = Vec::new();
    for g in (1..=n).filter(|g| n % g == 0) {
        let rest = n / g;
        for j in (1..=rest).filter(|j| rest % j == 0) {
            let l = rest / j;
            for h in 0..j {
                for i in 0..l {
                    for k in 0..l {
                        out.push(HnfLattice { g, h, i, j, k, l });
                    }
                }
            }
        }
    }
    out
}
