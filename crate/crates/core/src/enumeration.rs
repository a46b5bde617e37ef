//! Brute-force enumeration of finite-index subgroups of P2/m and of its
//! subgroups Pm, P2, P-1 and P1.
//!
//! A subgroup `H` of finite index is determined by three pieces of data: its
//! point image `Q = HT/T`, its translation lattice `L = H ∩ T`, and for every
//! non-identity `q ∈ Q` the translation part `t_q` of some element of `H`
//! over `q`, taken modulo `L`. Reducing each `t_q` into the fundamental box of
//! `L` makes this description unique, so the enumeration counts every
//! subgroup exactly once without any inclusion-exclusion.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{add, apply_point, sub, GroupElement, IVec3, PointOp};
use crate::lattice::{lattices_of_index, HnfLattice};

/// Default upper bound on the index the oracle accepts.
pub const DEFAULT_ORACLE_MAX: u64 = 24;

/// Environment variable overriding [`DEFAULT_ORACLE_MAX`].
pub const ORACLE_MAX_ENV: &str = "CRYSTALZETA_ORACLE_MAX";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("index {n} exceeds the oracle limit {limit} (raise {ORACLE_MAX_ENV} to allow it)")]
    BoundExceeded { n: u64, limit: u64 },
    #[error("index must be positive")]
    ZeroIndex,
    #[error("descriptor is not a valid subgroup of {0}")]
    InvalidDescriptor(AmbientGroup),
    #[error("invalid value for {ORACLE_MAX_ENV}: {0:?}")]
    BadLimit(String),
}

/// The five groups whose subgroups can be enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AmbientGroup {
    P1,
    P1Bar,
    P2,
    Pm,
    P2m,
}

impl AmbientGroup {
    pub const ALL: [AmbientGroup; 5] = [
        AmbientGroup::P1,
        AmbientGroup::P1Bar,
        AmbientGroup::P2,
        AmbientGroup::Pm,
        AmbientGroup::P2m,
    ];

    pub fn point_group(self) -> PointSubgroup {
        use PointOp::*;
        match self {
            AmbientGroup::P1 => PointSubgroup::trivial(),
            AmbientGroup::P1Bar => PointSubgroup::generated_by(&[MR]),
            AmbientGroup::P2 => PointSubgroup::generated_by(&[R]),
            AmbientGroup::Pm => PointSubgroup::generated_by(&[M]),
            AmbientGroup::P2m => PointSubgroup::generated_by(&[M, R]),
        }
    }

    /// Lower-case short symbol used on the command line.
    pub fn symbol(self) -> &'static str {
        match self {
            AmbientGroup::P1 => "p1",
            AmbientGroup::P1Bar => "p-1",
            AmbientGroup::P2 => "p2",
            AmbientGroup::Pm => "pm",
            AmbientGroup::P2m => "p2m",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            AmbientGroup::P1 => "P1",
            AmbientGroup::P1Bar => "P-1",
            AmbientGroup::P2 => "P2",
            AmbientGroup::Pm => "Pm",
            AmbientGroup::P2m => "P2/m",
        }
    }
}

impl fmt::Display for AmbientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

impl FromStr for AmbientGroup {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AmbientGroup::ALL
            .into_iter()
            .find(|g| g.symbol() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown group {s:?} (expected one of p1, p-1, p2, pm, p2m)"))
    }
}

/// A subgroup of the Klein four-group `{E, M, R, MR}`, stored as a bit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PointSubgroup(u8);

impl PointSubgroup {
    pub const fn trivial() -> Self {
        PointSubgroup(1)
    }

    pub fn generated_by(gens: &[PointOp]) -> Self {
        let mut set = Self::trivial();
        loop {
            let mut next = set;
            for a in set.elements() {
                for &g in gens {
                    next.0 |= 1 << a.compose(g).bits();
                }
            }
            if next == set {
                return set;
            }
            set = next;
        }
    }

    pub fn contains(self, p: PointOp) -> bool {
        self.0 & (1 << p.bits()) != 0
    }

    pub fn order(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subgroup_of(self, other: PointSubgroup) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in the order `E, M, R, MR`.
    pub fn elements(self) -> impl Iterator<Item = PointOp> {
        PointOp::ALL.into_iter().filter(move |p| self.contains(*p))
    }

    pub fn non_identity(self) -> impl Iterator<Item = PointOp> {
        self.elements().filter(|p| !p.is_identity())
    }

    /// A minimal generating set; shifts of the remaining elements are forced.
    pub fn generators(self) -> Vec<PointOp> {
        let mut gens = Vec::new();
        let mut span = Self::trivial();
        for p in self.non_identity() {
            if !span.contains(p) {
                gens.push(p);
                span = Self::generated_by(&gens);
            }
        }
        gens
    }

    /// All subgroups of `self`, largest first.
    pub fn subgroups(self) -> Vec<PointSubgroup> {
        let mut out: Vec<PointSubgroup> = (0u8..16)
            .map(PointSubgroup)
            .filter(|s| s.contains(PointOp::E) && s.is_subgroup_of(self))
            .filter(|s| Self::generated_by(&s.non_identity().collect::<Vec<_>>()) == *s)
            .collect();
        out.sort_by(|a, b| b.order().cmp(&a.order()).then(a.0.cmp(&b.0)));
        out
    }

    pub fn tags(self) -> Vec<&'static str> {
        self.elements().map(PointOp::tag).collect()
    }
}

/// Canonical description of a finite-index subgroup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubgroupDescriptor {
    pub point_image: PointSubgroup,
    pub lattice: HnfLattice,
    /// `(q, t_q)` for each non-identity `q` of the point image, in `M, R, MR` order.
    pub shifts: Vec<(PointOp, IVec3)>,
}

impl SubgroupDescriptor {
    pub fn shift(&self, q: PointOp) -> Option<IVec3> {
        if q.is_identity() {
            return self.point_image.contains(q).then_some([0, 0, 0]);
        }
        self.shifts.iter().find(|(p, _)| *p == q).map(|(_, t)| *t)
    }

    /// `[G : H] = [P(G) : Q] · [ℤ³ : L]`.
    pub fn index(&self, group: AmbientGroup) -> u64 {
        let point_index = group.point_group().order() / self.point_image.order();
        point_index as u64 * self.lattice.index() as u64
    }

    /// Representative element of the coset over `q`.
    pub fn representative(&self, q: PointOp) -> Option<GroupElement> {
        self.shift(q).map(|t| GroupElement::new(q, t))
    }

    /// Membership of an arbitrary group element in the subgroup.
    pub fn contains(&self, e: &GroupElement) -> bool {
        match self.shift(e.point) {
            Some(t) => self.lattice.contains(sub(e.shift, t)),
            None => false,
        }
    }

    /// The same subgroup with every shift reduced into the lattice box.
    pub fn canonicalize(&self) -> SubgroupDescriptor {
        let mut shifts: Vec<(PointOp, IVec3)> = self
            .shifts
            .iter()
            .map(|&(q, t)| (q, self.lattice.reduce(t)))
            .collect();
        shifts.sort_by_key(|(q, _)| *q);
        SubgroupDescriptor {
            point_image: self.point_image,
            lattice: self.lattice,
            shifts,
        }
    }

    fn is_well_formed(&self, group: AmbientGroup) -> bool {
        let image = self.point_image;
        if !image.is_subgroup_of(group.point_group()) || !image.contains(PointOp::E) {
            return false;
        }
        let keys: Vec<PointOp> = self.shifts.iter().map(|(q, _)| *q).collect();
        let expected: Vec<PointOp> = image.non_identity().collect();
        keys == expected
            && self
                .shifts
                .iter()
                .all(|&(_, t)| self.lattice.reduce(t) == t)
    }
}

impl PartialOrd for SubgroupDescriptor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Point image size descending, then lattice, then shifts lexicographically.
impl Ord for SubgroupDescriptor {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .point_image
            .order()
            .cmp(&self.point_image.order())
            .then(self.point_image.0.cmp(&other.point_image.0))
            .then(self.lattice.cmp(&other.lattice))
            .then(self.shifts.cmp(&other.shifts))
    }
}

/// Checks the subgroup axioms at the level of generators: lattice stability,
/// squares of coset representatives, and products of distinct representatives
/// in both orders.
pub fn descriptor_valid(d: &SubgroupDescriptor, group: AmbientGroup) -> bool {
    if !d.is_well_formed(group) {
        return false;
    }
    let lattice = &d.lattice;
    let image = d.point_image;
    if !image.elements().all(|q| lattice.is_stable_under(q)) {
        return false;
    }
    for q1 in image.non_identity() {
        let e1 = d.representative(q1).expect("well formed");
        for q2 in image.non_identity() {
            let e2 = d.representative(q2).expect("well formed");
            if !d.contains(&e1.compose(&e2)) {
                return false;
            }
        }
    }
    true
}

/// Normality in the ambient group, checked by conjugating the generators of
/// the subgroup by the generators of the ambient group.
pub fn descriptor_is_normal(
    d: &SubgroupDescriptor,
    group: AmbientGroup,
) -> Result<bool, EnumerationError> {
    if !descriptor_valid(d, group) {
        return Err(EnumerationError::InvalidDescriptor(group));
    }
    Ok(is_normal_unchecked(d, group))
}

fn is_normal_unchecked(d: &SubgroupDescriptor, group: AmbientGroup) -> bool {
    let lattice = &d.lattice;
    let ambient = group.point_group();
    if !ambient.elements().all(|p| lattice.is_stable_under(p)) {
        return false;
    }
    const UNIT: [IVec3; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for &(q, t) in &d.shifts {
        if !UNIT
            .iter()
            .all(|&e| lattice.contains(sub(e, apply_point(q, e))))
        {
            return false;
        }
        if !ambient
            .non_identity()
            .all(|p| lattice.contains(sub(apply_point(p, t), t)))
        {
            return false;
        }
    }
    true
}

/// Bounded brute-force subgroup enumerator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    max_index: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_index: DEFAULT_ORACLE_MAX,
        }
    }
}

impl Oracle {
    pub fn with_limit(max_index: u64) -> Self {
        Oracle { max_index }
    }

    /// Reads the limit from `CRYSTALZETA_ORACLE_MAX`, falling back to the default.
    pub fn from_env() -> Result<Self, EnumerationError> {
        match std::env::var(ORACLE_MAX_ENV) {
            Ok(raw) => raw
                .trim()
                .parse::<u64>()
                .ok()
                .filter(|&v| v >= 1)
                .map(Oracle::with_limit)
                .ok_or(EnumerationError::BadLimit(raw)),
            Err(_) => Ok(Oracle::default()),
        }
    }

    pub fn limit(&self) -> u64 {
        self.max_index
    }

    fn check(&self, n: u64) -> Result<(), EnumerationError> {
        if n == 0 {
            return Err(EnumerationError::ZeroIndex);
        }
        if n > self.max_index {
            return Err(EnumerationError::BoundExceeded {
                n,
                limit: self.max_index,
            });
        }
        Ok(())
    }

    /// All subgroups (or normal subgroups) of index exactly `n`, canonically sorted.
    pub fn enumerate_subgroups(
        &self,
        group: AmbientGroup,
        n: u64,
        normal_only: bool,
    ) -> Result<Vec<SubgroupDescriptor>, EnumerationError> {
        self.check(n)?;
        let ambient = group.point_group();
        let mut out = Vec::new();
        for image in ambient.subgroups() {
            let point_index = (ambient.order() / image.order()) as u64;
            if n % point_index != 0 {
                continue;
            }
            let found: Vec<Vec<SubgroupDescriptor>> = lattices_of_index(n / point_index)
                .into_par_iter()
                .filter(|l| image.elements().all(|q| l.is_stable_under(q)))
                .map(|l| descriptors_over(group, image, l, normal_only))
                .collect();
            out.extend(found.into_iter().flatten());
        }
        out.sort();
        Ok(out)
    }

    pub fn oracle_count(
        &self,
        group: AmbientGroup,
        n: u64,
        normal_only: bool,
    ) -> Result<u64, EnumerationError> {
        Ok(self.enumerate_subgroups(group, n, normal_only)?.len() as u64)
    }
}

/// Valid descriptors with the given point image and lattice.
fn descriptors_over(
    group: AmbientGroup,
    image: PointSubgroup,
    lattice: HnfLattice,
    normal_only: bool,
) -> Vec<SubgroupDescriptor> {
    let gens = image.generators();
    // A generator's shift must already square into the lattice.
    let candidates: Vec<Vec<IVec3>> = gens
        .iter()
        .map(|&q| {
            lattice
                .coset_reps()
                .filter(|&t| lattice.contains(add(apply_point(q, t), t)))
                .collect()
        })
        .collect();

    let mut assignments: Vec<Vec<(PointOp, IVec3)>> = vec![Vec::new()];
    for (&q, cands) in gens.iter().zip(&candidates) {
        assignments = assignments
            .into_iter()
            .flat_map(|partial| {
                cands.iter().map(move |&t| {
                    let mut next = partial.clone();
                    next.push((q, t));
                    next
                })
            })
            .collect();
    }

    assignments
        .into_iter()
        .map(|chosen| complete_descriptor(image, lattice, &chosen))
        .filter(|d| descriptor_valid(d, group) && (!normal_only || is_normal_unchecked(d, group)))
        .collect()
}

/// Fills in the shifts of non-generator elements as products of generator
/// representatives, reduced modulo the lattice.
fn complete_descriptor(
    image: PointSubgroup,
    lattice: HnfLattice,
    generator_shifts: &[(PointOp, IVec3)],
) -> SubgroupDescriptor {
    let mut reps: Vec<GroupElement> = vec![GroupElement::IDENTITY];
    for &(q, t) in generator_shifts {
        let g = GroupElement::new(q, t);
        let extra: Vec<GroupElement> = reps.iter().map(|r| r.compose(&g)).collect();
        reps.extend(extra);
    }
    let mut shifts: Vec<(PointOp, IVec3)> = image
        .non_identity()
        .map(|q| {
            let rep = reps
                .iter()
                .find(|r| r.point == q)
                .expect("generators span the point image");
            (q, lattice.reduce(rep.shift))
        })
        .collect();
    shifts.sort_by_key(|(q, _)| *q);
    SubgroupDescriptor {
        point_image: image,
        lattice,
        shifts,
    }
}

pub fn enumerate_subgroups(
    group: AmbientGroup,
    n: u64,
    normal_only: bool,
) -> Result<Vec<SubgroupDescriptor>, EnumerationError> {
    Oracle::default().enumerate_subgroups(group, n, normal_only)
}

pub fn oracle_count(
    group: AmbientGroup,
    n: u64,
    normal_only: bool,
) -> Result<u64, EnumerationError> {
    Oracle::default().oracle_count(group, n, normal_only)
}
