//! Elements of P2/m: a Klein four-group of diagonal point operations acting on
//! integer translations of ℤ³.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

/// Integer translation vector, the exponents of the translation generators `x, y, z`.
pub type IVec3 = [i64; 3];

/// A point operation of P2/m. Each acts diagonally on ℤ³ by sign flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PointOp {
    E,
    M,
    R,
    MR,
}

impl PointOp {
    pub const ALL: [PointOp; 4] = [PointOp::E, PointOp::M, PointOp::R, PointOp::MR];

    /// Diagonal sign vector of the action on translations.
    pub const fn action(self) -> [i64; 3] {
        match self {
            PointOp::E => [1, 1, 1],
            PointOp::M => [1, -1, 1],
            PointOp::R => [-1, 1, -1],
            PointOp::MR => [-1, -1, -1],
        }
    }

    pub const fn bits(self) -> u8 {
        match self {
            PointOp::E => 0,
            PointOp::M => 1,
            PointOp::R => 2,
            PointOp::MR => 3,
        }
    }

    pub const fn from_bits(bits: u8) -> PointOp {
        match bits & 3 {
            0 => PointOp::E,
            1 => PointOp::M,
            2 => PointOp::R,
            _ => PointOp::MR,
        }
    }

    /// Product in the Klein four-group.
    pub const fn compose(self, other: PointOp) -> PointOp {
        PointOp::from_bits(self.bits() ^ other.bits())
    }

    pub const fn is_identity(self) -> bool {
        matches!(self, PointOp::E)
    }

    pub fn tag(self) -> &'static str {
        match self {
            PointOp::E => "E",
            PointOp::M => "M",
            PointOp::R => "R",
            PointOp::MR => "MR",
        }
    }
}

impl fmt::Display for PointOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Applies the sign action of `p` to `v`.
pub fn apply_point(p: PointOp, v: IVec3) -> IVec3 {
    let s = p.action();
    [s[0] * v[0], s[1] * v[1], s[2] * v[2]]
}

pub(crate) fn add(a: IVec3, b: IVec3) -> IVec3 {
    [
        a[0].checked_add(b[0]).expect("translation overflow"),
        a[1].checked_add(b[1]).expect("translation overflow"),
        a[2].checked_add(b[2]).expect("translation overflow"),
    ]
}

pub(crate) fn sub(a: IVec3, b: IVec3) -> IVec3 {
    [
        a[0].checked_sub(b[0]).expect("translation overflow"),
        a[1].checked_sub(b[1]).expect("translation overflow"),
        a[2].checked_sub(b[2]).expect("translation overflow"),
    ]
}

pub(crate) fn neg(a: IVec3) -> IVec3 {
    sub([0, 0, 0], a)
}

/// An element `p · x^a y^b z^c`, stored as the point part and the translation exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub point: PointOp,
    pub shift: IVec3,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        point: PointOp::E,
        shift: [0, 0, 0],
    };

    pub const fn new(point: PointOp, shift: IVec3) -> Self {
        GroupElement { point, shift }
    }

    pub const fn translation(shift: IVec3) -> Self {
        GroupElement {
            point: PointOp::E,
            shift,
        }
    }

    pub const fn point(point: PointOp) -> Self {
        GroupElement {
            point,
            shift: [0, 0, 0],
        }
    }

    /// `(p₁,t₁)·(p₂,t₂) = (p₁p₂, p₂(t₁) + t₂)`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            point: self.point.compose(other.point),
            shift: add(apply_point(other.point, self.shift), other.shift),
        }
    }

    pub fn invert(&self) -> GroupElement {
        GroupElement {
            point: self.point,
            shift: neg(apply_point(self.point, self.shift)),
        }
    }

    /// `g⁻¹ · self · g`.
    pub fn conjugate_by(&self, g: &GroupElement) -> GroupElement {
        g.invert().compose(self).compose(g)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;

    fn mul(self, rhs: GroupElement) -> GroupElement {
        self.compose(&rhs)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.shift;
        write!(f, "({}, [{a}, {b}, {c}])", self.point)
    }
}
