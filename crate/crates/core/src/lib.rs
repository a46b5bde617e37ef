//! Exact subgroup counting for the monoclinic space group P2/m and its
//! subgroups P1, P-1, P2 and Pm.
//!
//! Three independent routes produce the number of (normal) subgroups of each
//! finite index:
//!
//! * [`dirichlet::series`] multiplies out the zeta functions as truncated
//!   Dirichlet series,
//! * [`counting`] evaluates the closed divisor-sum formulas for P2/m,
//! * [`enumeration`] enumerates subgroups directly from their lattice and
//!   coset data.
//!
//! [`asymptotics`] checks the growth of the partial sums against their
//! leading constants and [`verify`] bundles everything into a report.

pub mod arith;
pub mod asymptotics;
pub mod cli;
pub mod counting;
pub mod dirichlet;
pub mod enumeration;
pub mod group;
pub mod lattice;
pub mod verify;

pub use counting::{a_closed, c_closed};
pub use dirichlet::{series, CoeffTable, DirichletPoly};
pub use enumeration::{AmbientGroup, Oracle, SubgroupDescriptor};
pub use group::{GroupElement, IVec3, PointOp};
pub use lattice::HnfLattice;
