//! Exact integer linear algebra: matrices and Smith normal form, finitely
//! generated abelian groups and their homomorphisms, poset colimits, finite
//! groups and integral group rings.

pub mod colimit;
pub mod finite_group;
pub mod group;
pub mod group_ring;
pub mod lattice;
pub mod matrix;
pub mod scalar;
pub mod snf;

pub use colimit::{colimit_abelian, colimit_set, AbelianColimit, HasseEdge, PosetDiagram, SetColimit, SetMap, UnionFind};
pub use finite_group::FiniteGroup;
pub use group::{DirectSum, FGAbelianGroup, GroupHom};
pub use group_ring::{GroupRingElement, UnitVerdict};
pub use lattice::{solve_congruence, KernelLattice, Subquotient};
pub use matrix::Matrix;
pub use scalar::IntScalar;
pub use snf::{smith_normal_form, SmithNormalForm};
