//! Occam sets, radii and fusion sequences for posets of functions on finite
//! sets, with the `Occ(m, n, r)` bounds and the finite-group invariants built
//! on them.

pub mod family_file;
pub mod fusion;
pub mod group_radius;
pub mod groups;
pub mod occ;
pub mod poset;
pub mod published;
pub mod subset;

pub use poset::{restriction_agrees, Budget, FiniteFunction, FunctionFamily, OrderKind, Outcome, PosetError, Radius, Relation, Term, TermStatus};
pub use subset::SubsetMask;
pub use groups::{make_group, FiniteGroup, GroupError, SubgroupMask};
pub use family_file::{FamilyFile, FamilyFileError};
pub use occ::{exact_occ, theorem_upper_bound, BoundWitness, OccCertificate, OccError, OccInstance};
pub use fusion::{fusion_sequence_group, group_fusion_set, FusionReport};
pub use group_radius::{occ_of_group, radius_report, subgroup_radius, RadiusReport};
