//! Finite permutation groups: conjugacy classes, subgroup classes, exact
//! character tables, `H^2(H, C^*)`, central extensions and projective
//! representation counts.

mod character;
mod cohomology;
mod cyclotomic;
mod extension;
mod finite;
mod local;
mod modp;
mod perm;
mod projective;
mod subgroups;

pub use character::{character_table, CharacterTable, DEFAULT_CHARACTER_GUARD};
pub use cohomology::{h2_classes, H2Classes, TwoCocycle, GENERAL_MODULUS_GUARD, PRIME_MODULUS_GUARD};
pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use extension::{central_extension_from_cocycle, irrep_count_with_central_character, CentralExtension};
pub use finite::{FiniteGroup, DEFAULT_GROUP_GUARD};
pub use perm::Perm;
pub use projective::{projective_irrep_count, projective_irrep_count_checked, regular_classes};
pub use subgroups::{
    canonical_conjugate, find_class, subgroup_classes, subgroup_classes_with_guard, SubgroupClass,
    DEFAULT_SUBGROUP_GUARD,
};

#[cfg(test)]
mod tests;
