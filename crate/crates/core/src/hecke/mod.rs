//! Hecke algebra arithmetic over `Z[v,v^-1]` in the balanced normalization:
//! `H_s^2 = 1 + (v^-1 - v) H_s`, `b_s = H_s + v`.

mod element;
mod extended;
mod kl;
mod laurent;
mod sparse;
mod structure;

pub use element::{kl_element, structure_constants, Basis, HeckeElement};
pub use extended::{extended_multiply, ExtendedHeckeDatum, ExtendedHeckeElement};
pub use kl::{classical_from_balanced, KlColumn, KlIndexed, KlTable};
pub use laurent::LaurentPoly;
pub use structure::StructureTable;

#[cfg(test)]
mod tests;
