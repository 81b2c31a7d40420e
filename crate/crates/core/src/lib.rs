//! Exact computation of Kazhdan–Lusztig cells, asymptotic rings and
//! group-theoretical fusion-category counts.
//!
//! The crate is organized bottom-up:
//!
//! * [`coxeter`]: Coxeter groups with ShortLex normal forms.
//! * [`hecke`]: Hecke algebras over `Z[v, v^-1]`, Kazhdan–Lusztig bases and the
//!   extended algebra `H ⊗ Z[Ω]`.
//! * [`cells`]: left/right/two-sided cells, the a-function, J-rings and cell
//!   modules.
//! * [`group`]: permutation groups, character tables, second cohomology and
//!   central extensions.
//! * [`fusion`]: based rings of equivariant sheaves, module-category tables and
//!   Drinfeld-double modular data.
//! * [`io`] and [`cli`]: serialization, the KL cache and the command-line tool.

pub mod based_ring;
pub mod cells;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod fusion;
pub mod group;
pub mod hecke;
pub mod io;

pub use based_ring::BasedRing;
pub use error::{Error, Result};
