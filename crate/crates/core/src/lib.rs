//! Exact desk-scale verification of the computable core of the Langlands–Rapoport
//! constructions: Tate cohomology of finite-group modules, Weil-number
//! cocharacter modules, gerbe cocycle identities, GL(2) buildings with twisted
//! Frobenius, and torus Shimura point counts.

pub mod building;
pub mod gerbe;
pub mod gmodule;
pub mod groups;
pub mod linalg;
pub mod shimura;
pub mod tate;
pub mod weil;

pub use gmodule::{GModule, GModuleMap, ShortExactSequence};
pub use groups::{CosetReps, FiniteGroup, Subgroup};
pub use linalg::{Int, Matrix};
pub use tate::{CochainTable, CohomologyGroup};
