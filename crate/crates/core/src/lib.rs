//! Exact-arithmetic engine for the topological trace formula of Hecke
//! correspondences on weighted cohomology.
//!
//! The crate is organised bottom-up:
//!
//! * [`rootdata`]: split root systems, weights, standard parabolics.
//! * [`weyl`]: Weyl groups, Kostant representatives, the dot action.
//! * [`nilcoh`]: Kostant's decomposition of `H^*(n_P, E)`, quadrants and
//!   stalks with supports.
//! * [`characters`]: cyclotomic values, torus elements, Freudenthal
//!   multiplicities and character values.
//! * [`lefschetz`]: fixed-point datasets and assembly of the Lefschetz number.
//! * [`oracle`]: independent brute-force verifiers (Lie algebra cohomology,
//!   binary quadratic forms, integral conjugacy classes).
//! * [`sampling`]: seeded generators used by the randomized checks.

pub mod characters;
pub mod error;
pub mod lefschetz;
pub mod nilcoh;
pub mod oracle;
pub mod rational;
pub mod rootdata;
pub mod sampling;
pub mod subset;
pub mod weyl;

pub use characters::{CycValue, PhaseCoord, ToralElement};
pub use error::{Error, Result};
pub use lefschetz::{FixedPointDataset, Formula};
pub use nilcoh::{KostantModule, WeightProfile};
pub use rational::Q;
pub use rootdata::{Basis, CartanType, ParabolicType, RootDatum, Weight};
pub use subset::Subset;
pub use weyl::{WeylElement, WeylGroup};
