//! Belief-function combination over power sets and hyper-power sets.
//!
//! Propositions are encoded as up-closed families of Venn-diagram minterms,
//! so `∩`/`∪` are bitwise AND/OR and structural equality is lattice
//! equality. On top of that sit basic belief assignments, the conjunctive
//! rule with a catalog of conflict-transfer operators, and [`FusionState`],
//! which keeps the pre-transfer conjunctive result so that every rule built
//! as "conjunctive rule, then transfer" becomes order-invariant and can be
//! updated one source at a time.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

mod engine;
mod error;
mod expr;
mod frame;
mod mass;
mod proposition;
mod rules;
#[cfg(feature = "sampling")]
pub mod sampling;

pub use engine::{batch, oracle_conjunctive, FusionState};
pub use error::{Error, ParseError};
pub use expr::{format_prop, parse_prop};
pub use frame::{Frame, Model, ModelKind, MAX_ATOMS, MIN_ATOMS};
pub use mass::{ColumnSums, MassFunction, MASS_TOLERANCE};
pub use proposition::{AtomSet, Proposition};
pub use rules::{
    combine2, conflict_of, conjunctive, sdli2, transfer_dempster, transfer_sdli, transfer_smets,
    transfer_union, transfer_yager, ConjunctiveResult, Focal, RuleId,
};

pub type Result<T, E = Error> = core::result::Result<T, E>;
