//! Stochastic and realizable monotonicity for systems of probability
//! measures on finite posets.
//!
//! A system assigns a rational measure on a state poset `S` to every element
//! of an index poset `A`. The crate decides stochastic monotonicity by
//! max-flow, decides realizable monotonicity with an exact rational LP, and
//! for acyclic state posets turns a monotone coupling into synchronizing
//! cell permutations of `[0,1)` that make the inverse probability
//! transforms pointwise ordered. The same construction with `A = S` gives a
//! monotone grand coupling for coupling-from-the-past sampling.
//!
//! ```
//! use realmono::coupling::{realize, MeasureSystem, Realization, DEFAULT_TUPLE_CAP};
//! use realmono::measure::RationalMeasure;
//! use realmono::poset::Poset;
//!
//! let chain = Poset::chain(2, "s").unwrap();
//! let lo = RationalMeasure::from_ratios(&[(2, 3), (1, 3)]).unwrap();
//! let hi = RationalMeasure::from_ratios(&[(1, 3), (2, 3)]).unwrap();
//! let sys = MeasureSystem::new(Poset::chain(2, "a").unwrap(), chain, vec![lo, hi]).unwrap();
//! assert!(matches!(realize(&sys, DEFAULT_TUPLE_CAP).unwrap(), Realization::Feasible(_)));
//! ```

pub mod cftp;
pub mod cli;
pub mod coupling;
pub mod error;
pub mod format;
mod flow;
pub mod gen;
pub mod measure;
pub mod poset;
pub mod rational;
mod simplex;
pub mod svg;
pub mod synchronize;

pub use error::{Error, Result};
