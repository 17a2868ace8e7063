//! Finite and finitely presented order theory for quasi-continuous
//! domains: posets and their Scott opens, the Smyth powerdomain monad,
//! quasi-retractions, quasi-deflations, lazy countable posets, probability
//! valuations and their tree coordinates.

pub mod deflation;
pub mod enumerate;
pub mod error;
mod flow;
pub mod lazy;
pub mod map;
pub mod poset;
pub mod rational;
pub mod smyth;
pub mod text;
pub mod treeval;
pub mod valuation;

pub use error::{Error, Result};
pub use map::MonotoneMap;
pub use poset::{FinCompact, Poset, UpperSet};
pub use rational::Rational;
pub use smyth::FinMap;
pub use valuation::{Mesh, Valuation};
