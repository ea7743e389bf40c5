//! Online monitoring of bounded temporal logic over timed state sequences.
//!
//! A BTL property is translated into monadic difference logic, the formula is
//! quotiented against each timed state as it arrives, and after every step a
//! difference decision diagram decides whether the remaining obligation has
//! become a tautology (fulfilled) or unsatisfiable (failed).

pub mod cli;
pub mod ddd;
pub mod error;
pub mod formula;
pub mod monitor;
pub mod quotient;
pub mod rational;
pub mod refsolver;
pub mod translate;

pub use error::{Error, Result};
pub use formula::{parse_btl, Btl, Mdl, PredId, PropId, VarId};
pub use quotient::{RunPrefix, TimedState};
pub use rational::{Bound, Rational};
