//! Reference oracles: brute-force semantics used to cross-check the
//! symbolic machinery. None of this code shares logic with the DDD package.

mod btl_eval;
mod dl;
mod eval;
mod interval;

pub use btl_eval::{eval_btl, monadic_sets, monadic_sets_upto, prop_extension, truth_sets, ThreeValued};
pub use dl::{decide_dl, feasible, fm_eliminate, Constraint, DlVerdict};
pub use eval::{eval_mdl, eval_mdl_with_density, Valuation};
pub use interval::{Interval, IntervalUnion, Window};
