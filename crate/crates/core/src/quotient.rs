//! Quotienting a monadic difference formula by observed timed states.
//!
//! The quotient by a pair `(s,t)(s',t')` replaces each predicate occurrence
//! `P_j(x)` by a case expression that spells out what the pair says about
//! `p_j` on `[t, t']`, keeping `P_j(x)` only for points strictly after `t'`:
//!
//! | `p_j in s` | `p_j in s'` | replacement                               |
//! |------------|-------------|-------------------------------------------|
//! | no         | no          | `t' < x-z & P_j(x)`                       |
//! | no         | yes         | `x-z = t' | (t' < x-z & P_j(x))`          |
//! | yes        | no          | `t <= x-z < t' | (t' < x-z & P_j(x))`     |
//! | yes        | yes         | `t <= x-z <= t' | (t' < x-z & P_j(x))`    |
//!
//! Negated occurrences get the positive form of the negated case expression.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Mdl, PredId, PropId, VarId};
use crate::rational::Rational;
use crate::refsolver::IntervalUnion;

/// A state (set of propositions that hold) together with its timestamp.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TimedState {
    pub state: BTreeSet<PropId>,
    pub time: Rational,
}

impl TimedState {
    pub fn new(props: impl IntoIterator<Item = u32>, time: impl Into<Rational>) -> Self {
        TimedState { state: props.into_iter().map(PropId::new).collect(), time: time.into() }
    }

    pub fn holds(&self, p: PropId) -> bool {
        self.state.contains(&p)
    }
}

impl fmt::Display for TimedState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let props: Vec<String> = self.state.iter().map(|p| p.to_string()).collect();
        write!(f, "({{{}}}, {})", props.join(","), self.time)
    }
}

/// Finite prefix of a timed run: starts at time 0, strictly increasing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RunPrefix(Vec<TimedState>);

impl RunPrefix {
    pub fn new(states: Vec<TimedState>) -> Result<Self> {
        let Some(first) = states.first() else {
            return Err(Error::PrefixTooShort { needed: 1, got: 0 });
        };
        if !first.time.is_zero() {
            return Err(Error::RunStartsLate(first.time));
        }
        for w in states.windows(2) {
            if w[1].time <= w[0].time {
                return Err(Error::NonIncreasingTime { prev: w[0].time, next: w[1].time });
            }
        }
        Ok(RunPrefix(states))
    }

    pub fn states(&self) -> &[TimedState] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> &TimedState {
        self.0.last().expect("prefix is never empty")
    }

    /// Timed state in force at time `u` (the last one with `time <= u`).
    pub fn at(&self, u: Rational) -> &TimedState {
        let idx = self.0.partition_point(|s| s.time <= u);
        &self.0[idx.saturating_sub(1)]
    }

    /// The first `n` states.
    pub fn truncate(&self, n: usize) -> RunPrefix {
        RunPrefix(self.0[..n].to_vec())
    }
}

/// `t < x - z`, as a refuted non-strict atom.
fn after(x: VarId, t: Rational) -> Mdl {
    Mdl::not(Mdl::le(x, VarId::Z, t))
}

/// `t <= x - z`
fn at_or_after(x: VarId, t: Rational) -> Mdl {
    Mdl::le(VarId::Z, x, -t)
}

fn case_expression(pred: PredId, x: VarId, prev: &TimedState, next: &TimedState) -> Mdl {
    let (t, t2) = (prev.time, next.time);
    let tail = Mdl::and(after(x, t2), Mdl::pred(pred, x));
    let p = pred.prop();
    let head = match (prev.holds(p), next.holds(p)) {
        (false, false) => return tail,
        (false, true) => Mdl::eq(x, VarId::Z, t2),
        (true, false) => Mdl::and(at_or_after(x, t), Mdl::lt(x, VarId::Z, t2)),
        (true, true) => Mdl::and(at_or_after(x, t), Mdl::le(x, VarId::Z, t2)),
    };
    Mdl::or(head, tail)
}

/// Replaces each literal predicate by its case expression (negated for
/// refuted occurrences), both already in positive form.
fn substitute(phi: &Mdl, case: impl Fn(PredId, VarId) -> Mdl) -> Mdl {
    phi.map_preds(&mut |pred, var, negated| {
        let e = case(pred, var);
        if negated {
            Mdl::not(e).positive_form()
        } else {
            e.positive_form()
        }
    })
}

/// Quotient of a positive-form formula by two consecutive timed states.
pub fn quotient_step(phi: &Mdl, prev: &TimedState, next: &TimedState) -> Result<Mdl> {
    if next.time <= prev.time {
        return Err(Error::NonIncreasingTime { prev: prev.time, next: next.time });
    }
    Ok(substitute(phi, |pred, x| case_expression(pred, x, prev, next)))
}

/// Repeated quotient over all consecutive pairs of `prefix`.
pub fn quotient_prefix(phi: &Mdl, prefix: &RunPrefix) -> Result<Mdl> {
    if prefix.len() < 2 {
        return Err(Error::PrefixTooShort { needed: 2, got: prefix.len() });
    }
    let mut out = phi.clone();
    for w in prefix.states().windows(2) {
        out = quotient_step(&out, &w[0], &w[1])?;
    }
    Ok(out)
}

/// Folds the initial state into the formula at the single point 0:
/// `P_j(x)` becomes `(x-z = 0 & [p_j in s0]) | (0 < x-z & P_j(x))`.
pub fn quotient_initial(phi: &Mdl, s0: &BTreeSet<PropId>) -> Mdl {
    substitute(phi, |pred, x| {
        let now = Mdl::and(Mdl::eq(x, VarId::Z, 0), Mdl::constant(s0.contains(&pred.prop())));
        Mdl::or(now, Mdl::and(after(x, Rational::ZERO), Mdl::pred(pred, x)))
    })
}

/// Quotient by `(s,t)(s,t')` with the end point left symbolic: `t'` is
/// represented by the free variable `end` as `t' = end - z`.
pub fn quotient_symbolic(phi: &Mdl, state: &BTreeSet<PropId>, t: Rational, end: VarId) -> Mdl {
    substitute(phi, |pred, x| {
        let tail = Mdl::and(Mdl::lt(end, x, 0), Mdl::pred(pred, x));
        if state.contains(&pred.prop()) {
            Mdl::or(Mdl::and(at_or_after(x, t), Mdl::le(x, end, 0)), tail)
        } else {
            tail
        }
    })
}

/// Does the pair agree with `set` as the extension of `p_j`?
pub fn consistent_with(prev: &TimedState, next: &TimedState, set: &IntervalUnion, j: PredId) -> bool {
    let p = j.prop();
    if set.contains(next.time) != next.holds(p) {
        return false;
    }
    let span = IntervalUnion::closed_open(prev.time, next.time);
    if prev.holds(p) {
        span.is_subset(set)
    } else {
        span.intersect(set).is_empty()
    }
}
