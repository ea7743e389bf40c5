//! Direct three-valued semantics of BTL over a finite run prefix.
//!
//! Every subformula is evaluated to a pair of time sets: where it is
//! definitely true and where it is definitely false, given that nothing is
//! known about the run after the horizon.

use std::fmt;

use super::interval::{IntervalUnion, Window};
use crate::error::{Error, Result};
use crate::formula::{Btl, PropId};
use crate::quotient::RunPrefix;
use crate::rational::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ThreeValued {
    True,
    False,
    Unknown,
}

impl fmt::Display for ThreeValued {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreeValued::True => "true",
            ThreeValued::False => "false",
            ThreeValued::Unknown => "unknown",
        })
    }
}

/// Time points where `p` holds, from the first state up to `horizon`
/// (inclusive); each state lasts until the next timestamp.
pub fn prop_extension(prefix: &RunPrefix, horizon: Rational, p: PropId) -> IntervalUnion {
    let states = prefix.states();
    let mut out = IntervalUnion::empty();
    for (i, s) in states.iter().enumerate() {
        if !s.holds(p) || s.time > horizon {
            continue;
        }
        let segment = match states.get(i + 1) {
            Some(next) if next.time <= horizon => IntervalUnion::closed_open(s.time, next.time),
            _ => IntervalUnion::closed(s.time, horizon),
        };
        out = out.union(&segment);
    }
    out
}

/// Extensions of `P_1 .. P_k` for the largest proposition `p_k` seen in the
/// prefix, indexed from 0.
pub fn monadic_sets(prefix: &RunPrefix, horizon: Rational) -> Result<Vec<IntervalUnion>> {
    let k = prefix.states().iter().flat_map(|s| s.state.iter()).map(|p| p.index()).max().unwrap_or(0);
    monadic_sets_upto(prefix, horizon, k)
}

/// As [`monadic_sets`] with exactly `k` entries.
pub fn monadic_sets_upto(prefix: &RunPrefix, horizon: Rational, k: u32) -> Result<Vec<IntervalUnion>> {
    let last = prefix.last().time;
    if horizon < last {
        return Err(Error::HorizonTooEarly { horizon, last });
    }
    Ok((1..=k).map(|j| prop_extension(prefix, horizon, PropId::new(j))).collect())
}

/// Truth value of `psi` at time `u` given the prefix observed up to `horizon`.
pub fn eval_btl(prefix: &RunPrefix, horizon: Rational, u: Rational, psi: &Btl) -> Result<ThreeValued> {
    let last = prefix.last().time;
    if horizon < last {
        return Err(Error::HorizonTooEarly { horizon, last });
    }
    let (t, f) = truth_sets(prefix, horizon, psi);
    Ok(if t.contains(u) {
        ThreeValued::True
    } else if f.contains(u) {
        ThreeValued::False
    } else {
        ThreeValued::Unknown
    })
}

/// `(definitely true, definitely false)` time sets of `psi`.
pub fn truth_sets(prefix: &RunPrefix, horizon: Rational, psi: &Btl) -> (IntervalUnion, IntervalUnion) {
    let known = IntervalUnion::closed(Rational::ZERO, horizon);
    let rec = |a: &Btl| truth_sets(prefix, horizon, a);
    match psi {
        Btl::Prop(p) => {
            let s = prop_extension(prefix, horizon, *p);
            (s.clone(), known.difference(&s))
        }
        Btl::Not(a) => {
            let (t, f) = rec(a);
            (f, t)
        }
        Btl::And(a, b) => {
            let ((t1, f1), (t2, f2)) = (rec(a), rec(b));
            (t1.intersect(&t2), f1.union(&f2))
        }
        Btl::Or(a, b) => {
            let ((t1, f1), (t2, f2)) = (rec(a), rec(b));
            (t1.union(&t2), f1.intersect(&f2))
        }
        Btl::Implies(a, b) => {
            let ((t1, f1), (t2, f2)) = (rec(a), rec(b));
            (f1.union(&t2), t1.intersect(&f2))
        }
        Btl::Iff(a, b) => {
            let ((t1, f1), (t2, f2)) = (rec(a), rec(b));
            let t = t1.intersect(&t2).union(&f1.intersect(&f2));
            let f = t1.intersect(&f2).union(&f1.intersect(&t2));
            (t, f)
        }
        Btl::Always(c, a) => forall(rec(a), Window::closed(Rational::ZERO, *c)),
        Btl::Eventually(c, a) => exists(rec(a), Window::closed(Rational::ZERO, *c)),
        Btl::AlwaysUnbounded(a) => forall(rec(a), Window::from(Rational::ZERO)),
        Btl::After(c, a) => exists(rec(a), Window::from(*c)),
        Btl::Between(c, d, a) => exists(rec(a), Window::closed(*c, *d)),
        Btl::UntilExact(c, a, b) => {
            let ((t1, f1), (t2, f2)) = (rec(a), rec(b));
            let w = Window::closed_open(Rational::ZERO, *c);
            let t = t1.forall_window(w).intersect(&t2.shift_back(*c));
            let f = f1.exists_window(w).union(&f2.shift_back(*c));
            (t, f)
        }
        Btl::Until(a, b) => {
            let ((t1, f1), (t2, f2)) = (rec(a), rec(b));
            let t = until_true(&t1, &t2);
            let f = until_true(&f1.complement(), &f2.complement()).complement();
            (t, f)
        }
    }
}

fn forall((t, f): (IntervalUnion, IntervalUnion), w: Window) -> (IntervalUnion, IntervalUnion) {
    (t.forall_window(w), f.exists_window(w))
}

fn exists((t, f): (IntervalUnion, IntervalUnion), w: Window) -> (IntervalUnion, IntervalUnion) {
    (t.exists_window(w), f.forall_window(w))
}

/// `{x : exists y >= x. y in b and [x, y) within a}`.
fn until_true(a: &IntervalUnion, b: &IntervalUnion) -> IntervalUnion {
    let mut out = b.clone();
    for j in a.intervals() {
        let part = IntervalUnion::from_intervals([*j]);
        // witnesses y > x that a reaches without a gap: (lo, hi]
        let reach = match j.hi {
            Some(h) => IntervalUnion::open(j.lo, h).union(&IntervalUnion::point(h)),
            None => IntervalUnion::all().difference(&IntervalUnion::closed(Rational::ZERO, j.lo)),
        };
        let ys = b.intersect(&reach);
        let Some(top) = ys.intervals().last() else { continue };
        out = match top.hi {
            None => out.union(&part),
            Some(s) => out.union(&part.intersect(&IntervalUnion::closed_open(Rational::ZERO, s))),
        };
    }
    out
}
