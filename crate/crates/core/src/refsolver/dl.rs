//! Quantifier elimination for difference logic by DNF expansion and
//! Fourier-Motzkin elimination. Slow, simple and independent of the DDD code.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{Mdl, VarId};
use crate::rational::{Bound, Rational};

/// `x - y <= c` or `x - y < c`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Constraint {
    pub x: VarId,
    pub y: VarId,
    pub bound: Bound,
}

impl Constraint {
    pub fn new(x: VarId, y: VarId, bound: Bound) -> Self {
        Constraint { x, y, bound }
    }

    /// The complementary constraint.
    pub fn negate(&self) -> Self {
        Constraint { x: self.y, y: self.x, bound: self.bound.complement() }
    }

    pub fn holds(&self, x: Rational, y: Rational) -> bool {
        self.bound.admits(x - y)
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{} {}", self.x, self.y, self.bound)
    }
}

/// Path weight with strictness counted as infinitesimal: `(sum, #strict)`,
/// ordered by sum and then by more strict edges first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Weight(Rational, i64);

impl Weight {
    fn of(b: Bound) -> Self {
        Weight(b.value, b.strict as i64)
    }

    fn plus(self, o: Weight) -> Weight {
        Weight(self.0 + o.0, self.1 + o.1)
    }
}

impl Ord for Weight {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.cmp(&o.0).then(o.1.cmp(&self.1))
    }
}

impl PartialOrd for Weight {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Satisfiability of a conjunction over the reals (Bellman-Ford: the system
/// is infeasible iff the constraint graph has a cycle of negative weight or
/// of zero weight through a strict edge).
pub fn feasible(cs: &[Constraint]) -> bool {
    let mut dist: BTreeMap<VarId, Weight> = BTreeMap::new();
    for c in cs {
        dist.insert(c.x, Weight(Rational::ZERO, 0));
        dist.insert(c.y, Weight(Rational::ZERO, 0));
    }
    for _ in 0..=dist.len() {
        let mut changed = false;
        for c in cs {
            let via = dist[&c.y].plus(Weight::of(c.bound));
            if via < dist[&c.x] {
                dist.insert(c.x, via);
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
    false
}

/// Projects `v` out of a conjunction: constraints not mentioning `v`, plus
/// every combination of an upper and a lower bound on `v`. Combinations that
/// relate a variable to itself are kept only when they are contradictions.
pub fn fm_eliminate(v: VarId, cs: &[Constraint]) -> Vec<Constraint> {
    let mut out = BTreeSet::new();
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for c in cs {
        match (c.x == v, c.y == v) {
            (true, true) => {
                if c.bound.is_negative() {
                    out.insert(*c);
                }
            }
            (true, false) => upper.push(*c),
            (false, true) => lower.push(*c),
            (false, false) => {
                out.insert(*c);
            }
        }
    }
    for u in &upper {
        // v - y ⋈ a
        for l in &lower {
            // x - v ⋈ b  gives  x - y ⋈ a + b
            let c = Constraint::new(l.x, u.y, u.bound.add(&l.bound));
            if c.x != c.y || c.bound.is_negative() {
                out.insert(c);
            }
        }
    }
    out.into_iter().collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum DlVerdict {
    Valid,
    Unsatisfiable,
    Contingent,
}

/// Validity of a predicate-free formula, free variables read universally.
pub fn decide_dl(phi: &Mdl) -> Result<DlVerdict> {
    if let Some(p) = phi.preds().into_iter().next() {
        return Err(Error::UnexpectedPredicate(p.index()));
    }
    if dnf(phi, false).is_empty() {
        Ok(DlVerdict::Unsatisfiable)
    } else if dnf(phi, true).is_empty() {
        Ok(DlVerdict::Valid)
    } else {
        Ok(DlVerdict::Contingent)
    }
}

/// Disjunction of satisfiable conjunctions; empty means false.
type Dnf = BTreeSet<Vec<Constraint>>;

/// Keeps the tightest bound per ordered pair; `None` when infeasible.
fn tidy(conj: impl IntoIterator<Item = Constraint>) -> Option<Vec<Constraint>> {
    let mut best: BTreeMap<(VarId, VarId), Bound> = BTreeMap::new();
    for c in conj {
        best.entry((c.x, c.y)).and_modify(|b| *b = (*b).min(c.bound)).or_insert(c.bound);
    }
    let out: Vec<Constraint> = best.into_iter().map(|((x, y), b)| Constraint::new(x, y, b)).collect();
    feasible(&out).then_some(out)
}

fn truth(value: bool) -> Dnf {
    if value {
        BTreeSet::from([Vec::new()])
    } else {
        BTreeSet::new()
    }
}

fn and(a: &Dnf, b: &Dnf) -> Dnf {
    let mut out = Dnf::new();
    for p in a {
        for q in b {
            if let Some(c) = tidy(p.iter().chain(q).copied()) {
                out.insert(c);
            }
        }
    }
    out
}

fn negate(d: &Dnf) -> Dnf {
    let mut out = truth(true);
    for conj in d {
        let clause: Dnf = conj.iter().map(|c| vec![c.negate()]).collect();
        out = and(&out, &clause);
        if out.is_empty() {
            break;
        }
    }
    out
}

fn eliminate(v: VarId, d: Dnf) -> Dnf {
    d.into_iter().filter_map(|conj| tidy(fm_eliminate(v, &conj))).collect()
}

/// DNF of `phi`, or of its negation when `neg` holds.
fn dnf(phi: &Mdl, neg: bool) -> Dnf {
    match phi {
        Mdl::True => truth(!neg),
        Mdl::False => truth(neg),
        Mdl::Pred { .. } => unreachable!("checked by decide_dl"),
        Mdl::Diff(a) => {
            let (x, y, b) = a.as_constraint();
            let c = Constraint::new(x, y, b);
            let c = if neg { c.negate() } else { c };
            tidy([c]).into_iter().collect()
        }
        Mdl::Not(a) => dnf(a, !neg),
        Mdl::And(a, b) | Mdl::Or(a, b) => {
            let conjunctive = matches!(phi, Mdl::And(..)) != neg;
            let (l, r) = (dnf(a, neg), dnf(b, neg));
            if conjunctive {
                and(&l, &r)
            } else {
                l.union(&r).cloned().collect()
            }
        }
        Mdl::Exists(v, a) | Mdl::Forall(v, a) => {
            // exists v. a  and  not forall v. a = exists v. not a
            let existential = matches!(phi, Mdl::Exists(..));
            if existential != neg {
                eliminate(*v, dnf(a, neg))
            } else {
                negate(&eliminate(*v, dnf(a, !neg)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> VarId {
        VarId(i)
    }

    #[test]
    fn strict_zero_cycles_are_infeasible() {
        let a = Constraint::new(x(1), x(2), Bound::le(0));
        let b = Constraint::new(x(2), x(1), Bound::le(0));
        assert!(feasible(&[a, b]));
        let bs = Constraint::new(x(2), x(1), Bound::lt(0));
        assert!(!feasible(&[a, bs]));
        assert!(!feasible(&[Constraint::new(x(1), x(2), Bound::le(-1)), Constraint::new(x(2), x(1), Bound::le(0))]));
    }

    #[test]
    fn elimination_keeps_contradictions() {
        // z - x1 < 0 and x1 - z <= 0 leaves z - z < 0
        let cs = [Constraint::new(VarId::Z, x(1), Bound::lt(0)), Constraint::new(x(1), VarId::Z, Bound::le(0))];
        let out = fm_eliminate(x(1), &cs);
        assert_eq!(out, vec![Constraint::new(VarId::Z, VarId::Z, Bound::lt(0))]);
        assert!(!feasible(&out));
        let ok = fm_eliminate(x(1), &[Constraint::new(VarId::Z, x(1), Bound::le(0))]);
        assert!(ok.is_empty());
    }

    #[test]
    fn verdicts() {
        let z = VarId::Z;
        // exists x1. 0 <= x1 - z <= 8
        let sat = Mdl::exists(x(1), Mdl::and(Mdl::le(z, x(1), 0), Mdl::le(x(1), z, 8)));
        assert_eq!(decide_dl(&sat).unwrap(), DlVerdict::Valid);
        let never = Mdl::exists(x(1), Mdl::and(Mdl::lt(z, x(1), 0), Mdl::le(x(1), z, 0)));
        assert_eq!(decide_dl(&never).unwrap(), DlVerdict::Unsatisfiable);
        // forall x1. x1 - z <= 3  fails
        assert_eq!(decide_dl(&Mdl::forall(x(1), Mdl::le(x(1), z, 3))).unwrap(), DlVerdict::Unsatisfiable);
        // x1 - z <= 3 with x1 free
        assert_eq!(decide_dl(&Mdl::le(x(1), z, 3)).unwrap(), DlVerdict::Contingent);
        // forall x1. exists x2. x1 < x2
        let dense = Mdl::forall(x(1), Mdl::exists(x(2), Mdl::lt(x(1), x(2), 0)));
        assert_eq!(decide_dl(&dense).unwrap(), DlVerdict::Valid);
        // exists x1 between z and z with strict gap: false
        let squeeze = Mdl::exists(x(1), Mdl::and(Mdl::lt(z, x(1), 0), Mdl::lt(x(1), z, Rational::new(1, 1000))));
        assert_eq!(decide_dl(&squeeze).unwrap(), DlVerdict::Valid);
        assert!(decide_dl(&Mdl::pred(crate::formula::PredId::new(1), z)).is_err());
    }
}
