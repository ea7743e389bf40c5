//! Brute-force evaluation of MDL formulas over explicit predicate sets.
//!
//! Quantifiers range over the reals. Between two consecutive "breakpoints"
//! the truth of a quantifier body cannot change, so it is enough to try each
//! breakpoint, one or more points strictly between neighbours, and one point
//! beyond either end. Breakpoints are the values a bound variable takes when
//! some chain of difference atoms pins it to an outer variable or to an
//! endpoint of a predicate set.

use std::collections::{BTreeMap, BTreeSet};

use super::IntervalUnion;
use crate::error::{Error, Result};
use crate::formula::{DiffAtom, Mdl, VarId};
use crate::rational::Rational;

/// Partial assignment of rationals to variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Valuation(Vec<Option<Rational>>);

impl Valuation {
    pub fn new() -> Self {
        Valuation(Vec::new())
    }

    /// Only `z`, set to 0.
    pub fn zero() -> Self {
        Valuation::new().with(VarId::Z, Rational::ZERO)
    }

    pub fn with(mut self, v: VarId, value: impl Into<Rational>) -> Self {
        self.set(v, Some(value.into()));
        self
    }

    /// Sets `v` and returns its previous value.
    pub fn set(&mut self, v: VarId, value: Option<Rational>) -> Option<Rational> {
        let i = v.index();
        if i >= self.0.len() {
            self.0.resize(i + 1, None);
        }
        std::mem::replace(&mut self.0[i], value)
    }

    pub fn get(&self, v: VarId) -> Option<Rational> {
        self.0.get(v.index()).copied().flatten()
    }
}

#[derive(Clone, Copy, Debug)]
enum Anchor {
    Var(VarId),
    Set(usize),
}

enum Node {
    Const(bool),
    Pred { set: usize, var: VarId, negated: bool },
    Diff(DiffAtom),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Not(Box<Node>),
    Quant { forall: bool, var: VarId, body: Box<Node>, anchors: Vec<(Anchor, Rational)> },
}

/// `phi` under `val`, with `sets[j-1]` the extension of `P_j`.
pub fn eval_mdl(phi: &Mdl, val: &Valuation, sets: &[IntervalUnion]) -> Result<bool> {
    eval_mdl_with_density(phi, val, sets, 1)
}

/// As [`eval_mdl`], trying `density` evenly spaced points inside every gap
/// between breakpoints.
pub fn eval_mdl_with_density(phi: &Mdl, val: &Valuation, sets: &[IntervalUnion], density: u32) -> Result<bool> {
    for p in phi.preds() {
        if p.index() as usize > sets.len() {
            return Err(Error::MissingPredicateSet(p.index()));
        }
    }
    for v in phi.free_vars() {
        if val.get(v).is_none() {
            return Err(Error::UnboundVariable(v.to_string()));
        }
    }
    let node = compile(phi);
    let mut val = val.clone();
    Ok(eval(&node, &mut val, sets, density.max(1)))
}

fn compile(phi: &Mdl) -> Node {
    match phi {
        Mdl::True => Node::Const(true),
        Mdl::False => Node::Const(false),
        Mdl::Pred { pred, var, negated } => Node::Pred { set: pred.index() as usize - 1, var: *var, negated: *negated },
        Mdl::Diff(a) => Node::Diff(*a),
        Mdl::And(a, b) => Node::And(Box::new(compile(a)), Box::new(compile(b))),
        Mdl::Or(a, b) => Node::Or(Box::new(compile(a)), Box::new(compile(b))),
        Mdl::Not(a) => Node::Not(Box::new(compile(a))),
        Mdl::Forall(v, body) | Mdl::Exists(v, body) => Node::Quant {
            forall: matches!(phi, Mdl::Forall(..)),
            var: *v,
            body: Box::new(compile(body)),
            anchors: anchors(*v, body, &phi.free_vars()),
        },
    }
}

/// Every `(anchor, offset)` such that a chain of atoms in `body` can force
/// `v = anchor + offset`.
fn anchors(v: VarId, body: &Mdl, outer: &BTreeSet<VarId>) -> Vec<(Anchor, Rational)> {
    let mut edges: BTreeMap<VarId, Vec<(VarId, Rational)>> = BTreeMap::new();
    body.visit_atoms(&mut |a| {
        // boundary x = y + c
        edges.entry(a.x).or_default().push((a.y, a.bound.value));
        edges.entry(a.y).or_default().push((a.x, -a.bound.value));
    });
    let mut occurrences: BTreeMap<VarId, BTreeSet<usize>> = BTreeMap::new();
    collect_preds(body, &mut occurrences);

    let mut out = Vec::new();
    let mut on_path = BTreeSet::from([v]);
    walk(v, Rational::ZERO, &edges, &occurrences, outer, &mut on_path, &mut out);
    out
}

fn walk(
    n: VarId,
    offset: Rational,
    edges: &BTreeMap<VarId, Vec<(VarId, Rational)>>,
    occurrences: &BTreeMap<VarId, BTreeSet<usize>>,
    outer: &BTreeSet<VarId>,
    on_path: &mut BTreeSet<VarId>,
    out: &mut Vec<(Anchor, Rational)>,
) {
    if let Some(sets) = occurrences.get(&n) {
        out.extend(sets.iter().map(|&s| (Anchor::Set(s), offset)));
    }
    for &(m, c) in edges.get(&n).map(Vec::as_slice).unwrap_or(&[]) {
        // n = m + c, and v = n + offset
        let o = offset + c;
        if outer.contains(&m) {
            out.push((Anchor::Var(m), o));
        } else if on_path.insert(m) {
            walk(m, o, edges, occurrences, outer, on_path, out);
            on_path.remove(&m);
        }
    }
}

fn collect_preds(phi: &Mdl, out: &mut BTreeMap<VarId, BTreeSet<usize>>) {
    match phi {
        Mdl::Pred { pred, var, .. } => {
            out.entry(*var).or_default().insert(pred.index() as usize - 1);
        }
        Mdl::And(a, b) | Mdl::Or(a, b) => {
            collect_preds(a, out);
            collect_preds(b, out);
        }
        Mdl::Not(a) | Mdl::Forall(_, a) | Mdl::Exists(_, a) => collect_preds(a, out),
        Mdl::True | Mdl::False | Mdl::Diff(_) => {}
    }
}

fn sample_points(
    anchors: &[(Anchor, Rational)],
    val: &Valuation,
    sets: &[IntervalUnion],
    density: u32,
) -> Vec<Rational> {
    let mut base = BTreeSet::new();
    for &(anchor, o) in anchors {
        match anchor {
            Anchor::Var(a) => {
                base.insert(val.get(a).expect("outer variables are bound") + o);
            }
            Anchor::Set(s) => base.extend(sets[s].endpoints().into_iter().map(|e| e + o)),
        }
    }
    let base: Vec<Rational> = base.into_iter().collect();
    let (Some(&first), Some(&last)) = (base.first(), base.last()) else {
        return vec![Rational::ZERO];
    };
    let mut points = Vec::with_capacity(base.len() * (density as usize + 1) + 2);
    points.push(first - Rational::ONE);
    for w in base.windows(2) {
        points.push(w[0]);
        let step = w[1] - w[0];
        for m in 1..=density as i64 {
            points.push(w[0] + Rational::new(m, density as i64 + 1) * step);
        }
    }
    points.push(last);
    points.push(last + Rational::ONE);
    points
}

fn eval(node: &Node, val: &mut Valuation, sets: &[IntervalUnion], density: u32) -> bool {
    match node {
        Node::Const(b) => *b,
        Node::Pred { set, var, negated } => {
            let t = val.get(*var).expect("bound variable");
            sets[*set].contains(t) != *negated
        }
        Node::Diff(a) => {
            let x = val.get(a.x).expect("bound variable");
            let y = val.get(a.y).expect("bound variable");
            a.holds(x - y)
        }
        Node::And(a, b) => eval(a, val, sets, density) && eval(b, val, sets, density),
        Node::Or(a, b) => eval(a, val, sets, density) || eval(b, val, sets, density),
        Node::Not(a) => !eval(a, val, sets, density),
        Node::Quant { forall, var, body, anchors } => {
            let points = sample_points(anchors, val, sets, density);
            let saved = val.get(*var);
            let mut result = *forall;
            for p in points {
                val.set(*var, Some(p));
                if eval(body, val, sets, density) != *forall {
                    result = !*forall;
                    break;
                }
            }
            val.set(*var, saved);
            result
        }
    }
}
