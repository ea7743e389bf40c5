//! Tautology and unsatisfiability checks: search for a feasible path to the
//! opposite terminal, pruning with an incrementally closed difference-bound
//! matrix.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::{Ddd, DddManager, NormAtom};
use crate::formula::VarId;
use crate::rational::{Bound, Rational};

/// Atoms met along one root-to-terminal path, with the branch taken.
pub type PathConstraint = Vec<(NormAtom, bool)>;

/// Closed matrix of bounds `x_i - x_j ⋈ m[i][j]`; `None` is unbounded.
#[derive(Clone)]
struct Dbm {
    n: usize,
    m: Vec<Option<Bound>>,
}

impl Dbm {
    fn new(n: usize) -> Self {
        Dbm { n, m: vec![None; n * n] }
    }

    fn at(&self, i: usize, j: usize) -> Option<Bound> {
        if i == j {
            Some(Bound::zero())
        } else {
            self.m[i * self.n + j]
        }
    }

    /// Adds `x_i - x_j ⋈ b`; false when the result is empty.
    fn add(&mut self, i: usize, j: usize, b: Bound) -> bool {
        if let Some(back) = self.at(j, i) {
            if back.add(&b).is_negative() {
                return false;
            }
        }
        if matches!(self.at(i, j), Some(cur) if cur <= b) {
            return true;
        }
        for k in 0..self.n {
            let Some(left) = self.at(k, i) else { continue };
            let via = left.add(&b);
            for l in 0..self.n {
                if k == l {
                    continue;
                }
                let Some(right) = self.at(j, l) else { continue };
                let cand = via.add(&right);
                let slot = &mut self.m[k * self.n + l];
                if slot.is_none_or(|cur| cand < cur) {
                    *slot = Some(cand);
                }
            }
        }
        true
    }
}

impl DddManager {
    /// No feasible path reaches the false terminal.
    pub fn is_taut(&self, d: Ddd) -> bool {
        !self.reaches(d, Ddd::FALSE)
    }

    /// No feasible path reaches the true terminal.
    pub fn is_unsat(&self, d: Ddd) -> bool {
        !self.reaches(d, Ddd::TRUE)
    }

    fn reaches(&self, d: Ddd, target: Ddd) -> bool {
        if d.is_terminal() {
            return d == target;
        }
        let index: BTreeMap<VarId, usize> = self.vars(d).into_iter().enumerate().map(|(i, v)| (v, i)).collect();
        let dbm = Dbm::new(index.len());
        self.search(d, target, &index, dbm)
    }

    fn search(&self, d: Ddd, target: Ddd, index: &BTreeMap<VarId, usize>, dbm: Dbm) -> bool {
        if d.is_terminal() {
            return d == target;
        }
        let n = self.get(d);
        let (x, y) = (index[&n.atom.x], index[&n.atom.y]);
        let mut hi = dbm.clone();
        if hi.add(x, y, n.atom.bound) && self.search(n.hi, target, index, hi) {
            return true;
        }
        let mut lo = dbm;
        lo.add(y, x, n.atom.bound.complement()) && self.search(n.lo, target, index, lo)
    }

    /// Every root-to-terminal path ending in `terminal`, feasible or not.
    pub fn paths(&self, d: Ddd, terminal: bool) -> Vec<PathConstraint> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.collect_paths(d, Ddd::constant(terminal), &mut cur, &mut out);
        out
    }

    /// Every root-to-terminal path.
    pub fn all_paths(&self, d: Ddd) -> Vec<(PathConstraint, bool)> {
        let mut out: Vec<_> = self.paths(d, true).into_iter().map(|p| (p, true)).collect();
        out.extend(self.paths(d, false).into_iter().map(|p| (p, false)));
        out
    }

    fn collect_paths(&self, d: Ddd, target: Ddd, cur: &mut PathConstraint, out: &mut Vec<PathConstraint>) {
        if d.is_terminal() {
            if d == target {
                out.push(cur.clone());
            }
            return;
        }
        let n = self.get(d);
        for (branch, child) in [(true, n.hi), (false, n.lo)] {
            cur.push((n.atom, branch));
            self.collect_paths(child, target, cur, out);
            cur.pop();
        }
    }
}

/// Weight of a constraint-graph path: value sum, then strict edges counted as
/// an infinitesimal (more strict edges means lighter).
#[derive(Clone, Copy, PartialEq, Eq)]
struct Weight(Rational, i64);

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

/// Bellman-Ford over the path's constraint graph: infeasible iff some cycle
/// sums below zero, or to zero through a strict edge.
pub fn path_feasible(path: &[(NormAtom, bool)]) -> bool {
    let edges: Vec<(VarId, VarId, Weight)> = path
        .iter()
        .map(|&(a, branch)| {
            let (x, y, b) = if branch { (a.x, a.y, a.bound) } else { (a.y, a.x, a.bound.complement()) };
            // x - y ⋈ b  is the edge y -> x
            (y, x, Weight(b.value, b.strict as i64))
        })
        .collect();
    let mut dist: BTreeMap<VarId, Weight> = BTreeMap::new();
    for &(y, x, _) in &edges {
        dist.insert(x, Weight(Rational::ZERO, 0));
        dist.insert(y, Weight(Rational::ZERO, 0));
    }
    for _ in 0..=dist.len() {
        let mut changed = false;
        for &(from, to, w) in &edges {
            let d = dist[&from];
            let via = Weight(d.0 + w.0, d.1 + w.1);
            if via < dist[&to] {
                dist.insert(to, via);
                changed = true;
            }
        }
        if !changed {
            return true;
        }
    }
    false
}
