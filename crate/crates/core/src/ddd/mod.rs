//! Difference decision diagrams.
//!
//! Nodes test a normalized difference atom `x - y ⋈ c` with `x` before `y`
//! in variable order (`z` first, then by index). Atoms along every path
//! strictly increase. Diagrams are shared through a unique table but are not
//! canonical: the same set can have several shapes, and some paths may be
//! infeasible. Decisions therefore look only at feasible paths.

mod decide;
mod quant;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

pub use decide::{path_feasible, PathConstraint};

use crate::error::{Error, Result};
use crate::formula::{Mdl, VarId};
use crate::rational::{Bound, Rational};

/// Difference atom with `x` strictly before `y`.
///
/// The derived order (pair, then bound tightness) is the node order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NormAtom {
    pub x: VarId,
    pub y: VarId,
    pub bound: Bound,
}

impl NormAtom {
    pub fn holds(&self, x: Rational, y: Rational) -> bool {
        self.bound.admits(x - y)
    }
}

impl fmt::Display for NormAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{} {}", self.x, self.y, self.bound)
    }
}

/// Handle to a diagram inside a [`DddManager`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Ddd(u32);

impl Ddd {
    pub const FALSE: Ddd = Ddd(0);
    pub const TRUE: Ddd = Ddd(1);

    pub fn constant(b: bool) -> Ddd {
        if b {
            Ddd::TRUE
        } else {
            Ddd::FALSE
        }
    }

    pub fn is_terminal(self) -> bool {
        self.0 < 2
    }

    pub fn id(self) -> u32 {
        self.0
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
struct Node {
    atom: NormAtom,
    hi: Ddd,
    lo: Ddd,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Op {
    And,
    Or,
}

/// Owner of all nodes plus the unique table and operation caches.
pub struct DddManager {
    nodes: Vec<Option<Node>>,
    unique: HashMap<Node, Ddd>,
    apply_cache: HashMap<(Op, Ddd, Ddd), Ddd>,
    negate_cache: HashMap<Ddd, Ddd>,
}

impl Default for DddManager {
    fn default() -> Self {
        Self::new()
    }
}

impl DddManager {
    pub fn new() -> Self {
        DddManager {
            nodes: vec![None, None],
            unique: HashMap::new(),
            apply_cache: HashMap::new(),
            negate_cache: HashMap::new(),
        }
    }

    /// Number of nodes ever created, terminals included.
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Drops the operation caches (the unique table stays).
    pub fn clear_caches(&mut self) {
        self.apply_cache.clear();
        self.negate_cache.clear();
    }

    /// `(atom, high, low)` of an inner node.
    pub fn node(&self, d: Ddd) -> Option<(NormAtom, Ddd, Ddd)> {
        self.nodes[d.0 as usize].map(|n| (n.atom, n.hi, n.lo))
    }

    fn get(&self, d: Ddd) -> Node {
        self.nodes[d.0 as usize].expect("inner node")
    }

    fn mk(&mut self, atom: NormAtom, hi: Ddd, lo: Ddd) -> Ddd {
        if hi == lo {
            return hi;
        }
        let node = Node { atom, hi, lo };
        if let Some(&d) = self.unique.get(&node) {
            return d;
        }
        let d = Ddd(u32::try_from(self.nodes.len()).expect("node table overflow"));
        self.nodes.push(Some(node));
        self.unique.insert(node, d);
        d
    }

    /// Diagram of `x - y ⋈ bound`.
    pub fn atom(&mut self, x: VarId, y: VarId, bound: Bound) -> Ddd {
        use std::cmp::Ordering::*;
        match x.cmp(&y) {
            Equal => Ddd::constant(!bound.is_negative()),
            Less => self.mk(NormAtom { x, y, bound }, Ddd::TRUE, Ddd::FALSE),
            Greater => self.mk(NormAtom { x: y, y: x, bound: bound.complement() }, Ddd::FALSE, Ddd::TRUE),
        }
    }

    pub fn and(&mut self, a: Ddd, b: Ddd) -> Ddd {
        self.apply(Op::And, a, b)
    }

    pub fn or(&mut self, a: Ddd, b: Ddd) -> Ddd {
        self.apply(Op::Or, a, b)
    }

    /// `if c then a else b` for an arbitrary condition diagram `c`.
    pub fn ite(&mut self, c: Ddd, a: Ddd, b: Ddd) -> Ddd {
        let then = self.and(c, a);
        let nc = self.negate(c);
        let els = self.and(nc, b);
        self.or(then, els)
    }

    fn apply(&mut self, op: Op, a: Ddd, b: Ddd) -> Ddd {
        let (unit, zero) = match op {
            Op::And => (Ddd::TRUE, Ddd::FALSE),
            Op::Or => (Ddd::FALSE, Ddd::TRUE),
        };
        if a == zero || b == zero {
            return zero;
        }
        if a == unit || a == b {
            return b;
        }
        if b == unit {
            return a;
        }
        let key = (op, a.min(b), a.max(b));
        if let Some(&r) = self.apply_cache.get(&key) {
            return r;
        }
        let (na, nb) = (self.get(a), self.get(b));
        let top = na.atom.min(nb.atom);
        let (ah, al) = if na.atom == top { (na.hi, na.lo) } else { (a, a) };
        let (bh, bl) = if nb.atom == top { (nb.hi, nb.lo) } else { (b, b) };
        let hi = self.apply(op, ah, bh);
        let lo = self.apply(op, al, bl);
        let r = self.mk(top, hi, lo);
        self.apply_cache.insert(key, r);
        r
    }

    /// Swaps the terminals.
    pub fn negate(&mut self, d: Ddd) -> Ddd {
        if d.is_terminal() {
            return Ddd::constant(d == Ddd::FALSE);
        }
        if let Some(&r) = self.negate_cache.get(&d) {
            return r;
        }
        let n = self.get(d);
        let hi = self.negate(n.hi);
        let lo = self.negate(n.lo);
        let r = self.mk(n.atom, hi, lo);
        self.negate_cache.insert(d, r);
        self.negate_cache.insert(r, d);
        r
    }

    /// `forall v. d`.
    pub fn forall(&mut self, v: VarId, d: Ddd) -> Ddd {
        let nd = self.negate(d);
        let e = self.exists(v, nd);
        self.negate(e)
    }

    /// Diagram of a predicate-free formula. Any free variables are allowed.
    pub fn build(&mut self, phi: &Mdl) -> Result<Ddd> {
        Ok(match phi {
            Mdl::True => Ddd::TRUE,
            Mdl::False => Ddd::FALSE,
            Mdl::Pred { pred, .. } => return Err(Error::UnexpectedPredicate(pred.index())),
            Mdl::Diff(a) => {
                let (x, y, b) = a.as_constraint();
                self.atom(x, y, b)
            }
            Mdl::And(a, b) => {
                let (a, b) = (self.build(a)?, self.build(b)?);
                self.and(a, b)
            }
            Mdl::Or(a, b) => {
                let (a, b) = (self.build(a)?, self.build(b)?);
                self.or(a, b)
            }
            Mdl::Not(a) => {
                let a = self.build(a)?;
                self.negate(a)
            }
            Mdl::Exists(v, a) => {
                let a = self.build(a)?;
                self.exists(*v, a)
            }
            Mdl::Forall(v, a) => {
                let a = self.build(a)?;
                self.forall(*v, a)
            }
        })
    }

    /// As [`build`](Self::build), for formulas whose only free variable is `z`.
    pub fn build_closed(&mut self, phi: &Mdl) -> Result<Ddd> {
        let extra: Vec<String> = phi.free_vars().into_iter().filter(|v| !v.is_zero()).map(|v| v.to_string()).collect();
        if !extra.is_empty() {
            return Err(Error::UnexpectedFreeVariables(extra.join(", ")));
        }
        self.build(phi)
    }

    /// Value of `d` under an assignment of every variable it mentions.
    pub fn eval(&self, d: Ddd, value: impl Fn(VarId) -> Rational) -> bool {
        let mut cur = d;
        while let Some(n) = self.nodes[cur.0 as usize] {
            cur = if n.atom.holds(value(n.atom.x), value(n.atom.y)) { n.hi } else { n.lo };
        }
        cur == Ddd::TRUE
    }

    /// Inner nodes reachable from `d`, parents before children.
    pub fn reachable(&self, d: Ddd) -> Vec<Ddd> {
        let mut seen = BTreeSet::new();
        let mut order = Vec::new();
        let mut stack = vec![d];
        while let Some(n) = stack.pop() {
            if n.is_terminal() || !seen.insert(n) {
                continue;
            }
            order.push(n);
            let node = self.get(n);
            stack.push(node.lo);
            stack.push(node.hi);
        }
        // children were created before parents, so descending id is topological
        order.sort_by(|a, b| b.cmp(a));
        order
    }

    /// Number of inner nodes reachable from `d`.
    pub fn size(&self, d: Ddd) -> usize {
        self.reachable(d).len()
    }

    /// Variables tested anywhere in `d`.
    pub fn vars(&self, d: Ddd) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        for n in self.reachable(d) {
            let a = self.get(n).atom;
            out.insert(a.x);
            out.insert(a.y);
        }
        out
    }

    /// Checks the structural invariants below `d`: normalized atoms, atoms
    /// increasing along edges, no redundant tests, and unique-table sharing.
    pub fn validate(&self, d: Ddd) -> std::result::Result<(), String> {
        for n in self.reachable(d) {
            let node = self.get(n);
            if node.atom.x >= node.atom.y {
                return Err(format!("node {}: atom {} is not normalized", n.0, node.atom));
            }
            if node.hi == node.lo {
                return Err(format!("node {}: high and low coincide", n.0));
            }
            for child in [node.hi, node.lo] {
                if let Some(c) = self.nodes[child.0 as usize] {
                    if c.atom <= node.atom {
                        return Err(format!("node {}: child {} does not increase the atom order", n.0, child.0));
                    }
                }
            }
            if self.unique.get(&node) != Some(&n) {
                return Err(format!("node {}: not registered in the unique table", n.0));
            }
        }
        Ok(())
    }

    /// One line per node: `id: x-y <= c ? high : low`.
    pub fn dump(&self, d: Ddd) -> String {
        let mut out = String::new();
        if d.is_terminal() {
            out.push_str(&format!("root: {}\n", d.0));
            return out;
        }
        out.push_str(&format!("root: {}\n", d.0));
        for n in self.reachable(d) {
            let node = self.get(n);
            out.push_str(&format!("{}: {} ? {} : {}\n", n.0, node.atom, node.hi.0, node.lo.0));
        }
        out
    }
}
