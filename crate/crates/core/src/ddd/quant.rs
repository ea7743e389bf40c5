//! Existential quantification by Fourier-Motzkin elimination along paths.
//!
//! Walking down the diagram we collect the constraints that mention the
//! eliminated variable. Tests on other atoms are kept as decision nodes; at
//! the true terminal the collected constraints are projected out, pairing each
//! upper bound with each lower bound. Sub-results are memoized on the node and
//! the collected constraints.

use std::collections::{BTreeMap, HashMap};

use super::{Ddd, DddManager};
use crate::formula::VarId;
use crate::rational::Bound;

/// Tightest bound per ordered pair `(x, y)` on `x - y`; every pair mentions
/// the eliminated variable.
type Context = BTreeMap<(VarId, VarId), Bound>;

/// A node together with the context it was reached under.
type MemoKey = (Ddd, Vec<((VarId, VarId), Bound)>);

struct Elim {
    v: VarId,
    memo: HashMap<MemoKey, Ddd>,
}

impl DddManager {
    /// `exists v. d`.
    pub fn exists(&mut self, v: VarId, d: Ddd) -> Ddd {
        let mut e = Elim { v, memo: HashMap::new() };
        self.ex(&mut e, d, &Context::new())
    }

    fn ex(&mut self, e: &mut Elim, d: Ddd, ctx: &Context) -> Ddd {
        if d == Ddd::FALSE {
            return Ddd::FALSE;
        }
        if d == Ddd::TRUE {
            return self.project(e.v, ctx);
        }
        let key = (d, ctx.iter().map(|(k, b)| (*k, *b)).collect::<Vec<_>>());
        if let Some(&r) = e.memo.get(&key) {
            return r;
        }
        let n = self.get(d);
        let a = n.atom;
        let r = if a.x != e.v && a.y != e.v {
            let hi = self.ex(e, n.hi, ctx);
            let lo = self.ex(e, n.lo, ctx);
            let test = self.mk(a, Ddd::TRUE, Ddd::FALSE);
            self.ite(test, hi, lo)
        } else {
            let hi = match extend(ctx, a.x, a.y, a.bound) {
                Some(c) => self.ex(e, n.hi, &c),
                None => Ddd::FALSE,
            };
            let lo = match extend(ctx, a.y, a.x, a.bound.complement()) {
                Some(c) => self.ex(e, n.lo, &c),
                None => Ddd::FALSE,
            };
            self.or(hi, lo)
        };
        e.memo.insert(key, r);
        r
    }

    /// Conjunction of all upper/lower bound combinations on `v` in `ctx`.
    fn project(&mut self, v: VarId, ctx: &Context) -> Ddd {
        let mut out = Ddd::TRUE;
        for (&(ux, uy), ub) in ctx {
            if ux != v {
                continue;
            }
            // v - uy ⋈ ub
            for (&(lx, ly), lb) in ctx {
                if ly != v {
                    continue;
                }
                // lx - v ⋈ lb
                let r = self.atom(lx, uy, ub.add(lb));
                out = self.and(out, r);
                if out == Ddd::FALSE {
                    return out;
                }
            }
        }
        out
    }
}

/// `ctx` plus `x - y ⋈ b`; `None` when it contradicts the opposite bound.
fn extend(ctx: &Context, x: VarId, y: VarId, b: Bound) -> Option<Context> {
    if let Some(opp) = ctx.get(&(y, x)) {
        if opp.add(&b).is_negative() {
            return None;
        }
    }
    let mut out = ctx.clone();
    out.entry((x, y)).and_modify(|cur| *cur = (*cur).min(b)).or_insert(b);
    Some(out)
}
