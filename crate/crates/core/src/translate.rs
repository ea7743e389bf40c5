//! Translation of BTL formulas into monadic difference logic.
//!
//! `translate(psi, x)` produces a formula whose only free variable is the
//! starting point `x`; every temporal operator introduces one quantified
//! variable constrained relative to its parent.

use crate::formula::{Btl, Mdl, VarId, VarSupply};
use crate::rational::Rational;

/// `0 <= y - x <= c`, written as `x - y <= 0 & y - x <= c`.
fn window(x: VarId, y: VarId, c: Rational) -> Mdl {
    Mdl::and(Mdl::le(x, y, 0), Mdl::le(y, x, c))
}

/// Translates `psi` with starting point `x`, drawing bound variables from
/// `fresh` left to right.
pub fn translate(psi: &Btl, x: VarId, fresh: &mut VarSupply) -> Mdl {
    match psi {
        Btl::Prop(p) => Mdl::pred(p.pred(), x),
        Btl::And(a, b) => {
            let a = translate(a, x, fresh);
            Mdl::and(a, translate(b, x, fresh))
        }
        Btl::Or(a, b) => {
            let a = translate(a, x, fresh);
            Mdl::or(a, translate(b, x, fresh))
        }
        Btl::Not(a) => Mdl::not(translate(a, x, fresh)),
        Btl::Implies(a, b) => {
            let a = translate(a, x, fresh);
            Mdl::implies(a, translate(b, x, fresh))
        }
        Btl::Iff(a, b) => {
            // both directions; each copy gets its own bound variables
            let a1 = translate(a, x, fresh);
            let b1 = translate(b, x, fresh);
            let b2 = translate(b, x, fresh);
            let a2 = translate(a, x, fresh);
            Mdl::and(Mdl::implies(a1, b1), Mdl::implies(b2, a2))
        }
        Btl::Always(c, a) => {
            let y = fresh.fresh();
            Mdl::forall(y, Mdl::implies(window(x, y, *c), translate(a, y, fresh)))
        }
        Btl::Eventually(c, a) => {
            let y = fresh.fresh();
            Mdl::exists(y, Mdl::and(window(x, y, *c), translate(a, y, fresh)))
        }
        Btl::AlwaysUnbounded(a) => {
            let y = fresh.fresh();
            Mdl::forall(y, Mdl::implies(Mdl::le(x, y, 0), translate(a, y, fresh)))
        }
        Btl::After(c, a) => {
            // c <= y - x
            let y = fresh.fresh();
            Mdl::exists(y, Mdl::and(Mdl::le(x, y, -*c), translate(a, y, fresh)))
        }
        Btl::Between(c, d, a) => {
            let y = fresh.fresh();
            let guard = Mdl::and(Mdl::le(x, y, -*c), Mdl::le(y, x, *d));
            Mdl::exists(y, Mdl::and(guard, translate(a, y, fresh)))
        }
        Btl::UntilExact(c, a, b) => {
            let y = fresh.fresh();
            let before = Mdl::and(Mdl::le(x, y, 0), Mdl::lt(y, x, *c));
            let left = Mdl::forall(y, Mdl::implies(before, translate(a, y, fresh)));
            let u = fresh.fresh();
            let right = Mdl::forall(u, Mdl::implies(Mdl::eq(u, x, *c), translate(b, u, fresh)));
            Mdl::and(left, right)
        }
        Btl::Until(a, b) => {
            let y = fresh.fresh();
            let goal = translate(b, y, fresh);
            let u = fresh.fresh();
            let span = Mdl::and(Mdl::le(x, u, 0), Mdl::lt(u, y, 0));
            let hold = Mdl::forall(u, Mdl::implies(span, translate(a, u, fresh)));
            Mdl::exists(y, Mdl::and(Mdl::and(Mdl::le(x, y, 0), goal), hold))
        }
    }
}

/// `T(psi)_z` with bound variables numbered from 1.
pub fn translate_z(psi: &Btl) -> Mdl {
    translate(psi, VarId::Z, &mut VarSupply::new())
}

/// Positive form of `T(psi)_z`: the monitor's starting formula.
pub fn translate_positive(psi: &Btl) -> Mdl {
    translate_z(psi).positive_form()
}
