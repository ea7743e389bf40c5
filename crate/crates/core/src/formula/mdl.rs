use std::collections::BTreeSet;
use std::fmt;

use super::{PredId, VarId};
use crate::rational::{Bound, Rational};

/// Difference atom `x - y <= c` (or `< c`), possibly refuted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct DiffAtom {
    pub x: VarId,
    pub y: VarId,
    pub bound: Bound,
    pub negated: bool,
}

impl DiffAtom {
    /// Truth value of the atom for the difference `value(x) - value(y)`.
    pub fn holds(&self, diff: Rational) -> bool {
        self.bound.admits(diff) != self.negated
    }

    /// The same constraint written without polarity: `x - y ⋈ c` for asserted
    /// atoms, the flipped `y - x ⋈' -c` for refuted ones.
    pub fn as_constraint(&self) -> (VarId, VarId, Bound) {
        if self.negated {
            (self.y, self.x, self.bound.complement())
        } else {
            (self.x, self.y, self.bound)
        }
    }
}

/// Monadic difference logic formula.
///
/// The positive-form subset has no `Not` node: negation lives only in the
/// polarity flags of predicate and difference atoms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Mdl {
    True,
    False,
    Pred { pred: PredId, var: VarId, negated: bool },
    Diff(DiffAtom),
    And(Box<Mdl>, Box<Mdl>),
    Or(Box<Mdl>, Box<Mdl>),
    Not(Box<Mdl>),
    Forall(VarId, Box<Mdl>),
    Exists(VarId, Box<Mdl>),
}

impl Mdl {
    pub fn constant(b: bool) -> Mdl {
        if b {
            Mdl::True
        } else {
            Mdl::False
        }
    }

    pub fn pred(pred: PredId, var: VarId) -> Mdl {
        Mdl::Pred { pred, var, negated: false }
    }

    /// `x - y ⋈ bound`. When `x == y` the atom is decided on the spot and a
    /// boolean constant is returned, so stored atoms always have `x != y`.
    pub fn diff(x: VarId, y: VarId, bound: Bound) -> Mdl {
        if x == y {
            Mdl::constant(bound.admits(Rational::ZERO))
        } else {
            Mdl::Diff(DiffAtom { x, y, bound, negated: false })
        }
    }

    /// `x - y <= c`
    pub fn le(x: VarId, y: VarId, c: impl Into<Rational>) -> Mdl {
        Mdl::diff(x, y, Bound::le(c))
    }

    /// `x - y < c`
    pub fn lt(x: VarId, y: VarId, c: impl Into<Rational>) -> Mdl {
        Mdl::diff(x, y, Bound::lt(c))
    }

    /// `x - y = c`, as two non-strict atoms.
    pub fn eq(x: VarId, y: VarId, c: impl Into<Rational>) -> Mdl {
        let c = c.into();
        Mdl::and(Mdl::le(x, y, c), Mdl::le(y, x, -c))
    }

    pub fn and(a: Mdl, b: Mdl) -> Mdl {
        Mdl::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Mdl, b: Mdl) -> Mdl {
        Mdl::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Mdl) -> Mdl {
        Mdl::Not(Box::new(a))
    }

    pub fn implies(a: Mdl, b: Mdl) -> Mdl {
        Mdl::or(Mdl::not(a), b)
    }

    pub fn forall(v: VarId, body: Mdl) -> Mdl {
        Mdl::Forall(v, Box::new(body))
    }

    pub fn exists(v: VarId, body: Mdl) -> Mdl {
        Mdl::Exists(v, Box::new(body))
    }

    /// Conjunction of a list; `True` when empty.
    pub fn all(items: impl IntoIterator<Item = Mdl>) -> Mdl {
        items.into_iter().reduce(Mdl::and).unwrap_or(Mdl::True)
    }

    /// Disjunction of a list; `False` when empty.
    pub fn any(items: impl IntoIterator<Item = Mdl>) -> Mdl {
        items.into_iter().reduce(Mdl::or).unwrap_or(Mdl::False)
    }

    /// Pushes negations down to the atoms, dualizing connectives and quantifiers.
    pub fn positive_form(&self) -> Mdl {
        self.push_negation(false)
    }

    fn push_negation(&self, neg: bool) -> Mdl {
        match self {
            Mdl::True => Mdl::constant(!neg),
            Mdl::False => Mdl::constant(neg),
            Mdl::Pred { pred, var, negated } => Mdl::Pred { pred: *pred, var: *var, negated: *negated != neg },
            Mdl::Diff(a) => Mdl::Diff(DiffAtom { negated: a.negated != neg, ..*a }),
            Mdl::Not(a) => a.push_negation(!neg),
            Mdl::And(a, b) => {
                let (a, b) = (a.push_negation(neg), b.push_negation(neg));
                if neg {
                    Mdl::or(a, b)
                } else {
                    Mdl::and(a, b)
                }
            }
            Mdl::Or(a, b) => {
                let (a, b) = (a.push_negation(neg), b.push_negation(neg));
                if neg {
                    Mdl::and(a, b)
                } else {
                    Mdl::or(a, b)
                }
            }
            Mdl::Forall(v, a) => {
                let a = a.push_negation(neg);
                if neg {
                    Mdl::exists(*v, a)
                } else {
                    Mdl::forall(*v, a)
                }
            }
            Mdl::Exists(v, a) => {
                let a = a.push_negation(neg);
                if neg {
                    Mdl::forall(*v, a)
                } else {
                    Mdl::exists(*v, a)
                }
            }
        }
    }

    pub fn is_positive_form(&self) -> bool {
        match self {
            Mdl::True | Mdl::False | Mdl::Pred { .. } | Mdl::Diff(_) => true,
            Mdl::Not(_) => false,
            Mdl::And(a, b) | Mdl::Or(a, b) => a.is_positive_form() && b.is_positive_form(),
            Mdl::Forall(_, a) | Mdl::Exists(_, a) => a.is_positive_form(),
        }
    }

    /// Replaces every literal predicate, asserted or negated, by the boolean
    /// constant `value`. Everything else is left untouched.
    pub fn literal_substitute(&self, value: bool) -> Mdl {
        self.map_preds(&mut |_, _, _| Mdl::constant(value))
    }

    /// Rebuilds the formula with every predicate occurrence replaced by
    /// `f(pred, var, negated)`.
    pub fn map_preds(&self, f: &mut impl FnMut(PredId, VarId, bool) -> Mdl) -> Mdl {
        match self {
            Mdl::True => Mdl::True,
            Mdl::False => Mdl::False,
            Mdl::Pred { pred, var, negated } => f(*pred, *var, *negated),
            Mdl::Diff(a) => Mdl::Diff(*a),
            Mdl::And(a, b) => Mdl::and(a.map_preds(f), b.map_preds(f)),
            Mdl::Or(a, b) => Mdl::or(a.map_preds(f), b.map_preds(f)),
            Mdl::Not(a) => Mdl::not(a.map_preds(f)),
            Mdl::Forall(v, a) => Mdl::forall(*v, a.map_preds(f)),
            Mdl::Exists(v, a) => Mdl::exists(*v, a.map_preds(f)),
        }
    }

    /// `(pfp, nfp)`: predicates occurring positively and negatively. A
    /// predicate under an odd number of `Not` nodes counts as negative.
    pub fn polarity_sets(&self) -> (BTreeSet<PredId>, BTreeSet<PredId>) {
        let mut pos = BTreeSet::new();
        let mut neg = BTreeSet::new();
        self.collect_polarity(false, &mut pos, &mut neg);
        (pos, neg)
    }

    fn collect_polarity(&self, flip: bool, pos: &mut BTreeSet<PredId>, neg: &mut BTreeSet<PredId>) {
        match self {
            Mdl::True | Mdl::False | Mdl::Diff(_) => {}
            Mdl::Pred { pred, negated, .. } => {
                if *negated != flip {
                    neg.insert(*pred);
                } else {
                    pos.insert(*pred);
                }
            }
            Mdl::Not(a) => a.collect_polarity(!flip, pos, neg),
            Mdl::And(a, b) | Mdl::Or(a, b) => {
                a.collect_polarity(flip, pos, neg);
                b.collect_polarity(flip, pos, neg);
            }
            Mdl::Forall(_, a) | Mdl::Exists(_, a) => a.collect_polarity(flip, pos, neg),
        }
    }

    /// No predicate occurs with both polarities.
    pub fn is_homogeneous(&self) -> bool {
        let (pos, neg) = self.polarity_sets();
        pos.is_disjoint(&neg)
    }

    pub fn preds(&self) -> BTreeSet<PredId> {
        let (mut pos, neg) = self.polarity_sets();
        pos.extend(neg);
        pos
    }

    pub fn free_vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<VarId>, out: &mut BTreeSet<VarId>) {
        let mut note = |v: VarId, bound: &Vec<VarId>| {
            if !bound.contains(&v) {
                out.insert(v);
            }
        };
        match self {
            Mdl::True | Mdl::False => {}
            Mdl::Pred { var, .. } => note(*var, bound),
            Mdl::Diff(a) => {
                note(a.x, bound);
                note(a.y, bound);
            }
            Mdl::Not(a) => a.collect_free(bound, out),
            Mdl::And(a, b) | Mdl::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Mdl::Forall(v, a) | Mdl::Exists(v, a) => {
                bound.push(*v);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Largest variable index mentioned anywhere, bound or free.
    pub fn max_var(&self) -> VarId {
        match self {
            Mdl::True | Mdl::False => VarId::Z,
            Mdl::Pred { var, .. } => *var,
            Mdl::Diff(a) => a.x.max(a.y),
            Mdl::Not(a) => a.max_var(),
            Mdl::And(a, b) | Mdl::Or(a, b) => a.max_var().max(b.max_var()),
            Mdl::Forall(v, a) | Mdl::Exists(v, a) => (*v).max(a.max_var()),
        }
    }

    /// Every quantifier binds a distinct variable, never `z`, and no bound
    /// variable also occurs free.
    pub fn is_renamed_apart(&self) -> bool {
        let mut seen = BTreeSet::new();
        let free = self.free_vars();
        self.binders_ok(&mut seen) && seen.is_disjoint(&free)
    }

    fn binders_ok(&self, seen: &mut BTreeSet<VarId>) -> bool {
        match self {
            Mdl::True | Mdl::False | Mdl::Pred { .. } | Mdl::Diff(_) => true,
            Mdl::Not(a) => a.binders_ok(seen),
            Mdl::And(a, b) | Mdl::Or(a, b) => a.binders_ok(seen) && b.binders_ok(seen),
            Mdl::Forall(v, a) | Mdl::Exists(v, a) => !v.is_zero() && seen.insert(*v) && a.binders_ok(seen),
        }
    }

    /// Constants of all difference atoms, with repetitions.
    pub fn constants(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |a| out.push(a.bound.value));
        out
    }

    pub fn visit_atoms(&self, f: &mut impl FnMut(&DiffAtom)) {
        match self {
            Mdl::True | Mdl::False | Mdl::Pred { .. } => {}
            Mdl::Diff(a) => f(a),
            Mdl::Not(a) | Mdl::Forall(_, a) | Mdl::Exists(_, a) => a.visit_atoms(f),
            Mdl::And(a, b) | Mdl::Or(a, b) => {
                a.visit_atoms(f);
                b.visit_atoms(f);
            }
        }
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        match self {
            Mdl::True | Mdl::False | Mdl::Pred { .. } | Mdl::Diff(_) => 1,
            Mdl::Not(a) | Mdl::Forall(_, a) | Mdl::Exists(_, a) => 1 + a.size(),
            Mdl::And(a, b) | Mdl::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Folds boolean constants away. Quantifiers over constants disappear.
    pub fn simplify_constants(&self) -> Mdl {
        match self {
            Mdl::And(a, b) => match (a.simplify_constants(), b.simplify_constants()) {
                (Mdl::False, _) | (_, Mdl::False) => Mdl::False,
                (Mdl::True, x) | (x, Mdl::True) => x,
                (x, y) => Mdl::and(x, y),
            },
            Mdl::Or(a, b) => match (a.simplify_constants(), b.simplify_constants()) {
                (Mdl::True, _) | (_, Mdl::True) => Mdl::True,
                (Mdl::False, x) | (x, Mdl::False) => x,
                (x, y) => Mdl::or(x, y),
            },
            Mdl::Not(a) => match a.simplify_constants() {
                Mdl::True => Mdl::False,
                Mdl::False => Mdl::True,
                x => Mdl::not(x),
            },
            Mdl::Forall(v, a) => match a.simplify_constants() {
                c @ (Mdl::True | Mdl::False) => c,
                x => Mdl::forall(*v, x),
            },
            Mdl::Exists(v, a) => match a.simplify_constants() {
                c @ (Mdl::True | Mdl::False) => c,
                x => Mdl::exists(*v, x),
            },
            other => other.clone(),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Mdl::Forall(..) | Mdl::Exists(..) => 0,
            Mdl::Or(..) => 1,
            Mdl::And(..) => 2,
            _ => 3,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Mdl::True => write!(f, "1"),
            Mdl::False => write!(f, "0"),
            Mdl::Pred { pred, var, negated } => {
                write!(f, "{}{pred}({var})", if *negated { "!" } else { "" })
            }
            Mdl::Diff(a) => {
                if a.negated {
                    write!(f, "!({}-{} {})", a.x, a.y, a.bound)
                } else {
                    write!(f, "{}-{} {}", a.x, a.y, a.bound)
                }
            }
            Mdl::Not(a) if matches!(**a, Mdl::Diff(_)) => write!(f, "!({a})"),
            Mdl::Not(a) => {
                write!(f, "!")?;
                a.fmt_at(f, 3)
            }
            Mdl::And(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, " & ")?;
                b.fmt_at(f, 3)
            }
            Mdl::Or(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " | ")?;
                b.fmt_at(f, 2)
            }
            Mdl::Forall(v, a) => {
                write!(f, "forall {v}. ")?;
                a.fmt_at(f, 0)
            }
            Mdl::Exists(v, a) => {
                write!(f, "exists {v}. ")?;
                a.fmt_at(f, 0)
            }
        }
    }
}

impl fmt::Display for Mdl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

/// Numbering of literal predicates: `L_i = P_i` and `L_{k+i} = !P_i`
/// for `i = 1..=k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiteralIndex {
    k: u32,
}

impl LiteralIndex {
    /// Index for predicates `P_1..P_k`.
    pub fn new(k: u32) -> Self {
        LiteralIndex { k }
    }

    /// Sized to cover every predicate occurring in `phi`.
    pub fn for_formula(phi: &Mdl) -> Self {
        LiteralIndex { k: phi.preds().iter().map(|p| p.index()).max().unwrap_or(0) }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> u32 {
        2 * self.k
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn index(&self, pred: PredId, negated: bool) -> Option<u32> {
        let i = pred.index();
        (i <= self.k).then_some(if negated { self.k + i } else { i })
    }

    pub fn literal(&self, i: u32) -> Option<(PredId, bool)> {
        match i {
            0 => None,
            i if i <= self.k => Some((PredId::new(i), false)),
            i if i <= 2 * self.k => Some((PredId::new(i - self.k), true)),
            _ => None,
        }
    }
}
