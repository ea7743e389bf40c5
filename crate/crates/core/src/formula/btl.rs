use std::fmt;

use super::PropId;
use crate::rational::Rational;

/// Bounded temporal logic formula.
///
/// Bounds are non-negative; `Between(c, d, _)` has `c <= d`. The parser
/// enforces both, direct construction is trusted.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Btl {
    Prop(PropId),
    And(Box<Btl>, Box<Btl>),
    Or(Box<Btl>, Box<Btl>),
    Not(Box<Btl>),
    Implies(Box<Btl>, Box<Btl>),
    Iff(Box<Btl>, Box<Btl>),
    /// Holds throughout `[u, u + c]`.
    Always(Rational, Box<Btl>),
    /// Holds somewhere in `[u, u + c]`.
    Eventually(Rational, Box<Btl>),
    /// Holds at every `u' >= u`.
    AlwaysUnbounded(Box<Btl>),
    /// Holds somewhere at or after `u + c`.
    After(Rational, Box<Btl>),
    /// Holds somewhere in `[u + c, u + d]`.
    Between(Rational, Rational, Box<Btl>),
    /// Left operand throughout `[u, u + c)`, right operand at `u + c`.
    UntilExact(Rational, Box<Btl>, Box<Btl>),
    Until(Box<Btl>, Box<Btl>),
}

impl Btl {
    pub fn prop(index: u32) -> Btl {
        Btl::Prop(PropId::new(index))
    }

    pub fn and(a: Btl, b: Btl) -> Btl {
        Btl::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Btl, b: Btl) -> Btl {
        Btl::Or(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Btl) -> Btl {
        Btl::Not(Box::new(a))
    }

    pub fn implies(a: Btl, b: Btl) -> Btl {
        Btl::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Btl, b: Btl) -> Btl {
        Btl::Iff(Box::new(a), Box::new(b))
    }

    pub fn always(c: impl Into<Rational>, a: Btl) -> Btl {
        Btl::Always(c.into(), Box::new(a))
    }

    pub fn eventually(c: impl Into<Rational>, a: Btl) -> Btl {
        Btl::Eventually(c.into(), Box::new(a))
    }

    pub fn always_unbounded(a: Btl) -> Btl {
        Btl::AlwaysUnbounded(Box::new(a))
    }

    pub fn after(c: impl Into<Rational>, a: Btl) -> Btl {
        Btl::After(c.into(), Box::new(a))
    }

    pub fn between(c: impl Into<Rational>, d: impl Into<Rational>, a: Btl) -> Btl {
        Btl::Between(c.into(), d.into(), Box::new(a))
    }

    pub fn until_exact(c: impl Into<Rational>, a: Btl, b: Btl) -> Btl {
        Btl::UntilExact(c.into(), Box::new(a), Box::new(b))
    }

    pub fn until(a: Btl, b: Btl) -> Btl {
        Btl::Until(Box::new(a), Box::new(b))
    }

    /// Nesting depth of temporal operators.
    pub fn temporal_depth(&self) -> usize {
        match self {
            Btl::Prop(_) => 0,
            Btl::Not(a) => a.temporal_depth(),
            Btl::And(a, b) | Btl::Or(a, b) | Btl::Implies(a, b) | Btl::Iff(a, b) => {
                a.temporal_depth().max(b.temporal_depth())
            }
            Btl::Always(_, a)
            | Btl::Eventually(_, a)
            | Btl::AlwaysUnbounded(a)
            | Btl::After(_, a)
            | Btl::Between(_, _, a) => 1 + a.temporal_depth(),
            Btl::UntilExact(_, a, b) | Btl::Until(a, b) => 1 + a.temporal_depth().max(b.temporal_depth()),
        }
    }

    /// Propositions occurring in the formula.
    pub fn props(&self) -> std::collections::BTreeSet<PropId> {
        let mut out = std::collections::BTreeSet::new();
        self.collect_props(&mut out);
        out
    }

    fn collect_props(&self, out: &mut std::collections::BTreeSet<PropId>) {
        match self {
            Btl::Prop(p) => {
                out.insert(*p);
            }
            Btl::Not(a)
            | Btl::Always(_, a)
            | Btl::Eventually(_, a)
            | Btl::AlwaysUnbounded(a)
            | Btl::After(_, a)
            | Btl::Between(_, _, a) => a.collect_props(out),
            Btl::And(a, b)
            | Btl::Or(a, b)
            | Btl::Implies(a, b)
            | Btl::Iff(a, b)
            | Btl::UntilExact(_, a, b)
            | Btl::Until(a, b) => {
                a.collect_props(out);
                b.collect_props(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Btl::Iff(..) => 0,
            Btl::Implies(..) => 1,
            Btl::Or(..) => 2,
            Btl::And(..) => 3,
            _ => 4,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Btl::Prop(p) => write!(f, "{p}"),
            Btl::Iff(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " <-> ")?;
                b.fmt_at(f, 1)
            }
            Btl::Implies(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, " -> ")?;
                b.fmt_at(f, 1)
            }
            Btl::Or(a, b) => {
                a.fmt_at(f, 2)?;
                write!(f, " | ")?;
                b.fmt_at(f, 3)
            }
            Btl::And(a, b) => {
                a.fmt_at(f, 3)?;
                write!(f, " & ")?;
                b.fmt_at(f, 4)
            }
            Btl::Not(a) => {
                write!(f, "!")?;
                a.fmt_at(f, 4)
            }
            Btl::Always(c, a) => {
                write!(f, "always[{c}] ")?;
                a.fmt_at(f, 4)
            }
            Btl::Eventually(c, a) => {
                write!(f, "eventually[{c}] ")?;
                a.fmt_at(f, 4)
            }
            Btl::AlwaysUnbounded(a) => {
                write!(f, "always ")?;
                a.fmt_at(f, 4)
            }
            Btl::After(c, a) => {
                write!(f, "after[{c}] ")?;
                a.fmt_at(f, 4)
            }
            Btl::Between(c, d, a) => {
                write!(f, "between[{c}, {d}] ")?;
                a.fmt_at(f, 4)
            }
            Btl::UntilExact(c, a, b) => {
                fmt_until_lhs(a, f)?;
                write!(f, " U[={c}] ")?;
                b.fmt_at(f, 4)
            }
            Btl::Until(a, b) => {
                fmt_until_lhs(a, f)?;
                write!(f, " U ")?;
                b.fmt_at(f, 4)
            }
        }
    }
}

fn fmt_until_lhs(a: &Btl, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match a {
        Btl::Prop(p) => write!(f, "{p}"),
        other => {
            write!(f, "(")?;
            other.fmt_at(f, 0)?;
            write!(f, ")")
        }
    }
}

/// Prints in the concrete syntax accepted by [`super::parse_btl`].
impl fmt::Display for Btl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}
