use std::cmp::Ordering;
use std::fmt;

use crate::rational::Rational;

/// One interval of non-negative reals. `hi == None` means unbounded above.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Interval {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Option<Rational>,
    pub hi_closed: bool,
}

impl Interval {
    pub fn contains(&self, t: Rational) -> bool {
        let above = if self.lo_closed { t >= self.lo } else { t > self.lo };
        let below = match self.hi {
            None => true,
            Some(h) if self.hi_closed => t <= h,
            Some(h) => t < h,
        };
        above && below
    }
}

/// Interval with a possibly unbounded lower end, used before clamping to `[0, inf)`.
#[derive(Clone, Copy, Debug)]
struct Raw {
    lo: Option<Rational>,
    lo_closed: bool,
    hi: Option<Rational>,
    hi_closed: bool,
}

/// Offsets `[lo, hi]` (each end open or closed, `hi` possibly infinite) applied
/// to a reference point; the time window of a temporal operator.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Window {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Option<Rational>,
    pub hi_closed: bool,
}

impl Window {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Window { lo, lo_closed: true, hi: Some(hi), hi_closed: true }
    }

    pub fn closed_open(lo: Rational, hi: Rational) -> Self {
        Window { lo, lo_closed: true, hi: Some(hi), hi_closed: false }
    }

    pub fn from(lo: Rational) -> Self {
        Window { lo, lo_closed: true, hi: None, hi_closed: false }
    }

    fn is_empty(&self) -> bool {
        match self.hi {
            None => false,
            Some(h) => self.lo > h || (self.lo == h && !(self.lo_closed && self.hi_closed)),
        }
    }
}

/// Finite union of disjoint intervals of `[0, inf)`, sorted and maximal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    /// All of `[0, inf)`.
    pub fn all() -> Self {
        Self::at_least(Rational::ZERO)
    }

    pub fn at_least(lo: impl Into<Rational>) -> Self {
        Self::from_intervals([Interval { lo: lo.into(), lo_closed: true, hi: None, hi_closed: false }])
    }

    pub fn closed(lo: impl Into<Rational>, hi: impl Into<Rational>) -> Self {
        Self::from_intervals([Interval { lo: lo.into(), lo_closed: true, hi: Some(hi.into()), hi_closed: true }])
    }

    pub fn closed_open(lo: impl Into<Rational>, hi: impl Into<Rational>) -> Self {
        Self::from_intervals([Interval { lo: lo.into(), lo_closed: true, hi: Some(hi.into()), hi_closed: false }])
    }

    pub fn open(lo: impl Into<Rational>, hi: impl Into<Rational>) -> Self {
        Self::from_intervals([Interval { lo: lo.into(), lo_closed: false, hi: Some(hi.into()), hi_closed: false }])
    }

    pub fn point(t: impl Into<Rational>) -> Self {
        let t = t.into();
        Self::closed(t, t)
    }

    /// Normalizes arbitrary intervals: clamps to `[0, inf)`, drops empty
    /// pieces and merges overlapping or touching ones.
    pub fn from_intervals(items: impl IntoIterator<Item = Interval>) -> Self {
        Self::normalize(
            items
                .into_iter()
                .map(|i| Raw { lo: Some(i.lo), lo_closed: i.lo_closed, hi: i.hi, hi_closed: i.hi_closed })
                .collect(),
        )
    }

    fn normalize(raw: Vec<Raw>) -> Self {
        let mut items: Vec<Interval> = Vec::with_capacity(raw.len());
        for r in raw {
            let (lo, lo_closed) = match r.lo {
                Some(l) if !l.is_negative() => (l, r.lo_closed),
                _ => (Rational::ZERO, true),
            };
            if let Some(h) = r.hi {
                if h < lo || (h == lo && !(lo_closed && r.hi_closed)) {
                    continue;
                }
            }
            items.push(Interval { lo, lo_closed, hi: r.hi, hi_closed: r.hi.is_some() && r.hi_closed });
        }
        items.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| b.lo_closed.cmp(&a.lo_closed)));
        let mut parts: Vec<Interval> = Vec::with_capacity(items.len());
        for it in items {
            if let Some(cur) = parts.last_mut() {
                let touches = match cur.hi {
                    None => true,
                    Some(h) => it.lo < h || (it.lo == h && (cur.hi_closed || it.lo_closed)),
                };
                if touches {
                    match (cur.hi, it.hi) {
                        (None, _) => {}
                        (_, None) => {
                            cur.hi = None;
                            cur.hi_closed = false;
                        }
                        (Some(a), Some(b)) => match a.cmp(&b) {
                            Ordering::Less => {
                                cur.hi = Some(b);
                                cur.hi_closed = it.hi_closed;
                            }
                            Ordering::Equal => cur.hi_closed |= it.hi_closed,
                            Ordering::Greater => {}
                        },
                    }
                    continue;
                }
            }
            parts.push(it);
        }
        IntervalUnion { parts }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, t: Rational) -> bool {
        self.parts.iter().any(|i| i.contains(t))
    }

    /// All finite endpoints, ascending.
    pub fn endpoints(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(2 * self.parts.len());
        for i in &self.parts {
            out.push(i.lo);
            if let Some(h) = i.hi {
                out.push(h);
            }
        }
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.parts.iter().chain(other.parts.iter()).copied())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.parts {
            for b in &other.parts {
                let (lo, lo_closed) = match a.lo.cmp(&b.lo) {
                    Ordering::Less => (b.lo, b.lo_closed),
                    Ordering::Greater => (a.lo, a.lo_closed),
                    Ordering::Equal => (a.lo, a.lo_closed && b.lo_closed),
                };
                let (hi, hi_closed) = match (a.hi, b.hi) {
                    (None, None) => (None, false),
                    (Some(h), None) => (Some(h), a.hi_closed),
                    (None, Some(h)) => (Some(h), b.hi_closed),
                    (Some(x), Some(y)) => match x.cmp(&y) {
                        Ordering::Less => (Some(x), a.hi_closed),
                        Ordering::Greater => (Some(y), b.hi_closed),
                        Ordering::Equal => (Some(x), a.hi_closed && b.hi_closed),
                    },
                };
                out.push(Interval { lo, lo_closed, hi, hi_closed });
            }
        }
        Self::from_intervals(out)
    }

    /// Complement within `[0, inf)`.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut start = Some((Rational::ZERO, true));
        for i in &self.parts {
            let (lo, lo_closed) = start.expect("unbounded part is last");
            out.push(Interval { lo, lo_closed, hi: Some(i.lo), hi_closed: !i.lo_closed });
            start = i.hi.map(|h| (h, !i.hi_closed));
        }
        if let Some((lo, lo_closed)) = start {
            out.push(Interval { lo, lo_closed, hi: None, hi_closed: false });
        }
        Self::from_intervals(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// `{u >= 0 : (u + window) meets self}`.
    pub fn exists_window(&self, w: Window) -> Self {
        if w.is_empty() {
            return Self::empty();
        }
        let raw = self
            .parts
            .iter()
            .map(|i| Raw {
                lo: w.hi.map(|b| i.lo - b),
                lo_closed: i.lo_closed && w.hi_closed,
                hi: i.hi.map(|h| h - w.lo),
                hi_closed: i.hi_closed && w.lo_closed,
            })
            .collect();
        Self::normalize(raw)
    }

    /// `{u >= 0 : (u + window) is contained in self}`.
    pub fn forall_window(&self, w: Window) -> Self {
        if w.is_empty() {
            return Self::all();
        }
        self.complement().exists_window(w).complement()
    }

    /// `{u >= 0 : u + c in self}`.
    pub fn shift_back(&self, c: Rational) -> Self {
        self.exists_window(Window::closed(c, c))
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        let pieces: Vec<String> = self
            .parts
            .iter()
            .map(|i| {
                let hi = match i.hi {
                    Some(h) => format!("{h}{}", if i.hi_closed { "]" } else { ")" }),
                    None => "inf)".to_string(),
                };
                format!("{}{}, {hi}", if i.lo_closed { "[" } else { "(" }, i.lo)
            })
            .collect();
        write!(f, "{}", pieces.join(" u "))
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::integer(n)
    }

    #[test]
    fn normalization_merges() {
        let u = IntervalUnion::closed_open(0, 4).union(&IntervalUnion::closed(4, 6));
        assert_eq!(u, IntervalUnion::closed(0, 6));
        let gap = IntervalUnion::closed_open(0, 4).union(&IntervalUnion::open(4, 6));
        assert_eq!(gap.intervals().len(), 2);
        assert!(!gap.contains(r(4)));
        assert_eq!(IntervalUnion::open(3, 3), IntervalUnion::empty());
        assert_eq!(IntervalUnion::closed(-5, 2), IntervalUnion::closed(0, 2));
    }

    #[test]
    fn complement_and_difference() {
        let s = IntervalUnion::closed_open(0, 7).union(&IntervalUnion::closed(10, 12));
        let c = s.complement();
        assert_eq!(c.to_string(), "[7, 10) u (12, inf)");
        assert_eq!(c.complement(), s);
        assert!(IntervalUnion::closed(1, 2).is_subset(&s));
        assert!(!IntervalUnion::closed(6, 8).is_subset(&s));
        assert_eq!(IntervalUnion::all().complement(), IntervalUnion::empty());
    }

    #[test]
    fn windows() {
        let s = IntervalUnion::closed(4, 10);
        // exists u' in [u, u+3] with u' in [4,10]  <=>  u in [1, 10]
        assert_eq!(s.exists_window(Window::closed(r(0), r(3))), IntervalUnion::closed(1, 10));
        // [u, u+3] inside [4, 10]  <=>  u in [4, 7]
        assert_eq!(s.forall_window(Window::closed(r(0), r(3))), IntervalUnion::closed(4, 7));
        assert_eq!(s.shift_back(r(2)), IntervalUnion::closed(2, 8));
        let open_end = IntervalUnion::closed_open(4, 10);
        assert_eq!(open_end.forall_window(Window::closed(r(0), r(3))), IntervalUnion::closed_open(4, 7));
        assert_eq!(s.exists_window(Window::from(r(2))), IntervalUnion::closed(0, 8));
        assert_eq!(
            s.forall_window(Window::closed_open(r(0), r(0))),
            IntervalUnion::all(),
            "empty window holds vacuously"
        );
    }
}
