//! The online verification loop.
//!
//! The monitor keeps the quotient of the property by everything observed so
//! far. After each step it replaces all literal predicates by false (giving
//! `phi0`) and by true (giving `phi1`). If `phi0` is a tautology the property
//! holds on every continuation; if `phi1` is unsatisfiable it holds on none.
//! Both tests are sound. They are complete when no predicate occurs with
//! both polarities.
//!
//! With timers enabled the monitor also computes the earliest time at which,
//! if the state does not change, one of the two tests would succeed. It then
//! injects a synthetic state at that time.

use std::collections::BTreeSet;
use std::fmt;

use crate::ddd::{Ddd, DddManager};
use crate::error::{Error, Result};
use crate::formula::{Btl, Mdl, PropId, VarId, VarSupply};
use crate::quotient::{quotient_initial, quotient_step, quotient_symbolic, TimedState};
use crate::rational::Rational;
use crate::refsolver::{decide_dl, DlVerdict};
use crate::translate::translate_positive;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VerdictKind {
    Undetermined,
    Fulfilled,
    Failed,
}

impl VerdictKind {
    pub fn is_decided(self) -> bool {
        self != VerdictKind::Undetermined
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::Undetermined => "undetermined",
            VerdictKind::Fulfilled => "fulfilled",
            VerdictKind::Failed => "failed",
        }
    }
}

/// What produced a verdict.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Source {
    Initial,
    Event,
    Timer,
}

impl Source {
    pub fn as_str(self) -> &'static str {
        match self {
            Source::Initial => "initial",
            Source::Event => "event",
            Source::Timer => "timer",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub time: Rational,
    pub source: Source,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {} ({})", self.kind.as_str(), self.time, self.source.as_str())
    }
}

/// Decides predicate-free formulas whose only free variable is `z`.
pub trait DecisionBackend {
    fn is_taut(&mut self, phi: &Mdl) -> Result<bool>;
    fn is_unsat(&mut self, phi: &Mdl) -> Result<bool>;
}

/// Decision diagrams; the manager is reused across steps.
#[derive(Default)]
pub struct DddBackend {
    manager: DddManager,
}

/// Past this many nodes the manager is replaced by a fresh one.
const MANAGER_LIMIT: usize = 1 << 20;

impl DddBackend {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn manager(&mut self) -> &mut DddManager {
        if self.manager.node_count() > MANAGER_LIMIT {
            self.manager = DddManager::new();
        }
        &mut self.manager
    }

    fn build(&mut self, phi: &Mdl) -> Result<Ddd> {
        self.manager().build_closed(phi)
    }
}

impl DecisionBackend for DddBackend {
    fn is_taut(&mut self, phi: &Mdl) -> Result<bool> {
        let d = self.build(phi)?;
        Ok(self.manager.is_taut(d))
    }

    fn is_unsat(&mut self, phi: &Mdl) -> Result<bool> {
        let d = self.build(phi)?;
        Ok(self.manager.is_unsat(d))
    }
}

/// The DNF/Fourier-Motzkin reference procedure. Only for small formulas.
#[derive(Default)]
pub struct ReferenceBackend;

impl DecisionBackend for ReferenceBackend {
    fn is_taut(&mut self, phi: &Mdl) -> Result<bool> {
        Ok(decide_dl(phi)? == DlVerdict::Valid)
    }

    fn is_unsat(&mut self, phi: &Mdl) -> Result<bool> {
        Ok(decide_dl(phi)? == DlVerdict::Unsatisfiable)
    }
}

/// Verdict of a quotiented formula by the two literal substitutions.
pub fn decide<B: DecisionBackend>(backend: &mut B, phi: &Mdl) -> Result<VerdictKind> {
    if backend.is_taut(&phi.literal_substitute(false))? {
        Ok(VerdictKind::Fulfilled)
    } else if backend.is_unsat(&phi.literal_substitute(true))? {
        Ok(VerdictKind::Failed)
    } else {
        Ok(VerdictKind::Undetermined)
    }
}

/// Earliest time from `t` at which, with the state held at `s`, `phi0`
/// becomes a tautology; `None` when that never happens.
pub fn compute_ett(manager: &mut DddManager, phi: &Mdl, s: &BTreeSet<PropId>, t: Rational) -> Result<Option<Rational>> {
    earliest(manager, phi, s, t, false)
}

/// Earliest time from `t` at which, with the state held at `s`, `phi1`
/// becomes unsatisfiable; `None` when that never happens.
pub fn compute_eut(manager: &mut DddManager, phi: &Mdl, s: &BTreeSet<PropId>, t: Rational) -> Result<Option<Rational>> {
    earliest(manager, phi, s, t, true)
}

/// Both tests are monotone in the end time `t'`: a longer stretch of the same
/// state only adds knowledge. The quotient with `t'` left symbolic, once its
/// quantifiers are eliminated, only compares `t'` against constants. Between
/// those constants the answer cannot change, so it suffices to check each
/// constant, one point inside each gap and one point past the last.
fn earliest(
    manager: &mut DddManager,
    phi: &Mdl,
    s: &BTreeSet<PropId>,
    t: Rational,
    unsat: bool,
) -> Result<Option<Rational>> {
    let holds = |m: &mut DddManager, f: &Mdl| -> Result<bool> {
        let d = m.build_closed(&f.literal_substitute(unsat))?;
        Ok(if unsat { m.is_unsat(d) } else { m.is_taut(d) })
    };
    if holds(manager, phi)? {
        return Ok(Some(t));
    }
    let end = VarSupply::after(phi).fresh();
    let symbolic = quotient_symbolic(phi, s, t, end).literal_substitute(unsat);
    let d = manager.build(&symbolic)?;
    if d.is_terminal() && (d == Ddd::TRUE) == unsat {
        // constant and never decisive
        return Ok(None);
    }
    let mut breaks = BTreeSet::new();
    for n in manager.reachable(d) {
        let (a, _, _) = manager.node(n).expect("inner node");
        if a.x == VarId::Z && a.y == end {
            // z - end ⋈ c  reads  t' ⋈' -c
            breaks.insert(-a.bound.value);
        } else if a.x == end && a.y == VarId::Z {
            breaks.insert(a.bound.value);
        }
    }
    let mut candidates = Vec::new();
    let mut prev = t;
    for b in breaks.into_iter().filter(|b| *b > t) {
        candidates.push(prev.midpoint(&b));
        candidates.push(b);
        prev = b;
    }
    candidates.push(prev + Rational::ONE);
    let here = TimedState { state: s.clone(), time: t };
    for c in candidates {
        let q = quotient_step(phi, &here, &TimedState { state: s.clone(), time: c })?;
        if holds(manager, &q)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Upper bound on timer injections between two events.
const MAX_TIMERS: usize = 64;

/// Online monitor for one BTL property.
pub struct Monitor<B: DecisionBackend = DddBackend> {
    phi: Mdl,
    state: BTreeSet<PropId>,
    time: Rational,
    verdict: Verdict,
    backend: B,
    timers: DddManager,
}

impl Monitor<DddBackend> {
    /// Starts monitoring `psi` from initial state `s0` at time 0.
    pub fn new(psi: &Btl, s0: BTreeSet<PropId>) -> Result<Self> {
        Monitor::with_backend(psi, s0, DddBackend::new())
    }
}

impl<B: DecisionBackend> Monitor<B> {
    pub fn with_backend(psi: &Btl, s0: BTreeSet<PropId>, mut backend: B) -> Result<Self> {
        let phi = quotient_initial(&translate_positive(psi), &s0).simplify_constants();
        let kind = decide(&mut backend, &phi)?;
        Ok(Monitor {
            phi,
            state: s0,
            time: Rational::ZERO,
            verdict: Verdict { kind, time: Rational::ZERO, source: Source::Initial },
            backend,
            timers: DddManager::new(),
        })
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    /// The current quotient, in positive form.
    pub fn formula(&self) -> &Mdl {
        &self.phi
    }

    pub fn time(&self) -> Rational {
        self.time
    }

    pub fn state(&self) -> &BTreeSet<PropId> {
        &self.state
    }

    fn step(&mut self, next: &TimedState, source: Source) -> Result<Verdict> {
        if self.verdict.kind.is_decided() {
            return Err(Error::AlreadyDecided(self.verdict.to_string()));
        }
        let here = TimedState { state: self.state.clone(), time: self.time };
        self.phi = quotient_step(&self.phi, &here, next)?.simplify_constants();
        self.state = next.state.clone();
        self.time = next.time;
        let kind = decide(&mut self.backend, &self.phi)?;
        self.verdict = Verdict { kind, time: next.time, source };
        Ok(self.verdict)
    }

    /// Consumes the next observed state.
    pub fn feed(&mut self, next: &TimedState) -> Result<Verdict> {
        self.step(next, Source::Event)
    }

    /// Injects the current state again at time `at`.
    pub fn fire_timer(&mut self, at: Rational) -> Result<Verdict> {
        let next = TimedState { state: self.state.clone(), time: at };
        self.step(&next, Source::Timer)
    }

    /// `min(ETT, EUT)` from the current time, when finite and in the future.
    pub fn next_deadline(&mut self) -> Result<Option<Rational>> {
        if self.verdict.kind.is_decided() {
            return Ok(None);
        }
        if self.timers.node_count() > MANAGER_LIMIT {
            self.timers = DddManager::new();
        }
        let ett = compute_ett(&mut self.timers, &self.phi, &self.state, self.time)?;
        let eut = compute_eut(&mut self.timers, &self.phi, &self.state, self.time)?;
        let et = match (ett, eut) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Ok(et.filter(|&e| e > self.time))
    }

    /// Timer-driven step: fires every deadline that falls strictly before
    /// `next` (or, at the end of input, every remaining deadline), then feeds
    /// `next` unless a timer already decided the property.
    pub fn feed_timed(&mut self, next: Option<&TimedState>) -> Result<Vec<Verdict>> {
        if self.verdict.kind.is_decided() {
            return Err(Error::AlreadyDecided(self.verdict.to_string()));
        }
        let mut out = Vec::new();
        for _ in 0..MAX_TIMERS {
            let Some(due) = self.next_deadline()? else { break };
            if matches!(next, Some(n) if due >= n.time) {
                break;
            }
            let v = self.fire_timer(due)?;
            out.push(v);
            if v.kind.is_decided() {
                return Ok(out);
            }
        }
        if let Some(n) = next {
            out.push(self.feed(n)?);
        }
        Ok(out)
    }
}
