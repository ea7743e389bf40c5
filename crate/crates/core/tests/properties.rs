//! Algebraic and oracle-based properties of the reference procedures and the
//! diagram package.

mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::{r, rng};
use rvmdl::ddd::{path_feasible, DddManager, NormAtom};
use rvmdl::formula::{parse_btl, Mdl, VarId};
use rvmdl::rational::{Bound, Rational};
use rvmdl::refsolver::{
    decide_dl, eval_mdl, eval_mdl_with_density, feasible, fm_eliminate, Constraint, DlVerdict, Interval, IntervalUnion,
    Valuation, Window,
};
use rvmdl::translate::translate_z;

fn eighth(n: i64) -> Rational {
    Rational::new(n, 8)
}

prop_compose! {
    fn interval()(a in 0i64..40, len in 0i64..10, lc: bool, hc: bool, open_end in prop::bool::weighted(0.1)) -> Interval {
        let lo = Rational::new(a, 2);
        let hi = if open_end { None } else { Some(lo + Rational::new(len, 2)) };
        Interval { lo, lo_closed: lc, hi, hi_closed: hc }
    }
}

fn union() -> impl Strategy<Value = IntervalUnion> {
    prop::collection::vec(interval(), 0..4).prop_map(IntervalUnion::from_intervals)
}

prop_compose! {
    fn window()(a in 0i64..8, len in 0i64..8, lc: bool, hc: bool, open_end in prop::bool::weighted(0.15)) -> Window {
        let lo = Rational::new(a, 2);
        let hi = if open_end { None } else { Some(lo + Rational::new(len, 2)) };
        Window { lo, lo_closed: lc, hi, hi_closed: hc }
    }
}

/// Points on an eighth grid covering every endpoint neighbourhood.
fn probes() -> impl Iterator<Item = Rational> {
    (0..=200).map(eighth)
}

fn window_contains(w: &Window, d: Rational) -> bool {
    let above = if w.lo_closed { d >= w.lo } else { d > w.lo };
    let below = match w.hi {
        None => true,
        Some(h) if w.hi_closed => d <= h,
        Some(h) => d < h,
    };
    above && below
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn boolean_algebra(a in union(), b in union()) {
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersect(&b.complement()));
        prop_assert_eq!(a.intersect(&b), b.intersect(&a));
        prop_assert!(a.intersect(&b).is_subset(&a));
        prop_assert!(a.is_subset(&a.union(&b)));
        for t in probes() {
            prop_assert_eq!(a.union(&b).contains(t), a.contains(t) || b.contains(t));
            prop_assert_eq!(a.intersect(&b).contains(t), a.contains(t) && b.contains(t));
            prop_assert_eq!(a.difference(&b).contains(t), a.contains(t) && !b.contains(t));
            prop_assert_eq!(a.complement().contains(t), !a.contains(t));
        }
    }

    #[test]
    fn normal_form_is_canonical(parts in prop::collection::vec(interval(), 0..5)) {
        let mut shuffled = parts.clone();
        shuffled.reverse();
        let a = IntervalUnion::from_intervals(parts);
        prop_assert_eq!(a.clone(), IntervalUnion::from_intervals(shuffled));
        // disjoint, sorted, non-adjacent pieces
        for w in a.intervals().windows(2) {
            let hi = w[0].hi.expect("only the last piece is unbounded");
            prop_assert!(hi < w[1].lo || (hi == w[1].lo && !w[0].hi_closed && !w[1].lo_closed));
        }
    }

    #[test]
    fn windows_match_pointwise_search(a in union(), w in window()) {
        // witnesses live on a sixteenth grid: endpoints are on an eighth grid
        let witnesses: Vec<Rational> = (0..=16 * 30).map(|n| Rational::new(n, 16)).filter(|d| window_contains(&w, *d)).collect();
        let unbounded = w.hi.is_none();
        let ex = a.exists_window(w);
        let all = a.forall_window(w);
        for u in (0..=120).map(eighth) {
            let mut some = witnesses.iter().any(|d| a.contains(u + *d));
            let mut every = witnesses.iter().all(|d| a.contains(u + *d));
            if unbounded {
                // far tail of the window
                let far = u + r(40);
                some |= a.contains(far);
                every &= a.contains(far);
            }
            prop_assert_eq!(ex.contains(u), some, "exists at {}", u);
            prop_assert_eq!(all.contains(u), every, "forall at {}", u);
        }
    }

    #[test]
    fn shift_back_is_translation(a in union(), c in 0i64..10) {
        let c = Rational::new(c, 2);
        let s = a.shift_back(c);
        for u in probes() {
            prop_assert_eq!(s.contains(u), a.contains(u + c));
        }
    }

    #[test]
    fn rational_round_trip(n in -10_000i64..10_000, d in 1i64..500) {
        let q = Rational::new(n, d);
        prop_assert_eq!(q.to_string().parse::<Rational>().unwrap(), q);
    }

    #[test]
    fn bound_complement_splits_the_line(c in -20i64..20, strict: bool, d in -100i64..100) {
        let b = if strict { Bound::lt(Rational::new(c, 2)) } else { Bound::le(Rational::new(c, 2)) };
        let d = eighth(d);
        // x - y ⋈ c  fails exactly when  y - x ⋈' -c  holds
        prop_assert_ne!(b.admits(d), b.complement().admits(-d));
        prop_assert_eq!(b.complement().complement(), b);
    }
}

#[test]
fn btl_printer_round_trips() {
    let mut g = rng(11);
    for _ in 0..500 {
        let psi = common::random_btl(&mut g, 3, 3);
        let text = psi.to_string();
        assert_eq!(parse_btl(&text).unwrap(), psi, "{text}");
    }
}

fn random_constraints(g: &mut common::TestRng, vars: u32, n: usize) -> Vec<Constraint> {
    let vs: Vec<VarId> = (0..vars).map(VarId).collect();
    (0..n)
        .map(|_| {
            let mut pick = vs.clone();
            pick.shuffle(g);
            let c = Rational::integer(g.gen_range(-2..=2));
            let b = if g.gen_bool(0.5) { Bound::lt(c) } else { Bound::le(c) };
            Constraint::new(pick[0], pick[1], b)
        })
        .collect()
}

#[test]
fn elimination_preserves_feasibility() {
    let mut g = rng(12);
    let mut infeasible = 0;
    for _ in 0..1000 {
        let n = g.gen_range(1..8);
        let cs = random_constraints(&mut g, 4, n);
        let v = VarId(g.gen_range(1..4));
        let projected = fm_eliminate(v, &cs);
        assert!(projected.iter().all(|c| c.x != v && c.y != v));
        assert_eq!(feasible(&cs), feasible(&projected), "{cs:?} without {v}");
        infeasible += !feasible(&cs) as usize;
    }
    assert!(infeasible > 50, "too few infeasible systems ({infeasible})");
}

#[test]
fn path_check_matches_reference_feasibility() {
    let mut g = rng(13);
    for _ in 0..1000 {
        let n = g.gen_range(1..7);
        let cs = random_constraints(&mut g, 4, n);
        let path: Vec<(NormAtom, bool)> = cs
            .iter()
            .map(|c| {
                // store each constraint as an atom in normal orientation
                if c.x < c.y {
                    (NormAtom { x: c.x, y: c.y, bound: c.bound }, true)
                } else {
                    (NormAtom { x: c.y, y: c.x, bound: c.bound.complement() }, false)
                }
            })
            .collect();
        assert_eq!(path_feasible(&path), feasible(&cs), "{cs:?}");
    }
}

/// Truth of an open formula at a valuation, evaluated directly on atoms.
fn direct_eval(phi: &Mdl, val: &Valuation) -> bool {
    eval_mdl(phi, val, &[]).expect("predicate-free")
}

#[test]
fn diagrams_decide_open_formulas_like_the_reference() {
    let mut g = rng(14);
    let mut m = DddManager::new();
    let mut seen = [0usize; 3];
    for i in 0..800 {
        if i % 100 == 0 {
            m = DddManager::new();
        }
        let free = g.gen_range(1..=3);
        let phi = common::random_open_dl_formula(&mut g, free, 2, 6, 2);
        let d = m.build(&phi).unwrap();
        m.validate(d).unwrap_or_else(|e| panic!("{phi}: {e}"));
        let expected = decide_dl(&phi).unwrap();
        let got = if m.is_taut(d) {
            DlVerdict::Valid
        } else if m.is_unsat(d) {
            DlVerdict::Unsatisfiable
        } else {
            DlVerdict::Contingent
        };
        assert_eq!(got, expected, "{phi}\n{}", m.dump(d));
        seen[got as usize] += 1;

        for _ in 0..20 {
            let mut val = Valuation::zero();
            for v in 1..=free {
                val.set(VarId(v), Some(Rational::new(g.gen_range(-6..=6), 2)));
            }
            let value = |v: VarId| val.get(v).expect("free variable");
            assert_eq!(m.eval(d, value), direct_eval(&phi, &val), "{phi} at {val:?}");
        }
    }
    assert!(seen.iter().all(|&n| n > 30), "verdict mix {seen:?}");
}

#[test]
fn negation_is_an_involution() {
    let mut g = rng(15);
    let mut m = DddManager::new();
    for _ in 0..100 {
        let phi = common::random_open_dl_formula(&mut g, 3, 1, 8, 1);
        let d = m.build(&phi).unwrap();
        let n = m.negate(d);
        assert_eq!(m.negate(n), d);
        let built = m.build(&Mdl::not(phi.clone())).unwrap();
        assert_eq!(built, n, "{phi}");
        m.validate(n).unwrap();
    }
}

/// Region-style grid oracle for closed formulas. With constants multiples of
/// `g` and at most `m` units in size, every quantifier can pick its witness
/// within `m + 1` units of the variables already placed, on a grid half as
/// fine as theirs.
fn grid_eval(phi: &Mdl, val: &mut BTreeMap<VarId, Rational>, level: u32, g: Rational, m: i64) -> bool {
    match phi {
        Mdl::True => true,
        Mdl::False => false,
        Mdl::Pred { .. } => panic!("predicate in a difference formula"),
        Mdl::Diff(a) => a.holds(val[&a.x] - val[&a.y]),
        Mdl::Not(a) => !grid_eval(a, val, level, g, m),
        Mdl::And(a, b) => grid_eval(a, val, level, g, m) && grid_eval(b, val, level, g, m),
        Mdl::Or(a, b) => grid_eval(a, val, level, g, m) || grid_eval(b, val, level, g, m),
        Mdl::Forall(v, a) | Mdl::Exists(v, a) => {
            let universal = matches!(phi, Mdl::Forall(..));
            let steps = 1i64 << (level + 1);
            let span = (level as i64 + 1) * (m + 1) * steps;
            let pitch = g * Rational::new(1, steps);
            let saved = val.get(v).copied();
            let mut result = universal;
            for k in -span..=span {
                val.insert(*v, pitch * Rational::integer(k));
                if grid_eval(a, val, level + 1, g, m) != universal {
                    result = !universal;
                    break;
                }
            }
            match saved {
                Some(s) => val.insert(*v, s),
                None => val.remove(v),
            };
            result
        }
    }
}

fn grid_unit(phi: &Mdl) -> (Rational, i64) {
    let cs = phi.constants();
    let lcm = cs.iter().fold(1i64, |acc, c| {
        let d = c.denom();
        let gcd = (1..=acc.min(d)).rev().find(|k| acc % k == 0 && d % k == 0).unwrap_or(1);
        acc / gcd * d
    });
    let m = cs.iter().map(|c| (c.abs() * Rational::integer(lcm)).numer()).max().unwrap_or(0);
    (Rational::new(1, lcm), m)
}

#[test]
fn reference_procedure_matches_grid_oracle() {
    let mut g = rng(16);
    let mut counts = [0usize; 2];
    for i in 0..500 {
        let phi = if i % 2 == 0 {
            common::random_open_dl_formula(&mut g, 0, 2, 5, 2)
        } else {
            common::random_dl_formula(&mut g, 1, 4, 1)
        };
        let (unit, m) = grid_unit(&phi);
        let mut val = BTreeMap::from([(VarId::Z, Rational::ZERO)]);
        let truth = grid_eval(&phi, &mut val, 0, unit, m);
        let expected = if truth { DlVerdict::Valid } else { DlVerdict::Unsatisfiable };
        assert_eq!(decide_dl(&phi).unwrap(), expected, "{phi}");
        counts[truth as usize] += 1;
    }
    assert!(counts.iter().all(|&n| n > 50), "{counts:?}");
}

#[test]
fn sampling_density_does_not_change_values() {
    let mut g = rng(17);
    for _ in 0..500 {
        let psi = common::random_btl(&mut g, 2, 2);
        let phi = translate_z(&psi);
        let sets = common::random_sets(&mut g, 2, 12);
        let val = Valuation::zero().with(VarId::Z, common::half_step(&mut g, 0, 10));
        let base = eval_mdl(&phi, &val, &sets).unwrap();
        for density in [2, 4] {
            assert_eq!(eval_mdl_with_density(&phi, &val, &sets, density).unwrap(), base, "{psi} on {sets:?}");
        }
    }
}
