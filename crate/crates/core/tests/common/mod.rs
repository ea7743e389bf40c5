//! Seeded random generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rvmdl::formula::{Btl, Mdl, VarId};
use rvmdl::quotient::{RunPrefix, TimedState};
use rvmdl::rational::{Bound, Rational};
use rvmdl::refsolver::{Interval, IntervalUnion};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(n: i64) -> Rational {
    Rational::integer(n)
}

/// `n / 2` for `n` drawn from `[2 lo, 2 hi]`.
pub fn half_step(rng: &mut TestRng, lo: i64, hi: i64) -> Rational {
    Rational::new(rng.gen_range(2 * lo..=2 * hi), 2)
}

fn window_const(rng: &mut TestRng) -> Rational {
    *[r(0), r(1), r(2), r(3), r(4), r(5), Rational::new(1, 2), Rational::new(5, 2)].choose(rng).unwrap()
}

fn literal(rng: &mut TestRng, props: u32) -> Btl {
    let p = Btl::prop(rng.gen_range(1..=props));
    if rng.gen_bool(0.3) {
        Btl::not(p)
    } else {
        p
    }
}

/// Random BTL formula over `p1..p{props}` with at most `depth` nested
/// temporal operators.
pub fn random_btl(rng: &mut TestRng, depth: u32, props: u32) -> Btl {
    if depth == 0 || rng.gen_bool(0.2) {
        return literal(rng, props);
    }
    let sub = |rng: &mut TestRng| random_btl(rng, depth - 1, props);
    match rng.gen_range(0..13) {
        0 => Btl::and(sub(rng), sub(rng)),
        1 => Btl::or(sub(rng), sub(rng)),
        2 => Btl::not(sub(rng)),
        3 => Btl::implies(sub(rng), sub(rng)),
        4 | 5 => Btl::always(window_const(rng), sub(rng)),
        6 | 7 => Btl::eventually(window_const(rng), sub(rng)),
        8 => Btl::until_exact(window_const(rng), sub(rng), sub(rng)),
        9 => Btl::until(sub(rng), sub(rng)),
        10 => {
            let a = window_const(rng);
            let b = a + window_const(rng);
            Btl::between(a, b, sub(rng))
        }
        11 => Btl::after(window_const(rng), sub(rng)),
        _ => {
            if rng.gen_bool(0.5) {
                Btl::always_unbounded(sub(rng))
            } else {
                Btl::iff(literal(rng, props), sub(rng))
            }
        }
    }
}

/// Random run prefix starting at 0 with `len` states.
pub fn random_run(rng: &mut TestRng, props: u32, len: usize) -> RunPrefix {
    let mut states = Vec::with_capacity(len);
    let mut t = r(0);
    for i in 0..len {
        if i > 0 {
            t = t + *[Rational::new(1, 2), r(1), Rational::new(3, 2), r(2), r(3)].choose(rng).unwrap();
        }
        let held: Vec<u32> = (1..=props).filter(|_| rng.gen_bool(0.5)).collect();
        states.push(TimedState::new(held, t));
    }
    RunPrefix::new(states).expect("valid prefix")
}

/// Random union of a few intervals inside `[0, span]`, endpoints on a half grid.
pub fn random_set(rng: &mut TestRng, span: i64) -> IntervalUnion {
    let mut parts = Vec::new();
    for _ in 0..rng.gen_range(0..4) {
        let a = half_step(rng, 0, span);
        let b = a + half_step(rng, 0, 4);
        parts.push(Interval { lo: a, lo_closed: rng.gen_bool(0.5), hi: Some(b), hi_closed: rng.gen_bool(0.5) });
    }
    if rng.gen_bool(0.15) {
        parts.push(Interval { lo: half_step(rng, 0, span), lo_closed: true, hi: None, hi_closed: false });
    }
    IntervalUnion::from_intervals(parts)
}

pub fn random_sets(rng: &mut TestRng, k: u32, span: i64) -> Vec<IntervalUnion> {
    (0..k).map(|_| random_set(rng, span)).collect()
}

/// Random sub-interval of `[lo, hi]` (possibly degenerate).
pub fn random_subinterval(rng: &mut TestRng, lo: Rational, hi: Rational) -> IntervalUnion {
    let pick = |rng: &mut TestRng| {
        let steps = 8;
        let k = rng.gen_range(0..=steps);
        lo + Rational::new(k, steps) * (hi - lo)
    };
    let (a, b) = (pick(rng), pick(rng));
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    IntervalUnion::from_intervals([Interval {
        lo: a,
        lo_closed: rng.gen_bool(0.5),
        hi: Some(b),
        hi_closed: rng.gen_bool(0.5),
    }])
}

/// Replaces `s` inside `region` by random content.
pub fn mutate_inside(rng: &mut TestRng, s: &IntervalUnion, lo: Rational, hi: Rational) -> IntervalUnion {
    let mut out = s.clone();
    for _ in 0..rng.gen_range(1..4) {
        let region = random_subinterval(rng, lo, hi);
        out = if rng.gen_bool(0.5) { out.union(&region) } else { out.difference(&region) };
    }
    out
}

/// Constants come mostly from a small per-formula pool so that bounds meet
/// exactly and strictness matters.
struct Consts {
    pool: Vec<Rational>,
    /// chance of a constant outside the pool
    wide: f64,
}

fn random_bound(rng: &mut TestRng, consts: &Consts) -> Bound {
    let c = if rng.gen_bool(consts.wide) { half_step(rng, -10, 10) } else { *consts.pool.choose(rng).unwrap() };
    let c = if rng.gen_bool(0.3) { -c } else { c };
    if rng.gen_bool(0.5) {
        Bound::lt(c)
    } else {
        Bound::le(c)
    }
}

/// Random predicate-free formula whose only free variable is `z`: at most
/// `max_vars` bound variables, `max_atoms` atoms and quantifier depth
/// `max_depth`; constants `n/2` in `[-10, 10]`.
pub fn random_dl_formula(rng: &mut TestRng, max_vars: u32, max_atoms: u32, max_depth: u32) -> Mdl {
    let mut next_var = 1;
    let atoms = rng.gen_range(1..=max_atoms);
    let pool: Vec<Rational> =
        if rng.gen_bool(0.5) { (0..=2).map(r).collect() } else { (0..3).map(|_| half_step(rng, 0, 5)).collect() };
    gen_dl(rng, &[VarId::Z], atoms, max_depth, &mut next_var, max_vars, &Consts { pool, wide: 0.3 })
}

/// Random predicate-free formula with free variables `z, x1..x{free}` and
/// constants in `{-1, 0, 1}`, so that cycles of zero weight are common.
pub fn random_open_dl_formula(rng: &mut TestRng, free: u32, max_vars: u32, max_atoms: u32, max_depth: u32) -> Mdl {
    let scope: Vec<VarId> = std::iter::once(VarId::Z).chain((1..=free).map(VarId)).collect();
    let mut next_var = free + 1;
    let atoms = rng.gen_range(1..=max_atoms);
    let consts = Consts { pool: vec![r(0), r(0), r(1)], wide: 0.0 };
    gen_dl(rng, &scope, atoms, max_depth, &mut next_var, free + max_vars, &consts)
}

fn gen_dl(
    rng: &mut TestRng,
    scope: &[VarId],
    atoms: u32,
    depth: u32,
    next: &mut u32,
    max_vars: u32,
    pool: &Consts,
) -> Mdl {
    let can_bind = depth > 0 && *next <= max_vars;
    // a quantifier is needed before the first atom can relate two variables
    if can_bind && (scope.len() == 1 || rng.gen_bool(0.35)) {
        let v = VarId(*next);
        *next += 1;
        let mut inner = scope.to_vec();
        inner.push(v);
        let body = gen_dl(rng, &inner, atoms, depth - 1, next, max_vars, pool);
        return if rng.gen_bool(0.5) { Mdl::forall(v, body) } else { Mdl::exists(v, body) };
    }
    if atoms <= 1 || scope.len() == 1 {
        if scope.len() == 1 {
            return Mdl::constant(rng.gen_bool(0.5));
        }
        let mut pick = scope.to_vec();
        pick.shuffle(rng);
        let a = Mdl::diff(pick[0], pick[1], random_bound(rng, pool));
        return if rng.gen_bool(0.25) { Mdl::not(a) } else { a };
    }
    let left = rng.gen_range(1..atoms);
    let a = gen_dl(rng, scope, left, depth, next, max_vars, pool);
    let b = gen_dl(rng, scope, atoms - left, depth, next, max_vars, pool);
    match rng.gen_range(0..5) {
        0 | 1 => Mdl::and(a, b),
        2 | 3 => Mdl::or(a, b),
        _ => Mdl::not(Mdl::and(a, b)),
    }
}
