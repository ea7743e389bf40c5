//! Quotient a formula by the states of a run, one step at a time.

use std::collections::BTreeSet;

use rvmdl::formula::PropId;
use rvmdl::parse_btl;
use rvmdl::quotient::{quotient_initial, quotient_step, TimedState};
use rvmdl::translate::translate_positive;

fn main() -> rvmdl::Result<()> {
    let psi = parse_btl("eventually[8] always[3] p2")?;
    let run = [TimedState::new([1], 0), TimedState::new([1, 2], 4), TimedState::new([2], 7)];

    let s0: BTreeSet<PropId> = run[0].state.clone();
    let mut phi = quotient_initial(&translate_positive(&psi), &s0).simplify_constants();
    println!("after {}: {phi}", run[0]);
    for w in run.windows(2) {
        phi = quotient_step(&phi, &w[0], &w[1])?.simplify_constants();
        println!("after {}: {phi}", w[1]);
    }
    // predicates only survive outside the observed prefix
    println!("predicates left: {:?}", phi.preds());
    Ok(())
}
