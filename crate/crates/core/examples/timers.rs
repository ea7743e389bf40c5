//! Timer injection: a property can become decided between events.

use std::collections::BTreeSet;

use rvmdl::monitor::Monitor;
use rvmdl::parse_btl;
use rvmdl::quotient::TimedState;

fn main() -> rvmdl::Result<()> {
    let psi = parse_btl("eventually[5] p & always[5] !p")?;

    let mut plain = Monitor::new(&psi, BTreeSet::new())?;
    for t in 1..=3 {
        println!("plain: {}", plain.feed(&TimedState::new([], t))?);
    }

    let mut timed = Monitor::new(&psi, BTreeSet::new())?;
    println!("next deadline: {:?}", timed.next_deadline()?.map(|t| t.to_string()));
    // an event at 9 would arrive too late: the timer fires first
    for v in timed.feed_timed(Some(&TimedState::new([], 9)))? {
        println!("timed: {v}");
    }
    Ok(())
}
