//! Online monitoring of the running example, one verdict per event.

use rvmdl::monitor::Monitor;
use rvmdl::parse_btl;
use rvmdl::quotient::TimedState;

fn main() -> rvmdl::Result<()> {
    let psi = parse_btl("eventually[8] always[3] p2")?;
    let events = [TimedState::new([1, 2], 4), TimedState::new([2], 7), TimedState::new([1], 10)];

    let mut m = Monitor::new(&psi, [1].map(rvmdl::PropId::new).into())?;
    println!("{}", m.verdict());
    for e in &events {
        if m.verdict().kind.is_decided() {
            break;
        }
        println!("{}", m.feed(e)?);
    }
    Ok(())
}
