//! Earliest tautology and unsatisfiability times while a state persists.

use std::collections::BTreeSet;

use rvmdl::ddd::DddManager;
use rvmdl::formula::PropId;
use rvmdl::monitor::{compute_ett, compute_eut};
use rvmdl::parse_btl;
use rvmdl::rational::Rational;
use rvmdl::translate::translate_positive;

fn main() -> rvmdl::Result<()> {
    let mut m = DddManager::new();
    let held: BTreeSet<PropId> = [PropId::new(1)].into();
    for text in ["always[10] p1", "eventually[10] !p1", "always[4] p1 & eventually[6] !p1", "p1 U p2"] {
        let phi = translate_positive(&parse_btl(text)?);
        let show = |t: Option<Rational>| t.map_or("never".to_string(), |t| t.to_string());
        let ett = compute_ett(&mut m, &phi, &held, Rational::ZERO)?;
        let eut = compute_eut(&mut m, &phi, &held, Rational::ZERO)?;
        println!("{text:36} holding p1 from 0: ETT {:6} EUT {}", show(ett), show(eut));
    }
    Ok(())
}
