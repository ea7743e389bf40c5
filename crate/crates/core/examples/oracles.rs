//! The brute-force reference procedures: three-valued BTL evaluation,
//! MDL evaluation over interval sets and difference-logic validity.

use rvmdl::formula::{Mdl, VarId};
use rvmdl::parse_btl;
use rvmdl::quotient::{RunPrefix, TimedState};
use rvmdl::rational::Rational;
use rvmdl::refsolver::{decide_dl, eval_btl, eval_mdl, monadic_sets, truth_sets, Valuation};
use rvmdl::translate::translate_z;

fn main() -> rvmdl::Result<()> {
    let run = RunPrefix::new(vec![
        TimedState::new([1], 0),
        TimedState::new([1, 2], 4),
        TimedState::new([2], 7),
        TimedState::new([1], 10),
    ])?;
    let horizon = Rational::integer(12);
    let psi = parse_btl("eventually[8] always[3] p2")?;

    let (t, f) = truth_sets(&run, horizon, &psi);
    println!("true on {t}, false on {f}");
    for u in [0, 2, 5, 9] {
        println!("at u = {u}: {}", eval_btl(&run, horizon, Rational::integer(u), &psi)?);
    }

    let sets = monadic_sets(&run, horizon)?;
    let val = Valuation::zero();
    println!("MDL translation at z = 0: {}", eval_mdl(&translate_z(&psi), &val, &sets)?);

    let (x, z) = (VarId(1), VarId::Z);
    for phi in [
        Mdl::exists(x, Mdl::and(Mdl::lt(z, x, 0), Mdl::le(x, z, 0))),
        Mdl::forall(x, Mdl::or(Mdl::le(x, z, 0), Mdl::lt(z, x, 0))),
        Mdl::le(x, z, 2),
    ] {
        println!("{phi}: {:?}", decide_dl(&phi)?);
    }
    Ok(())
}
