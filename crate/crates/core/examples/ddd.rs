//! Difference decision diagrams: construction, quantifier elimination and
//! the tautology / unsatisfiability checks.

use rvmdl::ddd::DddManager;
use rvmdl::formula::{Mdl, VarId};

fn main() -> rvmdl::Result<()> {
    let (x1, x2, z) = (VarId(1), VarId(2), VarId::Z);
    let mut m = DddManager::new();

    // 0 <= x1 - z <= 8 and x2 - x1 <= 3
    let body = Mdl::all([Mdl::le(z, x1, 0), Mdl::le(x1, z, 8), Mdl::le(x2, x1, 3)]);
    let d = m.build(&body)?;
    println!("{} nodes\n{}", m.size(d), m.dump(d));

    let e = m.exists(x1, d);
    println!("exists x1:\n{}", m.dump(e));

    // x2 - z <= 11 follows; x2 - z <= 10 does not
    for c in [11, 10] {
        let claim = m.build(&Mdl::le(x2, z, c))?;
        let not_e = m.negate(e);
        let implication = m.or(not_e, claim);
        println!("exists x1 -> x2 - z <= {c}: tautology = {}", m.is_taut(implication));
    }

    // a closed formula folds to a terminal
    let closed = Mdl::forall(x1, Mdl::implies(Mdl::le(x1, z, 0), Mdl::lt(x1, z, 1)));
    let t = m.build_closed(&closed)?;
    println!("{closed}  =>  {}", if m.is_taut(t) { "valid" } else { "not valid" });
    Ok(())
}
