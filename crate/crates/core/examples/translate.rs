//! Translate a BTL property into monadic difference logic and report its
//! polarity.
//!
//! cargo run --example translate -- "always (p1 -> eventually[30] !p1)"

use rvmdl::parse_btl;
use rvmdl::translate::{translate_positive, translate_z};

fn main() -> rvmdl::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "eventually[8] always[3] p2".into());
    let psi = parse_btl(&text)?;
    println!("btl:       {psi}");
    println!("mdl:       {}", translate_z(&psi));

    let positive = translate_positive(&psi);
    println!("positive:  {positive}");
    let (pos, neg) = positive.polarity_sets();
    println!("positive predicates: {pos:?}");
    println!("negative predicates: {neg:?}");
    println!("homogeneous: {}", positive.is_homogeneous());
    Ok(())
}
