//! Enumerate composition series by the socle recursion.

use std::sync::Arc;

use groupiso::construct::ConstructorSpec;
use groupiso::series::{ChoiceSeq, SocleLadder};

fn main() -> groupiso::Result<()> {
    let g = "dihedral:4".parse::<ConstructorSpec>()?.build()?;
    let ladder = Arc::new(SocleLadder::new(&g));
    println!("levels {}, candidates per level {:?}", ladder.depth(), ladder.candidate_counts());
    println!("{} choice sequences", ladder.count());
    for (choice, s) in ladder.iter() {
        let orders: Vec<usize> = s.chain.iter().map(|h| h.order()).collect();
        println!("  {choice:<10} {orders:?} socle terms {:?}", s.socle_flags);
    }

    let c: ChoiceSeq = "0;1,0".parse()?;
    match ladder.series(Some(&c)) {
        Ok(s) => println!("replayed {c}: length {}", s.length()),
        Err(e) => println!("{c}: {e}"),
    }
    Ok(())
}
