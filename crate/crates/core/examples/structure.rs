//! Minimal normal subgroups, socle, Sylow bases and classification.

use groupiso::construct::ConstructorSpec;
use groupiso::structure::{all_sylow_bases, classify, minimal_normal_subgroups, socle, sylow_basis};

fn main() -> groupiso::Result<()> {
    for spec in ["sym:4", "dihedral:6", "heisenberg:3", "alt:5"] {
        let g = spec.parse::<ConstructorSpec>()?.build()?;
        let c = classify(&g);
        println!("{spec}: order {} {:?}", g.order(), c.factorization);
        println!("  abelian {} nilpotent {} solvable {}", c.abelian, c.nilpotent, c.solvable);
        let mins: Vec<usize> = minimal_normal_subgroups(&g).iter().map(|m| m.order()).collect();
        println!("  minimal normal orders {mins:?}, socle order {}", socle(&g).order());
        if c.solvable {
            let b = sylow_basis(&g)?;
            let orders: Vec<usize> = b.subgroups.iter().map(|s| s.order()).collect();
            println!("  Sylow basis orders {orders:?}, {} bases in total", all_sylow_bases(&g, &b).len());
        }
    }
    Ok(())
}
