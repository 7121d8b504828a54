//! Canonical multiplication tables. Relabeled copies get identical forms.

use groupiso::construct::ConstructorSpec;
use groupiso::forms::{can_group_genenum, can_group_series, can_hall};
use groupiso::series::HallSeries;
use groupiso::structure::sylow_basis;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> groupiso::Result<()> {
    let g = "semidirect-pq:7,3,2".parse::<ConstructorSpec>()?.build()?;
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm[1..].shuffle(&mut ChaCha8Rng::seed_from_u64(1));
    let h = g.relabel(&perm)?;

    let (a, b) = (can_group_series(&g)?, can_group_series(&h)?);
    println!("series route:  {} {}", &a.digest()[..16], a == b);
    let (a, b) = (can_group_genenum(&g)?, can_group_genenum(&h)?);
    println!("genenum route: {} {}", &a.digest()[..16], a == b);

    let hs = HallSeries::default_for(&g, &sylow_basis(&g)?)?;
    let f = can_hall(&g, &hs)?;
    let sizes: Vec<usize> = f.form.sylows.iter().map(|s| s.len()).collect();
    println!("Hall form Sylow images {sizes:?}");
    print!("{}", f.form.group.to_gtab());
    Ok(())
}
