//! Decide isomorphism with each method and print the statistics.

use groupiso::construct::ConstructorSpec;
use groupiso::iso::{decide_iso, IsoMethod, IsoOptions};

fn main() -> groupiso::Result<()> {
    let pairs = [
        ("direct-product:4,2", "direct-product:2,4"),
        ("dihedral:4", "quaternion8"),
        ("heisenberg:3", "semidirect:9,3,4"),
        ("sym:3", "cyclic:6"),
    ];
    for (a, b) in pairs {
        let g = a.parse::<ConstructorSpec>()?.build()?;
        let h = b.parse::<ConstructorSpec>()?.build()?;
        for method in [IsoMethod::Auto, IsoMethod::Genenum, IsoMethod::Solvable] {
            let opts = IsoOptions { method, prefilter: false, ..Default::default() };
            match decide_iso(&g, &h, &opts) {
                Ok(v) => println!(
                    "{a} vs {b} [{}]: {} ({} choices, {} canonizations)",
                    v.method.tag(),
                    v.isomorphic,
                    v.stats.choices,
                    v.stats.canonizations
                ),
                Err(e) => println!("{a} vs {b} [{method:?}]: {e}"),
            }
        }
    }
    Ok(())
}
