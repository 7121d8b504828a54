//! Randomized isomorphism test: no false positives, and detection
//! improves with the sample count.

use groupiso::construct::ConstructorSpec;
use groupiso::iso::{iso_randomized, IsoMethod, IsoOptions, RandomBase};

fn main() -> groupiso::Result<()> {
    let g = "dihedral:4".parse::<ConstructorSpec>()?.build()?;
    let q = "quaternion8".parse::<ConstructorSpec>()?.build()?;
    for base in [RandomBase::Series, RandomBase::Generators] {
        for samples in [1, 2, 4] {
            let mut hits = 0;
            for seed in 0..200 {
                let opts = IsoOptions { method: IsoMethod::Randomized, samples: Some(samples), seed, random_base: base, ..Default::default() };
                if iso_randomized(&g, &g, &opts)?.isomorphic {
                    hits += 1;
                }
                assert!(!iso_randomized(&g, &q, &opts)?.isomorphic);
            }
            println!("{base:?} samples {samples}: detected {hits}/200");
        }
    }
    Ok(())
}
