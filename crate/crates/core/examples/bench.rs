//! Small benchmark over constructed groups, written as CSV to stdout.

use groupiso::bench::{run_bench, write_csv, BenchConfig};
use groupiso::iso::{IsoMethod, IsoOptions};

fn main() -> groupiso::Result<()> {
    let cfg = BenchConfig {
        groups: ["cyclic:8", "direct-product:2,2,2", "dihedral:4", "quaternion8", "heisenberg:3"]
            .iter()
            .map(|s| s.parse())
            .collect::<groupiso::Result<_>>()?,
        methods: vec![IsoMethod::Auto, IsoMethod::Genenum],
        repetitions: 2,
        seed: 7,
        jobs: 2,
        options: IsoOptions::default(),
    };
    let rows = run_bench(&cfg)?;
    write_csv(&rows, std::io::stdout())?;
    Ok(())
}
