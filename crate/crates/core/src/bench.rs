//! Timing harness over constructed group pairs.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::ConstructorSpec;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::iso::{decide_iso, IsoMethod, IsoOptions};

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub groups: Vec<ConstructorSpec>,
    pub methods: Vec<IsoMethod>,
    pub repetitions: usize,
    pub seed: u64,
    pub jobs: usize,
    pub options: IsoOptions,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BenchRow {
    pub pair: String,
    pub method: String,
    pub route: String,
    pub order: usize,
    pub repetition: usize,
    pub isomorphic: Option<bool>,
    pub wall_ms: f64,
    pub choices: u64,
    pub canonizations: u64,
    pub error: String,
}

fn method_name(m: IsoMethod) -> &'static str {
    match m {
        IsoMethod::Auto => "auto",
        IsoMethod::Genenum => "genenum",
        IsoMethod::Pgroup => "pgroup",
        IsoMethod::Solvable => "solvable",
        IsoMethod::Randomized => "randomized",
    }
}

/// Each group against a shuffled copy of itself, and every two groups of
/// equal order against each other.
pub fn bench_pairs(cfg: &BenchConfig) -> Result<Vec<(String, GroupTable, GroupTable)>> {
    let built: Vec<GroupTable> = cfg.groups.iter().map(|s| s.build()).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pairs = Vec::new();
    for (s, g) in cfg.groups.iter().zip(&built) {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut rng);
        pairs.push((format!("{s} ~ {s}*"), g.clone(), g.relabel(&perm)?));
    }
    for i in 0..built.len() {
        for j in i + 1..built.len() {
            if built[i].order() == built[j].order() {
                pairs.push((format!("{} ~ {}", cfg.groups[i], cfg.groups[j]), built[i].clone(), built[j].clone()));
            }
        }
    }
    Ok(pairs)
}

pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let pairs = bench_pairs(cfg)?;
    let mut jobs = Vec::new();
    for (pi, _) in pairs.iter().enumerate() {
        for &m in &cfg.methods {
            for r in 0..cfg.repetitions.max(1) {
                jobs.push((pi, m, r));
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::BadParameters(e.to_string()))?;
    Ok(pool.install(|| {
        jobs.par_iter()
            .map(|&(pi, m, r)| {
                let (name, g, h) = &pairs[pi];
                let opts = IsoOptions { method: m, seed: cfg.seed.wrapping_add(r as u64), ..cfg.options.clone() };
                let mut row = BenchRow {
                    pair: name.clone(),
                    method: method_name(m).into(),
                    route: String::new(),
                    order: g.order(),
                    repetition: r,
                    isomorphic: None,
                    wall_ms: 0.0,
                    choices: 0,
                    canonizations: 0,
                    error: String::new(),
                };
                match decide_iso(g, h, &opts) {
                    Ok(v) => {
                        row.route = v.method.tag().into();
                        row.isomorphic = Some(v.isomorphic);
                        row.wall_ms = v.stats.wall_time.as_secs_f64() * 1000.0;
                        row.choices = v.stats.choices;
                        row.canonizations = v.stats.canonizations;
                    }
                    Err(e) => row.error = e.to_string(),
                }
                row
            })
            .collect()
    }))
}

pub fn write_csv<W: std::io::Write>(rows: &[BenchRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
