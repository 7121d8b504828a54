//! Command-line front end.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bench::{run_bench, write_csv, BenchConfig};
use crate::canon::{CanonOptions, DEFAULT_NODE_LIMIT};
use crate::construct::ConstructorSpec;
use crate::encoding::{build_x, build_x_hall, enumerate_genvectors};
use crate::error::{Error, Result};
use crate::forms::{can_group_genenum, can_group_series_with, can_hall_with, can_series_with, SeriesRoute};
use crate::group::{parse_gtab, GroupTable};
use crate::iso::{decide_iso, IsoMethod, IsoOptions, RandomBase};
use crate::numth::alpha;
use crate::series::{ChoiceSeq, HallSeries, SocleLadder};
use crate::structure::{all_sylow_bases, classify, is_simple, minimal_normal_subgroups, socle, sylow_basis};

#[derive(Parser, Debug)]
#[command(name = "groupiso", version, about = "Isomorphism testing and canonical forms for finite groups")]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 picks the number of cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Maximum search-tree nodes per graph canonization.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_LIMIT)]
    pub resource_limit: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether two groups are isomorphic (exit 0 yes, 1 no, 2 error).
    Iso(IsoArgs),
    /// Print a canonical multiplication table and its digest.
    Canon(CanonArgs),
    /// Print composition series from the socle recursion.
    Series(SeriesArgs),
    /// Print structural facts about a group.
    Analyze { file: PathBuf },
    /// Write a constructed group as .gtab.
    Gen {
        /// For example cyclic:8, dihedral:4, heisenberg:3, tight-family:64,3.
        spec: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time isomorphism methods on constructed pairs and write CSV.
    Bench(BenchArgs),
    /// Write the colored graph of a group in DIMACS-like text.
    GraphExport(GraphArgs),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum MethodArg {
    Auto,
    Genenum,
    Pgroup,
    Solvable,
    Randomized,
}

impl From<MethodArg> for IsoMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => IsoMethod::Auto,
            MethodArg::Genenum => IsoMethod::Genenum,
            MethodArg::Pgroup => IsoMethod::Pgroup,
            MethodArg::Solvable => IsoMethod::Solvable,
            MethodArg::Randomized => IsoMethod::Randomized,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum BaseArg {
    Series,
    Generators,
}

#[derive(Args, Debug)]
pub struct IsoArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: MethodArg,
    /// Samples per side for the randomized method.
    #[arg(long)]
    pub samples: Option<usize>,
    /// What the randomized method samples.
    #[arg(long, value_enum, default_value = "series")]
    pub base: BaseArg,
    /// Print the isomorphism found.
    #[arg(long)]
    pub witness: bool,
    /// Skip the element-order comparison.
    #[arg(long)]
    pub no_prefilter: bool,
}

#[derive(Args, Debug)]
pub struct CanonArgs {
    pub file: PathBuf,
    /// Canonical form of the default composition series.
    #[arg(long, conflicts_with_all = ["hall", "genenum"])]
    pub series: bool,
    /// Canonical form of the default Hall system.
    #[arg(long, conflicts_with = "genenum")]
    pub hall: bool,
    /// Canonical table by generator enumeration.
    #[arg(long)]
    pub genenum: bool,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    pub file: PathBuf,
    /// Every series instead of the default one.
    #[arg(long)]
    pub all: bool,
    /// Choice sequence such as "0,1;0" (levels separated by ';').
    #[arg(long, conflicts_with = "all")]
    pub choices: Option<String>,
    /// Only print the number of choice sequences.
    #[arg(long)]
    pub count: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Group specs, for example cyclic:8 direct-product:2,2,2.
    #[arg(long, num_args = 1.., required = true)]
    pub groups: Vec<String>,
    #[arg(long, value_enum, num_args = 1.., default_values = ["auto"])]
    pub methods: Vec<MethodArg>,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    pub file: PathBuf,
    /// Graph of the default Hall system with its first generator vector.
    #[arg(long)]
    pub hall: bool,
    /// Choice sequence for the composition series.
    #[arg(long, conflicts_with = "hall")]
    pub choices: Option<String>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

fn load(path: &Path) -> Result<GroupTable> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_gtab(&text)
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn members_line(m: &[u32], flag: bool) -> String {
    let s: Vec<String> = m.iter().map(|x| x.to_string()).collect();
    if flag {
        format!("{} *", s.join(" "))
    } else {
        s.join(" ")
    }
}

/// Runs the CLI and returns the process exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            if cli.json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            }
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let canon = CanonOptions { node_limit: cli.resource_limit, ..Default::default() };
    match &cli.command {
        Command::Iso(a) => {
            let g = load(&a.a)?;
            let h = load(&a.b)?;
            let opts = IsoOptions {
                method: a.method.into(),
                prefilter: !a.no_prefilter,
                samples: a.samples,
                seed: cli.seed,
                random_base: match a.base {
                    BaseArg::Series => RandomBase::Series,
                    BaseArg::Generators => RandomBase::Generators,
                },
                canon,
            };
            let v = decide_iso(&g, &h, &opts)?;
            let witness: Option<Vec<usize>> =
                if a.witness { v.witness.as_ref().map(|w| w.iter().map(|x| x + 1).collect()) } else { None };
            if cli.json {
                let mut j = json!({
                    "isomorphic": v.isomorphic,
                    "method": v.method.tag(),
                    "choices": v.stats.choices,
                    "canonizations": v.stats.canonizations,
                    "wall_ms": v.stats.wall_time.as_secs_f64() * 1000.0,
                });
                if let Some(w) = &witness {
                    j["witness"] = json!(w);
                }
                writeln!(out, "{j}")?;
            } else {
                writeln!(out, "{}", if v.isomorphic { "isomorphic" } else { "not isomorphic" })?;
                writeln!(out, "method: {}", v.method.tag())?;
                writeln!(out, "choices: {}", v.stats.choices)?;
                writeln!(out, "canonizations: {}", v.stats.canonizations)?;
                if let Some(w) = &witness {
                    let s: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                    writeln!(out, "witness: {}", s.join(" "))?;
                }
            }
            Ok(if v.isomorphic { 0 } else { 1 })
        }
        Command::Canon(a) => {
            let g = load(&a.file)?;
            if a.series {
                let s = crate::series::composition_series(&g, None)?;
                let f = can_series_with(&g, &s, &canon)?.form;
                if cli.json {
                    writeln!(out, "{}", json!({ "table": f.group.to_gtab(), "digest": f.group.digest(), "series": f.images }))?;
                } else {
                    write!(out, "{}", f.group.to_gtab())?;
                    writeln!(out, "digest: {}", f.group.digest())?;
                    for (img, flag) in f.images.iter().zip(&s.socle_flags) {
                        writeln!(out, "series: {}", members_line(img, *flag))?;
                    }
                }
            } else if a.hall {
                let hs = HallSeries::default_for(&g, &sylow_basis(&g)?)?;
                let f = can_hall_with(&g, &hs, &canon)?.form;
                if cli.json {
                    writeln!(
                        out,
                        "{}",
                        json!({ "table": f.group.to_gtab(), "digest": f.group.digest(), "sylows": f.sylows, "series": f.series })
                    )?;
                } else {
                    write!(out, "{}", f.group.to_gtab())?;
                    writeln!(out, "digest: {}", f.group.digest())?;
                    for (i, (p, s)) in f.sylows.iter().zip(&f.series).enumerate() {
                        writeln!(out, "sylow {} (p={}): {}", i + 1, hs.primes[i].0, members_line(p, false))?;
                        for term in s {
                            writeln!(out, "  {}", members_line(term, false))?;
                        }
                    }
                }
            } else {
                let f = if a.genenum { can_group_genenum(&g)? } else { can_group_series_with(&g, SeriesRoute::Auto, &canon)? };
                if cli.json {
                    writeln!(out, "{}", json!({ "table": f.to_gtab(), "digest": f.digest() }))?;
                } else {
                    write!(out, "{}", f.to_gtab())?;
                    writeln!(out, "digest: {}", f.digest())?;
                }
            }
            Ok(0)
        }
        Command::Series(a) => {
            let g = load(&a.file)?;
            let ladder = Arc::new(SocleLadder::new(&g));
            if a.count {
                let c = ladder.count();
                if cli.json {
                    writeln!(out, "{}", json!({ "count": c.to_string() }))?;
                } else {
                    writeln!(out, "{c}")?;
                }
                return Ok(0);
            }
            let list: Vec<(Option<ChoiceSeq>, crate::series::LabeledSeries)> = if a.all {
                ladder.iter().map(|(c, s)| (Some(c), s)).collect()
            } else {
                let c: Option<ChoiceSeq> = a.choices.as_deref().map(str::parse).transpose()?;
                let s = ladder.series(c.as_ref())?;
                vec![(c, s)]
            };
            for (i, (c, s)) in list.iter().enumerate() {
                let chain: Vec<Vec<u32>> =
                    s.chain.iter().map(|h| h.members().iter().map(|&x| x as u32 + 1).collect()).collect();
                if cli.json {
                    writeln!(
                        out,
                        "{}",
                        json!({ "choices": c.as_ref().map(|c| c.to_string()), "chain": chain, "socle": s.socle_flags })
                    )?;
                    continue;
                }
                if i > 0 {
                    writeln!(out)?;
                }
                if let Some(c) = c {
                    writeln!(out, "choices: {c}")?;
                }
                for (m, f) in chain.iter().zip(&s.socle_flags) {
                    writeln!(out, "{}", members_line(m, *f))?;
                }
            }
            Ok(0)
        }
        Command::Analyze { file } => {
            let g = load(file)?;
            let c = classify(&g);
            let ladder = SocleLadder::new(&g);
            let fact: Vec<String> = c.factorization.iter().map(|(p, e)| format!("{p}^{e}")).collect();
            let mut kv: Vec<(&str, String)> = vec![
                ("order", g.order().to_string()),
                ("factorization", if fact.is_empty() { "1".into() } else { fact.join(" ") }),
                ("abelian", c.abelian.to_string()),
                ("p-group", c.p_group.map_or("no".into(), |p| p.to_string())),
                ("nilpotent", c.nilpotent.to_string()),
                ("solvable", c.solvable.to_string()),
                ("simple", is_simple(&g).map_or("no".into(), |b| b.to_string())),
                ("socle-order", socle(&g).order().to_string()),
                ("minimal-normal-subgroups", minimal_normal_subgroups(&g).len().to_string()),
                ("socle-levels", ladder.depth().to_string()),
                ("series-choices", ladder.count().to_string()),
                ("alpha", format!("{:.4}", alpha(g.order()))),
            ];
            if c.solvable && g.order() > 1 {
                let b = sylow_basis(&g)?;
                kv.push(("sylow-bases", all_sylow_bases(&g, &b).len().to_string()));
                let hs = HallSeries::default_for(&g, &b)?;
                kv.push(("kappa", hs.kappa(alpha(g.order())).to_string()));
                kv.push(("needs-padding", crate::forms::needs_padding(&g).to_string()));
            }
            if cli.json {
                let m: serde_json::Map<String, serde_json::Value> =
                    kv.into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                writeln!(out, "{}", serde_json::Value::Object(m))?;
            } else {
                for (k, v) in kv {
                    writeln!(out, "{k}: {v}")?;
                }
            }
            Ok(0)
        }
        Command::Gen { spec, output } => {
            let g = spec.parse::<ConstructorSpec>()?.build()?;
            emit(out, output.as_deref(), &g.to_gtab())?;
            Ok(0)
        }
        Command::Bench(a) => {
            let groups = a.groups.iter().map(|s| s.parse()).collect::<Result<Vec<ConstructorSpec>>>()?;
            let cfg = BenchConfig {
                groups,
                methods: a.methods.iter().map(|&m| m.into()).collect(),
                repetitions: a.reps,
                seed: cli.seed,
                jobs: if cli.jobs == 0 { rayon::current_num_threads() } else { cli.jobs },
                options: IsoOptions { canon, seed: cli.seed, ..Default::default() },
            };
            let rows = run_bench(&cfg)?;
            match &a.output {
                Some(p) => write_csv(&rows, std::fs::File::create(p)?)?,
                None => write_csv(&rows, &mut *out)?,
            }
            Ok(0)
        }
        Command::GraphExport(a) => {
            let g = load(&a.file)?;
            let graph = if a.hall {
                let hs = HallSeries::default_for(&g, &sylow_basis(&g)?)?;
                let al = alpha(g.order());
                let gv = enumerate_genvectors(&hs, al)?.next().ok_or(Error::NotGenerating)?;
                build_x_hall(&g, &hs, &gv, al)?.graph
            } else {
                let c: Option<ChoiceSeq> = a.choices.as_deref().map(str::parse).transpose()?;
                build_x(&g, &crate::series::composition_series(&g, c.as_ref())?).graph
            };
            emit(out, a.output.as_deref(), &graph.to_dimacs())?;
            Ok(0)
        }
    }
}

pub fn main() -> i32 {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(cli, &mut stdout.lock(), &mut stderr.lock())
}
