//! Isomorphism decisions: generator enumeration, the composition-series
//! route for p-groups, the Hall route for solvable groups, a randomized
//! variant and an automatic dispatcher.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{canonical_form_with, isomorphic, CanonOptions, CanonicalGraphForm};
use crate::encoding::{build_x, build_x_hall, ConeGraph, GenVector};
use crate::error::{Error, Result};
use crate::forms::{can_hall_with, can_series_with, count_generating_tuples, genenum_table, CanGroup, CanSeries};
use crate::group::{extend_partial, extend_to_isomorphism, generates, is_isomorphism, GroupTable};
use crate::numth::{alpha, ceil_log, factorize};
use crate::series::{composition_series, ChoiceSeq, HallSeries, SocleLadder};
use crate::structure::{all_sylow_bases, classify, sylow_basis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Prefilter,
    Genenum,
    PgroupSeries,
    SolvableHall,
    Randomized,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Prefilter => "prefilter",
            Method::Genenum => "genenum",
            Method::PgroupSeries => "pgroup-series",
            Method::SolvableHall => "solvable-hall",
            Method::Randomized => "randomized",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IsoStats {
    /// Candidate objects examined on the second group's side.
    pub choices: u64,
    pub canonizations: u64,
    #[serde(serialize_with = "ser_ms")]
    pub wall_time: Duration,
}

fn ser_ms<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64() * 1000.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoVerdict {
    pub isomorphic: bool,
    /// `witness[x]` is the image of `x`, when an isomorphism was found.
    pub witness: Option<Vec<usize>>,
    pub method: Method,
    pub stats: IsoStats,
}

impl IsoVerdict {
    fn no(method: Method, stats: IsoStats) -> Self {
        IsoVerdict { isomorphic: false, witness: None, method, stats }
    }
}

/// Requested decision procedure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum IsoMethod {
    #[default]
    Auto,
    Genenum,
    Pgroup,
    Solvable,
    Randomized,
}

impl std::str::FromStr for IsoMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => IsoMethod::Auto,
            "genenum" => IsoMethod::Genenum,
            "pgroup" | "pgroup-series" => IsoMethod::Pgroup,
            "solvable" | "solvable-hall" => IsoMethod::Solvable,
            "randomized" => IsoMethod::Randomized,
            o => return Err(Error::BadParameters(format!("unknown method '{o}'"))),
        })
    }
}

/// Base objects sampled by the randomized variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RandomBase {
    #[default]
    Series,
    Generators,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IsoOptions {
    pub method: IsoMethod,
    pub prefilter: bool,
    pub samples: Option<usize>,
    pub seed: u64,
    pub random_base: RandomBase,
    pub canon: CanonOptions,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            method: IsoMethod::Auto,
            prefilter: true,
            samples: None,
            seed: 0,
            random_base: RandomBase::Series,
            canon: CanonOptions::default(),
        }
    }
}

/// The smallest generating list of `g` among ascending tuples of
/// distinct elements, shortest length first.
pub fn minimal_generating_set(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return vec![];
    }
    let mut lower = 1;
    if g.is_abelian() {
        let maxo = (0..n).map(|x| g.elem_order(x)).max().unwrap();
        while maxo.pow(lower as u32) < n {
            lower += 1;
        }
    }
    for k in lower..=n {
        let mut t = Vec::with_capacity(k);
        if let Some(found) = first_generating(g, k, 0, &mut t) {
            return found;
        }
    }
    unreachable!("the whole group generates itself")
}

fn first_generating(g: &GroupTable, k: usize, start: usize, t: &mut Vec<usize>) -> Option<Vec<usize>> {
    if t.len() == k {
        return generates(g, t).then(|| t.clone());
    }
    for x in start..g.order() {
        if x == g.identity() || crate::group::closure(g, t.iter().copied()).contains(x) {
            continue;
        }
        t.push(x);
        if let Some(f) = first_generating(g, k, x + 1, t) {
            return Some(f);
        }
        t.pop();
    }
    None
}

/// Tries every image of a fixed minimal generating list of `G`.
pub fn iso_genenum(g: &GroupTable, h: &GroupTable) -> IsoVerdict {
    let start = Instant::now();
    let mut stats = IsoStats::default();
    if g.order() != h.order() {
        stats.wall_time = start.elapsed();
        return IsoVerdict::no(Method::Genenum, stats);
    }
    let gens = minimal_generating_set(g);
    let mut images = Vec::with_capacity(gens.len());
    let witness = genenum_search(g, h, &gens, &mut images, &mut stats.choices);
    stats.wall_time = start.elapsed();
    IsoVerdict { isomorphic: witness.is_some(), witness, method: Method::Genenum, stats }
}

fn genenum_search(
    g: &GroupTable,
    h: &GroupTable,
    gens: &[usize],
    images: &mut Vec<usize>,
    tried: &mut u64,
) -> Option<Vec<usize>> {
    let i = images.len();
    if i == gens.len() {
        *tried += 1;
        let pairs: Vec<(usize, usize)> = gens.iter().copied().zip(images.iter().copied()).collect();
        return extend_to_isomorphism(g, h, &pairs);
    }
    for y in 0..h.order() {
        if h.elem_order(y) != g.elem_order(gens[i]) {
            continue;
        }
        images.push(y);
        let pairs: Vec<(usize, usize)> = gens.iter().copied().zip(images.iter().copied()).collect();
        if extend_partial(g, h, &pairs).is_some() {
            if let Some(w) = genenum_search(g, h, gens, images, tried) {
                return Some(w);
            }
        }
        images.pop();
    }
    None
}

/// Whether the series route beats generator enumeration for a p-group
/// of order `n`: `p <= c1 ln n / (c2 ln^2 p)` with `c1 = 1/2`,
/// `c2 = 1/4`.
pub fn prefers_series(n: usize, p: usize) -> bool {
    let (ln_n, ln_p) = ((n as f64).ln(), (p as f64).ln());
    (p as f64) <= 0.5 * ln_n / (0.25 * ln_p * ln_p)
}

fn witness_from_labelings(
    g: &GroupTable,
    h: &GroupTable,
    xg: &ConeGraph,
    cg: &CanonicalGraphForm,
    xh: &ConeGraph,
    ch: &CanonicalGraphForm,
) -> Option<Vec<usize>> {
    let mut elem_at = vec![usize::MAX; ch.labeling().len()];
    for (y, &v) in xh.element_nodes.iter().enumerate() {
        elem_at[ch.labeling()[v as usize] as usize] = y;
    }
    let map: Vec<usize> = xg.element_nodes.iter().map(|&v| elem_at[cg.labeling()[v as usize] as usize]).collect();
    is_isomorphism(g, h, &map).then_some(map)
}

/// p-group isomorphism: canonize one graph for `G`, then compare with the
/// graph of every series the socle recursion gives for `H`. Falls back to
/// generator enumeration for large `p`.
pub fn iso_pgroup(g: &GroupTable, h: &GroupTable) -> Result<IsoVerdict> {
    iso_pgroup_with(g, h, &CanonOptions::default(), true)
}

pub fn iso_pgroup_with(g: &GroupTable, h: &GroupTable, opts: &CanonOptions, dispatch: bool) -> Result<IsoVerdict> {
    let start = Instant::now();
    let p = classify(g).p_group.ok_or(Error::NotPGroup)?;
    if classify(h).p_group.is_none() {
        return Err(Error::NotPGroup);
    }
    let mut stats = IsoStats::default();
    if g.order() != h.order() {
        stats.wall_time = start.elapsed();
        return Ok(IsoVerdict::no(Method::PgroupSeries, stats));
    }
    if dispatch && !prefers_series(g.order(), p) {
        return Ok(iso_genenum(g, h));
    }
    let xg = build_x(g, &composition_series(g, None)?);
    let (cg, _) = canonical_form_with(&xg.graph, opts)?;
    stats.canonizations += 1;
    let ladder = Arc::new(SocleLadder::new(h));
    for (_, s) in ladder.iter() {
        stats.choices += 1;
        let xh = build_x(h, &s);
        if xh.graph.node_count() != xg.graph.node_count() {
            continue;
        }
        let (ch, _) = canonical_form_with(&xh.graph, opts)?;
        stats.canonizations += 1;
        if ch.encoding() == cg.encoding() {
            let witness = witness_from_labelings(g, h, &xg, &cg, &xh, &ch);
            stats.wall_time = start.elapsed();
            return Ok(IsoVerdict { isomorphic: true, witness, method: Method::PgroupSeries, stats });
        }
    }
    stats.wall_time = start.elapsed();
    Ok(IsoVerdict::no(Method::PgroupSeries, stats))
}

/// Decides whether two Hall systems with generator vectors are
/// isomorphic via a map sending one vector to the other.
pub fn iso_hall_fixed(
    g: &GroupTable,
    hs: &HallSeries,
    gv: &GenVector,
    h: &GroupTable,
    hs2: &HallSeries,
    gv2: &GenVector,
) -> Result<bool> {
    if hs.primes != hs2.primes {
        return Err(Error::SignatureMismatch("prime signatures differ".into()));
    }
    let a = alpha(g.order());
    if g.order() != h.order() || gv.kappa != gv2.kappa || gv.reps.len() != gv2.reps.len() {
        return Err(Error::SignatureMismatch("generator vectors differ in shape".into()));
    }
    if hs.series.iter().zip(&hs2.series).any(|(a, b)| a.length() != b.length()) {
        return Err(Error::SignatureMismatch("series lengths differ".into()));
    }
    let pairs: Vec<(usize, usize)> = gv.reps.iter().copied().zip(gv2.reps.iter().copied()).collect();
    let Some(map) = extend_partial(g, h, &pairs) else { return Ok(false) };
    for (s, s2) in hs.series.iter().zip(&hs2.series).take(gv.kappa) {
        for (a, b) in s.chain.iter().zip(&s2.chain) {
            if a.members().iter().any(|&x| map[x] == usize::MAX || !b.contains(map[x])) {
                return Ok(false);
            }
        }
    }
    isomorphic(&build_x_hall(g, hs, gv, a)?.graph, &build_x_hall(h, hs2, gv2, a)?.graph)
}

/// Solvable-group isomorphism: one canonical Hall form for `G` against
/// every Sylow basis and series choice of `H`.
pub fn iso_solvable(g: &GroupTable, h: &GroupTable) -> Result<IsoVerdict> {
    iso_solvable_with(g, h, &CanonOptions::default())
}

pub fn iso_solvable_with(g: &GroupTable, h: &GroupTable, opts: &CanonOptions) -> Result<IsoVerdict> {
    let start = Instant::now();
    let mut stats = IsoStats::default();
    let bg = sylow_basis(g)?;
    let bh = sylow_basis(h)?;
    if g.order() != h.order() {
        stats.wall_time = start.elapsed();
        return Ok(IsoVerdict::no(Method::SolvableHall, stats));
    }
    let fg = can_hall_with(g, &HallSeries::default_for(g, &bg)?, opts)?;
    stats.canonizations += 1;
    for basis in all_sylow_bases(h, &bh) {
        for hs in HallSeries::enumerate(h, &basis) {
            stats.choices += 1;
            let fh = can_hall_with(h, &hs, opts)?;
            stats.canonizations += 1;
            if fh.form.group == fg.form.group {
                let mut inv = vec![0usize; h.order()];
                for (y, &l) in fh.psi.iter().enumerate() {
                    inv[l as usize] = y;
                }
                let map: Vec<usize> = fg.psi.iter().map(|&l| inv[l as usize]).collect();
                let witness = is_isomorphism(g, h, &map).then_some(map);
                stats.wall_time = start.elapsed();
                return Ok(IsoVerdict { isomorphic: true, witness, method: Method::SolvableHall, stats });
            }
        }
    }
    stats.wall_time = start.elapsed();
    Ok(IsoVerdict::no(Method::SolvableHall, stats))
}

fn default_samples(total: u128) -> usize {
    ((2.0 * (total as f64).sqrt()).ceil() as usize).max(1)
}

/// Uniformly random choice sequence of the ladder, by rejection.
fn sample_choice(ladder: &SocleLadder, max_products: &[u128], rng: &mut ChaCha8Rng) -> ChoiceSeq {
    let levels = (0..ladder.depth())
        .map(|li| loop {
            let (picks, weight) = ladder.sample_level(li, rng);
            if rng.gen_range(0..max_products[li]) < weight {
                break picks;
            }
        })
        .collect();
    ChoiceSeq { levels }
}

fn sample_series_forms(
    g: &GroupTable,
    samples: Option<usize>,
    rng: &mut ChaCha8Rng,
    opts: &CanonOptions,
    stats: &mut IsoStats,
) -> Result<Vec<(CanSeries, Vec<u32>)>> {
    let ladder = Arc::new(SocleLadder::new(g));
    let total = ladder.count();
    let s = samples.unwrap_or_else(|| default_samples(total));
    let series: Vec<_> = if s as u128 >= total {
        ladder.iter().map(|(_, s)| s).collect()
    } else {
        let maxp = ladder.level_max_branch_products();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        while out.len() < s {
            let c = sample_choice(&ladder, &maxp, rng);
            if seen.insert(c.clone()) {
                out.push(ladder.series(Some(&c))?);
            }
        }
        out
    };
    series
        .iter()
        .map(|s| {
            stats.canonizations += 1;
            stats.choices += 1;
            can_series_with(g, s, opts).map(|w| (w.form, w.psi))
        })
        .collect()
}

fn random_generating_tuple(g: &GroupTable, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.order();
    let max_len = ceil_log(n, factorize(n)[0].0);
    let nonid: Vec<usize> = (0..n).filter(|&x| x != g.identity()).collect();
    // weight tuple lengths by the number of tuples of that length
    let mut weights = Vec::new();
    let mut w = 1f64;
    for k in 0..max_len {
        w *= (nonid.len() - k) as f64;
        weights.push(w);
    }
    let total: f64 = weights.iter().sum();
    loop {
        let mut r = rng.gen::<f64>() * total;
        let mut k = max_len;
        for (i, &wk) in weights.iter().enumerate() {
            if r < wk {
                k = i + 1;
                break;
            }
            r -= wk;
        }
        let t: Vec<usize> = nonid.choose_multiple(rng, k).copied().collect();
        let mut t = t;
        t.shuffle(rng);
        if generates(g, &t) {
            return t;
        }
    }
}

fn sample_generator_forms(
    g: &GroupTable,
    samples: Option<usize>,
    rng: &mut ChaCha8Rng,
    stats: &mut IsoStats,
) -> Result<Vec<(CanGroup, Vec<usize>)>> {
    if g.order() == 1 {
        return Ok(vec![(CanGroup { n: 1, table: vec![1] }, vec![])]);
    }
    let s = match samples {
        Some(s) => s,
        None => default_samples(count_generating_tuples(g)),
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut attempts = 0usize;
    while out.len() < s && attempts < 50 * s + 100 {
        attempts += 1;
        let t = random_generating_tuple(g, rng);
        if seen.insert(t.clone()) {
            stats.choices += 1;
            out.push((genenum_table(g, &t)?, t));
        }
    }
    Ok(out)
}

/// Samples base objects on both sides and reports whether any two
/// canonical forms coincide.
pub fn iso_randomized(g: &GroupTable, h: &GroupTable, opts: &IsoOptions) -> Result<IsoVerdict> {
    let start = Instant::now();
    let mut stats = IsoStats::default();
    if g.order() != h.order() {
        stats.wall_time = start.elapsed();
        return Ok(IsoVerdict::no(Method::Randomized, stats));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = g.order();
    let (found, witness) = match opts.random_base {
        RandomBase::Series => {
            let a = sample_series_forms(g, opts.samples, &mut rng, &opts.canon, &mut stats)?;
            let b = sample_series_forms(h, opts.samples, &mut rng, &opts.canon, &mut stats)?;
            let m = matching(&a, &b);
            let w = m.map(|(pa, pb)| {
                let mut inv = vec![0usize; n];
                for (y, &l) in pb.iter().enumerate() {
                    inv[l as usize] = y;
                }
                pa.iter().map(|&l| inv[l as usize]).collect::<Vec<usize>>()
            });
            (m.is_some(), w)
        }
        RandomBase::Generators => {
            let a = sample_generator_forms(g, opts.samples, &mut rng, &mut stats)?;
            let b = sample_generator_forms(h, opts.samples, &mut rng, &mut stats)?;
            let m = matching(&a, &b);
            let w = m.and_then(|(ta, tb)| {
                let pairs: Vec<(usize, usize)> = ta.iter().copied().zip(tb.iter().copied()).collect();
                extend_to_isomorphism(g, h, &pairs)
            });
            (m.is_some(), w)
        }
    };
    stats.wall_time = start.elapsed();
    let witness = witness.filter(|w| is_isomorphism(g, h, w));
    Ok(IsoVerdict { isomorphic: found, witness, method: Method::Randomized, stats })
}

/// First pair with equal forms after sorting both sides and merging.
fn matching<'a, F: Ord, P>(a: &'a [(F, P)], b: &'a [(F, P)]) -> Option<(&'a P, &'a P)> {
    let mut ia: Vec<&(F, P)> = a.iter().collect();
    let mut ib: Vec<&(F, P)> = b.iter().collect();
    ia.sort_by(|x, y| x.0.cmp(&y.0));
    ib.sort_by(|x, y| x.0.cmp(&y.0));
    let (mut i, mut j) = (0, 0);
    while i < ia.len() && j < ib.len() {
        match ia[i].0.cmp(&ib[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some((&ia[i].1, &ib[j].1)),
        }
    }
    None
}

/// Decides isomorphism, dispatching on the structure of `G` when the
/// method is `Auto`.
pub fn decide_iso(g: &GroupTable, h: &GroupTable, opts: &IsoOptions) -> Result<IsoVerdict> {
    let start = Instant::now();
    if g.order() != h.order() || (opts.prefilter && g.order_profile() != h.order_profile()) {
        let stats = IsoStats { wall_time: start.elapsed(), ..Default::default() };
        return Ok(IsoVerdict::no(Method::Prefilter, stats));
    }
    let cg = classify(g);
    let ch = classify(h);
    match opts.method {
        IsoMethod::Genenum => Ok(iso_genenum(g, h)),
        IsoMethod::Randomized => iso_randomized(g, h, opts),
        IsoMethod::Pgroup => {
            if cg.p_group.is_none() || ch.p_group.is_none() {
                return Err(Error::MethodNotApplicable("pgroup needs two p-groups".into()));
            }
            iso_pgroup_with(g, h, &opts.canon, true)
        }
        IsoMethod::Solvable => {
            if !cg.solvable || !ch.solvable {
                return Err(Error::MethodNotApplicable("solvable needs two solvable groups".into()));
            }
            iso_solvable_with(g, h, &opts.canon)
        }
        IsoMethod::Auto => {
            if cg.p_group.is_some() && cg.p_group == ch.p_group {
                iso_pgroup_with(g, h, &opts.canon, true)
            } else if cg.solvable && ch.solvable && g.order() > 1 {
                iso_solvable_with(g, h, &opts.canon)
            } else {
                Ok(iso_genenum(g, h))
            }
        }
    }
}

/// Upper bound on the choices of the Hall route: `n^{(1/2) log_p n + 4}`
/// with `p` the smallest prime divisor.
pub fn choice_bound(n: usize) -> f64 {
    if n < 2 {
        return 1.0;
    }
    let p = factorize(n)[0].0 as f64;
    let nf = n as f64;
    nf.powf(0.5 * nf.ln() / p.ln() + 4.0)
}
