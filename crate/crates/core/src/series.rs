//! Composition series built socle by socle, with replayable choice
//! sequences, lazy enumeration and counting.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{
    closure, preimage_along, product_set, quotient, subgroup_table, GroupTable, Subgroup,
};
use crate::structure::{is_simple, minimal_normal_subgroups, SylowBasis};

/// A composition series `1 = G_0 < ... < G_m = G` where `socle_flags[i]`
/// marks the socles of the successive quotients pulled back to `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledSeries {
    pub chain: Vec<Subgroup>,
    pub socle_flags: Vec<bool>,
}

impl LabeledSeries {
    pub fn length(&self) -> usize {
        self.chain.len() - 1
    }

    /// Checks that every term is normal in the next with simple factor.
    pub fn is_composition_series(&self, g: &GroupTable) -> bool {
        if self.chain.is_empty()
            || !self.chain[0].is_trivial()
            || self.chain.last().unwrap().order() != g.order()
        {
            return false;
        }
        self.chain.windows(2).all(|w| {
            if !w[0].is_subgroup_of(&w[1]) || w[0].order() >= w[1].order() {
                return false;
            }
            let (sub, embed) = subgroup_table(g, &w[1]);
            let local: Vec<usize> = w[0].members().iter().map(|x| embed.binary_search(x).unwrap()).collect();
            let n = Subgroup::from_set(ElemSet::from_elems(sub.order(), local));
            match quotient(&sub, &n) {
                Ok(q) => is_simple(&q.quotient).unwrap_or(false),
                Err(_) => false,
            }
        })
    }
}

/// One list of candidate indices per socle level, bottom level first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChoiceSeq {
    pub levels: Vec<Vec<usize>>,
}

impl std::fmt::Display for ChoiceSeq {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .levels
            .iter()
            .map(|l| l.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

impl std::str::FromStr for ChoiceSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let levels = s
            .split(';')
            .map(|l| {
                l.split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| t.trim().parse::<usize>().map_err(|_| Error::BadParameters(format!("bad choice '{t}'"))))
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        Ok(ChoiceSeq { levels })
    }
}

/// Simple minimal normal subgroups of `g`.
pub fn simple_minimal_normal_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    minimal_normal_subgroups(g)
        .into_iter()
        .filter(|n| {
            let (t, _) = subgroup_table(g, n);
            is_simple(&t).unwrap_or(false)
        })
        .collect()
}

#[derive(Clone, Debug)]
struct Level {
    group: GroupTable,
    proj: Vec<usize>,
    soc: Subgroup,
    candidates: Vec<Subgroup>,
}

/// The successive socle quotients of a group together with the candidate
/// simple subgroups of each socle. Choices made inside one level never
/// affect another.
#[derive(Clone, Debug)]
pub struct SocleLadder {
    n: usize,
    levels: Vec<Level>,
}

impl SocleLadder {
    pub fn new(g: &GroupTable) -> Self {
        let n = g.order();
        let mut levels = Vec::new();
        let mut f = g.clone();
        let mut proj: Vec<usize> = (0..n).collect();
        while f.order() > 1 {
            let mns = minimal_normal_subgroups(&f);
            let soc = closure(&f, mns.iter().flat_map(|m| m.members()));
            let mut cands: Vec<Subgroup> = Vec::new();
            for m in &mns {
                let (t, embed) = subgroup_table(&f, m);
                for s in simple_minimal_normal_subgroups(&t) {
                    let lifted = Subgroup::from_set(ElemSet::from_elems(f.order(), s.members().iter().map(|&x| embed[x])));
                    if !cands.contains(&lifted) {
                        cands.push(lifted);
                    }
                }
            }
            cands.sort();
            let whole = soc.order() == f.order();
            levels.push(Level { group: f.clone(), proj: proj.clone(), soc: soc.clone(), candidates: cands });
            if whole {
                break;
            }
            let q = quotient(&f, &soc).expect("socle is normal");
            proj = proj.iter().map(|&x| q.projection[x]).collect();
            f = q.quotient;
        }
        SocleLadder { n, levels }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Number of candidate simple subgroups at each level.
    pub fn candidate_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.candidates.len()).collect()
    }

    /// Order of the socle at each level.
    pub fn socle_orders(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.soc.order()).collect()
    }

    fn next_candidates(level: &Level, k: &ElemSet, t: &[Subgroup]) -> Vec<Subgroup> {
        let g = &level.group;
        let mut kept: Vec<Subgroup> = Vec::new();
        let mut products: Vec<ElemSet> = Vec::new();
        for l in t {
            if k.intersection_len(l.set()) != 1 {
                continue;
            }
            let prod = product_set(g, k, l.set());
            if !products.contains(&prod) {
                products.push(prod);
                kept.push(l.clone());
            }
        }
        kept
    }

    /// Replays one level, returning the tower `K_1 < ... < K_t = soc`.
    fn replay_level(&self, li: usize, choices: &[usize]) -> Result<Vec<ElemSet>> {
        let level = &self.levels[li];
        let g = &level.group;
        let mut k = Subgroup::trivial(g).set().clone();
        let mut t = level.candidates.clone();
        let mut tower = Vec::new();
        let mut step = 0;
        while k.len() < level.soc.order() {
            if t.is_empty() {
                return Err(Error::NonMatchingChoice { level: li });
            }
            let idx = *choices.get(step).ok_or(Error::ChoiceOutOfRange { level: li, step })?;
            let l = t.get(idx).ok_or(Error::ChoiceOutOfRange { level: li, step })?;
            if k.intersection_len(l.set()) != 1 {
                return Err(Error::NonMatchingChoice { level: li });
            }
            k = product_set(g, &k, l.set());
            tower.push(k.clone());
            t = Self::next_candidates(level, &k, &t);
            step += 1;
        }
        if step != choices.len() {
            return Err(Error::ChoiceOutOfRange { level: li, step });
        }
        Ok(tower)
    }

    fn first_tower(&self, li: usize) -> Result<Vec<ElemSet>> {
        let level = &self.levels[li];
        let mut k = Subgroup::trivial(&level.group).set().clone();
        let mut t = level.candidates.clone();
        let mut tower = Vec::new();
        while k.len() < level.soc.order() {
            let l = t.first().ok_or(Error::NonMatchingChoice { level: li })?;
            k = product_set(&level.group, &k, l.set());
            tower.push(k.clone());
            t = Self::next_candidates(level, &k, &t);
        }
        Ok(tower)
    }

    fn assemble(&self, towers: &[Vec<ElemSet>]) -> LabeledSeries {
        let mut chain = vec![Subgroup::from_set(ElemSet::from_elems(self.n, [self.levels_identity()]))];
        let mut flags = vec![false];
        for (li, tower) in towers.iter().enumerate() {
            let proj = &self.levels[li].proj;
            for (j, k) in tower.iter().enumerate() {
                chain.push(preimage_along(proj, k));
                flags.push(j + 1 == tower.len());
            }
        }
        LabeledSeries { chain, socle_flags: flags }
    }

    fn levels_identity(&self) -> usize {
        match self.levels.first() {
            Some(l) => (0..self.n).find(|&x| l.proj[x] == l.group.identity()).unwrap(),
            None => 0,
        }
    }

    /// The series selected by `choices`; `None` takes index 0 throughout.
    pub fn series(&self, choices: Option<&ChoiceSeq>) -> Result<LabeledSeries> {
        let mut towers = Vec::new();
        for li in 0..self.levels.len() {
            let tower = match choices {
                Some(c) => {
                    let lc = c.levels.get(li).ok_or(Error::ChoiceOutOfRange { level: li, step: 0 })?;
                    self.replay_level(li, lc)?
                }
                None => self.first_tower(li)?,
            };
            towers.push(tower);
        }
        if let Some(c) = choices {
            if c.levels.len() != self.levels.len() {
                return Err(Error::ChoiceOutOfRange { level: self.levels.len(), step: 0 });
            }
        }
        Ok(self.assemble(&towers))
    }

    /// Number of towers at each level.
    pub fn level_counts(&self) -> Vec<u128> {
        (0..self.levels.len())
            .map(|li| {
                let level = &self.levels[li];
                fn count(level: &Level, k: &ElemSet, t: &[Subgroup]) -> u128 {
                    if k.len() == level.soc.order() {
                        return 1;
                    }
                    t.iter()
                        .map(|l| {
                            let k2 = product_set(&level.group, k, l.set());
                            let t2 = SocleLadder::next_candidates(level, &k2, t);
                            count(level, &k2, &t2)
                        })
                        .sum()
                }
                count(level, Subgroup::trivial(&level.group).set(), &level.candidates)
            })
            .collect()
    }

    /// Total number of choice sequences.
    pub fn count(&self) -> u128 {
        self.level_counts().iter().product()
    }

    /// Largest product of per-step branching factors over the towers of
    /// each level.
    pub fn level_max_branch_products(&self) -> Vec<u128> {
        (0..self.levels.len())
            .map(|li| {
                let level = &self.levels[li];
                fn best(level: &Level, k: &ElemSet, t: &[Subgroup]) -> u128 {
                    if k.len() == level.soc.order() {
                        return 1;
                    }
                    t.iter()
                        .map(|l| {
                            let k2 = product_set(&level.group, k, l.set());
                            let t2 = SocleLadder::next_candidates(level, &k2, t);
                            t.len() as u128 * best(level, &k2, &t2)
                        })
                        .max()
                        .unwrap_or(0)
                }
                best(level, Subgroup::trivial(&level.group).set(), &level.candidates)
            })
            .collect()
    }

    /// Draws one tower per level with uniform per-step choices, returning
    /// the choices and the product of the branching factors met.
    pub fn sample_level(&self, li: usize, rng: &mut impl rand::Rng) -> (Vec<usize>, u128) {
        let level = &self.levels[li];
        let mut k = Subgroup::trivial(&level.group).set().clone();
        let mut t = level.candidates.clone();
        let mut picks = Vec::new();
        let mut weight = 1u128;
        while k.len() < level.soc.order() && !t.is_empty() {
            let i = rng.gen_range(0..t.len());
            weight *= t.len() as u128;
            picks.push(i);
            k = product_set(&level.group, &k, t[i].set());
            t = Self::next_candidates(level, &k, &t);
        }
        (picks, weight)
    }

    pub fn iter(self: &Arc<Self>) -> SeriesIter {
        SeriesIter { ladder: Arc::clone(self), iters: Vec::new(), current: Vec::new(), state: IterState::Fresh }
    }
}

/// Depth-first enumeration of the towers of one level.
struct TowerIter {
    ladder: Arc<SocleLadder>,
    li: usize,
    // (K, candidate list, next index to try)
    stack: Vec<(ElemSet, Vec<Subgroup>, usize)>,
    picks: Vec<usize>,
    tower: Vec<ElemSet>,
    started: bool,
}

impl TowerIter {
    fn new(ladder: Arc<SocleLadder>, li: usize) -> Self {
        TowerIter { ladder, li, stack: Vec::new(), picks: Vec::new(), tower: Vec::new(), started: false }
    }
}

impl Iterator for TowerIter {
    type Item = (Vec<usize>, Vec<ElemSet>);

    fn next(&mut self) -> Option<Self::Item> {
        let ladder = Arc::clone(&self.ladder);
        let level = &ladder.levels[self.li];
        if !self.started {
            self.started = true;
            let k = Subgroup::trivial(&level.group).set().clone();
            if k.len() == level.soc.order() {
                return Some((vec![], vec![]));
            }
            self.stack.push((k, level.candidates.clone(), 0));
        }
        while let Some((k, t, idx)) = self.stack.last_mut() {
            if *idx >= t.len() {
                self.stack.pop();
                self.picks.pop();
                self.tower.pop();
                continue;
            }
            let i = *idx;
            *idx += 1;
            let k2 = product_set(&level.group, k, t[i].set());
            let t2 = SocleLadder::next_candidates(level, &k2, t);
            self.picks.push(i);
            self.tower.push(k2.clone());
            if k2.len() == level.soc.order() {
                let out = (self.picks.clone(), self.tower.clone());
                self.picks.pop();
                self.tower.pop();
                return Some(out);
            }
            self.stack.push((k2, t2, 0));
        }
        None
    }
}

enum IterState {
    Fresh,
    Running,
    Done,
}

/// Lazy enumeration of every `(ChoiceSeq, LabeledSeries)`, with the
/// bottom level varying slowest.
pub struct SeriesIter {
    ladder: Arc<SocleLadder>,
    iters: Vec<TowerIter>,
    current: Vec<(Vec<usize>, Vec<ElemSet>)>,
    state: IterState,
}

impl SeriesIter {
    fn fresh_iter(&self, li: usize) -> TowerIter {
        TowerIter::new(Arc::clone(&self.ladder), li)
    }

    fn emit(&self) -> (ChoiceSeq, LabeledSeries) {
        let choice = ChoiceSeq { levels: self.current.iter().map(|c| c.0.clone()).collect() };
        let towers: Vec<Vec<ElemSet>> = self.current.iter().map(|c| c.1.clone()).collect();
        (choice, self.ladder.assemble(&towers))
    }
}

impl Iterator for SeriesIter {
    type Item = (ChoiceSeq, LabeledSeries);

    fn next(&mut self) -> Option<Self::Item> {
        match self.state {
            IterState::Done => None,
            IterState::Fresh => {
                let depth = self.ladder.depth();
                for li in 0..depth {
                    let mut it = self.fresh_iter(li);
                    match it.next() {
                        Some(t) => {
                            self.current.push(t);
                            self.iters.push(it);
                        }
                        None => {
                            self.state = IterState::Done;
                            return None;
                        }
                    }
                }
                self.state = IterState::Running;
                Some(self.emit())
            }
            IterState::Running => {
                let depth = self.ladder.depth();
                let mut li = depth;
                loop {
                    if li == 0 {
                        self.state = IterState::Done;
                        return None;
                    }
                    li -= 1;
                    if let Some(t) = self.iters[li].next() {
                        self.current[li] = t;
                        for lj in li + 1..depth {
                            let mut it = self.fresh_iter(lj);
                            self.current[lj] = it.next().expect("nonempty level");
                            self.iters[lj] = it;
                        }
                        return Some(self.emit());
                    }
                }
            }
        }
    }
}

/// The composition series selected by `choices` (index 0 everywhere when
/// `None`).
pub fn composition_series(g: &GroupTable, choices: Option<&ChoiceSeq>) -> Result<LabeledSeries> {
    SocleLadder::new(g).series(choices)
}

pub fn enumerate_series(g: &GroupTable) -> SeriesIter {
    Arc::new(SocleLadder::new(g)).iter()
}

pub fn count_choices(g: &GroupTable) -> u128 {
    SocleLadder::new(g).count()
}

/// A Sylow basis indexed by descending prime, with a composition series
/// of each Sylow subgroup. All subgroups are given in the ids of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HallSeries {
    pub primes: Vec<(usize, u32)>,
    pub sylows: Vec<Subgroup>,
    pub series: Vec<LabeledSeries>,
}

impl HallSeries {
    /// Uses the given choice sequence for each Sylow subgroup, listed
    /// with primes descending.
    pub fn new(g: &GroupTable, basis: &SylowBasis, choices: &[Option<ChoiceSeq>]) -> Result<Self> {
        let ladders = hall_ladders(g, basis);
        let mut series = Vec::new();
        for (i, (ladder, embed)) in ladders.iter().enumerate() {
            let s = ladder.series(choices.get(i).cloned().flatten().as_ref())?;
            series.push(lift_series(g, &s, embed));
        }
        let (primes, sylows) = descending(basis);
        Ok(HallSeries { primes, sylows, series })
    }

    pub fn default_for(g: &GroupTable, basis: &SylowBasis) -> Result<Self> {
        Self::new(g, basis, &[])
    }

    pub fn kappa(&self, alpha: f64) -> usize {
        self.primes.iter().filter(|(p, _)| *p as f64 >= alpha).count()
    }

    /// Every choice of composition series for each Sylow subgroup.
    pub fn enumerate(g: &GroupTable, basis: &SylowBasis) -> Vec<HallSeries> {
        let ladders = hall_ladders(g, basis);
        let per: Vec<Vec<LabeledSeries>> = ladders
            .into_iter()
            .map(|(l, embed)| Arc::new(l).iter().map(|(_, s)| lift_series(g, &s, &embed)).collect())
            .collect();
        let (primes, sylows) = descending(basis);
        let mut out = Vec::new();
        let mut idx = vec![0usize; per.len()];
        if per.iter().any(|v| v.is_empty()) {
            return out;
        }
        loop {
            out.push(HallSeries {
                primes: primes.clone(),
                sylows: sylows.clone(),
                series: idx.iter().enumerate().map(|(i, &j)| per[i][j].clone()).collect(),
            });
            let mut i = per.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < per[i].len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    /// Number of series combinations per Sylow basis.
    pub fn count(g: &GroupTable, basis: &SylowBasis) -> u128 {
        hall_ladders(g, basis).iter().map(|(l, _)| l.count()).product()
    }
}

fn descending(basis: &SylowBasis) -> (Vec<(usize, u32)>, Vec<Subgroup>) {
    let mut idx: Vec<usize> = (0..basis.primes.len()).collect();
    idx.sort_by(|&a, &b| basis.primes[b].0.cmp(&basis.primes[a].0));
    (idx.iter().map(|&i| basis.primes[i]).collect(), idx.iter().map(|&i| basis.subgroups[i].clone()).collect())
}

fn hall_ladders(g: &GroupTable, basis: &SylowBasis) -> Vec<(SocleLadder, Vec<usize>)> {
    let (_, sylows) = descending(basis);
    sylows
        .iter()
        .map(|p| {
            let (t, embed) = subgroup_table(g, p);
            (SocleLadder::new(&t), embed)
        })
        .collect()
}

fn lift_series(g: &GroupTable, s: &LabeledSeries, embed: &[usize]) -> LabeledSeries {
    LabeledSeries {
        chain: s
            .chain
            .iter()
            .map(|h| Subgroup::from_set(ElemSet::from_elems(g.order(), h.members().iter().map(|&x| embed[x]))))
            .collect(),
        socle_flags: s.socle_flags.clone(),
    }
}
