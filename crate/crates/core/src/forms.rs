//! Canonical forms of groups: decoding a canonical graph back into a
//! multiplication table, canonical forms of groups with composition
//! series or Hall systems, and the generator-enumeration form.

use std::collections::VecDeque;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::bitset::ElemSet;
use crate::canon::{canonical_form_with, CanonOptions, CanonicalGraphForm};
use crate::encoding::{build_x, build_x_hall, enumerate_genvectors, ColoredGraph, Role};
use crate::error::{Error, Result};
use crate::group::{closure_with, cayley_order, generates, table_to_gtab, GroupTable, Subgroup};
use crate::numth::{alpha, ceil_log, factorize, next_prime_at_least};
use crate::series::{composition_series, enumerate_series, HallSeries, LabeledSeries};
use crate::structure::{classify, sylow_basis};

/// Multiplication table on `1..=n` in row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanGroup {
    pub n: usize,
    pub table: Vec<u32>,
}

impl CanGroup {
    pub fn from_zero_based(n: usize, t: &[u32]) -> Self {
        CanGroup { n, table: t.iter().map(|&v| v + 1).collect() }
    }

    pub fn to_gtab(&self) -> String {
        table_to_gtab(self.n, self.table.iter().map(|&v| v as usize))
    }

    /// Hex SHA-256 of the `.gtab` text.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_gtab().as_bytes()))
    }

    pub fn to_group(&self) -> GroupTable {
        GroupTable::trusted(self.n, self.table.iter().map(|&v| v - 1).collect())
    }
}

/// Canonical table together with the images of the series terms, all
/// 1-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanSeries {
    pub group: CanGroup,
    pub images: Vec<Vec<u32>>,
}

/// Canonical table with the images of the Sylow subgroups and of every
/// term of their series, primes descending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanHall {
    pub group: CanGroup,
    pub sylows: Vec<Vec<u32>>,
    pub series: Vec<Vec<Vec<u32>>>,
}

/// A canonical form together with the map sending each element of the
/// input group to its 0-based canonical label.
#[derive(Clone, Debug)]
pub struct WithMap<T> {
    pub form: T,
    pub psi: Vec<u32>,
}

/// A canonical graph read back as a group. `label_of[v]` is the 0-based
/// label of element node `v` (or `u32::MAX`).
#[derive(Clone, Debug)]
pub struct DecodedGroup {
    pub graph: ColoredGraph,
    pub table: Vec<u32>,
    pub n: usize,
    pub identity: u32,
    pub element_nodes: Vec<u32>,
    pub label_of: Vec<u32>,
    pub parent: Vec<u32>,
    pub depth: Vec<u32>,
    pub element_depth: usize,
}

impl DecodedGroup {
    /// Nodes on the path from the root to the identity, by depth.
    pub fn identity_path(&self) -> Vec<u32> {
        let mut path = vec![self.element_nodes[self.identity as usize]];
        while self.parent[*path.last().unwrap() as usize] != u32::MAX {
            path.push(self.parent[*path.last().unwrap() as usize]);
        }
        path.reverse();
        path
    }

    fn children(&self, v: u32) -> impl Iterator<Item = u32> + '_ {
        let d = self.depth[v as usize];
        self.graph.neighbors(v).iter().copied().filter(move |&w| self.depth[w as usize] == d + 1 && self.parent[w as usize] == v)
    }

    /// Labels of the element nodes below `v`.
    pub fn element_descendants(&self, v: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            if self.depth[x as usize] as usize == self.element_depth {
                out.push(self.label_of[x as usize]);
                continue;
            }
            stack.extend(self.children(x));
        }
        out.sort_unstable();
        out
    }
}

fn malformed(m: impl Into<String>) -> Error {
    Error::MalformedCanonGraph(m.into())
}

/// Reads the group back from a canonical cone graph whose element leaves
/// lie at `element_depth`.
pub fn decode_group(canon: &CanonicalGraphForm, n: usize, element_depth: usize) -> Result<DecodedGroup> {
    let graph = canon.to_graph()?;
    let nodes = graph.node_count();
    let root_color = Role::Root.color();
    let roots: Vec<u32> = (0..nodes as u32).filter(|&v| graph.color(v) == root_color).collect();
    if roots.len() != 1 {
        return Err(malformed(format!("expected one root, found {}", roots.len())));
    }
    let mut depth = vec![u32::MAX; nodes];
    let mut parent = vec![u32::MAX; nodes];
    let mut element_nodes = Vec::new();
    let mut label_of = vec![u32::MAX; nodes];
    depth[roots[0] as usize] = 0;
    let mut q = VecDeque::from([roots[0]]);
    while let Some(v) = q.pop_front() {
        if depth[v as usize] as usize == element_depth {
            label_of[v as usize] = element_nodes.len() as u32;
            element_nodes.push(v);
        }
        for &w in graph.neighbors(v) {
            if depth[w as usize] == u32::MAX {
                depth[w as usize] = depth[v as usize] + 1;
                parent[w as usize] = v;
                q.push_back(w);
            }
        }
    }
    if element_nodes.len() != n {
        return Err(malformed(format!("found {} element nodes, expected {n}", element_nodes.len())));
    }
    let d = element_depth as u32;
    // ancestor at element depth, for nodes in the copies
    let mut anc = vec![u32::MAX; nodes];
    let mut order: Vec<u32> = (0..nodes as u32).filter(|&v| depth[v as usize] != u32::MAX).collect();
    order.sort_by_key(|&v| depth[v as usize]);
    for &v in &order {
        let dv = depth[v as usize];
        if dv == d {
            anc[v as usize] = label_of[v as usize];
        } else if dv > d {
            anc[v as usize] = anc[parent[v as usize] as usize];
        }
    }
    let color_of = |v: u32| Role::from_color(graph.color(v));
    let mut table = vec![u32::MAX; n * n];
    for v in 0..nodes as u32 {
        if color_of(v) != Role::Left || depth[v as usize] != 2 * d + 1 {
            continue;
        }
        let x = anc[v as usize];
        let y_node = parent[v as usize];
        let r = graph
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| color_of(w) == Role::Right)
            .ok_or_else(|| malformed("left gadget without right neighbor"))?;
        let y = anc[parent[r as usize] as usize];
        let e = graph
            .neighbors(r)
            .iter()
            .copied()
            .find(|&w| color_of(w) == Role::Equal)
            .ok_or_else(|| malformed("right gadget without equal neighbor"))?;
        let z = anc[parent[e as usize] as usize];
        if x == u32::MAX || y == u32::MAX || z == u32::MAX || anc[y_node as usize] != x {
            return Err(malformed("gadget outside the element copies"));
        }
        let slot = &mut table[x as usize * n + y as usize];
        if *slot != u32::MAX {
            return Err(malformed("product defined twice"));
        }
        *slot = z;
    }
    if table.contains(&u32::MAX) {
        return Err(malformed("incomplete multiplication table"));
    }
    let g = GroupTable::from_flat(n, table.clone(), Default::default())
        .map_err(|e| malformed(format!("decoded table is not a group: {e}")))?;
    Ok(DecodedGroup {
        graph,
        table,
        n,
        identity: g.identity() as u32,
        element_nodes,
        label_of,
        parent,
        depth,
        element_depth,
    })
}

fn one_based(v: &[u32]) -> Vec<u32> {
    v.iter().map(|x| x + 1).collect()
}

fn psi_from(labeling: &[u32], element_nodes: &[u32], dec: &DecodedGroup) -> Vec<u32> {
    element_nodes.iter().map(|&v| dec.label_of[dec_node(labeling, v)]).collect()
}

fn dec_node(labeling: &[u32], v: u32) -> usize {
    labeling[v as usize] as usize
}

fn check_psi(g: &GroupTable, dec: &DecodedGroup, psi: &[u32]) -> Result<()> {
    let n = g.order();
    for x in 0..n {
        for y in 0..n {
            if psi[g.mul(x, y)] != dec.table[psi[x] as usize * n + psi[y] as usize] {
                return Err(malformed("decoded table disagrees with the input group"));
            }
        }
    }
    Ok(())
}

/// Canonical form of a group with a composition series.
pub fn can_series(g: &GroupTable, s: &LabeledSeries) -> Result<WithMap<CanSeries>> {
    can_series_with(g, s, &CanonOptions::default())
}

pub fn can_series_with(g: &GroupTable, s: &LabeledSeries, opts: &CanonOptions) -> Result<WithMap<CanSeries>> {
    let x = build_x(g, s);
    let (canon, _) = canonical_form_with(&x.graph, opts)?;
    let dec = decode_group(&canon, g.order(), x.element_depth)?;
    let psi = psi_from(canon.labeling(), &x.element_nodes, &dec);
    check_psi(g, &dec, &psi)?;
    let path = dec.identity_path();
    let m = s.length();
    let images = (0..=m).map(|i| one_based(&dec.element_descendants(path[m - i]))).collect();
    Ok(WithMap { form: CanSeries { group: CanGroup::from_zero_based(g.order(), &dec.table), images }, psi })
}

/// How `can_group_series` reaches a canonical table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SeriesRoute {
    /// Composition series for p-groups and non-solvable groups, Hall
    /// systems for the other solvable groups.
    #[default]
    Auto,
    Series,
    Hall,
}

/// Canonical table: the least canonical series form over every series
/// the socle recursion can produce, or over every Hall system.
pub fn can_group_series(g: &GroupTable) -> Result<CanGroup> {
    can_group_series_with(g, SeriesRoute::Auto, &CanonOptions::default())
}

pub fn can_group_series_with(g: &GroupTable, route: SeriesRoute, opts: &CanonOptions) -> Result<CanGroup> {
    if g.order() == 1 {
        return Ok(CanGroup { n: 1, table: vec![1] });
    }
    let route = match route {
        SeriesRoute::Auto => {
            let c = classify(g);
            if c.p_group.is_some() || !c.solvable {
                SeriesRoute::Series
            } else {
                SeriesRoute::Hall
            }
        }
        r => r,
    };
    match route {
        SeriesRoute::Hall => {
            let basis = sylow_basis(g)?;
            let bases = crate::structure::all_sylow_bases(g, &basis);
            let mut best: Option<CanGroup> = None;
            for b in &bases {
                for hs in HallSeries::enumerate(g, b) {
                    let f = can_hall_with(g, &hs, opts)?.form.group;
                    if best.as_ref().is_none_or(|x| f < *x) {
                        best = Some(f);
                    }
                }
            }
            Ok(best.expect("at least one Hall system"))
        }
        _ => {
            let all: Vec<LabeledSeries> = enumerate_series(g).map(|(_, s)| s).collect();
            let forms: Result<Vec<CanSeries>> =
                all.par_iter().map(|s| can_series_with(g, s, opts).map(|w| w.form)).collect();
            Ok(forms?.into_iter().min().expect("at least one series").group)
        }
    }
}

/// Canonical series form of the default series.
pub fn can_series_default(g: &GroupTable) -> Result<WithMap<CanSeries>> {
    can_series(g, &composition_series(g, None)?)
}

/// A group padded with a cyclic factor `Z_q` so that its largest prime
/// reaches the threshold. Element `(a, x)` has id `a n + x`, so the
/// original elements keep their ids.
#[derive(Clone, Debug)]
pub struct Padded {
    pub group: GroupTable,
    pub hall: HallSeries,
    pub q: usize,
    /// Whether `q` was found in the window `[2 alpha, 4 alpha]`.
    pub in_window: bool,
}

pub fn pad_with_zq(g: &GroupTable, h: &HallSeries, alpha_value: f64) -> Result<Padded> {
    let n = g.order();
    let lo = (2.0 * alpha_value).ceil() as usize;
    let mut q = next_prime_at_least(lo);
    let in_window = (q as f64) <= 4.0 * alpha_value;
    while (q as f64) < alpha(q * n) {
        q = next_prime_at_least(q + 1);
    }
    let zq = crate::construct::cyclic(q)?;
    let group = zq.direct_product(g);
    let total = q * n;
    let lift = |s: &Subgroup| Subgroup::from_set(ElemSet::from_elems(total, s.members()));
    let zq_sub = Subgroup::from_set(ElemSet::from_elems(total, (0..q).map(|a| a * n + g.identity())));
    let mut primes = vec![(q, 1)];
    let mut sylows = vec![zq_sub.clone()];
    let mut series = vec![LabeledSeries {
        chain: vec![Subgroup::from_set(ElemSet::from_elems(total, [g.identity()])), zq_sub],
        socle_flags: vec![false, true],
    }];
    for (i, p) in h.primes.iter().enumerate() {
        if p.0 == q {
            return Err(Error::BadParameters("padding prime divides the order".into()));
        }
        primes.push(*p);
        sylows.push(lift(&h.sylows[i]));
        series.push(LabeledSeries {
            chain: h.series[i].chain.iter().map(lift).collect(),
            socle_flags: h.series[i].socle_flags.clone(),
        });
    }
    Ok(Padded { group, hall: HallSeries { primes, sylows, series }, q, in_window })
}

/// Canonical Hall form of a solvable group with a Hall system.
pub fn can_hall(g: &GroupTable, h: &HallSeries) -> Result<WithMap<CanHall>> {
    can_hall_with(g, h, &CanonOptions::default())
}

pub fn can_hall_with(g: &GroupTable, h: &HallSeries, opts: &CanonOptions) -> Result<WithMap<CanHall>> {
    let a = alpha(g.order());
    if h.primes.first().is_none_or(|p| (p.0 as f64) >= a) {
        return can_hall_core(g, h, a, opts);
    }
    let pad = pad_with_zq(g, h, a)?;
    let wide = can_hall_core(&pad.group, &pad.hall, alpha(pad.group.order()), opts)?;
    unpad(g, &wide)
}

fn unpad(g: &GroupTable, wide: &WithMap<CanHall>) -> Result<WithMap<CanHall>> {
    let n = g.order();
    let big = wide.form.group.to_group();
    let keep: Vec<usize> = (0..big.order()).filter(|&z| big.pow(z, n) == big.identity()).collect();
    if keep.len() != n {
        return Err(malformed("padding factor not recovered"));
    }
    let mut rank = vec![u32::MAX; big.order()];
    for (i, &z) in keep.iter().enumerate() {
        rank[z] = i as u32;
    }
    let mut table = vec![0u32; n * n];
    for (i, &a) in keep.iter().enumerate() {
        for (j, &b) in keep.iter().enumerate() {
            table[i * n + j] = rank[big.mul(a, b)];
        }
    }
    let relabel = |v: &Vec<u32>| -> Vec<u32> {
        let mut out: Vec<u32> = v.iter().map(|&x| rank[x as usize - 1] + 1).collect();
        out.sort_unstable();
        out
    };
    let psi = (0..n).map(|x| rank[wide.psi[x] as usize]).collect();
    Ok(WithMap {
        form: CanHall {
            group: CanGroup::from_zero_based(n, &table),
            sylows: wide.form.sylows[1..].iter().map(relabel).collect(),
            series: wide.form.series[1..].iter().map(|s| s.iter().map(relabel).collect()).collect(),
        },
        psi,
    })
}

fn can_hall_core(g: &GroupTable, h: &HallSeries, a: f64, opts: &CanonOptions) -> Result<WithMap<CanHall>> {
    let gvs: Vec<_> = enumerate_genvectors(h, a)?.collect();
    let kappa = h.kappa(a);
    let best = gvs
        .par_iter()
        .map(|gv| {
            let x = build_x_hall(g, h, gv, a)?;
            let (canon, _) = canonical_form_with(&x.graph, opts)?;
            Ok((canon, x.element_nodes, x.element_depth))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .min_by(|a, b| a.0.encoding().cmp(b.0.encoding()))
        .expect("at least one generator vector");
    let (canon, element_nodes, depth) = best;
    let n = g.order();
    let dec = decode_group(&canon, n, depth)?;
    let psi = psi_from(canon.labeling(), &element_nodes, &dec);
    check_psi(g, &dec, &psi)?;
    let mgroup = GroupTable::trusted(n, dec.table.clone());
    let path = dec.identity_path();
    let h_b = ceil_log(h.sylows.iter().take(kappa).map(|s| s.order()).product(), 2);
    let color = |v: u32| Role::from_color(dec.graph.color(v));
    let mut series_images: Vec<Vec<Vec<u32>>> = Vec::new();
    // Sylow subgroups below the threshold: read from the identity path.
    let mut offset = h_b;
    let mut tail: Vec<Vec<Vec<u32>>> = Vec::new();
    for s in &h.series[kappa..] {
        let m = s.length();
        let mut imgs = Vec::new();
        for j in 0..=m {
            let a_node = path[offset + m - j];
            let limit = (offset + m) as u32;
            imgs.push(one_based(&pij_members(&dec, a_node, limit, dec.identity)));
        }
        tail.push(imgs);
        offset += m;
    }
    // Sylow subgroups above the threshold: locate the generators by their
    // position colors, then close up level by level.
    let pos_node = |k: usize| -> Result<u32> {
        (0..dec.graph.node_count() as u32)
            .find(|&v| dec.depth[v as usize] as usize == h_b && matches!(color(v), Role::Position { pos, .. } if pos == k))
            .ok_or_else(|| malformed(format!("no binary leaf at position {k}")))
    };
    let mut gi = 0;
    for s in &h.series[..kappa] {
        let mut cur = Subgroup::trivial(&mgroup);
        let mut imgs = vec![one_based(&[dec.identity])];
        for _ in 0..s.length() {
            let leaf = pos_node(gi + 2)?;
            let elem = follow_not_identity(&dec, leaf)?;
            cur = closure_with(&mgroup, &cur, [elem as usize]);
            imgs.push(one_based(&cur.members().iter().map(|&x| x as u32).collect::<Vec<_>>()));
            gi += 1;
        }
        series_images.push(imgs);
    }
    series_images.extend(tail);
    let sylows = series_images.iter().map(|s| s.last().unwrap().clone()).collect();
    Ok(WithMap {
        form: CanHall { group: CanGroup::from_zero_based(n, &dec.table), sylows, series: series_images },
        psi,
    })
}

/// Elements below `a` reached through internal nodes and then, from a
/// not-identity node no deeper than `limit`, through not-identity nodes
/// only. Includes the identity.
fn pij_members(dec: &DecodedGroup, a: u32, limit: u32, identity: u32) -> Vec<u32> {
    let color = |v: u32| Role::from_color(dec.graph.color(v));
    let mut out = vec![identity];
    let mut stack = vec![(a, false)];
    while let Some((v, switched)) = stack.pop() {
        if dec.depth[v as usize] as usize == dec.element_depth {
            if switched {
                out.push(dec.label_of[v as usize]);
            }
            continue;
        }
        for w in dec.children(v) {
            let ni = color(w).is_not_identity();
            if switched {
                if ni {
                    stack.push((w, true));
                }
            } else if ni {
                if dec.depth[w as usize] <= limit {
                    stack.push((w, true));
                }
            } else {
                stack.push((w, false));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn follow_not_identity(dec: &DecodedGroup, mut v: u32) -> Result<u32> {
    while (dec.depth[v as usize] as usize) < dec.element_depth {
        let next: Vec<u32> =
            dec.children(v).filter(|&w| Role::from_color(dec.graph.color(w)).is_not_identity()).collect();
        if next.len() != 1 {
            return Err(malformed("not-identity path is not unique"));
        }
        v = next[0];
    }
    Ok(dec.label_of[v as usize])
}

/// Table of `G` relabeled by the order induced by `gens`, 1-based.
pub fn genenum_table(g: &GroupTable, gens: &[usize]) -> Result<CanGroup> {
    let order = cayley_order(g, gens)?;
    let n = g.order();
    let e = &order.elements;
    let mut t = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            t[i * n + j] = order.rank[g.mul(e[i], e[j])] as u32;
        }
    }
    Ok(CanGroup::from_zero_based(n, &t))
}

/// Least generator-ordered table over all ordered generating tuples of
/// distinct non-identity elements of length at most `ceil(log_p n)`, `p`
/// the smallest prime divisor.
pub fn can_group_genenum(g: &GroupTable) -> Result<CanGroup> {
    let n = g.order();
    if n == 1 {
        return Ok(CanGroup { n: 1, table: vec![1] });
    }
    let p = factorize(n)[0].0;
    let max_len = ceil_log(n, p);
    let firsts: Vec<usize> = (0..n).filter(|&x| x != g.identity()).collect();
    let best = firsts
        .par_iter()
        .map(|&x| {
            let mut best: Option<CanGroup> = None;
            let mut tuple = vec![x];
            genenum_rec(g, &mut tuple, max_len, &mut best);
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .min();
    best.ok_or(Error::NotGenerating)
}

fn genenum_rec(g: &GroupTable, tuple: &mut Vec<usize>, max_len: usize, best: &mut Option<CanGroup>) {
    if generates(g, tuple) {
        let t = genenum_table(g, tuple).expect("generating");
        if best.as_ref().is_none_or(|b| t < *b) {
            *best = Some(t);
        }
    }
    if tuple.len() == max_len {
        return;
    }
    for y in 0..g.order() {
        if y == g.identity() || tuple.contains(&y) {
            continue;
        }
        tuple.push(y);
        genenum_rec(g, tuple, max_len, best);
        tuple.pop();
    }
}

/// Every generating tuple visited by [`can_group_genenum`].
pub fn count_generating_tuples(g: &GroupTable) -> u128 {
    let n = g.order();
    if n == 1 {
        return 1;
    }
    let max_len = ceil_log(n, factorize(n)[0].0);
    fn rec(g: &GroupTable, t: &mut Vec<usize>, max_len: usize) -> u128 {
        let mut c = generates(g, t) as u128;
        if t.len() < max_len {
            for y in 0..g.order() {
                if y != g.identity() && !t.contains(&y) {
                    t.push(y);
                    c += rec(g, t, max_len);
                    t.pop();
                }
            }
        }
        c
    }
    (0..n).filter(|&x| x != g.identity()).map(|x| rec(g, &mut vec![x], max_len)).sum()
}

/// Whether the Hall form pads: the largest prime is below the threshold.
pub fn needs_padding(g: &GroupTable) -> bool {
    factorize(g.order()).last().is_some_and(|&(p, _)| (p as f64) < alpha(g.order()))
}
