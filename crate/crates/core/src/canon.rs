//! Canonical labeling of vertex-colored graphs by individualization and
//! refinement with automorphism pruning.

use std::cmp::Ordering;
use std::collections::VecDeque;

use sha2::{Digest, Sha256};

use crate::encoding::ColoredGraph;
use crate::error::{Error, Result};

/// Default bound on the number of search-tree nodes.
pub const DEFAULT_NODE_LIMIT: u64 = 5_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TargetCell {
    /// First non-singleton cell.
    #[default]
    First,
    /// First cell of maximum size.
    Largest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CanonOptions {
    pub node_limit: u64,
    pub target: TargetCell,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions { node_limit: DEFAULT_NODE_LIMIT, target: TargetCell::First }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CanonStats {
    pub search_nodes: u64,
    pub leaves: u64,
    pub automorphisms: u64,
}

/// Canonical byte encoding of a graph and the labeling producing it.
/// The encoding is the node count as 8 big-endian bytes, then each
/// node's color (4 bytes) in canonical order, then the sorted edge
/// pairs (4 + 4 bytes). Equality, ordering and hashing look only at
/// the encoding.
#[derive(Clone, Debug)]
pub struct CanonicalGraphForm {
    encoding: Vec<u8>,
    labeling: Vec<u32>,
}

impl CanonicalGraphForm {
    pub fn encoding(&self) -> &[u8] {
        &self.encoding
    }

    /// Canonical id of every original node.
    pub fn labeling(&self) -> &[u32] {
        &self.labeling
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(&self.encoding))
    }

    /// The canonical graph itself, with sorted adjacency lists.
    pub fn to_graph(&self) -> Result<ColoredGraph> {
        decode_encoding(&self.encoding)
    }
}

impl PartialEq for CanonicalGraphForm {
    fn eq(&self, other: &Self) -> bool {
        self.encoding == other.encoding
    }
}

impl Eq for CanonicalGraphForm {}

impl std::hash::Hash for CanonicalGraphForm {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.encoding.hash(state);
    }
}

impl PartialOrd for CanonicalGraphForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalGraphForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.encoding.cmp(&other.encoding)
    }
}

pub fn decode_encoding(enc: &[u8]) -> Result<ColoredGraph> {
    let bad = |m: &str| Error::MalformedCanonGraph(m.into());
    if enc.len() < 8 {
        return Err(bad("truncated header"));
    }
    let n = u64::from_be_bytes(enc[..8].try_into().unwrap()) as usize;
    let color_end = 8 + 4 * n;
    if enc.len() < color_end || !(enc.len() - color_end).is_multiple_of(8) {
        return Err(bad("bad length"));
    }
    let word = |i: usize| u32::from_be_bytes(enc[i..i + 4].try_into().unwrap());
    let colors: Vec<u32> = (0..n).map(|i| word(8 + 4 * i)).collect();
    let edges: Vec<(u32, u32)> = (color_end..enc.len()).step_by(8).map(|i| (word(i), word(i + 4))).collect();
    if edges.iter().any(|&(u, v)| u >= v || v as usize >= n) || edges.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("edge list not canonical"));
    }
    let mut g = ColoredGraph::from_parts(colors, &edges);
    g.sort_adjacency();
    Ok(g)
}

/// Plain color refinement: repeatedly recolor each node by its color and
/// the sorted multiset of neighbor colors until stable. New colors are
/// numbered in order of (old color, signature).
pub fn refine_colors(g: &ColoredGraph) -> Vec<u32> {
    let n = g.node_count();
    let mut distinct: Vec<u32> = g.colors().to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let mut c: Vec<u32> = g.colors().iter().map(|x| distinct.binary_search(x).unwrap() as u32).collect();
    let mut classes = distinct.len();
    loop {
        let mut sigs: Vec<(u32, Vec<u32>, usize)> = (0..n)
            .map(|v| {
                let mut s: Vec<u32> = g.neighbors(v as u32).iter().map(|&w| c[w as usize]).collect();
                s.sort_unstable();
                (c[v], s, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0u32; n];
        let mut id = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                id += 1;
            }
            next[sigs[i].2] = id;
        }
        let k = if n == 0 { 0 } else { id as usize + 1 };
        c = next;
        if k == classes {
            return c;
        }
        classes = k;
    }
}

/// Ordered partition of the nodes. Cells are identified by their start
/// position in `lab`.
#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    pos: Vec<u32>,
    cell_of: Vec<u32>,
    cell_end: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn from_colors(colors: &[u32]) -> Self {
        let n = colors.len();
        let mut lab: Vec<u32> = (0..n as u32).collect();
        lab.sort_by_key(|&v| (colors[v as usize], v));
        let mut pos = vec![0u32; n];
        let mut cell_of = vec![0u32; n];
        let mut cell_end = vec![0u32; n];
        let mut cells = 0;
        let mut start = 0;
        for i in 0..n {
            pos[lab[i] as usize] = i as u32;
            if i > 0 && colors[lab[i] as usize] != colors[lab[i - 1] as usize] {
                start = i;
            }
            if i == start {
                cells += 1;
            }
            cell_of[lab[i] as usize] = start as u32;
        }
        let mut i = 0;
        while i < n {
            let s = cell_of[lab[i] as usize] as usize;
            let mut e = i;
            while e < n && cell_of[lab[e] as usize] as usize == s {
                e += 1;
            }
            cell_end[s] = e as u32;
            i = e;
        }
        Partition { lab, pos, cell_of, cell_end, cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn cell_starts(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cells);
        let mut i = 0;
        while i < self.lab.len() {
            out.push(i as u32);
            i = self.cell_end[i] as usize;
        }
        out
    }

    fn target(&self, how: TargetCell) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut i = 0;
        while i < self.lab.len() {
            let e = self.cell_end[i] as usize;
            if e - i > 1 {
                match how {
                    TargetCell::First => return Some((i, e)),
                    TargetCell::Largest => {
                        if best.is_none_or(|(s, t)| e - i > t - s) {
                            best = Some((i, e));
                        }
                    }
                }
            }
            i = e;
        }
        best
    }

    /// Splits `v` off the front of its cell; returns the new singleton.
    fn individualize(&mut self, v: u32) -> u32 {
        let s = self.cell_of[v as usize] as usize;
        let e = self.cell_end[s] as usize;
        let p = self.pos[v as usize] as usize;
        let w = self.lab[s];
        self.lab.swap(s, p);
        self.pos[w as usize] = p as u32;
        self.pos[v as usize] = s as u32;
        self.cell_end[s] = s as u32 + 1;
        self.cell_end[s + 1] = e as u32;
        for i in s + 1..e {
            self.cell_of[self.lab[i] as usize] = s as u32 + 1;
        }
        self.cells += 1;
        s as u32
    }

    /// Refines to the coarsest equitable partition below the current one,
    /// starting from the given splitter cells.
    fn refine(&mut self, g: &ColoredGraph, initial: &[u32], scratch: &mut Scratch) {
        let mut queue: VecDeque<u32> = VecDeque::new();
        for &s in initial {
            scratch.in_queue[s as usize] = true;
            queue.push_back(s);
        }
        while let Some(ws) = queue.pop_front() {
            scratch.in_queue[ws as usize] = false;
            if self.is_discrete() {
                continue;
            }
            let we = self.cell_end[ws as usize];
            scratch.touched.clear();
            for p in ws..we {
                let w = self.lab[p as usize];
                for &u in g.neighbors(w) {
                    if scratch.count[u as usize] == 0 {
                        scratch.touched.push(u);
                    }
                    scratch.count[u as usize] += 1;
                }
            }
            let mut by_cell: Vec<(u32, u32)> =
                scratch.touched.iter().map(|&u| (self.cell_of[u as usize], u)).collect();
            by_cell.sort_unstable();
            let mut i = 0;
            while i < by_cell.len() {
                let c = by_cell[i].0;
                let mut j = i;
                while j < by_cell.len() && by_cell[j].0 == c {
                    j += 1;
                }
                let s = c as usize;
                let e = self.cell_end[s] as usize;
                let t = j - i;
                if e - s == 1 {
                    i = j;
                    continue;
                }
                let count = &scratch.count;
                let first = count[by_cell[i].1 as usize];
                if t == e - s && by_cell[i..j].iter().all(|&(_, v)| count[v as usize] == first) {
                    i = j;
                    continue;
                }
                // move the touched vertices to the back of the cell
                for (k, &(_, u)) in by_cell[i..j].iter().enumerate() {
                    let dst = e - 1 - k;
                    let src = self.pos[u as usize] as usize;
                    let w = self.lab[dst];
                    self.lab.swap(src, dst);
                    self.pos[w as usize] = src as u32;
                    self.pos[u as usize] = dst as u32;
                }
                let lo = e - t;
                self.lab[lo..e].sort_unstable_by_key(|&v| (count[v as usize], v));
                let mut starts = vec![s];
                if lo > s {
                    starts.push(lo);
                }
                for i in lo..e {
                    self.pos[self.lab[i] as usize] = i as u32;
                    if i > lo && count[self.lab[i] as usize] != count[self.lab[i - 1] as usize] {
                        starts.push(i);
                    }
                }
                starts.push(e);
                for k in 0..starts.len() - 1 {
                    let (a, b) = (starts[k], starts[k + 1]);
                    self.cell_end[a] = b as u32;
                    if a != s {
                        for i in a..b {
                            self.cell_of[self.lab[i] as usize] = a as u32;
                        }
                    }
                }
                self.cells += starts.len() - 2;
                let pieces = starts.len() - 1;
                if scratch.in_queue[s] {
                    for &a in &starts[1..pieces] {
                        scratch.in_queue[a] = true;
                        queue.push_back(a as u32);
                    }
                } else {
                    let mut largest = 0;
                    for k in 1..pieces {
                        if starts[k + 1] - starts[k] > starts[largest + 1] - starts[largest] {
                            largest = k;
                        }
                    }
                    for (k, &a) in starts[..pieces].iter().enumerate() {
                        if k != largest {
                            scratch.in_queue[a] = true;
                            queue.push_back(a as u32);
                        }
                    }
                }
                i = j;
            }
            for &u in &scratch.touched {
                scratch.count[u as usize] = 0;
            }
        }
    }
}

struct Scratch {
    count: Vec<u32>,
    touched: Vec<u32>,
    in_queue: Vec<bool>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            count: vec![0; n],
            touched: Vec::new(),
            in_queue: vec![false; n],
        }
    }
}

fn encode(g: &ColoredGraph, lab: &[u32], pos: &[u32]) -> Vec<u8> {
    let n = lab.len();
    let mut out = Vec::with_capacity(8 + 4 * n + 8 * g.edge_count());
    out.extend_from_slice(&(n as u64).to_be_bytes());
    for &v in lab {
        out.extend_from_slice(&g.color(v).to_be_bytes());
    }
    let mut edges: Vec<u64> = Vec::with_capacity(g.edge_count());
    for u in 0..n as u32 {
        let pu = pos[u as usize];
        for &v in g.neighbors(u) {
            let pv = pos[v as usize];
            if pu < pv {
                edges.push(((pu as u64) << 32) | pv as u64);
            }
        }
    }
    edges.sort_unstable();
    for e in edges {
        out.extend_from_slice(&e.to_be_bytes());
    }
    out
}

struct Leaf {
    enc: Vec<u8>,
    lab: Vec<u32>,
}

struct Search<'a> {
    g: &'a ColoredGraph,
    opts: CanonOptions,
    stats: CanonStats,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<u32>>,
    scratch: Scratch,
}

fn find(uf: &mut [u32], mut x: u32) -> u32 {
    while uf[x as usize] != x {
        uf[x as usize] = uf[uf[x as usize] as usize];
        x = uf[x as usize];
    }
    x
}

impl Search<'_> {
    fn leaf(&mut self, part: &Partition) {
        self.stats.leaves += 1;
        let enc = encode(self.g, &part.lab, &part.pos);
        let Some(best) = &self.best else {
            self.first = Some(Leaf { enc: enc.clone(), lab: part.lab.clone() });
            self.best = Some(Leaf { enc, lab: part.lab.clone() });
            return;
        };
        let reference = match enc.cmp(&best.enc) {
            Ordering::Less => {
                self.best = Some(Leaf { enc, lab: part.lab.clone() });
                return;
            }
            Ordering::Equal => best,
            Ordering::Greater => match &self.first {
                Some(f) if f.enc == enc => f,
                _ => return,
            },
        };
        let mut gamma = vec![0u32; part.lab.len()];
        for (a, b) in part.lab.iter().zip(&reference.lab) {
            gamma[*a as usize] = *b;
        }
        if gamma.iter().enumerate().any(|(i, &v)| i as u32 != v) {
            self.autos.push(gamma);
            self.stats.automorphisms += 1;
        }
    }

    fn visit(&mut self, part: Partition, prefix: &mut Vec<u32>) -> Result<()> {
        self.stats.search_nodes += 1;
        if self.stats.search_nodes > self.opts.node_limit {
            return Err(Error::ResourceLimit(self.opts.node_limit));
        }
        if part.is_discrete() {
            self.leaf(&part);
            return Ok(());
        }
        let (s, e) = part.target(self.opts.target).expect("non-discrete partition");
        let mut members: Vec<u32> = part.lab[s..e].to_vec();
        members.sort_unstable();
        let mut explored: Vec<u32> = Vec::new();
        let mut uf: Vec<u32> = Vec::new();
        let mut seen_autos = usize::MAX;
        for &v in &members {
            if !explored.is_empty() {
                if seen_autos != self.autos.len() {
                    uf = (0..self.g.node_count() as u32).collect();
                    for gamma in &self.autos {
                        if prefix.iter().all(|&p| gamma[p as usize] == p) {
                            for &x in &members {
                                let (a, b) = (find(&mut uf, x), find(&mut uf, gamma[x as usize]));
                                if a != b {
                                    uf[a as usize] = b;
                                }
                            }
                        }
                    }
                    seen_autos = self.autos.len();
                }
                let rv = find(&mut uf, v);
                if explored.iter().any(|&w| find(&mut uf, w) == rv) {
                    continue;
                }
            }
            let mut child = part.clone();
            let cell = child.individualize(v);
            child.refine(self.g, &[cell], &mut self.scratch);
            prefix.push(v);
            self.visit(child, prefix)?;
            prefix.pop();
            explored.push(v);
        }
        Ok(())
    }
}

pub fn canonical_form(g: &ColoredGraph) -> Result<CanonicalGraphForm> {
    canonical_form_with(g, &CanonOptions::default()).map(|(f, _)| f)
}

pub fn canonical_form_with(g: &ColoredGraph, opts: &CanonOptions) -> Result<(CanonicalGraphForm, CanonStats)> {
    let n = g.node_count();
    let mut part = Partition::from_colors(g.colors());
    let mut scratch = Scratch::new(n);
    let starts = part.cell_starts();
    part.refine(g, &starts, &mut scratch);
    let mut search =
        Search { g, opts: *opts, stats: CanonStats::default(), first: None, best: None, autos: Vec::new(), scratch };
    search.visit(part, &mut Vec::new())?;
    let best = search.best.expect("at least one leaf");
    let mut labeling = vec![0u32; n];
    for (i, &v) in best.lab.iter().enumerate() {
        labeling[v as usize] = i as u32;
    }
    Ok((CanonicalGraphForm { encoding: best.enc, labeling }, search.stats))
}

fn cheap_invariant(g: &ColoredGraph) -> (usize, usize, Vec<(u32, usize)>) {
    let mut v: Vec<(u32, usize)> = (0..g.node_count() as u32).map(|x| (g.color(x), g.neighbors(x).len())).collect();
    v.sort_unstable();
    (g.node_count(), g.edge_count(), v)
}

pub fn isomorphic(a: &ColoredGraph, b: &ColoredGraph) -> Result<bool> {
    if cheap_invariant(a) != cheap_invariant(b) {
        return Ok(false);
    }
    Ok(canonical_form(a)?.encoding == canonical_form(b)?.encoding)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> ColoredGraph {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i.min((i + 1) % n), i.max((i + 1) % n))).collect();
        ColoredGraph::from_parts(vec![0; n as usize], &edges)
    }

    #[test]
    fn relabeled_cycles_agree() {
        let a = cycle(6);
        let perm = [3u32, 0, 5, 1, 4, 2];
        let edges: Vec<(u32, u32)> = a.edge_list().iter().map(|&(u, v)| (perm[u as usize], perm[v as usize])).collect();
        let b = ColoredGraph::from_parts(vec![0; 6], &edges);
        assert_eq!(canonical_form(&a).unwrap().encoding(), canonical_form(&b).unwrap().encoding());
        let two_triangles = ColoredGraph::from_parts(vec![0; 6], &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert!(!isomorphic(&a, &two_triangles).unwrap());
    }

    #[test]
    fn refine_colors_separates_degrees() {
        let g = ColoredGraph::from_parts(vec![0; 4], &[(0, 1), (1, 2), (2, 3)]);
        let c = refine_colors(&g);
        assert_eq!(c[0], c[3]);
        assert_eq!(c[1], c[2]);
        assert_ne!(c[0], c[1]);
    }

    #[test]
    fn encoding_roundtrip() {
        let f = canonical_form(&cycle(5)).unwrap();
        let g = f.to_graph().unwrap();
        assert_eq!(canonical_form(&g).unwrap().encoding(), f.encoding());
    }

    #[test]
    fn budget_is_enforced() {
        let g = ColoredGraph::from_parts(vec![0; 8], &[]);
        let opts = CanonOptions { node_limit: 3, ..Default::default() };
        assert!(matches!(canonical_form_with(&g, &opts), Err(Error::ResourceLimit(3))));
    }
}
