//! Vertex-colored graphs encoding a group together with a composition
//! series, or with a Hall system and a generator vector.

use std::collections::VecDeque;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{word_order, GroupTable, Subgroup};
use crate::numth::ceil_log;
use crate::series::{HallSeries, LabeledSeries};

/// Meaning of a color id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Root,
    Internal,
    Left,
    Right,
    Equal,
    NotIdentity,
    /// Leaf `pos` (1-based) of the binary tree, optionally also marked
    /// as having exactly one nontrivial coordinate.
    Position { pos: usize, not_identity: bool },
}

impl Role {
    pub fn color(self) -> u32 {
        match self {
            Role::Root => 0,
            Role::Internal => 1,
            Role::Left => 2,
            Role::Right => 3,
            Role::Equal => 4,
            Role::NotIdentity => 5,
            Role::Position { pos, not_identity } => (6 + 2 * (pos - 1) + not_identity as usize) as u32,
        }
    }

    pub fn from_color(c: u32) -> Role {
        match c {
            0 => Role::Root,
            1 => Role::Internal,
            2 => Role::Left,
            3 => Role::Right,
            4 => Role::Equal,
            5 => Role::NotIdentity,
            c => Role::Position { pos: (c as usize - 6) / 2 + 1, not_identity: (c - 6) % 2 == 1 },
        }
    }

    pub fn is_not_identity(self) -> bool {
        matches!(self, Role::NotIdentity | Role::Position { not_identity: true, .. })
    }

    pub fn name(self) -> String {
        match self {
            Role::Root => "root".into(),
            Role::Internal => "internal".into(),
            Role::Left => "left".into(),
            Role::Right => "right".into(),
            Role::Equal => "equal".into(),
            Role::NotIdentity => "not-identity".into(),
            Role::Position { pos, not_identity: false } => format!("position-{pos}"),
            Role::Position { pos, not_identity: true } => format!("position-{pos}+not-identity"),
        }
    }
}

/// Undirected simple graph with one color per node.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ColoredGraph {
    adj: Vec<Vec<u32>>,
    colors: Vec<u32>,
    edges: usize,
}

impl ColoredGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, color: u32) -> u32 {
        self.adj.push(Vec::new());
        self.colors.push(color);
        (self.colors.len() - 1) as u32
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        debug_assert!(u != v, "self-loop");
        debug_assert!(!self.adj[u as usize].contains(&v), "parallel edge");
        self.adj[u as usize].push(v);
        self.adj[v as usize].push(u);
        self.edges += 1;
    }

    pub fn node_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn color(&self, v: u32) -> u32 {
        self.colors[v as usize]
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn set_color(&mut self, v: u32, c: u32) {
        self.colors[v as usize] = c;
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|a| a.len()).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, ascending.
    pub fn edge_list(&self) -> Vec<(u32, u32)> {
        let mut e: Vec<(u32, u32)> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| (u as u32) < v).map(move |&v| (u as u32, v)))
            .collect();
        e.sort_unstable();
        e
    }

    /// Sorts every adjacency list.
    pub fn sort_adjacency(&mut self) {
        for a in &mut self.adj {
            a.sort_unstable();
        }
    }

    pub fn from_parts(colors: Vec<u32>, edges: &[(u32, u32)]) -> Self {
        let mut g = ColoredGraph { adj: vec![Vec::new(); colors.len()], colors, edges: 0 };
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn root(&self) -> Option<u32> {
        self.colors.iter().position(|&c| c == Role::Root.color()).map(|v| v as u32)
    }

    /// DIMACS-like text with nodes renumbered by breadth-first order from
    /// the root: `p edge N M`, then `n <id> <color>` and `e <u> <v>`,
    /// all 1-based.
    pub fn to_dimacs(&self) -> String {
        let n = self.node_count();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut sorted = self.clone();
        sorted.sort_adjacency();
        let starts = self.root().into_iter().chain(0..n as u32);
        for s in starts {
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                order.push(v);
                for &w in sorted.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        let mut new_id = vec![0u32; n];
        for (i, &v) in order.iter().enumerate() {
            new_id[v as usize] = i as u32 + 1;
        }
        let mut out = format!("p edge {} {}\n", n, self.edges);
        for (i, &v) in order.iter().enumerate() {
            out.push_str(&format!("n {} {}\n", i + 1, self.color(v)));
        }
        let mut edges: Vec<(u32, u32)> = self
            .edge_list()
            .into_iter()
            .map(|(u, v)| {
                let (a, b) = (new_id[u as usize], new_id[v as usize]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        for (u, v) in edges {
            out.push_str(&format!("e {u} {v}\n"));
        }
        out
    }
}

/// Rooted tree whose leaves at depth `leaf_depth` stand for group
/// elements.
#[derive(Clone, Debug)]
pub struct RootedTree {
    pub parent: Vec<u32>,
    pub roles: Vec<Role>,
    /// Leaf node of each element.
    pub leaves: Vec<u32>,
    pub leaf_depth: usize,
}

impl RootedTree {
    fn new(root_role: Role) -> Self {
        RootedTree { parent: vec![u32::MAX], roles: vec![root_role], leaves: vec![], leaf_depth: 0 }
    }

    fn add(&mut self, parent: u32, role: Role) -> u32 {
        self.parent.push(parent);
        self.roles.push(role);
        (self.parent.len() - 1) as u32
    }

    pub fn size(&self) -> usize {
        self.parent.len()
    }

    pub fn to_graph(&self) -> ColoredGraph {
        let mut g = ColoredGraph::new();
        for r in &self.roles {
            g.add_node(r.color());
        }
        for (v, &p) in self.parent.iter().enumerate() {
            if p != u32::MAX {
                g.add_edge(p, v as u32);
            }
        }
        g
    }
}

/// Left cosets `x H` of `h` inside the set `within`, keyed by smallest
/// member.
fn coset_keys(g: &GroupTable, h: &Subgroup, within: &ElemSet) -> Vec<usize> {
    let mut key = vec![usize::MAX; g.order()];
    let hm = h.members();
    for x in within.iter() {
        if key[x] == usize::MAX {
            for &y in &hm {
                key[g.mul(x, y)] = x;
            }
        }
    }
    key
}

/// `(level j, coset key, parent entry)`
type TemplateEntry = (usize, usize, usize);

/// Coset tree of a series inside its top group: one entry per node,
/// top level first.
fn coset_template(g: &GroupTable, chain: &[Subgroup]) -> (Vec<TemplateEntry>, Vec<Vec<usize>>) {
    let m = chain.len() - 1;
    let top = chain[m].set().clone();
    let keys: Vec<Vec<usize>> = chain.iter().map(|h| coset_keys(g, h, &top)).collect();
    let mut nodes = vec![(m, top.first().unwrap(), usize::MAX)];
    let mut index_at: Vec<Vec<usize>> = vec![vec![usize::MAX; g.order()]; m + 1];
    index_at[m][top.first().unwrap()] = 0;
    for j in (0..m).rev() {
        for x in top.iter() {
            if keys[j][x] == x {
                let parent = index_at[j + 1][keys[j + 1][x]];
                index_at[j][x] = nodes.len();
                nodes.push((j, x, parent));
            }
        }
    }
    (nodes, keys)
}

/// Coset tree of a composition series: level `i` holds the left cosets
/// of `G_i`, leaves are elements.
pub fn build_tree(g: &GroupTable, s: &LabeledSeries) -> RootedTree {
    let (template, _) = coset_template(g, &s.chain);
    let mut t = RootedTree::new(Role::Root);
    let mut ids = vec![0u32; template.len()];
    t.leaves = vec![0; g.order()];
    for (idx, &(j, key, parent)) in template.iter().enumerate().skip(1) {
        ids[idx] = t.add(ids[parent], Role::Internal);
        if j == 0 {
            t.leaves[key] = ids[idx];
        }
    }
    t.leaf_depth = s.length();
    t
}

/// Pruned complete binary tree of depth `ceil(log2 k)` over the first `k`
/// leaf slots. Returns the tree and the node of each slot.
pub fn build_binary(k: usize) -> (RootedTree, Vec<u32>) {
    let depth = ceil_log(k, 2);
    let mut t = RootedTree::new(Role::Root);
    let mut slots = vec![0u32; k];
    fn go(t: &mut RootedTree, node: u32, lo: usize, d: usize, k: usize, slots: &mut Vec<u32>) {
        if d == 0 {
            slots[lo] = node;
            return;
        }
        let half = 1usize << (d - 1);
        for start in [lo, lo + half] {
            if start < k {
                let c = t.add(node, Role::Internal);
                go(t, c, start, d - 1, k, slots);
            }
        }
    }
    go(&mut t, 0, 0, depth, k, &mut slots);
    t.leaf_depth = depth;
    (t, slots)
}

/// A tree with one copy per element hung from each leaf, gadget leaves
/// and the edges recording the multiplication.
#[derive(Clone, Debug)]
pub struct ConeGraph {
    pub graph: ColoredGraph,
    /// Leaf of the top tree for each element.
    pub element_nodes: Vec<u32>,
    pub element_depth: usize,
    pub tree_size: usize,
}

fn build_cone(g: &GroupTable, tree: &RootedTree) -> ConeGraph {
    let n = g.order();
    let ts = tree.size();
    let mut graph = ColoredGraph::new();
    for r in &tree.roles {
        graph.add_node(r.color());
    }
    for (v, &p) in tree.parent.iter().enumerate() {
        if p != u32::MAX {
            graph.add_edge(p, v as u32);
        }
    }
    // copy_leaf[x][y] = node of y in the copy hanging from x
    let mut copy_leaf = vec![0u32; n * n];
    let mut map = vec![0u32; ts];
    for x in 0..n {
        map[0] = tree.leaves[x];
        for v in 1..ts {
            map[v] = graph.add_node(tree.roles[v].color());
            graph.add_edge(map[tree.parent[v] as usize], map[v]);
        }
        for y in 0..n {
            copy_leaf[x * n + y] = map[tree.leaves[y] as usize];
        }
    }
    let mut gad = vec![[0u32; 3]; n * n];
    for x in 0..n {
        for y in 0..n {
            let leaf = copy_leaf[x * n + y];
            for (k, role) in [Role::Left, Role::Right, Role::Equal].into_iter().enumerate() {
                let v = graph.add_node(role.color());
                graph.add_edge(leaf, v);
                gad[x * n + y][k] = v;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let z = g.mul(x, y);
            graph.add_edge(gad[x * n + y][0], gad[y * n + x][1]);
            graph.add_edge(gad[y * n + x][1], gad[z * n + y][2]);
        }
    }
    ConeGraph { graph, element_nodes: tree.leaves.clone(), element_depth: tree.leaf_depth, tree_size: ts }
}

/// Graph of a group with a composition series.
pub fn build_x(g: &GroupTable, s: &LabeledSeries) -> ConeGraph {
    build_cone(g, &build_tree(g, s))
}

/// Ordered coset representatives generating the first `kappa` Sylow
/// subgroups of a Hall system, listed by subgroup then by level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenVector {
    pub kappa: usize,
    pub reps: Vec<usize>,
}

/// Slots of a generator vector: the candidates `P_{i,j+1} \ P_{i,j}`.
fn genvector_slots(h: &HallSeries, kappa: usize) -> Vec<Vec<usize>> {
    let mut slots = Vec::new();
    for s in h.series.iter().take(kappa) {
        for w in s.chain.windows(2) {
            slots.push(w[1].members().into_iter().filter(|&x| !w[0].contains(x)).collect());
        }
    }
    slots
}

fn check_kappa(h: &HallSeries, alpha: f64) -> Result<usize> {
    let kappa = h.kappa(alpha);
    if kappa == 0 {
        return Err(Error::AlphaTooLarge(alpha));
    }
    Ok(kappa)
}

/// Every generator vector for the Hall system, in odometer order.
pub fn enumerate_genvectors(h: &HallSeries, alpha: f64) -> Result<GenVectorIter> {
    let kappa = check_kappa(h, alpha)?;
    let slots = genvector_slots(h, kappa);
    Ok(GenVectorIter { kappa, idx: vec![0; slots.len()], slots, done: false })
}

pub fn count_genvectors(h: &HallSeries, alpha: f64) -> Result<u128> {
    let kappa = check_kappa(h, alpha)?;
    Ok(genvector_slots(h, kappa).iter().map(|s| s.len() as u128).product())
}

pub struct GenVectorIter {
    kappa: usize,
    slots: Vec<Vec<usize>>,
    idx: Vec<usize>,
    done: bool,
}

impl Iterator for GenVectorIter {
    type Item = GenVector;

    fn next(&mut self) -> Option<GenVector> {
        if self.done || self.slots.iter().any(|s| s.is_empty()) {
            return None;
        }
        let out = GenVector { kappa: self.kappa, reps: self.idx.iter().zip(&self.slots).map(|(&i, s)| s[i]).collect() };
        let mut k = self.slots.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.idx[k] += 1;
            if self.idx[k] < self.slots[k].len() {
                break;
            }
            self.idx[k] = 0;
        }
        Some(out)
    }
}

/// Coordinates `(x_1, ..., x_l)` of every element with `x = x_1 ... x_l`
/// and `x_i` in the `i`-th Sylow subgroup.
pub fn sylow_coordinates(g: &GroupTable, h: &HallSeries) -> Vec<Vec<usize>> {
    let mut coords: Vec<Option<Vec<usize>>> = vec![None; g.order()];
    coords[g.identity()] = Some(vec![]);
    let mut cur = vec![g.identity()];
    for p in &h.sylows {
        let pm = p.members();
        let mut next_coords: Vec<Option<Vec<usize>>> = vec![None; g.order()];
        let mut next = Vec::new();
        for &d in &cur {
            for &y in &pm {
                let z = g.mul(d, y);
                let mut c = coords[d].clone().unwrap();
                c.push(y);
                next_coords[z] = Some(c);
                next.push(z);
            }
        }
        coords = next_coords;
        cur = next;
    }
    coords.into_iter().map(|c| c.expect("basis covers the group")).collect()
}

/// Tree of a Hall system: a binary tree over the product of the Sylow
/// subgroups with prime at least `alpha`, ordered by the generator
/// vector, followed by the coset trees of the remaining Sylow subgroups.
pub fn build_tree_hall(g: &GroupTable, h: &HallSeries, gv: &GenVector, alpha: f64) -> Result<RootedTree> {
    let kappa = check_kappa(h, alpha)?;
    if gv.kappa != kappa {
        return Err(Error::SignatureMismatch("generator vector built for a different alpha".into()));
    }
    let coords = sylow_coordinates(g, h);
    let u_order = word_order(g, &gv.reps);
    let u_size: usize = h.sylows.iter().take(kappa).map(|s| s.order()).product();
    if u_order.len() != u_size {
        return Err(Error::NotGenerating);
    }
    let (mut t, slots) = build_binary(u_size);
    let e = g.identity();
    // frontier: (node, prefix element, nontrivial coordinates so far)
    let mut frontier: Vec<(u32, usize, usize)> = Vec::new();
    for (k, &x) in u_order.iter().enumerate() {
        let cnt = coords[x][..kappa].iter().filter(|&&c| c != e).count();
        t.roles[slots[k] as usize] = Role::Position { pos: k + 1, not_identity: cnt == 1 };
        frontier.push((slots[k], x, cnt));
    }
    let mut depth = t.leaf_depth;
    for s in &h.series[kappa..] {
        let (template, keys) = coset_template(g, &s.chain);
        let mut next = Vec::new();
        for &(root, prefix, cnt) in &frontier {
            let mut ids = vec![root; template.len()];
            for (idx, &(j, key, parent)) in template.iter().enumerate().skip(1) {
                let outside = keys[j][e] != key;
                let role = if cnt + outside as usize == 1 { Role::NotIdentity } else { Role::Internal };
                ids[idx] = t.add(ids[parent], role);
                if j == 0 {
                    next.push((ids[idx], g.mul(prefix, key), cnt + (key != e) as usize));
                }
            }
        }
        frontier = next;
        depth += s.length();
    }
    t.leaves = vec![0; g.order()];
    for &(node, x, _) in &frontier {
        t.leaves[x] = node;
    }
    t.leaf_depth = depth;
    Ok(t)
}

/// Graph of a Hall system with a generator vector.
pub fn build_x_hall(g: &GroupTable, h: &HallSeries, gv: &GenVector, alpha: f64) -> Result<ConeGraph> {
    Ok(build_cone(g, &build_tree_hall(g, h, gv, alpha)?))
}
