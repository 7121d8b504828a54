//! Finite groups as multiplication tables, subgroups, quotients and
//! generator-induced element orders.

use std::cmp::Ordering;
use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};

/// Orders up to this size get a full associativity check by default.
pub const FULL_CHECK_LIMIT: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Validation {
    /// Full check up to [`FULL_CHECK_LIMIT`], sampled above.
    #[default]
    Auto,
    Full,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupTable {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    orders: Vec<usize>,
}

impl std::fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GroupTable(n={})", self.n)
    }
}

impl GroupTable {
    /// Builds a validated group from 0-based rows.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        Self::from_rows_with(rows, Validation::Auto)
    }

    pub fn from_rows_with(rows: &[Vec<usize>], mode: Validation) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotAGroup(format!("row {} has {} entries, expected {n}", i + 1, r.len())));
            }
            for &v in r {
                if v >= n {
                    return Err(Error::NotAGroup(format!("entry {} out of range in row {}", v + 1, i + 1)));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(n, table, mode)
    }

    /// Builds a validated group from a flat row-major 0-based table.
    pub fn from_flat(n: usize, table: Vec<u32>, mode: Validation) -> Result<Self> {
        if n == 0 || table.len() != n * n {
            return Err(Error::NotAGroup("table size mismatch".into()));
        }
        if table.iter().any(|&v| v as usize >= n) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        let mut seen = ElemSet::new(n);
        for a in 0..n {
            seen = ElemSet::new(seen.universe());
            for b in 0..n {
                if !seen.insert(table[a * n + b] as usize) {
                    return Err(Error::NotAGroup(format!("row {} is not a permutation", a + 1)));
                }
            }
        }
        for b in 0..n {
            seen = ElemSet::new(n);
            for a in 0..n {
                if !seen.insert(table[a * n + b] as usize) {
                    return Err(Error::NotAGroup(format!("column {} is not a permutation", b + 1)));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|y| table[e * n + y] as usize == y && table[y * n + e] as usize == y))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let g = Self::assemble(n, table, identity);
        for x in 0..n {
            let y = g.inverses[x];
            if g.mul(x, y) != identity || g.mul(y, x) != identity {
                return Err(Error::NotAGroup(format!("element {} has no two-sided inverse", x + 1)));
            }
        }
        let full = mode == Validation::Full || n <= FULL_CHECK_LIMIT;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
                Err(Error::NotAGroup(format!("associativity fails at ({}, {}, {})", a + 1, b + 1, c + 1)))
            } else {
                Ok(())
            }
        };
        if full {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10 * n * n {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(g)
    }

    /// Builds a table known to describe a group.
    pub(crate) fn trusted(n: usize, table: Vec<u32>) -> Self {
        let identity = (0..n).find(|&e| (0..n).all(|y| table[e * n + y] as usize == y)).expect("identity");
        Self::assemble(n, table, identity)
    }

    fn assemble(n: usize, table: Vec<u32>, identity: usize) -> Self {
        let mut inverses = vec![0; n];
        for x in 0..n {
            inverses[x] = (0..n).find(|&y| table[x * n + y] as usize == identity).unwrap_or(identity);
        }
        let mut orders = vec![1; n];
        for x in 0..n {
            let mut y = x;
            let mut k = 1;
            while y != identity && k <= n {
                y = table[y * n + x] as usize;
                k += 1;
            }
            orders[x] = k;
        }
        GroupTable { n, table, identity, inverses, orders }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elem_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    /// `g a g^-1`.
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn flat(&self) -> &[u32] {
        &self.table
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v = self.orders.clone();
        v.sort_unstable();
        v
    }

    /// The group with element `x` renamed to `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n;
        if perm.len() != n || ElemSet::from_elems(n, perm.iter().copied()).len() != n {
            return Err(Error::BadParameters("relabeling is not a permutation".into()));
        }
        let mut t = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                t[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u32;
            }
        }
        Ok(Self::trusted(n, t))
    }

    /// Direct product; the pair `(a, b)` gets id `a * |other| + b`.
    pub fn direct_product(&self, other: &GroupTable) -> GroupTable {
        let (n, m) = (self.n, other.n);
        let mut t = vec![0u32; n * m * n * m];
        for a1 in 0..n {
            for b1 in 0..m {
                for a2 in 0..n {
                    for b2 in 0..m {
                        let x = a1 * m + b1;
                        let y = a2 * m + b2;
                        t[x * n * m + y] = (self.mul(a1, a2) * m + other.mul(b1, b2)) as u32;
                    }
                }
            }
        }
        Self::trusted(n * m, t)
    }

    /// Serializes in `.gtab` form: `n`, then `n` rows of 1-based ids.
    pub fn to_gtab(&self) -> String {
        table_to_gtab(self.n, self.table.iter().map(|&v| v as usize + 1))
    }
}

pub(crate) fn table_to_gtab(n: usize, one_based: impl Iterator<Item = usize>) -> String {
    let mut out = format!("{n}\n");
    let vals: Vec<usize> = one_based.collect();
    for row in vals.chunks(n.max(1)) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Parses `.gtab` text: `#` comment lines, then `n`, then `n` rows.
pub fn parse_gtab(text: &str) -> Result<GroupTable> {
    parse_gtab_with(text, Validation::Auto)
}

pub fn parse_gtab_with(text: &str, mode: Validation) -> Result<GroupTable> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing order line".into() })?;
    let n: usize = first.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad order '{first}'") })?;
    if n == 0 {
        return Err(Error::Parse { line: ln, msg: "order must be positive".into() });
    }
    let mut table = Vec::with_capacity(n * n);
    for r in 0..n {
        let (ln, l) = lines.next().ok_or(Error::Parse { line: ln + r + 1, msg: format!("missing row {}", r + 1) })?;
        let mut count = 0;
        for tok in l.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::Parse { line: ln, msg: format!("bad entry '{tok}'") })?;
            if v == 0 || v > n {
                return Err(Error::Parse { line: ln, msg: format!("entry {v} out of range 1..{n}") });
            }
            table.push((v - 1) as u32);
            count += 1;
        }
        if count != n {
            return Err(Error::Parse { line: ln, msg: format!("row has {count} entries, expected {n}") });
        }
    }
    if let Some((ln, _)) = lines.next() {
        return Err(Error::Parse { line: ln, msg: "trailing content after table".into() });
    }
    GroupTable::from_flat(n, table, mode)
}

/// A subset of a group closed under the group law, stored as a bitset.
/// Ordered by size first, then by ascending member list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: ElemSet,
}

impl Subgroup {
    pub fn trivial(g: &GroupTable) -> Self {
        Subgroup { members: ElemSet::from_elems(g.order(), [g.identity()]) }
    }

    pub fn whole(g: &GroupTable) -> Self {
        Subgroup { members: ElemSet::full(g.order()) }
    }

    /// Wraps a set already known to be a subgroup.
    pub fn from_set(members: ElemSet) -> Self {
        Subgroup { members }
    }

    /// Checks closure under the group law before wrapping.
    pub fn new(g: &GroupTable, members: ElemSet) -> Result<Self> {
        if !members.contains(g.identity()) {
            return Err(Error::NotAGroup("subset lacks the identity".into()));
        }
        let v = members.to_vec();
        for &a in &v {
            for &b in &v {
                if !members.contains(g.mul(a, b)) {
                    return Err(Error::NotAGroup("subset is not closed".into()));
                }
            }
        }
        Ok(Subgroup { members })
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn set(&self) -> &ElemSet {
        &self.members
    }

    pub fn members(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order().cmp(&other.order()).then_with(|| self.members.cmp(&other.members))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.members)
    }
}

/// Elements reachable from the identity by right multiplication with `gens`.
fn span(g: &GroupTable, gens: &[usize]) -> ElemSet {
    let mut set = ElemSet::from_elems(g.order(), [g.identity()]);
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                stack.push(y);
            }
        }
    }
    set
}

/// Subgroup generated by `seeds`.
pub fn closure(g: &GroupTable, seeds: impl IntoIterator<Item = usize>) -> Subgroup {
    let mut gens: Vec<usize> = Vec::new();
    let mut cur = ElemSet::from_elems(g.order(), [g.identity()]);
    for s in seeds {
        if !cur.contains(s) {
            gens.push(s);
            cur = span(g, &gens);
        }
    }
    Subgroup { members: cur }
}

/// Subgroup generated by `h` and the extra elements.
pub fn closure_with(g: &GroupTable, h: &Subgroup, extra: impl IntoIterator<Item = usize>) -> Subgroup {
    let mut gens = small_generators(g, h);
    let mut cur = h.members.clone();
    for s in extra {
        if !cur.contains(s) {
            gens.push(s);
            cur = span(g, &gens);
        }
    }
    Subgroup { members: cur }
}

/// A short generating list of `h`, chosen greedily by ascending id.
pub fn small_generators(g: &GroupTable, h: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut cur = ElemSet::from_elems(g.order(), [g.identity()]);
    for x in h.members.iter() {
        if !cur.contains(x) {
            gens.push(x);
            cur = span(g, &gens);
            if cur.len() == h.order() {
                break;
            }
        }
    }
    gens
}

pub fn conjugate_subgroup(g: &GroupTable, h: &Subgroup, x: usize) -> Subgroup {
    Subgroup { members: ElemSet::from_elems(g.order(), h.members.iter().map(|a| g.conj(a, x))) }
}

pub fn is_normal(g: &GroupTable, h: &Subgroup) -> bool {
    let gens = small_generators(g, &Subgroup::whole(g));
    let hg = small_generators(g, h);
    hg.iter().all(|&a| gens.iter().all(|&x| h.contains(g.conj(a, x))))
}

pub fn normal_closure(g: &GroupTable, seeds: impl IntoIterator<Item = usize>) -> Subgroup {
    let gens = small_generators(g, &Subgroup::whole(g));
    let mut h = closure(g, seeds);
    loop {
        let hg = small_generators(g, &h);
        let extra: Vec<usize> =
            hg.iter().flat_map(|&a| gens.iter().map(move |&x| (a, x))).map(|(a, x)| g.conj(a, x)).collect();
        if extra.iter().all(|&e| h.contains(e)) {
            return h;
        }
        h = closure_with(g, &h, extra);
    }
}

/// The set `{ab : a in A, b in B}`.
pub fn product_set(g: &GroupTable, a: &ElemSet, b: &ElemSet) -> ElemSet {
    let mut out = ElemSet::new(g.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(g.mul(x, y));
        }
    }
    out
}

/// `G/N` together with the projection and coset representatives.
/// Cosets are numbered by their smallest member, which is also the
/// representative.
#[derive(Clone, Debug)]
pub struct QuotientView {
    pub quotient: GroupTable,
    pub projection: Vec<usize>,
    pub representatives: Vec<usize>,
}

pub fn quotient(g: &GroupTable, nsub: &Subgroup) -> Result<QuotientView> {
    if !is_normal(g, nsub) {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    let mut projection = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let nm = nsub.members();
    for x in 0..n {
        if projection[x] == usize::MAX {
            let c = reps.len();
            reps.push(x);
            for &m in &nm {
                projection[g.mul(x, m)] = c;
            }
        }
    }
    let k = reps.len();
    let mut t = vec![0u32; k * k];
    for a in 0..k {
        for b in 0..k {
            t[a * k + b] = projection[g.mul(reps[a], reps[b])] as u32;
        }
    }
    Ok(QuotientView { quotient: GroupTable::trusted(k, t), projection, representatives: reps })
}

/// Full preimage in the parent of a subgroup of the quotient.
pub fn preimage(q: &QuotientView, k: &Subgroup) -> Subgroup {
    let n = q.projection.len();
    Subgroup { members: ElemSet::from_elems(n, (0..n).filter(|&x| k.contains(q.projection[x]))) }
}

/// Pulls a subgroup back along an arbitrary projection map.
pub fn preimage_along(projection: &[usize], k: &ElemSet) -> Subgroup {
    let n = projection.len();
    Subgroup { members: ElemSet::from_elems(n, (0..n).filter(|&x| k.contains(projection[x]))) }
}

/// The subgroup `h` as a group of its own. Local id `i` corresponds to
/// parent id `embed[i]`, with `embed` ascending.
pub fn subgroup_table(g: &GroupTable, h: &Subgroup) -> (GroupTable, Vec<usize>) {
    let embed = h.members();
    let k = embed.len();
    let mut local = vec![usize::MAX; g.order()];
    for (i, &x) in embed.iter().enumerate() {
        local[x] = i;
    }
    let mut t = vec![0u32; k * k];
    for a in 0..k {
        for b in 0..k {
            t[a * k + b] = local[g.mul(embed[a], embed[b])] as u32;
        }
    }
    (GroupTable::trusted(k, t), embed)
}

/// Total order on a group induced by an ordered generating list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenOrder {
    pub generators: Vec<usize>,
    /// Position of every element, 0 for the identity.
    pub rank: Vec<usize>,
    /// Elements listed in increasing order.
    pub elements: Vec<usize>,
}

/// Orders `<gens>` by length of the greedy minimal word, then
/// lexicographically by that word.
pub fn word_order(g: &GroupTable, gens: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    dist[g.identity()] = 0;
    let mut queue = VecDeque::from([g.identity()]);
    let mut reached = vec![g.identity()];
    while let Some(x) = queue.pop_front() {
        for &s in gens {
            let y = g.mul(x, s);
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
                reached.push(y);
            }
        }
    }
    let mut keyed: Vec<(Vec<u32>, usize)> = reached
        .iter()
        .map(|&x| {
            let mut word = Vec::with_capacity(dist[x]);
            let mut cur = g.identity();
            let mut r = dist[x];
            while r > 0 {
                for (i, &s) in gens.iter().enumerate() {
                    let nxt = g.mul(cur, s);
                    if dist[g.mul(g.inv(nxt), x)] == r - 1 {
                        word.push(i as u32);
                        cur = nxt;
                        break;
                    }
                }
                r -= 1;
            }
            (word, x)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    keyed.into_iter().map(|(_, x)| x).collect()
}

pub fn cayley_order(g: &GroupTable, gens: &[usize]) -> Result<GenOrder> {
    let elements = word_order(g, gens);
    if elements.len() != g.order() {
        return Err(Error::NotGenerating);
    }
    let mut rank = vec![0; g.order()];
    for (i, &x) in elements.iter().enumerate() {
        rank[x] = i;
    }
    Ok(GenOrder { generators: gens.to_vec(), rank, elements })
}

pub fn generates(g: &GroupTable, gens: &[usize]) -> bool {
    span(g, gens).len() == g.order()
}

/// Extends `g_i -> h_i` to a map on `<g_1..g_k>`, checking consistency,
/// injectivity and multiplicativity. Returns the partial map with
/// `usize::MAX` outside the generated subgroup.
pub fn extend_partial(g: &GroupTable, h: &GroupTable, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    let mut used = ElemSet::new(h.order());
    map[g.identity()] = h.identity();
    used.insert(h.identity());
    let mut queue = VecDeque::from([g.identity()]);
    let mut reached = vec![g.identity()];
    while let Some(x) = queue.pop_front() {
        for &(a, b) in pairs {
            let y = g.mul(x, a);
            let img = h.mul(map[x], b);
            if map[y] == usize::MAX {
                if !used.insert(img) {
                    return None;
                }
                map[y] = img;
                queue.push_back(y);
                reached.push(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    for &x in &reached {
        for &y in &reached {
            if map[g.mul(x, y)] != h.mul(map[x], map[y]) {
                return None;
            }
        }
    }
    Some(map)
}

/// The isomorphism `G -> H` determined by `g_i -> h_i`, if any.
pub fn extend_to_isomorphism(g: &GroupTable, h: &GroupTable, pairs: &[(usize, usize)]) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let map = extend_partial(g, h, pairs)?;
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(map)
}

/// Checks that `map` is an isomorphism `G -> H`.
pub fn is_isomorphism(g: &GroupTable, h: &GroupTable, map: &[usize]) -> bool {
    let n = g.order();
    if h.order() != n || map.len() != n || ElemSet::from_elems(n, map.iter().copied().filter(|&v| v < n)).len() != n {
        return false;
    }
    (0..n).all(|x| (0..n).all(|y| map[g.mul(x, y)] == h.mul(map[x], map[y])))
}
