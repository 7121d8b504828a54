#![allow(dead_code)]

use groupiso::construct::ConstructorSpec;
use groupiso::GroupTable;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn build(spec: &str) -> GroupTable {
    spec.parse::<ConstructorSpec>().unwrap().build().unwrap()
}

pub fn shuffled(g: &GroupTable, seed: u64) -> GroupTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..g.order()).collect();
    perm.shuffle(&mut rng);
    g.relabel(&perm).unwrap()
}

/// Groups of order at most 16: every abelian type and a selection of
/// nonabelian ones.
pub const SMALL: &[&str] = &[
    "cyclic:1",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "direct-product:2,2",
    "cyclic:5",
    "cyclic:6",
    "dihedral:3",
    "cyclic:7",
    "cyclic:8",
    "direct-product:4,2",
    "direct-product:2,2,2",
    "dihedral:4",
    "quaternion8",
    "cyclic:9",
    "direct-product:3,3",
    "cyclic:10",
    "dihedral:5",
    "cyclic:11",
    "cyclic:12",
    "direct-product:2,6",
    "alt:4",
    "dihedral:6",
    "dicyclic:3",
    "cyclic:13",
    "cyclic:14",
    "dihedral:7",
    "cyclic:15",
    "cyclic:16",
    "direct-product:8,2",
    "direct-product:4,4",
    "direct-product:4,2,2",
    "direct-product:2,2,2,2",
    "dihedral:8",
    "semidirect:4,4,3",
    "semidirect:8,2,5",
    "semidirect:8,2,3",
    "dicyclic:4",
];

/// Element orders of a generating list chosen greedily.
fn gens_of(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut reached = vec![false; n];
    reached[g.identity()] = true;
    let mut size = 1;
    let mut cands: Vec<usize> = (0..n).collect();
    cands.sort_by_key(|&x| std::cmp::Reverse(g.elem_order(x)));
    for x in cands {
        if size == n {
            break;
        }
        if reached[x] {
            continue;
        }
        gens.push(x);
        let mut list: Vec<usize> = (0..n).filter(|&y| reached[y]).collect();
        let mut i = 0;
        while i < list.len() {
            let y = list[i];
            for &s in &gens {
                let z = g.mul(y, s);
                if !reached[z] {
                    reached[z] = true;
                    list.push(z);
                }
            }
            i += 1;
        }
        size = list.len();
    }
    gens
}

/// Number of isomorphisms `G -> H`, by trying every image of a greedy
/// generating list.
pub fn count_isomorphisms(g: &GroupTable, h: &GroupTable) -> usize {
    brute_isos(g, h, usize::MAX)
}

pub fn brute_isomorphic(g: &GroupTable, h: &GroupTable) -> bool {
    brute_isos(g, h, 1) > 0
}

fn brute_isos(g: &GroupTable, h: &GroupTable, stop: usize) -> usize {
    let n = g.order();
    if h.order() != n {
        return 0;
    }
    let gens = gens_of(g);
    let mut found = 0;
    let mut images = vec![0usize; gens.len()];
    fn rec(
        g: &GroupTable,
        h: &GroupTable,
        gens: &[usize],
        images: &mut Vec<usize>,
        i: usize,
        found: &mut usize,
        stop: usize,
    ) {
        if *found >= stop {
            return;
        }
        if i == gens.len() {
            if let Some(m) = extend(g, h, gens, images) {
                if (0..g.order()).all(|x| (0..g.order()).all(|y| m[g.mul(x, y)] == h.mul(m[x], m[y]))) {
                    *found += 1;
                }
            }
            return;
        }
        for y in 0..h.order() {
            if h.elem_order(y) == g.elem_order(gens[i]) {
                images[i] = y;
                rec(g, h, gens, images, i + 1, found, stop);
            }
        }
    }
    rec(g, h, &gens, &mut images, 0, &mut found, stop);
    found
}

/// Map defined by words in the generators; `None` if inconsistent or not
/// bijective.
pub fn extend(g: &GroupTable, h: &GroupTable, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut m = vec![usize::MAX; n];
    m[g.identity()] = h.identity();
    let mut list = vec![g.identity()];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let im = h.mul(m[x], images[k]);
            if m[y] == usize::MAX {
                m[y] = im;
                list.push(y);
            } else if m[y] != im {
                return None;
            }
        }
        i += 1;
    }
    let mut seen = vec![false; n];
    for &v in &m {
        if v == usize::MAX || seen[v] {
            return None;
        }
        seen[v] = true;
    }
    Some(m)
}
