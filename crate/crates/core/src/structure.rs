//! Normal structure: minimal normal subgroups, socle, simplicity,
//! Sylow and Hall subgroups, Sylow bases and classification.

use std::collections::HashSet;

use serde::Serialize;

use crate::bitset::ElemSet;
use crate::error::{Error, Result};
use crate::group::{
    closure, closure_with, conjugate_subgroup, is_normal, normal_closure, product_set, GroupTable, Subgroup,
};
use crate::numth::{factorize, is_pi_number, is_prime};

/// Representatives of the conjugacy classes, ascending.
pub fn class_representatives(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    let mut seen = ElemSet::new(n);
    let mut reps = Vec::new();
    for x in 0..n {
        if seen.contains(x) {
            continue;
        }
        reps.push(x);
        for y in 0..n {
            seen.insert(g.conj(x, y));
        }
    }
    reps
}

/// Minimal normal subgroups sorted by size, then member list.
pub fn minimal_normal_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let mut cands: Vec<Subgroup> = Vec::new();
    let mut seen = HashSet::new();
    for x in class_representatives(g) {
        if x == g.identity() {
            continue;
        }
        let c = normal_closure(g, [x]);
        if seen.insert(c.clone()) {
            cands.push(c);
        }
    }
    let mut out: Vec<Subgroup> = cands
        .iter()
        .filter(|n| !cands.iter().any(|m| m != *n && m.is_subgroup_of(n)))
        .cloned()
        .collect();
    out.sort();
    out
}

pub fn socle(g: &GroupTable) -> Subgroup {
    let mns = minimal_normal_subgroups(g);
    let mut acc = Subgroup::trivial(g);
    for m in &mns {
        acc = closure_with(g, &acc, m.members());
    }
    acc
}

pub fn is_simple(g: &GroupTable) -> Result<bool> {
    if g.order() == 1 {
        return Err(Error::TrivialGroup);
    }
    Ok(class_representatives(g)
        .into_iter()
        .filter(|&x| x != g.identity())
        .all(|x| normal_closure(g, [x]).order() == g.order()))
}

fn pi_part(n: usize, pi: &[usize]) -> usize {
    factorize(n).iter().filter(|(p, _)| pi.contains(p)).map(|&(p, e)| p.pow(e)).product()
}

/// Greedy Hall pi-subgroup: repeatedly adjoin the smallest element that
/// keeps the generated subgroup a pi-group.
pub fn hall_subgroup(g: &GroupTable, pi: &[usize]) -> Result<Subgroup> {
    for &p in pi {
        if !is_prime(p) || !g.order().is_multiple_of(p) {
            return Err(Error::PrimeDoesNotDivide(p));
        }
    }
    let target = pi_part(g.order(), pi);
    let mut h = Subgroup::trivial(g);
    while h.order() < target {
        let next = (0..g.order())
            .filter(|&x| !h.contains(x) && is_pi_number(g.elem_order(x), pi))
            .map(|x| closure_with(g, &h, [x]))
            .find(|k| is_pi_number(k.order(), pi));
        match next {
            Some(k) => h = k,
            None => return Err(Error::NotSolvable),
        }
    }
    Ok(h)
}

pub fn sylow_subgroup(g: &GroupTable, p: usize) -> Result<Subgroup> {
    if !is_prime(p) || !g.order().is_multiple_of(p) {
        return Err(Error::PrimeDoesNotDivide(p));
    }
    let target = pi_part(g.order(), &[p]);
    let mut h = Subgroup::trivial(g);
    while h.order() < target {
        let next = (0..g.order())
            .filter(|&x| !h.contains(x) && is_pi_number(g.elem_order(x), &[p]))
            .map(|x| closure_with(g, &h, [x]))
            .find(|k| is_pi_number(k.order(), &[p]));
        // a p-subgroup below the Sylow order always has a normalizing p-element
        h = next.expect("Sylow extension");
    }
    Ok(h)
}

/// Pairwise permutable Sylow subgroups, one per prime, primes ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SylowBasis {
    pub primes: Vec<(usize, u32)>,
    pub subgroups: Vec<Subgroup>,
}

impl SylowBasis {
    /// Checks orders, pairwise permutability and that the product is `G`.
    pub fn is_valid(&self, g: &GroupTable) -> bool {
        if self.primes != factorize(g.order()) || self.subgroups.len() != self.primes.len() {
            return false;
        }
        for (s, &(p, e)) in self.subgroups.iter().zip(&self.primes) {
            if s.order() != p.pow(e) {
                return false;
            }
        }
        for a in &self.subgroups {
            for b in &self.subgroups {
                if product_set(g, a.set(), b.set()) != product_set(g, b.set(), a.set()) {
                    return false;
                }
            }
        }
        let mut acc = Subgroup::trivial(g).set().clone();
        for s in &self.subgroups {
            acc = product_set(g, &acc, s.set());
        }
        acc.len() == g.order()
    }
}

pub fn sylow_basis(g: &GroupTable) -> Result<SylowBasis> {
    let primes = factorize(g.order());
    let ps: Vec<usize> = primes.iter().map(|&(p, _)| p).collect();
    if ps.len() <= 1 {
        let subgroups = if ps.is_empty() { vec![] } else { vec![Subgroup::whole(g)] };
        return Ok(SylowBasis { primes, subgroups });
    }
    let mut complements = Vec::new();
    for &p in &ps {
        let others: Vec<usize> = ps.iter().copied().filter(|&q| q != p).collect();
        complements.push(hall_subgroup(g, &others)?);
    }
    let subgroups: Vec<Subgroup> = (0..ps.len())
        .map(|i| {
            let mut acc = Subgroup::whole(g).set().clone();
            for (j, q) in complements.iter().enumerate() {
                if j != i {
                    acc.intersect_with(q.set());
                }
            }
            Subgroup::from_set(acc)
        })
        .collect();
    let basis = SylowBasis { primes, subgroups };
    if !basis.is_valid(g) {
        return Err(Error::NotSolvable);
    }
    Ok(basis)
}

/// Conjugates of `h` listed in order of first appearance over `x = 0..n`.
fn conjugates(g: &GroupTable, h: &Subgroup) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        let c = conjugate_subgroup(g, h, x);
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    out
}

fn permutable(g: &GroupTable, a: &Subgroup, b: &Subgroup) -> bool {
    product_set(g, a.set(), b.set()).len() == a.order() * b.order() / a.set().intersection_len(b.set())
        && product_set(g, a.set(), b.set()) == product_set(g, b.set(), a.set())
}

/// Reference Sylow basis: the lexicographically first pairwise permutable
/// tuple of conjugates of fixed Sylow subgroups.
pub fn sylow_basis_bruteforce(g: &GroupTable) -> Result<SylowBasis> {
    let primes = factorize(g.order());
    let lists: Vec<Vec<Subgroup>> = primes
        .iter()
        .map(|&(p, _)| sylow_subgroup(g, p).map(|s| conjugates(g, &s)))
        .collect::<Result<_>>()?;
    fn go(g: &GroupTable, lists: &[Vec<Subgroup>], chosen: &mut Vec<Subgroup>) -> bool {
        let i = chosen.len();
        if i == lists.len() {
            return true;
        }
        for c in &lists[i] {
            if chosen.iter().all(|d| permutable(g, c, d)) {
                chosen.push(c.clone());
                if go(g, lists, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !go(g, &lists, &mut chosen) {
        return Err(Error::NotSolvable);
    }
    let basis = SylowBasis { primes, subgroups: chosen };
    if !basis.is_valid(g) {
        return Err(Error::NotSolvable);
    }
    Ok(basis)
}

/// Every conjugate of `basis`, deduplicated in order of the conjugating
/// element.
pub fn all_sylow_bases(g: &GroupTable, basis: &SylowBasis) -> Vec<SylowBasis> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        let b = SylowBasis {
            primes: basis.primes.clone(),
            subgroups: basis.subgroups.iter().map(|s| conjugate_subgroup(g, s, x)).collect(),
        };
        if seen.insert(b.subgroups.clone()) {
            out.push(b);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub order: usize,
    pub factorization: Vec<(usize, u32)>,
    /// The prime when the group is a nontrivial p-group.
    pub p_group: Option<usize>,
    pub abelian: bool,
    pub nilpotent: bool,
    pub solvable: bool,
}

pub fn classify(g: &GroupTable) -> Classification {
    let factorization = factorize(g.order());
    let p_group = if factorization.len() == 1 { Some(factorization[0].0) } else { None };
    let nilpotent = factorization.iter().all(|&(p, _)| is_normal(g, &sylow_subgroup(g, p).expect("divides")));
    let solvable = nilpotent || sylow_basis(g).is_ok();
    Classification { order: g.order(), factorization, p_group, abelian: g.is_abelian(), nilpotent, solvable }
}

/// Subgroup generated by the given subgroups.
pub fn join(g: &GroupTable, parts: &[Subgroup]) -> Subgroup {
    closure(g, parts.iter().flat_map(|s| s.members()))
}
