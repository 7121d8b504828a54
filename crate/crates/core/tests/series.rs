mod common;

use common::{build, SMALL};
use groupiso::group::{closure, GroupTable, Subgroup};
use groupiso::series::*;

/// All subgroups, as closures of pairs (enough for groups of order <= 16
/// that are 2-generated, plus triples for the rest).
fn subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let n = g.order();
    let mut out: Vec<Subgroup> = Vec::new();
    for a in 0..n {
        for b in a..n {
            for c in b..n {
                let s = closure(g, [a, b, c]);
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Chains `1 < A_1 < ... < G` with prime index steps, each term of a
/// given index set.
fn count_flags(g: &GroupTable, allowed: &dyn Fn(&Subgroup) -> bool) -> u128 {
    let subs: Vec<Subgroup> = subgroups(g).into_iter().filter(|s| allowed(s)).collect();
    fn go(cur: &Subgroup, subs: &[Subgroup], n: usize) -> u128 {
        if cur.order() == n {
            return 1;
        }
        subs.iter()
            .filter(|s| cur.is_subgroup_of(s) && groupiso::numth::is_prime(s.order() / cur.order()) && s.order() > cur.order())
            .map(|s| go(s, subs, n))
            .sum()
    }
    go(&Subgroup::trivial(g), &subs, g.order())
}

#[test]
fn elementary_abelian_counts_are_flag_counts() {
    // every chain of subgroups is a series through the socle, which is the whole group
    for (spec, expect) in [("direct-product:2,2", 3u128), ("direct-product:2,2,2", 21), ("direct-product:3,3", 4)] {
        let g = build(spec);
        let oracle = count_flags(&g, &|_| true);
        assert_eq!(oracle, expect, "{spec}");
        assert_eq!(count_choices(&g), oracle, "{spec}");
        assert_eq!(enumerate_series(&g).count() as u128, oracle);
    }
}

#[test]
fn dihedral_eight_has_three_series_through_center() {
    let g = build("dihedral:4");
    let center_size = 2;
    let oracle = count_flags(&g, &|s| s.order() != 2 || groupiso::group::is_normal(&g, s));
    assert_eq!(oracle, 3);
    assert_eq!(count_choices(&g), 3);
    for (_, s) in enumerate_series(&g) {
        assert_eq!(s.chain[1].order(), center_size);
    }
}

#[test]
fn every_enumerated_series_replays_and_is_a_composition_series() {
    for spec in SMALL.iter().copied().chain(["sym:4", "alt:5", "heisenberg:3"]) {
        let g = build(spec);
        let ladder = std::sync::Arc::new(SocleLadder::new(&g));
        let mut n = 0u128;
        let mut seen = std::collections::HashSet::new();
        for (c, s) in ladder.iter() {
            n += 1;
            assert!(s.is_composition_series(&g), "{spec} {c}");
            assert_eq!(ladder.series(Some(&c)).unwrap(), s);
            assert!(*s.socle_flags.last().unwrap() || g.order() == 1);
            assert!(!s.socle_flags[0]);
            assert!(seen.insert(s.clone()), "{spec}: repeated series");
        }
        assert_eq!(n, ladder.count(), "{spec}");
    }
}

#[test]
fn non_solvable_series() {
    let s4 = build("sym:4");
    let s = composition_series(&s4, None).unwrap();
    let orders: Vec<usize> = s.chain.iter().map(|h| h.order()).collect();
    assert_eq!(orders, vec![1, 2, 4, 12, 24]);
    assert_eq!(s.socle_flags, vec![false, false, true, true, true]);
    let s5 = build("sym:5");
    let s = composition_series(&s5, None).unwrap();
    let orders: Vec<usize> = s.chain.iter().map(|h| h.order()).collect();
    assert_eq!(orders, vec![1, 60, 120]);
}

#[test]
fn hall_series_enumeration() {
    let g = build("alt:4");
    let b = groupiso::structure::sylow_basis(&g).unwrap();
    let all = HallSeries::enumerate(&g, &b);
    assert_eq!(all.len() as u128, HallSeries::count(&g, &b));
    assert_eq!(all.len(), 3);
    assert_eq!(all[0].primes, vec![(3, 1), (2, 2)]);
}
