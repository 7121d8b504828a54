mod common;

use common::{brute_isomorphic, build, shuffled};
use groupiso::group::is_isomorphism;
use groupiso::iso::*;
use groupiso::Error;

fn opts(method: IsoMethod) -> IsoOptions {
    IsoOptions { method, ..Default::default() }
}

#[test]
fn order_mismatch_is_immediate() {
    let v = decide_iso(&build("cyclic:4"), &build("cyclic:6"), &IsoOptions::default()).unwrap();
    assert!(!v.isomorphic);
    assert_eq!(v.stats.choices, 0);
}

#[test]
fn routes_and_witnesses() {
    let cases = [
        ("cyclic:16", "direct-product:4,4", false, Method::PgroupSeries),
        ("dihedral:4", "dihedral:4", true, Method::PgroupSeries),
        ("heisenberg:3", "heisenberg:3", true, Method::PgroupSeries),
        ("alt:4", "alt:4", true, Method::SolvableHall),
        ("dihedral:6", "dicyclic:3", false, Method::Prefilter),
        ("alt:5", "alt:5", true, Method::Genenum),
        ("cyclic:5", "cyclic:5", true, Method::Genenum),
    ];
    for (a, b, expect, method) in cases {
        let g = build(a);
        let h = shuffled(&build(b), 17);
        let mut o = IsoOptions::default();
        if a == "cyclic:16" {
            o.prefilter = false;
        }
        let v = decide_iso(&g, &h, &o).unwrap();
        assert_eq!(v.isomorphic, expect, "{a} vs {b}");
        assert_eq!(v.method, method, "{a} vs {b}");
        if expect {
            assert!(is_isomorphism(&g, &h, v.witness.as_ref().unwrap()), "{a}");
        }
    }
}

#[test]
fn explicit_methods_agree_with_brute_force() {
    let pairs = [
        ("dihedral:4", "quaternion8"),
        ("direct-product:4,4", "semidirect:4,4,3"),
        ("direct-product:2,2,2", "direct-product:2,2,2"),
        ("dihedral:6", "direct-product:2,6"),
        ("alt:4", "dicyclic:3"),
        ("dicyclic:3", "dicyclic:3"),
    ];
    for (a, b) in pairs {
        let g = build(a);
        let h = shuffled(&build(b), 23);
        let truth = brute_isomorphic(&g, &h);
        let mut o = opts(IsoMethod::Genenum);
        o.prefilter = false;
        assert_eq!(decide_iso(&g, &h, &o).unwrap().isomorphic, truth, "genenum {a} {b}");
        o.method = IsoMethod::Solvable;
        assert_eq!(decide_iso(&g, &h, &o).unwrap().isomorphic, truth, "solvable {a} {b}");
        if g.order() & (g.order() - 1) == 0 {
            assert_eq!(iso_pgroup_with(&g, &h, &Default::default(), false).unwrap().isomorphic, truth, "pgroup {a} {b}");
        }
    }
}

#[test]
fn method_applicability() {
    let a5 = build("alt:5");
    assert!(matches!(decide_iso(&a5, &a5, &opts(IsoMethod::Solvable)), Err(Error::MethodNotApplicable(_))));
    assert!(matches!(decide_iso(&a5, &a5, &opts(IsoMethod::Pgroup)), Err(Error::MethodNotApplicable(_))));
    assert_eq!(iso_pgroup(&build("cyclic:6"), &build("cyclic:6")), Err(Error::NotPGroup));
}

#[test]
fn hall_fixed_signature_mismatch() {
    use groupiso::encoding::enumerate_genvectors;
    use groupiso::series::HallSeries;
    use groupiso::structure::sylow_basis;
    let g = build("cyclic:6");
    let h = build("cyclic:10");
    let hs = HallSeries::default_for(&g, &sylow_basis(&g).unwrap()).unwrap();
    let hs2 = HallSeries::default_for(&h, &sylow_basis(&h).unwrap()).unwrap();
    let gv = enumerate_genvectors(&hs, 2.0).unwrap().next().unwrap();
    let gv2 = enumerate_genvectors(&hs2, 2.0).unwrap().next().unwrap();
    assert!(matches!(iso_hall_fixed(&g, &hs, &gv, &h, &hs2, &gv2), Err(Error::SignatureMismatch(_))));
    let g2 = shuffled(&g, 1);
    let hs3 = HallSeries::default_for(&g2, &sylow_basis(&g2).unwrap()).unwrap();
    let any = enumerate_genvectors(&hs3, 2.0)
        .unwrap()
        .any(|gv3| iso_hall_fixed(&g, &hs, &gv, &g2, &hs3, &gv3).unwrap());
    assert!(any);
}

#[test]
fn randomized_full_space_is_certain() {
    let g = build("direct-product:2,2");
    let h = shuffled(&g, 2);
    for seed in 0..5 {
        let o = IsoOptions { method: IsoMethod::Randomized, samples: Some(3), seed, ..Default::default() };
        assert!(decide_iso(&g, &h, &o).unwrap().isomorphic);
    }
    let o = IsoOptions {
        method: IsoMethod::Randomized,
        random_base: RandomBase::Generators,
        seed: 3,
        ..Default::default()
    };
    let v = decide_iso(&build("dihedral:4"), &shuffled(&build("dihedral:4"), 4), &o).unwrap();
    assert!(v.isomorphic);
}

#[test]
fn minimal_generating_sets() {
    assert_eq!(minimal_generating_set(&build("cyclic:12")).len(), 1);
    assert_eq!(minimal_generating_set(&build("direct-product:2,2,2")).len(), 3);
    assert_eq!(minimal_generating_set(&build("alt:5")).len(), 2);
    assert_eq!(minimal_generating_set(&build("cyclic:1")).len(), 0);
}
