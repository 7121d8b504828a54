mod common;

use common::{build, shuffled};
use groupiso::forms::{can_group_genenum, can_group_series, can_hall, can_series_default};
use groupiso::series::HallSeries;
use groupiso::structure::sylow_basis;

#[test]
fn series_form_is_relabeling_invariant() {
    for spec in ["direct-product:2,2,2", "dihedral:4", "quaternion8", "heisenberg:3", "cyclic:9"] {
        let g = build(spec);
        let a = can_group_series(&g).unwrap();
        let b = can_group_series(&shuffled(&g, 7)).unwrap();
        assert_eq!(a, b, "{spec}");
    }
}

#[test]
fn default_series_form_decodes_group() {
    let g = build("dihedral:4");
    let w = can_series_default(&g).unwrap();
    assert_eq!(w.form.images.len(), 4);
    assert_eq!(w.form.images[0], vec![w.psi[g.identity()] + 1]);
    assert_eq!(w.form.images[3].len(), 8);
}

#[test]
fn hall_form_is_relabeling_invariant() {
    for spec in ["alt:4", "dihedral:3", "dicyclic:3", "direct-product:2,6", "cyclic:15"] {
        let g = build(spec);
        let h = shuffled(&g, 3);
        let fa = can_hall(&g, &HallSeries::default_for(&g, &sylow_basis(&g).unwrap()).unwrap()).unwrap();
        assert_eq!(fa.form.sylows.iter().map(|s| s.len()).product::<usize>(), g.order());
        let fb = can_group_series(&h).unwrap();
        assert_eq!(can_group_series(&g).unwrap(), fb, "{spec}");
    }
}

#[test]
fn genenum_form_is_relabeling_invariant() {
    for spec in ["dihedral:4", "alt:4", "cyclic:6"] {
        let g = build(spec);
        assert_eq!(can_group_genenum(&g).unwrap(), can_group_genenum(&shuffled(&g, 11)).unwrap(), "{spec}");
    }
}

#[test]
fn hall_form_with_tail_sylows() {
    let g = build("tight-family:64,3");
    let h = shuffled(&g, 5);
    let t = std::time::Instant::now();
    let a = can_hall(&g, &HallSeries::default_for(&g, &sylow_basis(&g).unwrap()).unwrap()).unwrap();
    eprintln!("tight hall {:?}", t.elapsed());
    assert_eq!(a.form.sylows.len(), 2);
    assert_eq!(a.form.sylows[0].len(), 9);
    assert_eq!(a.form.series[1].len(), 4);
    let fa = can_group_series(&g).unwrap();
    eprintln!("tight group {:?}", t.elapsed());
    assert_eq!(fa, can_group_series(&h).unwrap());
}

#[test]
fn padded_hall_form() {
    let g = build("cyclic:32");
    assert!(groupiso::forms::needs_padding(&g));
    let t = std::time::Instant::now();
    let hs = |g: &groupiso::GroupTable| HallSeries::default_for(g, &sylow_basis(g).unwrap()).unwrap();
    let a = can_hall(&g, &hs(&g)).unwrap();
    let h = shuffled(&g, 9);
    let b = can_hall(&h, &hs(&h)).unwrap();
    eprintln!("padded {:?}", t.elapsed());
    assert_eq!(a.form, b.form);
    assert_eq!(a.form.group.n, 32);
    assert_eq!(a.form.series[0].len(), 6);
}
