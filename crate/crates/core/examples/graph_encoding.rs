//! Build the colored graph of a group with a composition series, and of
//! a Hall system, then print sizes and a DIMACS excerpt.

use groupiso::construct::ConstructorSpec;
use groupiso::encoding::{build_tree, build_x, build_x_hall, count_genvectors, enumerate_genvectors};
use groupiso::numth::alpha;
use groupiso::series::{composition_series, HallSeries};
use groupiso::structure::sylow_basis;

fn main() -> groupiso::Result<()> {
    let g = "cyclic:6".parse::<ConstructorSpec>()?.build()?;
    let s = composition_series(&g, None)?;
    let t = build_tree(&g, &s);
    let x = build_x(&g, &s);
    println!("tree {} nodes, graph {} nodes {} edges, max degree {}", t.size(), x.graph.node_count(), x.graph.edge_count(), x.graph.max_degree());
    for line in x.graph.to_dimacs().lines().take(4) {
        println!("  {line}");
    }

    let g = "sym:4".parse::<ConstructorSpec>()?.build()?;
    let a = alpha(g.order());
    let hs = HallSeries::default_for(&g, &sylow_basis(&g)?)?;
    println!("S4: alpha {a:.3}, kappa {}, {} generator vectors", hs.kappa(a), count_genvectors(&hs, a)?);
    if let Some(gv) = enumerate_genvectors(&hs, a)?.next() {
        let x = build_x_hall(&g, &hs, &gv, a)?;
        println!("  Hall graph {} nodes, max degree {}", x.graph.node_count(), x.graph.max_degree());
    }
    Ok(())
}
