//! Canonical labeling of a colored graph.

use groupiso::canon::{canonical_form_with, isomorphic, CanonOptions};
use groupiso::encoding::ColoredGraph;

fn petersen(shift: u32) -> ColoredGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    let edges: Vec<(u32, u32)> = edges.into_iter().map(|(u, v)| ((u + shift) % 10, (v + shift) % 10)).collect();
    ColoredGraph::from_parts(vec![0; 10], &edges)
}

fn main() -> groupiso::Result<()> {
    let a = petersen(0);
    let b = petersen(3);
    let (fa, stats) = canonical_form_with(&a, &CanonOptions::default())?;
    let (fb, _) = canonical_form_with(&b, &CanonOptions::default())?;
    println!("digest {}", fa.digest());
    println!("same form after relabeling: {}", fa == fb);
    println!("search nodes {}, leaves {}, automorphisms {}", stats.search_nodes, stats.leaves, stats.automorphisms);

    let mut c = petersen(0);
    c.set_color(0, 1);
    println!("recolored graph isomorphic: {}", isomorphic(&a, &c)?);
    Ok(())
}
