//! Interlacing graphs and locally connected spanning trees of index posets.

use realmono::poset::Poset;
use realmono::synchronize::{interlacing_graphs, locally_connected_spanning_tree, DEFAULT_TREE_CAP};

fn main() {
    let posets = [
        ("V shape", Poset::new(&["a", "b", "c"], &[("a", "c"), ("b", "c")]).unwrap()),
        ("two-element antichain", Poset::antichain(2, "a").unwrap()),
        (
            "N shape",
            Poset::new(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")]).unwrap(),
        ),
        (
            "crown",
            Poset::new(
                &["a", "b", "c", "p", "q", "r"],
                &[("a", "p"), ("b", "p"), ("b", "q"), ("c", "q"), ("c", "r"), ("a", "r")],
            )
            .unwrap(),
        ),
    ];
    for (label, a) in &posets {
        println!("{label}:");
        let (lower, upper) = interlacing_graphs(a);
        for g in [&lower, &upper] {
            let verts: Vec<&str> = g.vertices.iter().map(|&v| a.name(v)).collect();
            let edges: Vec<String> = g
                .edges
                .iter()
                .map(|&(i, j)| format!("{}-{}", a.name(g.vertices[i]), a.name(g.vertices[j])))
                .collect();
            let tree = locally_connected_spanning_tree(g, a, DEFAULT_TREE_CAP).unwrap();
            let tree = match tree {
                Some(w) => w
                    .edges
                    .iter()
                    .map(|&(p, q)| format!("{}-{}", a.name(p), a.name(q)))
                    .collect::<Vec<_>>()
                    .join(" "),
                None => "none".into(),
            };
            println!(
                "  {:?} side: vertices [{}] edges [{}] tree [{tree}]",
                g.side,
                verts.join(" "),
                edges.join(" ")
            );
        }
    }
}
