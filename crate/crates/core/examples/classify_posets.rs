//! Cover graphs and classes of a few small posets.

use realmono::poset::{branching_elements, classify, cover_graph, Poset};

fn main() {
    let posets = [
        ("3-chain", Poset::chain(3, "c").unwrap()),
        ("zigzag", Poset::new(&["a", "b", "c", "d"], &[("a", "b"), ("c", "b"), ("c", "d")]).unwrap()),
        (
            "six-element tree",
            Poset::new(
                &["x", "y", "z", "v", "w", "τ"],
                &[("x", "z"), ("y", "z"), ("w", "z"), ("w", "v"), ("w", "τ")],
            )
            .unwrap(),
        ),
        ("star with middle centre", Poset::new(&["a", "m", "b", "c"], &[("a", "m"), ("m", "b"), ("m", "c")]).unwrap()),
        (
            "diamond",
            Poset::new(&["0", "l", "r", "1"], &[("0", "l"), ("0", "r"), ("l", "1"), ("r", "1")]).unwrap(),
        ),
    ];
    for (label, p) in &posets {
        let g = cover_graph(p);
        let edges: Vec<String> = g
            .edges
            .iter()
            .map(|&(a, b)| format!("{}<{}", p.name(a), p.name(b)))
            .collect();
        let branching = branching_elements(p)
            .map(|b| b.iter().map(|&x| p.name(x).to_string()).collect::<Vec<_>>().join(","))
            .unwrap_or_else(|_| "-".into());
        println!("{label:>24}: class {:<24} covers [{}] branching [{branching}]", classify(p), edges.join(" "));
    }
}
