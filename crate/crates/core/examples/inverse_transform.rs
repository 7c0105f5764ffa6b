//! Rooted trees, linear extensions and the inverse probability transform.

use realmono::measure::{dist_fn, dist_fn_linext, inverse_transform, RationalMeasure};
use realmono::poset::{root_tree, ChildOrders, Poset};
use realmono::rational::format_rational;

fn main() {
    let s = Poset::new(
        &["x", "y", "z", "v", "w", "τ"],
        &[("x", "z"), ("y", "z"), ("w", "z"), ("w", "v"), ("w", "τ")],
    )
    .unwrap();
    let id = |n| s.index_of(n).unwrap();
    let m = RationalMeasure::from_ratios(&[(3, 15), (2, 15), (1, 15), (1, 15), (7, 15), (1, 15)]).unwrap();

    for children in [vec!["z", "v"], vec!["v", "z"]] {
        let mut orders = ChildOrders::new();
        orders.insert(id("w"), children.iter().map(|&c| id(c)).collect());
        let (tree, ext) = root_tree(&s, id("τ"), &orders).unwrap();
        let order: Vec<&str> = ext.order().iter().map(|&x| s.name(x)).collect();
        println!("children of w ordered {children:?}: ψ-order {}", order.join(" "));

        let f = dist_fn(&m, &tree).unwrap();
        let g = dist_fn_linext(&m, &ext).unwrap();
        for &x in ext.order() {
            println!("  {:>2}  F = {:>5}  F⟨⟩ = {:>5}", s.name(x), format_rational(f.at(x)), format_rational(g.at(x)));
        }
        let inv = inverse_transform(&m, &ext).unwrap();
        for (a, b, x) in inv.pieces() {
            println!("  P^-1 = {:<2} on [{}, {})", s.name(x), a, b);
        }
        assert!(inv.pushes_forward_to(&m));
    }
}
