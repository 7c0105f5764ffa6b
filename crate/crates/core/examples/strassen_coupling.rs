//! Stochastic order decided by up-sets and by max-flow, with the coupling or
//! the violating up-set.

use realmono::coupling::{strassen_coupling, stochastically_leq, Domination};
use realmono::measure::RationalMeasure;
use realmono::poset::{up_sets, Poset, DEFAULT_UP_SET_CAP};
use realmono::rational::format_rational;

fn main() {
    let s = Poset::new(
        &["x", "y", "z", "v", "w", "τ"],
        &[("x", "z"), ("y", "z"), ("w", "z"), ("w", "v"), ("w", "τ")],
    )
    .unwrap();
    let p1 = RationalMeasure::from_ratios(&[(3, 15), (2, 15), (1, 15), (1, 15), (7, 15), (1, 15)]).unwrap();
    let p2 = RationalMeasure::from_ratios(&[(1, 15), (1, 15), (6, 15), (3, 15), (2, 15), (2, 15)]).unwrap();
    println!("{} up-sets", up_sets(&s, DEFAULT_UP_SET_CAP).unwrap().len());

    for (label, lo, hi) in [("P1 ⪯ P2", &p1, &p2), ("P2 ⪯ P1", &p2, &p1)] {
        let by_upsets = stochastically_leq(lo, hi, &s, DEFAULT_UP_SET_CAP).unwrap();
        match strassen_coupling(lo, hi, &s).unwrap() {
            Domination::Coupled(c) => {
                println!("{label}: true (up-sets agree: {by_upsets})");
                for (t, w) in c.atoms() {
                    println!("  ({}, {}) {}", s.name(t.0[0]), s.name(t.0[1]), format_rational(w));
                }
            }
            Domination::NotDominated { up_set } => {
                let names: Vec<&str> = up_set.iter().map(|&x| s.name(x)).collect();
                println!(
                    "{label}: false (up-sets agree: {}); up-set {{{}}} has mass {} vs {}",
                    !by_upsets,
                    names.join(","),
                    lo.of_set(&up_set),
                    hi.of_set(&up_set)
                );
            }
        }
    }
}
