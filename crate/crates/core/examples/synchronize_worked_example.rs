//! Naive inverse transforms break the order on two cells; synchronizing
//! functions built from a monotone coupling repair it. Writes the plots to
//! the directory given as the first argument (default: `target/example-plots`).

use std::path::{Path, PathBuf};

use realmono::coupling::{realize, Realization, DEFAULT_TUPLE_CAP};
use realmono::format::{load_system, write_phi};
use realmono::poset::{root_tree, ChildOrders};
use realmono::svg::{permutations_svg, step_functions_svg};
use realmono::synchronize::{
    composed_step_function, naive_violations, synchronize_from_coupling, verify_synchronized, CellPermutation,
};

fn main() {
    let out: PathBuf = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| "target/example-plots".into());
    let sys = load_system(&Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/example.system")).unwrap();
    let s = sys.state_poset();
    let id = |n| s.index_of(n).unwrap();
    let mut orders = ChildOrders::new();
    orders.insert(id("w"), vec![id("z"), id("v")]);
    let (_, ext) = root_tree(s, id("τ"), &orders).unwrap();
    let exts = vec![ext.clone(), ext.clone()];

    for (cell, lo, hi) in naive_violations(&sys, &exts).unwrap() {
        println!("naive order fails on cell {cell}/15 between indices {lo} and {hi}");
    }
    let Realization::Feasible(c) = realize(&sys, DEFAULT_TUPLE_CAP).unwrap() else {
        unreachable!("the example is realizable")
    };
    let perms = synchronize_from_coupling(&c, &exts, &sys).unwrap();
    for (k, p) in perms.iter().enumerate() {
        print!("φ{}:\n{}", k + 1, write_phi(p));
    }
    println!("verdict {:?}", verify_synchronized(&perms, &sys, &exts).unwrap());

    let band = |perm: &CellPermutation, k: usize| composed_step_function(perm, sys.measure(k), &ext).unwrap();
    let naive: Vec<_> = (0..2)
        .map(|k| (format!("P{}^-1", k + 1), band(&CellPermutation::identity(15), k)))
        .collect();
    let synced: Vec<_> = (0..2).map(|k| (format!("P{}^-1∘φ{}", k + 1, k + 1), band(&perms[k], k))).collect();
    std::fs::create_dir_all(&out).unwrap();
    std::fs::write(out.join("naive.svg"), step_functions_svg(&naive, s, &[])).unwrap();
    std::fs::write(out.join("synchronized.svg"), step_functions_svg(&synced, s, &[])).unwrap();
    let phis: Vec<_> = perms.iter().enumerate().map(|(k, p)| (format!("φ{}", k + 1), p.clone())).collect();
    std::fs::write(out.join("phi.svg"), permutations_svg(&phis)).unwrap();
    println!("plots written to {}", out.display());
}
