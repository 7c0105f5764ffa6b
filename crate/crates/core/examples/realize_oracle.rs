//! The exact coupling LP: a monotone coupling when one exists, a dual
//! certificate otherwise.

use std::path::Path;

use realmono::coupling::{monotone_tuples, realize, Realization, DEFAULT_TUPLE_CAP};
use realmono::format::{load_system, write_certificate, write_coupling};

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for file in ["example.system", "diamond.system"] {
        let sys = load_system(&dir.join(file)).unwrap();
        let tuples = monotone_tuples(sys.index_poset(), sys.state_poset(), DEFAULT_TUPLE_CAP).unwrap();
        println!("{file}: {} monotone tuples", tuples.len());
        match realize(&sys, DEFAULT_TUPLE_CAP).unwrap() {
            Realization::Feasible(c) => print!("{}", write_coupling(&c, &sys)),
            Realization::Infeasible(cert) => {
                print!("{}", write_certificate(&cert, &sys));
                println!(
                    "certificate value {} verified {}",
                    cert.value(&sys),
                    cert.verify(&sys, DEFAULT_TUPLE_CAP).unwrap()
                );
            }
        }
    }
}
