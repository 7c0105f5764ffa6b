//! Seeded search for a stochastically monotone but not realizably monotone
//! system indexed by and valued in the four-element diamond.
//!
//! Prints the first hit in the system-file format together with its dual
//! certificate. `cargo run --release --example diamond_counterexample [seed]`

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use realmono::coupling::{realize, Realization, DEFAULT_TUPLE_CAP};
use realmono::format::{parse_poset, write_certificate, write_measure};
use realmono::gen::random_monotone_system;

const DIAMOND: &str = "element bot\nelement l\nelement r\nelement top\n\
                       cover bot l\ncover bot r\ncover l top\ncover r top\n";

fn main() {
    let seed: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let diamond = parse_poset(DIAMOND).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..100_000u32 {
        let Some(sys) = random_monotone_system(&mut rng, &diamond, &diamond, 16, 1) else {
            continue;
        };
        if let Realization::Infeasible(cert) = realize(&sys, DEFAULT_TUPLE_CAP).unwrap() {
            println!("# seed {seed}, trial {trial}");
            for alpha in 0..diamond.len() {
                let label = format!("P_{}", diamond.name(alpha));
                print!("{}", write_measure(&label, sys.measure(alpha), &diamond, None));
            }
            for alpha in 0..diamond.len() {
                println!("assign {} P_{}", diamond.name(alpha), diamond.name(alpha));
            }
            print!("{}", write_certificate(&cert, &sys));
            println!("# certificate value {}", cert.value(&sys));
            return;
        }
    }
    println!("no counterexample found");
}
