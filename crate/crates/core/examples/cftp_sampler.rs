//! Perfect sampling from a monotone kernel on a small Class-W poset.

use realmono::cftp::{build_grand_coupling, chi_square, stationary_exact, CftpSampler, Kernel, DEFAULT_EPOCH_CAP};
use realmono::coupling::DEFAULT_TUPLE_CAP;
use realmono::measure::RationalMeasure;
use realmono::poset::Poset;
use realmono::rational::format_rational;

fn main() {
    // Star with a minimal centre m below a, b, c. Each row moves a quarter
    // of the centre's mass onto the current leaf, so rows increase with x.
    let s = Poset::new(&["m", "a", "b", "c"], &[("m", "a"), ("m", "b"), ("m", "c")]).unwrap();
    let rows = vec![
        RationalMeasure::from_ratios(&[(1, 2), (1, 6), (1, 6), (1, 6)]).unwrap(),
        RationalMeasure::from_ratios(&[(1, 4), (5, 12), (1, 6), (1, 6)]).unwrap(),
        RationalMeasure::from_ratios(&[(1, 4), (1, 6), (5, 12), (1, 6)]).unwrap(),
        RationalMeasure::from_ratios(&[(1, 4), (1, 6), (1, 6), (5, 12)]).unwrap(),
    ];
    let kernel = Kernel::new(s.clone(), rows).unwrap();
    let gc = build_grand_coupling(&kernel, DEFAULT_TUPLE_CAP).unwrap();
    println!("grand coupling on {} cells, monotone {}", gc.cells(), gc.is_monotone());

    let sampler = CftpSampler::new(&gc, DEFAULT_EPOCH_CAP).unwrap();
    let n = 20_000u64;
    let mut counts = vec![0u64; s.len()];
    let mut longest = 0;
    for seed in 0..n {
        let run = sampler.sample(seed).unwrap();
        counts[run.state] += 1;
        longest = longest.max(run.epoch_length);
    }
    let pi = stationary_exact(&kernel).unwrap();
    for x in 0..s.len() {
        println!("{}: stationary {:>6}  observed {:.4}", s.name(x), format_rational(pi.mass(x)), counts[x] as f64 / n as f64);
    }
    let chi = chi_square(&counts, &pi);
    println!("chi2 {:.3} on {} dof, p = {:.3}; longest epoch {longest}", chi.statistic, chi.dof, chi.p_value);
}
