//! Seeded random instances: posets of each class, rational measures, and
//! stochastically monotone systems.
//!
//! Monotone systems are grown along a linear extension of the index poset:
//! each new measure is an upward mass shift of a measure already placed
//! below it, accepted only if it dominates every lower measure (checked by
//! max-flow). No coupling is ever constructed, so realizability is not
//! built in.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::coupling::{strassen_coupling, Domination, MeasureSystem};
use crate::measure::RationalMeasure;
use crate::poset::Poset;
use crate::rational::ratio;

fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Random poset: each pair `i < j` of a random labelling is related with
/// probability `density`, then closed transitively.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64, prefix: &str) -> Poset {
    let pairs = random_poset_pairs(rng, n, density);
    Poset::from_indices(names(prefix, n), &pairs).expect("pairs follow a total order")
}

/// Random poset with a minimum and a maximum around `n - 2` random middle
/// elements (`n >= 2`).
pub fn random_bounded_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64, prefix: &str) -> Poset {
    assert!(n >= 2);
    let middle = random_poset_pairs(rng, n - 2, density);
    let (bot, top) = (n - 2, n - 1);
    let mut pairs: Vec<(usize, usize)> = middle;
    for m in 0..n - 2 {
        pairs.push((bot, m));
        pairs.push((m, top));
    }
    pairs.push((bot, top));
    Poset::from_indices(names(prefix, n), &pairs).expect("bounded extension is acyclic")
}

fn random_poset_pairs<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Vec<(usize, usize)> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                pairs.push((labels[i], labels[j]));
            }
        }
    }
    pairs
}

/// Random tree on `n` vertices as an edge list (vertex `i` attaches to a
/// random earlier vertex), relabelled randomly.
fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    (1..n)
        .map(|i| (labels[rng.gen_range(0..i)], labels[i]))
        .collect()
}

/// Random Class-Z poset: a path with independently oriented edges.
pub fn random_class_z<R: Rng + ?Sized>(rng: &mut R, n: usize, prefix: &str) -> Poset {
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let pairs: Vec<(usize, usize)> = labels
        .windows(2)
        .map(|w| if rng.gen_bool(0.5) { (w[0], w[1]) } else { (w[1], w[0]) })
        .collect();
    Poset::from_indices(names(prefix, n), &pairs).expect("oriented path is acyclic")
}

/// Random Class-W poset on `n >= 4` elements with at least one branching
/// element. Branching elements are made extremal; the tree's bipartition
/// decides which are maximal, so adjacent branching elements never clash.
pub fn random_class_w<R: Rng + ?Sized>(rng: &mut R, n: usize, prefix: &str) -> Poset {
    assert!(n >= 4, "a branching tree needs at least 4 vertices");
    loop {
        let edges = random_tree(rng, n);
        let mut degree = vec![0usize; n];
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
            adj[a].push(b);
            adj[b].push(a);
        }
        if degree.iter().all(|&d| d < 3) {
            continue;
        }
        let mut color = vec![usize::MAX; n];
        color[0] = 0;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if color[v] == usize::MAX {
                    color[v] = 1 - color[u];
                    stack.push(v);
                }
            }
        }
        let max_color = rng.gen_range(0..2);
        let is_max = |v: usize| degree[v] >= 3 && color[v] == max_color;
        let is_min = |v: usize| degree[v] >= 3 && color[v] != max_color;
        let pairs: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| {
                if is_max(a) || is_min(b) {
                    (b, a)
                } else if is_max(b) || is_min(a) || rng.gen_bool(0.5) {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        return Poset::from_indices(names(prefix, n), &pairs).expect("oriented tree is acyclic");
    }
}

/// Integer mass counts over a common denominator.
fn random_counts<R: Rng + ?Sized>(rng: &mut R, n: usize, denominator: i64) -> Vec<i64> {
    let support_size = rng.gen_range(1..=n.min(denominator as usize));
    let mut support: Vec<usize> = (0..n).collect();
    support.shuffle(rng);
    support.truncate(support_size);
    let mut counts = vec![0i64; n];
    for &x in &support {
        counts[x] = 1;
    }
    for _ in 0..(denominator - support_size as i64) {
        counts[*support.choose(rng).unwrap()] += 1;
    }
    counts
}

fn to_measure(counts: &[i64], denominator: i64) -> RationalMeasure {
    RationalMeasure::new(counts.iter().map(|&c| ratio(c, denominator)).collect())
        .expect("counts sum to the denominator")
}

/// Random measure whose masses are multiples of `1/d`, `d <= max_denominator`.
pub fn random_measure<R: Rng + ?Sized>(rng: &mut R, n: usize, max_denominator: i64) -> RationalMeasure {
    let d = rng.gen_range(1..=max_denominator);
    to_measure(&random_counts(rng, n, d), d)
}

fn dominates(lower: &RationalMeasure, upper: &RationalMeasure, state: &Poset) -> bool {
    matches!(
        strassen_coupling(lower, upper, state).expect("same domain"),
        Domination::Coupled(_)
    )
}

/// Random stochastically monotone system with a common denominator of at
/// most `max_denominator`. Returns `None` if no system was found in
/// `restarts` attempts.
pub fn random_monotone_system<R: Rng + ?Sized>(
    rng: &mut R,
    index: &Poset,
    state: &Poset,
    max_denominator: i64,
    restarts: usize,
) -> Option<MeasureSystem> {
    let n = state.len();
    let order = index.topological_order();
    'restart: for _ in 0..restarts {
        let d = rng.gen_range(1..=max_denominator);
        let mut counts: Vec<Option<Vec<i64>>> = vec![None; index.len()];
        for &alpha in &order {
            let below: Vec<usize> = (0..index.len())
                .filter(|&b| index.lt(b, alpha))
                .collect();
            let mut placed = false;
            for _ in 0..100 {
                let candidate = if below.is_empty() {
                    random_counts(rng, n, d)
                } else {
                    let base = counts[*below.choose(rng).unwrap()].clone().unwrap();
                    push_up(rng, state, base, d)
                };
                let m = to_measure(&candidate, d);
                if below
                    .iter()
                    .all(|&b| dominates(&to_measure(counts[b].as_ref().unwrap(), d), &m, state))
                {
                    counts[alpha] = Some(candidate);
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'restart;
            }
        }
        let measures = counts.into_iter().map(|c| to_measure(&c.unwrap(), d)).collect();
        return Some(MeasureSystem::new(index.clone(), state.clone(), measures).expect("shapes match"));
    }
    None
}

/// Moves a random number of mass units to strictly larger elements.
fn push_up<R: Rng + ?Sized>(rng: &mut R, state: &Poset, mut counts: Vec<i64>, d: i64) -> Vec<i64> {
    let moves = rng.gen_range(0..=d);
    for _ in 0..moves {
        let occupied: Vec<usize> = (0..counts.len()).filter(|&x| counts[x] > 0).collect();
        let x = *occupied.choose(rng).unwrap();
        let above: Vec<usize> = (0..state.len()).filter(|&y| state.lt(x, y)).collect();
        if let Some(&y) = above.choose(rng) {
            counts[x] -= 1;
            counts[y] += 1;
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::is_stoch_monotone;
    use crate::poset::{classify, PosetClass};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_classes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..9 {
            assert_eq!(classify(&random_class_z(&mut rng, n, "s")), PosetClass::Z);
        }
        for n in 4..10 {
            for _ in 0..20 {
                assert_eq!(classify(&random_class_w(&mut rng, n, "s")), PosetClass::W);
            }
        }
        for n in 2..7 {
            let b = random_bounded_poset(&mut rng, n, 0.4, "a");
            assert!(b.minimum().is_some() && b.maximum().is_some());
        }
    }

    #[test]
    fn generated_systems_are_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let a = random_poset(&mut rng, 4, 0.5, "a");
            let s = random_class_w(&mut rng, 6, "s");
            if let Some(sys) = random_monotone_system(&mut rng, &a, &s, 12, 20) {
                assert!(is_stoch_monotone(&sys));
            }
        }
    }
}
