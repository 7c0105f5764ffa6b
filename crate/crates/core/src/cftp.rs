//! Monotone coupling-from-the-past for a Markov kernel on a poset, driven by
//! the synchronized inverse-transform grand coupling.

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::coupling::{monotonicity_witness, realize, MeasureSystem, Realization};
use crate::error::{Error, Result};
use crate::measure::RationalMeasure;
use crate::poset::{classify, default_extension, LinearExtension, Poset, PosetClass};
use crate::rational::{ratio, Rational};
use crate::synchronize::{
    common_grid, inverse_on_grid, synchronize_from_coupling, verify_synchronized, CellPermutation,
};

/// Default cap on the CFTP epoch length.
pub const DEFAULT_EPOCH_CAP: u64 = 1 << 30;

/// Markov transition kernel: row `x` is the law of the next state from `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Kernel {
    state: Poset,
    rows: Vec<RationalMeasure>,
}

impl Kernel {
    pub fn new(state: Poset, rows: Vec<RationalMeasure>) -> Result<Self> {
        if rows.len() != state.len() {
            return Err(Error::DomainMismatch {
                expected: state.len(),
                found: rows.len(),
            });
        }
        for r in &rows {
            r.check_domain(state.len())?;
        }
        Ok(Kernel { state, rows })
    }

    pub fn state_poset(&self) -> &Poset {
        &self.state
    }

    pub fn rows(&self) -> &[RationalMeasure] {
        &self.rows
    }

    pub fn row(&self, x: usize) -> &RationalMeasure {
        &self.rows[x]
    }

    /// The row system indexed by the state poset itself.
    pub fn as_system(&self) -> MeasureSystem {
        MeasureSystem::new(self.state.clone(), self.state.clone(), self.rows.clone())
            .expect("kernel rows are validated")
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        self.rows.iter().map(|r| r.support()).collect()
    }
}

/// One random cell index driving every state's transition at once:
/// `update[x][i]` is the next state from `x` when cell `i` is drawn.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrandCoupling {
    state: Poset,
    update: Vec<Vec<usize>>,
}

impl GrandCoupling {
    pub fn new(state: Poset, update: Vec<Vec<usize>>) -> Result<Self> {
        if update.len() != state.len() {
            return Err(Error::DomainMismatch {
                expected: state.len(),
                found: update.len(),
            });
        }
        let cells = update.first().map_or(0, Vec::len);
        if cells == 0 || update.iter().any(|r| r.len() != cells) {
            return Err(Error::InvalidPermutation("update rows must share a nonzero grid".into()));
        }
        if update.iter().flatten().any(|&y| y >= state.len()) {
            return Err(Error::UnknownElement("update target out of range".into()));
        }
        Ok(GrandCoupling { state, update })
    }

    pub fn cells(&self) -> usize {
        self.update[0].len()
    }

    pub fn state_poset(&self) -> &Poset {
        &self.state
    }

    pub fn update(&self, x: usize, cell: usize) -> usize {
        self.update[x][cell]
    }

    /// `x <= y` implies `update(x, i) <= update(y, i)` for every cell.
    pub fn is_monotone(&self) -> bool {
        self.state.strict_pairs().all(|(x, y)| {
            (0..self.cells()).all(|i| self.state.leq(self.update[x][i], self.update[y][i]))
        })
    }

    /// Transition law induced by a uniform cell draw.
    pub fn induced_row(&self, x: usize) -> RationalMeasure {
        let l = self.cells() as i64;
        let mut counts = vec![0i64; self.state.len()];
        for &y in &self.update[x] {
            counts[y] += 1;
        }
        RationalMeasure::new(counts.iter().map(|&c| ratio(c, l)).collect())
            .expect("cell counts sum to the grid size")
    }

    /// Every row reproduces the kernel row exactly.
    pub fn reproduces(&self, kernel: &Kernel) -> bool {
        kernel.state_poset().len() == self.state.len()
            && (0..self.state.len()).all(|x| self.induced_row(x) == *kernel.row(x))
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        self.update
            .iter()
            .map(|row| {
                let mut s = row.clone();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect()
    }
}

/// Extension used for the inverse transforms of a kernel's rows: rooted at
/// the first maximal leaf when there is one.
fn assemble(
    kernel: &Kernel,
    perms: &[CellPermutation],
    ext: &LinearExtension,
) -> Result<GrandCoupling> {
    let cells = perms[0].cells();
    let update = (0..kernel.state.len())
        .map(|x| {
            let grid = inverse_on_grid(kernel.row(x), ext, cells)?;
            Ok((0..cells).map(|i| grid[perms[x].map_cell(i)]).collect())
        })
        .collect::<Result<Vec<Vec<usize>>>>()?;
    GrandCoupling::new(kernel.state.clone(), update)
}

/// Order-preserving grand coupling for a stochastically monotone kernel.
///
/// Class-Z state posets use the plain inverse transforms; otherwise the
/// rows are realized by the marginal LP and synchronized on the common grid.
pub fn build_grand_coupling(kernel: &Kernel, tuple_cap: u64) -> Result<GrandCoupling> {
    let system = kernel.as_system();
    if let Some(w) = monotonicity_witness(&system) {
        return Err(Error::NotStochMonotone(Box::new(w)));
    }
    let ext = default_extension(&kernel.state);
    let exts = vec![ext.clone(); kernel.state.len()];
    if classify(&kernel.state) == PosetClass::Z {
        let ids = vec![CellPermutation::identity(common_grid(&system)?); kernel.state.len()];
        if verify_synchronized(&ids, &system, &exts)?.is_synchronized() {
            return assemble(kernel, &ids, &ext);
        }
    }
    match realize(&system, tuple_cap)? {
        Realization::Feasible(coupling) => {
            let perms = synchronize_from_coupling(&coupling, &exts, &system)?;
            let gc = assemble(kernel, &perms, &ext)?;
            debug_assert!(gc.is_monotone() && gc.reproduces(kernel));
            Ok(gc)
        }
        Realization::Infeasible(cert) => Err(Error::Infeasible(Box::new(cert))),
    }
}

fn strongly_connected(succ: &[Vec<usize>]) -> bool {
    let n = succ.len();
    let reach = |adj: &[Vec<usize>]| {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    let mut pred = vec![Vec::new(); n];
    for (u, vs) in succ.iter().enumerate() {
        for &v in vs {
            pred[v].push(u);
        }
    }
    reach(succ) && reach(&pred)
}

/// Period of an irreducible chain: gcd of `d(u) + 1 - d(v)` over edges,
/// with `d` the BFS distance from state 0.
fn period(succ: &[Vec<usize>]) -> u64 {
    let n = succ.len();
    let mut dist = vec![u64::MAX; n];
    dist[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &v in &succ[u] {
            if dist[v] == u64::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    let mut g = 0u64;
    for (u, vs) in succ.iter().enumerate() {
        for &v in vs {
            let diff = (dist[u] + 1).abs_diff(dist[v]);
            g = g.gcd(&diff);
        }
    }
    g
}

fn check_ergodic(succ: &[Vec<usize>]) -> Result<()> {
    if !strongly_connected(succ) {
        return Err(Error::NotErgodic("chain is reducible".into()));
    }
    let p = period(succ);
    if p != 1 {
        return Err(Error::NotErgodic(format!("chain has period {p}")));
    }
    Ok(())
}

/// Exact stationary law `π P = π`, `Σ π = 1`, by rational elimination.
pub fn stationary_exact(kernel: &Kernel) -> Result<RationalMeasure> {
    let n = kernel.state.len();
    if !strongly_connected(&kernel.successors()) {
        return Err(Error::NotErgodic("chain is reducible".into()));
    }
    // Rows: (P^T - I) π = 0, last equation replaced by Σ π = 1.
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n).map(|j| kernel.row(j).mass(i).clone()).collect();
            row[i] -= Rational::one();
            row.push(Rational::zero());
            row
        })
        .collect();
    a[n - 1] = vec![Rational::one(); n + 1];
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("irreducible kernel has a unique stationary law");
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
    }
    RationalMeasure::new(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Cell index drawn at time `-t` (`t >= 1`) for a given seed: a ChaCha
/// stream keyed by `(seed, t)`, so past draws are identical in every epoch.
pub fn cell_draw(seed: u64, t: u64, cells: usize) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t);
    rng.gen_range(0..cells)
}

/// Draws `u_{-1}, ..., u_{-T}` for an epoch of length `T`; index `t-1` holds
/// the draw for time `-t`.
pub fn epoch_draws(seed: u64, epoch_length: u64, cells: usize) -> Vec<usize> {
    (1..=epoch_length).map(|t| cell_draw(seed, t, cells)).collect()
}

/// Result of one perfect sample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CftpRun {
    pub state: usize,
    /// Length `T` of the first coalescing epoch.
    pub epoch_length: u64,
    pub epochs: u32,
}

/// Propp–Wilson sampler over a monotone grand coupling.
#[derive(Debug)]
pub struct CftpSampler<'a> {
    coupling: &'a GrandCoupling,
    max_epoch: u64,
    extremal: Vec<usize>,
}

impl<'a> CftpSampler<'a> {
    /// Checks irreducibility and aperiodicity of the coupled chain.
    pub fn new(coupling: &'a GrandCoupling, max_epoch: u64) -> Result<Self> {
        check_ergodic(&coupling.successors())?;
        let s = coupling.state_poset();
        let mut extremal = s.minimal_elements();
        extremal.extend(s.maximal_elements());
        extremal.sort_unstable();
        extremal.dedup();
        Ok(CftpSampler {
            coupling,
            max_epoch,
            extremal,
        })
    }

    fn run_from(&self, start: &[usize], seed: u64, epoch_length: u64) -> Vec<usize> {
        let cells = self.coupling.cells();
        let mut states = start.to_vec();
        for t in (1..=epoch_length).rev() {
            let u = cell_draw(seed, t, cells);
            for s in states.iter_mut() {
                *s = self.coupling.update(*s, u);
            }
        }
        states
    }

    /// Doubling epochs `T = 1, 2, 4, ...` started at time `-T` from every
    /// state; returns the common value at time 0 once the images coalesce.
    /// Tracking only the extremal elements is cross-checked against the
    /// full state set on every epoch.
    pub fn sample(&self, seed: u64) -> Result<CftpRun> {
        let all: Vec<usize> = (0..self.coupling.state_poset().len()).collect();
        let mut epoch_length = 1u64;
        let mut epochs = 1u32;
        loop {
            let full = self.run_from(&all, seed, epoch_length);
            let ends = self.run_from(&self.extremal, seed, epoch_length);
            let full_done = full.iter().all(|&s| s == full[0]);
            let ends_done = ends.iter().all(|&s| s == ends[0]);
            if full_done != ends_done || (full_done && full[0] != ends[0]) {
                return Err(Error::TrackingDisagreement(epoch_length));
            }
            if full_done {
                return Ok(CftpRun {
                    state: full[0],
                    epoch_length,
                    epochs,
                });
            }
            if epoch_length >= self.max_epoch {
                return Err(Error::BudgetExceeded(self.max_epoch));
            }
            epoch_length = (epoch_length * 2).min(self.max_epoch);
            epochs += 1;
        }
    }
}

/// One perfect sample with the default epoch cap.
pub fn cftp_sample(coupling: &GrandCoupling, seed: u64) -> Result<usize> {
    Ok(CftpSampler::new(coupling, DEFAULT_EPOCH_CAP)?.sample(seed)?.state)
}

/// Pearson goodness-of-fit summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Chi-square test of observed counts against an exact law, over the
/// support of the law.
pub fn chi_square(counts: &[u64], expected: &RationalMeasure) -> ChiSquare {
    let total: u64 = counts.iter().sum();
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (x, &c) in counts.iter().enumerate() {
        let p = expected.mass(x);
        if p.is_zero() {
            continue;
        }
        cells += 1;
        let p: f64 = num_traits::ToPrimitive::to_f64(p).expect("finite probability");
        let e = p * total as f64;
        statistic += (c as f64 - e).powi(2) / e;
    }
    let dof = cells.saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        1.0 - ChiSquared::new(dof as f64)
            .expect("positive degrees of freedom")
            .cdf(statistic)
    };
    ChiSquare {
        statistic,
        dof,
        p_value,
    }
}
