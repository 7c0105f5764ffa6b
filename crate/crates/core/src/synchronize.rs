//! Synchronizing functions as permutations of equal grid cells, built from a
//! feasible coupling, plus synchronizability of index posets through
//! interlacing graphs and locally connected spanning trees.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::coupling::{Coupling, MeasureSystem};
use crate::error::{Error, Result};
use crate::measure::{RationalMeasure, StepFunction};
use crate::poset::{LinearExtension, Poset};
use crate::rational::{self, scaled_integer, Rational};

/// Default cap on spanning trees examined by the witness search.
pub const DEFAULT_TREE_CAP: u64 = 100_000;

/// Largest grid the cell-level construction will materialize.
pub const MAX_GRID: usize = 1 << 24;

/// A measure-preserving map of `[0,1)` that translates cell `i` of an
/// `L`-cell grid onto cell `perm[i]`:
/// `φ(t) = (perm(i) + (tL - i)) / L` for `i = ⌊tL⌋`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellPermutation {
    perm: Vec<usize>,
}

impl CellPermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let l = perm.len();
        if l == 0 {
            return Err(Error::InvalidPermutation("grid must have at least one cell".into()));
        }
        let mut seen = vec![false; l];
        for &p in &perm {
            if p >= l || seen[p] {
                return Err(Error::InvalidPermutation(format!(
                    "not a bijection on {l} cells"
                )));
            }
            seen[p] = true;
        }
        Ok(CellPermutation { perm })
    }

    pub fn identity(cells: usize) -> Self {
        CellPermutation {
            perm: (0..cells).collect(),
        }
    }

    pub fn cells(&self) -> usize {
        self.perm.len()
    }

    pub fn map_cell(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `φ(t)` for `t ∈ [0,1)`.
    pub fn eval(&self, t: &Rational) -> Rational {
        let l = Rational::from_integer(BigInt::from(self.cells()));
        let scaled = t * &l;
        let i = scaled.floor().to_integer().to_usize().expect("t in [0,1)");
        let offset = &scaled - Rational::from_integer(BigInt::from(i));
        (Rational::from_integer(BigInt::from(self.perm[i])) + offset) / l
    }
}

fn grid_from_lcm(l: BigInt) -> Result<usize> {
    l.to_usize()
        .filter(|&v| v <= MAX_GRID)
        .ok_or(Error::SizeLimit {
            what: "grid resolution",
            cap: MAX_GRID as u64,
        })
}

/// Least common multiple of all mass denominators in the system.
pub fn common_grid(system: &MeasureSystem) -> Result<usize> {
    grid_from_lcm(rational::lcm_of_denominators(
        system.measures().iter().flat_map(|m| m.masses()),
    ))
}

/// As [`common_grid`], also resolving the coupling's atom weights.
pub fn common_grid_with(system: &MeasureSystem, coupling: &Coupling) -> Result<usize> {
    let l = rational::lcm_of_denominators(
        system
            .measures()
            .iter()
            .flat_map(|m| m.masses())
            .chain(coupling.atoms().iter().map(|(_, w)| w)),
    );
    grid_from_lcm(l)
}

/// Values of `P^{-1}` on each cell of an `L`-cell grid; fails if some mass
/// is not a multiple of `1/L`.
pub fn inverse_on_grid(measure: &RationalMeasure, ext: &LinearExtension, cells: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(cells);
    for &x in ext.order() {
        let m = measure.mass(x);
        let k = scaled_integer(m, cells).ok_or_else(|| Error::GridMismatch {
            cells,
            denominator: m.denom().to_string(),
        })?;
        out.extend(std::iter::repeat_n(x, k));
    }
    debug_assert_eq!(out.len(), cells);
    Ok(out)
}

/// The composed map `P^{-1} ∘ φ`, as a step function.
pub fn composed_step_function(
    perm: &CellPermutation,
    measure: &RationalMeasure,
    ext: &LinearExtension,
) -> Result<StepFunction> {
    let grid = inverse_on_grid(measure, ext, perm.cells())?;
    let cells: Vec<usize> = (0..perm.cells()).map(|i| grid[perm.map_cell(i)]).collect();
    StepFunction::from_cells(&cells)
}

fn check_extensions(system: &MeasureSystem, exts: &[LinearExtension]) -> Result<()> {
    if exts.len() != system.index_poset().len() {
        return Err(Error::DomainMismatch {
            expected: system.index_poset().len(),
            found: exts.len(),
        });
    }
    for e in exts {
        if e.len() != system.state_poset().len() {
            return Err(Error::DomainMismatch {
                expected: system.state_poset().len(),
                found: e.len(),
            });
        }
    }
    Ok(())
}

/// Builds `φ_α` on the common grid of the system and coupling.
pub fn synchronize_from_coupling(
    coupling: &Coupling,
    exts: &[LinearExtension],
    system: &MeasureSystem,
) -> Result<Vec<CellPermutation>> {
    let cells = common_grid_with(system, coupling)?;
    synchronize_on_grid(coupling, exts, system, cells)
}

/// Builds `φ_α` on an `L`-cell grid.
///
/// Atoms are expanded into unit cells ordered lexicographically by the
/// ψ-ranks of their tuples; for each index, the unit cells carrying state
/// `s` are sent, in order, to the grid cells where `P_α^{-1}` equals `s`.
pub fn synchronize_on_grid(
    coupling: &Coupling,
    exts: &[LinearExtension],
    system: &MeasureSystem,
    cells: usize,
) -> Result<Vec<CellPermutation>> {
    check_extensions(system, exts)?;
    coupling.check_against(system)?;
    let na = system.index_poset().len();
    let ns = system.state_poset().len();

    let mut atoms: Vec<(Vec<usize>, usize, &[usize])> = Vec::with_capacity(coupling.atoms().len());
    for (t, w) in coupling.atoms() {
        let k = scaled_integer(w, cells).ok_or_else(|| Error::GridMismatch {
            cells,
            denominator: w.denom().to_string(),
        })?;
        let key = t.0.iter().enumerate().map(|(a, &x)| exts[a].rank(x)).collect();
        atoms.push((key, k, &t.0));
    }
    atoms.sort();
    let unit_tuples: Vec<&[usize]> = atoms
        .iter()
        .flat_map(|(_, k, t)| std::iter::repeat_n(*t, *k))
        .collect();
    debug_assert_eq!(unit_tuples.len(), cells);

    let mut perms = Vec::with_capacity(na);
    for alpha in 0..na {
        let grid = inverse_on_grid(system.measure(alpha), &exts[alpha], cells)?;
        let mut slots: Vec<VecDeque<usize>> = vec![VecDeque::new(); ns];
        for (c, &x) in grid.iter().enumerate() {
            slots[x].push_back(c);
        }
        let mut perm = Vec::with_capacity(cells);
        for t in &unit_tuples {
            let target = slots[t[alpha]].pop_front().ok_or_else(|| {
                Error::InfeasibleInput(format!(
                    "cell counts disagree for index `{}`",
                    system.index_poset().name(alpha)
                ))
            })?;
            perm.push(target);
        }
        perms.push(CellPermutation::new(perm)?);
    }
    Ok(perms)
}

/// Outcome of checking a family of synchronizing functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyncVerdict {
    Synchronized,
    /// `X_lower(t) ≰ X_upper(t)` on cell `cell`.
    OrderViolation {
        cell: usize,
        lower: usize,
        upper: usize,
        lower_state: usize,
        upper_state: usize,
    },
    /// The composed map of `index` does not push uniform to `P_index`.
    MarginalMismatch { index: usize },
    /// Permutations disagree on `L`, or `L` does not resolve the masses.
    GridMismatch,
}

impl SyncVerdict {
    pub fn is_synchronized(&self) -> bool {
        matches!(self, SyncVerdict::Synchronized)
    }
}

/// Checks pointwise monotonicity cell by cell and the marginal law of every
/// composed map `P_α^{-1} ∘ φ_α`.
pub fn verify_synchronized(
    perms: &[CellPermutation],
    system: &MeasureSystem,
    exts: &[LinearExtension],
) -> Result<SyncVerdict> {
    check_extensions(system, exts)?;
    let (a, s) = (system.index_poset(), system.state_poset());
    if perms.len() != a.len() {
        return Err(Error::DomainMismatch {
            expected: a.len(),
            found: perms.len(),
        });
    }
    let cells = perms[0].cells();
    if perms.iter().any(|p| p.cells() != cells) {
        return Ok(SyncVerdict::GridMismatch);
    }
    let mut composed = Vec::with_capacity(perms.len());
    for (alpha, perm) in perms.iter().enumerate() {
        let Ok(grid) = inverse_on_grid(system.measure(alpha), &exts[alpha], cells) else {
            return Ok(SyncVerdict::GridMismatch);
        };
        let values: Vec<usize> = (0..cells).map(|i| grid[perm.map_cell(i)]).collect();
        if !StepFunction::from_cells(&values)?.pushes_forward_to(system.measure(alpha)) {
            return Ok(SyncVerdict::MarginalMismatch { index: alpha });
        }
        composed.push(values);
    }
    for cell in 0..cells {
        for (lower, upper) in a.strict_pairs() {
            let (x, y) = (composed[lower][cell], composed[upper][cell]);
            if !s.leq(x, y) {
                return Ok(SyncVerdict::OrderViolation {
                    cell,
                    lower,
                    upper,
                    lower_state: x,
                    upper_state: y,
                });
            }
        }
    }
    Ok(SyncVerdict::Synchronized)
}

/// Every cell where the naive (identity-φ) transforms break the order, as
/// `(cell, lower, upper)`.
pub fn naive_violations(system: &MeasureSystem, exts: &[LinearExtension]) -> Result<Vec<(usize, usize, usize)>> {
    check_extensions(system, exts)?;
    let cells = common_grid(system)?;
    let grids: Vec<Vec<usize>> = (0..system.index_poset().len())
        .map(|a| inverse_on_grid(system.measure(a), &exts[a], cells))
        .collect::<Result<_>>()?;
    let s = system.state_poset();
    let mut out = Vec::new();
    for cell in 0..cells {
        for (lo, hi) in system.index_poset().strict_pairs() {
            if !s.leq(grids[lo][cell], grids[hi][cell]) {
                out.push((cell, lo, hi));
            }
        }
    }
    Ok(out)
}

/// Which extremal elements an interlacing graph is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Minimal elements, joined when they share a strict upper bound.
    Minimal,
    /// Maximal elements, joined when they share a strict lower bound.
    Maximal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterlacingGraph {
    pub side: Side,
    pub vertices: Vec<usize>,
    /// Pairs of positions into `vertices`, first < second.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreeWitness {
    pub side: Side,
    /// Tree edges as pairs of elements of the index poset.
    pub edges: Vec<(usize, usize)>,
}

fn interlacing_graph(poset: &Poset, side: Side) -> InterlacingGraph {
    let p = match side {
        Side::Minimal => poset.clone(),
        Side::Maximal => poset.dual(),
    };
    let vertices = p.minimal_elements();
    let mut edges = Vec::new();
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            let (a, b) = (vertices[i], vertices[j]);
            if (0..p.len()).any(|beta| p.lt(a, beta) && p.lt(b, beta)) {
                edges.push((i, j));
            }
        }
    }
    InterlacingGraph {
        side,
        vertices,
        edges,
    }
}

/// The minimal-side and maximal-side interlacing graphs of `poset`.
pub fn interlacing_graphs(poset: &Poset) -> (InterlacingGraph, InterlacingGraph) {
    (
        interlacing_graph(poset, Side::Minimal),
        interlacing_graph(poset, Side::Maximal),
    )
}

/// `true` when `members` induces a connected subgraph of `edges` (over
/// positions `0..n`). Empty sets count as connected.
fn induced_connected(n: usize, edges: &[(usize, usize)], members: &[bool]) -> bool {
    let Some(start) = (0..n).find(|&v| members[v]) else {
        return true;
    };
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        if members[a] && members[b] {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    (0..n).all(|v| !members[v] || seen[v])
}

struct TreeSearch<'a> {
    n: usize,
    edges: &'a [(usize, usize)],
    /// Per index element, membership of `D_A(α)` over vertex positions.
    local_sets: Vec<Vec<bool>>,
    cap: u64,
    examined: u64,
}

impl TreeSearch<'_> {
    fn find(&mut self, pos: usize, chosen: &mut Vec<usize>, comp: &mut Vec<usize>) -> Result<bool> {
        if chosen.len() + 1 == self.n {
            self.examined += 1;
            if self.examined > self.cap {
                return Err(Error::SizeLimit {
                    what: "spanning tree count",
                    cap: self.cap,
                });
            }
            let tree: Vec<(usize, usize)> = chosen.iter().map(|&e| self.edges[e]).collect();
            return Ok(self
                .local_sets
                .iter()
                .all(|m| induced_connected(self.n, &tree, m)));
        }
        if pos == self.edges.len() {
            return Ok(false);
        }
        // Prune: chosen plus undecided edges must keep every local set
        // connected, since subsets of edges can only disconnect further.
        let available: Vec<(usize, usize)> = chosen
            .iter()
            .copied()
            .chain(pos..self.edges.len())
            .map(|e| self.edges[e])
            .collect();
        let all = vec![true; self.n];
        if !induced_connected(self.n, &available, &all)
            || !self
                .local_sets
                .iter()
                .all(|m| induced_connected(self.n, &available, m))
        {
            return Ok(false);
        }
        let (a, b) = self.edges[pos];
        let (ca, cb) = (find_root(comp, a), find_root(comp, b));
        if ca != cb {
            let saved = comp.clone();
            comp[ca] = cb;
            chosen.push(pos);
            if self.find(pos + 1, chosen, comp)? {
                return Ok(true);
            }
            chosen.pop();
            *comp = saved;
        }
        self.find(pos + 1, chosen, comp)
    }
}

fn find_root(comp: &[usize], mut v: usize) -> usize {
    while comp[v] != v {
        v = comp[v];
    }
    v
}

/// Searches for a spanning tree of `graph` whose restriction to every
/// `D_A(α)` (elements of the graph's side below, resp. above, `α`) is
/// connected. Exhaustive up to `cap` complete spanning trees.
pub fn locally_connected_spanning_tree(
    graph: &InterlacingGraph,
    poset: &Poset,
    cap: u64,
) -> Result<Option<SpanningTreeWitness>> {
    let n = graph.vertices.len();
    if n == 0 {
        return Ok(None);
    }
    let local_sets: Vec<Vec<bool>> = (0..poset.len())
        .map(|alpha| {
            graph
                .vertices
                .iter()
                .map(|&d| match graph.side {
                    Side::Minimal => poset.leq(d, alpha),
                    Side::Maximal => poset.leq(alpha, d),
                })
                .collect()
        })
        .collect();
    let mut search = TreeSearch {
        n,
        edges: &graph.edges,
        local_sets,
        cap,
        examined: 0,
    };
    let mut chosen = Vec::new();
    let mut comp: Vec<usize> = (0..n).collect();
    if search.find(0, &mut chosen, &mut comp)? {
        let edges = chosen
            .iter()
            .map(|&e| {
                let (a, b) = graph.edges[e];
                (graph.vertices[a], graph.vertices[b])
            })
            .collect();
        Ok(Some(SpanningTreeWitness {
            side: graph.side,
            edges,
        }))
    } else {
        Ok(None)
    }
}

/// Both interlacing graphs admit locally connected spanning trees.
pub fn is_synchronizable(poset: &Poset, cap: u64) -> Result<bool> {
    let (lower, upper) = interlacing_graphs(poset);
    Ok(locally_connected_spanning_tree(&lower, poset, cap)?.is_some()
        && locally_connected_spanning_tree(&upper, poset, cap)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::MonotoneTuple;
    use crate::measure::inverse_transform;
    use crate::poset::{root_tree, ChildOrders};
    use crate::rational::ratio;

    fn example() -> (MeasureSystem, LinearExtension) {
        let s = Poset::new(
            &["x", "y", "z", "v", "w", "τ"],
            &[("x", "z"), ("y", "z"), ("w", "z"), ("w", "v"), ("w", "τ")],
        )
        .unwrap();
        let mut orders = ChildOrders::new();
        orders.insert(4, vec![2, 3]);
        orders.insert(2, vec![0, 1]);
        let (_, ext) = root_tree(&s, 5, &orders).unwrap();
        let m = |v: &[i64]| RationalMeasure::new(v.iter().map(|&k| ratio(k, 15)).collect()).unwrap();
        let sys = MeasureSystem::new(
            Poset::chain(2, "α").unwrap(),
            s,
            vec![m(&[3, 2, 1, 1, 7, 1]), m(&[1, 1, 6, 3, 2, 2])],
        )
        .unwrap();
        (sys, ext)
    }

    fn listed_coupling() -> Coupling {
        // (x,x):1 (x,z):2 (y,y):1 (y,z):1 (z,z):1 (v,v):1 (w,z):2 (w,v):2 (w,w):2 (w,τ):1 (τ,τ):1
        let listed = [
            (0, 0, 1), (0, 2, 2), (1, 1, 1), (1, 2, 1), (2, 2, 1), (3, 3, 1),
            (4, 2, 2), (4, 3, 2), (4, 4, 2), (4, 5, 1), (5, 5, 1),
        ];
        Coupling::new(
            listed
                .iter()
                .map(|&(a, b, k)| (MonotoneTuple(vec![a, b]), ratio(k, 15)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn grid_sizes() {
        let (sys, _) = example();
        assert_eq!(common_grid(&sys).unwrap(), 15);
        let c = Poset::chain(2, "c").unwrap();
        let pts = MeasureSystem::new(
            c.clone(),
            c.clone(),
            vec![RationalMeasure::point(2, 0), RationalMeasure::point(2, 1)],
        )
        .unwrap();
        assert_eq!(common_grid(&pts).unwrap(), 1);
        let mixed = MeasureSystem::new(
            c.clone(),
            c,
            vec![
                RationalMeasure::from_ratios(&[(1, 4), (3, 4)]).unwrap(),
                RationalMeasure::from_ratios(&[(1, 6), (5, 6)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(common_grid(&mixed).unwrap(), 12);
    }

    #[test]
    fn listed_coupling_gives_expected_permutations() {
        let (sys, ext) = example();
        let exts = vec![ext.clone(), ext];
        let perms = synchronize_from_coupling(&listed_coupling(), &exts, &sys).unwrap();
        assert!(perms[0].is_identity());
        assert_eq!(
            perms[1].as_slice(),
            &[0, 2, 3, 1, 4, 5, 8, 6, 7, 9, 10, 11, 12, 13, 14]
        );
        assert_eq!(
            verify_synchronized(&perms, &sys, &exts).unwrap(),
            SyncVerdict::Synchronized
        );
    }

    #[test]
    fn identity_fails_on_the_example() {
        let (sys, ext) = example();
        let exts = vec![ext.clone(), ext];
        let ids = vec![CellPermutation::identity(15); 2];
        match verify_synchronized(&ids, &sys, &exts).unwrap() {
            SyncVerdict::OrderViolation { cell, lower_state, upper_state, .. } => {
                assert_eq!((cell, lower_state, upper_state), (1, 0, 1));
            }
            other => panic!("{other:?}"),
        }
        let cells: Vec<usize> = naive_violations(&sys, &exts).unwrap().iter().map(|v| v.0).collect();
        assert_eq!(cells, vec![1, 6]);
    }

    #[test]
    fn antichain_index_always_verifies() {
        let (sys, ext) = example();
        let anti = MeasureSystem::new(
            Poset::antichain(2, "α").unwrap(),
            sys.state_poset().clone(),
            sys.measures().to_vec(),
        )
        .unwrap();
        let perms = vec![
            CellPermutation::new((0..15).rev().collect()).unwrap(),
            CellPermutation::identity(15),
        ];
        assert!(verify_synchronized(&perms, &anti, &[ext.clone(), ext])
            .unwrap()
            .is_synchronized());
    }

    #[test]
    fn grid_mismatch_errors() {
        let (sys, ext) = example();
        let exts = vec![ext.clone(), ext];
        assert!(matches!(
            synchronize_on_grid(&listed_coupling(), &exts, &sys, 10),
            Err(Error::GridMismatch { .. })
        ));
        let perms = vec![CellPermutation::identity(15), CellPermutation::identity(30)];
        assert_eq!(
            verify_synchronized(&perms, &sys, &exts).unwrap(),
            SyncVerdict::GridMismatch
        );
    }

    #[test]
    fn wrong_coupling_is_rejected() {
        let (sys, ext) = example();
        let diag = Coupling::new(
            (0..6)
                .map(|s| (MonotoneTuple(vec![s, s]), sys.measure(0).mass(s).clone()))
                .filter(|(_, w)| *w != ratio(0, 1))
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            synchronize_from_coupling(&diag, &[ext.clone(), ext], &sys),
            Err(Error::InfeasibleInput(_))
        ));
    }

    #[test]
    fn single_index_is_identity() {
        let (sys, ext) = example();
        let one = MeasureSystem::new(
            Poset::antichain(1, "α").unwrap(),
            sys.state_poset().clone(),
            vec![sys.measure(0).clone()],
        )
        .unwrap();
        let c = Coupling::new(
            (0..6)
                .map(|s| (MonotoneTuple(vec![s]), sys.measure(0).mass(s).clone()))
                .collect(),
        )
        .unwrap();
        let perms = synchronize_from_coupling(&c, &[ext], &one).unwrap();
        assert!(perms[0].is_identity());
    }

    #[test]
    fn phi_evaluation() {
        let p = CellPermutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(p.eval(&ratio(1, 6)), ratio(5, 6));
        assert_eq!(p.eval(&ratio(1, 3)), ratio(0, 1));
        assert!(CellPermutation::new(vec![0, 0]).is_err());
    }

    #[test]
    fn composed_map_pushes_forward() {
        let (sys, ext) = example();
        let exts = vec![ext.clone(), ext.clone()];
        let perms = synchronize_from_coupling(&listed_coupling(), &exts, &sys).unwrap();
        for (alpha, p) in perms.iter().enumerate() {
            let f = composed_step_function(p, sys.measure(alpha), &ext).unwrap();
            assert!(f.pushes_forward_to(sys.measure(alpha)));
        }
        let inv = inverse_transform(sys.measure(1), &ext).unwrap();
        let ident = composed_step_function(&CellPermutation::identity(15), sys.measure(1), &ext).unwrap();
        assert_eq!(inv, ident);
    }

    #[test]
    fn interlacing_examples() {
        let bounded = Poset::new(&["b", "m", "t"], &[("b", "m"), ("m", "t")]).unwrap();
        let (lo, hi) = interlacing_graphs(&bounded);
        assert_eq!((lo.vertices.len(), lo.edges.len()), (1, 0));
        assert_eq!((hi.vertices.len(), hi.edges.len()), (1, 0));
        assert!(locally_connected_spanning_tree(&lo, &bounded, DEFAULT_TREE_CAP)
            .unwrap()
            .is_some());
        assert!(is_synchronizable(&bounded, DEFAULT_TREE_CAP).unwrap());

        let v = Poset::new(&["a", "a2", "b"], &[("a", "b"), ("a2", "b")]).unwrap();
        assert_eq!(interlacing_graphs(&v).0.edges, vec![(0, 1)]);

        let anti = Poset::antichain(2, "a").unwrap();
        let (lo, _) = interlacing_graphs(&anti);
        assert!(lo.edges.is_empty());
        assert!(locally_connected_spanning_tree(&lo, &anti, DEFAULT_TREE_CAP)
            .unwrap()
            .is_none());
        assert!(!is_synchronizable(&anti, DEFAULT_TREE_CAP).unwrap());
    }

    #[test]
    fn local_connectivity_forces_an_edge() {
        // a1,a2,a3 pairwise interlaced through top; g sits above a1,a3 only.
        let p = Poset::new(
            &["a1", "a2", "a3", "g", "top"],
            &[("a1", "g"), ("a3", "g"), ("g", "top"), ("a2", "top")],
        )
        .unwrap();
        let (lo, _) = interlacing_graphs(&p);
        assert_eq!(lo.edges.len(), 3);
        let w = locally_connected_spanning_tree(&lo, &p, DEFAULT_TREE_CAP)
            .unwrap()
            .unwrap();
        assert_eq!(w.edges.len(), 2);
        assert!(w.edges.contains(&(0, 2)));
        assert!(is_synchronizable(&p, DEFAULT_TREE_CAP).unwrap());
    }

    #[test]
    fn tree_cap_is_enforced() {
        // Every pair of the three minimal elements has its own upper bound,
        // so a locally connected tree would need all three edges.
        let p = Poset::new(
            &["a", "b", "c", "ab", "bc", "ca"],
            &[("a", "ab"), ("b", "ab"), ("b", "bc"), ("c", "bc"), ("c", "ca"), ("a", "ca")],
        )
        .unwrap();
        let (lo, _) = interlacing_graphs(&p);
        assert!(locally_connected_spanning_tree(&lo, &p, DEFAULT_TREE_CAP)
            .unwrap()
            .is_none());
        assert!(matches!(
            locally_connected_spanning_tree(&lo, &p, 0),
            Err(Error::SizeLimit { .. })
        ));
    }
}
