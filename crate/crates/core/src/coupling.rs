//! Stochastic order, pairwise Strassen couplings, and the exact marginal-LP
//! oracle that decides realizable monotonicity of a whole system.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::measure::RationalMeasure;
use crate::poset::{up_sets, Poset};
use crate::rational::{self, Rational};
use crate::simplex::{phase_one, Feasibility};

/// Default cap on the number of enumerated monotone tuples.
pub const DEFAULT_TUPLE_CAP: u64 = 1_000_000;

/// A system `(P_α : α ∈ A)` of measures on a state poset `S`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSystem {
    index: Poset,
    state: Poset,
    measures: Vec<RationalMeasure>,
}

impl MeasureSystem {
    pub fn new(index: Poset, state: Poset, measures: Vec<RationalMeasure>) -> Result<Self> {
        if measures.len() != index.len() {
            return Err(Error::DomainMismatch {
                expected: index.len(),
                found: measures.len(),
            });
        }
        for m in &measures {
            m.check_domain(state.len())?;
        }
        Ok(MeasureSystem {
            index,
            state,
            measures,
        })
    }

    pub fn index_poset(&self) -> &Poset {
        &self.index
    }

    pub fn state_poset(&self) -> &Poset {
        &self.state
    }

    pub fn measures(&self) -> &[RationalMeasure] {
        &self.measures
    }

    pub fn measure(&self, alpha: usize) -> &RationalMeasure {
        &self.measures[alpha]
    }
}

/// An order-preserving assignment `α ↦ x_α` from `A` to `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneTuple(pub Vec<usize>);

impl MonotoneTuple {
    pub fn is_monotone(&self, index: &Poset, state: &Poset) -> bool {
        index
            .strict_pairs()
            .all(|(a, b)| state.leq(self.0[a], self.0[b]))
    }
}

/// A finitely supported joint law on monotone tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct Coupling {
    atoms: Vec<(MonotoneTuple, Rational)>,
}

impl Coupling {
    /// Drops zero-weight atoms; rejects negative weights and totals other than 1.
    pub fn new(atoms: Vec<(MonotoneTuple, Rational)>) -> Result<Self> {
        if atoms.iter().any(|(_, w)| w.is_negative()) {
            return Err(Error::InfeasibleInput("negative atom weight".into()));
        }
        let atoms: Vec<_> = atoms.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        let total = rational::sum(atoms.iter().map(|(_, w)| w));
        if !total.is_one() {
            return Err(Error::InfeasibleInput(format!("atom weights sum to {total}")));
        }
        Ok(Coupling { atoms })
    }

    pub fn atoms(&self) -> &[(MonotoneTuple, Rational)] {
        &self.atoms
    }

    /// Law of coordinate `k` on an `n`-element state space.
    pub fn marginal(&self, k: usize, n: usize) -> Vec<Rational> {
        let mut m = vec![Rational::zero(); n];
        for (t, w) in &self.atoms {
            m[t.0[k]] += w;
        }
        m
    }

    /// Checks monotonicity of every atom and exact marginals against `system`.
    pub fn check_against(&self, system: &MeasureSystem) -> Result<()> {
        let (a, s) = (system.index_poset(), system.state_poset());
        for (t, _) in &self.atoms {
            if t.0.len() != a.len() || t.0.iter().any(|&x| x >= s.len()) {
                return Err(Error::InfeasibleInput("tuple has wrong shape".into()));
            }
            if !t.is_monotone(a, s) {
                return Err(Error::InfeasibleInput(format!("tuple {:?} is not monotone", t.0)));
            }
        }
        for alpha in 0..a.len() {
            if self.marginal(alpha, s.len()) != system.measure(alpha).masses() {
                return Err(Error::InfeasibleInput(format!(
                    "marginal of `{}` differs",
                    a.name(alpha)
                )));
            }
        }
        Ok(())
    }

    /// Denominator LCM of all atom weights.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        rational::lcm_of_denominators(self.atoms.iter().map(|(_, w)| w))
    }
}

/// Violation of `P_lower ⪯ P_upper` on an up-set.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityWitness {
    pub lower: usize,
    pub upper: usize,
    pub up_set: Vec<usize>,
    pub lower_mass: Rational,
    pub upper_mass: Rational,
}

impl fmt::Display for MonotonicityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "index {} <= {} but up-set {:?} has mass {} > {}",
            self.lower, self.upper, self.up_set, self.lower_mass, self.upper_mass
        )
    }
}

/// Dual witness `y` over the `(α, s)` marginal constraints: `Σ_α y[α][t(α)] <= 0`
/// for every monotone tuple `t`, while `Σ_{α,s} y[α][s] P_α(s) > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FarkasCertificate {
    pub weights: Vec<Vec<Rational>>,
}

impl FarkasCertificate {
    /// `Σ_{α,s} y[α][s] P_α(s)`.
    pub fn value(&self, system: &MeasureSystem) -> Rational {
        let mut acc = Rational::zero();
        for (alpha, row) in self.weights.iter().enumerate() {
            for (s, y) in row.iter().enumerate() {
                acc += y * system.measure(alpha).mass(s);
            }
        }
        acc
    }

    /// Re-derives infeasibility exactly against every monotone tuple.
    pub fn verify(&self, system: &MeasureSystem, tuple_cap: u64) -> Result<bool> {
        let (a, s) = (system.index_poset(), system.state_poset());
        if self.weights.len() != a.len() || self.weights.iter().any(|r| r.len() != s.len()) {
            return Ok(false);
        }
        if !self.value(system).is_positive() {
            return Ok(false);
        }
        let tuples = monotone_tuples(a, s, tuple_cap)?;
        Ok(tuples.iter().all(|t| {
            let total = rational::sum(t.0.iter().enumerate().map(|(alpha, &x)| &self.weights[alpha][x]));
            !total.is_positive()
        }))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Domination {
    /// Coupling on pairs `(a, b)` with `a <= b`.
    Coupled(Coupling),
    NotDominated { up_set: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Realization {
    Feasible(Coupling),
    Infeasible(FarkasCertificate),
}

/// Up-set with `P1(U) > P2(U)`, found by enumeration, or `None` if `P1 ⪯ P2`.
pub fn dominance_violation(
    p1: &RationalMeasure,
    p2: &RationalMeasure,
    poset: &Poset,
    cap: u64,
) -> Result<Option<Vec<usize>>> {
    p1.check_domain(poset.len())?;
    p2.check_domain(poset.len())?;
    for u in up_sets(poset, cap)? {
        if p1.of_set(&u) > p2.of_set(&u) {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// `P1 ⪯ P2`: `P1(U) <= P2(U)` for every up-set `U`.
pub fn stochastically_leq(
    p1: &RationalMeasure,
    p2: &RationalMeasure,
    poset: &Poset,
    cap: u64,
) -> Result<bool> {
    Ok(dominance_violation(p1, p2, poset, cap)?.is_none())
}

/// Monotone coupling of `(P1, P2)` by bipartite max-flow, or a violating
/// up-set read off the minimum cut.
pub fn strassen_coupling(p1: &RationalMeasure, p2: &RationalMeasure, poset: &Poset) -> Result<Domination> {
    p1.check_domain(poset.len())?;
    p2.check_domain(poset.len())?;
    let n = poset.len();
    let (source, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNetwork::new(2 * n + 2);
    for a in 0..n {
        if !p1.mass(a).is_zero() {
            net.add_edge(source, a, p1.mass(a).clone());
        }
        if !p2.mass(a).is_zero() {
            net.add_edge(n + a, sink, p2.mass(a).clone());
        }
        for b in 0..n {
            if poset.leq(a, b) {
                // Total flow never exceeds 1.
                net.add_edge(a, n + b, Rational::one());
            }
        }
    }
    let value = net.max_flow(source, sink);
    if value.is_one() {
        let mut atoms = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if poset.leq(a, b) {
                    let f = net.flow(a, n + b);
                    if !f.is_zero() {
                        atoms.push((MonotoneTuple(vec![a, b]), f));
                    }
                }
            }
        }
        return Ok(Domination::Coupled(Coupling::new(atoms)?));
    }
    // R = left nodes on the source side of a minimum cut. Every b >= a for
    // a in R is on the source side too, so cut = P1(S \ R) + P2(up(R)) < 1,
    // giving P1(up(R)) >= P1(R) > P2(up(R)).
    let reach = net.reachable(source);
    let left: Vec<usize> = (0..n).filter(|&a| reach[a]).collect();
    let up_set = poset.up_closure(&left);
    debug_assert!(p1.of_set(&up_set) > p2.of_set(&up_set));
    Ok(Domination::NotDominated { up_set })
}

/// First comparable pair `α < β` (row-major) with `P_α ⋠ P_β`, with a
/// violating up-set from the flow cut.
pub fn monotonicity_witness(system: &MeasureSystem) -> Option<MonotonicityWitness> {
    let s = system.state_poset();
    for (alpha, beta) in system.index_poset().strict_pairs() {
        let (p, q) = (system.measure(alpha), system.measure(beta));
        match strassen_coupling(p, q, s).expect("system domains are validated") {
            Domination::Coupled(_) => {}
            Domination::NotDominated { up_set } => {
                return Some(MonotonicityWitness {
                    lower: alpha,
                    upper: beta,
                    lower_mass: p.of_set(&up_set),
                    upper_mass: q.of_set(&up_set),
                    up_set,
                });
            }
        }
    }
    None
}

pub fn is_stoch_monotone(system: &MeasureSystem) -> bool {
    monotonicity_witness(system).is_none()
}

/// All order-preserving maps `A → S`, lexicographic in state indices.
pub fn monotone_tuples(index: &Poset, state: &Poset, cap: u64) -> Result<Vec<MonotoneTuple>> {
    let na = index.len();
    let mut out = Vec::new();
    let mut current = vec![0usize; na];
    fn rec(
        index: &Poset,
        state: &Poset,
        pos: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<MonotoneTuple>,
        cap: u64,
    ) -> Result<()> {
        if pos == current.len() {
            if out.len() as u64 >= cap {
                return Err(Error::SizeLimit {
                    what: "monotone tuple count",
                    cap,
                });
            }
            out.push(MonotoneTuple(current.clone()));
            return Ok(());
        }
        for x in 0..state.len() {
            let ok = (0..pos).all(|b| {
                (!index.leq(b, pos) || state.leq(current[b], x))
                    && (!index.leq(pos, b) || state.leq(x, current[b]))
            });
            if ok {
                current[pos] = x;
                rec(index, state, pos + 1, current, out, cap)?;
            }
        }
        Ok(())
    }
    rec(index, state, 0, &mut current, &mut out, cap)?;
    Ok(out)
}

/// Decides realizable monotonicity exactly: a feasible coupling on monotone
/// tuples with the prescribed marginals, or a Farkas certificate.
pub fn realize(system: &MeasureSystem, tuple_cap: u64) -> Result<Realization> {
    let (a, s) = (system.index_poset(), system.state_poset());
    let ns = s.len();
    let tuples = monotone_tuples(a, s, tuple_cap)?;
    let columns: Vec<Vec<usize>> = tuples
        .iter()
        .map(|t| t.0.iter().enumerate().map(|(alpha, &x)| alpha * ns + x).collect())
        .collect();
    let b: Vec<Rational> = system
        .measures()
        .iter()
        .flat_map(|m| m.masses().iter().cloned())
        .collect();
    match phase_one(a.len() * ns, &columns, &b) {
        Feasibility::Feasible(x) => {
            let atoms = tuples.into_iter().zip(x).filter(|(_, w)| !w.is_zero()).collect();
            let coupling = Coupling::new(atoms)?;
            debug_assert!(coupling.check_against(system).is_ok());
            Ok(Realization::Feasible(coupling))
        }
        Feasibility::Infeasible(y) => {
            let weights = y.chunks(ns).map(|c| c.to_vec()).collect();
            Ok(Realization::Infeasible(FarkasCertificate { weights }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::DEFAULT_UP_SET_CAP;
    use crate::rational::ratio;

    fn example_poset() -> Poset {
        Poset::new(
            &["x", "y", "z", "v", "w", "τ"],
            &[("x", "z"), ("y", "z"), ("w", "z"), ("w", "v"), ("w", "τ")],
        )
        .unwrap()
    }

    fn fifteenths(v: &[i64]) -> RationalMeasure {
        RationalMeasure::new(v.iter().map(|&k| ratio(k, 15)).collect()).unwrap()
    }

    fn example_system() -> MeasureSystem {
        MeasureSystem::new(
            Poset::chain(2, "α").unwrap(),
            example_poset(),
            vec![fifteenths(&[3, 2, 1, 1, 7, 1]), fifteenths(&[1, 1, 6, 3, 2, 2])],
        )
        .unwrap()
    }

    #[test]
    fn example_pair_is_ordered() {
        let s = example_poset();
        let (p1, p2) = (fifteenths(&[3, 2, 1, 1, 7, 1]), fifteenths(&[1, 1, 6, 3, 2, 2]));
        assert!(stochastically_leq(&p1, &p2, &s, DEFAULT_UP_SET_CAP).unwrap());
        assert!(stochastically_leq(&p1, &p1, &s, DEFAULT_UP_SET_CAP).unwrap());
        assert!(!stochastically_leq(&p2, &p1, &s, DEFAULT_UP_SET_CAP).unwrap());
    }

    #[test]
    fn reversed_point_masses() {
        let c = Poset::chain(2, "c").unwrap();
        let top = RationalMeasure::point(2, 1);
        let bot = RationalMeasure::point(2, 0);
        assert!(!stochastically_leq(&top, &bot, &c, DEFAULT_UP_SET_CAP).unwrap());
        assert_eq!(
            strassen_coupling(&top, &bot, &c).unwrap(),
            Domination::NotDominated { up_set: vec![1] }
        );
        let sys = MeasureSystem::new(c.clone(), c, vec![top, bot]).unwrap();
        let w = monotonicity_witness(&sys).unwrap();
        assert_eq!((w.lower, w.upper, w.up_set.clone()), (0, 1, vec![1]));
        assert!(w.lower_mass > w.upper_mass);
    }

    #[test]
    fn listed_example_coupling_is_valid() {
        // The hand-listed coupling: every pair ordered, marginals exact.
        let s = example_poset();
        let id = |n: &str| s.index_of(n).unwrap();
        let listed = [
            ("x", "x", 1), ("x", "z", 2), ("y", "y", 1), ("y", "z", 1), ("z", "z", 1),
            ("v", "v", 1), ("w", "z", 2), ("w", "v", 2), ("w", "w", 2), ("w", "τ", 1), ("τ", "τ", 1),
        ];
        let atoms = listed
            .iter()
            .map(|&(a, b, k)| (MonotoneTuple(vec![id(a), id(b)]), ratio(k, 15)))
            .collect();
        let c = Coupling::new(atoms).unwrap();
        c.check_against(&example_system()).unwrap();
    }

    #[test]
    fn strassen_on_example_and_diagonal() {
        let sys = example_system();
        match strassen_coupling(sys.measure(0), sys.measure(1), sys.state_poset()).unwrap() {
            Domination::Coupled(c) => c.check_against(&sys).unwrap(),
            other => panic!("{other:?}"),
        }
        let p = sys.measure(0);
        match strassen_coupling(p, p, sys.state_poset()).unwrap() {
            Domination::Coupled(c) => {
                assert_eq!(c.marginal(0, 6), p.masses());
                assert_eq!(c.marginal(1, 6), p.masses());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn tuple_counts() {
        let s = example_poset();
        let one = Poset::antichain(1, "a").unwrap();
        assert_eq!(monotone_tuples(&one, &s, DEFAULT_TUPLE_CAP).unwrap().len(), 6);
        let c2 = Poset::chain(2, "c").unwrap();
        let t = monotone_tuples(&c2, &c2, DEFAULT_TUPLE_CAP).unwrap();
        assert_eq!(t, vec![MonotoneTuple(vec![0, 0]), MonotoneTuple(vec![0, 1]), MonotoneTuple(vec![1, 1])]);
        assert_eq!(monotone_tuples(&c2, &s, DEFAULT_TUPLE_CAP).unwrap().len(), 11);
        assert!(matches!(
            monotone_tuples(&c2, &s, 10),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn realize_example_system() {
        let sys = example_system();
        assert!(is_stoch_monotone(&sys));
        match realize(&sys, DEFAULT_TUPLE_CAP).unwrap() {
            Realization::Feasible(c) => c.check_against(&sys).unwrap(),
            Realization::Infeasible(_) => panic!("example system is realizable"),
        }
    }

    #[test]
    fn constant_system_is_monotone() {
        let s = example_poset();
        let p = fifteenths(&[3, 2, 1, 1, 7, 1]);
        let sys = MeasureSystem::new(Poset::chain(3, "a").unwrap(), s, vec![p.clone(), p.clone(), p]).unwrap();
        assert!(is_stoch_monotone(&sys));
    }

    #[test]
    fn system_shape_errors() {
        let c2 = Poset::chain(2, "c").unwrap();
        assert!(MeasureSystem::new(c2.clone(), c2.clone(), vec![RationalMeasure::uniform(2)]).is_err());
        assert!(MeasureSystem::new(
            c2.clone(),
            c2,
            vec![RationalMeasure::uniform(3), RationalMeasure::uniform(3)]
        )
        .is_err());
    }

    #[test]
    fn coupling_rejects_bad_weights() {
        let t = MonotoneTuple(vec![0]);
        assert!(Coupling::new(vec![(t.clone(), ratio(1, 2))]).is_err());
        assert!(Coupling::new(vec![(t.clone(), ratio(3, 2)), (t, ratio(-1, 2))]).is_err());
    }
}
