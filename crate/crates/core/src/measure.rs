//! Exact probability measures on a poset, their distribution functions, and
//! inverse probability transforms as rational step functions on `[0,1)`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poset::{LinearExtension, Poset, RootedTree};
use crate::rational::{self, is_nonneg, Rational};

/// A probability measure with exact rational masses, indexed by element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMeasure {
    mass: Vec<Rational>,
}

impl RationalMeasure {
    pub fn new(mass: Vec<Rational>) -> Result<Self> {
        if mass.is_empty() {
            return Err(Error::InvalidMeasure("empty domain".into()));
        }
        if let Some(m) = mass.iter().find(|m| !is_nonneg(m)) {
            return Err(Error::InvalidMeasure(format!("negative mass {m}")));
        }
        let total = rational::sum(&mass);
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("masses sum to {total}, not 1")));
        }
        Ok(RationalMeasure { mass })
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_ratios(ratios: &[(i64, i64)]) -> Result<Self> {
        Self::new(ratios.iter().map(|&(p, q)| rational::ratio(p, q)).collect())
    }

    pub fn point(n: usize, at: usize) -> Self {
        let mut mass = vec![Rational::zero(); n];
        mass[at] = Rational::one();
        RationalMeasure { mass }
    }

    pub fn uniform(n: usize) -> Self {
        RationalMeasure {
            mass: vec![rational::ratio(1, n as i64); n],
        }
    }

    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn mass(&self, x: usize) -> &Rational {
        &self.mass[x]
    }

    pub fn masses(&self) -> &[Rational] {
        &self.mass
    }

    /// Total mass of a set of elements.
    pub fn of_set(&self, set: &[usize]) -> Rational {
        rational::sum(set.iter().map(|&x| &self.mass[x]))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !self.mass[x].is_zero()).collect()
    }

    pub(crate) fn check_domain(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::DomainMismatch {
                expected: n,
                found: self.len(),
            });
        }
        Ok(())
    }
}

/// Values of a distribution function, one per element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistFn {
    pub values: Vec<Rational>,
}

impl DistFn {
    pub fn at(&self, x: usize) -> &Rational {
        &self.values[x]
    }
}

/// `F(x) = P({z : z ≤_τ x})`: mass of the subtree hanging below `x`.
pub fn dist_fn(measure: &RationalMeasure, tree: &RootedTree) -> Result<DistFn> {
    measure.check_domain(tree.len())?;
    let mut values = measure.masses().to_vec();
    // Push subtree totals upward, deepest elements first.
    let mut by_depth: Vec<(usize, usize)> = (0..tree.len())
        .map(|x| (tree.path_to_root(x).len(), x))
        .collect();
    by_depth.sort_unstable_by(|a, b| b.cmp(a));
    for (_, x) in by_depth {
        if let Some(p) = tree.parent[x] {
            let v = values[x].clone();
            values[p] += v;
        }
    }
    Ok(DistFn { values })
}

/// `F⟨x⟩`: cumulative mass along the linear extension.
pub fn dist_fn_linext(measure: &RationalMeasure, ext: &LinearExtension) -> Result<DistFn> {
    measure.check_domain(ext.len())?;
    let mut values = vec![Rational::zero(); ext.len()];
    let mut acc = Rational::zero();
    for &x in ext.order() {
        acc += measure.mass(x);
        values[x] = acc.clone();
    }
    Ok(DistFn { values })
}

/// A map `[0,1) → S` constant on finitely many half-open intervals
/// `[t_{i-1}, t_i)`. Adjacent intervals always carry distinct values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    values: Vec<usize>,
}

impl StepFunction {
    /// Validates `0 = t_0 < ... < t_k = 1` and merges equal neighbours.
    pub fn new(breakpoints: Vec<Rational>, values: Vec<usize>) -> Result<Self> {
        if breakpoints.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::InvalidStepFunction(
                "need one more breakpoint than values".into(),
            ));
        }
        if !breakpoints[0].is_zero() || !breakpoints[breakpoints.len() - 1].is_one() {
            return Err(Error::InvalidStepFunction("must span [0,1)".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidStepFunction(
                "breakpoints must increase strictly".into(),
            ));
        }
        let mut bp = vec![breakpoints[0].clone()];
        let mut vals: Vec<usize> = Vec::with_capacity(values.len());
        for (i, &v) in values.iter().enumerate() {
            if vals.last() == Some(&v) {
                *bp.last_mut().unwrap() = breakpoints[i + 1].clone();
            } else {
                vals.push(v);
                bp.push(breakpoints[i + 1].clone());
            }
        }
        Ok(StepFunction {
            breakpoints: bp,
            values: vals,
        })
    }

    /// Step function taking `cells[i]` on `[i/L, (i+1)/L)` with `L = cells.len()`.
    pub fn from_cells(cells: &[usize]) -> Result<Self> {
        let l = cells.len() as i64;
        let bp = (0..=l).map(|i| rational::ratio(i, l)).collect();
        Self::new(bp, cells.to_vec())
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// Iterator over `(start, end, value)` triples.
    pub fn pieces(&self) -> impl Iterator<Item = (&Rational, &Rational, usize)> {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, &v)| (&w[0], &w[1], v))
    }

    /// Value at `t ∈ [0,1)`.
    pub fn eval(&self, t: &Rational) -> usize {
        assert!(
            *t >= Rational::zero() && *t < Rational::one(),
            "t must be in [0,1)"
        );
        // Last breakpoint index with bp <= t.
        let i = self.breakpoints.partition_point(|b| b <= t) - 1;
        self.values[i]
    }

    /// Lebesgue length of the preimage of each element of an `n`-element set.
    pub fn preimage_lengths(&self, n: usize) -> Vec<Rational> {
        let mut lengths = vec![Rational::zero(); n];
        for (a, b, v) in self.pieces() {
            lengths[v] += b - a;
        }
        lengths
    }

    /// `true` when the step function pushes the uniform law forward to `measure`.
    pub fn pushes_forward_to(&self, measure: &RationalMeasure) -> bool {
        self.values.iter().all(|&v| v < measure.len())
            && self.preimage_lengths(measure.len()) == measure.masses()
    }
}

/// `P^{-1}(t) = min_ψ { x : t < F⟨x⟩ }`.
///
/// Elements of zero mass never appear; the interval of `x` is
/// `[F⟨x⟩ - P(x), F⟨x⟩)`.
pub fn inverse_transform(measure: &RationalMeasure, ext: &LinearExtension) -> Result<StepFunction> {
    measure.check_domain(ext.len())?;
    let mut breakpoints = vec![Rational::zero()];
    let mut values = Vec::new();
    let mut acc = Rational::zero();
    for &x in ext.order() {
        let m = measure.mass(x);
        if m.is_zero() {
            continue;
        }
        acc += m;
        breakpoints.push(acc.clone());
        values.push(x);
    }
    StepFunction::new(breakpoints, values)
}

/// The classical inverse transform for a linearly ordered state space.
pub fn classical_inverse(measure: &RationalMeasure, chain: &Poset) -> Result<StepFunction> {
    if !chain.is_chain() {
        return Err(Error::NotAChain);
    }
    measure.check_domain(chain.len())?;
    let n = chain.len();
    // F(x) = P({z : z <= x}); walk elements in increasing order.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&z| chain.leq(z, x)).count());
    let cdf: Vec<Rational> = order
        .iter()
        .map(|&x| measure.of_set(&(0..n).filter(|&z| chain.leq(z, x)).collect::<Vec<_>>()))
        .collect();
    let mut breakpoints = vec![Rational::zero()];
    let mut values = Vec::new();
    for (i, &x) in order.iter().enumerate() {
        let prev = if i == 0 { Rational::zero() } else { cdf[i - 1].clone() };
        if cdf[i] > prev {
            breakpoints.push(cdf[i].clone());
            values.push(x);
        }
    }
    StepFunction::new(breakpoints, values)
}
