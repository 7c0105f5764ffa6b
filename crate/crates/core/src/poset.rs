//! Finite posets, their cover graphs, and the rooted-tree machinery used by
//! the generalized inverse probability transform.
//!
//! Elements are addressed by dense indices `0..len()`; names are kept only
//! for file I/O and reports.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the number of enumerated up-sets.
pub const DEFAULT_UP_SET_CAP: u64 = 1 << 20;

/// A finite partially ordered set stored as a dense `leq` matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let relations: Vec<String> = self
            .strict_pairs()
            .map(|(a, b)| format!("{}<{}", self.names[a], self.names[b]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("relations", &relations)
            .finish()
    }
}

impl Poset {
    /// Builds a poset from element names and arbitrary order pairs
    /// `(lower, upper)`, taking the reflexive-transitive closure.
    pub fn new<S: AsRef<str>>(elements: &[S], pairs: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut idx_pairs = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let lookup = |s: &S| {
                index
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| Error::UnknownElement(s.as_ref().to_string()))
            };
            idx_pairs.push((lookup(a)?, lookup(b)?));
        }
        Self::from_indices(names, &idx_pairs)
    }

    /// Same as [`Poset::new`] with pairs already given as indices into `names`.
    pub fn from_indices(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyPoset);
        }
        let mut index = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            leq[a][b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Poset { names, index, leq })
    }

    /// Chain `e0 < e1 < ... < e{n-1}` with names given by `prefix{i}`.
    pub fn chain(n: usize, prefix: &str) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        let pairs: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_indices(names, &pairs)
    }

    pub fn antichain(n: usize, prefix: &str) -> Result<Self> {
        let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        Self::from_indices(names, &[])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    /// `b` covers `a`: `a < b` with nothing strictly between.
    pub fn covers(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.len()).any(|z| self.lt(a, z) && self.lt(z, b))
    }

    /// All pairs `(a, b)` with `a < b`, row-major.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.lt(a, b)).map(move |b| (a, b)))
    }

    /// All cover pairs `(lower, upper)`, row-major.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        self.strict_pairs().filter(|&(a, b)| self.covers(a, b)).collect()
    }

    pub fn is_minimal(&self, x: usize) -> bool {
        !(0..self.len()).any(|z| self.lt(z, x))
    }

    pub fn is_maximal(&self, x: usize) -> bool {
        !(0..self.len()).any(|z| self.lt(x, z))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_minimal(x)).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_maximal(x)).collect()
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(x, y)))
    }

    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq(y, x)))
    }

    pub fn is_chain(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (0..n).all(|b| self.comparable(a, b)))
    }

    /// Linear extension of the poset itself: elements sorted by the number
    /// of elements below them, ties broken by index.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| ((0..n).filter(|&z| self.leq(z, x)).count(), x));
        order
    }

    /// Poset obtained by reversing the order.
    pub fn dual(&self) -> Poset {
        let n = self.len();
        let leq = (0..n).map(|a| (0..n).map(|b| self.leq[b][a]).collect()).collect();
        Poset {
            names: self.names.clone(),
            index: self.index.clone(),
            leq,
        }
    }

    /// Upward closure of a set of elements, as a sorted index list.
    pub fn up_closure(&self, set: &[usize]) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| set.iter().any(|&x| self.leq(x, y)))
            .collect()
    }

    pub fn is_up_set(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.len()];
        for &x in set {
            member[x] = true;
        }
        set.iter()
            .all(|&x| (0..self.len()).all(|y| !self.leq(x, y) || member[y]))
    }
}

/// All up-sets of `poset` as sorted index lists, each exactly once,
/// including the empty set and the whole ground set.
///
/// Elements are decided from the top of a linear extension downwards: an
/// element may join only if every element above it already has, so the
/// search never dead-ends.
pub fn up_sets(poset: &Poset, cap: u64) -> Result<Vec<Vec<usize>>> {
    let mut order = poset.topological_order();
    order.reverse();
    let n = poset.len();
    let mut out = Vec::new();
    let mut member = vec![false; n];
    fn rec(
        poset: &Poset,
        order: &[usize],
        pos: usize,
        member: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cap: u64,
    ) -> Result<()> {
        if pos == order.len() {
            if out.len() as u64 >= cap {
                return Err(Error::SizeLimit {
                    what: "up-set count",
                    cap,
                });
            }
            out.push((0..member.len()).filter(|&x| member[x]).collect());
            return Ok(());
        }
        let x = order[pos];
        rec(poset, order, pos + 1, member, out, cap)?;
        if (0..poset.len()).all(|y| !poset.lt(x, y) || member[y]) {
            member[x] = true;
            rec(poset, order, pos + 1, member, out, cap)?;
            member[x] = false;
        }
        Ok(())
    }
    rec(poset, &order, 0, &mut member, &mut out, cap)?;
    Ok(out)
}

/// Undirected graph of cover relations. Edges are stored as
/// `(lower, upper)` pairs in the source order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl CoverGraph {
    pub fn neighbors(&self, x: usize) -> &[usize] {
        &self.adjacency[x]
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adjacency[x].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertices];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for &y in &self.adjacency[x] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == self.vertices
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.vertices && self.is_connected()
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && (0..self.vertices).all(|x| self.degree(x) <= 2)
    }

    /// A leaf is an element with a unique incident edge; the single element
    /// of a one-element poset also counts.
    pub fn is_leaf(&self, x: usize) -> bool {
        self.degree(x) == 1 || self.vertices == 1
    }

    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertices).filter(|&x| self.is_leaf(x)).collect()
    }
}

pub fn cover_graph(poset: &Poset) -> CoverGraph {
    let edges = poset.cover_pairs();
    let mut adjacency = vec![Vec::new(); poset.len()];
    for &(a, b) in &edges {
        adjacency[a].push(b);
        adjacency[b].push(a);
    }
    for adj in &mut adjacency {
        adj.sort_unstable();
    }
    CoverGraph {
        vertices: poset.len(),
        edges,
        adjacency,
    }
}

/// The orientation `≤_τ` of a tree cover graph towards a leaf root, with a
/// chosen linear order on every children set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// `x ≤_τ y`: `y` lies on the tree path from the root to `x`.
    pub fn tau_leq(&self, x: usize, y: usize) -> bool {
        let mut cur = Some(x);
        while let Some(c) = cur {
            if c == y {
                return true;
            }
            cur = self.parent[c];
        }
        false
    }

    /// Path from `x` up to the root, `x` first.
    pub fn path_to_root(&self, x: usize) -> Vec<usize> {
        let mut path = vec![x];
        let mut cur = x;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }
}

/// A total order on the ground set, smallest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearExtension {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl LinearExtension {
    /// Accepts any permutation of `0..n`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &x) in order.iter().enumerate() {
            if x >= n || rank[x] != usize::MAX {
                return Err(Error::InvalidPermutation(format!(
                    "order is not a permutation of 0..{n}"
                )));
            }
            rank[x] = r;
        }
        Ok(LinearExtension { order, rank })
    }

    /// Linear extension of the poset's own order; used for state posets whose
    /// cover graph is not a tree.
    pub fn of_poset(poset: &Poset) -> Self {
        Self::new(poset.topological_order()).expect("topological order is a permutation")
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }
}

/// Per-element orderings of children sets; elements without an entry use
/// input element order.
pub type ChildOrders = BTreeMap<usize, Vec<usize>>;

/// Roots the tree cover graph of `poset` at the leaf `root` and builds the
/// linear extension `≤_ψ`.
///
/// `≤_ψ` is a post-order walk: the subtrees of the children of `x` are
/// emitted in the chosen order, then `x` itself.
pub fn root_tree(
    poset: &Poset,
    root: usize,
    child_orders: &ChildOrders,
) -> Result<(RootedTree, LinearExtension)> {
    let graph = cover_graph(poset);
    if !graph.is_tree() {
        return Err(Error::NotATree);
    }
    if root >= poset.len() {
        return Err(Error::UnknownElement(format!("#{root}")));
    }
    if !graph.is_leaf(root) {
        return Err(Error::NotALeaf(poset.name(root).to_string()));
    }
    let n = poset.len();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &y in graph.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some(x);
                children[x].push(y);
                queue.push_back(y);
            }
        }
    }
    for (&x, requested) in child_orders {
        if x >= n {
            return Err(Error::UnknownElement(format!("#{x}")));
        }
        let mut a = requested.clone();
        let mut b = children[x].clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            let names: Vec<&str> = children[x].iter().map(|&c| poset.name(c)).collect();
            return Err(Error::InvalidChildOrder(
                poset.name(x).to_string(),
                format!("must be an ordering of {{{}}}", names.join(",")),
            ));
        }
        children[x] = requested.clone();
    }
    let tree = RootedTree {
        root,
        parent,
        children,
    };
    let mut order = Vec::with_capacity(n);
    // Iterative post-order: (node, next child index).
    let mut stack = vec![(root, 0usize)];
    while let Some((x, i)) = stack.pop() {
        if i < tree.children[x].len() {
            stack.push((x, i + 1));
            stack.push((tree.children[x][i], 0));
        } else {
            order.push(x);
        }
    }
    let ext = LinearExtension::new(order)?;
    Ok((tree, ext))
}

/// Classification of a finite poset by the shape of its cover graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PosetClass {
    /// Cover graph is a path.
    Z,
    /// Tree cover graph whose branching elements are all extremal.
    W,
    /// Tree cover graph with a branching element that is neither minimal
    /// nor maximal.
    BY,
    NonAcyclicOrDisconnected,
}

impl PosetClass {
    pub fn tag(&self) -> &'static str {
        match self {
            PosetClass::Z => "Z",
            PosetClass::W => "W",
            PosetClass::BY => "BY",
            PosetClass::NonAcyclicOrDisconnected => "NonAcyclicOrDisconnected",
        }
    }
}

impl fmt::Display for PosetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The linear extension used when none is chosen: if the cover graph is a
/// tree, the post-order walk rooted at the first maximal leaf (or the first
/// leaf) with children in index order; otherwise a topological order.
pub fn default_extension(poset: &Poset) -> LinearExtension {
    let graph = cover_graph(poset);
    if graph.is_tree() {
        let leaves = graph.leaves();
        let root = leaves
            .iter()
            .copied()
            .find(|&x| poset.is_maximal(x))
            .unwrap_or(leaves[0]);
        root_tree(poset, root, &ChildOrders::new())
            .expect("leaf of a tree cover graph")
            .1
    } else {
        LinearExtension::of_poset(poset)
    }
}

/// Elements with at least two children under some leaf rooting.
pub fn branching_elements(poset: &Poset) -> Result<Vec<usize>> {
    let graph = cover_graph(poset);
    if !graph.is_tree() {
        return Err(Error::NotATree);
    }
    let mut branching = vec![false; poset.len()];
    for leaf in graph.leaves() {
        let (tree, _) = root_tree(poset, leaf, &ChildOrders::new())?;
        for (x, c) in tree.children.iter().enumerate() {
            if c.len() >= 2 {
                branching[x] = true;
            }
        }
    }
    Ok((0..poset.len()).filter(|&x| branching[x]).collect())
}

pub fn classify(poset: &Poset) -> PosetClass {
    let graph = cover_graph(poset);
    if !graph.is_tree() {
        return PosetClass::NonAcyclicOrDisconnected;
    }
    if graph.is_path() {
        return PosetClass::Z;
    }
    let branching = branching_elements(poset).expect("cover graph is a tree");
    if branching
        .iter()
        .all(|&x| poset.is_minimal(x) || poset.is_maximal(x))
    {
        PosetClass::W
    } else {
        PosetClass::BY
    }
}
