//! Independent oracles used by the integration tests. Each one works from
//! definitions by brute force and shares no code paths with the library
//! beyond the data types.

#![allow(dead_code)]

use std::path::PathBuf;

use num_traits::{One, Zero};
use realmono::coupling::{Coupling, FarkasCertificate, MeasureSystem};
use realmono::measure::RationalMeasure;
use realmono::poset::{LinearExtension, Poset};
use realmono::rational::{ratio, Rational};
use realmono::synchronize::{CellPermutation, Side, SpanningTreeWitness};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// All up-sets as bitmasks, by filtering every subset.
pub fn up_sets_brute(p: &Poset) -> Vec<u32> {
    let n = p.len();
    (0u32..1 << n)
        .filter(|&m| {
            (0..n).all(|x| m >> x & 1 == 0 || (0..n).all(|y| !p.leq(x, y) || m >> y & 1 == 1))
        })
        .collect()
}

pub fn mass_of_mask(m: &RationalMeasure, mask: u32) -> Rational {
    (0..m.len())
        .filter(|&x| mask >> x & 1 == 1)
        .fold(Rational::zero(), |acc, x| acc + m.mass(x))
}

/// `P ⪯ Q` by checking every up-set.
pub fn dominated_brute(p: &RationalMeasure, q: &RationalMeasure, s: &Poset) -> bool {
    up_sets_brute(s).into_iter().all(|u| mass_of_mask(p, u) <= mass_of_mask(q, u))
}

/// `P^{-1}(t)`: the ψ-least `x` with `t < F⟨x⟩`.
pub fn inverse_by_definition(m: &RationalMeasure, ext: &LinearExtension, t: &Rational) -> usize {
    let mut acc = Rational::zero();
    for &x in ext.order() {
        acc += m.mass(x);
        if *t < acc {
            return x;
        }
    }
    panic!("t outside [0,1)");
}

/// State of `P^{-1}∘φ` on every cell, evaluated at left endpoints.
pub fn composed_cells(perm: &CellPermutation, m: &RationalMeasure, ext: &LinearExtension) -> Vec<usize> {
    let l = perm.cells() as i64;
    (0..perm.cells())
        .map(|i| inverse_by_definition(m, ext, &ratio(perm.map_cell(i) as i64, l)))
        .collect()
}

/// Cell counts of a composed map reproduce the measure exactly.
pub fn composed_marginal_exact(perm: &CellPermutation, m: &RationalMeasure, ext: &LinearExtension) -> bool {
    let cells = composed_cells(perm, m, ext);
    let l = perm.cells() as i64;
    (0..m.len()).all(|x| ratio(cells.iter().filter(|&&c| c == x).count() as i64, l) == *m.mass(x))
}

/// Every composed map has exact marginals and the family is pointwise
/// ordered on every cell.
pub fn synchronized_brute(perms: &[CellPermutation], sys: &MeasureSystem, ext: &LinearExtension) -> bool {
    let (a, s) = (sys.index_poset(), sys.state_poset());
    if perms.iter().any(|p| p.cells() != perms[0].cells()) {
        return false;
    }
    let cells: Vec<Vec<usize>> = (0..a.len())
        .map(|al| composed_cells(&perms[al], sys.measure(al), ext))
        .collect();
    (0..a.len()).all(|al| composed_marginal_exact(&perms[al], sys.measure(al), ext))
        && (0..perms[0].cells()).all(|i| {
            (0..a.len()).all(|x| (0..a.len()).all(|y| !a.leq(x, y) || s.leq(cells[x][i], cells[y][i])))
        })
}

/// Atoms are monotone tuples and the marginals match exactly.
pub fn coupling_exact(c: &Coupling, sys: &MeasureSystem) -> bool {
    let (a, s) = (sys.index_poset(), sys.state_poset());
    let mut total = Rational::zero();
    let mut marg = vec![vec![Rational::zero(); s.len()]; a.len()];
    for (t, w) in c.atoms() {
        if *w < Rational::zero() || t.0.len() != a.len() {
            return false;
        }
        for x in 0..a.len() {
            for y in 0..a.len() {
                if a.leq(x, y) && !s.leq(t.0[x], t.0[y]) {
                    return false;
                }
            }
            marg[x][t.0[x]] += w;
        }
        total += w;
    }
    total == Rational::one() && (0..a.len()).all(|al| marg[al].as_slice() == sys.measure(al).masses())
}

/// Every order-preserving map `A → S`, by filtering all `|S|^|A|` maps.
pub fn monotone_tuples_brute(a: &Poset, s: &Poset) -> Vec<Vec<usize>> {
    let (na, ns) = (a.len(), s.len());
    let total = ns.pow(na as u32);
    (0..total)
        .map(|mut k| {
            (0..na)
                .map(|_| {
                    let d = k % ns;
                    k /= ns;
                    d
                })
                .collect::<Vec<usize>>()
        })
        .filter(|t| (0..na).all(|x| (0..na).all(|y| !a.leq(x, y) || s.leq(t[x], t[y]))))
        .collect()
}

/// `y·A_j <= 0` on every monotone tuple and `y·b > 0`.
pub fn certificate_exact(cert: &FarkasCertificate, sys: &MeasureSystem) -> bool {
    let (a, s) = (sys.index_poset(), sys.state_poset());
    let on_tuples = monotone_tuples_brute(a, s).iter().all(|t| {
        let v = (0..a.len()).fold(Rational::zero(), |acc, al| acc + &cert.weights[al][t[al]]);
        v <= Rational::zero()
    });
    let mut value = Rational::zero();
    for al in 0..a.len() {
        for x in 0..s.len() {
            value += &cert.weights[al][x] * sys.measure(al).mass(x);
        }
    }
    on_tuples && value > Rational::zero()
}

/// A witness is a spanning tree of the interlacing graph on the extremal
/// elements of its side, and its restriction to every `D_A(α)` is
/// connected.
pub fn witness_tree_valid(w: &SpanningTreeWitness, a: &Poset) -> bool {
    let (ext, below): (Vec<usize>, Box<dyn Fn(usize, usize) -> bool>) = match w.side {
        Side::Minimal => (
            (0..a.len()).filter(|&x| (0..a.len()).all(|y| !a.lt(y, x))).collect(),
            Box::new(|d, al| a.leq(d, al)),
        ),
        Side::Maximal => (
            (0..a.len()).filter(|&x| (0..a.len()).all(|y| !a.lt(x, y))).collect(),
            Box::new(|d, al| a.leq(al, d)),
        ),
    };
    let interlaced = |p: usize, q: usize| {
        p != q
            && (0..a.len()).any(|b| match w.side {
                Side::Minimal => a.lt(p, b) && a.lt(q, b),
                Side::Maximal => a.lt(b, p) && a.lt(b, q),
            })
    };
    if w.edges.len() + 1 != ext.len() {
        return false;
    }
    if !w
        .edges
        .iter()
        .all(|&(p, q)| ext.contains(&p) && ext.contains(&q) && interlaced(p, q))
    {
        return false;
    }
    let connected = |verts: &[usize]| -> bool {
        if verts.is_empty() {
            return true;
        }
        let mut seen = vec![verts[0]];
        let mut grew = true;
        while grew {
            grew = false;
            for &(p, q) in &w.edges {
                if verts.contains(&p) && verts.contains(&q) && (seen.contains(&p) != seen.contains(&q)) {
                    seen.push(if seen.contains(&p) { q } else { p });
                    grew = true;
                }
            }
        }
        seen.len() == verts.len()
    };
    connected(&ext)
        && (0..a.len()).all(|al| {
            let local: Vec<usize> = ext.iter().copied().filter(|&d| below(d, al)).collect();
            connected(&local)
        })
}
