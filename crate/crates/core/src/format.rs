//! Line-oriented text formats for posets, measures, systems, kernels,
//! couplings, certificates and cell permutations.
//!
//! Every format ignores blank lines and `#` comments. Rationals are written
//! `p/q`.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_traits::Zero;

use crate::cftp::Kernel;
use crate::coupling::{Coupling, FarkasCertificate, MeasureSystem, MonotoneTuple};
use crate::error::{Error, Result};
use crate::measure::RationalMeasure;
use crate::poset::{LinearExtension, Poset};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::synchronize::CellPermutation;

/// Non-empty lines as `(1-based line number, tokens)`.
fn tokenize(text: &str) -> Vec<(usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let line = line.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = line.split_whitespace().collect();
            (!tokens.is_empty()).then_some((i + 1, tokens))
        })
        .collect()
}

fn expect_args(line: usize, tokens: &[&str], n: usize) -> Result<()> {
    if tokens.len() != n + 1 {
        return Err(Error::parse(
            line,
            format!("`{}` takes {} argument(s), got {}", tokens[0], n, tokens.len() - 1),
        ));
    }
    Ok(())
}

fn rational_arg(line: usize, s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::parse(line, format!("invalid rational `{s}`")))
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    })
}

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn in_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { line, msg } => Error::Io {
            path: path.display().to_string(),
            msg: format!("line {line}: {msg}"),
        },
        other => other,
    })
}

/// Parses `element <name>` lines followed by `cover <lower> <upper>` or
/// `leq <lower> <upper>` lines.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut elements: Vec<String> = Vec::new();
    let mut seen = HashMap::new();
    let mut pairs = Vec::new();
    for (line, t) in tokenize(text) {
        match t[0] {
            "element" => {
                expect_args(line, &t, 1)?;
                if seen.insert(t[1].to_string(), elements.len()).is_some() {
                    return Err(Error::parse(line, format!("duplicate element `{}`", t[1])));
                }
                elements.push(t[1].to_string());
            }
            "cover" | "leq" => {
                expect_args(line, &t, 2)?;
                let lookup = |name: &str| {
                    seen.get(name)
                        .copied()
                        .ok_or_else(|| Error::parse(line, format!("unknown element `{name}`")))
                };
                pairs.push((line, lookup(t[1])?, lookup(t[2])?));
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    let idx: Vec<(usize, usize)> = pairs.iter().map(|&(_, a, b)| (a, b)).collect();
    let last_line = pairs.last().map_or(1, |p| p.0);
    at_line(last_line, Poset::from_indices(elements, &idx))
}

/// Canonical form: elements in input order, then covers sorted by
/// `(lower name, upper name)`.
pub fn write_poset(poset: &Poset) -> String {
    let mut out = String::new();
    for name in poset.names() {
        out.push_str(&format!("element {name}\n"));
    }
    let mut covers: Vec<(&str, &str)> = poset
        .cover_pairs()
        .into_iter()
        .map(|(a, b)| (poset.name(a), poset.name(b)))
        .collect();
    covers.sort();
    for (a, b) in covers {
        out.push_str(&format!("cover {a} {b}\n"));
    }
    out
}

pub fn load_poset(path: &Path) -> Result<Poset> {
    in_file(path, parse_poset(&read_file(path)?))
}

/// Parses `measure <label>` / `mass <element> <p>/<q>` blocks over tokenized
/// lines. Elements without a `mass` line get mass zero.
fn parse_measure_lines(lines: &[(usize, Vec<&str>)], poset: &Poset) -> Result<Vec<(String, RationalMeasure)>> {
    let mut out: Vec<(String, RationalMeasure)> = Vec::new();
    let mut current: Option<(usize, String, Vec<Option<Rational>>)> = None;
    let finish = |cur: (usize, String, Vec<Option<Rational>>), out: &mut Vec<(String, RationalMeasure)>| -> Result<()> {
        let (line, label, masses) = cur;
        if out.iter().any(|(l, _)| *l == label) {
            return Err(Error::parse(line, format!("duplicate measure `{label}`")));
        }
        let m = at_line(
            line,
            RationalMeasure::new(masses.into_iter().map(|m| m.unwrap_or_else(Rational::zero)).collect()),
        )?;
        out.push((label, m));
        Ok(())
    };
    for (line, t) in lines {
        let line = *line;
        match t[0] {
            "measure" => {
                expect_args(line, t, 1)?;
                if let Some(cur) = current.take() {
                    finish(cur, &mut out)?;
                }
                current = Some((line, t[1].to_string(), vec![None; poset.len()]));
            }
            "mass" => {
                expect_args(line, t, 2)?;
                let Some((_, _, masses)) = current.as_mut() else {
                    return Err(Error::parse(line, "`mass` before any `measure` header"));
                };
                let x = at_line(line, poset.index_of(t[1]))?;
                if masses[x].is_some() {
                    return Err(Error::parse(line, format!("duplicate mass for `{}`", t[1])));
                }
                masses[x] = Some(rational_arg(line, t[2])?);
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    if let Some(cur) = current.take() {
        finish(cur, &mut out)?;
    }
    Ok(out)
}

pub fn parse_measures(text: &str, poset: &Poset) -> Result<Vec<(String, RationalMeasure)>> {
    parse_measure_lines(&tokenize(text), poset)
}

/// Writes one measure block, elements in ψ-order when `ext` is given.
pub fn write_measure(label: &str, measure: &RationalMeasure, poset: &Poset, ext: Option<&LinearExtension>) -> String {
    let order: Vec<usize> = match ext {
        Some(e) => e.order().to_vec(),
        None => (0..poset.len()).collect(),
    };
    let mut out = format!("measure {label}\n");
    for x in order {
        out.push_str(&format!("mass {} {}\n", poset.name(x), format_rational(measure.mass(x))));
    }
    out
}

struct Bundle {
    index: Option<Poset>,
    state: Option<Poset>,
    measures: Vec<(String, RationalMeasure)>,
    bindings: Vec<(usize, String, String, String)>,
}

/// Shared reader for system and kernel files: poset references, measure
/// files, inline measure blocks and `<binding> <name> <label>` lines.
fn parse_bundle(text: &str, base: &Path, binding: &str) -> Result<Bundle> {
    let lines = tokenize(text);
    let mut bundle = Bundle {
        index: None,
        state: None,
        measures: Vec::new(),
        bindings: Vec::new(),
    };
    let mut measure_files: Vec<(usize, PathBuf)> = Vec::new();
    let mut inline = Vec::new();
    for (line, t) in &lines {
        let line = *line;
        match t[0] {
            "index" | "state" => {
                expect_args(line, t, 1)?;
                let p = load_poset(&base.join(t[1]))?;
                let slot = if t[0] == "index" { &mut bundle.index } else { &mut bundle.state };
                if slot.replace(p).is_some() {
                    return Err(Error::parse(line, format!("`{}` given twice", t[0])));
                }
            }
            "measures" => {
                expect_args(line, t, 1)?;
                measure_files.push((line, base.join(t[1])));
            }
            "measure" | "mass" => inline.push((line, t.clone())),
            b if b == binding => {
                expect_args(line, t, 2)?;
                bundle
                    .bindings
                    .push((line, t[0].to_string(), t[1].to_string(), t[2].to_string()));
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    let state = bundle
        .state
        .as_ref()
        .ok_or_else(|| Error::parse(1, "missing `state` poset"))?;
    for (_, path) in &measure_files {
        let text = read_file(path)?;
        bundle.measures.extend(in_file(path, parse_measures(&text, state))?);
    }
    bundle.measures.extend(parse_measure_lines(&inline, state)?);
    Ok(bundle)
}

fn bind(bundle: &Bundle, targets: &Poset) -> Result<Vec<RationalMeasure>> {
    let by_label: HashMap<&str, &RationalMeasure> =
        bundle.measures.iter().map(|(l, m)| (l.as_str(), m)).collect();
    let mut slots: Vec<Option<RationalMeasure>> = vec![None; targets.len()];
    for (line, kw, name, label) in &bundle.bindings {
        let i = at_line(*line, targets.index_of(name))?;
        let m = by_label
            .get(label.as_str())
            .ok_or_else(|| Error::parse(*line, format!("unknown measure `{label}`")))?;
        if slots[i].replace((*m).clone()).is_some() {
            return Err(Error::parse(*line, format!("`{name}` bound twice by `{kw}`")));
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::parse(1, format!("no measure bound to `{}`", targets.name(i)))))
        .collect()
}

/// System file: `index <poset file>`, `state <poset file>`, any number of
/// `measures <file>` lines or inline measure blocks, and
/// `assign <alpha> <label>` for every index element.
pub fn parse_system(text: &str, base: &Path) -> Result<MeasureSystem> {
    let bundle = parse_bundle(text, base, "assign")?;
    let index = bundle
        .index
        .clone()
        .ok_or_else(|| Error::parse(1, "missing `index` poset"))?;
    let measures = bind(&bundle, &index)?;
    MeasureSystem::new(index, bundle.state.unwrap(), measures)
}

pub fn load_system(path: &Path) -> Result<MeasureSystem> {
    let base = path.parent().unwrap_or(Path::new("."));
    in_file(path, parse_system(&read_file(path)?, base))
}

/// Kernel file: `state <poset file>`, measures as in a system file, and
/// `row <state> <label>` for every state.
pub fn parse_kernel(text: &str, base: &Path) -> Result<Kernel> {
    let bundle = parse_bundle(text, base, "row")?;
    if bundle.index.is_some() {
        return Err(Error::parse(1, "kernel files take no `index` poset"));
    }
    let state = bundle.state.clone().unwrap();
    let rows = bind(&bundle, &state)?;
    Kernel::new(state, rows)
}

pub fn load_kernel(path: &Path) -> Result<Kernel> {
    let base = path.parent().unwrap_or(Path::new("."));
    in_file(path, parse_kernel(&read_file(path)?, base))
}

/// `atom <s1,s2,...> <p>/<q>` per atom, in the coupling's order.
pub fn write_coupling(coupling: &Coupling, system: &MeasureSystem) -> String {
    let s = system.state_poset();
    coupling
        .atoms()
        .iter()
        .map(|(t, w)| {
            let states: Vec<&str> = t.0.iter().map(|&x| s.name(x)).collect();
            format!("atom {} {}\n", states.join(","), format_rational(w))
        })
        .collect()
}

pub fn parse_coupling(text: &str, system: &MeasureSystem) -> Result<Coupling> {
    let s = system.state_poset();
    let mut atoms = Vec::new();
    for (line, t) in tokenize(text) {
        if t[0] != "atom" {
            return Err(Error::parse(line, format!("unknown directive `{}`", t[0])));
        }
        expect_args(line, &t, 2)?;
        let tuple = t[1]
            .split(',')
            .map(|n| at_line(line, s.index_of(n)))
            .collect::<Result<Vec<usize>>>()?;
        atoms.push((MonotoneTuple(tuple), rational_arg(line, t[2])?));
    }
    Coupling::new(atoms)
}

/// `certificate <alpha> <state> <p>/<q>` for every nonzero dual weight.
pub fn write_certificate(cert: &FarkasCertificate, system: &MeasureSystem) -> String {
    let (a, s) = (system.index_poset(), system.state_poset());
    let mut out = String::new();
    for (alpha, row) in cert.weights.iter().enumerate() {
        for (x, y) in row.iter().enumerate() {
            if !y.is_zero() {
                out.push_str(&format!("certificate {} {} {}\n", a.name(alpha), s.name(x), format_rational(y)));
            }
        }
    }
    out
}

pub fn parse_certificate(text: &str, system: &MeasureSystem) -> Result<FarkasCertificate> {
    let (a, s) = (system.index_poset(), system.state_poset());
    let mut weights = vec![vec![Rational::zero(); s.len()]; a.len()];
    for (line, t) in tokenize(text) {
        if t[0] != "certificate" {
            return Err(Error::parse(line, format!("unknown directive `{}`", t[0])));
        }
        expect_args(line, &t, 3)?;
        let alpha = at_line(line, a.index_of(t[1]))?;
        let x = at_line(line, s.index_of(t[2]))?;
        weights[alpha][x] = rational_arg(line, t[3])?;
    }
    Ok(FarkasCertificate { weights })
}

/// `cells <L>` then `map <i> <perm(i)>` for every cell.
pub fn write_phi(perm: &CellPermutation) -> String {
    let mut out = format!("cells {}\n", perm.cells());
    for (i, p) in perm.as_slice().iter().enumerate() {
        out.push_str(&format!("map {i} {p}\n"));
    }
    out
}

pub fn parse_phi(text: &str) -> Result<CellPermutation> {
    let mut cells: Option<usize> = None;
    let mut perm: Vec<Option<usize>> = Vec::new();
    let num = |line: usize, s: &str| {
        s.parse::<usize>()
            .map_err(|_| Error::parse(line, format!("invalid cell index `{s}`")))
    };
    for (line, t) in tokenize(text) {
        match t[0] {
            "cells" => {
                expect_args(line, &t, 1)?;
                let l = num(line, t[1])?;
                cells = Some(l);
                perm = vec![None; l];
            }
            "map" => {
                expect_args(line, &t, 2)?;
                if cells.is_none() {
                    return Err(Error::parse(line, "`map` before `cells`"));
                }
                let (i, p) = (num(line, t[1])?, num(line, t[2])?);
                if i >= perm.len() || perm[i].replace(p).is_some() {
                    return Err(Error::parse(line, format!("bad or repeated cell {i}")));
                }
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }
    let perm = perm
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::parse(1, format!("cell {i} unmapped"))))
        .collect::<Result<Vec<usize>>>()?;
    CellPermutation::new(perm)
}
