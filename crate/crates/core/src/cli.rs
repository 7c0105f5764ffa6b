//! Subcommand logic behind the `realmono` binary. Each command returns a
//! line-oriented report and an exit code, and writes artifacts to an
//! optional output directory.

use std::fs;
use std::path::{Path, PathBuf};

use crate::cftp::{build_grand_coupling, chi_square, stationary_exact, CftpSampler};
use crate::coupling::{monotonicity_witness, realize, MeasureSystem, Realization};
use crate::error::{Error, Result};
use crate::format::{load_kernel, load_poset, load_system, write_certificate, write_coupling, write_phi};
use crate::poset::{classify, cover_graph, default_extension, root_tree, up_sets, ChildOrders, LinearExtension, Poset, PosetClass};
use crate::rational::{format_rational, ratio};
use crate::svg::{permutations_svg, step_functions_svg};
use crate::synchronize::{
    composed_step_function, is_synchronizable, naive_violations, synchronize_from_coupling, verify_synchronized, CellPermutation,
    SyncVerdict,
};

pub const EXIT_OK: i32 = 0;
/// The question asked has a negative answer.
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// Enumeration and sampling limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub up_sets: u64,
    pub tuples: u64,
    pub trees: u64,
    pub epochs: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            up_sets: crate::poset::DEFAULT_UP_SET_CAP,
            tuples: crate::coupling::DEFAULT_TUPLE_CAP,
            trees: crate::synchronize::DEFAULT_TREE_CAP,
            epochs: crate::cftp::DEFAULT_EPOCH_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub code: i32,
}

impl Report {
    fn new() -> Self {
        Report {
            text: String::new(),
            code: EXIT_OK,
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::SizeLimit { .. } | Error::BudgetExceeded(_) => EXIT_CAP,
        Error::NotStochMonotone(_) | Error::Infeasible(_) => EXIT_NEGATIVE,
        _ => EXIT_INPUT,
    }
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let io = |e: std::io::Error| Error::Io {
        path: dir.join(name).display().to_string(),
        msg: e.to_string(),
    };
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join(name), contents).map_err(io)
}

fn names<'a>(p: &'a Poset, xs: &[usize]) -> String {
    let v: Vec<&'a str> = xs.iter().map(|&x| p.name(x)).collect();
    format!("{{{}}}", v.join(","))
}

/// Cover graph and class of a poset, and whether it admits synchronizing
/// functions as an index poset.
pub fn classify_cmd(poset_path: &Path, caps: Caps) -> Result<Report> {
    let p = load_poset(poset_path)?;
    let mut r = Report::new();
    r.line(format!("elements {}", p.len()));
    let mut covers: Vec<(&str, &str)> = cover_graph(&p)
        .edges
        .iter()
        .map(|&(a, b)| (p.name(a), p.name(b)))
        .collect();
    covers.sort();
    for (a, b) in covers {
        r.line(format!("cover {a} {b}"));
    }
    r.line(format!("class {}", classify(&p)));
    r.line(format!("synchronizable-index {}", is_synchronizable(&p, caps.trees)?));
    Ok(r)
}

/// Reports monotonicity, then realizability with a coupling or certificate.
pub fn check_cmd(system_path: &Path, out: Option<&Path>, caps: Caps) -> Result<Report> {
    let sys = load_system(system_path)?;
    let mut r = Report::new();
    check_system(&sys, out, caps, &mut r)?;
    Ok(r)
}

fn check_system(sys: &MeasureSystem, out: Option<&Path>, caps: Caps, r: &mut Report) -> Result<Option<crate::coupling::Coupling>> {
    let (a, s) = (sys.index_poset(), sys.state_poset());
    r.line(format!("up-sets {}", up_sets(s, caps.up_sets)?.len()));
    if let Some(w) = monotonicity_witness(sys) {
        r.line("stochastically-monotone false");
        r.line(format!(
            "witness {} {} up-set {} masses {} {}",
            a.name(w.lower),
            a.name(w.upper),
            names(s, &w.up_set),
            format_rational(&w.lower_mass),
            format_rational(&w.upper_mass)
        ));
        r.line("verdict not-stochastically-monotone");
        r.code = EXIT_NEGATIVE;
        return Ok(None);
    }
    r.line("stochastically-monotone true");
    match realize(sys, caps.tuples)? {
        Realization::Feasible(c) => {
            r.line("realizable true");
            let text = write_coupling(&c, sys);
            r.text.push_str(&text);
            if let Some(dir) = out {
                write_out(dir, "coupling.txt", &text)?;
            }
            r.line("verdict realizably-monotone");
            Ok(Some(c))
        }
        Realization::Infeasible(cert) => {
            r.line("realizable false");
            let text = write_certificate(&cert, sys);
            r.text.push_str(&text);
            r.line(format!("certificate-value {}", format_rational(&cert.value(sys))));
            if let Some(dir) = out {
                write_out(dir, "certificate.txt", &text)?;
            }
            r.line("verdict monotone-not-realizable");
            r.code = EXIT_NEGATIVE;
            Ok(None)
        }
    }
}

/// Options for the `synchronize` command.
#[derive(Debug, Clone, Default)]
pub struct SyncOptions {
    pub root: Option<String>,
    /// Entries of the form `parent:child1,child2,...`.
    pub child_orders: Vec<String>,
    pub out: Option<PathBuf>,
    pub caps: Caps,
}

/// Parses `--child-order` entries against `poset`.
pub fn parse_child_orders(poset: &Poset, entries: &[String]) -> Result<ChildOrders> {
    let mut orders = ChildOrders::new();
    for e in entries {
        let (parent, children) = e
            .split_once(':')
            .ok_or_else(|| Error::InvalidChildOrder(e.clone(), "expected `parent:child,...`".into()))?;
        let p = poset.index_of(parent)?;
        let cs = children
            .split(',')
            .filter(|c| !c.is_empty())
            .map(|c| poset.index_of(c))
            .collect::<Result<Vec<_>>>()?;
        if orders.insert(p, cs).is_some() {
            return Err(Error::InvalidChildOrder(parent.into(), "given twice".into()));
        }
    }
    Ok(orders)
}

/// The extension selected by `--root` and `--child-order`, or the default.
pub fn chosen_extension(state: &Poset, root: Option<&str>, child_orders: &[String]) -> Result<LinearExtension> {
    match root {
        Some(name) => {
            let orders = parse_child_orders(state, child_orders)?;
            Ok(root_tree(state, state.index_of(name)?, &orders)?.1)
        }
        None if child_orders.is_empty() => Ok(default_extension(state)),
        None => Err(Error::InvalidChildOrder("--child-order".into(), "requires --root".into())),
    }
}

/// Merges runs of consecutive violating cells with the same index pair and
/// the same pair of states into `(first, lower, upper, end)` intervals.
fn violation_intervals(v: &[(usize, usize, usize)], grids: &[Vec<usize>]) -> Vec<(usize, usize, usize, usize)> {
    let mut out: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut sorted = v.to_vec();
    sorted.sort_by_key(|&(c, lo, hi)| (lo, hi, c));
    for (c, lo, hi) in sorted {
        match out.last_mut() {
            Some(last)
                if (last.1, last.2, last.3) == (lo, hi, c)
                    && (grids[lo][last.0], grids[hi][last.0]) == (grids[lo][c], grids[hi][c]) =>
            {
                last.3 = c + 1
            }
            _ => out.push((c, lo, hi, c + 1)),
        }
    }
    out
}

/// Realizes the system, builds synchronizing functions on one linear
/// extension of `S`, verifies them, and renders both the naive and the
/// synchronized inverse transforms.
pub fn synchronize_cmd(system_path: &Path, opts: &SyncOptions) -> Result<Report> {
    let sys = load_system(system_path)?;
    let (a, s) = (sys.index_poset(), sys.state_poset());
    let ext = chosen_extension(s, opts.root.as_deref(), &opts.child_orders)?;
    let exts = vec![ext.clone(); a.len()];
    let mut r = Report::new();
    let order: Vec<&str> = ext.order().iter().map(|&x| s.name(x)).collect();
    r.line(format!("extension {}", order.join(" ")));

    let base_cells = crate::synchronize::common_grid(&sys)?;
    let naive = naive_violations(&sys, &exts)?;
    let naive_grids: Vec<Vec<usize>> = (0..a.len())
        .map(|al| crate::synchronize::inverse_on_grid(sys.measure(al), &ext, base_cells))
        .collect::<Result<_>>()?;
    let intervals = violation_intervals(&naive, &naive_grids);
    for &(c0, lo, hi, c1) in &intervals {
        r.line(format!(
            "naive-violation {} {} [{c0}/{base_cells},{c1}/{base_cells}) {} {}",
            a.name(lo),
            a.name(hi),
            s.name(naive_grids[lo][c0]),
            s.name(naive_grids[hi][c0])
        ));
    }
    if let Some(dir) = &opts.out {
        let bands = (0..a.len())
            .map(|al| {
                let id = CellPermutation::identity(base_cells);
                Ok((a.name(al).to_string(), composed_step_function(&id, sys.measure(al), &ext)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let marks: Vec<_> = intervals
            .iter()
            .map(|&(c0, _, _, c1)| (ratio(c0 as i64, base_cells as i64), ratio(c1 as i64, base_cells as i64)))
            .collect();
        write_out(dir, "naive.svg", &step_functions_svg(&bands, s, &marks))?;
    }

    let Some(coupling) = check_system(&sys, opts.out.as_deref(), opts.caps, &mut r)? else {
        return Ok(r);
    };
    // On Class Z the plain inverse transforms are already ordered.
    let identity = vec![CellPermutation::identity(base_cells); a.len()];
    let perms = if classify(s) == PosetClass::Z && verify_synchronized(&identity, &sys, &exts)?.is_synchronized() {
        identity
    } else {
        synchronize_from_coupling(&coupling, &exts, &sys)?
    };
    r.line(format!("cells {}", perms[0].cells()));
    for (al, p) in perms.iter().enumerate() {
        r.line(format!(
            "phi {} {}",
            a.name(al),
            if p.is_identity() { "identity" } else { "permuted" }
        ));
    }
    let verdict = verify_synchronized(&perms, &sys, &exts)?;
    if let Some(dir) = &opts.out {
        for (al, p) in perms.iter().enumerate() {
            write_out(dir, &format!("phi_{}.txt", a.name(al)), &write_phi(p))?;
        }
        let bands = (0..a.len())
            .map(|al| Ok((a.name(al).to_string(), composed_step_function(&perms[al], sys.measure(al), &ext)?)))
            .collect::<Result<Vec<_>>>()?;
        write_out(dir, "synchronized.svg", &step_functions_svg(&bands, s, &[]))?;
        let phi_bands: Vec<_> = perms.iter().enumerate().map(|(al, p)| (a.name(al).to_string(), p.clone())).collect();
        write_out(dir, "phi.svg", &permutations_svg(&phi_bands))?;
    }
    match verdict {
        SyncVerdict::Synchronized => r.line("synchronized true"),
        other => {
            r.line(format!("synchronized false {other:?}"));
            r.code = EXIT_NEGATIVE;
        }
    }
    Ok(r)
}

/// Options for the `cftp` command.
#[derive(Debug, Clone)]
pub struct CftpOptions {
    pub seed: u64,
    pub samples: u64,
    pub out: Option<PathBuf>,
    pub caps: Caps,
}

/// Draws perfect samples with consecutive seeds starting at `seed`, one
/// state per line, then a goodness-of-fit summary against the exact
/// stationary law.
pub fn cftp_cmd(kernel_path: &Path, opts: &CftpOptions) -> Result<Report> {
    let kernel = load_kernel(kernel_path)?;
    let gc = build_grand_coupling(&kernel, opts.caps.tuples)?;
    let sampler = CftpSampler::new(&gc, opts.caps.epochs)?;
    let s = kernel.state_poset();
    let mut counts = vec![0u64; s.len()];
    let mut samples = String::new();
    let mut longest = 0u64;
    for k in 0..opts.samples {
        let run = sampler.sample(opts.seed.wrapping_add(k))?;
        counts[run.state] += 1;
        longest = longest.max(run.epoch_length);
        samples.push_str(s.name(run.state));
        samples.push('\n');
    }
    let pi = stationary_exact(&kernel)?;
    let mut r = Report::new();
    r.text.push_str(&samples);
    r.line(format!("summary samples {} cells {} longest-epoch {}", opts.samples, gc.cells(), longest));
    for x in 0..s.len() {
        r.line(format!(
            "summary state {} stationary {} observed {}",
            s.name(x),
            format_rational(pi.mass(x)),
            counts[x]
        ));
    }
    if opts.samples > 0 {
        let chi = chi_square(&counts, &pi);
        r.line(format!(
            "summary chi-square {:.6} dof {} p-value {:.6}",
            chi.statistic, chi.dof, chi.p_value
        ));
    }
    if let Some(dir) = &opts.out {
        write_out(dir, "samples.txt", &samples)?;
    }
    Ok(r)
}
