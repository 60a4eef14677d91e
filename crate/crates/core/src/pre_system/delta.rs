//! The cancellation conditions δ1–δ4 on solution maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{PreError, PreLrSystem, Result, Solutions};

/// A `(λ, ρ)` pair of index maps, possibly with one side left empty.
type MapPair = (Vec<usize>, Vec<usize>);
type SolutionCache = BTreeMap<(usize, usize), Vec<MapPair>>;
type IndexFn<'a> = Box<dyn Fn(usize) -> usize + 'a>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Delta {
    D1,
    D2,
    D3,
    D4,
}

impl fmt::Display for Delta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Delta::D1 => "δ1",
            Delta::D2 => "δ2",
            Delta::D3 => "δ3",
            Delta::D4 => "δ4",
        })
    }
}

/// The prefix maps into `I`.
#[derive(Debug, Clone, Copy)]
pub struct DeltaPrefixes<'a> {
    pub lam_a: &'a [usize],
    pub lam_b: &'a [usize],
    pub rho_b: &'a [usize],
    pub rho_c: &'a [usize],
}

/// Solution maps for the pairs `(a,b)`, `(b,c)`, `(ab,c)` and `(a,bc)`.
/// Slots a condition does not read may be empty.
#[derive(Debug, Clone, Copy, Default)]
pub struct DeltaSlots<'a> {
    pub lam_ab: &'a [usize],
    pub rho_ab: &'a [usize],
    pub lam_bc: &'a [usize],
    pub rho_bc: &'a [usize],
    pub lam_ab_c: &'a [usize],
    pub rho_ab_c: &'a [usize],
    pub lam_a_bc: &'a [usize],
    pub rho_a_bc: &'a [usize],
}

/// Checks one δ-condition as an implication between map equalities on
/// `I[abc]` of size `k`. Returns the first index where the consequent fails
/// while the antecedent holds.
pub fn delta_failure(cond: Delta, k: usize, p: &DeltaPrefixes<'_>, s: &DeltaSlots<'_>) -> Option<usize> {
    let (lhs, rhs): (IndexFn<'_>, IndexFn<'_>) = match cond {
        Delta::D1 => (Box::new(|i| s.lam_ab[s.lam_ab_c[i]]), Box::new(|i| s.lam_a_bc[i])),
        Delta::D2 => (Box::new(|i| s.rho_bc[s.rho_a_bc[i]]), Box::new(|i| s.rho_ab_c[i])),
        Delta::D3 | Delta::D4 => (
            Box::new(|i| s.rho_ab[s.lam_ab_c[i]]),
            Box::new(|i| s.lam_bc[s.rho_a_bc[i]]),
        ),
    };
    let prefix = match cond {
        Delta::D1 => p.lam_a,
        Delta::D2 => p.rho_c,
        Delta::D3 => p.rho_b,
        Delta::D4 => p.lam_b,
    };
    let antecedent = (0..k).all(|i| prefix[lhs(i)] == prefix[rhs(i)]);
    if !antecedent {
        return None;
    }
    (0..k).find(|&i| lhs(i) != rhs(i))
}

/// Which solutions the check ranges over.
#[derive(Debug, Clone, Copy)]
pub enum DeltaMode<'a> {
    /// Every solution of every pair; a pair occurring in several slots of one
    /// condition takes the same solution in each. `cap` bounds both the
    /// per-pair solution count and the assignments per condition instance.
    AllSolutions { cap: usize },
    /// Only the supplied solutions.
    Given(&'a Solutions),
}

/// One failing instance, with the maps that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaFailure {
    pub condition: Delta,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub index: usize,
    pub maps: Vec<(String, Vec<usize>)>,
}

impl fmt::Display for DeltaFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} fails at a={}, b={}, c={}, i={}",
            self.condition, self.a, self.b, self.c, self.index
        )?;
        for (name, map) in &self.maps {
            write!(f, "; {name}={map:?}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaReport {
    pub triples: usize,
    pub instances: u64,
    /// At most one failure per condition and triple.
    pub failures: Vec<DeltaFailure>,
}

impl DeltaReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    Ab,
    Bc,
    AbC,
    ABc,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Part {
    Lam,
    Rho,
}

fn slots_of(cond: Delta) -> &'static [(Slot, Part)] {
    match cond {
        Delta::D1 => &[(Slot::Ab, Part::Lam), (Slot::AbC, Part::Lam), (Slot::ABc, Part::Lam)],
        Delta::D2 => &[(Slot::Bc, Part::Rho), (Slot::ABc, Part::Rho), (Slot::AbC, Part::Rho)],
        Delta::D3 | Delta::D4 => &[
            (Slot::Ab, Part::Rho),
            (Slot::AbC, Part::Lam),
            (Slot::Bc, Part::Lam),
            (Slot::ABc, Part::Rho),
        ],
    }
}

struct Instance {
    a: usize,
    b: usize,
    c: usize,
    pairs: [(usize, usize); 4],
}

impl Instance {
    fn pair(&self, slot: Slot) -> (usize, usize) {
        self.pairs[slot as usize]
    }
}

fn slot_name(slot: Slot, part: Part, inst: &Instance) -> String {
    let (x, y) = inst.pair(slot);
    let sym = match part {
        Part::Lam => "λ",
        Part::Rho => "ρ",
    };
    format!("{sym}[{x},{y}]")
}

/// δ1–δ4 for every triple `(a,b,c)`.
pub fn check_natural_solutions(pre: &PreLrSystem, mode: DeltaMode<'_>) -> Result<DeltaReport> {
    let s = pre.skeleton();
    let mut report = DeltaReport::default();
    let mut cache = SolutionCache::new();
    for a in s.elements() {
        for b in s.elements() {
            for c in s.elements() {
                report.triples += 1;
                let (ab, bc) = (s.mul(a, b), s.mul(b, c));
                let inst = Instance {
                    a,
                    b,
                    c,
                    pairs: [(a, b), (b, c), (ab, c), (a, bc)],
                };
                let prefixes = DeltaPrefixes {
                    lam_a: pre.lambda1(a),
                    lam_b: pre.lambda1(b),
                    rho_b: pre.rho1(b),
                    rho_c: pre.rho1(c),
                };
                let k = pre.index_size(s.mul(ab, c));
                for group in [&[Delta::D1][..], &[Delta::D2], &[Delta::D3, Delta::D4]] {
                    check_group(pre, mode, &mut cache, &inst, &prefixes, k, group, &mut report)?;
                }
            }
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn check_group(
    pre: &PreLrSystem,
    mode: DeltaMode<'_>,
    cache: &mut SolutionCache,
    inst: &Instance,
    prefixes: &DeltaPrefixes<'_>,
    k: usize,
    conds: &[Delta],
    report: &mut DeltaReport,
) -> Result<()> {
    let used = slots_of(conds[0]);
    // distinct pairs and the parts of each that the conditions read
    let mut parts: BTreeMap<(usize, usize), BTreeSet<Part>> = BTreeMap::new();
    for &(slot, part) in used {
        parts.entry(inst.pair(slot)).or_default().insert(part);
    }
    let pairs: Vec<(usize, usize)> = parts.keys().copied().collect();
    let mut options: Vec<Vec<MapPair>> = Vec::with_capacity(pairs.len());
    for &(x, y) in &pairs {
        let want = &parts[&(x, y)];
        let project = |lam: &[usize], rho: &[usize]| {
            (
                if want.contains(&Part::Lam) {
                    lam.to_vec()
                } else {
                    Vec::new()
                },
                if want.contains(&Part::Rho) {
                    rho.to_vec()
                } else {
                    Vec::new()
                },
            )
        };
        let opts: Vec<MapPair> = match mode {
            DeltaMode::Given(sols) => {
                let sol = sols.get(x, y);
                vec![project(&sol.lam, &sol.rho)]
            }
            DeltaMode::AllSolutions { cap } => {
                if let std::collections::btree_map::Entry::Vacant(e) = cache.entry((x, y)) {
                    let all = pre
                        .solve_pairs(x, y, cap)?
                        .into_iter()
                        .map(|sol| (sol.lam, sol.rho))
                        .collect();
                    e.insert(all);
                }
                let set: BTreeSet<_> = cache[&(x, y)].iter().map(|(l, r)| project(l, r)).collect();
                set.into_iter().collect()
            }
        };
        options.push(opts);
    }
    if let DeltaMode::AllSolutions { cap } = mode {
        let total = options
            .iter()
            .try_fold(1usize, |acc, o| acc.checked_mul(o.len()))
            .filter(|&t| t <= cap);
        if total.is_none() {
            return Err(PreError::CapExceeded { cap });
        }
    }
    let mut choice = vec![0usize; pairs.len()];
    let mut failed: BTreeSet<Delta> = BTreeSet::new();
    loop {
        let pick = |slot: Slot, part: Part| -> &[usize] {
            let j = pairs.binary_search(&inst.pair(slot)).expect("pair recorded");
            let (lam, rho) = &options[j][choice[j]];
            match part {
                Part::Lam => lam,
                Part::Rho => rho,
            }
        };
        let mut slots = DeltaSlots::default();
        for &(slot, part) in used {
            let map = pick(slot, part);
            let target = match (slot, part) {
                (Slot::Ab, Part::Lam) => &mut slots.lam_ab,
                (Slot::Ab, Part::Rho) => &mut slots.rho_ab,
                (Slot::Bc, Part::Lam) => &mut slots.lam_bc,
                (Slot::Bc, Part::Rho) => &mut slots.rho_bc,
                (Slot::AbC, Part::Lam) => &mut slots.lam_ab_c,
                (Slot::AbC, Part::Rho) => &mut slots.rho_ab_c,
                (Slot::ABc, Part::Lam) => &mut slots.lam_a_bc,
                (Slot::ABc, Part::Rho) => &mut slots.rho_a_bc,
            };
            *target = map;
        }
        report.instances += 1;
        for &cond in conds {
            if failed.contains(&cond) {
                continue;
            }
            if let Some(index) = delta_failure(cond, k, prefixes, &slots) {
                failed.insert(cond);
                report.failures.push(DeltaFailure {
                    condition: cond,
                    a: inst.a,
                    b: inst.b,
                    c: inst.c,
                    index,
                    maps: used
                        .iter()
                        .map(|&(slot, part)| (slot_name(slot, part, inst), pick(slot, part).to_vec()))
                        .collect(),
                });
            }
        }
        if failed.len() == conds.len() {
            return Ok(());
        }
        // odometer over the distinct pairs
        let mut j = 0;
        loop {
            if j == choice.len() {
                return Ok(());
            }
            choice[j] += 1;
            if choice[j] < options[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}
