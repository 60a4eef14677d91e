//! Backtracking searches for isomorphisms and divisions.
//!
//! Both searches assign images to source elements in ascending id order and
//! try candidate images in ascending order. Every assignment is closed under
//! products of already-assigned elements (a forced image for `ab` whenever
//! `a` and `b` are mapped), so the first complete map found is the
//! lexicographically least one.

use std::collections::HashSet;

use super::{FiniteSemigroup, Homomorphism, Result, SemigroupError};

/// Default order cap for [`find_isomorphism`].
pub const DEFAULT_ISO_CAP: usize = 16;

const UNSET: usize = usize::MAX;

struct MapSearch<'a> {
    src: &'a FiniteSemigroup,
    dst: &'a FiniteSemigroup,
    allowed: Vec<Vec<bool>>,
    injective: bool,
    surjective: bool,
}

#[derive(Clone)]
struct State {
    image: Vec<usize>,
    assigned: Vec<usize>,
    hits: Vec<usize>,
    uncovered: usize,
}

impl<'a> MapSearch<'a> {
    fn run(&self) -> Option<Vec<usize>> {
        let state = State {
            image: vec![UNSET; self.src.order()],
            assigned: Vec::new(),
            hits: vec![0; self.dst.order()],
            uncovered: self.dst.order(),
        };
        self.descend(state)
    }

    fn descend(&self, state: State) -> Option<Vec<usize>> {
        let Some(next) = state.image.iter().position(|&v| v == UNSET) else {
            return (!self.surjective || state.uncovered == 0).then_some(state.image);
        };
        for candidate in self.dst.elements() {
            if !self.allowed[next][candidate] {
                continue;
            }
            let mut branch = state.clone();
            if self.assign(&mut branch, next, candidate) {
                if let Some(found) = self.descend(branch) {
                    return Some(found);
                }
            }
        }
        None
    }

    fn set(&self, state: &mut State, a: usize, b: usize) -> bool {
        if !self.allowed[a][b] || (self.injective && state.hits[b] > 0) {
            return false;
        }
        state.image[a] = b;
        state.assigned.push(a);
        if state.hits[b] == 0 {
            state.uncovered -= 1;
        }
        state.hits[b] += 1;
        true
    }

    fn assign(&self, state: &mut State, a: usize, b: usize) -> bool {
        if !self.set(state, a, b) {
            return false;
        }
        let mut frontier = vec![a];
        while let Some(v) = frontier.pop() {
            let fv = state.image[v];
            let count = state.assigned.len();
            for k in 0..count {
                let u = state.assigned[k];
                let fu = state.image[u];
                for (p, q) in [
                    (self.src.mul(u, v), self.dst.mul(fu, fv)),
                    (self.src.mul(v, u), self.dst.mul(fv, fu)),
                ] {
                    match state.image[p] {
                        UNSET => {
                            if !self.set(state, p, q) {
                                return false;
                            }
                            frontier.push(p);
                        }
                        fp if fp != q => return false,
                        _ => {}
                    }
                }
            }
            if self.surjective {
                let free = state.image.iter().filter(|&&x| x == UNSET).count();
                if free < state.uncovered {
                    return false;
                }
            }
        }
        true
    }
}

/// Isomorphism-invariant data of a single element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Profile {
    idempotent: bool,
    index_period: (usize, usize),
    left_fixed: usize,
    right_fixed: usize,
    commuting: usize,
    row_image: usize,
    column_image: usize,
}

fn profiles(s: &FiniteSemigroup) -> Vec<Profile> {
    s.elements()
        .map(|a| {
            let mut row = HashSet::new();
            let mut col = HashSet::new();
            let (mut left_fixed, mut right_fixed, mut commuting) = (0, 0, 0);
            for x in s.elements() {
                row.insert(s.mul(a, x));
                col.insert(s.mul(x, a));
                left_fixed += usize::from(s.mul(a, x) == x);
                right_fixed += usize::from(s.mul(x, a) == x);
                commuting += usize::from(s.mul(a, x) == s.mul(x, a));
            }
            Profile {
                idempotent: s.is_idempotent(a),
                index_period: s.index_period(a),
                left_fixed,
                right_fixed,
                commuting,
                row_image: row.len(),
                column_image: col.len(),
            }
        })
        .collect()
}

/// Finds the lexicographically least isomorphism `s -> t`, capped at
/// [`DEFAULT_ISO_CAP`] elements.
pub fn find_isomorphism(s: &FiniteSemigroup, t: &FiniteSemigroup) -> Result<Option<Vec<usize>>> {
    find_isomorphism_with_cap(s, t, DEFAULT_ISO_CAP)
}

pub fn find_isomorphism_with_cap(s: &FiniteSemigroup, t: &FiniteSemigroup, cap: usize) -> Result<Option<Vec<usize>>> {
    let order = s.order().max(t.order());
    if order > cap {
        return Err(SemigroupError::CapExceeded { order, cap });
    }
    if s.order() != t.order()
        || s.identity_of().is_some() != t.identity_of().is_some()
        || s.idempotents().len() != t.idempotents().len()
    {
        return Ok(None);
    }
    let ps = profiles(s);
    let pt = profiles(t);
    let mut sorted_s = ps.clone();
    let mut sorted_t = pt.clone();
    sorted_s.sort();
    sorted_t.sort();
    if sorted_s != sorted_t {
        return Ok(None);
    }
    let allowed = ps.iter().map(|p| pt.iter().map(|q| p == q).collect()).collect();
    let search = MapSearch {
        src: s,
        dst: t,
        allowed,
        injective: true,
        surjective: true,
    };
    let found = search.run();
    if let Some(map) = &found {
        Homomorphism::new(s.clone(), t.clone(), map.clone())?;
    }
    Ok(found)
}

/// Limits for [`divides`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DivisionCaps {
    /// Largest order of the candidate divisor's host `S`.
    pub max_source: usize,
    /// Largest order of the divisor `T`.
    pub max_target: usize,
    /// Largest number of subsemigroups enumerated.
    pub max_subsemigroups: usize,
}

impl Default for DivisionCaps {
    fn default() -> Self {
        Self {
            max_source: 64,
            max_target: 8,
            max_subsemigroups: 1 << 20,
        }
    }
}

/// A subsemigroup `U` of the host together with a surjection `U -> T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionWitness {
    /// Ids of `U` in the host, ascending.
    pub subset: Vec<usize>,
    /// The surjective homomorphism from `U` (re-indexed by `subset`) onto `T`.
    pub hom: Homomorphism,
}

impl DivisionWitness {
    /// Re-checks the witness from scratch against the host and divisor.
    pub fn verify(&self, t: &FiniteSemigroup, s: &FiniteSemigroup) -> Result<()> {
        let (sub, _) = s.subsemigroup(&self.subset)?;
        let hom = Homomorphism::new(sub, t.clone(), self.hom.map().to_vec())?;
        if !hom.is_surjective() {
            return Err(SemigroupError::NotSurjective);
        }
        Ok(())
    }
}

fn closure_bits(s: &FiniteSemigroup, bits: u64) -> u64 {
    let mut current = bits;
    loop {
        let mut next = current;
        let members: Vec<usize> = (0..s.order()).filter(|&i| current >> i & 1 == 1).collect();
        for &a in &members {
            for &b in &members {
                next |= 1 << s.mul(a, b);
            }
        }
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Whether `t` divides `s`: returns the first witness in the order
/// (|U| ascending, U's sorted ids lexicographically, map lexicographically).
pub fn divides(t: &FiniteSemigroup, s: &FiniteSemigroup, caps: DivisionCaps) -> Result<Option<DivisionWitness>> {
    let source_cap = caps.max_source.min(64);
    if s.order() > source_cap {
        return Err(SemigroupError::CapExceeded {
            order: s.order(),
            cap: source_cap,
        });
    }
    if t.order() > caps.max_target {
        return Err(SemigroupError::CapExceeded {
            order: t.order(),
            cap: caps.max_target,
        });
    }
    let mut seen: HashSet<u64> = HashSet::new();
    let mut stack = Vec::new();
    for a in s.elements() {
        let c = closure_bits(s, 1 << a);
        if seen.insert(c) {
            stack.push(c);
        }
    }
    while let Some(u) = stack.pop() {
        for a in s.elements() {
            if u >> a & 1 == 0 {
                let c = closure_bits(s, u | 1 << a);
                if seen.insert(c) {
                    if seen.len() > caps.max_subsemigroups {
                        return Err(SemigroupError::CapExceeded {
                            order: seen.len(),
                            cap: caps.max_subsemigroups,
                        });
                    }
                    stack.push(c);
                }
            }
        }
    }
    let mut subs: Vec<Vec<usize>> = seen
        .into_iter()
        .filter(|bits| bits.count_ones() as usize >= t.order())
        .map(|bits| (0..s.order()).filter(|&i| bits >> i & 1 == 1).collect())
        .collect();
    subs.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));

    let t_idem: Vec<bool> = t.elements().map(|b| t.is_idempotent(b)).collect();
    for subset in subs {
        let (sub, _) = s.subsemigroup(&subset)?;
        let allowed = sub
            .elements()
            .map(|a| {
                let idem = sub.is_idempotent(a);
                t.elements().map(|b| !idem || t_idem[b]).collect()
            })
            .collect();
        let search = MapSearch {
            src: &sub,
            dst: t,
            allowed,
            injective: false,
            surjective: true,
        };
        if let Some(map) = search.run() {
            let hom = Homomorphism::new(sub, t.clone(), map)?;
            return Ok(Some(DivisionWitness { subset, hom }));
        }
    }
    Ok(None)
}
