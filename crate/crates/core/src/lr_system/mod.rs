//! λρ-systems over finite semigroups.
//!
//! A system over a skeleton `S` assigns to every `s` an index set
//! `I[s] = 0..k_s` and to every pair `(a, b)` two maps
//! `λ[a,b]: I[ab] -> I[a]` and `ρ[a,b]: I[ab] -> I[b]` satisfying
//!
//! * (α) `λ[a,b] ∘ λ[ab,c] = λ[a,bc]`
//! * (β) `ρ[b,c] ∘ ρ[a,bc] = ρ[ab,c]`
//! * (γ) `ρ[a,b] ∘ λ[ab,c] = λ[b,c] ∘ ρ[a,bc]`
//!
//! [`SystemData`] holds arity-checked maps that may violate these laws (the
//! raw candidates used by the non-associativity witness); [`LrSystem`] is the
//! validated form.

mod builders;
mod transform;

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::semigroup::{FiniteSemigroup, Homomorphism, SemigroupError};

pub use builders::CanonicalSystem;
pub use transform::{Side, SquareViolation, Transformation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("{map}[{a},{b}] sends {index} to {value}, outside 0..{bound}")]
    OutOfRange {
        map: &'static str,
        a: usize,
        b: usize,
        index: usize,
        value: usize,
        bound: usize,
    },
    #[error("{} axiom violation(s), first: {}", .0.len(), .0[0])]
    AxiomViolation(Vec<AxiomViolation>),
    #[error("invalid action: {0}")]
    InvalidAction(String),
    #[error("skeleton mismatch: {0}")]
    Mismatch(String),
    #[error("transformation square fails: {}", .0[0])]
    SquareViolation(Vec<SquareViolation>),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

pub type Result<T, E = SystemError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Alpha,
    Beta,
    Gamma,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Alpha => "α",
            Axiom::Beta => "β",
            Axiom::Gamma => "γ",
        })
    }
}

/// One failing instance of an axiom: both sides evaluated at `index ∈ I[abc]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub index: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}) at a={}, b={}, c={}, i={}: {} != {}",
            self.axiom, self.a, self.b, self.c, self.index, self.lhs, self.rhs
        )
    }
}

/// Arity- and range-checked system data; the axioms may fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemData {
    skeleton: FiniteSemigroup,
    index_sizes: Vec<usize>,
    lambda: Vec<Vec<usize>>,
    rho: Vec<Vec<usize>>,
}

impl SystemData {
    /// `lambda` and `rho` are indexed by pair in row-major order, `a * n + b`.
    pub fn new(
        skeleton: FiniteSemigroup,
        index_sizes: Vec<usize>,
        lambda: Vec<Vec<usize>>,
        rho: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = skeleton.order();
        if index_sizes.len() != n {
            return Err(SystemError::ArityMismatch(format!(
                "{} index sizes for a skeleton of order {n}",
                index_sizes.len()
            )));
        }
        for (name, maps) in [("lambda", &lambda), ("rho", &rho)] {
            if maps.len() != n * n {
                return Err(SystemError::ArityMismatch(format!(
                    "{} {name} maps, expected {}",
                    maps.len(),
                    n * n
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = skeleton.mul(a, b);
                for (name, map, bound) in [
                    ("λ", &lambda[a * n + b], index_sizes[a]),
                    ("ρ", &rho[a * n + b], index_sizes[b]),
                ] {
                    if map.len() != index_sizes[ab] {
                        return Err(SystemError::ArityMismatch(format!(
                            "{name}[{a},{b}] has length {}, expected |I[{ab}]| = {}",
                            map.len(),
                            index_sizes[ab]
                        )));
                    }
                    if let Some((index, &value)) = map.iter().enumerate().find(|(_, &v)| v >= bound) {
                        return Err(SystemError::OutOfRange {
                            map: name,
                            a,
                            b,
                            index,
                            value,
                            bound,
                        });
                    }
                }
            }
        }
        Ok(Self {
            skeleton,
            index_sizes,
            lambda,
            rho,
        })
    }

    /// Builds the pair-indexed maps from a function `(a, b) -> (λ[a,b], ρ[a,b])`.
    pub fn from_fn<F>(skeleton: FiniteSemigroup, index_sizes: Vec<usize>, mut maps: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> (Vec<usize>, Vec<usize>),
    {
        let n = skeleton.order();
        let (mut lambda, mut rho) = (Vec::with_capacity(n * n), Vec::with_capacity(n * n));
        for a in 0..n {
            for b in 0..n {
                let (l, r) = maps(a, b);
                lambda.push(l);
                rho.push(r);
            }
        }
        Self::new(skeleton, index_sizes, lambda, rho)
    }

    pub fn skeleton(&self) -> &FiniteSemigroup {
        &self.skeleton
    }

    pub fn index_sizes(&self) -> &[usize] {
        &self.index_sizes
    }

    pub fn index_size(&self, a: usize) -> usize {
        self.index_sizes[a]
    }

    pub fn lambda(&self, a: usize, b: usize) -> &[usize] {
        &self.lambda[a * self.skeleton.order() + b]
    }

    pub fn rho(&self, a: usize, b: usize) -> &[usize] {
        &self.rho[a * self.skeleton.order() + b]
    }

    pub fn lambda_maps(&self) -> &[Vec<usize>] {
        &self.lambda
    }

    pub fn rho_maps(&self) -> &[Vec<usize>] {
        &self.rho
    }

    /// Every failing `(axiom, a, b, c, i)`, in scan order.
    pub fn axiom_violations(&self) -> Vec<AxiomViolation> {
        let mut out = Vec::new();
        self.scan_axioms(|v| {
            out.push(v);
            true
        });
        out
    }

    pub fn first_violation(&self) -> Option<AxiomViolation> {
        let mut first = None;
        self.scan_axioms(|v| {
            first = Some(v);
            false
        });
        first
    }

    pub fn satisfies_axioms(&self) -> bool {
        self.first_violation().is_none()
    }

    /// Visits violations until `visit` returns false.
    fn scan_axioms(&self, mut visit: impl FnMut(AxiomViolation) -> bool) {
        let s = &self.skeleton;
        for a in s.elements() {
            for b in s.elements() {
                let ab = s.mul(a, b);
                for c in s.elements() {
                    let bc = s.mul(b, c);
                    let abc = s.mul(ab, c);
                    let (l_ab, r_ab) = (self.lambda(a, b), self.rho(a, b));
                    let (l_bc, r_bc) = (self.lambda(b, c), self.rho(b, c));
                    let (l_ab_c, r_ab_c) = (self.lambda(ab, c), self.rho(ab, c));
                    let (l_a_bc, r_a_bc) = (self.lambda(a, bc), self.rho(a, bc));
                    for i in 0..self.index_sizes[abc] {
                        let checks = [
                            (Axiom::Alpha, l_ab[l_ab_c[i]], l_a_bc[i]),
                            (Axiom::Beta, r_bc[r_a_bc[i]], r_ab_c[i]),
                            (Axiom::Gamma, r_ab[l_ab_c[i]], l_bc[r_a_bc[i]]),
                        ];
                        for (axiom, lhs, rhs) in checks {
                            if lhs != rhs {
                                let v = AxiomViolation {
                                    axiom,
                                    a,
                                    b,
                                    c,
                                    index: i,
                                    lhs,
                                    rhs,
                                };
                                if !visit(v) {
                                    return;
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Validates the axioms, turning the data into an [`LrSystem`].
    pub fn validate(self) -> Result<LrSystem> {
        let violations = self.axiom_violations();
        if violations.is_empty() {
            Ok(LrSystem(self))
        } else {
            Err(SystemError::AxiomViolation(violations))
        }
    }
}

/// A λρ-system: [`SystemData`] that satisfies (α), (β) and (γ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LrSystem(SystemData);

impl Deref for LrSystem {
    type Target = SystemData;

    fn deref(&self) -> &SystemData {
        &self.0
    }
}

/// Why a system fails to be unital.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitalFailure {
    NoIdentity,
    /// `λ[a,1]` is not the identity of `I[a]`.
    Lambda(usize),
    /// `ρ[1,a]` is not the identity of `I[a]`.
    Rho(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitalReport {
    pub unit: Option<usize>,
    pub failures: Vec<UnitalFailure>,
}

impl UnitalReport {
    pub fn is_unital(&self) -> bool {
        self.unit.is_some() && self.failures.is_empty()
    }
}

fn is_identity_map(map: &[usize]) -> bool {
    map.iter().enumerate().all(|(i, &v)| i == v)
}

impl LrSystem {
    pub fn new(
        skeleton: FiniteSemigroup,
        index_sizes: Vec<usize>,
        lambda: Vec<Vec<usize>>,
        rho: Vec<Vec<usize>>,
    ) -> Result<Self> {
        SystemData::new(skeleton, index_sizes, lambda, rho)?.validate()
    }

    pub fn data(&self) -> &SystemData {
        &self.0
    }

    pub fn into_data(self) -> SystemData {
        self.0
    }

    /// Unital means: the skeleton is a monoid and `λ[a,1]`, `ρ[1,a]` are
    /// identities for every `a`.
    pub fn unital_report(&self) -> UnitalReport {
        let Some(unit) = self.skeleton().identity_of() else {
            return UnitalReport {
                unit: None,
                failures: vec![UnitalFailure::NoIdentity],
            };
        };
        let mut failures = Vec::new();
        for a in self.skeleton().elements() {
            if !is_identity_map(self.lambda(a, unit)) {
                failures.push(UnitalFailure::Lambda(a));
            }
            if !is_identity_map(self.rho(unit, a)) {
                failures.push(UnitalFailure::Rho(a));
            }
        }
        UnitalReport {
            unit: Some(unit),
            failures,
        }
    }

    pub fn is_unital(&self) -> bool {
        self.unital_report().is_unital()
    }

    /// The unital extension over `S¹`, whose adjoined unit is element `n`
    /// with `I[1] = {0}`. `λ[1,a]`, `ρ[a,1]` are constant and `λ[a,1]`,
    /// `ρ[1,a]` are identities.
    pub fn unital_extension(&self) -> LrSystem {
        let s = self.skeleton();
        let n = s.order();
        let mut sizes = self.index_sizes().to_vec();
        sizes.push(1);
        let identity = |k: usize| (0..k).collect::<Vec<_>>();
        let data = SystemData::from_fn(s.adjoin_unit(), sizes.clone(), |a, b| match (a == n, b == n) {
            (false, false) => (self.lambda(a, b).to_vec(), self.rho(a, b).to_vec()),
            (true, true) => (vec![0], vec![0]),
            (true, false) => (vec![0; sizes[b]], identity(sizes[b])),
            (false, true) => (identity(sizes[a]), vec![0; sizes[a]]),
        })
        .expect("unital extension has consistent arities");
        data.validate().expect("unital extension of a valid system is valid")
    }

    /// The subsystem over a closed subset `T` (re-indexed ascending) and the
    /// canonical transformation `𝒮 -> 𝒮|_T` (identity embedding, identity
    /// index maps).
    pub fn restrict(&self, subset: &[usize]) -> Result<(LrSystem, Transformation)> {
        let (sub, ids) = self.skeleton().subsemigroup(subset)?;
        let sizes: Vec<usize> = ids.iter().map(|&a| self.index_size(a)).collect();
        let data = SystemData::from_fn(sub.clone(), sizes.clone(), |i, j| {
            (self.lambda(ids[i], ids[j]).to_vec(), self.rho(ids[i], ids[j]).to_vec())
        })?;
        let restricted = data.validate()?;
        let embedding = Homomorphism::new(sub, self.skeleton().clone(), ids)?;
        let index_maps = sizes.iter().map(|&k| (0..k).collect()).collect();
        let t = Transformation::new(self.clone(), restricted.clone(), embedding, index_maps)?;
        Ok((restricted, t))
    }

    /// Pulls the system back along `f: S1 -> S2` where `S2` is this skeleton:
    /// `I'[x] = I[f(x)]`, `λ'[x,y] = λ[f(x),f(y)]`, `ρ'[x,y] = ρ[f(x),f(y)]`.
    pub fn pullback(&self, f: &Homomorphism) -> Result<LrSystem> {
        if f.target() != self.skeleton() {
            return Err(SystemError::Mismatch(
                "homomorphism target is not the skeleton of the system".into(),
            ));
        }
        let sizes = f.source().elements().map(|x| self.index_size(f.apply(x))).collect();
        let data = SystemData::from_fn(f.source().clone(), sizes, |x, y| {
            let (fx, fy) = (f.apply(x), f.apply(y));
            (self.lambda(fx, fy).to_vec(), self.rho(fx, fy).to_vec())
        })?;
        data.validate()
    }

    /// `J = {s : I[s] = ∅}` and whether `J` is empty or a two-sided ideal.
    pub fn empty_index_ideal(&self) -> (Vec<usize>, bool) {
        let s = self.skeleton();
        let j: Vec<usize> = s.elements().filter(|&a| self.index_size(a) == 0).collect();
        let ideal = j.iter().all(|&x| {
            s.elements()
                .all(|y| self.index_size(s.mul(x, y)) == 0 && self.index_size(s.mul(y, x)) == 0)
        });
        (j, ideal)
    }
}
