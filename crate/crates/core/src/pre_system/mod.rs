//! Pre-λρ-systems over monoids.
//!
//! A pre-system gives, for each `a` of a monoid `M`, maps
//! `λ[a], ρ[a]: I[a] -> I` with `I = I[1]` and `λ[1] = ρ[1] = id`, such that
//! every pair `(a, b)` admits maps `λ[a,b]: I[ab] -> I[a]`,
//! `ρ[a,b]: I[ab] -> I[b]` with
//!
//! * (α') `λ[a] ∘ λ[a,b] = λ[ab]`
//! * (β') `ρ[b] ∘ ρ[a,b] = ρ[ab]`
//! * (γ') `ρ[a] ∘ λ[a,b] = λ[b] ∘ ρ[a,b]`
//!
//! The equations constrain each `i ∈ I[ab]` separately, so the solutions of
//! a pair are the product of per-index option lists.

mod delta;

use thiserror::Error;

use crate::lr_system::{LrSystem, SystemData, SystemError};
use crate::semigroup::FiniteSemigroup;

pub use delta::{
    check_natural_solutions, delta_failure, Delta, DeltaFailure, DeltaMode, DeltaPrefixes, DeltaReport, DeltaSlots,
};

/// Default cap on the number of solutions enumerated for one pair.
pub const DEFAULT_SOLVE_CAP: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreError {
    #[error("skeleton is not a monoid")]
    NotMonoid,
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("{map}[{a}] sends {index} to {value}, outside 0..{bound}")]
    OutOfRange {
        map: &'static str,
        a: usize,
        index: usize,
        value: usize,
        bound: usize,
    },
    #[error("λ[1] and ρ[1] must be identities on I")]
    UnitNotIdentity,
    #[error("no solution for the pair ({a},{b})")]
    NoSolution { a: usize, b: usize },
    #[error("system is not unital")]
    NotUnital,
    #[error("enumeration exceeds the cap of {cap}")]
    CapExceeded { cap: usize },
    #[error("not a solution for ({a},{b}): {reason}")]
    InvalidSolution { a: usize, b: usize, reason: String },
    #[error("natural solutions fail: {}", .0[0])]
    NaturalSolutionsFail(Vec<DeltaFailure>),
    #[error(transparent)]
    System(#[from] SystemError),
}

pub type Result<T, E = PreError> = std::result::Result<T, E>;

/// Candidate maps `λ[a,b]`, `ρ[a,b]` for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SolutionPair {
    pub a: usize,
    pub b: usize,
    pub lam: Vec<usize>,
    pub rho: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreLrSystem {
    skeleton: FiniteSemigroup,
    unit: usize,
    index_sizes: Vec<usize>,
    lambda1: Vec<Vec<usize>>,
    rho1: Vec<Vec<usize>>,
}

fn is_identity(map: &[usize]) -> bool {
    map.iter().enumerate().all(|(i, &v)| i == v)
}

impl PreLrSystem {
    /// Validates arities, `k_1 = base_size`, `λ[1] = ρ[1] = id` and that
    /// every pair has a solution.
    pub fn new(
        skeleton: FiniteSemigroup,
        base_size: usize,
        index_sizes: Vec<usize>,
        lambda1: Vec<Vec<usize>>,
        rho1: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let unit = skeleton.identity_of().ok_or(PreError::NotMonoid)?;
        let n = skeleton.order();
        if index_sizes.len() != n || lambda1.len() != n || rho1.len() != n {
            return Err(PreError::ArityMismatch(format!(
                "expected {n} index sizes and maps, got {}, {}, {}",
                index_sizes.len(),
                lambda1.len(),
                rho1.len()
            )));
        }
        if index_sizes[unit] != base_size {
            return Err(PreError::ArityMismatch(format!(
                "|I[1]| = {} but the base has size {base_size}",
                index_sizes[unit]
            )));
        }
        for (name, maps) in [("λ", &lambda1), ("ρ", &rho1)] {
            for (a, map) in maps.iter().enumerate() {
                if map.len() != index_sizes[a] {
                    return Err(PreError::ArityMismatch(format!(
                        "{name}[{a}] has length {}, expected {}",
                        map.len(),
                        index_sizes[a]
                    )));
                }
                if let Some((index, &value)) = map.iter().enumerate().find(|(_, &v)| v >= base_size) {
                    return Err(PreError::OutOfRange {
                        map: name,
                        a,
                        index,
                        value,
                        bound: base_size,
                    });
                }
            }
        }
        if !is_identity(&lambda1[unit]) || !is_identity(&rho1[unit]) {
            return Err(PreError::UnitNotIdentity);
        }
        let pre = Self {
            skeleton,
            unit,
            index_sizes,
            lambda1,
            rho1,
        };
        for a in pre.skeleton.elements() {
            for b in pre.skeleton.elements() {
                if pre.solution_options(a, b).iter().any(Vec::is_empty) {
                    return Err(PreError::NoSolution { a, b });
                }
            }
        }
        Ok(pre)
    }

    pub fn skeleton(&self) -> &FiniteSemigroup {
        &self.skeleton
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn base_size(&self) -> usize {
        self.index_sizes[self.unit]
    }

    pub fn index_sizes(&self) -> &[usize] {
        &self.index_sizes
    }

    pub fn index_size(&self, a: usize) -> usize {
        self.index_sizes[a]
    }

    pub fn lambda1(&self, a: usize) -> &[usize] {
        &self.lambda1[a]
    }

    pub fn rho1(&self, a: usize) -> &[usize] {
        &self.rho1[a]
    }

    pub fn lambda1_maps(&self) -> &[Vec<usize>] {
        &self.lambda1
    }

    pub fn rho1_maps(&self) -> &[Vec<usize>] {
        &self.rho1
    }

    /// For each `i ∈ I[ab]`, the pairs `(l, r) ∈ I[a] × I[b]` allowed as
    /// `(λ[a,b](i), ρ[a,b](i))`, in lexicographic order.
    pub fn solution_options(&self, a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
        let ab = self.skeleton.mul(a, b);
        let (la, ra) = (&self.lambda1[a], &self.rho1[a]);
        let (lb, rb) = (&self.lambda1[b], &self.rho1[b]);
        (0..self.index_sizes[ab])
            .map(|i| {
                let (want_l, want_r) = (self.lambda1[ab][i], self.rho1[ab][i]);
                let mut opts = Vec::new();
                for l in (0..self.index_sizes[a]).filter(|&l| la[l] == want_l) {
                    for r in (0..self.index_sizes[b]).filter(|&r| rb[r] == want_r) {
                        if ra[l] == lb[r] {
                            opts.push((l, r));
                        }
                    }
                }
                opts
            })
            .collect()
    }

    /// Number of solutions for `(a, b)`, saturating at `usize::MAX`.
    pub fn solution_count(&self, a: usize, b: usize) -> usize {
        self.solution_options(a, b)
            .iter()
            .try_fold(1usize, |acc, o| acc.checked_mul(o.len()))
            .unwrap_or(usize::MAX)
    }

    /// All solutions for `(a, b)`, lexicographic with index 0 most
    /// significant. Fails when there are more than `cap`.
    pub fn solve_pairs(&self, a: usize, b: usize, cap: usize) -> Result<Vec<SolutionPair>> {
        let options = self.solution_options(a, b);
        if options.iter().any(Vec::is_empty) {
            return Err(PreError::NoSolution { a, b });
        }
        let count = options.iter().try_fold(1usize, |acc, o| acc.checked_mul(o.len()));
        match count {
            Some(c) if c <= cap => {}
            _ => return Err(PreError::CapExceeded { cap }),
        }
        let k = options.len();
        let mut out = Vec::with_capacity(count.unwrap_or(0));
        let mut choice = vec![0usize; k];
        loop {
            out.push(SolutionPair {
                a,
                b,
                lam: (0..k).map(|i| options[i][choice[i]].0).collect(),
                rho: (0..k).map(|i| options[i][choice[i]].1).collect(),
            });
            // last index least significant
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                choice[i] += 1;
                if choice[i] < options[i].len() {
                    break;
                }
                choice[i] = 0;
            }
        }
    }

    /// The lexicographically first solution.
    pub fn first_solution(&self, a: usize, b: usize) -> Result<SolutionPair> {
        let options = self.solution_options(a, b);
        if options.iter().any(Vec::is_empty) {
            return Err(PreError::NoSolution { a, b });
        }
        Ok(SolutionPair {
            a,
            b,
            lam: options.iter().map(|o| o[0].0).collect(),
            rho: options.iter().map(|o| o[0].1).collect(),
        })
    }

    /// Checks arities, ranges and (α'), (β'), (γ') pointwise.
    pub fn verify_solution(&self, sol: &SolutionPair) -> Result<()> {
        let n = self.skeleton.order();
        let (a, b) = (sol.a, sol.b);
        let invalid = |reason: String| PreError::InvalidSolution { a, b, reason };
        if a >= n || b >= n {
            return Err(invalid("pair outside the skeleton".into()));
        }
        let ab = self.skeleton.mul(a, b);
        let k = self.index_sizes[ab];
        if sol.lam.len() != k || sol.rho.len() != k {
            return Err(invalid(format!("maps must have length |I[{ab}]| = {k}")));
        }
        if sol.lam.iter().any(|&l| l >= self.index_sizes[a]) || sol.rho.iter().any(|&r| r >= self.index_sizes[b]) {
            return Err(invalid("map entries out of range".into()));
        }
        for i in 0..k {
            let (l, r) = (sol.lam[i], sol.rho[i]);
            if self.lambda1[a][l] != self.lambda1[ab][i] {
                return Err(invalid(format!("(α') fails at {i}")));
            }
            if self.rho1[b][r] != self.rho1[ab][i] {
                return Err(invalid(format!("(β') fails at {i}")));
            }
            if self.rho1[a][l] != self.lambda1[b][r] {
                return Err(invalid(format!("(γ') fails at {i}")));
            }
        }
        Ok(())
    }
}

/// One chosen solution per pair, indexed `a * n + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solutions {
    order: usize,
    pairs: Vec<SolutionPair>,
}

impl Solutions {
    /// Asks `chooser` for the solution of every pair in row-major order.
    pub fn choose<F>(pre: &PreLrSystem, mut chooser: F) -> Self
    where
        F: FnMut(&PreLrSystem, usize, usize) -> SolutionPair,
    {
        let n = pre.skeleton().order();
        let pairs = (0..n * n).map(|k| chooser(pre, k / n, k % n)).collect();
        Self { order: n, pairs }
    }

    pub fn first(pre: &PreLrSystem) -> Result<Self> {
        let n = pre.skeleton().order();
        let pairs = (0..n * n)
            .map(|k| pre.first_solution(k / n, k % n))
            .collect::<Result<_>>()?;
        Ok(Self { order: n, pairs })
    }

    /// The maps `λ[a,b]`, `ρ[a,b]` of a system.
    pub fn from_system(sys: &SystemData) -> Self {
        let n = sys.skeleton().order();
        let pairs = (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                SolutionPair {
                    a,
                    b,
                    lam: sys.lambda(a, b).to_vec(),
                    rho: sys.rho(a, b).to_vec(),
                }
            })
            .collect();
        Self { order: n, pairs }
    }

    pub fn get(&self, a: usize, b: usize) -> &SolutionPair {
        &self.pairs[a * self.order + b]
    }

    pub fn pairs(&self) -> &[SolutionPair] {
        &self.pairs
    }
}

/// The pre-system of a unital system: `λ[a] = λ[1,a]`, `ρ[a] = ρ[a,1]`.
pub fn extract_pre(sys: &LrSystem) -> Result<PreLrSystem> {
    if !sys.is_unital() {
        return Err(PreError::NotUnital);
    }
    let s = sys.skeleton();
    let unit = s.identity_of().expect("unital skeleton is a monoid");
    PreLrSystem::new(
        s.clone(),
        sys.index_size(unit),
        sys.index_sizes().to_vec(),
        s.elements().map(|a| sys.lambda(unit, a).to_vec()).collect(),
        s.elements().map(|a| sys.rho(a, unit).to_vec()).collect(),
    )
}

/// Assembles the system with the given solutions.
///
/// Each solution is re-verified, then δ1–δ4 are checked on exactly these
/// maps, and the result must be unital.
pub fn lift(pre: &PreLrSystem, solutions: &Solutions) -> Result<LrSystem> {
    let n = pre.skeleton().order();
    if solutions.order != n {
        return Err(PreError::ArityMismatch(format!(
            "solutions for a skeleton of order {}, expected {n}",
            solutions.order
        )));
    }
    for (k, sol) in solutions.pairs.iter().enumerate() {
        if (sol.a, sol.b) != (k / n, k % n) {
            return Err(PreError::InvalidSolution {
                a: k / n,
                b: k % n,
                reason: format!("solution is labelled ({},{})", sol.a, sol.b),
            });
        }
        pre.verify_solution(sol)?;
    }
    let report = check_natural_solutions(pre, DeltaMode::Given(solutions))?;
    if !report.passes() {
        return Err(PreError::NaturalSolutionsFail(report.failures));
    }
    let sys = LrSystem::new(
        pre.skeleton().clone(),
        pre.index_sizes().to_vec(),
        solutions.pairs.iter().map(|s| s.lam.clone()).collect(),
        solutions.pairs.iter().map(|s| s.rho.clone()).collect(),
    )?;
    if !sys.is_unital() {
        return Err(PreError::NotUnital);
    }
    Ok(sys)
}

/// [`lift`] with a chooser called once per pair.
pub fn lift_with<F>(pre: &PreLrSystem, chooser: F) -> Result<LrSystem>
where
    F: FnMut(&PreLrSystem, usize, usize) -> SolutionPair,
{
    lift(pre, &Solutions::choose(pre, chooser))
}

/// `P[ab] = {(x, y) ∈ I[a] × I[b] : ρ[a](x) = λ[b](y)}` for one pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCompletion {
    pub a: usize,
    pub b: usize,
    /// Lexicographic.
    pub points: Vec<(usize, usize)>,
}

impl PairCompletion {
    /// `π[a]`, `π[b]` close the square: `ρ[a] ∘ π[a] = λ[b] ∘ π[b]`.
    pub fn projections_commute(&self, pre: &PreLrSystem) -> bool {
        self.points
            .iter()
            .all(|&(x, y)| pre.rho1(self.a)[x] == pre.lambda1(self.b)[y])
    }

    /// `f[a,b]: i ↦ (λ[a,b](i), ρ[a,b](i))` as indices into `points`, or
    /// `None` if some image lies outside `P[ab]`.
    pub fn factor_map(&self, sol: &SolutionPair) -> Option<Vec<usize>> {
        sol.lam
            .iter()
            .zip(&sol.rho)
            .map(|(&l, &r)| self.points.binary_search(&(l, r)).ok())
            .collect()
    }
}

/// The pullback `P[ab]` of every pair, in row-major order.
pub fn pullback_completion(pre: &PreLrSystem) -> Vec<PairCompletion> {
    let s = pre.skeleton();
    let mut out = Vec::with_capacity(s.order() * s.order());
    for a in s.elements() {
        for b in s.elements() {
            let mut points = Vec::new();
            for x in 0..pre.index_size(a) {
                for y in 0..pre.index_size(b) {
                    if pre.rho1(a)[x] == pre.lambda1(b)[y] {
                        points.push((x, y));
                    }
                }
            }
            out.push(PairCompletion { a, b, points });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::NamedSemigroup;

    fn named(s: &str) -> FiniteSemigroup {
        s.parse::<NamedSemigroup>().unwrap().build().unwrap()
    }

    #[test]
    fn extract_flipflop() {
        let pre = extract_pre(&LrSystem::flipflop_example()).unwrap();
        assert_eq!(pre.unit(), 0);
        assert_eq!(pre.base_size(), 1);
        assert_eq!(pre.lambda1(1), &[0, 0]);
        assert_eq!(pre.rho1(1), &[0, 0]);
        assert!(matches!(
            extract_pre(&LrSystem::lzero_example()),
            Err(PreError::NotUnital)
        ));
    }

    #[test]
    fn extract_extended_lzero() {
        let pre = extract_pre(&LrSystem::lzero_example().unital_extension()).unwrap();
        assert_eq!(pre.unit(), 1);
        assert_eq!(pre.base_size(), 1);
        assert_eq!(pre.lambda1(0), &[0, 0]);
        assert_eq!(pre.rho1(0), &[0, 0]);
    }

    #[test]
    fn solutions_for_flipflop() {
        let pre = extract_pre(&LrSystem::flipflop_example()).unwrap();
        let sols = pre.solve_pairs(1, 1, DEFAULT_SOLVE_CAP).unwrap();
        assert_eq!(sols.len(), 16);
        assert!(sols.iter().any(|s| s.lam == [0, 1] && s.rho == [0, 0]));
        assert!(sols.iter().all(|s| pre.verify_solution(s).is_ok()));
        let key = |s: &SolutionPair| s.lam.iter().zip(&s.rho).map(|(&l, &r)| (l, r)).collect::<Vec<_>>();
        assert!(sols.windows(2).all(|w| key(&w[0]) < key(&w[1])));
        assert!(matches!(pre.solve_pairs(1, 1, 15), Err(PreError::CapExceeded { .. })));
        // unit on the left: λ[1,b] forced to λ[b] = constant 0
        for s in pre.solve_pairs(0, 1, DEFAULT_SOLVE_CAP).unwrap() {
            assert_eq!(s.lam, vec![0, 0]);
        }
        assert_eq!(pre.solve_pairs(0, 0, DEFAULT_SOLVE_CAP).unwrap().len(), 1);
    }

    #[test]
    fn rejects_bad_pre_systems() {
        let z2 = named("cyclic(2)");
        assert!(matches!(
            PreLrSystem::new(
                named("left_zero(2)"),
                1,
                vec![1, 1],
                vec![vec![0], vec![0]],
                vec![vec![0], vec![0]]
            ),
            Err(PreError::NotMonoid)
        ));
        assert!(matches!(
            PreLrSystem::new(
                z2.clone(),
                2,
                vec![2, 1],
                vec![vec![1, 0], vec![0]],
                vec![vec![0, 1], vec![0]]
            ),
            Err(PreError::UnitNotIdentity)
        ));
        // λ[g] = 0, ρ[g] = 1 with I[g] = {0}: for (g,g), λ[gg] = λ[1] = id
        // needs λ[g](l) = i for both i, impossible
        assert!(matches!(
            PreLrSystem::new(z2, 2, vec![2, 1], vec![vec![0, 1], vec![0]], vec![vec![0, 1], vec![1]]),
            Err(PreError::NoSolution { a: 1, b: 1 })
        ));
    }

    #[test]
    fn round_trip_flipflop() {
        let ff = LrSystem::flipflop_example();
        let pre = extract_pre(&ff).unwrap();
        assert_eq!(lift(&pre, &Solutions::from_system(&ff)).unwrap(), ff);
    }

    #[test]
    fn flipflop_fails_all_solutions() {
        let pre = extract_pre(&LrSystem::flipflop_example()).unwrap();
        let report = check_natural_solutions(&pre, DeltaMode::AllSolutions { cap: DEFAULT_SOLVE_CAP }).unwrap();
        assert!(!report.passes());
        let given = Solutions::from_system(&LrSystem::flipflop_example());
        assert!(check_natural_solutions(&pre, DeltaMode::Given(&given))
            .unwrap()
            .passes());
    }

    #[test]
    fn injective_prefixes_pass_all_solutions() {
        // Z2 acting on itself: every λ[a], ρ[a] is a bijection of I = Z2
        let z2 = named("cyclic(2)");
        let pre = PreLrSystem::new(
            z2,
            2,
            vec![2, 2],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let report = check_natural_solutions(&pre, DeltaMode::AllSolutions { cap: DEFAULT_SOLVE_CAP }).unwrap();
        assert!(report.passes());
        assert_eq!(report.triples, 8);
        let sys = lift(&pre, &Solutions::first(&pre).unwrap()).unwrap();
        assert!(sys.is_unital());
    }

    #[test]
    fn constant_choice_passes_given_but_is_not_unital() {
        // I = {0}, I[g] = {0,1}, all maps constant: every choice solves, and
        // constant choices satisfy δ but ρ[1,g] is not the identity.
        let z2 = named("cyclic(2)");
        let pre = PreLrSystem::new(z2, 1, vec![1, 2], vec![vec![0], vec![0, 0]], vec![vec![0], vec![0, 0]]).unwrap();
        let constant = Solutions::choose(&pre, |p, a, b| {
            let k = p.index_size(p.skeleton().mul(a, b));
            SolutionPair {
                a,
                b,
                lam: vec![0; k],
                rho: vec![0; k],
            }
        });
        assert!(check_natural_solutions(&pre, DeltaMode::Given(&constant))
            .unwrap()
            .passes());
        assert!(matches!(lift(&pre, &constant), Err(PreError::NotUnital)));
    }

    #[test]
    fn lift_rejects_non_solutions() {
        let ff = LrSystem::flipflop_example();
        let pre = extract_pre(&ff).unwrap();
        let mut sols = Solutions::from_system(&ff);
        sols.pairs[3].lam = vec![0, 0, 0];
        assert!(matches!(
            lift(&pre, &sols),
            Err(PreError::InvalidSolution { a: 1, b: 1, .. })
        ));
    }

    #[test]
    fn completions() {
        let ff = LrSystem::flipflop_example();
        let pre = extract_pre(&ff).unwrap();
        let comp = pullback_completion(&pre);
        assert_eq!(comp[3].points.len(), 4);
        let sols = Solutions::from_system(&ff);
        for c in &comp {
            assert!(c.projections_commute(&pre));
            assert!(c.factor_map(sols.get(c.a, c.b)).is_some());
        }
        assert_eq!(comp[3].factor_map(sols.get(1, 1)).unwrap(), vec![0, 2]);
    }
}
