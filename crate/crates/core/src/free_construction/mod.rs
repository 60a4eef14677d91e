//! The free construction over a truncated free monoid.
//!
//! Generators `x` carry sets `I[x]` and maps `λ[x], ρ[x]: I[x] -> I`. For a
//! word `w = x_1⋯x_k`, `I[w]` is the set of sequences `(v_1,…,v_k)` with
//! `ρ[x_j](v_j) = λ[x_{j+1}](v_{j+1})`; `λ[w]` reads the first coordinate
//! and `ρ[w]` the last. `I[ε] = I` and `λ[ε] = ρ[ε] = id`.
//!
//! Words longer than `L` are absent. The system is stored as a λρ-system
//! over the Rees quotient of the truncated monoid, with an absorbing zero
//! `θ` whose index set is empty; its axioms then hold on exactly the
//! instances whose words fit.

mod divide;
mod transform;

use thiserror::Error;

use crate::lr_product::ProductError;
use crate::lr_system::{LrSystem, SystemData, SystemError};
use crate::pre_system::{
    check_natural_solutions, DeltaMode, DeltaReport, PreError, PreLrSystem, SolutionPair, Solutions,
};
use crate::semigroup::{FiniteSemigroup, DEFAULT_TABLE_CAP};

pub use divide::{verify_divide, DivideReport};
pub use transform::{free_transformation, FreeTransformation, FreeTransformationReport};

/// Default maximal word length.
pub const DEFAULT_MAX_LEN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeError {
    #[error("generator data out of range: {0}")]
    OutOfRange(String),
    #[error("{what} of {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("construction check failed: {0}")]
    Check(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Pre(#[from] PreError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

pub type Result<T, E = FreeError> = std::result::Result<T, E>;

/// Words of length at most `max_len` over `generators` letters.
///
/// Word ids run by length, then lexicographically with the first letter most
/// significant; `ε` is id 0 and letter `x` is id `1 + x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedFreeMonoid {
    generators: usize,
    max_len: usize,
    offsets: Vec<usize>,
    words: Vec<Vec<usize>>,
    letter_labels: Vec<String>,
}

impl TruncatedFreeMonoid {
    pub fn new(generators: usize, max_len: usize, letter_labels: Option<Vec<String>>, cap: usize) -> Result<Self> {
        let mut offsets = vec![0usize];
        let mut total = 1usize;
        let mut layer = 1usize;
        for _ in 0..max_len {
            offsets.push(total);
            layer = layer.checked_mul(generators).ok_or(FreeError::CapExceeded {
                what: "word count",
                size: usize::MAX,
                cap,
            })?;
            total = total
                .checked_add(layer)
                .filter(|&t| t < cap)
                .ok_or(FreeError::CapExceeded {
                    what: "word count",
                    size: total.saturating_add(layer),
                    cap,
                })?;
        }
        offsets.push(total);
        let mut words = vec![Vec::new()];
        let mut prev: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..max_len {
            let next: Vec<Vec<usize>> = prev
                .iter()
                .flat_map(|w| {
                    (0..generators).map(move |x| {
                        let mut w = w.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
            words.extend(next.iter().cloned());
            prev = next;
        }
        let letter_labels = match letter_labels {
            Some(l) if l.len() == generators => l,
            Some(l) => {
                return Err(FreeError::OutOfRange(format!(
                    "{} letter labels for {generators} generators",
                    l.len()
                )))
            }
            None => (0..generators).map(|x| x.to_string()).collect(),
        };
        Ok(Self {
            generators,
            max_len,
            offsets,
            words,
            letter_labels,
        })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of words, `ε` included.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, id: usize) -> &[usize] {
        &self.words[id]
    }

    pub fn word_len(&self, id: usize) -> usize {
        self.words[id].len()
    }

    pub fn letter(&self, x: usize) -> usize {
        1 + x
    }

    pub fn id_of(&self, word: &[usize]) -> Option<usize> {
        if word.len() > self.max_len || word.iter().any(|&x| x >= self.generators) {
            return None;
        }
        let value = word.iter().fold(0usize, |acc, &x| acc * self.generators + x);
        Some(self.offsets[word.len()] + value)
    }

    /// `uv`, if it has length at most `L`.
    pub fn concat(&self, u: usize, v: usize) -> Option<usize> {
        let mut w = self.words[u].clone();
        w.extend_from_slice(&self.words[v]);
        self.id_of(&w)
    }

    pub fn label(&self, id: usize) -> String {
        let w = &self.words[id];
        if w.is_empty() {
            return "ε".into();
        }
        let parts: Vec<&str> = w.iter().map(|&x| self.letter_labels[x].as_str()).collect();
        if parts.iter().all(|p| p.chars().count() == 1) {
            parts.concat()
        } else {
            parts.join("·")
        }
    }

    /// The Rees quotient: all words plus an absorbing zero `θ` (last id)
    /// that every overlong product falls to.
    pub fn as_semigroup(&self) -> FiniteSemigroup {
        let n = self.words.len();
        let zero = n;
        let mut table = Vec::with_capacity((n + 1) * (n + 1));
        for u in 0..=n {
            for v in 0..=n {
                let uv = if u == zero || v == zero {
                    None
                } else {
                    self.concat(u, v)
                };
                table.push(uv.unwrap_or(zero));
            }
        }
        let mut labels: Vec<String> = (0..n).map(|id| self.label(id)).collect();
        labels.push("θ".into());
        FiniteSemigroup::from_flat(n + 1, table, Some(labels)).expect("truncated free monoid table")
    }
}

/// Per-generator data: `I[x]` of size `sizes[x]` and `λ[x], ρ[x]: I[x] -> I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorData {
    pub base_size: usize,
    pub sizes: Vec<usize>,
    pub lambda: Vec<Vec<usize>>,
    pub rho: Vec<Vec<usize>>,
    pub labels: Option<Vec<String>>,
}

impl GeneratorData {
    fn validate(&self) -> Result<()> {
        let g = self.sizes.len();
        if self.lambda.len() != g || self.rho.len() != g {
            return Err(FreeError::OutOfRange(format!(
                "{g} sizes but {} λ and {} ρ maps",
                self.lambda.len(),
                self.rho.len()
            )));
        }
        for (x, (l, r)) in self.lambda.iter().zip(&self.rho).enumerate() {
            if l.len() != self.sizes[x] || r.len() != self.sizes[x] {
                return Err(FreeError::OutOfRange(format!(
                    "maps of generator {x} have the wrong length"
                )));
            }
            if l.iter().chain(r).any(|&v| v >= self.base_size) {
                return Err(FreeError::OutOfRange(format!(
                    "maps of generator {x} leave 0..{}",
                    self.base_size
                )));
            }
        }
        Ok(())
    }
}

/// Counts from the checks run while building.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeBuildReport {
    /// Sequences checked against the chain equations.
    pub chain_checked: usize,
    /// (word, split, sequence) instances of split invariance.
    pub split_checked: usize,
    /// Pairs whose projection solution satisfies (α'), (β'), (γ').
    pub projections_checked: usize,
    /// δ1–δ4 on the projection solutions.
    pub delta: DeltaReport,
}

/// The free pre-system, its projection solutions and the resulting
/// λρ-system over the Rees quotient of the truncated monoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeSystem {
    monoid: TruncatedFreeMonoid,
    gens: GeneratorData,
    even_freer: bool,
    /// `I[w]` in lexicographic order; `I[ε]` is stored as one-point
    /// sequences of base points.
    sequences: Vec<Vec<Vec<usize>>>,
    lambda: Vec<Vec<usize>>,
    rho: Vec<Vec<usize>>,
    pre: PreLrSystem,
    system: LrSystem,
    report: FreeBuildReport,
}

fn chain_ok(gens: &GeneratorData, word: &[usize], seq: &[usize]) -> bool {
    (1..word.len()).all(|j| gens.rho[word[j - 1]][seq[j - 1]] == gens.lambda[word[j]][seq[j]])
}

fn enumerate_sequences(
    gens: &GeneratorData,
    word: &[usize],
    even_freer: bool,
    budget: usize,
) -> Option<Vec<Vec<usize>>> {
    fn go(
        gens: &GeneratorData,
        word: &[usize],
        even_freer: bool,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        budget: usize,
    ) -> bool {
        let j = prefix.len();
        if j == word.len() {
            out.push(prefix.clone());
            return out.len() <= budget;
        }
        for v in 0..gens.sizes[word[j]] {
            if j > 0 && !even_freer && gens.rho[word[j - 1]][prefix[j - 1]] != gens.lambda[word[j]][v] {
                continue;
            }
            prefix.push(v);
            let ok = go(gens, word, even_freer, prefix, out, budget);
            prefix.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    let mut out = Vec::new();
    go(gens, word, even_freer, &mut Vec::new(), &mut out, budget).then_some(out)
}

/// Builds the free system for words of length at most `max_len`.
///
/// With `even_freer`, `I[w]` is the full product `I[x_1] × ⋯ × I[x_k]`,
/// `I[ε]` is a point and `λ[w]`, `ρ[w]` are constant.
/// Fails with `CapExceeded` when the words or `Σ_w |I[w]|` exceed `cap`.
pub fn build_free_system(gens: GeneratorData, max_len: usize, even_freer: bool, cap: usize) -> Result<FreeSystem> {
    gens.validate()?;
    let monoid = TruncatedFreeMonoid::new(gens.sizes.len(), max_len, gens.labels.clone(), cap)?;
    let n = monoid.len();
    // without chain constraints the projections only form a system when
    // `I[ε]` is a point
    let base = if even_freer { 1 } else { gens.base_size };

    let mut sequences = Vec::with_capacity(n);
    let mut total = 0usize;
    let mut report = FreeBuildReport::default();
    for id in 0..n {
        let word = monoid.word(id);
        let seqs = if word.is_empty() {
            (0..base).map(|i| vec![i]).collect()
        } else {
            enumerate_sequences(&gens, word, even_freer, cap.saturating_sub(total)).ok_or(FreeError::CapExceeded {
                what: "total index size",
                size: cap + 1,
                cap,
            })?
        };
        total += seqs.len();
        if total > cap {
            return Err(FreeError::CapExceeded {
                what: "total index size",
                size: total,
                cap,
            });
        }
        if !word.is_empty() {
            for s in &seqs {
                report.chain_checked += 1;
                if !even_freer && !chain_ok(&gens, word, s) {
                    return Err(FreeError::Check(format!(
                        "sequence {s:?} of word {} breaks the chain",
                        monoid.label(id)
                    )));
                }
            }
        }
        sequences.push(seqs);
    }

    let mut lambda: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut rho: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (id, seqs) in sequences.iter().enumerate() {
        let word = monoid.word(id);
        if word.is_empty() {
            lambda.push((0..base).collect());
            rho.push((0..base).collect());
        } else if even_freer {
            lambda.push(vec![0; seqs.len()]);
            rho.push(vec![0; seqs.len()]);
        } else {
            let k = word.len();
            lambda.push(seqs.iter().map(|s| gens.lambda[word[0]][s[0]]).collect());
            rho.push(seqs.iter().map(|s| gens.rho[word[k - 1]][s[k - 1]]).collect());
        }
    }

    let restrict = |u: usize, s: &[usize]| -> Option<usize> { sequences[u].binary_search(&s.to_vec()).ok() };

    // split invariance over every factorization into nonempty parts
    for id in 0..n {
        let word = monoid.word(id);
        for cut in 1..word.len() {
            let (w1, w2) = (
                monoid.id_of(&word[..cut]).expect("prefix fits"),
                monoid.id_of(&word[cut..]).expect("suffix fits"),
            );
            for (i, s) in sequences[id].iter().enumerate() {
                report.split_checked += 1;
                let (p, q) = match (restrict(w1, &s[..cut]), restrict(w2, &s[cut..])) {
                    (Some(p), Some(q)) => (p, q),
                    _ => return Err(FreeError::Check(format!("restriction of {s:?} is not enumerated"))),
                };
                if lambda[w1][p] != lambda[id][i] || rho[w2][q] != rho[id][i] {
                    return Err(FreeError::Check(format!(
                        "λ/ρ of word {} depend on the split at {cut}",
                        monoid.label(id)
                    )));
                }
            }
        }
    }

    let skeleton = monoid.as_semigroup();
    let zero = n;
    let mut sizes: Vec<usize> = sequences.iter().map(Vec::len).collect();
    sizes.push(0);
    let projection = |u: usize, v: usize| -> (Vec<usize>, Vec<usize>) {
        if u == zero || v == zero {
            return (Vec::new(), Vec::new());
        }
        let Some(w) = monoid.concat(u, v) else {
            return (Vec::new(), Vec::new());
        };
        let cut = monoid.word_len(u);
        let lam = if cut == 0 {
            lambda[v].clone()
        } else if monoid.word_len(v) == 0 {
            (0..sizes[w]).collect()
        } else {
            sequences[w]
                .iter()
                .map(|s| restrict(u, &s[..cut]).expect("prefix enumerated"))
                .collect()
        };
        let rh = if monoid.word_len(v) == 0 {
            rho[u].clone()
        } else if cut == 0 {
            (0..sizes[w]).collect()
        } else {
            sequences[w]
                .iter()
                .map(|s| restrict(v, &s[cut..]).expect("suffix enumerated"))
                .collect()
        };
        (lam, rh)
    };

    let mut lambda1 = lambda.clone();
    lambda1.push(Vec::new());
    let mut rho1 = rho.clone();
    rho1.push(Vec::new());
    let pre = PreLrSystem::new(skeleton.clone(), base, sizes.clone(), lambda1, rho1)?;
    let solutions = Solutions::choose(&pre, |_, u, v| {
        let (lam, rho) = projection(u, v);
        SolutionPair { a: u, b: v, lam, rho }
    });
    for sol in solutions.pairs() {
        pre.verify_solution(sol)?;
        report.projections_checked += 1;
    }
    report.delta = check_natural_solutions(&pre, DeltaMode::Given(&solutions))?;
    if !report.delta.passes() {
        return Err(FreeError::Check(format!(
            "projection solutions fail: {}",
            report.delta.failures[0]
        )));
    }
    let data = SystemData::new(
        skeleton,
        sizes,
        solutions.pairs().iter().map(|s| s.lam.clone()).collect(),
        solutions.pairs().iter().map(|s| s.rho.clone()).collect(),
    )?;
    let system = data.validate()?;
    if !system.is_unital() {
        return Err(FreeError::Check("free system is not unital".into()));
    }

    Ok(FreeSystem {
        monoid,
        gens,
        even_freer,
        sequences,
        lambda,
        rho,
        pre,
        system,
        report,
    })
}

impl FreeSystem {
    pub fn monoid(&self) -> &TruncatedFreeMonoid {
        &self.monoid
    }

    pub fn generator_data(&self) -> &GeneratorData {
        &self.gens
    }

    pub fn is_even_freer(&self) -> bool {
        self.even_freer
    }

    /// `I[w]`.
    pub fn sequences(&self, word: usize) -> &[Vec<usize>] {
        &self.sequences[word]
    }

    pub fn index_size(&self, word: usize) -> usize {
        self.sequences[word].len()
    }

    /// `λ[w]: I[w] -> I`.
    pub fn lambda_word(&self, word: usize) -> &[usize] {
        &self.lambda[word]
    }

    /// `ρ[w]: I[w] -> I`.
    pub fn rho_word(&self, word: usize) -> &[usize] {
        &self.rho[word]
    }

    /// The position of a sequence in `I[w]`.
    pub fn sequence_index(&self, word: usize, seq: &[usize]) -> Option<usize> {
        self.sequences[word].binary_search(&seq.to_vec()).ok()
    }

    pub fn pre_system(&self) -> &PreLrSystem {
        &self.pre
    }

    /// The λρ-system over the Rees quotient; the zero `θ` is the last
    /// skeleton element and has an empty index set.
    pub fn system(&self) -> &LrSystem {
        &self.system
    }

    pub fn zero(&self) -> usize {
        self.monoid.len()
    }

    pub fn report(&self) -> &FreeBuildReport {
        &self.report
    }
}

/// `ℱ(𝒮¹)` together with `𝒮¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeOfSystem {
    pub original: LrSystem,
    pub extended: LrSystem,
    pub free: FreeSystem,
}

/// Generators are the elements of `S`; `I = I[1]` of `𝒮¹`,
/// `λ[s] = λ[1,s]` and `ρ[s] = ρ[s,1]` taken from `𝒮¹`.
pub fn free_of_system(sys: &LrSystem, max_len: usize, even_freer: bool, cap: usize) -> Result<FreeOfSystem> {
    let extended = sys.unital_extension();
    let n = sys.skeleton().order();
    let unit = n;
    let gens = GeneratorData {
        base_size: extended.index_size(unit),
        sizes: sys.index_sizes().to_vec(),
        lambda: (0..n).map(|s| extended.lambda(unit, s).to_vec()).collect(),
        rho: (0..n).map(|s| extended.rho(s, unit).to_vec()).collect(),
        labels: Some(sys.skeleton().elements().map(|s| sys.skeleton().label(s)).collect()),
    };
    let free = build_free_system(gens, max_len, even_freer, cap)?;
    Ok(FreeOfSystem {
        original: sys.clone(),
        extended,
        free,
    })
}

/// [`free_of_system`] with the default length and cap.
pub fn free_of_system_default(sys: &LrSystem) -> Result<FreeOfSystem> {
    free_of_system(sys, DEFAULT_MAX_LEN, false, DEFAULT_TABLE_CAP)
}

/// Word sizes by label, for reports.
pub fn index_size_table(free: &FreeSystem) -> Vec<(String, usize)> {
    (0..free.monoid().len())
        .map(|w| (free.monoid().label(w), free.index_size(w)))
        .collect()
}

/// `⊗w` for every word, with `⊗ε = unit`.
pub(crate) fn word_products(monoid: &TruncatedFreeMonoid, skeleton: &FiniteSemigroup, unit: usize) -> Vec<usize> {
    (0..monoid.len())
        .map(|w| monoid.word(w).iter().fold(unit, |acc, &x| skeleton.mul(acc, x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::NamedSemigroup;

    #[test]
    fn monoid_layout() {
        let m = TruncatedFreeMonoid::new(2, 3, None, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(m.len(), 1 + 2 + 4 + 8);
        assert_eq!(m.word(0), &[] as &[usize]);
        assert_eq!(m.letter(1), 2);
        assert_eq!(m.id_of(&[1, 0]), Some(5));
        assert_eq!(m.concat(1, 2), Some(4));
        assert_eq!(m.concat(m.id_of(&[0, 0]).unwrap(), m.id_of(&[1, 1]).unwrap()), None);
        assert_eq!(m.label(m.id_of(&[1, 0, 1]).unwrap()), "101");
        let s = m.as_semigroup();
        assert!(s.is_associative());
        assert_eq!(s.identity_of(), Some(0));
        assert!(TruncatedFreeMonoid::new(10, 4, None, 1000).is_err());
    }

    #[test]
    fn one_point_generator() {
        let gens = GeneratorData {
            base_size: 1,
            sizes: vec![1],
            lambda: vec![vec![0]],
            rho: vec![vec![0]],
            labels: None,
        };
        let f = build_free_system(gens, 3, false, DEFAULT_TABLE_CAP).unwrap();
        assert!((0..f.monoid().len()).all(|w| f.index_size(w) == 1));
    }

    #[test]
    fn swap_chain() {
        let gens = GeneratorData {
            base_size: 2,
            sizes: vec![2],
            lambda: vec![vec![0, 1]],
            rho: vec![vec![1, 0]],
            labels: Some(vec!["x".into()]),
        };
        let f = build_free_system(gens.clone(), 2, false, DEFAULT_TABLE_CAP).unwrap();
        let xx = f.monoid().id_of(&[0, 0]).unwrap();
        assert_eq!(f.sequences(xx), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(f.monoid().label(xx), "xx");
        let freer = build_free_system(gens, 2, true, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(freer.index_size(xx), 4);
    }

    #[test]
    fn free_of_examples() {
        let ff = free_of_system_default(&LrSystem::flipflop_example()).unwrap();
        let m = ff.free.monoid();
        assert_eq!(m.len(), 15);
        // base I is a point, so I[w] is a full product of I[0] = 1, I[1] = 2
        assert_eq!(ff.free.index_size(m.id_of(&[1, 0, 1]).unwrap()), 4);
        assert_eq!(ff.free.index_size(m.id_of(&[1, 1, 1]).unwrap()), 8);
        assert!(ff.free.report().delta.passes());

        let lz = free_of_system_default(&LrSystem::lzero_example()).unwrap();
        assert_eq!(lz.free.monoid().generators(), 1);

        let z2 = NamedSemigroup::Cyclic(2).build().unwrap();
        let e = free_of_system(&LrSystem::empty(&z2), 2, false, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(e.free.index_size(0), 1);
        assert!((1..e.free.monoid().len()).all(|w| e.free.index_size(w) == 0));
    }

    #[test]
    fn rejects_bad_generator_data() {
        let gens = GeneratorData {
            base_size: 1,
            sizes: vec![2],
            lambda: vec![vec![0, 1]],
            rho: vec![vec![0, 0]],
            labels: None,
        };
        assert!(matches!(
            build_free_system(gens, 2, false, DEFAULT_TABLE_CAP),
            Err(FreeError::OutOfRange(_))
        ));
    }
}
