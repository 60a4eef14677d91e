use super::{FiniteSemigroup, Result, SemigroupError};

/// A validated semigroup homomorphism `source -> target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    source: FiniteSemigroup,
    target: FiniteSemigroup,
    map: Vec<usize>,
}

impl Homomorphism {
    pub fn new(source: FiniteSemigroup, target: FiniteSemigroup, map: Vec<usize>) -> Result<Self> {
        check_map(&source, &target, &map)?;
        Ok(Self { source, target, map })
    }

    pub fn identity(s: &FiniteSemigroup) -> Self {
        Self {
            source: s.clone(),
            target: s.clone(),
            map: s.elements().collect(),
        }
    }

    pub fn source(&self) -> &FiniteSemigroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteSemigroup {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `other ∘ self`: first apply `self`, then `other`.
    pub fn then(&self, other: &Homomorphism) -> Result<Homomorphism> {
        if self.target != other.source {
            return Err(SemigroupError::ComposeMismatch);
        }
        Ok(Homomorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            map: self.map.iter().map(|&a| other.map[a]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &b in &self.map {
            hit[b] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        self.map.iter().all(|&b| !std::mem::replace(&mut hit[b], true))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    /// Sorted image of the map.
    pub fn image(&self) -> Vec<usize> {
        let mut image = self.map.clone();
        image.sort_unstable();
        image.dedup();
        image
    }
}

/// Checks arity, ranges and `map[ab] = map[a]map[b]` for every pair.
pub fn check_map(source: &FiniteSemigroup, target: &FiniteSemigroup, map: &[usize]) -> Result<()> {
    if map.len() != source.order() {
        return Err(SemigroupError::MapLength {
            len: map.len(),
            order: source.order(),
        });
    }
    if let Some((at, &value)) = map.iter().enumerate().find(|(_, &v)| v >= target.order()) {
        return Err(SemigroupError::MapOutOfRange {
            at,
            value,
            order: target.order(),
        });
    }
    for a in source.elements() {
        for b in source.elements() {
            if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                return Err(SemigroupError::NotHomomorphism { a, b });
            }
        }
    }
    Ok(())
}
