use super::{FiniteSemigroup, Homomorphism, Result, SemigroupError};

/// A congruence on a finite semigroup, stored as a class id per element.
///
/// Class ids are canonical: classes are numbered by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Congruence {
    parent: FiniteSemigroup,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl Congruence {
    /// Validates a partition given as explicit classes.
    pub fn from_partition(s: &FiniteSemigroup, classes: &[Vec<usize>]) -> Result<Self> {
        let n = s.order();
        let mut class_of = vec![usize::MAX; n];
        for (k, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(SemigroupError::InvalidPartition(format!("class {k} is empty")));
            }
            for &a in class {
                if a >= n {
                    return Err(SemigroupError::InvalidPartition(format!("element {a} is out of range")));
                }
                if class_of[a] != usize::MAX {
                    return Err(SemigroupError::InvalidPartition(format!(
                        "element {a} appears in more than one class"
                    )));
                }
                class_of[a] = k;
            }
        }
        if let Some(a) = class_of.iter().position(|&c| c == usize::MAX) {
            return Err(SemigroupError::InvalidPartition(format!("element {a} is not covered")));
        }
        Self::from_class_ids(s, &class_of)
    }

    /// Validates a partition given as a class label per element.
    pub fn from_class_ids(s: &FiniteSemigroup, ids: &[usize]) -> Result<Self> {
        let n = s.order();
        if ids.len() != n {
            return Err(SemigroupError::InvalidPartition(format!(
                "{} class ids for {} elements",
                ids.len(),
                n
            )));
        }
        // renumber by smallest member
        let mut renumber = std::collections::HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_of = vec![0; n];
        for a in 0..n {
            let k = *renumber.entry(ids[a]).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[k].push(a);
            class_of[a] = k;
        }
        let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
        for a in 0..n {
            for b in 0..n {
                let (ra, rb) = (reps[class_of[a]], reps[class_of[b]]);
                if class_of[s.mul(a, b)] != class_of[s.mul(ra, rb)] {
                    return Err(SemigroupError::NotCompatible { a, a2: ra, b, b2: rb });
                }
            }
        }
        Ok(Self {
            parent: s.clone(),
            class_of,
            classes,
        })
    }

    /// The identity congruence.
    pub fn identity(s: &FiniteSemigroup) -> Self {
        Self {
            parent: s.clone(),
            class_of: s.elements().collect(),
            classes: s.elements().map(|a| vec![a]).collect(),
        }
    }

    pub fn parent(&self) -> &FiniteSemigroup {
        &self.parent
    }

    pub fn class_of(&self, a: usize) -> usize {
        self.class_of[a]
    }

    pub fn class_ids(&self) -> &[usize] {
        &self.class_of
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// The quotient semigroup on class ids and the canonical surjection.
    ///
    /// The surjection is re-checked as a homomorphism after construction.
    pub fn quotient(&self) -> Result<(FiniteSemigroup, Homomorphism)> {
        let s = &self.parent;
        let m = self.classes.len();
        let mut table = Vec::with_capacity(m * m);
        for p in &self.classes {
            for q in &self.classes {
                table.push(self.class_of[s.mul(p[0], q[0])]);
            }
        }
        let labels = self
            .classes
            .iter()
            .map(|c| {
                let members: Vec<String> = c.iter().map(|&a| s.label(a)).collect();
                format!("{{{}}}", members.join(","))
            })
            .collect();
        let q = FiniteSemigroup::from_flat(m, table, Some(labels))?;
        let hom = Homomorphism::new(s.clone(), q.clone(), self.class_of.clone())?;
        Ok((q, hom))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteSemigroup {
        FiniteSemigroup::from_table(2, vec![vec![0, 1], vec![1, 0]], None).unwrap()
    }

    #[test]
    fn identity_partition_gives_same_semigroup() {
        let s = z2();
        let c = Congruence::from_partition(&s, &[vec![0], vec![1]]).unwrap();
        let (q, hom) = c.quotient().unwrap();
        assert_eq!(q, s);
        assert_eq!(hom.map(), &[0, 1]);
        assert_eq!(Congruence::identity(&s), c);
    }

    #[test]
    fn rejects_bad_partitions() {
        let s = z2();
        assert!(matches!(
            Congruence::from_partition(&s, &[vec![0]]),
            Err(SemigroupError::InvalidPartition(_))
        ));
        assert!(matches!(
            Congruence::from_partition(&s, &[vec![0, 1], vec![1]]),
            Err(SemigroupError::InvalidPartition(_))
        ));
    }

    #[test]
    fn incompatible_partition_reports_pairs() {
        // Z3 with {0,1},{2}: 1+1 = 2 but 0+0 = 0.
        let rows = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let z3 = FiniteSemigroup::from_table(3, rows, None).unwrap();
        let err = Congruence::from_partition(&z3, &[vec![0, 1], vec![2]]).unwrap_err();
        assert!(matches!(err, SemigroupError::NotCompatible { .. }));
    }

    #[test]
    fn class_ids_are_canonical() {
        let rows = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        let z4 = FiniteSemigroup::from_table(4, rows, None).unwrap();
        let c = Congruence::from_class_ids(&z4, &[7, 3, 7, 3]).unwrap();
        assert_eq!(c.class_ids(), &[0, 1, 0, 1]);
        let (q, _) = c.quotient().unwrap();
        assert_eq!(q.rows(), vec![vec![0, 1], vec![1, 0]]);
    }
}
