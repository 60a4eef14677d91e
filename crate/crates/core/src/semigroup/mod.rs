//! Finite semigroups given by Cayley tables.
//!
//! Elements are the ids `0..order`. Labels are carried along for display only;
//! equality of two semigroups compares order and table and ignores labels.

mod congruence;
mod homomorphism;
mod named;
mod search;
mod wreath;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use congruence::Congruence;
pub use homomorphism::Homomorphism;
pub use named::{rees_truncated_free, NamedSemigroup, DEFAULT_TABLE_CAP};
pub use search::{
    divides, find_isomorphism, find_isomorphism_with_cap, DivisionCaps, DivisionWitness, DEFAULT_ISO_CAP,
};
pub use wreath::{two_sided_wreath_product, wreath_product};

/// Errors raised while building or analysing finite semigroups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("a semigroup must have at least one element")]
    Empty,
    #[error("table has {rows} rows, expected {expected}")]
    RowCount { rows: usize, expected: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("entry table[{row}][{col}] = {value} is out of range for order {order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("{labels} labels given for {order} elements")]
    LabelCount { labels: usize, order: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("partition is invalid: {0}")]
    InvalidPartition(String),
    #[error("partition is not a congruence: {a}~{a2} and {b}~{b2} but {a}*{b} and {a2}*{b2} are in different classes")]
    NotCompatible { a: usize, a2: usize, b: usize, b2: usize },
    #[error("map is not a homomorphism: f({a}*{b}) != f({a})*f({b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("map has {len} entries for a source of order {order}")]
    MapLength { len: usize, order: usize },
    #[error("map value {value} at {at} is out of range for target order {order}")]
    MapOutOfRange { at: usize, value: usize, order: usize },
    #[error("homomorphisms do not compose: middle semigroups differ")]
    ComposeMismatch,
    #[error("order {order} exceeds the cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("subset is not closed under the product: {a}*{b} = {product} is missing")]
    NotClosed { a: usize, b: usize, product: usize },
    #[error("element {0} is out of range")]
    Element(usize),
    #[error("invalid action table: {0}")]
    InvalidAction(String),
    #[error("map is not surjective")]
    NotSurjective,
    #[error("unknown semigroup name `{0}`")]
    UnknownName(String),
}

pub type Result<T, E = SemigroupError> = std::result::Result<T, E>;

/// A finite semigroup stored as a dense row-major Cayley table.
#[derive(Clone)]
pub struct FiniteSemigroup {
    order: usize,
    table: Arc<[usize]>,
    labels: Option<Arc<[String]>>,
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteSemigroup {}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup")
            .field("order", &self.order)
            .field("table", &self.rows())
            .finish()
    }
}

impl FiniteSemigroup {
    /// Validates a Cayley table and returns the semigroup it defines.
    ///
    /// The associativity scan reports the lexicographically least violating
    /// triple.
    pub fn from_table(order: usize, table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        if table.len() != order {
            return Err(SemigroupError::RowCount {
                rows: table.len(),
                expected: order,
            });
        }
        let mut flat = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(SemigroupError::RowLength {
                    row,
                    len: entries.len(),
                    expected: order,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(SemigroupError::OutOfRange { row, col, value, order });
                }
                flat.push(value);
            }
        }
        let semigroup = Self::from_flat(order, flat, labels)?;
        if let Some((a, b, c)) = semigroup.associativity_violation() {
            return Err(SemigroupError::NotAssociative { a, b, c });
        }
        Ok(semigroup)
    }

    /// Builds a semigroup from a flat table whose associativity is guaranteed
    /// by construction. Entries are range-checked, associativity is not.
    pub(crate) fn from_flat(order: usize, table: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        if order == 0 {
            return Err(SemigroupError::Empty);
        }
        debug_assert_eq!(table.len(), order * order);
        if let Some(pos) = table.iter().position(|&v| v >= order) {
            return Err(SemigroupError::OutOfRange {
                row: pos / order,
                col: pos % order,
                value: table[pos],
                order,
            });
        }
        if let Some(labels) = &labels {
            if labels.len() != order {
                return Err(SemigroupError::LabelCount {
                    labels: labels.len(),
                    order,
                });
            }
        }
        Ok(Self {
            order,
            table: table.into(),
            labels: labels.map(Into::into),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn row(&self, a: usize) -> &[usize] {
        &self.table[a * self.order..(a + 1) * self.order]
    }

    /// The table as nested rows, the layout used by the JSON format.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.elements().map(|a| self.row(a).to_vec()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label of an element: the stored label, or the decimal id.
    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(labels) => labels[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(SemigroupError::LabelCount {
                labels: labels.len(),
                order: self.order,
            });
        }
        self.labels = Some(labels.into());
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    /// Lexicographically least triple `(a, b, c)` with `(ab)c != a(bc)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        for a in self.elements() {
            for b in self.elements() {
                let ab = self.mul(a, b);
                for c in self.elements() {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    /// The two-sided identity, if there is one. There is at most one.
    pub fn identity_of(&self) -> Option<usize> {
        self.elements()
            .find(|&e| self.elements().all(|a| self.mul(e, a) == a && self.mul(a, e) == a))
    }

    pub fn is_monoid(&self) -> bool {
        self.identity_of().is_some()
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.is_idempotent(a)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Two-sided inverse of `a` with respect to the identity, if any.
    pub fn inverse_of(&self, a: usize) -> Option<usize> {
        let e = self.identity_of()?;
        self.elements().find(|&b| self.mul(a, b) == e && self.mul(b, a) == e)
    }

    /// Brute-force group check: an identity exists and every element has a
    /// two-sided inverse.
    pub fn is_group(&self) -> bool {
        let Some(e) = self.identity_of() else {
            return false;
        };
        self.elements()
            .all(|a| self.elements().any(|b| self.mul(a, b) == e && self.mul(b, a) == e))
    }

    /// Index and period of the monogenic subsemigroup generated by `a`.
    pub fn index_period(&self, a: usize) -> (usize, usize) {
        let mut seen = vec![usize::MAX; self.order];
        let mut power = a;
        let mut k = 1;
        loop {
            if seen[power] != usize::MAX {
                let index = seen[power];
                return (index, k - index);
            }
            seen[power] = k;
            power = self.mul(power, a);
            k += 1;
        }
    }

    /// Whether `subset` is closed under the product; on failure returns the
    /// first offending pair.
    pub fn check_closed(&self, subset: &[usize]) -> Result<()> {
        let mut member = vec![false; self.order];
        for &s in subset {
            if s >= self.order {
                return Err(SemigroupError::Element(s));
            }
            member[s] = true;
        }
        for &a in subset {
            for &b in subset {
                let product = self.mul(a, b);
                if !member[product] {
                    return Err(SemigroupError::NotClosed { a, b, product });
                }
            }
        }
        Ok(())
    }

    /// The subsemigroup on a closed subset, re-indexed by ascending original
    /// id, together with the list of original ids.
    pub fn subsemigroup(&self, subset: &[usize]) -> Result<(FiniteSemigroup, Vec<usize>)> {
        let elements: Vec<usize> = subset.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if elements.is_empty() {
            return Err(SemigroupError::Empty);
        }
        self.check_closed(&elements)?;
        let mut position = vec![usize::MAX; self.order];
        for (i, &s) in elements.iter().enumerate() {
            position[s] = i;
        }
        let m = elements.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &elements {
            for &b in &elements {
                table.push(position[self.mul(a, b)]);
            }
        }
        let labels = elements.iter().map(|&s| self.label(s)).collect();
        Ok((Self::from_flat(m, table, Some(labels))?, elements))
    }

    /// Closure of a set of generators under the product.
    pub fn closure(&self, generators: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        let mut elements = Vec::new();
        for &g in generators {
            if !member[g] {
                member[g] = true;
                elements.push(g);
            }
        }
        let mut i = 0;
        while i < elements.len() {
            let a = elements[i];
            let mut j = 0;
            while j <= i {
                let b = elements[j];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !member[p] {
                        member[p] = true;
                        elements.push(p);
                    }
                }
                j += 1;
            }
            i += 1;
        }
        elements.sort_unstable();
        elements
    }

    /// `S` with a new identity adjoined as element `order`, even when `S`
    /// already has one.
    pub fn adjoin_unit(&self) -> FiniteSemigroup {
        let n = self.order;
        let m = n + 1;
        let mut table = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                table.push(if a == n {
                    b
                } else if b == n {
                    a
                } else {
                    self.mul(a, b)
                });
            }
        }
        let mut labels: Vec<String> = self.elements().map(|a| self.label(a)).collect();
        let unit_label = if labels.iter().any(|l| l == "1") {
            "1*".to_string()
        } else {
            "1".to_string()
        };
        labels.push(unit_label);
        Self::from_flat(m, table, Some(labels)).expect("adjoined table is in range")
    }

    /// Componentwise product; the pair `(s, t)` has id `s * |T| + t`.
    pub fn direct_product(&self, other: &FiniteSemigroup, cap: usize) -> Result<FiniteSemigroup> {
        let order = self
            .order
            .checked_mul(other.order)
            .filter(|&o| o <= cap)
            .ok_or(SemigroupError::CapExceeded {
                order: self.order.saturating_mul(other.order),
                cap,
            })?;
        let m = other.order;
        let mut table = Vec::with_capacity(order * order);
        for p in 0..order {
            for q in 0..order {
                let s = self.mul(p / m, q / m);
                let t = other.mul(p % m, q % m);
                table.push(s * m + t);
            }
        }
        let labels = (0..order)
            .map(|p| format!("({},{})", self.label(p / m), other.label(p % m)))
            .collect();
        Self::from_flat(order, table, Some(labels))
    }
}
