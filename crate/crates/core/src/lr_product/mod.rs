//! The λρ-product `H^[𝒮]`: the disjoint union of `H^{I[a]}` over `a ∈ S`
//! with `(x,a) ⋆ (y,b) = ((x∘λ[a,b])·(y∘ρ[a,b]), ab)`.
//!
//! Elements are enumerated by skeleton id, then by tuple in little-endian
//! order over the ids of `H` (coordinate 0 least significant).

mod checks;
mod witness;

use std::fmt;

use thiserror::Error;

use crate::lr_system::{LrSystem, SystemData, SystemError, Transformation};
use crate::semigroup::{FiniteSemigroup, Homomorphism, SemigroupError, DEFAULT_TABLE_CAP};
use crate::tuple;

pub use checks::{
    group_preservation_check, powerset_product_check, BooleanOp, GroupPreservationEntry, GroupPreservationReport,
};
pub use witness::{nonassociativity_witness, NonAssociativityWitness};

/// Products up to this order are re-checked for associativity after building.
pub const ASSOCIATIVITY_RECHECK_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("malformed product element: {0}")]
    Malformed(String),
    #[error("product of order {order} exceeds the cap of {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("candidate satisfies all axioms; there is no violation to witness")]
    NoViolationRecorded,
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

pub type Result<T, E = ProductError> = std::result::Result<T, E>;

/// `(x, a)` with `x ∈ H^{I[a]}` given as a tuple of `H` ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductElement {
    pub a: usize,
    pub x: Vec<usize>,
}

impl ProductElement {
    pub fn new(a: usize, x: Vec<usize>) -> Self {
        Self { a, x }
    }
}

impl fmt::Display for ProductElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.a)?;
        for (i, h) in self.x.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        f.write_str("]")
    }
}

fn check_element(sys: &SystemData, h: &FiniteSemigroup, p: &ProductElement) -> Result<()> {
    if p.a >= sys.skeleton().order() {
        return Err(ProductError::Malformed(format!(
            "skeleton part {} outside 0..{}",
            p.a,
            sys.skeleton().order()
        )));
    }
    if p.x.len() != sys.index_size(p.a) {
        return Err(ProductError::Malformed(format!(
            "tuple of length {} at skeleton element {} with |I| = {}",
            p.x.len(),
            p.a,
            sys.index_size(p.a)
        )));
    }
    if let Some(&v) = p.x.iter().find(|&&v| v >= h.order()) {
        return Err(ProductError::Malformed(format!("entry {v} outside 0..{}", h.order())));
    }
    Ok(())
}

/// Coordinate `i` of the result is `x[λ[a,b](i)] · y[ρ[a,b](i)]`.
///
/// Works on raw [`SystemData`], so it also evaluates candidates that fail the
/// axioms.
pub fn multiply(
    sys: &SystemData,
    h: &FiniteSemigroup,
    p: &ProductElement,
    q: &ProductElement,
) -> Result<ProductElement> {
    check_element(sys, h, p)?;
    check_element(sys, h, q)?;
    Ok(multiply_unchecked(sys, h, p, q))
}

fn multiply_unchecked(sys: &SystemData, h: &FiniteSemigroup, p: &ProductElement, q: &ProductElement) -> ProductElement {
    let (lam, rho) = (sys.lambda(p.a, q.a), sys.rho(p.a, q.a));
    let x = lam.iter().zip(rho).map(|(&l, &r)| h.mul(p.x[l], q.x[r])).collect();
    ProductElement::new(sys.skeleton().mul(p.a, q.a), x)
}

/// Maps between product elements and their ids.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Indexer {
    base: usize,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

impl Indexer {
    fn new(base: usize, sizes: &[usize], cap: usize) -> Result<Self> {
        let mut offsets = Vec::with_capacity(sizes.len() + 1);
        let mut total = 0usize;
        offsets.push(0);
        for &k in sizes {
            total = tuple::count(base, k)
                .and_then(|c| total.checked_add(c))
                .filter(|&t| t <= cap)
                .ok_or(ProductError::CapExceeded {
                    order: exact_order(base, sizes).unwrap_or(usize::MAX),
                    cap,
                })?;
            offsets.push(total);
        }
        Ok(Self {
            base,
            sizes: sizes.to_vec(),
            offsets,
        })
    }

    fn order(&self) -> usize {
        *self.offsets.last().expect("offsets are nonempty")
    }

    fn skeleton_of(&self, id: usize) -> usize {
        self.offsets.partition_point(|&o| o <= id) - 1
    }

    fn element(&self, id: usize) -> ProductElement {
        let a = self.skeleton_of(id);
        ProductElement::new(a, tuple::decode(id - self.offsets[a], self.base, self.sizes[a]))
    }

    fn index_of(&self, p: &ProductElement) -> usize {
        self.offsets[p.a] + tuple::encode(&p.x, self.base)
    }
}

fn exact_order(base: usize, sizes: &[usize]) -> Option<usize> {
    sizes
        .iter()
        .try_fold(0usize, |acc, &k| acc.checked_add(tuple::count(base, k)?))
}

/// `Σ_a |H|^{k_a}`, or `None` on overflow.
pub fn product_order(sys: &SystemData, h: &FiniteSemigroup) -> Option<usize> {
    exact_order(h.order(), sys.index_sizes())
}

/// A built λρ-product with its Cayley table and element labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSemigroup {
    base: FiniteSemigroup,
    system: LrSystem,
    indexer: Indexer,
    table: FiniteSemigroup,
    full_labels: Vec<String>,
    compact_labels: Option<Vec<String>>,
}

impl ProductSemigroup {
    pub fn base(&self) -> &FiniteSemigroup {
        &self.base
    }

    pub fn system(&self) -> &LrSystem {
        &self.system
    }

    /// The Cayley table; its labels are the compact ones when available.
    pub fn table(&self) -> &FiniteSemigroup {
        &self.table
    }

    pub fn into_table(self) -> FiniteSemigroup {
        self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn element(&self, id: usize) -> ProductElement {
        self.indexer.element(id)
    }

    pub fn elements(&self) -> impl Iterator<Item = ProductElement> + '_ {
        (0..self.order()).map(|id| self.element(id))
    }

    pub fn index_of(&self, p: &ProductElement) -> Result<usize> {
        check_element(&self.system, &self.base, p)?;
        Ok(self.indexer.index_of(p))
    }

    pub fn skeleton_of(&self, id: usize) -> usize {
        self.indexer.skeleton_of(id)
    }

    /// First id of each skeleton block, followed by the order.
    pub fn block_offsets(&self) -> &[usize] {
        &self.indexer.offsets
    }

    /// Labels of the form `a:[h0,...]`.
    pub fn full_labels(&self) -> &[String] {
        &self.full_labels
    }

    /// Digit strings `x(0)x(1)...`, present when `|H| <= 10` and distinct
    /// skeleton elements have distinct index sizes. The empty tuple is `ε`.
    pub fn compact_labels(&self) -> Option<&[String]> {
        self.compact_labels.as_deref()
    }

    pub fn label(&self, id: usize) -> &str {
        match &self.compact_labels {
            Some(c) => &c[id],
            None => &self.full_labels[id],
        }
    }

    /// Looks an element up by compact or full label.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.compact_labels
            .as_ref()
            .and_then(|c| c.iter().position(|l| l == label))
            .or_else(|| self.full_labels.iter().position(|l| l == label))
    }

    pub fn mul(&self, p: usize, q: usize) -> usize {
        self.table.mul(p, q)
    }

    /// The two-sided identity, if there is one.
    pub fn unit(&self) -> Option<ProductElement> {
        self.table.identity_of().map(|id| self.element(id))
    }
}

fn compact_labels(indexer: &Indexer, base: usize) -> Option<Vec<String>> {
    if base > 10 {
        return None;
    }
    let mut seen = std::collections::HashSet::new();
    if !indexer.sizes.iter().all(|&k| seen.insert(k)) {
        return None;
    }
    Some(
        (0..indexer.order())
            .map(|id| {
                let p = indexer.element(id);
                if p.x.is_empty() {
                    "ε".to_string()
                } else {
                    p.x.iter().map(|d| char::from(b'0' + *d as u8)).collect()
                }
            })
            .collect(),
    )
}

/// Builds the full table of `H^[𝒮]`.
///
/// Fails with `CapExceeded` when `Σ_a |H|^{k_a} > cap`. Products of order at
/// most [`ASSOCIATIVITY_RECHECK_LIMIT`] are re-checked for associativity.
pub fn build_product(system: &LrSystem, h: &FiniteSemigroup, cap: usize) -> Result<ProductSemigroup> {
    let indexer = Indexer::new(h.order(), system.index_sizes(), cap)?;
    let n = indexer.order();
    let elements: Vec<ProductElement> = (0..n).map(|id| indexer.element(id)).collect();
    let powers: Vec<usize> = {
        let max_k = system.index_sizes().iter().copied().max().unwrap_or(0);
        let mut p = vec![1usize; max_k + 1];
        for i in 1..=max_k {
            p[i] = p[i - 1] * h.order();
        }
        p
    };
    let s = system.skeleton();
    let mut table = Vec::with_capacity(n * n);
    for p in &elements {
        for q in &elements {
            let (lam, rho) = (system.lambda(p.a, q.a), system.rho(p.a, q.a));
            let mut id = indexer.offsets[s.mul(p.a, q.a)];
            for i in 0..lam.len() {
                id += h.mul(p.x[lam[i]], q.x[rho[i]]) * powers[i];
            }
            table.push(id);
        }
    }
    let full_labels: Vec<String> = elements.iter().map(ToString::to_string).collect();
    let compact = compact_labels(&indexer, h.order());
    let labels = compact.clone().unwrap_or_else(|| full_labels.clone());
    let table = FiniteSemigroup::from_flat(n, table, Some(labels))?;
    if n <= ASSOCIATIVITY_RECHECK_LIMIT {
        if let Some((a, b, c)) = table.associativity_violation() {
            return Err(SemigroupError::NotAssociative { a, b, c }.into());
        }
    }
    Ok(ProductSemigroup {
        base: h.clone(),
        system: system.clone(),
        indexer,
        table,
        full_labels,
        compact_labels: compact,
    })
}

/// The identity of `H^[𝒮]`.
///
/// For a unital system and a monoid `H` this is `(constant 1, 1)`, checked to
/// be a two-sided identity; otherwise whatever the built table has, if any.
pub fn unit_of_product(system: &LrSystem, h: &FiniteSemigroup, cap: usize) -> Result<Option<ProductElement>> {
    let product = build_product(system, h, cap)?;
    if let (Some(e), true) = (h.identity_of(), system.is_unital()) {
        let one = system.skeleton().identity_of().expect("unital skeleton is a monoid");
        let candidate = ProductElement::new(one, vec![e; system.index_size(one)]);
        let id = product.index_of(&candidate)?;
        let neutral = (0..product.order()).all(|q| product.mul(id, q) == q && product.mul(q, id) == q);
        assert!(neutral, "constant unit of a unital product must be neutral");
        return Ok(Some(candidate));
    }
    Ok(product.unit())
}

/// `H^t: H^[𝒮] -> H^[𝒮']` for `t: 𝒮' -> 𝒮`, `(x, a) ↦ (x ∘ t[a], h(a))`,
/// between already built products. `from` must be the product over the
/// target of `t` and `to` the product over its source.
pub fn induced_map(t: &Transformation, from: &ProductSemigroup, to: &ProductSemigroup) -> Result<Homomorphism> {
    if from.system() != t.target() || to.system() != t.source() || from.base() != to.base() {
        return Err(ProductError::System(SystemError::Mismatch(
            "products do not match the transformation".into(),
        )));
    }
    let map = from
        .elements()
        .map(|p| {
            let x = t.index_map(p.a).iter().map(|&j| p.x[j]).collect();
            to.indexer.index_of(&ProductElement::new(t.hom().apply(p.a), x))
        })
        .collect();
    Ok(Homomorphism::new(from.table().clone(), to.table().clone(), map)?)
}

/// Builds both products and returns `H^t`.
pub fn induced_hom(t: &Transformation, h: &FiniteSemigroup, cap: usize) -> Result<Homomorphism> {
    let from = build_product(t.target(), h, cap)?;
    let to = build_product(t.source(), h, cap)?;
    induced_map(t, &from, &to)
}

/// [`build_product`] with the default cap.
pub fn build_product_default(system: &LrSystem, h: &FiniteSemigroup) -> Result<ProductSemigroup> {
    build_product(system, h, DEFAULT_TABLE_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{find_isomorphism, NamedSemigroup};

    fn named(s: &str) -> FiniteSemigroup {
        s.parse::<NamedSemigroup>().unwrap().build().unwrap()
    }

    #[test]
    fn multiply_examples() {
        let z2 = named("cyclic(2)");
        let ff = LrSystem::flipflop_example();
        let r = multiply(
            &ff,
            &z2,
            &ProductElement::new(1, vec![0, 1]),
            &ProductElement::new(1, vec![1, 1]),
        )
        .unwrap();
        assert_eq!(r, ProductElement::new(1, vec![1, 0]));

        let lz = LrSystem::lzero_example();
        let r = multiply(
            &lz,
            &z2,
            &ProductElement::new(0, vec![0, 1]),
            &ProductElement::new(0, vec![1, 1]),
        )
        .unwrap();
        assert_eq!(r, ProductElement::new(0, vec![1, 0]));

        let empty = LrSystem::empty(&named("semilattice2"));
        let r = multiply(
            &empty,
            &z2,
            &ProductElement::new(0, vec![]),
            &ProductElement::new(1, vec![]),
        )
        .unwrap();
        assert_eq!(r, ProductElement::new(1, vec![]));
    }

    #[test]
    fn multiply_rejects_malformed() {
        let z2 = named("cyclic(2)");
        let lz = LrSystem::lzero_example();
        let ok = ProductElement::new(0, vec![0, 0]);
        for bad in [
            ProductElement::new(1, vec![0, 0]),
            ProductElement::new(0, vec![0]),
            ProductElement::new(0, vec![0, 2]),
        ] {
            assert!(matches!(multiply(&lz, &z2, &bad, &ok), Err(ProductError::Malformed(_))));
        }
    }

    #[test]
    fn labels_and_indexing() {
        let p = build_product_default(&LrSystem::flipflop_example(), &named("cyclic(2)")).unwrap();
        assert_eq!(p.compact_labels().unwrap(), &["0", "1", "00", "10", "01", "11"]);
        assert_eq!(p.full_labels()[4], "1:[0,1]");
        assert_eq!(p.skeleton_of(1), 0);
        assert_eq!(p.skeleton_of(2), 1);
        for id in 0..p.order() {
            assert_eq!(p.index_of(&p.element(id)).unwrap(), id);
        }
        assert_eq!(p.find_label("01"), Some(4));
        assert_eq!(p.find_label("1:[0,1]"), Some(4));

        // equal index sizes over two skeleton elements: no compact labels
        let p = build_product_default(&LrSystem::singleton(&named("cyclic(2)")), &named("cyclic(2)")).unwrap();
        assert!(p.compact_labels().is_none());
        assert_eq!(p.label(3), "1:[1]");
    }

    #[test]
    fn cap_is_enforced() {
        let lz = LrSystem::lzero_example();
        assert!(matches!(
            build_product(&lz, &named("cyclic(3)"), 8),
            Err(ProductError::CapExceeded { order: 9, cap: 8 })
        ));
        assert!(build_product(&lz, &named("cyclic(3)"), 9).is_ok());
    }

    #[test]
    fn product_of_empty_system_is_skeleton() {
        let s = named("flip_flop_left");
        let p = build_product_default(&LrSystem::empty(&s), &named("cyclic(3)")).unwrap();
        assert_eq!(p.order(), 3);
        assert_eq!(p.table().rows(), s.rows());
        assert_eq!(p.label(0), "0:[]");
    }

    #[test]
    fn singleton_system_gives_direct_product() {
        let (h, s) = (named("cyclic(2)"), named("left_zero(2)"));
        let p = build_product_default(&LrSystem::singleton(&s), &h).unwrap();
        let direct = h.direct_product(&s, DEFAULT_TABLE_CAP).unwrap();
        assert!(find_isomorphism(p.table(), &direct).unwrap().is_some());
    }

    #[test]
    fn units() {
        let z2 = named("cyclic(2)");
        let unit = unit_of_product(&LrSystem::flipflop_example(), &z2, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(unit, Some(ProductElement::new(0, vec![0])));
        assert_eq!(
            unit_of_product(&LrSystem::lzero_example(), &z2, DEFAULT_TABLE_CAP).unwrap(),
            None
        );
        let unit = unit_of_product(&LrSystem::singleton(&z2), &z2, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(unit, Some(ProductElement::new(0, vec![0])));
    }

    #[test]
    fn induced_homs() {
        let h = named("cyclic(2)");
        let ff = LrSystem::flipflop_example();
        let id = induced_hom(&Transformation::identity(&ff), &h, DEFAULT_TABLE_CAP).unwrap();
        assert!(id.map().iter().enumerate().all(|(i, &j)| i == j));

        let ext = ff.unital_extension();
        let (_, t) = ext.restrict(&[0, 1]).unwrap();
        let inc = induced_hom(&t, &h, DEFAULT_TABLE_CAP).unwrap();
        assert!(inc.is_injective());
        assert_eq!(inc.source().order(), 6);
        assert_eq!(inc.target().order(), 8);
    }
}
