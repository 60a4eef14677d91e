use super::{multiply, ProductElement, ProductError, Result};
use crate::lr_system::{AxiomViolation, SystemData};
use crate::semigroup::{rees_truncated_free, FiniteSemigroup, DEFAULT_TABLE_CAP};

/// Three elements of `H^[𝒮]` whose two bracketings differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonAssociativityWitness {
    /// Words of length at most 3 over `k_a + k_b + k_c` letters, with zero.
    pub h: FiniteSemigroup,
    pub violation: AxiomViolation,
    pub x: ProductElement,
    pub y: ProductElement,
    pub z: ProductElement,
    /// `(x ⋆ y) ⋆ z`
    pub left: ProductElement,
    /// `x ⋆ (y ⋆ z)`
    pub right: ProductElement,
}

impl NonAssociativityWitness {
    /// The coordinate where the bracketings are compared.
    pub fn index(&self) -> usize {
        self.violation.index
    }
}

/// For a candidate failing an axiom at `(a, b, c, i)`: every coordinate of
/// `x`, `y`, `z` gets its own generator, so coordinate `i` of each bracketing
/// is a length-3 word that records which indices the maps selected.
pub fn nonassociativity_witness(candidate: &SystemData) -> Result<NonAssociativityWitness> {
    let violation = candidate.first_violation().ok_or(ProductError::NoViolationRecorded)?;
    let AxiomViolation { a, b, c, .. } = violation;
    let (ka, kb, kc) = (
        candidate.index_size(a),
        candidate.index_size(b),
        candidate.index_size(c),
    );
    let h = rees_truncated_free(ka + kb + kc, 3, DEFAULT_TABLE_CAP)?;
    // generator g has id g in the truncated free semigroup
    let x = ProductElement::new(a, (0..ka).collect());
    let y = ProductElement::new(b, (ka..ka + kb).collect());
    let z = ProductElement::new(c, (ka + kb..ka + kb + kc).collect());
    let left = multiply(candidate, &h, &multiply(candidate, &h, &x, &y)?, &z)?;
    let right = multiply(candidate, &h, &x, &multiply(candidate, &h, &y, &z)?)?;
    debug_assert_ne!(left.x[violation.index], right.x[violation.index]);
    Ok(NonAssociativityWitness {
        h,
        violation,
        x,
        y,
        z,
        left,
        right,
    })
}
