use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{build_product, ProductError, Result};
use crate::lr_system::LrSystem;
use crate::semigroup::FiniteSemigroup;

/// A semigroup operation on the two-element Boolean algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BooleanOp {
    And,
    Or,
    Xor,
    LeftProjection,
}

impl BooleanOp {
    pub const ALL: [BooleanOp; 4] = [BooleanOp::And, BooleanOp::Or, BooleanOp::Xor, BooleanOp::LeftProjection];

    pub fn apply(self, p: bool, q: bool) -> bool {
        match self {
            BooleanOp::And => p && q,
            BooleanOp::Or => p || q,
            BooleanOp::Xor => p != q,
            BooleanOp::LeftProjection => p,
        }
    }

    pub fn table(self) -> FiniteSemigroup {
        let table = [(false, false), (false, true), (true, false), (true, true)]
            .iter()
            .map(|&(p, q)| usize::from(self.apply(p, q)))
            .collect();
        FiniteSemigroup::from_flat(2, table, Some(vec!["0".into(), "1".into()])).expect("two-element table")
    }

    fn combine(self, u: &BTreeSet<usize>, w: &BTreeSet<usize>) -> BTreeSet<usize> {
        match self {
            BooleanOp::And => u.intersection(w).copied().collect(),
            BooleanOp::Or => u.union(w).copied().collect(),
            BooleanOp::Xor => u.symmetric_difference(w).copied().collect(),
            BooleanOp::LeftProjection => u.clone(),
        }
    }
}

impl fmt::Display for BooleanOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BooleanOp::And => "and",
            BooleanOp::Or => "or",
            BooleanOp::Xor => "xor",
            BooleanOp::LeftProjection => "left",
        })
    }
}

impl FromStr for BooleanOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "and" => Ok(BooleanOp::And),
            "or" => Ok(BooleanOp::Or),
            "xor" => Ok(BooleanOp::Xor),
            "left" | "left-projection" => Ok(BooleanOp::LeftProjection),
            _ => Err(format!("unknown boolean operation '{s}'")),
        }
    }
}

fn preimage(map: &[usize], set: &BTreeSet<usize>) -> BTreeSet<usize> {
    (0..map.len()).filter(|i| set.contains(&map[*i])).collect()
}

/// Compares the table of `B^[𝒮]` with the subset formula
/// `(U,a) ⋆ (W,b) = (λ[a,b]⁻¹(U) ⋆ ρ[a,b]⁻¹(W), ab)` under characteristic
/// tuples, for every pair of elements.
pub fn powerset_product_check(system: &LrSystem, op: BooleanOp, cap: usize) -> Result<bool> {
    let product = build_product(system, &op.table(), cap)?;
    let elements: Vec<_> = product.elements().collect();
    let subsets: Vec<BTreeSet<usize>> = elements
        .iter()
        .map(|p| (0..p.x.len()).filter(|&i| p.x[i] == 1).collect())
        .collect();
    for (pi, p) in elements.iter().enumerate() {
        for (qi, q) in elements.iter().enumerate() {
            let u = preimage(system.lambda(p.a, q.a), &subsets[pi]);
            let w = preimage(system.rho(p.a, q.a), &subsets[qi]);
            let expected = op.combine(&u, &w);
            let got = &subsets[product.mul(pi, qi)];
            if &expected != got || elements[product.mul(pi, qi)].a != system.skeleton().mul(p.a, q.a) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPreservationEntry {
    pub base_order: usize,
    pub product_order: usize,
    pub is_group: bool,
    /// Trivial `H`: the product is the skeleton, so a group iff the skeleton
    /// is. Otherwise a group iff the skeleton is a group and the system is
    /// unital.
    pub expected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPreservationReport {
    pub skeleton_is_group: bool,
    pub unital: bool,
    pub entries: Vec<GroupPreservationEntry>,
}

impl GroupPreservationReport {
    /// The system is group-preserving on the pool.
    pub fn all_groups(&self) -> bool {
        self.entries.iter().all(|e| e.is_group)
    }

    pub fn consistent(&self) -> bool {
        self.entries.iter().all(|e| e.is_group == e.expected)
    }
}

/// Builds `H^[𝒮]` for every group `H` in `pool` and records whether it is a
/// group.
pub fn group_preservation_check(
    system: &LrSystem,
    pool: &[FiniteSemigroup],
    cap: usize,
) -> Result<GroupPreservationReport> {
    let skeleton_is_group = system.skeleton().is_group();
    let unital = system.is_unital();
    let mut entries = Vec::with_capacity(pool.len());
    for h in pool {
        if !h.is_group() {
            return Err(ProductError::Malformed(format!(
                "pool member of order {} is not a group",
                h.order()
            )));
        }
        let product = build_product(system, h, cap)?;
        entries.push(GroupPreservationEntry {
            base_order: h.order(),
            product_order: product.order(),
            is_group: product.table().is_group(),
            expected: skeleton_is_group && (unital || h.order() == 1),
        });
    }
    Ok(GroupPreservationReport {
        skeleton_is_group,
        unital,
        entries,
    })
}
