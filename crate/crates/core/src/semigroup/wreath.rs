//! Wreath products computed straight from action tables.
//!
//! Elements are enumerated like λρ-products over a constant index set: the
//! acting element ascending, then the coordinate tuple in little-endian order.

use super::{FiniteSemigroup, Result, SemigroupError, DEFAULT_TABLE_CAP};
use crate::tuple;

fn check_action(act: &[Vec<usize>], rows: usize, cols: usize, bound: usize) -> Result<()> {
    if act.len() != rows || act.iter().any(|r| r.len() != cols || r.iter().any(|&v| v >= bound)) {
        return Err(SemigroupError::InvalidAction("wrong shape or range".into()));
    }
    Ok(())
}

fn sizes(h: &FiniteSemigroup, points: usize, g: &FiniteSemigroup) -> Result<(usize, usize)> {
    let block = tuple::count(h.order(), points)
        .filter(|&b| b.saturating_mul(g.order()) <= DEFAULT_TABLE_CAP)
        .ok_or(SemigroupError::CapExceeded {
            order: usize::MAX,
            cap: DEFAULT_TABLE_CAP,
        })?;
    Ok((block, block * g.order()))
}

/// `H wr (X, G)` on `H^X × G` with `(f, x) * (g, y) = (f · (g ∘ (_·x)), xy)`.
///
/// `act[i][a]` is `i·a`, the action written on the right as `(i·a)·b = i·(ab)`.
pub fn wreath_product(
    h: &FiniteSemigroup,
    points: usize,
    act: &[Vec<usize>],
    g: &FiniteSemigroup,
) -> Result<FiniteSemigroup> {
    check_action(act, points, g.order(), points)?;
    let (block, order) = sizes(h, points, g)?;
    let mut table = Vec::with_capacity(order * order);
    for p in 0..order {
        let (x, f) = (p / block, tuple::decode(p % block, h.order(), points));
        for q in 0..order {
            let (y, k) = (q / block, tuple::decode(q % block, h.order(), points));
            let coords: Vec<usize> = (0..points).map(|i| h.mul(f[i], k[act[i][x]])).collect();
            table.push(g.mul(x, y) * block + tuple::encode(&coords, h.order()));
        }
    }
    FiniteSemigroup::from_flat(order, table, None)
}

/// Two-sided wreath product on `H^X × S` with
/// `(f, a) * (g, b) = (i ↦ f(i/b) · g(a\i), ab)`.
///
/// `left[a][i]` is `a\i` and `right[i][a]` is `i/a`.
pub fn two_sided_wreath_product(
    h: &FiniteSemigroup,
    points: usize,
    left: &[Vec<usize>],
    right: &[Vec<usize>],
    s: &FiniteSemigroup,
) -> Result<FiniteSemigroup> {
    check_action(left, s.order(), points, points)?;
    check_action(right, points, s.order(), points)?;
    let (block, order) = sizes(h, points, s)?;
    let mut table = Vec::with_capacity(order * order);
    for p in 0..order {
        let (a, f) = (p / block, tuple::decode(p % block, h.order(), points));
        for q in 0..order {
            let (b, k) = (q / block, tuple::decode(q % block, h.order(), points));
            let coords: Vec<usize> = (0..points).map(|i| h.mul(f[right[i][b]], k[left[a][i]])).collect();
            table.push(s.mul(a, b) * block + tuple::encode(&coords, h.order()));
        }
    }
    FiniteSemigroup::from_flat(order, table, None)
}
