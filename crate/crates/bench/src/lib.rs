//! Fixtures shared by the benchmarks.

use lrprod::{FiniteSemigroup, LrSystem, NamedSemigroup};

pub fn named(n: NamedSemigroup) -> FiniteSemigroup {
    n.build().expect("built-in semigroup")
}

/// `Z_n` acting on itself by translation: `|H|^n` elements per block.
pub fn regular_action(n: usize) -> LrSystem {
    let zn = named(NamedSemigroup::Cyclic(n));
    let act: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|a| (x + a) % n).collect()).collect();
    LrSystem::left_action(&zn, n, &act).expect("translation is an action")
}
