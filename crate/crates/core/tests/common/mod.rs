//! Shared pools of semigroups and systems for the integration tests.
#![allow(dead_code)]

use std::sync::OnceLock;

use lrprod::{FiniteSemigroup, LrSystem, NamedSemigroup, SystemData};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn named(name: &str) -> FiniteSemigroup {
    name.parse::<NamedSemigroup>().unwrap().build().unwrap()
}

/// Every associative table of order 1 to 3.
pub fn small_semigroups() -> &'static [FiniteSemigroup] {
    static POOL: OnceLock<Vec<FiniteSemigroup>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::new();
        for n in 1..=3usize {
            let cells = n * n;
            let total = n.pow(cells as u32);
            for code in 0..total {
                let mut c = code;
                let table: Vec<Vec<usize>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                let v = c % n;
                                c /= n;
                                v
                            })
                            .collect()
                    })
                    .collect();
                if let Ok(s) = FiniteSemigroup::from_table(n, table, None) {
                    out.push(s);
                }
            }
        }
        out
    })
}

pub fn small_monoids() -> Vec<FiniteSemigroup> {
    small_semigroups().iter().filter(|s| s.is_monoid()).cloned().collect()
}

/// A few order-4 semigroups to go with the exhaustive small pool.
pub fn order_four() -> Vec<FiniteSemigroup> {
    let z2 = named("cyclic(2)");
    let two = named("semilattice2");
    vec![
        named("cyclic(4)"),
        named("left_zero(4)"),
        z2.direct_product(&z2, 64).unwrap(),
        z2.direct_product(&two, 64).unwrap(),
        two.direct_product(&two, 64).unwrap(),
        named("flip_flop_left").adjoin_unit(),
    ]
}

pub fn random_semigroup(rng: &mut TestRng) -> FiniteSemigroup {
    small_semigroups().choose(rng).unwrap().clone()
}

/// Sizes for which maps can exist: `k_ab > 0` forces `k_a > 0` and `k_b > 0`.
pub fn random_sizes(rng: &mut TestRng, s: &FiniteSemigroup, max: usize, allow_empty: bool) -> Vec<usize> {
    loop {
        let lo = usize::from(!allow_empty);
        let sizes: Vec<usize> = s.elements().map(|_| rng.gen_range(lo..=max)).collect();
        let feasible = s.elements().all(|a| {
            s.elements()
                .all(|b| sizes[s.mul(a, b)] == 0 || (sizes[a] > 0 && sizes[b] > 0))
        });
        if feasible {
            return sizes;
        }
    }
}

fn all_maps(len: usize, bound: usize) -> Vec<Vec<usize>> {
    let count = bound.pow(len as u32);
    (0..count)
        .map(|mut c| {
            (0..len)
                .map(|_| {
                    let v = c % bound;
                    c /= bound;
                    v
                })
                .collect()
        })
        .collect()
}

fn holds(
    s: &FiniteSemigroup,
    lam: &[Option<Vec<usize>>],
    rho: &[Option<Vec<usize>>],
    a: usize,
    b: usize,
    c: usize,
) -> bool {
    let n = s.order();
    let (ab, bc) = (s.mul(a, b), s.mul(b, c));
    let get = |m: &[Option<Vec<usize>>], x: usize, y: usize| m[x * n + y].clone();
    let (Some(l_ab), Some(r_ab), Some(l_abc), Some(r_abc), Some(l_a_bc), Some(r_a_bc), Some(l_bc), Some(r_bc)) = (
        get(lam, a, b),
        get(rho, a, b),
        get(lam, ab, c),
        get(rho, ab, c),
        get(lam, a, bc),
        get(rho, a, bc),
        get(lam, b, c),
        get(rho, b, c),
    ) else {
        return true;
    };
    (0..l_abc.len())
        .all(|i| l_ab[l_abc[i]] == l_a_bc[i] && r_bc[r_a_bc[i]] == r_abc[i] && r_ab[l_abc[i]] == l_bc[r_a_bc[i]])
}

/// Random λρ-system over `s` with the given sizes, by randomized
/// backtracking over the pairs. `None` if the node budget runs out.
pub fn random_system_with(rng: &mut TestRng, s: &FiniteSemigroup, sizes: &[usize]) -> Option<LrSystem> {
    let n = s.order();
    let mut lam: Vec<Option<Vec<usize>>> = vec![None; n * n];
    let mut rho: Vec<Option<Vec<usize>>> = vec![None; n * n];
    let mut budget = 20_000usize;

    fn go(
        rng: &mut TestRng,
        s: &FiniteSemigroup,
        sizes: &[usize],
        p: usize,
        lam: &mut Vec<Option<Vec<usize>>>,
        rho: &mut Vec<Option<Vec<usize>>>,
        budget: &mut usize,
    ) -> bool {
        let n = s.order();
        if p == n * n {
            return true;
        }
        let (a, b) = (p / n, p % n);
        let k = sizes[s.mul(a, b)];
        let mut lams = all_maps(k, sizes[a]);
        let mut rhos = all_maps(k, sizes[b]);
        lams.shuffle(rng);
        rhos.shuffle(rng);
        lams.truncate(12);
        rhos.truncate(12);
        for l in &lams {
            for r in &rhos {
                if *budget == 0 {
                    return false;
                }
                *budget -= 1;
                lam[p] = Some(l.clone());
                rho[p] = Some(r.clone());
                let ok = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| holds(s, lam, rho, x, y, z))));
                if ok && go(rng, s, sizes, p + 1, lam, rho, budget) {
                    return true;
                }
            }
        }
        lam[p] = None;
        rho[p] = None;
        false
    }

    if !go(rng, s, sizes, 0, &mut lam, &mut rho, &mut budget) {
        return None;
    }
    let data = SystemData::new(
        s.clone(),
        sizes.to_vec(),
        lam.into_iter().map(Option::unwrap).collect(),
        rho.into_iter().map(Option::unwrap).collect(),
    )
    .unwrap();
    Some(data.validate().expect("backtracking only keeps valid systems"))
}

/// A random valid system over a random skeleton of order at most 3.
pub fn random_system(rng: &mut TestRng, max_size: usize, allow_empty: bool) -> LrSystem {
    loop {
        let s = random_semigroup(rng);
        let sizes = random_sizes(rng, &s, max_size, allow_empty);
        if let Some(sys) = random_system_with(rng, &s, &sizes) {
            return sys;
        }
    }
}

/// A random valid system with at least one empty index set.
pub fn random_system_with_empty(rng: &mut TestRng, max_size: usize) -> LrSystem {
    loop {
        let sys = random_system(rng, max_size, true);
        if sys.index_sizes().contains(&0) {
            return sys;
        }
    }
}

/// Arity-correct data violating at least one axiom.
pub fn random_invalid(rng: &mut TestRng, max_size: usize) -> SystemData {
    loop {
        let s = random_semigroup(rng);
        let sizes = random_sizes(rng, &s, max_size, false);
        let data = SystemData::from_fn(s.clone(), sizes.clone(), |a, b| {
            let k = sizes[s.mul(a, b)];
            (
                (0..k).map(|_| rng.gen_range(0..sizes[a])).collect(),
                (0..k).map(|_| rng.gen_range(0..sizes[b])).collect(),
            )
        })
        .unwrap();
        if !data.satisfies_axioms() {
            return data;
        }
    }
}

/// The pool used across the acceptance criteria: random systems plus the
/// worked examples.
pub fn system_pool(seed: u64, count: usize) -> Vec<LrSystem> {
    let mut r = rng(seed);
    let mut pool = vec![LrSystem::lzero_example(), LrSystem::flipflop_example()];
    while pool.len() < count {
        pool.push(random_system(&mut r, 3, false));
    }
    pool
}

/// Unital systems: unital members of the pool and unital extensions.
pub fn unital_pool(seed: u64, count: usize) -> Vec<LrSystem> {
    let mut r = rng(seed);
    let mut pool = vec![LrSystem::flipflop_example()];
    while pool.len() < count {
        let sys = random_system(&mut r, 2, false);
        if sys.is_unital() {
            pool.push(sys);
        } else {
            pool.push(sys.unital_extension());
        }
    }
    pool
}

/// Brute-force two-sided identity of a table.
pub fn brute_identity(s: &FiniteSemigroup) -> Option<usize> {
    s.elements()
        .find(|&e| s.elements().all(|x| s.mul(e, x) == x && s.mul(x, e) == x))
}
