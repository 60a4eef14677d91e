//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use common::{brute_identity, named, order_four, rng, small_semigroups, system_pool, unital_pool};
use lrprod::free_construction::{free_of_system, free_transformation, verify_divide};
use lrprod::lr_product::{
    build_product, group_preservation_check, induced_hom, multiply, nonassociativity_witness, unit_of_product,
};
use lrprod::pre_system::{check_natural_solutions, extract_pre, lift, lift_with, DeltaMode, Solutions};
use lrprod::semigroup::{divides, find_isomorphism, wreath_product, DivisionCaps, DEFAULT_TABLE_CAP};
use lrprod::{Congruence, FiniteSemigroup, LrSystem, ProductSemigroup, Transformation};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn product(sys: &LrSystem, h: &FiniteSemigroup) -> Result<ProductSemigroup, String> {
    build_product(sys, h, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())
}

fn check_golden(p: &ProductSemigroup, header: &[&str], rows: &[&[&str]]) -> Result<(), String> {
    ensure!(p.order() == header.len(), "order {} != {}", p.order(), header.len());
    let ids: Vec<usize> = header
        .iter()
        .map(|l| p.find_label(l).ok_or_else(|| format!("no element labelled {l}")))
        .collect::<Result<_, _>>()?;
    for (r, row) in rows.iter().enumerate() {
        for (c, want) in row.iter().enumerate() {
            let got = p.label(p.mul(ids[r], ids[c]));
            ensure!(got == *want, "{}*{} = {got}, expected {want}", header[r], header[c]);
        }
    }
    Ok(())
}

fn classes(p: &ProductSemigroup, labels: &[&[&str]]) -> Vec<Vec<usize>> {
    labels
        .iter()
        .map(|c| c.iter().map(|l| p.find_label(l).unwrap()).collect())
        .collect()
}

fn c1_lzero_table() -> Outcome {
    let p = product(&LrSystem::lzero_example(), &named("cyclic(2)"))?;
    let header = ["00", "11", "01", "10"];
    check_golden(
        &p,
        &header,
        &[
            &["00", "11", "00", "11"],
            &["11", "00", "11", "00"],
            &["01", "10", "01", "10"],
            &["10", "01", "10", "01"],
        ],
    )?;
    Ok("16 cells".into())
}

fn c2_flipflop_table() -> Outcome {
    let p = product(&LrSystem::flipflop_example(), &named("cyclic(2)"))?;
    let header = ["0", "1", "00", "11", "01", "10"];
    check_golden(
        &p,
        &header,
        &[
            &["0", "1", "00", "11", "01", "10"],
            &["1", "0", "11", "00", "10", "01"],
            &["00", "11", "00", "11", "00", "11"],
            &["11", "00", "11", "00", "11", "00"],
            &["01", "10", "01", "10", "01", "10"],
            &["10", "01", "10", "01", "10", "01"],
        ],
    )?;
    Ok("36 cells".into())
}

fn c3_quotients() -> Outcome {
    let z2 = named("cyclic(2)");
    let cases: [(LrSystem, &[&[&str]], FiniteSemigroup); 2] = [
        (
            LrSystem::lzero_example(),
            &[&["00", "11"], &["01", "10"]],
            named("left_zero(2)"),
        ),
        (
            LrSystem::flipflop_example(),
            &[&["0", "1"], &["00", "11"], &["01", "10"]],
            named("flip_flop_left"),
        ),
    ];
    for (sys, parts, expected) in cases {
        let p = product(&sys, &z2)?;
        let cong = Congruence::from_partition(p.table(), &classes(&p, parts)).map_err(|e| e.to_string())?;
        let (q, _) = cong.quotient().map_err(|e| e.to_string())?;
        let iso = find_isomorphism(&q, &expected).map_err(|e| e.to_string())?;
        ensure!(
            iso.is_some(),
            "quotient of order {} is not the expected semigroup",
            q.order()
        );
    }
    Ok("left-zero(2), flip-flop".into())
}

fn c4_main_theorem() -> Outcome {
    let hs = [named("cyclic(2)"), named("left_zero(2)"), named("semilattice2")];
    let mut r = rng(4);
    for i in 0..200 {
        let sys = common::random_system(&mut r, 3, false);
        for h in &hs {
            let p = product(&sys, h)?;
            ensure!(
                p.table().is_associative(),
                "valid system {i} gave a non-associative product"
            );
        }
    }
    for i in 0..200 {
        let cand = common::random_invalid(&mut r, 3);
        let w = nonassociativity_witness(&cand).map_err(|e| format!("invalid candidate {i}: {e}"))?;
        let left = multiply(
            &cand,
            &w.h,
            &multiply(&cand, &w.h, &w.x, &w.y).map_err(|e| e.to_string())?,
            &w.z,
        )
        .map_err(|e| e.to_string())?;
        let right = multiply(
            &cand,
            &w.h,
            &w.x,
            &multiply(&cand, &w.h, &w.y, &w.z).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        ensure!(
            left == w.left && right == w.right,
            "candidate {i}: witness products do not recompute"
        );
        ensure!(left != right, "candidate {i}: witness triple associates");
    }
    Ok("200 valid x 3 H, 200 invalid".into())
}

fn c5_main_monoid() -> Outcome {
    let hs = [named("cyclic(2)"), named("semilattice2")];
    let pool = unital_pool(5, 60);
    for (i, sys) in pool.iter().enumerate() {
        for h in &hs {
            let unit = unit_of_product(sys, h, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
            let unit = unit.ok_or(format!("unital system {i} has no unit"))?;
            let p = product(sys, h)?;
            let id = p.index_of(&unit).map_err(|e| e.to_string())?;
            ensure!(
                brute_identity(p.table()) == Some(id),
                "system {i}: returned unit is not the identity"
            );
        }
    }
    let absent = unit_of_product(&LrSystem::lzero_example(), &named("cyclic(2)"), DEFAULT_TABLE_CAP)
        .map_err(|e| e.to_string())?;
    ensure!(absent.is_none(), "lzero product reported a unit");
    Ok(format!("{} unital systems", pool.len()))
}

fn c6_size_law() -> Outcome {
    let hs = [
        named("cyclic(2)"),
        named("left_zero(2)"),
        named("semilattice2"),
        named("cyclic(3)"),
    ];
    let pool = system_pool(6, 80);
    let mut count = 0;
    for sys in &pool {
        for h in &hs {
            let p = product(sys, h)?;
            let law: usize = sys.index_sizes().iter().map(|&k| h.order().pow(k as u32)).sum();
            ensure!(p.order() == law, "order {} != {law}", p.order());
            count += 1;
        }
    }
    let ff = product(&LrSystem::flipflop_example(), &named("cyclic(2)"))?;
    ensure!(ff.order() == 6, "flip-flop product has order {}", ff.order());
    Ok(format!("{count} products"))
}

fn c7_degenerate_products() -> Outcome {
    let mut semigroups: Vec<FiniteSemigroup> = small_semigroups().to_vec();
    semigroups.extend(order_four());
    let mut r = rng(7);
    let trivial = named("trivial");
    for k in 0..10 {
        let s = semigroups.choose(&mut r).unwrap().clone();
        let h = semigroups.choose(&mut r).unwrap().clone();
        let sizes = common::random_sizes(&mut r, &s, 2, false);
        let sys = common::random_system_with(&mut r, &s, &sizes).unwrap_or_else(|| LrSystem::singleton(&s));
        let iso = |a: &FiniteSemigroup, b: &FiniteSemigroup| -> Result<bool, String> {
            Ok(find_isomorphism(a, b).map_err(|e| e.to_string())?.is_some())
        };
        ensure!(iso(product(&sys, &trivial)?.table(), &s)?, "pair {k}: 1^[S] is not S");
        ensure!(
            iso(product(&LrSystem::empty(&s), &h)?.table(), &s)?,
            "pair {k}: H^[empty] is not S"
        );
        let hs = h.direct_product(&s, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
        ensure!(
            iso(product(&LrSystem::singleton(&s), &h)?.table(), &hs)?,
            "pair {k}: H^[singleton] is not HxS"
        );
    }
    Ok("10 pairs".into())
}

fn brute_is_group(s: &FiniteSemigroup) -> bool {
    let Some(e) = brute_identity(s) else { return false };
    s.elements()
        .all(|a| s.elements().any(|b| s.mul(a, b) == e && s.mul(b, a) == e))
}

fn c8_wreath() -> Outcome {
    let z2 = named("cyclic(2)");
    let act = vec![vec![0, 1], vec![1, 0]];
    let sys = LrSystem::left_action(&z2, 2, &act).map_err(|e| e.to_string())?;
    let p = product(&sys, &z2)?;
    let wr = wreath_product(&z2, 2, &act, &z2).map_err(|e| e.to_string())?;
    ensure!(p.table().rows() == wr.rows(), "tables differ");
    ensure!(p.order() == 8, "order {}", p.order());
    ensure!(brute_is_group(p.table()), "not a group");
    ensure!(!p.table().is_commutative(), "abelian");
    let ff = LrSystem::flipflop_example();
    ensure!(
        !brute_is_group(product(&ff, &z2)?.table()),
        "flip-flop product is a group"
    );
    let report = group_preservation_check(&ff, &[z2], DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
    ensure!(
        !report.all_groups() && report.consistent(),
        "group check on flip-flop: {report:?}"
    );
    Ok("order 8, non-abelian".into())
}

/// Proper nonempty closed subsets, each a closure of one or two elements.
fn closed_subsets(s: &FiniteSemigroup) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for a in s.elements() {
        for b in s.elements() {
            let c = s.closure(&[a, b]);
            if c.len() < s.order() {
                out.insert(c);
            }
        }
    }
    out.into_iter().collect()
}

fn c9_functoriality() -> Outcome {
    let z2 = named("cyclic(2)");
    let mut chains = 0;
    for sys in unital_pool(9, 30) {
        let id = Transformation::identity(&sys);
        let hid = induced_hom(&id, &z2, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
        ensure!(
            hid.map().iter().enumerate().all(|(i, &j)| i == j),
            "identity is not preserved"
        );
        for t_set in closed_subsets(sys.skeleton()) {
            let (mid, t1) = sys.restrict(&t_set).map_err(|e| e.to_string())?;
            for u_set in closed_subsets(mid.skeleton()) {
                let (_, t2) = mid.restrict(&u_set).map_err(|e| e.to_string())?;
                let composed = t1.compose(&t2).map_err(|e| e.to_string())?;
                ensure!(composed.is_valid(), "composite is not a transformation");
                let h1 = induced_hom(&t1, &z2, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
                let h2 = induced_hom(&t2, &z2, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
                let h12 = induced_hom(&composed, &z2, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
                ensure!(
                    (0..h12.map().len()).all(|x| h12.apply(x) == h1.apply(h2.apply(x))),
                    "H^(t1 t2) != H^t1 H^t2"
                );
                chains += 1;
            }
        }
    }
    ensure!(chains > 0, "no chains found");
    Ok(format!("{chains} chains"))
}

fn c10_unit_added() -> Outcome {
    let z2 = named("cyclic(2)");
    let pool = system_pool(10, 60);
    for (i, sys) in pool.iter().enumerate() {
        let ext = sys.unital_extension();
        let n = sys.skeleton().order();
        let (back, t) = ext.restrict(&(0..n).collect::<Vec<_>>()).map_err(|e| e.to_string())?;
        ensure!(&back == sys, "system {i} not recovered");
        let emb = induced_hom(&t, &z2, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
        ensure!(emb.is_injective(), "system {i}: embedding not injective");
        let (src, dst) = (emb.source(), emb.target());
        let image: BTreeSet<usize> = emb.map().iter().copied().collect();
        for x in src.elements() {
            for y in src.elements() {
                ensure!(
                    emb.apply(src.mul(x, y)) == dst.mul(emb.apply(x), emb.apply(y)),
                    "system {i}: not a homomorphism"
                );
                ensure!(
                    image.contains(&dst.mul(emb.apply(x), emb.apply(y))),
                    "system {i}: image not closed"
                );
            }
        }
    }
    Ok(format!("{} systems", pool.len()))
}

fn c11_round_trip() -> Outcome {
    let mut pool = unital_pool(11, 40);
    let z2 = named("cyclic(2)");
    pool.push(LrSystem::left_action(&z2, 2, &[vec![0, 1], vec![1, 0]]).unwrap());
    let mut r = rng(111);
    let mut natural = 0;
    for (i, sys) in pool.iter().enumerate() {
        let pre = extract_pre(sys).map_err(|e| e.to_string())?;
        let back = lift(&pre, &Solutions::from_system(sys)).map_err(|e| format!("system {i}: {e}"))?;
        ensure!(&back == sys, "system {i}: lift with original maps differs");
        let report = check_natural_solutions(&pre, DeltaMode::AllSolutions { cap: 100_000 });
        let Ok(report) = report else { continue };
        if !report.passes() {
            continue;
        }
        natural += 1;
        for _ in 0..10 {
            let lifted = lift_with(&pre, |p, a, b| {
                let sols = p.solve_pairs(a, b, 100_000).unwrap();
                sols[r.gen_range(0..sols.len())].clone()
            });
            ensure!(lifted.is_ok(), "system {i}: random chooser failed: {:?}", lifted.err());
        }
    }
    ensure!(natural > 0, "no system passed the all-solutions check");
    Ok(format!("{} round trips, {natural} with natural solutions", pool.len()))
}

fn c12_free_construction() -> Outcome {
    let z2 = named("cyclic(2)");
    for (name, sys) in [
        ("flipflop", LrSystem::flipflop_example()),
        ("lzero", LrSystem::lzero_example()),
    ] {
        let fos = free_of_system(&sys, 3, false, DEFAULT_TABLE_CAP).map_err(|e| format!("{name}: {e}"))?;
        let rep = fos.free.report();
        ensure!(
            rep.chain_checked > 0 && rep.delta.passes(),
            "{name}: build checks {rep:?}"
        );
        let t = free_transformation(&fos).map_err(|e| e.to_string())?;
        ensure!(t.is_valid(), "{name}: transformation {:?}", t.report());
        let d = verify_divide(&sys, &z2, 3, false, DEFAULT_TABLE_CAP).map_err(|e| e.to_string())?;
        ensure!(
            d.hom_failures == 0 && d.pairs_checked > 0,
            "{name}: homomorphism fails at {:?}",
            d.first_failure
        );
        ensure!(d.surjective == Some(true), "{name}: not surjective");
        ensure!(d.passes(), "{name}: {d:?}");
    }
    Ok("flipflop, lzero at L=3".into())
}

fn c13_empty_ideal() -> Outcome {
    let mut r = rng(13);
    for i in 0..50 {
        let sys = common::random_system_with_empty(&mut r, 3);
        let (j, ok) = sys.empty_index_ideal();
        let s = sys.skeleton();
        let brute = j.iter().all(|&x| {
            s.elements()
                .all(|y| j.contains(&s.mul(x, y)) && j.contains(&s.mul(y, x)))
        });
        ensure!(!j.is_empty() && ok && brute, "system {i}: J = {j:?} is not an ideal");
    }
    Ok("50 systems".into())
}

fn c14_flipflop_divides() -> Outcome {
    let p = product(&LrSystem::flipflop_example(), &named("cyclic(2)"))?;
    let ff = named("flip_flop_left");
    let w = divides(&ff, p.table(), DivisionCaps::default()).map_err(|e| e.to_string())?;
    let w = w.ok_or("no division witness")?;
    w.verify(&ff, p.table()).map_err(|e| e.to_string())?;
    let labels: Vec<&str> = w.subset.iter().map(|&i| p.label(i)).collect();
    Ok(format!("subsemigroup {{{}}}", labels.join(",")))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("golden table, lzero", c1_lzero_table),
        ("golden table, flip-flop", c2_flipflop_table),
        ("quotients", c3_quotients),
        ("associativity iff axioms", c4_main_theorem),
        ("unit of unital products", c5_main_monoid),
        ("size law", c6_size_law),
        ("trivial, empty and singleton products", c7_degenerate_products),
        ("wreath product", c8_wreath),
        ("functoriality", c9_functoriality),
        ("unit extension and embedding", c10_unit_added),
        ("way down and way up", c11_round_trip),
        ("free construction and division", c12_free_construction),
        ("empty index sets form an ideal", c13_empty_ideal),
        ("flip-flop divides a product over 2", c14_flipflop_divides),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({ms:.1} ms)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({ms:.1} ms)", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
