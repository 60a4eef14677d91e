//! The worked examples, rebuilt and compared cell by cell.

use lrprod::free_construction::{
    free_of_system, free_transformation, index_size_table, verify_divide, DEFAULT_MAX_LEN,
};
use lrprod::lr_product::{build_product, ProductSemigroup};
use lrprod::semigroup::{find_isomorphism, wreath_product, DEFAULT_TABLE_CAP};
use lrprod::{Congruence, FiniteSemigroup, LrSystem, NamedSemigroup};
use serde_json::json;

use crate::commands::{Report, Result};
use crate::render;

fn named(n: NamedSemigroup) -> FiniteSemigroup {
    n.build().expect("built-in semigroup")
}

const LZERO_ORDER: [&str; 4] = ["00", "11", "01", "10"];
const LZERO_TABLE: [[&str; 4]; 4] = [
    ["00", "11", "00", "11"],
    ["11", "00", "11", "00"],
    ["01", "10", "01", "10"],
    ["10", "01", "10", "01"],
];

const FLIPFLOP_ORDER: [&str; 6] = ["0", "1", "00", "11", "01", "10"];
const FLIPFLOP_TABLE: [[&str; 6]; 6] = [
    ["0", "1", "00", "11", "01", "10"],
    ["1", "0", "11", "00", "10", "01"],
    ["00", "11", "00", "11", "00", "11"],
    ["11", "00", "11", "00", "11", "00"],
    ["01", "10", "01", "10", "01", "10"],
    ["10", "01", "10", "01", "10", "01"],
];

/// Renders `p` in the given label order and counts cells that differ from
/// `golden`.
fn golden<const N: usize>(p: &ProductSemigroup, order: &[&str; N], golden: &[[&str; N]; N]) -> (String, usize) {
    let ids: Vec<Option<usize>> = order.iter().map(|l| p.find_label(l)).collect();
    if p.order() != N || ids.iter().any(Option::is_none) {
        return (format!("product has order {}, expected {N}\n", p.order()), N * N);
    }
    let ids: Vec<usize> = ids.into_iter().flatten().collect();
    let labels: Vec<String> = (0..p.order()).map(|i| p.label(i).to_string()).collect();
    let text = render::table("⋆", &labels, &ids, |a, b| p.mul(a, b));
    let mismatches = (0..N)
        .flat_map(|r| (0..N).map(move |c| (r, c)))
        .filter(|&(r, c)| p.label(p.mul(ids[r], ids[c])) != golden[r][c])
        .count();
    (text, mismatches)
}

fn quotient_matches(p: &ProductSemigroup, classes: &[&[&str]], expected: &FiniteSemigroup) -> Result<bool> {
    let classes: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| c.iter().filter_map(|l| p.find_label(l)).collect())
        .collect();
    let Ok(cong) = Congruence::from_partition(p.table(), &classes) else {
        return Ok(false);
    };
    let (q, _) = cong.quotient()?;
    Ok(find_isomorphism(&q, expected)?.is_some())
}

fn example<const N: usize>(
    name: &str,
    sys: &LrSystem,
    order: &[&str; N],
    table: &[[&str; N]; N],
    classes: &[&[&str]],
    quotient_name: &str,
    expected: &FiniteSemigroup,
) -> Result<Report> {
    let p = build_product(sys, &named(NamedSemigroup::Cyclic(2)), DEFAULT_TABLE_CAP)?;
    let (rendered, mismatches) = golden(&p, order, table);
    let quotient = quotient_matches(&p, classes, expected)?;
    let ok = mismatches == 0 && quotient;
    let text = format!(
        "Z2 over the {name} system, order {}\n{rendered}table: {}\nquotient by {}: {}\n",
        p.order(),
        if mismatches == 0 {
            "matches".to_string()
        } else {
            format!("{mismatches} cells differ")
        },
        classes
            .iter()
            .map(|c| format!("{{{}}}", c.join(",")))
            .collect::<Vec<_>>()
            .join(" "),
        if quotient {
            format!("isomorphic to {quotient_name}")
        } else {
            format!("not {quotient_name}")
        },
    );
    Ok(Report {
        ok,
        text,
        json: json!({ "ok": ok, "order": p.order(), "mismatches": mismatches, "quotient": quotient }),
        artifact: None,
    })
}

pub fn lzero() -> Result<Report> {
    example(
        "lzero",
        &LrSystem::lzero_example(),
        &LZERO_ORDER,
        &LZERO_TABLE,
        &[&["00", "11"], &["01", "10"]],
        "left-zero(2)",
        &named(NamedSemigroup::LeftZero(2)),
    )
}

pub fn flipflop() -> Result<Report> {
    example(
        "flip-flop",
        &LrSystem::flipflop_example(),
        &FLIPFLOP_ORDER,
        &FLIPFLOP_TABLE,
        &[&["0", "1"], &["00", "11"], &["01", "10"]],
        "the left flip-flop monoid",
        &named(NamedSemigroup::FlipFlopLeft),
    )
}

pub fn wreath() -> Result<Report> {
    let z2 = named(NamedSemigroup::Cyclic(2));
    let act = vec![vec![0, 1], vec![1, 0]];
    let sys = LrSystem::left_action(&z2, 2, &act)?;
    let p = build_product(&sys, &z2, DEFAULT_TABLE_CAP)?;
    let wr = wreath_product(&z2, 2, &act, &z2)?;
    let same = p.table().rows() == wr.rows();
    let group = p.table().is_group();
    let abelian = p.table().is_commutative();
    let ok = same && group && !abelian && p.order() == 8;
    let labels: Vec<String> = (0..p.order()).map(|i| p.label(i).to_string()).collect();
    let ids: Vec<usize> = (0..p.order()).collect();
    let text = format!(
        "Z2 over the regular action of Z2, order {}\n{}wreath product table: {}\ngroup: {group}, abelian: {abelian}\n",
        p.order(),
        render::table("⋆", &labels, &ids, |a, b| p.mul(a, b)),
        if same { "identical" } else { "differs" },
    );
    Ok(Report {
        ok,
        text,
        json: json!({ "ok": ok, "order": p.order(), "identical": same, "group": group, "abelian": abelian }),
        artifact: None,
    })
}

pub fn free() -> Result<Report> {
    let z2 = named(NamedSemigroup::Cyclic(2));
    let sys = LrSystem::flipflop_example();
    let fos = free_of_system(&sys, DEFAULT_MAX_LEN, false, DEFAULT_TABLE_CAP)?;
    let t = free_transformation(&fos)?;
    let d = verify_divide(&sys, &z2, DEFAULT_MAX_LEN, false, DEFAULT_TABLE_CAP)?;
    let ok = fos.free.report().delta.passes() && t.is_valid() && d.passes() && d.surjective == Some(true);
    let rows: Vec<(String, String)> = index_size_table(&fos.free)
        .into_iter()
        .map(|(w, k)| (w, k.to_string()))
        .collect();
    let text = format!(
        "free system of the flip-flop system, words up to length {DEFAULT_MAX_LEN}\n{}transformation: {}\n\
         Z2 products: {} pairs checked, {} failures, surjective: {}\n",
        render::pairs(&rows),
        if t.is_valid() { "ok" } else { "fails" },
        d.pairs_checked,
        d.hom_failures,
        d.surjective == Some(true),
    );
    Ok(Report {
        ok,
        text,
        json: json!({ "ok": ok, "pairs_checked": d.pairs_checked, "hom_failures": d.hom_failures, "surjective": d.surjective }),
        artifact: None,
    })
}
