use std::path::Path;

use lrprod::free_construction::{free_of_system, free_transformation, index_size_table, verify_divide};
use lrprod::io::{self, IoError, ProductFile, SemigroupFile};
use lrprod::lr_product::build_product;
use lrprod::pre_system::{check_natural_solutions, extract_pre, DeltaMode, DEFAULT_SOLVE_CAP};
use lrprod::semigroup::{divides, find_isomorphism_with_cap, DivisionCaps};
use lrprod::{Error, FiniteSemigroup, NamedSemigroup, SemigroupError, UnitalFailure};
use serde_json::{json, Value};

use crate::render;

/// Everything a verb produces. `artifact` is what `--out` writes.
pub struct Report {
    pub ok: bool,
    pub text: String,
    pub json: Value,
    pub artifact: Option<Value>,
}

#[derive(Debug, Clone, Copy)]
pub struct Caps {
    pub product: usize,
    pub iso: usize,
    pub sub: usize,
    pub length: usize,
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! to_value {
    ($v:expr) => {
        serde_json::to_value($v).expect("file types serialize")
    };
}

/// A semigroup operand: an existing file, otherwise a name such as
/// `cyclic(2)`.
pub fn load_semigroup(arg: &str) -> Result<FiniteSemigroup> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(io::read_semigroup(path)?);
    }
    match arg.parse::<NamedSemigroup>() {
        Ok(name) => Ok(name.build()?),
        Err(_) => Err(IoError::Read {
            path: arg.to_string(),
            reason: "no such file or semigroup name".into(),
        }
        .into()),
    }
}

fn labels(s: &FiniteSemigroup) -> Vec<String> {
    s.elements().map(|a| s.label(a)).collect()
}

fn semigroup_table(s: &FiniteSemigroup) -> String {
    let ids: Vec<usize> = s.elements().collect();
    render::table("*", &labels(s), &ids, |a, b| s.mul(a, b))
}

fn unital_failure(f: &UnitalFailure) -> String {
    match f {
        UnitalFailure::NoIdentity => "skeleton has no identity".into(),
        UnitalFailure::Lambda(a) => format!("λ[{a},1] is not the identity"),
        UnitalFailure::Rho(a) => format!("ρ[1,{a}] is not the identity"),
    }
}

pub fn verify(path: &Path, unital: bool, natural: bool) -> Result<Report> {
    let data = io::read_system_data(path)?;
    let violations = data.axiom_violations();
    let mut text = String::new();
    let mut ok = violations.is_empty();
    if ok {
        text.push_str("axioms: ok\n");
    } else {
        text.push_str(&format!("axioms: {} violations\n", violations.len()));
        for v in &violations {
            text.push_str(&format!("  {v}\n"));
        }
    }
    let mut report = json!({
        "axioms": {
            "ok": violations.is_empty(),
            "violations": violations.iter().map(|v| json!({
                "axiom": v.axiom.to_string(),
                "a": v.a, "b": v.b, "c": v.c, "index": v.index,
                "lhs": v.lhs, "rhs": v.rhs,
            })).collect::<Vec<_>>(),
        }
    });
    let system = data.validate().ok();

    if unital {
        match &system {
            None => {
                text.push_str("unital: not checked, axioms fail\n");
                report["unital"] = json!({ "ok": false, "failures": ["axioms fail"] });
            }
            Some(sys) => {
                let r = sys.unital_report();
                let failures: Vec<String> = r.failures.iter().map(unital_failure).collect();
                ok &= r.is_unital();
                if r.is_unital() {
                    text.push_str("unital: ok\n");
                } else {
                    text.push_str(&format!("unital: no ({})\n", failures.join("; ")));
                }
                report["unital"] = json!({ "ok": r.is_unital(), "unit": r.unit, "failures": failures });
            }
        }
    }

    if natural {
        let outcome = match &system {
            None => Err("axioms fail".to_string()),
            Some(sys) => match extract_pre(sys) {
                Err(e) => Err(e.to_string()),
                Ok(pre) => Ok(check_natural_solutions(
                    &pre,
                    DeltaMode::AllSolutions { cap: DEFAULT_SOLVE_CAP },
                )?),
            },
        };
        match outcome {
            Err(why) => {
                ok = false;
                text.push_str(&format!("natural solutions: not checked, {why}\n"));
                report["natural_solutions"] = json!({ "ok": false, "reason": why });
            }
            Ok(rep) => {
                ok &= rep.passes();
                if rep.passes() {
                    text.push_str(&format!("natural solutions: ok ({} instances)\n", rep.instances));
                } else {
                    text.push_str(&format!("natural solutions: {} failures\n", rep.failures.len()));
                    for f in &rep.failures {
                        text.push_str(&format!("  {f}\n"));
                    }
                }
                report["natural_solutions"] = json!({
                    "ok": rep.passes(),
                    "triples": rep.triples,
                    "instances": rep.instances,
                    "failures": rep.failures.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                });
            }
        }
    }
    report["ok"] = json!(ok);
    Ok(Report {
        ok,
        text,
        json: report,
        artifact: None,
    })
}

pub fn product(system: &Path, h: &str, caps: Caps) -> Result<Report> {
    let sys = io::read_system(system)?;
    let h = load_semigroup(h)?;
    let p = build_product(&sys, &h, caps.product)?;
    let labels: Vec<String> = (0..p.order()).map(|i| p.label(i).to_string()).collect();
    let ids: Vec<usize> = (0..p.order()).collect();
    let unit = p
        .unit()
        .map(|u| p.label(p.index_of(&u).expect("unit is an element")).to_string());
    let mut text = format!("order {}\n", p.order());
    text.push_str(&render::table("⋆", &labels, &ids, |a, b| p.mul(a, b)));
    text.push_str(&format!("unit: {}\n", unit.as_deref().unwrap_or("none")));
    let file = to_value!(&ProductFile::from_product(&p));
    Ok(Report {
        ok: true,
        text,
        json: json!({ "ok": true, "order": p.order(), "unit": unit, "product": file }),
        artifact: Some(file),
    })
}

pub fn quotient(semigroup: &str, partition: &Path) -> Result<Report> {
    let s = load_semigroup(semigroup)?;
    let part = io::read_partition(partition)?;
    let cong = match part.build(&s) {
        Ok(c) => c,
        Err(IoError::Semigroup(e @ SemigroupError::NotCompatible { .. })) => {
            return Ok(Report {
                ok: false,
                text: format!("not a congruence: {e}\n"),
                json: json!({ "ok": false, "congruence": false, "reason": e.to_string() }),
                artifact: None,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let (q, _) = cong.quotient()?;
    let names: Vec<String> = cong
        .classes()
        .iter()
        .map(|c| format!("[{}]", c.iter().map(|&a| s.label(a)).collect::<Vec<_>>().join(",")))
        .collect();
    let q = q.with_labels(names)?;
    let file = to_value!(&SemigroupFile::from_semigroup(&q));
    Ok(Report {
        ok: true,
        text: format!("congruence with {} classes\n{}", q.order(), semigroup_table(&q)),
        json: json!({ "ok": true, "congruence": true, "quotient": file }),
        artifact: Some(file),
    })
}

pub fn iso(a: &str, b: &str, caps: Caps) -> Result<Report> {
    let (s, t) = (load_semigroup(a)?, load_semigroup(b)?);
    let found = find_isomorphism_with_cap(&s, &t, caps.iso)?;
    let (text, map) = match &found {
        Some(map) => {
            let rows: Vec<(String, String)> = map
                .iter()
                .enumerate()
                .map(|(x, &y)| (s.label(x), format!("-> {}", t.label(y))))
                .collect();
            (format!("isomorphic\n{}", render::pairs(&rows)), json!(map))
        }
        None => ("not isomorphic\n".to_string(), Value::Null),
    };
    Ok(Report {
        ok: found.is_some(),
        text,
        json: json!({ "ok": found.is_some(), "isomorphic": found.is_some(), "map": map }),
        artifact: None,
    })
}

pub fn divides_cmd(t: &str, s: &str, caps: Caps) -> Result<Report> {
    let (t, s) = (load_semigroup(t)?, load_semigroup(s)?);
    let limits = DivisionCaps {
        max_source: caps.sub,
        ..DivisionCaps::default()
    };
    let found = divides(&t, &s, limits)?;
    let Some(w) = found else {
        return Ok(Report {
            ok: false,
            text: "does not divide\n".into(),
            json: json!({ "ok": false, "divides": false }),
            artifact: None,
        });
    };
    w.verify(&t, &s)?;
    let subset: Vec<String> = w.subset.iter().map(|&i| s.label(i)).collect();
    let rows: Vec<(String, String)> = w
        .subset
        .iter()
        .zip(w.hom.map())
        .map(|(&u, &v)| (s.label(u), format!("-> {}", t.label(v))))
        .collect();
    Ok(Report {
        ok: true,
        text: format!("divides via {{{}}}\n{}", subset.join(", "), render::pairs(&rows)),
        json: json!({ "ok": true, "divides": true, "subset": w.subset, "map": w.hom.map() }),
        artifact: None,
    })
}

pub fn free(system: &Path, check_divide: Option<&str>, even_freer: bool, caps: Caps) -> Result<Report> {
    let sys = io::read_system(system)?;
    let fos = free_of_system(&sys, caps.length, even_freer, caps.product)?;
    let build = fos.free.report();
    let t = free_transformation(&fos)?;
    let tr = t.report();
    let sizes = index_size_table(&fos.free);
    let mut ok = build.delta.passes() && t.is_valid();

    let rows: Vec<(String, String)> = sizes.iter().map(|(w, k)| (w.clone(), k.to_string())).collect();
    let mut text = format!("words up to length {}: {}\n", caps.length, sizes.len());
    text.push_str(&render::pairs(&rows));
    text.push_str(&format!(
        "chain checks {}, split checks {}, projection solutions {}, δ instances {}\n",
        build.chain_checked, build.split_checked, build.projections_checked, build.delta.instances
    ));
    text.push_str(&format!(
        "transformation: {} ({} coordinates, {} square instances)\n",
        if t.is_valid() { "ok" } else { "fails" },
        tr.coordinates_checked,
        tr.squares_checked
    ));
    for (u, v, side, i) in &tr.square_violations {
        text.push_str(&format!(
            "  {side:?} square fails at ({}, {}), index {i}\n",
            fos.free.monoid().label(*u),
            fos.free.monoid().label(*v)
        ));
    }
    let mut report = json!({
        "length": caps.length,
        "even_freer": even_freer,
        "index_sizes": sizes.iter().map(|(w, k)| json!({ "word": w, "size": k })).collect::<Vec<_>>(),
        "chain_checked": build.chain_checked,
        "split_checked": build.split_checked,
        "projections_checked": build.projections_checked,
        "delta_instances": build.delta.instances,
        "transformation": {
            "ok": t.is_valid(),
            "coordinates_checked": tr.coordinates_checked,
            "coordinate_mismatches": tr.coordinate_mismatches.len(),
            "chain_failures": tr.chain_failures.len(),
            "squares_checked": tr.squares_checked,
            "square_violations": tr.square_violations.iter().map(|(u, v, side, i)| json!({
                "u": fos.free.monoid().label(*u),
                "v": fos.free.monoid().label(*v),
                "side": format!("{side:?}").to_lowercase(),
                "index": i,
            })).collect::<Vec<_>>(),
        },
    });

    if let Some(h) = check_divide {
        let h = load_semigroup(h)?;
        let d = verify_divide(&sys, &h, caps.length, even_freer, caps.product)?;
        ok &= d.passes();
        let surjective = match d.surjective {
            Some(true) => "yes",
            Some(false) => "no",
            None => "not checked",
        };
        text.push_str(&format!(
            "divide: {} ({} pairs, {} failures, surjective onto {} elements: {surjective}, embedding injective: {})\n",
            if d.passes() { "ok" } else { "fails" },
            d.pairs_checked,
            d.hom_failures,
            d.target_order,
            d.embedding_injective
        ));
        report["divide"] = json!({
            "ok": d.passes(),
            "free_order": d.free_order,
            "target_order": d.target_order,
            "pairs_checked": d.pairs_checked,
            "hom_failures": d.hom_failures,
            "first_failure": d.first_failure,
            "surjective": d.surjective,
            "embedding_injective": d.embedding_injective,
        });
    }
    report["ok"] = json!(ok);
    Ok(Report {
        ok,
        text,
        json: report,
        artifact: None,
    })
}
