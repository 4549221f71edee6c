//! Browser bindings. Every call takes and returns plain strings; results are JSON.

use quota_alloc::format::{parse_instance, parse_matching, serialize_instance, serialize_matching};
use quota_alloc::gadgets::{solve_lq2, Problem};
use quota_alloc::generators::{gen_condorcet, gen_random, CondorcetVariant};
use quota_alloc::instance::{dominates, ensure_feasible, popularity_margin};
use quota_alloc::open_set::solve_fpt;
use quota_alloc::{Instance, Matching, Result};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn graph(inst: &Instance) -> Value {
    let projects: Vec<Value> = inst
        .projects()
        .iter()
        .map(|p| json!({ "name": p.name, "lower": p.lower, "upper": p.upper }))
        .collect();
    let edges: Vec<Value> = (0..inst.n())
        .flat_map(|a| {
            inst.prefs(a)
                .iter()
                .enumerate()
                .map(move |(i, &p)| json!({ "a": a, "p": p, "rank": i + 1 }))
        })
        .collect();
    json!({ "applicants": inst.applicants(), "projects": projects, "edges": edges })
}

fn pairs(m: &Matching) -> Value {
    m.pairs().map(|(a, p)| json!([a, p])).collect()
}

fn answer(inst: &Instance, found: Option<Matching>, extra: Value) -> Value {
    let mut out = json!({ "ok": true, "graph": graph(inst) });
    match found {
        Some(m) => {
            out["status"] = "found".into();
            out["pairs"] = pairs(&m);
            out["text"] = serialize_matching(inst, &m).into();
        }
        None => out["status"] = "none".into(),
    }
    if let Value::Object(map) = extra {
        for (k, v) in map {
            out[k] = v;
        }
    }
    out
}

fn run(inst: &Instance, problem: Problem, m: Option<&Matching>) -> Result<Option<Matching>> {
    if inst.lower_max() <= 2 {
        solve_lq2(inst, problem, m)
    } else {
        solve_fpt(inst, problem, m)
    }
}

fn finish(r: Result<Value>) -> String {
    r.unwrap_or_else(|e| json!({ "ok": false, "error": e.to_string() }))
        .to_string()
}

/// The bipartite graph of an instance.
#[wasm_bindgen]
pub fn describe(instance: &str) -> String {
    finish(parse_instance(instance).map(|inst| json!({ "ok": true, "graph": graph(&inst) })))
}

/// Searches for a matching more popular than (`mode = "popular"`) or
/// dominating (`mode = "pareto"`) the given one.
#[wasm_bindgen]
pub fn verify(instance: &str, matching: &str, mode: &str) -> String {
    finish((|| {
        let inst = parse_instance(instance)?;
        let m = parse_matching(&inst, matching)?;
        ensure_feasible(&inst, &m)?;
        let problem = match mode {
            "pareto" => Problem::Pov,
            _ => Problem::Popv,
        };
        let found = run(&inst, problem, Some(&m))?;
        let extra = match &found {
            Some(w) => json!({
                "margin": popularity_margin(&inst, w, &m)?,
                "dominates": dominates(&inst, w, &m)?,
                "given": pairs(&m),
            }),
            None => json!({ "given": pairs(&m) }),
        };
        Ok(answer(&inst, found, extra))
    })())
}

/// A perfect Pareto optimal matching, if one exists.
#[wasm_bindgen]
pub fn solve(instance: &str) -> String {
    finish((|| {
        let inst = parse_instance(instance)?;
        let found = run(&inst, Problem::Perpo, None)?;
        Ok(answer(&inst, found, Value::Null))
    })())
}

/// Instance text: `condorcet`, `condorcet-lq3` or a seeded random instance.
#[wasm_bindgen]
pub fn generate(kind: &str, seed: u32, applicants: u32, projects: u32) -> String {
    finish((|| {
        let inst = match kind {
            "condorcet" => gen_condorcet(CondorcetVariant::Unit),
            "condorcet-lq3" => gen_condorcet(CondorcetVariant::Lq3),
            _ => {
                let m = projects.clamp(1, 8) as usize;
                gen_random(
                    seed as u64,
                    applicants.clamp(1, 10) as usize,
                    m,
                    2,
                    1..=m.min(3),
                )?
            }
        };
        Ok(json!({ "ok": true, "text": serialize_instance(&inst) }))
    })())
}
