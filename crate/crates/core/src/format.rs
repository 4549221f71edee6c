//! Line-oriented text formats for instances, weights, matchings, X3C and
//! roommates inputs. `#` starts a comment; blank lines are ignored.
//!
//! ```text
//! applicants 2
//! projects 1
//! project p1 1 2
//! pref a1: p1
//! pref a2: p1
//! weight a1 p1 3
//! ```

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::generators::{Roommates, X3c};
use crate::instance::{Instance, Matching, Project};
use crate::weighted::WeightedInstance;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, paired with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn number<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(line, format!("`{tok}` is not a valid {what}")))
}

fn no_more<'a>(line: usize, mut toks: impl Iterator<Item = &'a str>) -> Result<()> {
    match toks.next() {
        Some(t) => Err(parse_err(line, format!("unexpected `{t}`"))),
        None => Ok(()),
    }
}

/// Instance text plus its `weight` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub instance: Instance,
    /// `(line, applicant, project, weight)` as written.
    pub weights: Vec<(usize, String, String, i64)>,
}

/// Parses the instance format; `weight` lines are collected, not applied.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut n_decl: Option<(usize, usize)> = None;
    let mut m_decl: Option<(usize, usize)> = None;
    let mut projects: Vec<Project> = Vec::new();
    let mut pref_lines: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut weights = Vec::new();
    for (ln, l) in lines(text) {
        let mut toks = l.split_whitespace();
        match toks.next().unwrap() {
            "applicants" => {
                if n_decl.is_some() {
                    return Err(parse_err(ln, "duplicate `applicants` declaration"));
                }
                n_decl = Some((ln, number(ln, toks.next(), "applicant count")?));
                no_more(ln, toks)?;
            }
            "projects" => {
                if m_decl.is_some() {
                    return Err(parse_err(ln, "duplicate `projects` declaration"));
                }
                m_decl = Some((ln, number(ln, toks.next(), "project count")?));
                no_more(ln, toks)?;
            }
            "project" => {
                let id = toks
                    .next()
                    .ok_or_else(|| parse_err(ln, "missing project id"))?;
                let lower: u32 = number(ln, toks.next(), "lower quota")?;
                let upper: u32 = number(ln, toks.next(), "upper quota")?;
                no_more(ln, toks)?;
                if projects.iter().any(|p| p.name == id) {
                    return Err(parse_err(ln, format!("duplicate project `{id}`")));
                }
                let lower = lower.max(1);
                if lower > upper {
                    return Err(parse_err(
                        ln,
                        format!("project `{id}`: lower quota {lower} exceeds upper quota {upper}"),
                    ));
                }
                projects.push(Project::new(id, lower, upper));
            }
            "pref" => {
                let rest = l["pref".len()..].trim();
                let (who, list) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_err(ln, "expected `pref <applicant>: <projects>`"))?;
                let who = who.trim();
                if who.is_empty() || who.contains(char::is_whitespace) {
                    return Err(parse_err(ln, format!("bad applicant id `{who}`")));
                }
                if pref_lines.iter().any(|(_, a, _)| a == who) {
                    return Err(parse_err(ln, format!("duplicate applicant `{who}`")));
                }
                pref_lines.push((
                    ln,
                    who.to_string(),
                    list.split_whitespace().map(String::from).collect(),
                ));
            }
            "weight" => {
                let a = toks
                    .next()
                    .ok_or_else(|| parse_err(ln, "missing applicant id"))?;
                let p = toks
                    .next()
                    .ok_or_else(|| parse_err(ln, "missing project id"))?;
                let w: i64 = number(ln, toks.next(), "weight")?;
                no_more(ln, toks)?;
                if w < 0 {
                    return Err(parse_err(ln, format!("negative weight {w}")));
                }
                weights.push((ln, a.to_string(), p.to_string(), w));
            }
            other => return Err(parse_err(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let (nl, n) = n_decl.ok_or_else(|| Error::Format("missing `applicants` declaration".into()))?;
    let (ml, m) = m_decl.ok_or_else(|| Error::Format("missing `projects` declaration".into()))?;
    if projects.len() != m {
        return Err(parse_err(
            ml,
            format!("declared {m} projects but found {}", projects.len()),
        ));
    }
    if pref_lines.len() != n {
        return Err(parse_err(
            nl,
            format!("declared {n} applicants but found {}", pref_lines.len()),
        ));
    }
    let index: HashMap<&str, usize> = projects
        .iter()
        .enumerate()
        .map(|(i, p)| (p.name.as_str(), i))
        .collect();
    let mut prefs = Vec::with_capacity(n);
    for (ln, who, list) in &pref_lines {
        let mut row = Vec::with_capacity(list.len());
        for p in list {
            let &i = index
                .get(p.as_str())
                .ok_or_else(|| parse_err(*ln, format!("unknown project `{p}`")))?;
            if row.contains(&i) {
                return Err(parse_err(
                    *ln,
                    format!("applicant `{who}` lists `{p}` twice"),
                ));
            }
            row.push(i);
        }
        prefs.push(row);
    }
    let applicants = pref_lines.into_iter().map(|(_, a, _)| a).collect();
    Ok(Document {
        instance: Instance::new(applicants, projects, prefs)?,
        weights,
    })
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    Ok(parse_document(text)?.instance)
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "applicants {}", inst.n()).unwrap();
    writeln!(out, "projects {}", inst.m()).unwrap();
    for p in inst.projects() {
        writeln!(out, "project {} {} {}", p.name, p.lower, p.upper).unwrap();
    }
    for a in 0..inst.n() {
        write!(out, "pref {}:", inst.applicant_name(a)).unwrap();
        for &p in inst.prefs(a) {
            write!(out, " {}", inst.project(p).name).unwrap();
        }
        out.push('\n');
    }
    out
}

/// Applies `(line, applicant, project, weight)` entries; edges without an entry weigh 0.
pub fn apply_weights(
    inst: &Instance,
    entries: &[(usize, String, String, i64)],
) -> Result<WeightedInstance> {
    let mut weights: Vec<Vec<Option<i64>>> = (0..inst.n())
        .map(|a| vec![None; inst.prefs(a).len()])
        .collect();
    for (ln, a, p, w) in entries {
        let ai = inst
            .applicant_index(a)
            .ok_or_else(|| parse_err(*ln, format!("unknown applicant `{a}`")))?;
        let pi = inst
            .project_index(p)
            .ok_or_else(|| parse_err(*ln, format!("unknown project `{p}`")))?;
        if !inst.is_acceptable(ai, pi) {
            return Err(parse_err(*ln, format!("`{p}` is not acceptable to `{a}`")));
        }
        let slot = &mut weights[ai][inst.rank_unchecked(ai, Some(pi)) as usize - 1];
        if slot.is_some() {
            return Err(parse_err(*ln, format!("second weight for `{a}` and `{p}`")));
        }
        *slot = Some(*w);
    }
    WeightedInstance::new(
        inst.clone(),
        weights
            .into_iter()
            .map(|r| r.into_iter().map(|w| w.unwrap_or(0)).collect())
            .collect(),
    )
}

/// Parses a file that holds only `weight` lines (and comments).
pub fn parse_weight_lines(text: &str) -> Result<Vec<(usize, String, String, i64)>> {
    let mut out = Vec::new();
    for (ln, l) in lines(text) {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("weight") {
            return Err(parse_err(ln, "expected `weight <applicant> <project> <w>`"));
        }
        let a = toks
            .next()
            .ok_or_else(|| parse_err(ln, "missing applicant id"))?;
        let p = toks
            .next()
            .ok_or_else(|| parse_err(ln, "missing project id"))?;
        let w: i64 = number(ln, toks.next(), "weight")?;
        no_more(ln, toks)?;
        if w < 0 {
            return Err(parse_err(ln, format!("negative weight {w}")));
        }
        out.push((ln, a.to_string(), p.to_string(), w));
    }
    Ok(out)
}

/// Instance text followed by one `weight` line per edge.
pub fn serialize_weighted(winst: &WeightedInstance) -> String {
    let inst = winst.base();
    let mut out = serialize_instance(inst);
    for a in 0..inst.n() {
        for (&p, &w) in inst.prefs(a).iter().zip(&winst.weights()[a]) {
            writeln!(
                out,
                "weight {} {} {w}",
                inst.applicant_name(a),
                inst.project(p).name
            )
            .unwrap();
        }
    }
    out
}

/// Parses `match <applicant> <project>` lines against `inst`.
pub fn parse_matching(inst: &Instance, text: &str) -> Result<Matching> {
    let mut m = Matching::empty(inst.n());
    let mut seen = vec![false; inst.n()];
    for (ln, l) in lines(text) {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("match") {
            return Err(parse_err(ln, "expected `match <applicant> <project>`"));
        }
        let a = toks
            .next()
            .ok_or_else(|| parse_err(ln, "missing applicant id"))?;
        let p = toks
            .next()
            .ok_or_else(|| parse_err(ln, "missing project id"))?;
        no_more(ln, toks)?;
        let ai = inst
            .applicant_index(a)
            .ok_or_else(|| parse_err(ln, format!("unknown applicant `{a}`")))?;
        let pi = inst
            .project_index(p)
            .ok_or_else(|| parse_err(ln, format!("unknown project `{p}`")))?;
        if seen[ai] {
            return Err(parse_err(ln, format!("applicant `{a}` matched twice")));
        }
        if !inst.is_acceptable(ai, pi) {
            return Err(parse_err(ln, format!("`{p}` is not acceptable to `{a}`")));
        }
        seen[ai] = true;
        m.set(ai, Some(pi));
    }
    Ok(m)
}

pub fn serialize_matching(inst: &Instance, m: &Matching) -> String {
    let mut out = String::new();
    for (a, p) in m.pairs() {
        writeln!(
            out,
            "match {} {}",
            inst.applicant_name(a),
            inst.project(p).name
        )
        .unwrap();
    }
    out
}

/// Parses `elements <k>` and `set <e1> <e2> <e3>` lines (elements numbered from 1).
pub fn parse_x3c(text: &str) -> Result<X3c> {
    let mut elements = None;
    let mut sets = Vec::new();
    for (ln, l) in lines(text) {
        let mut toks = l.split_whitespace();
        match toks.next().unwrap() {
            "elements" => {
                if elements.is_some() {
                    return Err(parse_err(ln, "duplicate `elements` declaration"));
                }
                elements = Some(number::<usize>(ln, toks.next(), "element count")?);
                no_more(ln, toks)?;
            }
            "set" => {
                let mut s = [0usize; 3];
                for slot in &mut s {
                    let e: usize = number(ln, toks.next(), "element")?;
                    if e == 0 {
                        return Err(parse_err(ln, "elements are numbered from 1"));
                    }
                    *slot = e - 1;
                }
                no_more(ln, toks)?;
                sets.push((ln, s));
            }
            other => return Err(parse_err(ln, format!("unknown keyword `{other}`"))),
        }
    }
    let k = elements.ok_or_else(|| Error::Format("missing `elements` declaration".into()))?;
    for &(ln, s) in &sets {
        if s.iter().any(|&e| e >= k) {
            return Err(parse_err(ln, format!("element out of range 1..={k}")));
        }
    }
    X3c::new(k, sets.into_iter().map(|(_, s)| s).collect())
}

pub fn serialize_x3c(x: &X3c) -> String {
    let mut out = format!("elements {}\n", x.elements);
    for s in &x.sets {
        writeln!(out, "set {} {} {}", s[0] + 1, s[1] + 1, s[2] + 1).unwrap();
    }
    out
}

/// Parses `vertices <n>` and `prefs <v>: <u> ...` lines (vertices numbered from 1).
pub fn parse_roommates(text: &str) -> Result<Roommates> {
    let mut n = None;
    let mut lists: Vec<Option<Vec<usize>>> = Vec::new();
    for (ln, l) in lines(text) {
        let mut toks = l.split_whitespace();
        match toks.next().unwrap() {
            "vertices" => {
                if n.is_some() {
                    return Err(parse_err(ln, "duplicate `vertices` declaration"));
                }
                let k: usize = number(ln, toks.next(), "vertex count")?;
                no_more(ln, toks)?;
                n = Some(k);
                lists = vec![None; k];
            }
            "prefs" => {
                let k = n.ok_or_else(|| parse_err(ln, "`prefs` before `vertices`"))?;
                let (who, rest) = l["prefs".len()..]
                    .split_once(':')
                    .ok_or_else(|| parse_err(ln, "expected `prefs <v>: <u> ...`"))?;
                let v: usize = number(ln, Some(who.trim()), "vertex")?;
                if v == 0 || v > k {
                    return Err(parse_err(ln, format!("vertex {v} out of range")));
                }
                if lists[v - 1].is_some() {
                    return Err(parse_err(ln, format!("duplicate list for vertex {v}")));
                }
                let mut list = Vec::new();
                for t in rest.split_whitespace() {
                    let u: usize = number(ln, Some(t), "vertex")?;
                    if u == 0 || u > k {
                        return Err(parse_err(ln, format!("vertex {u} out of range")));
                    }
                    list.push(u - 1);
                }
                lists[v - 1] = Some(list);
            }
            other => return Err(parse_err(ln, format!("unknown keyword `{other}`"))),
        }
    }
    n.ok_or_else(|| Error::Format("missing `vertices` declaration".into()))?;
    Roommates::new(lists.into_iter().map(Option::unwrap_or_default).collect())
}

pub fn serialize_roommates(r: &Roommates) -> String {
    let mut out = format!("vertices {}\n", r.vertices());
    for v in 0..r.vertices() {
        write!(out, "prefs {}:", v + 1).unwrap();
        for &u in r.prefs(v) {
            write!(out, " {}", u + 1).unwrap();
        }
        out.push('\n');
    }
    out
}
