//! Commands on plain posets and the Smyth powerdomain.

use std::fmt::Write;
use std::sync::Arc;

use anyhow::{bail, Result};
use qdom_core::enumerate::{enumerate_posets, enumerate_unlabeled, monotone_fin_tables};
use qdom_core::smyth::{
    canonical_quasi_section, check_monad_laws, check_quasi_retraction, fin_poset, koenig_chain,
    section_identity_violation, LawViolation,
};
use qdom_core::text::format_poset;
use qdom_core::treeval::path_space;
use qdom_core::{FinCompact, FinMap, MonotoneMap, Poset};
use serde_json::{json, Value};

use crate::report::{self, Report};

fn covers_text(p: &Poset) -> String {
    p.covers()
        .into_iter()
        .map(|(a, b)| format!("{} < {}\n", p.name(a), p.name(b)))
        .collect()
}

fn covers_json(p: &Poset) -> Value {
    json!(p
        .covers()
        .into_iter()
        .map(|(a, b)| [p.name(a), p.name(b)])
        .collect::<Vec<_>>())
}

fn graph(p: &Poset, name: &str, dot: bool) -> Report {
    let json = json!({ "elements": p.names(), "covers": covers_json(p) });
    if dot {
        let d = p.to_dot(name);
        return Report::new(d.clone(), json!({ "dot": d }));
    }
    Report::new(covers_text(p), json)
}

pub fn check_poset(p: &Poset, require_pointed: bool, require_tree: bool) -> Report {
    let bottom = p.bottom().map(|b| p.name(b).to_string());
    let top = p.top().map(|t| p.name(t).to_string());
    let tree = p.is_tree().unwrap_or(false);
    let text = format!(
        "elements: {}\ncovers: {}\nbottom: {}\ntop: {}\ntree: {}\n",
        p.len(),
        p.covers().len(),
        bottom.as_deref().unwrap_or("none"),
        top.as_deref().unwrap_or("none"),
        tree
    );
    let json = json!({
        "elements": p.len(),
        "covers": p.covers().len(),
        "bottom": bottom,
        "top": top,
        "tree": tree,
    });
    let ok = (!require_pointed || p.bottom().is_some()) && (!require_tree || tree);
    Report::new(text, json).holds(ok)
}

pub fn hasse(p: &Poset, dot: bool) -> Report {
    graph(p, "hasse", dot)
}

pub fn upper_sets(p: &Poset, cap: usize) -> Result<Report> {
    let ups = p.upper_sets_with_cap(cap)?;
    let text = ups.iter().map(|u| format!("{}\n", report::set_text(p, u))).collect();
    let json = json!({
        "count": ups.len(),
        "upper_sets": ups.iter().map(|u| report::upper_set(p, u)).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, json))
}

pub fn pathspace(p: &Poset, dot: bool) -> Result<Report> {
    let (pi, r) = path_space(p)?;
    if dot {
        return Ok(graph(&pi, "paths", true));
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    for x in pi.elements() {
        let end = p.name(r.apply(x));
        writeln!(text, "{} -> {}", pi.name(x), end)?;
        rows.push(json!({ "path": pi.name(x), "end": end }));
    }
    text.push_str(&covers_text(&pi));
    Ok(Report::new(text, json!({ "paths": rows, "covers": covers_json(&pi) })))
}

/// `Fin(P)` itself, or `h†(Q)` for a table `h` when one is given.
pub fn fin(p: &Arc<Poset>, dot: bool, dagger: Option<(FinMap, FinCompact)>) -> Result<Report> {
    if let Some((h, q)) = dagger {
        let image = h.dagger(&q)?;
        let text = format!(
            "{} -> {}\n",
            h.source().format_compact(&q),
            h.target().format_compact(&image)
        );
        return Ok(Report::new(
            text,
            json!({ "compact": report::compact(h.source(), &q), "dagger": report::compact(h.target(), &image) }),
        ));
    }
    let (fin, _) = fin_poset(p)?;
    Ok(graph(&fin, "fin", dot))
}

fn violation_text(v: &LawViolation) -> String {
    format!(
        "violation: {:?} at {}: expected {}, got {}\n",
        v.law, v.at, v.expected, v.got
    )
}

/// Checks `h` and `g` when given, otherwise every pair of monotone tables
/// `X -> Fin(Y)`, `Y -> Fin(Z)`, stopping at the first violation.
pub fn monad_laws(
    x: &Arc<Poset>,
    y: &Arc<Poset>,
    z: &Arc<Poset>,
    given: Option<(FinMap, FinMap)>,
    cap: u64,
) -> Result<Report> {
    let mut checked = 0u64;
    let mut violation = None;
    if let Some((h, g)) = given {
        checked = 1;
        violation = check_monad_laws(&h, &g)?;
    } else {
        let hs = monotone_fin_tables(x, y);
        let gs = monotone_fin_tables(y, z);
        let total = hs.len() as u64 * gs.len() as u64;
        if total > cap {
            bail!("{total} pairs of maps exceed --cap {cap}");
        }
        'outer: for h in &hs {
            let h = FinMap::new(x.clone(), y.clone(), h.clone())?;
            for g in &gs {
                let g = FinMap::new(y.clone(), z.clone(), g.clone())?;
                checked += 1;
                if let Some(v) = check_monad_laws(&h, &g)? {
                    violation = Some(v);
                    break 'outer;
                }
            }
        }
    }
    let text = match &violation {
        None => format!("monad laws hold on {checked} pair(s)\n"),
        Some(v) => violation_text(v),
    };
    let json = json!({ "checked": checked, "holds": violation.is_none(), "violation": violation });
    Ok(Report::new(text, json).holds(violation.is_none()))
}

pub fn quasi_retraction(r: &MonotoneMap, qs: Option<FinMap>) -> Result<Report> {
    let qs = match qs {
        Some(q) => q,
        None => match canonical_quasi_section(r) {
            Ok(q) => q,
            Err(e) => {
                let text = format!("surjective: false\nreason: {e}\n");
                return Ok(Report::new(text, json!({ "surjective": false, "reason": e.to_string() })).holds(false));
            }
        },
    };
    let rep = check_quasi_retraction(r, &qs)?;
    let identity = section_identity_violation(r, &qs)?;
    let y = r.target();
    let mut text = format!(
        "retraction_law: {}\nprojection_law: {}\ncanonical: {}\nsection_identity: {}\n",
        rep.retraction_law,
        rep.projection_law,
        rep.canonical,
        identity.is_none()
    );
    if let Some(table) = &rep.canonical_table {
        text.push_str("canonical qs:\n");
        for line in table {
            writeln!(text, "  {line}")?;
        }
    }
    match (&rep.witness, &identity) {
        (Some(w), _) => writeln!(text, "witness: {}", w.explanation)?,
        (None, Some(q)) => writeln!(text, "witness: Smyth r(qs†({0})) differs from {0}", y.format_compact(q))?,
        (None, None) => text.push_str("witness: none\n"),
    }
    let holds = rep.retraction_law && rep.projection_law && identity.is_none();
    let mut json = serde_json::to_value(&rep)?;
    json["section_identity"] = json!(identity.is_none());
    json["section_identity_witness"] = json!(identity.map(|q| report::compact(y, &q)));
    Ok(Report::new(text, json).holds(holds))
}

pub fn koenig(p: &Poset, stages: &[FinCompact], y: usize) -> Result<Report> {
    let chain = koenig_chain(p, stages, y)?;
    let parts: Vec<&str> = chain.iter().map(|&c| p.name(c)).collect();
    let text = format!("chain: {}\npoint: {}\n", parts.join(" <= "), p.name(y));
    Ok(Report::new(text, json!({ "chain": parts, "point": p.name(y) })))
}

pub fn enumerate(n: usize, unlabeled: bool, list: bool) -> Result<Report> {
    let ps = if unlabeled {
        enumerate_unlabeled(n)?
    } else {
        enumerate_posets(n)?
    };
    let mut text = format!("posets: {}\n", ps.len());
    if list {
        for p in &ps {
            text.push('\n');
            text.push_str(&format_poset(p));
        }
    }
    let mut json = json!({ "elements": n, "unlabeled": unlabeled, "count": ps.len() });
    if list {
        json["posets"] = json!(ps.iter().map(format_poset).collect::<Vec<_>>());
    }
    Ok(Report::new(text, json))
}
