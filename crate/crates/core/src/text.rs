//! Line-oriented text formats for posets, maps, set-valued maps,
//! valuations and admissible maps. `#` starts a comment everywhere.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::MonotoneMap;
use crate::poset::{FinCompact, Poset};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::treeval::AdmissibleMap;
use crate::valuation::Valuation;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn lookup(poset: &Poset, line: usize, name: &str) -> Result<usize> {
    poset
        .index_of(name.trim())
        .map_err(|_| err(line, format!("unknown element `{}`", name.trim())))
}

fn at_line(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { msg, .. } => err(line, msg),
        other => err(line, other.to_string()),
    }
}

/// ```text
/// elements: bot a b top
/// order: bot < a < top; bot < b < top
/// ```
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut names: Option<Vec<String>> = None;
    let mut relations: Vec<(usize, String, String)> = Vec::new();
    for (n, l) in lines(text) {
        let (key, rest) = l.split_once(':').ok_or_else(|| err(n, "expected `key: value`"))?;
        match key.trim() {
            "elements" => {
                if names.is_some() {
                    return Err(err(n, "second `elements:` line"));
                }
                names = Some(rest.split_whitespace().map(String::from).collect());
            }
            "order" => {
                for clause in rest.split(';').map(str::trim).filter(|c| !c.is_empty()) {
                    let chain: Vec<&str> = clause.split('<').map(str::trim).collect();
                    if chain.len() < 2 || chain.iter().any(|c| c.is_empty()) {
                        return Err(err(n, format!("bad order clause `{clause}`")));
                    }
                    for w in chain.windows(2) {
                        relations.push((n, w[0].to_string(), w[1].to_string()));
                    }
                }
            }
            other => return Err(err(n, format!("unknown key `{other}`"))),
        }
    }
    let names = names.ok_or_else(|| err(0, "missing `elements:` line"))?;
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let mut pairs = Vec::with_capacity(relations.len());
    for (n, a, b) in &relations {
        let get = |s: &str| index.get(s).copied().ok_or_else(|| err(*n, format!("unknown element `{s}`")));
        pairs.push((get(a)?, get(b)?));
    }
    Poset::from_relations(names, &pairs)
}

/// Inverse of [`parse_poset`], listing cover pairs only.
pub fn format_poset(poset: &Poset) -> String {
    let covers: Vec<String> = poset
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{} < {}", poset.name(a), poset.name(b)))
        .collect();
    let mut out = format!("elements: {}\n", poset.names().join(" "));
    if !covers.is_empty() {
        out.push_str(&format!("order: {}\n", covers.join("; ")));
    }
    out
}

/// `{a, b}` (braces optional), normalized to its minimal elements.
pub fn parse_compact(poset: &Poset, text: &str) -> Result<FinCompact> {
    let t = text.trim();
    let inner = t.strip_prefix('{').and_then(|s| s.strip_suffix('}')).unwrap_or(t);
    let elems = inner
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| poset.index_of(s))
        .collect::<Result<Vec<_>>>()?;
    poset.normalize(&elems)
}

/// Collects `x -> value` lines, one per source element.
fn arrow_table<'a>(source: &Poset, text: &'a str, skip: impl Fn(&str) -> bool) -> Result<Vec<(usize, &'a str)>> {
    let mut table: Vec<Option<(usize, &str)>> = vec![None; source.len()];
    for (n, l) in lines(text) {
        if skip(l) {
            continue;
        }
        let (x, v) = l.split_once("->").ok_or_else(|| err(n, "expected `x -> value`"))?;
        let x = lookup(source, n, x)?;
        if table[x].is_some() {
            return Err(err(n, format!("`{}` assigned twice", source.name(x))));
        }
        table[x] = Some((n, v.trim()));
    }
    table
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| err(0, format!("no value for `{}`", source.name(x)))))
        .collect()
}

/// Lines `x -> y`.
pub fn parse_map(source: Arc<Poset>, target: Arc<Poset>, text: &str) -> Result<MonotoneMap> {
    let rows = arrow_table(&source, text, |_| false)?;
    let table = rows
        .into_iter()
        .map(|(n, v)| lookup(&target, n, v))
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::new(source, target, table)
}

pub fn format_map(map: &MonotoneMap) -> String {
    map.source()
        .elements()
        .map(|x| format!("{} -> {}\n", map.source().name(x), map.target().name(map.apply(x))))
        .collect()
}

/// Lines `x -> {y1, y2}`; values are normalized.
pub fn parse_fin_table(source: &Poset, target: &Poset, text: &str) -> Result<Vec<FinCompact>> {
    parse_fin_table_skipping(source, target, text, |_| false)
}

fn parse_fin_table_skipping(
    source: &Poset,
    target: &Poset,
    text: &str,
    skip: impl Fn(&str) -> bool,
) -> Result<Vec<FinCompact>> {
    arrow_table(source, text, skip)?
        .into_iter()
        .map(|(n, v)| parse_compact(target, v).map_err(|e| at_line(n, e)))
        .collect()
}

/// A set-valued table plus `control: x -> y` lines, returned as the
/// control table (empty when absent) and the set-valued table.
pub fn parse_controlled(poset: &Poset, text: &str) -> Result<(Vec<usize>, Vec<FinCompact>)> {
    let is_control = |l: &str| l.starts_with("control:");
    let table = parse_fin_table_skipping(poset, poset, text, is_control)?;
    let control_text: String = lines(text)
        .filter_map(|(_, l)| l.strip_prefix("control:").map(|r| format!("{}\n", r.trim())))
        .collect();
    if control_text.is_empty() {
        return Ok((Vec::new(), table));
    }
    let control = arrow_table(poset, &control_text, |_| false)?
        .into_iter()
        .map(|(n, v)| lookup(poset, n, v))
        .collect::<Result<Vec<_>>>()?;
    Ok((control, table))
}

/// Whitespace-separated `elem:p/q`; omitted elements weigh 0 and the
/// weights must sum to 1.
pub fn parse_valuation(poset: &Poset, text: &str) -> Result<Valuation> {
    let weights = parse_weights(poset, text)?;
    Valuation::new(poset, weights)
}

fn parse_weights(poset: &Poset, text: &str) -> Result<Vec<Rational>> {
    let mut weights: Vec<Option<Rational>> = vec![None; poset.len()];
    for (n, l) in lines(text) {
        for entry in l.split_whitespace() {
            let (name, w) = entry
                .split_once(':')
                .ok_or_else(|| err(n, format!("expected `elem:p/q`, got `{entry}`")))?;
            let x = lookup(poset, n, name)?;
            if weights[x].is_some() {
                return Err(err(n, format!("`{name}` given twice")));
            }
            weights[x] = Some(parse_rational(w).map_err(|e| at_line(n, e))?);
        }
    }
    Ok(weights.into_iter().map(Option::unwrap_or_default).collect())
}

pub fn format_valuation(poset: &Poset, v: &Valuation) -> String {
    v.format(poset)
}

const ADMISSIBLE_HEADER: &str = "kind: admissible";

/// A `kind: admissible` header followed by `node:p/q` entries.
pub fn parse_admissible(tree: Arc<Poset>, text: &str) -> Result<AdmissibleMap> {
    let mut body = String::new();
    let mut header = false;
    for (_, l) in lines(text) {
        if l.replace(' ', "") == ADMISSIBLE_HEADER.replace(' ', "") {
            header = true;
        } else {
            body.push_str(l);
            body.push('\n');
        }
    }
    if !header {
        return Err(err(1, format!("missing `{ADMISSIBLE_HEADER}` header")));
    }
    let values = parse_weights(&tree, &body)?;
    AdmissibleMap::new(tree, values)
}

pub fn format_admissible(f: &AdmissibleMap) -> String {
    let tree = f.tree();
    let mut out = format!("{ADMISSIBLE_HEADER}\n");
    for t in tree.elements() {
        out.push_str(&format!("{}:{}\n", tree.name(t), format_rational(f.value(t))));
    }
    out
}
