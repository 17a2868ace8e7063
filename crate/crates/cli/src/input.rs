//! Reading posets, maps and valuations from files and arguments.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use qdom_core::text::{parse_compact, parse_fin_table, parse_map, parse_poset, parse_valuation};
use qdom_core::{FinCompact, FinMap, MonotoneMap, Poset, Valuation};

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn poset(path: &Path, max_elements: usize) -> Result<Arc<Poset>> {
    let p = parse_poset(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    if p.len() > max_elements {
        bail!(
            "{} has {} elements, more than --max-elements {}",
            path.display(),
            p.len(),
            max_elements
        );
    }
    Ok(Arc::new(p))
}

/// A valuation given inline (`"a:1/2 b:1/2"`) or as `@file`.
pub fn valuation(poset: &Poset, arg: &str) -> Result<Valuation> {
    let text = match arg.strip_prefix('@') {
        Some(path) => read(Path::new(path))?,
        None => arg.to_string(),
    };
    parse_valuation(poset, &text).with_context(|| format!("valuation `{arg}`"))
}

pub fn compact(poset: &Poset, arg: &str) -> Result<FinCompact> {
    parse_compact(poset, arg).with_context(|| format!("compact `{arg}`"))
}

pub fn element(poset: &Poset, name: &str) -> Result<usize> {
    Ok(poset.index_of(name)?)
}

pub fn map(source: &Arc<Poset>, target: &Arc<Poset>, path: &Path) -> Result<MonotoneMap> {
    parse_map(source.clone(), target.clone(), &read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn fin_map(source: &Arc<Poset>, target: &Arc<Poset>, path: &Path) -> Result<FinMap> {
    let table = parse_fin_table(source, target, &read(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(FinMap::new(source.clone(), target.clone(), table)?)
}
