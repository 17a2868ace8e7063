use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// A monotone map between finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    table: Vec<usize>,
}

/// Result of [`map_predicates`]. On finite posets a map is proper exactly
/// when it is monotone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapReport {
    pub monotone: bool,
    pub surjective: bool,
    pub proper: bool,
    /// First pair `x <= y` (source indices) with `f(x) </= f(y)`.
    pub monotone_violation: Option<(usize, usize)>,
    /// First target element outside the image.
    pub missing: Option<usize>,
}

pub fn map_predicates(source: &Poset, target: &Poset, table: &[usize]) -> Result<MapReport> {
    if table.len() != source.len() {
        return Err(Error::TableSize {
            expected: source.len(),
            got: table.len(),
        });
    }
    for &v in table {
        target.check_index(v)?;
    }
    let monotone_violation = source
        .elements()
        .flat_map(|x| source.elements().map(move |y| (x, y)))
        .find(|&(x, y)| source.leq(x, y) && !target.leq(table[x], table[y]));
    let missing = target.elements().find(|y| !table.contains(y));
    let monotone = monotone_violation.is_none();
    Ok(MapReport {
        monotone,
        surjective: missing.is_none(),
        proper: monotone,
        monotone_violation,
        missing,
    })
}

impl MonotoneMap {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, table: Vec<usize>) -> Result<MonotoneMap> {
        let report = map_predicates(&source, &target, &table)?;
        if let Some((x, y)) = report.monotone_violation {
            return Err(Error::NotMonotone(
                source.name(x).to_string(),
                source.name(y).to_string(),
            ));
        }
        Ok(MonotoneMap {
            source,
            target,
            table,
        })
    }


    pub fn identity(poset: Arc<Poset>) -> MonotoneMap {
        let table = poset.elements().collect();
        MonotoneMap {
            source: poset.clone(),
            target: poset,
            table,
        }
    }

    pub fn constant(source: Arc<Poset>, target: Arc<Poset>, value: usize) -> Result<MonotoneMap> {
        target.check_index(value)?;
        let table = vec![value; source.len()];
        Ok(MonotoneMap {
            source,
            target,
            table,
        })
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn predicates(&self) -> MapReport {
        map_predicates(&self.source, &self.target, &self.table).expect("validated at construction")
    }

    pub fn is_surjective(&self) -> bool {
        self.target.elements().all(|y| self.table.contains(&y))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if self.target != other.source {
            return Err(Error::PosetMismatch);
        }
        Ok(MonotoneMap {
            source: self.source.clone(),
            target: other.target.clone(),
            table: self.table.iter().map(|&y| other.table[y]).collect(),
        })
    }

    /// The elements mapped onto `y`, in index order.
    pub fn fiber(&self, y: usize) -> Vec<usize> {
        self.source.elements().filter(|&x| self.table[x] == y).collect()
    }

    /// Pointwise order `self <= other`.
    pub fn pointwise_leq(&self, other: &MonotoneMap) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(&a, &b)| self.target.leq(a, b))
    }
}
