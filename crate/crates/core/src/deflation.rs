//! Quasi-deflations on finite posets: `x ↦ ↑φ(x)` with `x ∈ ↑φ(x)`,
//! monotone for the Smyth order. Also their controlled variant and the
//! finitely separating set it induces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::map::MonotoneMap;
use crate::poset::{FinCompact, Poset};
use crate::smyth::FinMap;

/// Violations found by [`check_quasi_deflation`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QdReport {
    /// Elements `x` with `x ∉ ↑φ(x)`.
    pub membership: Vec<usize>,
    /// Pairs `x <= y` with `↑φ(x) ⊉ ↑φ(y)`.
    pub monotonicity: Vec<(usize, usize)>,
}

impl QdReport {
    pub fn is_valid(&self) -> bool {
        self.membership.is_empty() && self.monotonicity.is_empty()
    }
}

/// Checks a candidate table. Values need not be canonical antichains.
pub fn check_quasi_deflation(poset: &Poset, table: &[FinCompact]) -> Result<QdReport> {
    if table.len() != poset.len() {
        return Err(Error::TableSize {
            expected: poset.len(),
            got: table.len(),
        });
    }
    for e in table {
        poset.check_compact(e)?;
    }
    let membership = poset.elements().filter(|&x| !poset.in_up(&table[x], x)).collect();
    let mut monotonicity = Vec::new();
    for x in poset.elements() {
        for y in poset.elements() {
            if poset.leq(x, y) && !poset.smyth_le(&table[x], &table[y]) {
                monotonicity.push((x, y));
            }
        }
    }
    Ok(QdReport {
        membership,
        monotonicity,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuasiDeflation {
    poset: Arc<Poset>,
    table: Vec<FinCompact>,
}

impl QuasiDeflation {
    pub fn new(poset: Arc<Poset>, table: Vec<FinCompact>) -> Result<QuasiDeflation> {
        let report = check_quasi_deflation(&poset, &table)?;
        if let Some(&x) = report.membership.first() {
            return Err(Error::Verification(format!(
                "{} is not above {}",
                poset.name(x),
                poset.format_compact(&table[x])
            )));
        }
        if let Some(&(x, y)) = report.monotonicity.first() {
            return Err(Error::NotMonotone(poset.name(x).into(), poset.name(y).into()));
        }
        let table = table
            .iter()
            .map(|e| poset.normalize(e.elements()))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuasiDeflation { poset, table })
    }

    /// `x ↦ {x}`.
    pub fn eta(poset: Arc<Poset>) -> QuasiDeflation {
        let table = poset.elements().map(FinCompact::singleton).collect();
        QuasiDeflation { poset, table }
    }

    /// `x ↦ {⊥}`.
    pub fn bottom(poset: Arc<Poset>) -> Result<QuasiDeflation> {
        let b = poset.bottom().ok_or(Error::NotPointed)?;
        let table = vec![FinCompact::singleton(b); poset.len()];
        Ok(QuasiDeflation { poset, table })
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn table(&self) -> &[FinCompact] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> &FinCompact {
        &self.table[x]
    }

    /// The distinct values `φ(x)`, in first-occurrence order.
    pub fn image(&self) -> Vec<FinCompact> {
        let mut out: Vec<FinCompact> = Vec::new();
        for e in &self.table {
            if !out.contains(e) {
                out.push(e.clone());
            }
        }
        out
    }

    pub fn as_fin_map(&self) -> FinMap {
        FinMap::new_unchecked(self.poset.clone(), self.poset.clone(), self.table.clone())
    }

    /// Pointwise Smyth order: `↑self(x) ⊇ ↑other(x)` everywhere.
    pub fn below(&self, other: &QuasiDeflation) -> bool {
        self.table
            .iter()
            .zip(&other.table)
            .all(|(a, b)| self.poset.smyth_le(a, b))
    }

    pub fn format_table(&self) -> String {
        self.as_fin_map().format_table()
    }
}

/// `φ† ∘ φ`.
pub fn qd_self_compose(phi: &QuasiDeflation) -> QuasiDeflation {
    let f = phi.as_fin_map();
    let table = phi.table.iter().map(|e| f.dagger_unchecked(e)).collect();
    QuasiDeflation {
        poset: phi.poset.clone(),
        table,
    }
}

/// `χ(x, y) = φ(x) × ψ(y)` on the product poset.
pub fn product_qd(phi: &QuasiDeflation, psi: &QuasiDeflation) -> QuasiDeflation {
    let m = psi.poset.len();
    let poset = Arc::new(phi.poset.product(&psi.poset));
    let table = poset
        .elements()
        .map(|p| {
            let (x, y) = (p / m, p % m);
            let mut elems: Vec<usize> = phi.table[x]
                .elements()
                .iter()
                .flat_map(|&a| psi.table[y].elements().iter().map(move |&b| a * m + b))
                .collect();
            elems.sort_unstable();
            // a product of antichains is an antichain
            poset.normalize_lossy(&elems)
        })
        .collect();
    QuasiDeflation { poset, table }
}

/// Whether `↑E_k ⊇ ↑φ(x_k) ∋ x_k` for every pair.
pub fn separates(phi: &QuasiDeflation, pairs: &[(FinCompact, usize)]) -> bool {
    pairs.iter().all(|(e, x)| {
        let v = phi.apply(*x);
        phi.poset.in_up(v, *x) && phi.poset.smyth_le(e, v)
    })
}

fn check_pairs(poset: &Poset, pairs: &[(FinCompact, usize)]) -> Result<()> {
    for (e, x) in pairs {
        poset.check_compact(e)?;
        poset.check_index(*x)?;
        if !poset.in_up(e, *x) {
            return Err(Error::Precondition(format!(
                "{} is not in the up-closure of {}",
                poset.name(*x),
                poset.format_compact(e)
            )));
        }
    }
    Ok(())
}

/// A quasi-deflation separating the pairs `(E_k, x_k)`. On a finite poset
/// the unit always does, so it is the answer.
pub fn qfs_separator(poset: Arc<Poset>, pairs: &[(FinCompact, usize)]) -> Result<QuasiDeflation> {
    check_pairs(&poset, pairs)?;
    let eta = QuasiDeflation::eta(poset);
    if !separates(&eta, pairs) {
        return Err(Error::Verification("unit fails to separate".into()));
    }
    Ok(eta)
}

/// Index of the first candidate separating all pairs.
pub fn qfs_search(candidates: &[QuasiDeflation], pairs: &[(FinCompact, usize)]) -> Result<Option<usize>> {
    if let Some(first) = candidates.first() {
        check_pairs(first.poset(), pairs)?;
    }
    Ok(candidates.iter().position(|phi| separates(phi, pairs)))
}

/// First pair `(i, j)` of family members with no member above both.
pub fn check_directed(family: &[QuasiDeflation]) -> Option<(usize, usize)> {
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !family
                .iter()
                .any(|k| family[i].below(k) && family[j].below(k))
            {
                return Some((i, j));
            }
        }
    }
    None
}

/// Violations found by [`check_controlled`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ControlledReport {
    pub deflation: QdReport,
    /// Elements `x` with `↑φ(x) ⊄ ↑f(x)`.
    pub inclusion: Vec<usize>,
    /// Elements `x` with `f(x) </= x`, when that was asked for.
    pub below_identity: Vec<usize>,
}

impl ControlledReport {
    pub fn is_valid(&self) -> bool {
        self.deflation.is_valid() && self.inclusion.is_empty() && self.below_identity.is_empty()
    }
}

pub fn check_controlled(control: &MonotoneMap, table: &[FinCompact], below_identity: bool) -> Result<ControlledReport> {
    let poset = control.source();
    if control.target() != poset {
        return Err(Error::PosetMismatch);
    }
    let deflation = check_quasi_deflation(poset, table)?;
    let inclusion = poset
        .elements()
        .filter(|&x| table[x].elements().iter().any(|&m| !poset.leq(control.apply(x), m)))
        .collect();
    let below_identity = if below_identity {
        poset.elements().filter(|&x| !poset.leq(control.apply(x), x)).collect()
    } else {
        Vec::new()
    };
    Ok(ControlledReport {
        deflation,
        inclusion,
        below_identity,
    })
}

/// A pair `(f, φ)` with `↑φ(x) ⊆ ↑f(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlledQuasiDeflation {
    control: MonotoneMap,
    deflation: QuasiDeflation,
}

impl ControlledQuasiDeflation {
    pub fn new(control: MonotoneMap, deflation: QuasiDeflation) -> Result<ControlledQuasiDeflation> {
        if control.source() != deflation.poset() {
            return Err(Error::PosetMismatch);
        }
        let report = check_controlled(&control, deflation.table(), false)?;
        if let Some(&x) = report.inclusion.first() {
            return Err(Error::Verification(format!(
                "value at {} escapes the control",
                control.source().name(x)
            )));
        }
        Ok(ControlledQuasiDeflation { control, deflation })
    }

    pub fn control(&self) -> &MonotoneMap {
        &self.control
    }

    pub fn deflation(&self) -> &QuasiDeflation {
        &self.deflation
    }
}

/// `M = ⋃ img φ`, verified to satisfy: for every `x` some `m ∈ M` has
/// `f(x) <= m <= x`. Requires `f <= id`.
pub fn separating_set_from_controlled(c: &ControlledQuasiDeflation) -> Result<Vec<usize>> {
    let poset = c.deflation.poset();
    let report = check_controlled(&c.control, c.deflation.table(), true)?;
    if let Some(&x) = report.below_identity.first() {
        return Err(Error::Precondition(format!("control is not below the identity at {}", poset.name(x))));
    }
    let mut m: Vec<usize> = c
        .deflation
        .table()
        .iter()
        .flat_map(|e| e.elements().iter().copied())
        .collect();
    m.sort_unstable();
    m.dedup();
    for x in poset.elements() {
        let fx = c.control.apply(x);
        if !m.iter().any(|&y| poset.leq(fx, y) && poset.leq(y, x)) {
            return Err(Error::Verification(format!("no separating element for {}", poset.name(x))));
        }
    }
    Ok(m)
}
