//! The Smyth powerdomain monad on finite posets, quasi-retractions and
//! chain extraction from nested stages.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::MonotoneMap;
use crate::poset::{FinCompact, Poset};

/// Guard on the number of antichains when `Fin(P)` is materialized.
pub const FIN_CAP: usize = 100_000;

/// A Smyth-monotone map `X -> Fin(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    table: Vec<FinCompact>,
}

impl FinMap {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, table: Vec<FinCompact>) -> Result<FinMap> {
        if table.len() != source.len() {
            return Err(Error::TableSize {
                expected: source.len(),
                got: table.len(),
            });
        }
        for e in &table {
            target.check_compact(e)?;
            if e.is_empty() {
                return Err(Error::EmptySet);
            }
            if target.normalize(e.elements())? != *e {
                return Err(Error::Precondition("value is not a canonical antichain".into()));
            }
        }
        for x in source.elements() {
            for y in source.elements() {
                if source.leq(x, y) && !target.smyth_le(&table[x], &table[y]) {
                    return Err(Error::NotMonotone(
                        source.name(x).to_string(),
                        source.name(y).to_string(),
                    ));
                }
            }
        }
        Ok(FinMap {
            source,
            target,
            table,
        })
    }

    pub(crate) fn new_unchecked(source: Arc<Poset>, target: Arc<Poset>, table: Vec<FinCompact>) -> FinMap {
        FinMap {
            source,
            target,
            table,
        }
    }

    /// The unit `x ↦ ↑x`.
    pub fn eta(poset: Arc<Poset>) -> FinMap {
        let table = poset.elements().map(FinCompact::singleton).collect();
        FinMap {
            source: poset.clone(),
            target: poset,
            table,
        }
    }

    /// `η ∘ r`.
    pub fn from_map(r: &MonotoneMap) -> FinMap {
        FinMap {
            source: r.source().clone(),
            target: r.target().clone(),
            table: r.table().iter().map(|&y| FinCompact::singleton(y)).collect(),
        }
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn table(&self) -> &[FinCompact] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> &FinCompact {
        &self.table[x]
    }

    /// Kleisli extension: `h†(↑E) = ↑⋃_{x∈E} h(x)`. Monotonicity of `h`
    /// makes it enough to range over the antichain `E` itself.
    pub fn dagger(&self, q: &FinCompact) -> Result<FinCompact> {
        self.source.check_compact(q)?;
        Ok(self.dagger_unchecked(q))
    }

    pub(crate) fn dagger_unchecked(&self, q: &FinCompact) -> FinCompact {
        if self.target.len() <= 64 {
            let mask = q
                .elements()
                .iter()
                .flat_map(|&x| self.table[x].elements())
                .fold(0u64, |m, &y| m | 1 << y);
            return self.target.normalize_mask(mask);
        }
        let union: Vec<usize> = q
            .elements()
            .iter()
            .flat_map(|&x| self.table[x].elements().iter().copied())
            .collect();
        self.target.normalize_lossy(&union)
    }

    /// Kleisli composition `g† ∘ self`.
    pub fn then(&self, g: &FinMap) -> Result<FinMap> {
        if self.target != g.source {
            return Err(Error::PosetMismatch);
        }
        Ok(FinMap {
            source: self.source.clone(),
            target: g.target.clone(),
            table: self.table.iter().map(|q| g.dagger_unchecked(q)).collect(),
        })
    }

    pub fn format_table(&self) -> String {
        let mut out = String::new();
        for x in self.source.elements() {
            out.push_str(&format!(
                "{} -> {}\n",
                self.source.name(x),
                self.target.format_compact(&self.table[x])
            ));
        }
        out
    }
}

/// `η(x) = ↑x` as a canonical antichain.
pub fn eta(poset: &Poset, x: usize) -> Result<FinCompact> {
    poset.check_index(x)?;
    Ok(FinCompact::singleton(x))
}

/// `Smyth r (↑E) = ↑{r(x) | x ∈ E}`.
pub fn smyth_map(r: &MonotoneMap, q: &FinCompact) -> Result<FinCompact> {
    r.source().check_compact(q)?;
    let image: Vec<usize> = q.elements().iter().map(|&x| r.apply(x)).collect();
    Ok(r.target().normalize_lossy(&image))
}

/// Multiplication: flattens an antichain of compacts into one compact.
pub fn mu(poset: &Poset, q2: &[FinCompact]) -> Result<FinCompact> {
    for (i, a) in q2.iter().enumerate() {
        poset.check_compact(a)?;
        for b in &q2[i + 1..] {
            if poset.smyth_le(a, b) || poset.smyth_le(b, a) {
                return Err(Error::Precondition(format!(
                    "{} and {} are Smyth-comparable",
                    poset.format_compact(a),
                    poset.format_compact(b)
                )));
            }
        }
    }
    let union: Vec<usize> = q2.iter().flat_map(|q| q.elements().iter().copied()).collect();
    poset.normalize(&union)
}

/// `Fin(P)` as a poset of canonical antichains under the Smyth order.
/// Elements are named by their set notation.
pub fn fin_poset(poset: &Poset) -> Result<(Poset, Vec<FinCompact>)> {
    let carrier = poset.antichains();
    if carrier.len() > FIN_CAP {
        return Err(Error::CapExceeded {
            size: carrier.len(),
            cap: FIN_CAP,
        });
    }
    let names = carrier.iter().map(|e| poset.format_compact(e)).collect();
    let fin = Poset::from_fn(names, |i, j| poset.smyth_le(&carrier[i], &carrier[j]))?;
    Ok((fin, carrier))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonadLaw {
    /// `η† = id`
    UnitExtension,
    /// `h† ∘ η = h`
    LeftUnit,
    /// `(g† ∘ h)† = g† ∘ h†`
    Associativity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: MonadLaw,
    pub at: String,
    pub expected: String,
    pub got: String,
}

/// Checks the three monad laws for `h: X -> Fin(Y)` and `g: Y -> Fin(Z)`
/// on every point of `X` and every compact of `Fin(X)`; returns the first
/// violation.
pub fn check_monad_laws(h: &FinMap, g: &FinMap) -> Result<Option<LawViolation>> {
    let x = h.source.clone();
    let gh = h.then(g)?;
    let carrier = x.antichains();
    let eta_x = FinMap::eta(x.clone());
    for q in &carrier {
        let got = eta_x.dagger_unchecked(q);
        if got != *q {
            return Ok(Some(LawViolation {
                law: MonadLaw::UnitExtension,
                at: x.format_compact(q),
                expected: x.format_compact(q),
                got: x.format_compact(&got),
            }));
        }
    }
    for p in x.elements() {
        let got = h.dagger_unchecked(&FinCompact::singleton(p));
        if got != h.table[p] {
            return Ok(Some(LawViolation {
                law: MonadLaw::LeftUnit,
                at: x.name(p).to_string(),
                expected: h.target.format_compact(&h.table[p]),
                got: h.target.format_compact(&got),
            }));
        }
    }
    for q in &carrier {
        let lhs = gh.dagger_unchecked(q);
        let rhs = g.dagger_unchecked(&h.dagger_unchecked(q));
        if lhs != rhs {
            return Ok(Some(LawViolation {
                law: MonadLaw::Associativity,
                at: x.format_compact(q),
                expected: g.target.format_compact(&lhs),
                got: g.target.format_compact(&rhs),
            }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub element: String,
    pub explanation: String,
}

/// Outcome of checking a candidate quasi-section against a map `r: X -> Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiSectionReport {
    /// `Smyth r (qs(y)) = ↑y` for every `y`.
    pub retraction_law: bool,
    /// `x ∈ ↑qs(r(x))` for every `x`.
    pub projection_law: bool,
    /// Whether `qs` is the canonical quasi-section `y ↦ min r⁻¹(↑y)`.
    pub canonical: bool,
    /// The canonical quasi-section, one line per `y`, when `r` is surjective.
    pub canonical_table: Option<Vec<String>>,
    pub witness: Option<Witness>,
}

pub fn check_quasi_retraction(r: &MonotoneMap, qs: &FinMap) -> Result<QuasiSectionReport> {
    if qs.source != *r.target() || qs.target != *r.source() {
        return Err(Error::PosetMismatch);
    }
    let (x, y) = (r.source(), r.target());
    let mut witness = None;
    let mut retraction_law = true;
    for b in y.elements() {
        let image = smyth_map(r, qs.apply(b))?;
        if image != FinCompact::singleton(b) {
            retraction_law = false;
            witness.get_or_insert_with(|| Witness {
                element: y.name(b).to_string(),
                explanation: format!(
                    "Smyth r(qs({})) = {} but should be {{{}}}",
                    y.name(b),
                    y.format_compact(&image),
                    y.name(b)
                ),
            });
            break;
        }
    }
    let mut projection_law = true;
    for a in x.elements() {
        let q = qs.apply(r.apply(a));
        if !x.in_up(q, a) {
            projection_law = false;
            witness.get_or_insert_with(|| Witness {
                element: x.name(a).to_string(),
                explanation: format!(
                    "{} is not in ↑qs({}) = ↑{}",
                    x.name(a),
                    y.name(r.apply(a)),
                    x.format_compact(q)
                ),
            });
            break;
        }
    }
    let canonical = canonical_quasi_section(r).ok();
    Ok(QuasiSectionReport {
        retraction_law,
        projection_law,
        canonical: canonical.as_ref() == Some(qs),
        canonical_table: canonical.map(|c| c.format_table().lines().map(String::from).collect()),
        witness,
    })
}

/// `qs(y) = min r⁻¹(↑y)`; the unique quasi-section making a proper
/// surjective map a quasi-projection.
pub fn canonical_quasi_section(r: &MonotoneMap) -> Result<FinMap> {
    let (x, y) = (r.source(), r.target());
    if let Some(missing) = y.elements().find(|b| r.fiber(*b).is_empty()) {
        return Err(Error::NotSurjective(y.name(missing).to_string()));
    }
    let table = y
        .elements()
        .map(|b| {
            let pre: Vec<usize> = x.elements().filter(|&a| y.leq(b, r.apply(a))).collect();
            x.normalize_lossy(&pre)
        })
        .collect();
    Ok(FinMap::new_unchecked(y.clone(), x.clone(), table))
}

/// First `Q ∈ Fin(Y)` where `Smyth r ∘ qs† ≠ id`, if any.
pub fn section_identity_violation(r: &MonotoneMap, qs: &FinMap) -> Result<Option<FinCompact>> {
    if qs.source != *r.target() || qs.target != *r.source() {
        return Err(Error::PosetMismatch);
    }
    for q in r.target().antichains() {
        if smyth_map(r, &qs.dagger_unchecked(&q))? != q {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Picks `y_0 <= y_1 <= ... <= y_d` with `y_i ∈ E_i` and `y_d <= y` from
/// nested stages `↑E_0 ⊇ ↑E_1 ⊇ ...` all containing `y`. Searches the tree
/// of such chains restricted to `E_i ∩ ↓y` depth-first, children in index
/// order, and returns the lexicographically least branch.
pub fn koenig_chain(poset: &Poset, stages: &[FinCompact], y: usize) -> Result<Vec<usize>> {
    poset.check_index(y)?;
    if stages.is_empty() {
        return Err(Error::EmptySet);
    }
    for (i, e) in stages.iter().enumerate() {
        poset.check_compact(e)?;
        if i > 0 && !poset.smyth_le(&stages[i - 1], e) {
            return Err(Error::Stage {
                index: i,
                reason: format!(
                    "↑{} does not contain ↑{}",
                    poset.format_compact(&stages[i - 1]),
                    poset.format_compact(e)
                ),
            });
        }
        if !poset.in_up(e, y) {
            return Err(Error::Stage {
                index: i,
                reason: format!("{} is not in ↑{}", poset.name(y), poset.format_compact(e)),
            });
        }
    }
    let layers: Vec<Vec<usize>> = stages
        .iter()
        .map(|e| e.elements().iter().copied().filter(|&m| poset.leq(m, y)).collect())
        .collect();
    let mut chain = Vec::with_capacity(layers.len());
    if extend_chain(poset, &layers, &mut chain) {
        Ok(chain)
    } else {
        // unreachable when the preconditions hold
        Err(Error::Verification("no chain through the stages".into()))
    }
}

fn extend_chain(poset: &Poset, layers: &[Vec<usize>], chain: &mut Vec<usize>) -> bool {
    let depth = chain.len();
    if depth == layers.len() {
        return true;
    }
    for &m in &layers[depth] {
        if chain.last().is_none_or(|&prev| poset.leq(prev, m)) {
            chain.push(m);
            if extend_chain(poset, layers, chain) {
                return true;
            }
            chain.pop();
        }
    }
    false
}
