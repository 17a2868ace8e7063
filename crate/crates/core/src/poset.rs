//! Finite posets, their upper sets (the Scott opens of a finite poset) and
//! finitary compacts represented by canonical antichains.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default bound on the number of elements for upper-set enumeration.
pub const UPPER_SET_CAP: usize = 20;

/// A finite partially ordered set with a dense `<=` table.
///
/// Elements are addressed by their index in declaration order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<bool>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(a, b)| format!("{}<{}", self.names[a], self.names[b]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// Builds the reflexive-transitive closure of `relations` over `names`.
    pub fn from_relations(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Poset> {
        let n = names.len();
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::IndexOutOfRange(a.max(b)));
            }
            leq[a * n + b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::Cycle(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Poset { names, leq })
    }

    /// Builds a poset from a full `<=` table, checking the order axioms.
    pub fn from_table(names: Vec<String>, leq: Vec<bool>) -> Result<Poset> {
        let n = names.len();
        if leq.len() != n * n {
            return Err(Error::TableSize {
                expected: n * n,
                got: leq.len(),
            });
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| leq[i * n + j])
            .collect();
        let poset = Poset::from_relations(names, &pairs)?;
        if poset.leq != leq {
            return Err(Error::Precondition("relation is not transitive".into()));
        }
        Ok(poset)
    }

    pub(crate) fn from_table_unchecked(names: Vec<String>, leq: Vec<bool>) -> Poset {
        debug_assert_eq!(leq.len(), names.len() * names.len());
        Poset { names, leq }
    }

    /// Builds a poset from an order predicate on indices `0..n`.
    pub fn from_fn(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Poset> {
        let n = names.len();
        let table = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        Poset::from_table(names, table)
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Poset {
        let names = (0..n).map(|i| i.to_string()).collect();
        Poset::from_table_unchecked(names, (0..n * n).map(|k| k / n <= k % n).collect())
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> Poset {
        let names = (0..n).map(|i| i.to_string()).collect();
        Poset::from_table_unchecked(names, (0..n * n).map(|k| k / n == k % n).collect())
    }

    /// The four-element lattice `bot < a, b < top`.
    pub fn diamond() -> Poset {
        let names = ["bot", "a", "b", "top"].map(String::from).to_vec();
        Poset::from_relations(names, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("diamond")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn check_index(&self, x: usize) -> Result<usize> {
        if x < self.len() {
            Ok(x)
        } else {
            Err(Error::IndexOutOfRange(x))
        }
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// The least element, if any.
    pub fn bottom(&self) -> Option<usize> {
        self.elements().find(|&b| self.elements().all(|x| self.leq(b, x)))
    }

    /// The greatest element, if any.
    pub fn top(&self) -> Option<usize> {
        self.elements().find(|&t| self.elements().all(|x| self.leq(x, t)))
    }

    pub fn up_closure(&self, set: &[usize]) -> Result<UpperSet> {
        let mut members = vec![false; self.len()];
        for &x in set {
            self.check_index(x)?;
            for y in self.elements() {
                if self.leq(x, y) {
                    members[y] = true;
                }
            }
        }
        Ok(UpperSet { members })
    }

    /// `{y | y <= x for some x in set}`, returned as a membership mask.
    pub fn down_closure(&self, set: &[usize]) -> Result<Vec<bool>> {
        let mut members = vec![false; self.len()];
        for &x in set {
            self.check_index(x)?;
            for y in self.elements() {
                if self.leq(y, x) {
                    members[y] = true;
                }
            }
        }
        Ok(members)
    }

    /// All pairs `(y, y')` with `y` immediately below `y'`, in index order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in self.elements() {
            for y in self.elements() {
                if self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Upper covers of `x`, in index order.
    pub fn successors(&self, x: usize) -> Vec<usize> {
        self.elements()
            .filter(|&y| self.lt(x, y) && !self.elements().any(|z| self.lt(x, z) && self.lt(z, y)))
            .collect()
    }

    /// Every upward-closed subset, sorted by membership mask (element `i` is
    /// bit `i`), so the empty set comes first and the whole poset last.
    pub fn upper_sets(&self) -> Result<Vec<UpperSet>> {
        self.upper_sets_with_cap(UPPER_SET_CAP)
    }

    pub fn upper_sets_with_cap(&self, cap: usize) -> Result<Vec<UpperSet>> {
        if self.len() > cap {
            return Err(Error::CapExceeded {
                size: self.len(),
                cap,
            });
        }
        // Upper sets are in bijection with antichains (their minimal elements).
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.antichains_rec(0, &mut chosen, &mut |ac| {
            out.push(self.up_closure(ac).expect("indices in range"));
        });
        out.sort_by(|a, b| a.members.iter().rev().cmp(b.members.iter().rev()));
        Ok(out)
    }

    fn antichains_rec(&self, from: usize, chosen: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
        emit(chosen);
        for x in from..self.len() {
            if chosen.iter().all(|&c| !self.comparable(c, x)) {
                chosen.push(x);
                self.antichains_rec(x + 1, chosen, emit);
                chosen.pop();
            }
        }
    }

    /// All nonempty antichains, i.e. the carrier of `Fin(P)`, in
    /// lexicographic order of their sorted element lists.
    pub fn antichains(&self) -> Vec<FinCompact> {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.antichains_rec(0, &mut chosen, &mut |ac| {
            if !ac.is_empty() {
                out.push(FinCompact {
                    elems: ac.to_vec(),
                });
            }
        });
        out.sort();
        out
    }

    /// Minimal elements of `set`, sorted and deduplicated.
    pub fn minimal_of(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&x| !set.iter().any(|&y| self.lt(y, x)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Canonical antichain for `↑set`.
    pub fn normalize(&self, set: &[usize]) -> Result<FinCompact> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        for &x in set {
            self.check_index(x)?;
        }
        Ok(FinCompact {
            elems: self.minimal_of(set),
        })
    }

    /// Normalization that allows the empty compact.
    pub(crate) fn normalize_lossy(&self, set: &[usize]) -> FinCompact {
        FinCompact {
            elems: self.minimal_of(set),
        }
    }

    /// Minimal elements of a set given as a bit mask; needs `len() <= 64`.
    pub(crate) fn normalize_mask(&self, mask: u64) -> FinCompact {
        let elems = (0..self.len())
            .filter(|&y| mask >> y & 1 == 1)
            .filter(|&y| !(0..self.len()).any(|z| mask >> z & 1 == 1 && self.lt(z, y)))
            .collect();
        FinCompact { elems }
    }

    /// Whether `x ∈ ↑E`.
    #[inline]
    pub fn in_up(&self, e: &FinCompact, x: usize) -> bool {
        e.elems.iter().any(|&m| self.leq(m, x))
    }

    /// Smyth preorder: `↑E ⊇ ↑F`.
    pub fn smyth_leq(&self, e: &FinCompact, f: &FinCompact) -> Result<bool> {
        self.check_compact(e)?;
        self.check_compact(f)?;
        Ok(self.smyth_le(e, f))
    }

    #[inline]
    pub(crate) fn smyth_le(&self, e: &FinCompact, f: &FinCompact) -> bool {
        f.elems.iter().all(|&y| self.in_up(e, y))
    }

    pub fn check_compact(&self, e: &FinCompact) -> Result<()> {
        for &x in &e.elems {
            self.check_index(x)?;
        }
        Ok(())
    }

    /// Whether the down-closure of every point is a chain. Requires a least element.
    pub fn is_tree(&self) -> Result<bool> {
        if self.bottom().is_none() {
            return Err(Error::NotPointed);
        }
        Ok(self.elements().all(|x| {
            let below: Vec<usize> = self.elements().filter(|&y| self.leq(y, x)).collect();
            below
                .iter()
                .all(|&a| below.iter().all(|&b| self.comparable(a, b)))
        }))
    }

    /// Cartesian product with the componentwise order; `(x, y)` has index
    /// `x * other.len() + y`.
    pub fn product(&self, other: &Poset) -> Poset {
        let m = other.len();
        let names: Vec<String> = self
            .elements()
            .flat_map(|x| other.elements().map(move |y| (x, y)))
            .map(|(x, y)| format!("({},{})", self.names[x], other.names[y]))
            .collect();
        let n = names.len();
        let leq = (0..n * n)
            .map(|k| {
                let (p, q) = (k / n, k % n);
                self.leq(p / m, q / m) && other.leq(p % m, q % m)
            })
            .collect();
        Poset::from_table_unchecked(names, leq)
    }

    /// Renames the elements, keeping the order.
    pub fn with_names(&self, names: Vec<String>) -> Result<Poset> {
        if names.len() != self.len() {
            return Err(Error::TableSize {
                expected: self.len(),
                got: names.len(),
            });
        }
        Poset::from_table(names, self.leq.clone())
    }

    /// Graphviz rendering of the Hasse diagram: one node per element in index
    /// order, one edge per cover pair.
    pub fn to_dot(&self, graph_name: &str) -> String {
        let mut out = format!("digraph {graph_name} {{\n    rankdir=BT;\n");
        for name in &self.names {
            out.push_str(&format!("    \"{}\";\n", escape(name)));
        }
        for (a, b) in self.covers() {
            out.push_str(&format!(
                "    \"{}\" -> \"{}\";\n",
                escape(&self.names[a]),
                escape(&self.names[b])
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn format_set(&self, set: &[usize]) -> String {
        let parts: Vec<&str> = set.iter().map(|&x| self.name(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn format_compact(&self, e: &FinCompact) -> String {
        self.format_set(&e.elems)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// An upward-closed subset of a poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpperSet {
    members: Vec<bool>,
}

impl UpperSet {
    pub fn from_mask(poset: &Poset, members: Vec<bool>) -> Result<UpperSet> {
        if members.len() != poset.len() {
            return Err(Error::PosetMismatch);
        }
        for x in poset.elements() {
            for y in poset.elements() {
                if members[x] && poset.leq(x, y) && !members[y] {
                    return Err(Error::Precondition(format!(
                        "set is not upward closed at {}",
                        poset.name(x)
                    )));
                }
            }
        }
        Ok(UpperSet { members })
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members[x]
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.members.len()).filter(|&i| self.members[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn union(&self, other: &UpperSet) -> UpperSet {
        UpperSet {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| *a || *b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &UpperSet) -> UpperSet {
        UpperSet {
            members: self
                .members
                .iter()
                .zip(&other.members)
                .map(|(a, b)| *a && *b)
                .collect(),
        }
    }

    pub fn is_whole(&self) -> bool {
        self.members.iter().all(|&m| m)
    }
}

/// A finitary compact `↑E`, stored as its sorted antichain of minimal
/// elements. Equal compacts have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinCompact {
    elems: Vec<usize>,
}

impl FinCompact {
    pub fn singleton(x: usize) -> FinCompact {
        FinCompact { elems: vec![x] }
    }

    /// The empty compact; only produced where an operation says so.
    pub fn empty() -> FinCompact {
        FinCompact { elems: Vec::new() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
}
