//! Three countable posets given by decidable orders on symbolic codes:
//!
//! * `N2`: two chains `(0, m)`, `(1, m)` under a common top `ω`, plus `⊥`.
//! * `T`: Plotkin's domain, levels `{(0, n), (1, n)}` with every element
//!   of a level below every element of the next, between `⊥` and `⊤`.
//! * `NomegaSum`: two disjoint copies of `ℕ ∪ {ω}` under a common `⊥`.
//!
//! Each comes with finite truncations, and `N2` and `T` with their
//! families of quasi-deflations.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::deflation::QuasiDeflation;
use crate::error::{Error, Result};
use crate::map::MonotoneMap;
use crate::poset::{FinCompact, Poset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LazyKind {
    N2,
    T,
    NomegaSum,
}

impl FromStr for LazyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<LazyKind> {
        match s.to_ascii_lowercase().as_str() {
            "n2" => Ok(LazyKind::N2),
            "t" => Ok(LazyKind::T),
            "nomega" | "nomega-sum" | "nomegasum" => Ok(LazyKind::NomegaSum),
            _ => Err(Error::MalformedCode(format!("unknown kind {s}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Code {
    Bottom,
    Node(u8, u64),
    Omega,
    OmegaSide(u8),
    Top,
}

impl Code {
    pub fn level(&self) -> u64 {
        match self {
            Code::Node(_, n) => *n,
            _ => 0,
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Code::Bottom => write!(f, "bot"),
            Code::Top => write!(f, "top"),
            Code::Omega => write!(f, "omega"),
            Code::OmegaSide(j) => write!(f, "omega{j}"),
            Code::Node(j, n) => write!(f, "n:{j}:{n}"),
        }
    }
}

impl FromStr for Code {
    type Err = Error;

    fn from_str(s: &str) -> Result<Code> {
        let bad = || Error::MalformedCode(s.to_string());
        let branch = |b: &str| match b {
            "0" => Ok(0u8),
            "1" => Ok(1u8),
            _ => Err(bad()),
        };
        match s.trim() {
            "bot" => Ok(Code::Bottom),
            "top" => Ok(Code::Top),
            "omega" => Ok(Code::Omega),
            "omega0" => Ok(Code::OmegaSide(0)),
            "omega1" => Ok(Code::OmegaSide(1)),
            t => {
                let mut parts = t.split(':');
                match (parts.next(), parts.next(), parts.next(), parts.next()) {
                    (Some("n"), Some(j), Some(n), None) => {
                        Ok(Code::Node(branch(j)?, n.parse().map_err(|_| bad())?))
                    }
                    _ => Err(bad()),
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LazyPoset {
    kind: LazyKind,
}

impl LazyPoset {
    pub fn new(kind: LazyKind) -> LazyPoset {
        LazyPoset { kind }
    }

    pub fn kind(&self) -> LazyKind {
        self.kind
    }

    pub fn check(&self, x: Code) -> Result<Code> {
        let ok = match (self.kind, x) {
            (_, Code::Bottom) => true,
            (_, Code::Node(j, _)) => j <= 1,
            (LazyKind::N2, Code::Omega) => true,
            (LazyKind::T, Code::Top) => true,
            (LazyKind::NomegaSum, Code::OmegaSide(j)) => j <= 1,
            _ => false,
        };
        if ok {
            Ok(x)
        } else {
            Err(Error::MalformedCode(format!("{x} is not an element of {:?}", self.kind)))
        }
    }

    pub fn leq(&self, x: Code, y: Code) -> Result<bool> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.leq_unchecked(x, y))
    }

    fn leq_unchecked(&self, x: Code, y: Code) -> bool {
        use Code::*;
        if x == y || x == Bottom {
            return true;
        }
        match (self.kind, x, y) {
            (LazyKind::N2, Node(j, m), Node(k, n)) => j == k && m <= n,
            (LazyKind::N2, Node(..), Omega) => true,
            (LazyKind::T, _, Top) => true,
            (LazyKind::T, Node(j, m), Node(k, n)) => m < n || (m == n && j == k),
            (LazyKind::NomegaSum, Node(j, m), Node(k, n)) => j == k && m <= n,
            (LazyKind::NomegaSum, Node(j, _), OmegaSide(k)) => j == k,
            _ => false,
        }
    }

    fn in_up(&self, set: &[Code], y: Code) -> bool {
        set.iter().any(|&m| self.leq_unchecked(m, y))
    }
}

/// An index into one of the two families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyIndex {
    N2(u64, u64),
    T(u64),
}

impl FamilyIndex {
    pub fn kind(&self) -> LazyKind {
        match self {
            FamilyIndex::N2(..) => LazyKind::N2,
            FamilyIndex::T(_) => LazyKind::T,
        }
    }

    /// Componentwise order on indices.
    pub fn leq(&self, other: &FamilyIndex) -> bool {
        match (self, other) {
            (FamilyIndex::N2(i, j), FamilyIndex::N2(k, l)) => i <= k && j <= l,
            (FamilyIndex::T(i), FamilyIndex::T(k)) => i <= k,
            _ => false,
        }
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyIndex::N2(i, j) => write!(f, "({i},{j})"),
            FamilyIndex::T(i) => write!(f, "{i}"),
        }
    }
}

/// One member of a family, evaluated lazily on codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LazyQuasiDeflation {
    index: FamilyIndex,
}

/// `φ_ij`: `ω ↦ {(0,i), (1,j)}`, `(0,m) ↦ {(0,min(m,i)), (1,j)}`,
/// `(1,m) ↦ {(0,i), (1,min(m,j))}` and `⊥ ↦ {⊥}`.
pub fn n2_family(i: u64, j: u64) -> LazyQuasiDeflation {
    LazyQuasiDeflation {
        index: FamilyIndex::N2(i, j),
    }
}

/// `φ_i`: `⊥ ↦ {⊥}`, `(j,n) ↦ {(j,n)}` for `n < i`, everything else to
/// `{(0,i), (1,i)}`.
pub fn t_family(i: u64) -> LazyQuasiDeflation {
    LazyQuasiDeflation {
        index: FamilyIndex::T(i),
    }
}

impl LazyQuasiDeflation {
    pub fn index(&self) -> FamilyIndex {
        self.index
    }

    pub fn poset(&self) -> LazyPoset {
        LazyPoset::new(self.index.kind())
    }

    /// The antichain `φ(x)`, sorted.
    pub fn apply(&self, x: Code) -> Result<Vec<Code>> {
        use Code::*;
        self.poset().check(x)?;
        Ok(match (self.index, x) {
            (_, Bottom) => vec![Bottom],
            (FamilyIndex::N2(i, j), Omega) => vec![Node(0, i), Node(1, j)],
            (FamilyIndex::N2(i, j), Node(0, m)) => vec![Node(0, m.min(i)), Node(1, j)],
            (FamilyIndex::N2(i, j), Node(_, m)) => vec![Node(0, i), Node(1, m.min(j))],
            (FamilyIndex::T(i), Node(j, n)) if n < i => vec![Node(j, n)],
            (FamilyIndex::T(i), _) => vec![Node(0, i), Node(1, i)],
            (FamilyIndex::N2(..), _) => unreachable!("checked above"),
        })
    }

    /// Whether `y ∈ ↑φ(x)`.
    pub fn contains(&self, x: Code, y: Code) -> Result<bool> {
        let v = self.apply(x)?;
        self.poset().check(y)?;
        Ok(self.poset().in_up(&v, y))
    }
}

/// A family index `ι` with `y ∉ ↑φ_ι(x)`, which exists exactly when
/// `x </= y`: one past the largest level involved.
pub fn family_witness(kind: LazyKind, x: Code, y: Code) -> Result<FamilyIndex> {
    let l = LazyPoset::new(kind);
    if l.leq(x, y)? {
        return Err(Error::Precondition(format!("{x} <= {y}, nothing to separate")));
    }
    let i = x.level().max(y.level()) + 1;
    let member = match kind {
        LazyKind::N2 => n2_family(i, i),
        LazyKind::T => t_family(i),
        LazyKind::NomegaSum => {
            return Err(Error::Precondition("no family is defined on this poset".into()));
        }
    };
    if member.contains(x, y)? {
        return Err(Error::Verification(format!("index {} does not exclude {y}", member.index)));
    }
    Ok(member.index)
}

/// A finite truncation as a concrete poset; element `i` has code `codes[i]`
/// and the element names are the code strings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub kind: LazyKind,
    pub k: u64,
    pub poset: Arc<Poset>,
    pub codes: Vec<Code>,
}

/// `N2_k`: `⊥`, levels `0..=k`, `ω`. `T_k`: `⊥`, levels `0..k`, `⊤`.
/// `NomegaSum_k`: `⊥`, levels `0..=k`, both tops.
pub fn truncate(kind: LazyKind, k: u64) -> Result<Truncation> {
    if k == 0 {
        return Err(Error::Precondition("truncation level must be at least 1".into()));
    }
    let levels = match kind {
        LazyKind::T => 0..k,
        _ => 0..k + 1,
    };
    let mut codes = vec![Code::Bottom];
    for n in levels {
        codes.push(Code::Node(0, n));
        codes.push(Code::Node(1, n));
    }
    match kind {
        LazyKind::N2 => codes.push(Code::Omega),
        LazyKind::T => codes.push(Code::Top),
        LazyKind::NomegaSum => codes.extend([Code::OmegaSide(0), Code::OmegaSide(1)]),
    }
    let l = LazyPoset::new(kind);
    let names = codes.iter().map(Code::to_string).collect();
    let poset = Poset::from_fn(names, |a, b| l.leq_unchecked(codes[a], codes[b]))?;
    Ok(Truncation {
        kind,
        k,
        poset: Arc::new(poset),
        codes,
    })
}

impl Truncation {
    pub fn index_of(&self, code: Code) -> Result<usize> {
        self.codes
            .iter()
            .position(|&c| c == code)
            .ok_or_else(|| Error::UnknownElement(code.to_string()))
    }

    /// Projection of a code of the full poset into the truncation, where
    /// one exists (not for `T`).
    pub fn project(&self, code: Code) -> Result<Code> {
        LazyPoset::new(self.kind).check(code)?;
        match (self.kind, code) {
            (LazyKind::T, _) => Err(Error::Precondition("T has no projection onto its truncations".into())),
            (_, Code::Node(j, m)) => Ok(Code::Node(j, m.min(self.k))),
            (_, c) => Ok(c),
        }
    }

    /// A family member as a quasi-deflation on the truncation; its values
    /// must stay inside.
    pub fn family(&self, member: &LazyQuasiDeflation) -> Result<QuasiDeflation> {
        if member.index.kind() != self.kind {
            return Err(Error::PosetMismatch);
        }
        let table = self
            .codes
            .iter()
            .map(|&x| {
                let elems = member
                    .apply(x)?
                    .into_iter()
                    .map(|c| self.index_of(c))
                    .collect::<Result<Vec<_>>>()?;
                self.poset.normalize(&elems)
            })
            .collect::<Result<Vec<FinCompact>>>()?;
        QuasiDeflation::new(self.poset.clone(), table)
    }
}

/// The embedding `e: X_small → X_large` and projection `p: X_large → X_small`
/// between two truncations, verified to satisfy `p ∘ e = id` and `e ∘ p <= id`.
pub fn truncation_pair(kind: LazyKind, small: u64, large: u64) -> Result<(MonotoneMap, MonotoneMap)> {
    if small > large {
        return Err(Error::Precondition(format!("{small} exceeds {large}")));
    }
    let s = truncate(kind, small)?;
    let l = truncate(kind, large)?;
    let e_table = s.codes.iter().map(|&c| l.index_of(c)).collect::<Result<Vec<_>>>()?;
    let p_table = l
        .codes
        .iter()
        .map(|&c| s.index_of(s.project(c)?))
        .collect::<Result<Vec<_>>>()?;
    let e = MonotoneMap::new(s.poset.clone(), l.poset.clone(), e_table)?;
    let p = MonotoneMap::new(l.poset.clone(), s.poset.clone(), p_table)?;
    let pe = e.then(&p)?;
    let ep = p.then(&e)?;
    if pe != MonotoneMap::identity(s.poset.clone()) || !ep.pointwise_leq(&MonotoneMap::identity(l.poset.clone())) {
        return Err(Error::Verification("projection laws fail".into()));
    }
    Ok((e, p))
}

/// `f̂` on `T_k` for `f = bits`: fixes `⊥` and `⊤` and swaps `(0,n)` with
/// `(1,n)` exactly when `bits[n]` is set.
pub fn hat_f(trunc: &Truncation, bits: &[bool]) -> Result<MonotoneMap> {
    if trunc.kind != LazyKind::T {
        return Err(Error::Precondition("f-hat lives on truncations of T".into()));
    }
    if bits.len() as u64 != trunc.k {
        return Err(Error::TableSize {
            expected: trunc.k as usize,
            got: bits.len(),
        });
    }
    let table = trunc
        .codes
        .iter()
        .map(|&c| match c {
            Code::Node(j, n) if bits[n as usize] => trunc.index_of(Code::Node(1 - j, n)),
            c => trunc.index_of(c),
        })
        .collect::<Result<Vec<_>>>()?;
    MonotoneMap::new(trunc.poset.clone(), trunc.poset.clone(), table)
}

/// Evaluates `(g <= f̂ ∧ g(0,0) ≠ ⊥ ∧ g(1,0) ≠ ⊥) ⇒ g = f̂`.
pub fn hat_f_rigidity_check(trunc: &Truncation, g: &MonotoneMap, bits: &[bool]) -> Result<bool> {
    let f = hat_f(trunc, bits)?;
    if g.source() != &trunc.poset || g.target() != &trunc.poset {
        return Err(Error::PosetMismatch);
    }
    let bot = trunc.index_of(Code::Bottom)?;
    let a = trunc.index_of(Code::Node(0, 0))?;
    let b = trunc.index_of(Code::Node(1, 0))?;
    let premise = g.pointwise_leq(&f) && g.apply(a) != bot && g.apply(b) != bot;
    Ok(!premise || *g == f)
}
