//! Simple probability valuations on finite posets with exact rational
//! weights: the stochastic order, way-below, pushforward along monotone
//! maps, grid discretizations and the three failed attempts at grid
//! deflations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::map::MonotoneMap;
use crate::poset::{Poset, UpperSet};
use crate::rational::{format_rational, Rational};

/// A probability valuation `Σ a_x δ_x` on a finite poset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Valuation {
    weights: Vec<Rational>,
}

impl Valuation {
    pub fn new(poset: &Poset, weights: Vec<Rational>) -> Result<Valuation> {
        if weights.len() != poset.len() {
            return Err(Error::TableSize {
                expected: poset.len(),
                got: weights.len(),
            });
        }
        if let Some(x) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::NegativeWeight {
                element: poset.name(x).to_string(),
                weight: format_rational(&weights[x]),
            });
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::NotNormalized(format_rational(&total)));
        }
        Ok(Valuation { weights })
    }

    pub(crate) fn from_weights_unchecked(weights: Vec<Rational>) -> Valuation {
        Valuation { weights }
    }

    /// Point mass at `x`.
    pub fn dirac(poset: &Poset, x: usize) -> Result<Valuation> {
        poset.check_index(x)?;
        let mut weights = vec![Rational::zero(); poset.len()];
        weights[x] = Rational::one();
        Ok(Valuation { weights })
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, x: usize) -> &Rational {
        &self.weights[x]
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len()).filter(|&x| !self.weights[x].is_zero()).collect()
    }

    pub fn mass(&self, u: &UpperSet) -> Rational {
        self.mass_of(u.mask())
    }

    pub fn mass_of(&self, members: &[bool]) -> Rational {
        self.weights
            .iter()
            .zip(members)
            .filter(|(_, &m)| m)
            .map(|(w, _)| w)
            .sum()
    }

    /// `(1 - t)·self + t·other`.
    pub fn mix(&self, other: &Valuation, t: &Rational) -> Valuation {
        let s = Rational::one() - t;
        Valuation {
            weights: self
                .weights
                .iter()
                .zip(&other.weights)
                .map(|(a, b)| a * &s + b * t)
                .collect(),
        }
    }

    pub fn check_poset(&self, poset: &Poset) -> Result<()> {
        if self.weights.len() == poset.len() {
            Ok(())
        } else {
            Err(Error::PosetMismatch)
        }
    }

    /// `elem:p/q` entries in element order, zero weights omitted.
    pub fn format(&self, poset: &Poset) -> String {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|x| format!("{}:{}", poset.name(x), format_rational(&self.weights[x])))
            .collect();
        parts.join(" ")
    }
}

fn same_poset(poset: &Poset, vs: &[&Valuation]) -> Result<()> {
    vs.iter().try_for_each(|v| v.check_poset(poset))
}

/// Masses of a valuation on a fixed list of upper sets.
fn profile(ups: &[UpperSet], v: &Valuation) -> Vec<Rational> {
    ups.iter().map(|u| v.mass(u)).collect()
}

fn profile_le(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// The stochastic order by its definition: `ν(U) <= μ(U)` for every upper set.
pub fn stochastic_leq_oracle(poset: &Poset, nu: &Valuation, mu: &Valuation) -> Result<bool> {
    same_poset(poset, &[nu, mu])?;
    Ok(poset.upper_sets()?.iter().all(|u| nu.mass(u) <= mu.mass(u)))
}

/// One unit of mass moved from `from` up to `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransportEntry {
    pub from: usize,
    pub to: usize,
    pub amount: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderCertificate {
    /// A plan moving `ν` onto `μ` along `<=`; certifies `ν <= μ`.
    Plan(Vec<TransportEntry>),
    /// An upper set with `ν(U) > μ(U)`; certifies `ν </= μ`.
    Violation {
        upper_set: UpperSet,
        lower: Rational,
        upper: Rational,
    },
}

impl OrderCertificate {
    pub fn holds(&self) -> bool {
        matches!(self, OrderCertificate::Plan(_))
    }
}

/// Decides `ν <= μ` by max-flow: `ν <= μ` iff there is a transport plan
/// `t(x, y) >= 0`, supported on `x <= y`, with marginals `ν` and `μ`.
pub fn stochastic_leq_certified(poset: &Poset, nu: &Valuation, mu: &Valuation) -> Result<OrderCertificate> {
    same_poset(poset, &[nu, mu])?;
    let n = poset.len();
    let (source, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNetwork::new(2 * n + 2);
    for x in poset.elements() {
        if !nu.weights[x].is_zero() {
            net.add_edge(source, x, nu.weights[x].clone());
        }
        if !mu.weights[x].is_zero() {
            net.add_edge(n + x, sink, mu.weights[x].clone());
        }
        // total mass is 1, so capacity 1 never binds
        for y in poset.elements() {
            if poset.leq(x, y) {
                net.add_edge(x, n + y, Rational::one());
            }
        }
    }
    let value = net.max_flow(source, sink);
    if value.is_one() {
        let mut plan = Vec::new();
        for x in poset.elements() {
            for y in poset.elements() {
                let moved = net.residual(n + y, x);
                if poset.leq(x, y) && !moved.is_zero() {
                    plan.push(TransportEntry {
                        from: x,
                        to: y,
                        amount: moved.clone(),
                    });
                }
            }
        }
        return Ok(OrderCertificate::Plan(plan));
    }
    // The source side of a minimum cut contains, with each reached x, every
    // y >= x; its up-closure carries more ν-mass than μ-mass.
    let reach = net.reachable(source);
    let left: Vec<usize> = poset.elements().filter(|&x| reach[x]).collect();
    let upper_set = poset.up_closure(&left)?;
    let (lower, upper) = (nu.mass(&upper_set), mu.mass(&upper_set));
    debug_assert!(lower > upper);
    Ok(OrderCertificate::Violation {
        upper_set,
        lower,
        upper,
    })
}

pub fn stochastic_leq(poset: &Poset, nu: &Valuation, mu: &Valuation) -> Result<bool> {
    Ok(stochastic_leq_certified(poset, nu, mu)?.holds())
}

/// `ν ≪ μ` in `Val₁(P)` for a pointed finite `P`: on every upper set
/// `U ≠ P`, `ν(U) < μ(U)` when `μ(U) > 0` and `ν(U) = 0` otherwise.
pub fn way_below(poset: &Poset, nu: &Valuation, mu: &Valuation) -> Result<bool> {
    Ok(way_below_witness(poset, nu, mu)?.is_none())
}

/// The first proper upper set (in upper-set order) where the way-below
/// inequality fails, with `(ν(U), μ(U))`.
pub fn way_below_witness(
    poset: &Poset,
    nu: &Valuation,
    mu: &Valuation,
) -> Result<Option<(UpperSet, Rational, Rational)>> {
    same_poset(poset, &[nu, mu])?;
    if poset.bottom().is_none() {
        return Err(Error::NotPointed);
    }
    for u in poset.upper_sets()? {
        if u.is_whole() {
            continue;
        }
        let (a, b) = (nu.mass(&u), mu.mass(&u));
        let ok = if b.is_zero() { a.is_zero() } else { a < b };
        if !ok {
            return Ok(Some((u, a, b)));
        }
    }
    Ok(None)
}

/// Image measure: `Σ a_x δ_x ↦ Σ a_x δ_{r(x)}`.
pub fn pushforward(r: &MonotoneMap, nu: &Valuation) -> Result<Valuation> {
    nu.check_poset(r.source())?;
    let mut weights = vec![Rational::zero(); r.target().len()];
    for (x, w) in nu.weights.iter().enumerate() {
        weights[r.apply(x)] += w;
    }
    Ok(Valuation { weights })
}

/// A valuation on the source of a surjective `r` whose pushforward is `ν`,
/// placing each weight on the least-index preimage.
pub fn pushforward_preimage(r: &MonotoneMap, nu: &Valuation) -> Result<Valuation> {
    nu.check_poset(r.target())?;
    let mut weights = vec![Rational::zero(); r.source().len()];
    for y in r.target().elements() {
        let pre = r
            .fiber(y)
            .first()
            .copied()
            .ok_or_else(|| Error::NotSurjective(r.target().name(y).to_string()))?;
        weights[pre] += &nu.weights[y];
    }
    Ok(Valuation { weights })
}

/// Largest number of grid points enumerated without an explicit cap.
pub const GRID_CAP: u128 = 1_000_000;

/// The discretization `Val₁^{1/N}`: weights that are multiples of `1/N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mesh {
    denominator: u32,
}

impl Mesh {
    pub fn new(denominator: u32) -> Result<Mesh> {
        if denominator == 0 {
            return Err(Error::Precondition("grid denominator must be positive".into()));
        }
        Ok(Mesh { denominator })
    }

    pub fn denominator(&self) -> u32 {
        self.denominator
    }

    pub fn step(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.denominator))
    }

    pub fn contains(&self, v: &Valuation) -> bool {
        let n = BigInt::from(self.denominator);
        v.weights.iter().all(|w| (w * &n).is_integer())
    }
}

/// Number of grid points on an `elements`-point poset: `C(N + elements - 1, elements - 1)`.
pub fn grid_size(elements: usize, mesh: Mesh) -> u128 {
    if elements == 0 {
        return 0;
    }
    let k = (elements - 1) as u128;
    let n = mesh.denominator as u128 + k;
    (1..=k).fold(1u128, |acc, i| acc * (n - k + i) / i)
}

pub fn grid(poset: &Poset, mesh: Mesh) -> Result<Vec<Valuation>> {
    grid_with_cap(poset, mesh, GRID_CAP)
}

/// All grid valuations, ordered lexicographically by decreasing weight on
/// the lowest-index elements (so `δ` of element 0 comes first).
pub fn grid_with_cap(poset: &Poset, mesh: Mesh, cap: u128) -> Result<Vec<Valuation>> {
    let size = grid_size(poset.len(), mesh);
    if size > cap {
        return Err(Error::CapExceeded {
            size: size.min(usize::MAX as u128) as usize,
            cap: cap.min(usize::MAX as u128) as usize,
        });
    }
    let mut out = Vec::with_capacity(size as usize);
    let mut counts = Vec::with_capacity(poset.len());
    compositions(poset.len(), mesh.denominator, &mut counts, &mut |c| {
        let weights = c
            .iter()
            .map(|&k| Rational::new(BigInt::from(k), BigInt::from(mesh.denominator)))
            .collect();
        out.push(Valuation { weights });
    });
    Ok(out)
}

fn compositions(parts: usize, remaining: u32, counts: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if counts.len() + 1 == parts {
        counts.push(remaining);
        emit(counts);
        counts.pop();
        return;
    }
    if parts == 0 {
        return;
    }
    for k in (0..=remaining).rev() {
        counts.push(k);
        compositions(parts, remaining - k, counts, emit);
        counts.pop();
    }
}

/// The grid as a poset under the stochastic order; nodes are named by
/// their `elem:p/q` rendering.
pub fn grid_poset(poset: &Poset, mesh: Mesh) -> Result<(Poset, Vec<Valuation>)> {
    let points = grid(poset, mesh)?;
    let ups = poset.upper_sets()?;
    let profiles: Vec<Vec<Rational>> = points.iter().map(|v| profile(&ups, v)).collect();
    let names = points.iter().map(|v| v.format(poset)).collect();
    let order = Poset::from_fn(names, |i, j| profile_le(&profiles[i], &profiles[j]))?;
    Ok((order, points))
}

/// Minimal grid valuations above both `ν₁` and `ν₂` (possibly none).
pub fn minimal_upper_bounds_grid(
    poset: &Poset,
    nu1: &Valuation,
    nu2: &Valuation,
    mesh: Mesh,
) -> Result<Vec<Valuation>> {
    same_poset(poset, &[nu1, nu2])?;
    let ups = poset.upper_sets()?;
    let (p1, p2) = (profile(&ups, nu1), profile(&ups, nu2));
    let bounds: Vec<(Valuation, Vec<Rational>)> = grid(poset, mesh)?
        .into_iter()
        .map(|v| {
            let p = profile(&ups, &v);
            (v, p)
        })
        .filter(|(_, p)| profile_le(&p1, p) && profile_le(&p2, p))
        .collect();
    Ok(extremal(bounds, profile_le))
}

/// Maximal grid valuations below `ν`. Never empty on a pointed poset.
pub fn maximal_below_grid(poset: &Poset, nu: &Valuation, mesh: Mesh) -> Result<Vec<Valuation>> {
    nu.check_poset(poset)?;
    let ups = poset.upper_sets()?;
    let top = profile(&ups, nu);
    let below: Vec<(Valuation, Vec<Rational>)> = grid(poset, mesh)?
        .into_iter()
        .map(|v| {
            let p = profile(&ups, &v);
            (v, p)
        })
        .filter(|(_, p)| profile_le(p, &top))
        .collect();
    Ok(extremal(below, |a, b| profile_le(b, a)))
}

/// Maximal grid valuations way-below `ν` (the strict reading).
pub fn maximal_way_below_grid(poset: &Poset, nu: &Valuation, mesh: Mesh) -> Result<Vec<Valuation>> {
    nu.check_poset(poset)?;
    let ups = poset.upper_sets()?;
    let mut below = Vec::new();
    for v in grid(poset, mesh)? {
        if way_below(poset, &v, nu)? {
            let p = profile(&ups, &v);
            below.push((v, p));
        }
    }
    Ok(extremal(below, |a, b| profile_le(b, a)))
}

/// Keeps the items not strictly dominated, where `dominated(p, q)` means
/// `q` is at least as good as `p`. Input order is preserved.
fn extremal(items: Vec<(Valuation, Vec<Rational>)>, below: impl Fn(&[Rational], &[Rational]) -> bool) -> Vec<Valuation> {
    let keep: Vec<bool> = items
        .iter()
        .map(|(v, p)| !items.iter().any(|(w, q)| w != v && below(q, p)))
        .collect();
    items
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|((v, _), _)| v)
        .collect()
}

/// Largest multiple of `step` that is zero or strictly below `value`.
pub fn round_down_strict(value: &Rational, step: &Rational) -> Rational {
    if !value.is_positive() {
        return Rational::zero();
    }
    let k = (value / step).ceil() - Rational::one();
    k * step
}

/// A set function on the upper sets of a poset, listed in upper-set order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFunction {
    pub upper_sets: Vec<UpperSet>,
    pub values: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularityWitness {
    pub u: UpperSet,
    pub v: UpperSet,
    /// `f(U ∪ V) + f(U ∩ V)`
    pub join_meet: Rational,
    /// `f(U) + f(V)`
    pub sum: Rational,
}

impl SetFunction {
    pub fn value(&self, u: &UpperSet) -> Option<&Rational> {
        self.upper_sets.iter().position(|w| w == u).map(|i| &self.values[i])
    }

    pub fn is_monotone(&self) -> bool {
        let subset = |a: &UpperSet, b: &UpperSet| a.mask().iter().zip(b.mask()).all(|(x, y)| !x || *y);
        self.upper_sets.iter().enumerate().all(|(i, a)| {
            self.upper_sets
                .iter()
                .enumerate()
                .all(|(j, b)| !subset(a, b) || self.values[i] <= self.values[j])
        })
    }

    /// First pair `(U, V)` in upper-set order breaking
    /// `f(U ∪ V) + f(U ∩ V) = f(U) + f(V)`.
    pub fn modularity_witness(&self) -> Option<ModularityWitness> {
        for (i, u) in self.upper_sets.iter().enumerate() {
            for (j, v) in self.upper_sets.iter().enumerate().skip(i + 1) {
                let join = self.value(&u.union(v)).expect("upper sets closed under union");
                let meet = self.value(&u.intersection(v)).expect("upper sets closed under intersection");
                let join_meet = join + meet;
                let sum = &self.values[i] + &self.values[j];
                if join_meet != sum {
                    return Some(ModularityWitness {
                        u: u.clone(),
                        v: v.clone(),
                        join_meet,
                        sum,
                    });
                }
            }
        }
        None
    }
}

/// First attempt: round `ν(U)` strictly down to the grid on every upper set.
pub fn failed_deflation_a(poset: &Poset, nu: &Valuation, mesh: Mesh) -> Result<SetFunction> {
    nu.check_poset(poset)?;
    if poset.bottom().is_none() {
        return Err(Error::NotPointed);
    }
    let step = mesh.step();
    let upper_sets = poset.upper_sets()?;
    let values = upper_sets
        .iter()
        .map(|u| round_down_strict(&nu.mass(u), &step))
        .collect();
    Ok(SetFunction { upper_sets, values })
}

/// Second attempt: round every weight off the bottom strictly down to the
/// grid and put the remainder on the bottom.
pub fn failed_deflation_b(poset: &Poset, nu: &Valuation, mesh: Mesh) -> Result<Valuation> {
    nu.check_poset(poset)?;
    let bottom = poset.bottom().ok_or(Error::NotPointed)?;
    let step = mesh.step();
    let mut weights: Vec<Rational> = nu
        .weights
        .iter()
        .enumerate()
        .map(|(x, w)| {
            if x == bottom {
                Rational::zero()
            } else {
                round_down_strict(w, &step)
            }
        })
        .collect();
    let rest: Rational = weights.iter().sum();
    weights[bottom] = Rational::one() - rest;
    Ok(Valuation { weights })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityWitness {
    pub lower: Valuation,
    pub upper: Valuation,
    pub lower_image: Valuation,
    pub upper_image: Valuation,
}

/// First pair `ν <= ν'` among `candidates` with `f(ν) </= f(ν')` for the
/// second attempt.
pub fn monotonicity_witness_b(
    poset: &Poset,
    mesh: Mesh,
    candidates: &[Valuation],
) -> Result<Option<MonotonicityWitness>> {
    let ups = poset.upper_sets()?;
    let images = candidates
        .iter()
        .map(|v| failed_deflation_b(poset, v, mesh))
        .collect::<Result<Vec<_>>>()?;
    let prof: Vec<Vec<Rational>> = candidates.iter().map(|v| profile(&ups, v)).collect();
    let img_prof: Vec<Vec<Rational>> = images.iter().map(|v| profile(&ups, v)).collect();
    for i in 0..candidates.len() {
        for j in 0..candidates.len() {
            if i != j && profile_le(&prof[i], &prof[j]) && !profile_le(&img_prof[i], &img_prof[j]) {
                return Ok(Some(MonotonicityWitness {
                    lower: candidates[i].clone(),
                    upper: candidates[j].clone(),
                    lower_image: images[i].clone(),
                    upper_image: images[j].clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// Third attempt: "the largest grid valuation below ν". Returns every
/// maximal candidate; more than one means the attempt is ill-defined.
pub fn failed_deflation_c(poset: &Poset, nu: &Valuation, mesh: Mesh) -> Result<Vec<Valuation>> {
    if poset.bottom().is_none() {
        return Err(Error::NotPointed);
    }
    maximal_below_grid(poset, nu, mesh)
}

/// Outcome of the automatic counterexample search for all three attempts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailedDeflationDemo {
    pub mesh: Mesh,
    /// A grid valuation and a pair of upper sets breaking modularity.
    pub modularity: Option<(Valuation, ModularityWitness)>,
    pub monotonicity: Option<MonotonicityWitness>,
    /// A valuation on a finer grid together with its several maximal
    /// grid valuations below it.
    pub non_uniqueness: Option<(Valuation, Vec<Valuation>)>,
}

impl FailedDeflationDemo {
    pub fn all_found(&self) -> bool {
        self.modularity.is_some() && self.monotonicity.is_some() && self.non_uniqueness.is_some()
    }
}

/// Searches the grid for counterexamples to each attempt, in grid order.
pub fn failed_deflation_demo(poset: &Poset, mesh: Mesh) -> Result<FailedDeflationDemo> {
    let points = grid(poset, mesh)?;
    let mut modularity = None;
    for nu in &points {
        if let Some(w) = failed_deflation_a(poset, nu, mesh)?.modularity_witness() {
            modularity = Some((nu.clone(), w));
            break;
        }
    }
    let monotonicity = monotonicity_witness_b(poset, mesh, &points)?;
    let mut non_uniqueness = None;
    'outer: for k in 2..=4u32 {
        let Some(fine) = mesh.denominator.checked_mul(k) else {
            break;
        };
        let finer = match grid(poset, Mesh::new(fine)?) {
            Ok(g) => g,
            Err(Error::CapExceeded { .. }) => break,
            Err(e) => return Err(e),
        };
        for nu in finer {
            let maximal = failed_deflation_c(poset, &nu, mesh)?;
            if maximal.len() > 1 {
                non_uniqueness = Some((nu, maximal));
                break 'outer;
            }
        }
    }
    Ok(FailedDeflationDemo {
        mesh,
        modularity,
        monotonicity,
        non_uniqueness,
    })
}

/// Least common denominator of all weights.
pub fn common_denominator(vs: &[&Valuation]) -> BigInt {
    vs.iter()
        .flat_map(|v| v.weights.iter())
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()))
}

/// `f64` rendering for display only.
pub fn approx(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}
