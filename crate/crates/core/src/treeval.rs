//! Path spaces of finite pointed posets, and probability valuations on
//! finite trees in the coordinates of admissible maps.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::map::MonotoneMap;
use crate::poset::Poset;
use crate::rational::{format_rational, Rational};
use crate::valuation::Valuation;

/// Every maximal-step chain `⊥ = y₀ ⋖ y₁ ⋖ ... ⋖ y_n`, shortest first and
/// lexicographically by index sequence within a length.
pub fn paths(poset: &Poset) -> Result<Vec<Vec<usize>>> {
    let bottom = poset.bottom().ok_or(Error::NotPointed)?;
    let succ: Vec<Vec<usize>> = poset.elements().map(|x| poset.successors(x)).collect();
    let mut out = vec![vec![bottom]];
    let mut frontier = 0;
    while frontier < out.len() {
        let path = out[frontier].clone();
        let last = *path.last().expect("paths are nonempty");
        for &y in &succ[last] {
            let mut next = path.clone();
            next.push(y);
            out.push(next);
        }
        frontier += 1;
    }
    Ok(out)
}

/// The path space `Π(Y)` ordered by prefix, with the last-element map
/// `r: Π(Y) → Y`. Paths are named by joining element names with `.`.
pub fn path_space(poset: &Poset) -> Result<(Arc<Poset>, MonotoneMap)> {
    let all = paths(poset)?;
    let names = all
        .iter()
        .map(|p| {
            let parts: Vec<&str> = p.iter().map(|&x| poset.name(x)).collect();
            parts.join(".")
        })
        .collect();
    let pi = Poset::from_fn(names, |i, j| all[j].starts_with(&all[i]))?;
    let pi = Arc::new(pi);
    let table = all.iter().map(|p| *p.last().expect("nonempty")).collect();
    let r = MonotoneMap::new(pi.clone(), Arc::new(poset.clone()), table)?;
    if !pi.is_tree()? || !r.is_surjective() {
        return Err(Error::Verification("path space is not a tree over its base".into()));
    }
    Ok((pi, r))
}

/// Outcome of [`check_admissible`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AdmissibleReport {
    pub bottom_is_one: bool,
    /// Nodes whose value lies outside `[0, 1]`.
    pub out_of_range: Vec<usize>,
    /// Nodes `t` with `f(t) < Σ f(children)`.
    pub child_sum_violations: Vec<usize>,
}

impl AdmissibleReport {
    pub fn is_admissible(&self) -> bool {
        self.bottom_is_one && self.out_of_range.is_empty() && self.child_sum_violations.is_empty()
    }
}

fn require_tree(tree: &Poset) -> Result<usize> {
    let bottom = tree.bottom().ok_or(Error::NotPointed)?;
    if !tree.is_tree()? {
        return Err(Error::NotTree);
    }
    Ok(bottom)
}

fn child_sum(tree: &Poset, values: &[Rational], t: usize) -> Rational {
    tree.successors(t).into_iter().map(|c| &values[c]).sum()
}

pub fn check_admissible(tree: &Poset, values: &[Rational]) -> Result<AdmissibleReport> {
    let bottom = require_tree(tree)?;
    if values.len() != tree.len() {
        return Err(Error::TableSize {
            expected: tree.len(),
            got: values.len(),
        });
    }
    let one = Rational::one();
    Ok(AdmissibleReport {
        bottom_is_one: values[bottom].is_one(),
        out_of_range: tree
            .elements()
            .filter(|&t| values[t] < Rational::zero() || values[t] > one)
            .collect(),
        child_sum_violations: tree
            .elements()
            .filter(|&t| values[t] < child_sum(tree, values, t))
            .collect(),
    })
}

/// `f: T → [0, 1]` with `f(⊥) = 1` and `f(t) >= Σ_{t ⋖ t'} f(t')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleMap {
    tree: Arc<Poset>,
    values: Vec<Rational>,
}

impl AdmissibleMap {
    pub fn new(tree: Arc<Poset>, values: Vec<Rational>) -> Result<AdmissibleMap> {
        let report = check_admissible(&tree, &values)?;
        if !report.is_admissible() {
            return Err(Error::Verification(format!("not admissible: {report:?}")));
        }
        Ok(AdmissibleMap { tree, values })
    }

    pub fn tree(&self) -> &Arc<Poset> {
        &self.tree
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, t: usize) -> &Rational {
        &self.values[t]
    }

    pub fn pointwise_leq(&self, other: &AdmissibleMap) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a <= b)
    }

    /// `elem:p/q` entries for every node, in element order.
    pub fn format(&self) -> String {
        let parts: Vec<String> = self
            .tree
            .elements()
            .map(|t| format!("{}:{}", self.tree.name(t), format_rational(&self.values[t])))
            .collect();
        parts.join(" ")
    }
}

/// `f(t) = ν(↑t)`.
pub fn valuation_to_admissible(tree: &Arc<Poset>, nu: &Valuation) -> Result<AdmissibleMap> {
    require_tree(tree)?;
    nu.check_poset(tree)?;
    let values = tree
        .elements()
        .map(|t| Ok(nu.mass(&tree.up_closure(&[t])?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AdmissibleMap {
        tree: tree.clone(),
        values,
    })
}

/// `a_t = f(t) − Σ_{t ⋖ t'} f(t')`.
pub fn admissible_to_valuation(f: &AdmissibleMap) -> Valuation {
    let weights = f
        .tree
        .elements()
        .map(|t| &f.values[t] - child_sum(&f.tree, &f.values, t))
        .collect();
    Valuation::from_weights_unchecked(weights)
}

/// Least admissible map above `f₁` and `f₂`, computed leaves first as
/// `f(t) = max(f₁(t), f₂(t), Σ_{t ⋖ t'} f(t'))`. Fails when the value at
/// the root exceeds 1, in which case the pair has no upper bound at all.
pub fn admissible_lub(f1: &AdmissibleMap, f2: &AdmissibleMap) -> Result<AdmissibleMap> {
    if f1.tree != f2.tree {
        return Err(Error::PosetMismatch);
    }
    let tree = &f1.tree;
    let bottom = require_tree(tree)?;
    // in a tree the depth of t is the size of its down-set
    let depth: Vec<usize> = tree
        .elements()
        .map(|t| tree.elements().filter(|&s| tree.leq(s, t)).count())
        .collect();
    let mut order: Vec<usize> = tree.elements().collect();
    order.sort_by(|&a, &b| depth[b].cmp(&depth[a]).then(a.cmp(&b)));
    let mut values = vec![Rational::zero(); tree.len()];
    for t in order {
        let sum = child_sum(tree, &values, t);
        let m = std::cmp::max(&f1.values[t], &f2.values[t]).clone();
        values[t] = std::cmp::max(m, sum);
    }
    if values[bottom] > Rational::one() {
        return Err(Error::NoUpperBound(format_rational(&values[bottom])));
    }
    Ok(AdmissibleMap {
        tree: tree.clone(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::valuation::stochastic_leq;

    fn pi_diamond() -> (Arc<Poset>, MonotoneMap) {
        path_space(&Poset::diamond()).unwrap()
    }

    fn adm(tree: &Arc<Poset>, w: &[(i64, i64)]) -> AdmissibleMap {
        AdmissibleMap::new(tree.clone(), w.iter().map(|&(a, b)| ratio(a, b)).collect()).unwrap()
    }

    /// Counts saturated chains from the bottom by plain recursion.
    fn chain_count(p: &Poset, x: usize) -> usize {
        1 + p.successors(x).into_iter().map(|y| chain_count(p, y)).sum::<usize>()
    }

    #[test]
    fn path_space_of_diamond() {
        let (pi, r) = pi_diamond();
        assert_eq!(pi.names(), &["bot", "bot.a", "bot.b", "bot.a.top", "bot.b.top"]);
        assert_eq!(r.table(), &[0, 1, 2, 3, 3]);
        assert!(pi.is_tree().unwrap());
        assert!(r.is_surjective());
    }

    #[test]
    fn path_space_of_chain_is_isomorphic() {
        let c = Poset::chain(2);
        let (pi, r) = path_space(&c).unwrap();
        assert_eq!(pi.len(), 2);
        assert_eq!(r.table(), &[0, 1]);
        assert!(pi.leq(0, 1));
    }

    #[test]
    fn path_count_matches_recursion() {
        for p in crate::enumerate::enumerate_posets(4).unwrap() {
            if let Some(b) = p.bottom() {
                assert_eq!(path_space(&p).unwrap().0.len(), chain_count(&p, b));
            } else {
                assert_eq!(path_space(&p).unwrap_err(), Error::NotPointed);
            }
        }
    }

    #[test]
    fn admissible_round_trip() {
        let (pi, _) = pi_diamond();
        let nu = Valuation::new(&pi, vec![int(0), ratio(1, 2), int(0), int(0), ratio(1, 2)]).unwrap();
        let f = valuation_to_admissible(&pi, &nu).unwrap();
        assert_eq!(f.values(), &[int(1), ratio(1, 2), ratio(1, 2), int(0), ratio(1, 2)]);
        assert_eq!(admissible_to_valuation(&f), nu);

        let dirac = Valuation::dirac(&pi, 0).unwrap();
        let f = valuation_to_admissible(&pi, &dirac).unwrap();
        assert_eq!(f.values(), &[int(1), int(0), int(0), int(0), int(0)]);
    }

    #[test]
    fn admissibility_checks() {
        let c = Poset::chain(3);
        assert!(check_admissible(&c, &[int(1), int(1), int(1)]).unwrap().is_admissible());
        let (pi, _) = pi_diamond();
        let bad = check_admissible(&pi, &[int(1), ratio(3, 4), ratio(3, 4), int(0), int(0)]).unwrap();
        assert_eq!(bad.child_sum_violations, vec![0]);
        let half = check_admissible(&c, &[ratio(1, 2), int(0), int(0)]).unwrap();
        assert!(!half.bottom_is_one);
        assert_eq!(check_admissible(&Poset::diamond(), &vec![int(1); 4]).unwrap_err(), Error::NotTree);
    }

    #[test]
    fn lub_examples() {
        let (pi, _) = pi_diamond();
        let f1 = adm(&pi, &[(1, 1), (1, 2), (1, 2), (1, 2), (0, 1)]);
        let f2 = adm(&pi, &[(1, 1), (1, 4), (1, 2), (1, 4), (1, 2)]);
        let lub = admissible_lub(&f1, &f2).unwrap();
        assert_eq!(lub.values(), &[int(1), ratio(1, 2), ratio(1, 2), ratio(1, 2), ratio(1, 2)]);
        assert_eq!(admissible_lub(&f1, &f1).unwrap(), f1);

        let f3 = adm(&pi, &[(1, 1), (1, 4), (3, 4), (0, 1), (1, 2)]);
        assert_eq!(admissible_lub(&f1, &f3).unwrap_err(), Error::NoUpperBound("5/4".into()));
    }

    #[test]
    fn order_isomorphism_on_small_grid() {
        let (pi, _) = pi_diamond();
        let mesh = crate::valuation::Mesh::new(2).unwrap();
        let pts = crate::valuation::grid(&pi, mesh).unwrap();
        let fs: Vec<AdmissibleMap> = pts.iter().map(|v| valuation_to_admissible(&pi, v).unwrap()).collect();
        for (i, a) in pts.iter().enumerate() {
            for (j, b) in pts.iter().enumerate() {
                assert_eq!(stochastic_leq(&pi, a, b).unwrap(), fs[i].pointwise_leq(&fs[j]));
            }
        }
    }
}
