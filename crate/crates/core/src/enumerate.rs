//! Exhaustive generation of small structures for law checking.

use crate::error::{Error, Result};
use crate::poset::{FinCompact, Poset};

/// Largest `n` accepted by [`enumerate_posets`].
pub const MAX_ENUMERATED: usize = 6;

/// Every labeled partial order on `n` elements (named `0..n`), each exactly
/// once, in a deterministic order.
///
/// Posets are grown one element at a time: the new element `k` picks a
/// down-set `D` and an up-set `U` of the poset on `0..k` with `D` entirely
/// below `U`. The restriction to `0..k` is unique, so nothing repeats.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    if n > MAX_ENUMERATED {
        return Err(Error::TooLarge(n));
    }
    // rows[i] = bitmask of elements j with i <= j
    let mut level: Vec<Vec<u64>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for rows in &level {
            extend_by_one(rows, k, &mut next);
        }
        level = next;
    }
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Ok(level
        .into_iter()
        .map(|rows| {
            let table = (0..n * n).map(|c| rows[c / n] >> (c % n) & 1 == 1).collect();
            Poset::from_table_unchecked(names.clone(), table)
        })
        .collect())
}

fn extend_by_one(rows: &[u64], k: usize, out: &mut Vec<Vec<u64>>) {
    let leq = |i: usize, j: usize| rows[i] >> j & 1 == 1;
    let subsets = 1u64 << k;
    let is_down = |m: u64| (0..k).all(|j| m >> j & 1 == 0 || (0..k).all(|i| !leq(i, j) || m >> i & 1 == 1));
    let is_up = |m: u64| (0..k).all(|i| m >> i & 1 == 0 || (0..k).all(|j| !leq(i, j) || m >> j & 1 == 1));
    let downs: Vec<u64> = (0..subsets).filter(|&m| is_down(m)).collect();
    let ups: Vec<u64> = (0..subsets).filter(|&m| is_up(m)).collect();
    for &d in &downs {
        for &u in &ups {
            if d & u != 0 {
                continue;
            }
            let ok = (0..k).all(|i| d >> i & 1 == 0 || (0..k).all(|j| u >> j & 1 == 0 || leq(i, j)));
            if !ok {
                continue;
            }
            let mut new_rows: Vec<u64> = rows.to_vec();
            for (i, row) in new_rows.iter_mut().enumerate() {
                if d >> i & 1 == 1 {
                    *row |= 1 << k;
                }
            }
            new_rows.push(u | 1 << k);
            out.push(new_rows);
        }
    }
}

/// Every monotone map `source -> target` as a value table, in
/// lexicographic order.
pub fn monotone_maps(source: &Poset, target: &Poset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(source.len());
    let values: Vec<usize> = target.elements().collect();
    assign(source, &values, &mut table, &mut out, &|x, y, a, b| {
        !(source.leq(x, y) && !target.leq(a, b)) && !(source.leq(y, x) && !target.leq(b, a))
    });
    out
}

/// Every Smyth-monotone table `source -> Fin(target)` (values are nonempty
/// canonical antichains), in lexicographic order of antichain indices.
pub fn monotone_fin_tables(source: &Poset, target: &Poset) -> Vec<Vec<FinCompact>> {
    let fin = target.antichains();
    let idx: Vec<usize> = (0..fin.len()).collect();
    let mut out = Vec::new();
    let mut table = Vec::with_capacity(source.len());
    assign(source, &idx, &mut table, &mut out, &|x, y, a, b| {
        let (ea, eb) = (&fin[a], &fin[b]);
        !(source.leq(x, y) && !target.smyth_le(ea, eb)) && !(source.leq(y, x) && !target.smyth_le(eb, ea))
    });
    out.into_iter()
        .map(|t| t.into_iter().map(|i| fin[i].clone()).collect())
        .collect()
}

fn assign(
    source: &Poset,
    values: &[usize],
    table: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    compatible: &dyn Fn(usize, usize, usize, usize) -> bool,
) {
    let x = table.len();
    if x == source.len() {
        out.push(table.clone());
        return;
    }
    for &v in values {
        if (0..x).all(|y| compatible(y, x, table[y], v)) {
            table.push(v);
            assign(source, values, table, out, compatible);
            table.pop();
        }
    }
}

/// Relabels `poset` so that it is the lexicographically least table among
/// all relabelings; two posets are isomorphic iff their canonical forms agree.
pub fn canonical_form(poset: &Poset) -> Vec<bool> {
    let n = poset.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    permute(&mut perm, 0, &mut |p| {
        let table: Vec<bool> = (0..n * n).map(|c| poset.leq(p[c / n], p[c % n])).collect();
        if best.as_ref().is_none_or(|b| table < *b) {
            best = Some(table);
        }
    });
    best.unwrap_or_default()
}

fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == perm.len() {
        visit(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, visit);
        perm.swap(k, i);
    }
}

/// One representative per isomorphism class of posets on `n` elements.
pub fn enumerate_unlabeled(n: usize) -> Result<Vec<Poset>> {
    let mut seen = std::collections::BTreeSet::new();
    Ok(enumerate_posets(n)?
        .into_iter()
        .filter(|p| seen.insert(canonical_form(p)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: all boolean relations, filtered by the order axioms.
    fn brute_force_count(n: usize) -> usize {
        let off: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .collect();
        let mut count = 0;
        for mask in 0u64..(1 << off.len()) {
            let mut r = vec![false; n * n];
            for i in 0..n {
                r[i * n + i] = true;
            }
            for (b, &(i, j)) in off.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    r[i * n + j] = true;
                }
            }
            let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(r[i * n + j] && r[j * n + i])));
            let trans = (0..n).all(|i| {
                (0..n).all(|j| (0..n).all(|k| !(r[i * n + j] && r[j * n + k]) || r[i * n + k]))
            });
            if antisym && trans {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        for n in 0..=4 {
            assert_eq!(enumerate_posets(n).unwrap().len(), brute_force_count(n), "n = {n}");
        }
        assert_eq!(enumerate_posets(1).unwrap().len(), 1);
        assert_eq!(enumerate_posets(2).unwrap().len(), 3);
        assert_eq!(enumerate_posets(3).unwrap().len(), 19);
        assert!(matches!(enumerate_posets(7), Err(Error::TooLarge(7))));
    }

    #[test]
    fn no_duplicates() {
        let all = enumerate_posets(4).unwrap();
        let set: std::collections::HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert_eq!(enumerate_posets(3).unwrap(), enumerate_posets(3).unwrap());
    }

    #[test]
    fn unlabeled_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| enumerate_unlabeled(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 16]);
    }

    #[test]
    fn monotone_map_counts() {
        // monotone self-maps of a 2-chain: 00, 01, 11
        assert_eq!(monotone_maps(&Poset::chain(2), &Poset::chain(2)).len(), 3);
        // every map out of an antichain is monotone
        assert_eq!(monotone_maps(&Poset::antichain(2), &Poset::chain(3)).len(), 9);
        let d = Poset::diamond();
        for t in monotone_fin_tables(&Poset::chain(2), &d) {
            assert!(d.smyth_le(&t[0], &t[1]));
        }
    }
}
