//! Index sets summed over by higher-order chain rules: set partitions,
//! subsets and partial bijections.

use crate::error::{Error, Result};

/// An unordered partition of `{1, ..., n}`; blocks are sorted and listed by
/// their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    pub n: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// All partitions of `[n]`, via restricted growth strings.
pub fn partitions(n: usize) -> Vec<SetPartition> {
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    fn go(i: usize, max: usize, rgs: &mut Vec<usize>, out: &mut Vec<SetPartition>) {
        let n = rgs.len();
        if i == n {
            let k = if n == 0 { 0 } else { max + 1 };
            let mut blocks = vec![Vec::new(); k];
            for (j, b) in rgs.iter().enumerate() {
                blocks[*b].push(j + 1);
            }
            out.push(SetPartition { n, blocks });
            return;
        }
        let top = if i == 0 { 0 } else { max + 1 };
        for b in 0..=top {
            rgs[i] = b;
            go(i + 1, max.max(b), rgs, out);
        }
    }
    go(0, 0, &mut rgs, &mut out);
    out
}

/// All `2^n` subsets of `[n]`, each sorted, in binary counting order.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
        .collect()
}

/// A bijection between a subset of `[m]` and a subset of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartialIso {
    pub m: usize,
    pub n: usize,
    /// Graph sorted by first component.
    pub pairs: Vec<(usize, usize)>,
}

impl PartialIso {
    pub fn new(m: usize, n: usize, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        let ok_range = pairs.iter().all(|(i, j)| (1..=m).contains(i) && (1..=n).contains(j));
        let mut firsts: Vec<_> = pairs.iter().map(|p| p.0).collect();
        let mut seconds: Vec<_> = pairs.iter().map(|p| p.1).collect();
        firsts.dedup();
        seconds.sort_unstable();
        seconds.dedup();
        if !ok_range || firsts.len() != pairs.len() || seconds.len() != pairs.len() {
            return Err(Error::IndexOutOfRange(format!("{pairs:?} is not a partial bijection [{m}] to [{n}]")));
        }
        Ok(PartialIso { m, n, pairs })
    }

    /// `|θ| = m + n - #graph`: the number of non-base entries of the arranged list.
    pub fn size(&self) -> usize {
        self.m + self.n - self.pairs.len()
    }

    /// Grid positions in the arranged order: `(0,0)`, matched pairs by
    /// increasing row, unmatched rows `(i,0)`, unmatched columns `(0,j)`.
    pub fn arrangement(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size() + 1);
        out.push((0, 0));
        out.extend(self.pairs.iter().copied());
        out.extend((1..=self.m).filter(|i| !self.pairs.iter().any(|p| p.0 == *i)).map(|i| (i, 0)));
        out.extend((1..=self.n).filter(|j| !self.pairs.iter().any(|p| p.1 == *j)).map(|j| (0, j)));
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<_> = subsets(n).into_iter().filter(|s| s.len() == k).collect();
    out.sort();
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, *x);
            out.push(p);
        }
    }
    out
}

/// Every partial bijection `[m] ≃ [n]`, by size, then domain, codomain and
/// matching.
pub fn partial_isos(m: usize, n: usize) -> Vec<PartialIso> {
    let mut out = Vec::new();
    for k in 0..=m.min(n) {
        let doms = combinations(m, k);
        let cods = combinations(n, k);
        for dom in &doms {
            for cod in &cods {
                for perm in permutations(cod) {
                    let pairs = dom.iter().copied().zip(perm).collect();
                    out.push(PartialIso { m, n, pairs });
                }
            }
        }
    }
    out
}

/// Reads a grid `x_{ij}` (rows `0..=m`, columns `0..=n`) in the order fixed
/// by `θ`.
pub fn arrange<T: Clone>(theta: &PartialIso, grid: &[Vec<T>]) -> Result<Vec<T>> {
    theta
        .arrangement()
        .into_iter()
        .map(|(i, j)| {
            grid.get(i)
                .and_then(|row| row.get(j))
                .cloned()
                .ok_or_else(|| Error::IndexOutOfRange(format!("grid entry ({i},{j})")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bell(n: usize) -> u64 {
        // Bell triangle.
        let mut row = vec![1u64];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for x in &row {
                let v = next.last().unwrap() + x;
                next.push(v);
            }
            row = next;
        }
        row[0]
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn fact(n: u64) -> u64 {
        (1..=n).product()
    }

    #[test]
    fn partition_examples() {
        let p0 = partitions(0);
        assert_eq!(p0.len(), 1);
        assert!(p0[0].blocks.is_empty());
        assert_eq!(partitions(1)[0].blocks, vec![vec![1]]);
        assert_eq!(partitions(3).len(), 5);
    }

    #[test]
    fn partitions_count_bell() {
        for n in 0..=8 {
            assert_eq!(partitions(n).len() as u64, bell(n), "n = {n}");
        }
    }

    #[test]
    fn partitions_are_canonical_and_distinct() {
        for n in 0..=6 {
            let ps = partitions(n);
            let mut seen = std::collections::HashSet::new();
            for p in &ps {
                let mut all: Vec<usize> = p.blocks.concat();
                all.sort();
                assert_eq!(all, (1..=n).collect::<Vec<_>>());
                assert!(p.blocks.iter().all(|b| !b.is_empty() && b.windows(2).all(|w| w[0] < w[1])));
                assert!(p.blocks.windows(2).all(|w| w[0][0] < w[1][0]));
                assert!(seen.insert(p.blocks.clone()));
            }
        }
    }

    #[test]
    fn partitions_extend_uniquely() {
        for n in 1..=6 {
            let mut grown: Vec<Vec<Vec<usize>>> = Vec::new();
            for p in partitions(n - 1) {
                let mut single = p.blocks.clone();
                single.push(vec![n]);
                grown.push(single);
                for i in 0..p.blocks.len() {
                    let mut joined = p.blocks.clone();
                    joined[i].push(n);
                    grown.push(joined);
                }
            }
            let mut want: Vec<_> = partitions(n).into_iter().map(|p| p.blocks).collect();
            grown.sort();
            want.sort();
            assert_eq!(grown, want);
        }
    }

    #[test]
    fn subset_examples() {
        assert_eq!(subsets(0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(1), vec![vec![], vec![1]]);
        assert_eq!(subsets(3).len(), 8);
    }

    #[test]
    fn partial_iso_examples() {
        assert_eq!(partial_isos(0, 0).len(), 1);
        assert_eq!(partial_isos(1, 1).len(), 2);
        assert_eq!(partial_isos(2, 2).len(), 7);
    }

    fn injections_brute(m: usize, n: usize) -> usize {
        // Each row picks a column or nothing; keep the injective choices.
        let mut count = 0;
        let total = (n + 1).pow(m as u32);
        for code in 0..total {
            let mut c = code;
            let mut used = vec![false; n + 1];
            let mut ok = true;
            for _ in 0..m {
                let j = c % (n + 1);
                c /= n + 1;
                if j > 0 {
                    if used[j] {
                        ok = false;
                    }
                    used[j] = true;
                }
            }
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn partial_iso_counts() {
        for m in 0..=5 {
            for n in 0..=5 {
                let formula: u64 = (0..=m.min(n) as u64)
                    .map(|k| binom(m as u64, k) * binom(n as u64, k) * fact(k))
                    .sum();
                let isos = partial_isos(m, n);
                assert_eq!(isos.len() as u64, formula);
                assert_eq!(isos.len(), injections_brute(m, n));
                let mut uniq = isos.clone();
                uniq.dedup();
                assert_eq!(uniq.len(), isos.len());
            }
        }
    }

    fn grid(m: usize, n: usize) -> Vec<Vec<String>> {
        (0..=m).map(|i| (0..=n).map(|j| format!("x{i}{j}")).collect()).collect()
    }

    #[test]
    fn arrange_worked_example() {
        let theta = PartialIso::new(3, 4, vec![(1, 2), (3, 4)]).unwrap();
        let got = arrange(&theta, &grid(3, 4)).unwrap();
        assert_eq!(got, ["x00", "x12", "x34", "x20", "x01", "x03"]);
    }

    #[test]
    fn arrange_degenerate() {
        let e = PartialIso::new(0, 0, vec![]).unwrap();
        assert_eq!(arrange(&e, &grid(0, 0)).unwrap(), ["x00"]);
        let e = PartialIso::new(1, 1, vec![]).unwrap();
        assert_eq!(arrange(&e, &grid(1, 1)).unwrap(), ["x00", "x10", "x01"]);
        assert!(matches!(arrange(&e, &grid(0, 0)), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn arrange_length() {
        for m in 0..=4 {
            for n in 0..=4 {
                for t in partial_isos(m, n) {
                    assert_eq!(arrange(&t, &grid(m, n)).unwrap().len(), t.size() + 1);
                }
            }
        }
    }

    #[test]
    fn bad_iso_rejected() {
        assert!(PartialIso::new(2, 2, vec![(1, 1), (2, 1)]).is_err());
        assert!(PartialIso::new(1, 1, vec![(2, 1)]).is_err());
    }
}
