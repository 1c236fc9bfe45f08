//! Vertex sets as `u64` masks over a sorted label universe.
//!
//! Bit `i` stands for the `i`-th label of the owning structure. Because every
//! universe is kept in lexicographic order, comparing masks by their index
//! sequences is the same as comparing the sorted label lists.

use std::cmp::Ordering;

pub const MAX_VERTICES: usize = 64;

#[inline]
pub fn bit(i: usize) -> u64 {
    1u64 << i
}

#[inline]
pub fn contains(mask: u64, i: usize) -> bool {
    mask & bit(i) != 0
}

#[inline]
pub fn is_subset(a: u64, b: u64) -> bool {
    a & !b == 0
}

#[inline]
pub fn len(mask: u64) -> usize {
    mask.count_ones() as usize
}

/// All masks with bits `0..n` set.
#[inline]
pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        bit(n) - 1
    }
}

#[inline]
pub fn lowest(mask: u64) -> Option<usize> {
    (mask != 0).then(|| mask.trailing_zeros() as usize)
}

pub fn iter(mask: u64) -> Ones {
    Ones(mask)
}

pub struct Ones(u64);

impl Iterator for Ones {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Ones {}

pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> u64 {
    it.into_iter().fold(0, |m, i| m | bit(i))
}

/// Lexicographic comparison of the increasing index sequences.
pub fn lex_cmp(a: u64, b: u64) -> Ordering {
    let mut ia = iter(a);
    let mut ib = iter(b);
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x != y => return x.cmp(&y),
            _ => {}
        }
    }
}

/// Canonical facet order: by size, then lexicographically.
pub fn canonical_cmp(a: u64, b: u64) -> Ordering {
    len(a).cmp(&len(b)).then_with(|| lex_cmp(a, b))
}

pub fn sort_canonical(v: &mut [u64]) {
    v.sort_unstable_by(|&a, &b| canonical_cmp(a, b));
}

/// Keeps only inclusion-minimal sets (deduplicated, canonical order).
pub fn minimalize(mut sets: Vec<u64>) -> Vec<u64> {
    sort_canonical(&mut sets);
    sets.dedup();
    let mut out: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|&m| is_subset(m, s)) {
            out.push(s);
        }
    }
    out
}

/// Keeps only inclusion-maximal sets (deduplicated, canonical order).
pub fn maximalize(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by(|&a, &b| canonical_cmp(b, a));
    sets.dedup();
    let mut out: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|&m| is_subset(s, m)) {
            out.push(s);
        }
    }
    sort_canonical(&mut out);
    out
}

/// Packs the bits of `mask` selected by `keep` into consecutive low bits.
pub fn compress(mask: u64, keep: u64) -> u64 {
    let mut out = 0;
    for (k, i) in iter(keep).enumerate() {
        if contains(mask, i) {
            out |= bit(k);
        }
    }
    out
}

/// Index translation table from one sorted label list into another.
pub fn index_map(from: &[String], to: &[String]) -> Option<Vec<usize>> {
    from.iter()
        .map(|l| to.binary_search(l).ok())
        .collect()
}

pub fn translate(mask: u64, map: &[usize]) -> u64 {
    iter(mask).fold(0, |m, i| m | bit(map[i]))
}

pub fn labels<'a>(mask: u64, universe: &'a [String]) -> Vec<&'a str> {
    iter(mask).map(|i| universe[i].as_str()).collect()
}

pub fn owned_labels(mask: u64, universe: &[String]) -> Vec<String> {
    iter(mask).map(|i| universe[i].clone()).collect()
}

/// A growable bitset used as a memo key for subsets of facets or generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SetKey(Vec<u64>);

impl SetKey {
    pub fn with_capacity(n: usize) -> Self {
        SetKey(vec![0; n.div_ceil(64).max(1)])
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= bit(i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !bit(i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] & bit(i % 64) != 0
    }
}
