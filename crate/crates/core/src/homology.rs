//! Exact reduced simplicial homology over `Q` or `F_p`, with the Reisner
//! (Cohen-Macaulay) and Duval (sequentially Cohen-Macaulay) criteria.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bits;
use crate::clutter::Clutter;
use crate::complex::{faces_by_dimension, SimplicialComplex, DEFAULT_UNIVERSE_LIMIT};
use crate::error::{Error, Result};
use crate::Check;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u32),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p > (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Reduced Betti numbers indexed from dimension `-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyProfile {
    ranks: Vec<usize>,
}

impl HomologyProfile {
    /// `dim H̃_i`; zero outside `-1..=dim`.
    pub fn rank(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|k| self.ranks.get(k).copied())
            .unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Highest dimension covered by the profile.
    pub fn top(&self) -> isize {
        self.ranks.len() as isize - 2
    }

    /// `Σ (-1)^i dim H̃_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 1 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

/// A face whose link has nonvanishing homology below its dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReisnerFailure {
    pub face: Vec<String>,
    pub degree: isize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonFailure {
    /// Dimension of the pure skeleton that is not Cohen-Macaulay.
    pub dimension: isize,
    pub failure: ReisnerFailure,
}

pub fn reduced_homology(delta: &SimplicialComplex, field: FieldSpec) -> Result<HomologyProfile> {
    reduced_homology_with_limit(delta, field, DEFAULT_UNIVERSE_LIMIT)
}

pub fn reduced_homology_with_limit(
    delta: &SimplicialComplex,
    field: FieldSpec,
    limit: usize,
) -> Result<HomologyProfile> {
    check_input(delta, limit)?;
    Ok(HomologyProfile {
        ranks: reduced_betti(delta.facet_masks(), field),
    })
}

fn check_input(delta: &SimplicialComplex, limit: usize) -> Result<()> {
    if delta.is_void() {
        return Err(Error::VoidComplex);
    }
    if delta.universe().len() > limit {
        return Err(Error::LimitExceeded {
            what: "universe size",
            value: delta.universe().len(),
            limit,
        });
    }
    Ok(())
}

/// Reduced Betti numbers of the complex generated by `facets` (nonvoid).
pub(crate) fn reduced_betti(facets: &[u64], field: FieldSpec) -> Vec<usize> {
    let levels = faces_by_dimension(facets);
    let top = levels.len() - 1;
    // boundary[s] = rank of the map from size-s faces to size-(s-1) faces
    let mut boundary = vec![0usize; top + 2];
    for s in 1..=top {
        boundary[s] = boundary_rank(&levels[s - 1], &levels[s], field);
    }
    (0..=top)
        .map(|s| levels[s].len() - boundary[s] - boundary[s + 1])
        .collect()
}

fn boundary_rank(lower: &[u64], upper: &[u64], field: FieldSpec) -> usize {
    if lower.is_empty() || upper.is_empty() {
        return 0;
    }
    let index: HashMap<u64, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    // one row per upper face (the transpose has the same rank)
    let rows: Vec<Vec<(usize, i64)>> = upper
        .iter()
        .map(|&face| {
            bits::iter(face)
                .enumerate()
                .map(|(pos, v)| {
                    let sign = if pos % 2 == 0 { 1 } else { -1 };
                    (index[&(face & !bits::bit(v))], sign)
                })
                .collect()
        })
        .collect();
    let ncols = lower.len();
    match field {
        FieldSpec::Prime(p) => rank_mod_p(&rows, ncols, p as u64),
        FieldSpec::Rationals => {
            rank_rational_small(&rows, ncols).unwrap_or_else(|| rank_rational_big(&rows, ncols))
        }
    }
}

fn dense<T: Clone + Zero>(rows: &[Vec<(usize, i64)>], ncols: usize, conv: impl Fn(i64) -> T) -> Vec<Vec<T>> {
    rows.iter()
        .map(|r| {
            let mut row = vec![T::zero(); ncols];
            for &(c, v) in r {
                row[c] = conv(v);
            }
            row
        })
        .collect()
}

fn rank_mod_p(rows: &[Vec<(usize, i64)>], ncols: usize, p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = dense(rows, ncols, |v| v.rem_euclid(p as i64) as u64);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][col], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = m[rank].clone();
        for r in rank + 1..m.len() {
            let f = m[r][col];
            if f == 0 {
                continue;
            }
            for (x, &y) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                *x = (*x + p - f * y % p) % p;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Fraction-free elimination in `i64`; `None` on overflow.
fn rank_rational_small(rows: &[Vec<(usize, i64)>], ncols: usize) -> Option<usize> {
    let mut m: Vec<Vec<i64>> = dense(rows, ncols, |v| v);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot_row = m[rank].clone();
        for r in rank + 1..m.len() {
            let b = m[r][col];
            if b == 0 {
                continue;
            }
            let a = pivot_row[col];
            let g = a.gcd(&b);
            let (a, b) = (a / g, b / g);
            let mut content = 0i64;
            for (x, &y) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                *x = x.checked_mul(a)?.checked_sub(y.checked_mul(b)?)?;
                content = content.gcd(x);
            }
            if content > 1 {
                for x in m[r].iter_mut().skip(col) {
                    *x /= content;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

fn rank_rational_big(rows: &[Vec<(usize, i64)>], ncols: usize) -> usize {
    let mut m: Vec<Vec<BigInt>> = dense(rows, ncols, BigInt::from);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let pivot_row = m[rank].clone();
        for r in rank + 1..m.len() {
            if m[r][col].is_zero() {
                continue;
            }
            let g = pivot_row[col].gcd(&m[r][col]);
            let a = &pivot_row[col] / &g;
            let b = &m[r][col] / &g;
            let mut content = BigInt::zero();
            for (x, y) in m[r].iter_mut().zip(&pivot_row).skip(col) {
                *x = &*x * &a - y * &b;
                content = content.gcd(x);
            }
            if content.abs() > BigInt::from(1) {
                for x in m[r].iter_mut().skip(col) {
                    *x /= &content;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Reisner: every link (including that of `∅`) has `H̃_i = 0` below its
/// dimension. Faces are visited in increasing dimension; the first failure
/// is returned.
pub fn is_cohen_macaulay(delta: &SimplicialComplex, field: FieldSpec) -> Result<Check<ReisnerFailure>> {
    is_cohen_macaulay_with_limit(delta, field, DEFAULT_UNIVERSE_LIMIT)
}

pub fn is_cohen_macaulay_with_limit(
    delta: &SimplicialComplex,
    field: FieldSpec,
    limit: usize,
) -> Result<Check<ReisnerFailure>> {
    check_input(delta, limit)?;
    Ok(reisner(delta.facet_masks(), field)
        .map_or(Check::Holds, |(face, degree)| {
            Check::Fails(ReisnerFailure {
                face: bits::owned_labels(face, delta.universe()),
                degree,
            })
        }))
}

fn reisner(facets: &[u64], field: FieldSpec) -> Option<(u64, isize)> {
    for level in faces_by_dimension(facets) {
        for face in level {
            let link: Vec<u64> = facets
                .iter()
                .filter(|&&f| bits::is_subset(face, f))
                .map(|&f| f & !face)
                .collect();
            let link_dim = link.iter().map(|&f| bits::len(f)).max().unwrap() as isize - 1;
            if link_dim < 1 {
                // only H̃_{-1} could matter, and it vanishes for nonempty links
                continue;
            }
            // a cone is contractible
            if link.iter().fold(u64::MAX, |acc, &f| acc & f) != 0 {
                continue;
            }
            let betti = reduced_betti(&link, field);
            if let Some(k) = (0..link_dim as usize + 1).find(|&k| betti[k] != 0) {
                return Some((face, k as isize - 1));
            }
        }
    }
    None
}

/// Duval: every pure skeleton `Δ^[k]`, `-1 <= k <= dim Δ`, is Cohen-Macaulay.
pub fn is_sequentially_cm(delta: &SimplicialComplex, field: FieldSpec) -> Result<Check<SkeletonFailure>> {
    is_sequentially_cm_with_limit(delta, field, DEFAULT_UNIVERSE_LIMIT)
}

pub fn is_sequentially_cm_with_limit(
    delta: &SimplicialComplex,
    field: FieldSpec,
    limit: usize,
) -> Result<Check<SkeletonFailure>> {
    check_input(delta, limit)?;
    let dim = delta.dim().unwrap();
    for k in -1..=dim {
        let skeleton = delta.pure_skeleton_facets(k);
        if let Some((face, degree)) = reisner(&skeleton, field) {
            return Ok(Check::Fails(SkeletonFailure {
                dimension: k,
                failure: ReisnerFailure {
                    face: bits::owned_labels(face, delta.universe()),
                    degree,
                },
            }));
        }
    }
    Ok(Check::Holds)
}

/// All minimal vertex covers have the same size.
pub fn is_unmixed(c: &Clutter) -> bool {
    let covers = c.cover_masks();
    covers.windows(2).all(|w| bits::len(w[0]) == bits::len(w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::graph::Graph;

    fn cx(facets: &[&[&str]]) -> SimplicialComplex {
        let universe: Vec<&str> = facets.iter().flat_map(|f| f.iter().copied()).collect();
        SimplicialComplex::from_facets(universe, facets.iter().map(|f| f.to_vec())).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(String, String)> = (1..=n)
            .map(|i| (i.to_string(), (i % n + 1).to_string()))
            .collect();
        Graph::new(Vec::<String>::new(), edges).unwrap()
    }

    #[test]
    fn field_validation() {
        assert_eq!(FieldSpec::prime(7).unwrap(), FieldSpec::Prime(7));
        assert!(FieldSpec::prime(8).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert!(FieldSpec::prime(4_294_967_311).is_err());
    }

    #[test]
    fn circle_simplex_and_two_points() {
        for field in [FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
            let circle = cx(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
            let h = reduced_homology(&circle, field).unwrap();
            assert_eq!(h.ranks(), &[0, 0, 1]);

            let simplex = cx(&[&["a", "b", "c"]]);
            assert!(reduced_homology(&simplex, field).unwrap().ranks().iter().all(|&r| r == 0));

            let points = cx(&[&["a"], &["b"]]);
            assert_eq!(reduced_homology(&points, field).unwrap().rank(0), 1);
        }
        let empty = SimplicialComplex::from_facets(Vec::<&str>::new(), vec![vec![]]).unwrap();
        assert_eq!(reduced_homology(&empty, FieldSpec::Rationals).unwrap().ranks(), &[1]);
        let void = SimplicialComplex::void(["a"]).unwrap();
        assert_eq!(reduced_homology(&void, FieldSpec::Rationals), Err(Error::VoidComplex));
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // 6-vertex RP^2: H̃_1 = 0 over Q, = 1 over GF(2)
        let facets: [[&str; 3]; 10] = [
            ["1", "2", "3"], ["1", "3", "4"], ["1", "4", "5"], ["1", "5", "6"], ["1", "2", "6"],
            ["2", "3", "5"], ["2", "4", "5"], ["2", "4", "6"], ["3", "4", "6"], ["3", "5", "6"],
        ];
        let rp2 = cx(&facets.iter().map(|f| &f[..]).collect::<Vec<_>>());
        let q = reduced_homology(&rp2, FieldSpec::Rationals).unwrap();
        let f2 = reduced_homology(&rp2, FieldSpec::Prime(2)).unwrap();
        assert_eq!(q.ranks(), &[0, 0, 0, 0]);
        assert_eq!(f2.ranks(), &[0, 0, 1, 1]);
        assert!(is_cohen_macaulay(&rp2, FieldSpec::Rationals).unwrap().holds());
        assert!(!is_cohen_macaulay(&rp2, FieldSpec::Prime(2)).unwrap().holds());
    }

    #[test]
    fn cohen_macaulay_examples() {
        let c5 = independence_complex(&cycle(5));
        assert!(is_cohen_macaulay(&c5, FieldSpec::Rationals).unwrap().holds());

        let c4 = cx(&[&["x1", "x2"], &["y1", "y2"]]);
        let fail = is_cohen_macaulay(&c4, FieldSpec::Rationals).unwrap();
        assert_eq!(
            fail,
            Check::Fails(ReisnerFailure {
                face: vec![],
                degree: 0
            })
        );
        assert!(is_cohen_macaulay(&cx(&[&["a", "b", "c"]]), FieldSpec::Rationals)
            .unwrap()
            .holds());
    }

    #[test]
    fn sequentially_cm_examples() {
        let q = FieldSpec::Rationals;
        let c6 = independence_complex(&cycle(6));
        assert!(!is_sequentially_cm(&c6, q).unwrap().holds());
        assert!(is_sequentially_cm(&independence_complex(&cycle(3)), q).unwrap().holds());
        assert!(is_sequentially_cm(&cx(&[&["a", "b"]]), q).unwrap().holds());
        // nonpure but shellable: ⟨{a,b},{c}⟩ is sequentially CM, not CM
        let d = cx(&[&["a", "b"], &["c"]]);
        assert!(is_sequentially_cm(&d, q).unwrap().holds());
        assert!(!is_cohen_macaulay(&d, q).unwrap().holds());
    }

    #[test]
    fn unmixed_examples() {
        let c4 = Clutter::from_graph(&cycle(4));
        assert!(is_unmixed(&c4));
        let p = Clutter::from_graph(&Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap());
        assert!(!is_unmixed(&p));
        let e = Clutter::from_graph(&Graph::from_edges(&[("a", "b")]).unwrap());
        assert!(is_unmixed(&e));
    }

    #[test]
    fn big_integer_path_agrees() {
        let rows = vec![
            vec![(0, 1), (1, -1)],
            vec![(1, 1), (2, -1)],
            vec![(0, 1), (2, -1)],
        ];
        assert_eq!(rank_rational_big(&rows, 3), 2);
        assert_eq!(rank_rational_small(&rows, 3), Some(2));
        assert_eq!(rank_mod_p(&rows, 3, 5), 2);
    }
}
