//! Shelling certificates, the brute-force shelling search, and the
//! constructive shellings for disjoint unions, bipartite graphs, chordal
//! graphs and clutters with the free vertex property.
//!
//! A facet order `F_1, …, F_s` is a shelling when for every `i < j` there is
//! a vertex `v ∈ F_j ∖ F_i` and an index `ℓ < j` with `F_j ∖ F_ℓ = {v}`.
//! Certificates store one such `(v, ℓ)` for every pair so that a reader can
//! recheck them without searching.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{self, bit, SetKey};
use crate::clutter::{self, Clutter};
use crate::complex::{merge_universes, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};

/// Default facet cap for the brute-force search.
pub const DEFAULT_FACET_LIMIT: usize = 20;

#[inline]
fn tri(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

/// An order together with its witnesses, on whatever index space the caller
/// uses. Witness `(v, ℓ)` for pair `(i, j)` lives at `tri(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawShelling {
    order: Vec<u64>,
    witnesses: Vec<(usize, usize)>,
}

impl RawShelling {
    fn new(order: Vec<u64>) -> Self {
        let s = order.len();
        RawShelling {
            order,
            witnesses: vec![(usize::MAX, usize::MAX); s * s.saturating_sub(1) / 2],
        }
    }

    fn single(face: u64) -> Self {
        RawShelling::new(vec![face])
    }

    fn witness(&self, i: usize, j: usize) -> (usize, usize) {
        self.witnesses[tri(i, j)]
    }

    fn set(&mut self, i: usize, j: usize, w: (usize, usize)) {
        self.witnesses[tri(i, j)] = w;
    }

    fn adjoin(mut self, mask: u64) -> Self {
        for f in &mut self.order {
            *f |= mask;
        }
        self
    }

    /// Product order `F_1∪H_1, …, F_1∪H_s; F_2∪H_1, …`.
    fn union(a: &RawShelling, b: &RawShelling) -> Self {
        let s = b.order.len();
        let order = a
            .order
            .iter()
            .flat_map(|&f| b.order.iter().map(move |&h| f | h))
            .collect();
        let mut out = RawShelling::new(order);
        let n = out.order.len();
        for q in 0..n {
            let (j, t) = (q / s, q % s);
            for p in 0..q {
                let (i, k) = (p / s, p % s);
                let w = if i < j {
                    let (v, l) = a.witness(i, j);
                    (v, l * s + t)
                } else {
                    let (v, l) = b.witness(k, t);
                    (v, i * s + l)
                };
                out.set(p, q, w);
            }
        }
        out
    }

    /// Keeps the facets selected by `keep`, in order, carrying witnesses
    /// over. Fails if some witness points outside the kept facets.
    fn restrict(&self, keep: impl Fn(u64) -> bool) -> std::result::Result<Self, (usize, usize)> {
        let kept: Vec<usize> = (0..self.order.len()).filter(|&i| keep(self.order[i])).collect();
        let mut pos = vec![usize::MAX; self.order.len()];
        for (p, &i) in kept.iter().enumerate() {
            pos[i] = p;
        }
        let mut out = RawShelling::new(kept.iter().map(|&i| self.order[i]).collect());
        for (b, &ib) in kept.iter().enumerate() {
            for (a, &ia) in kept[..b].iter().enumerate() {
                let (v, l) = self.witness(ia, ib);
                if pos[l] == usize::MAX {
                    return Err((ia, ib));
                }
                out.set(a, b, (v, pos[l]));
            }
        }
        Ok(out)
    }

    fn check(&self) -> std::result::Result<(), String> {
        let s = self.order.len();
        if self.witnesses.len() != s * s.saturating_sub(1) / 2 {
            return Err("witness table has the wrong size".into());
        }
        for j in 0..s {
            for i in 0..j {
                let (v, l) = self.witness(i, j);
                let (fi, fj) = (self.order[i], self.order[j]);
                let ok = v < 64
                    && l < j
                    && bits::contains(fj & !fi, v)
                    && fj & !self.order[l] == bit(v);
                if !ok {
                    return Err(format!("witness for pair ({}, {}) does not hold", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }
}

/// Computes a witness for every pair, or the lexicographically first pair
/// `(i, j)` that has none.
pub(crate) fn witnesses_for(order: &[u64]) -> std::result::Result<RawShelling, (usize, usize)> {
    let mut out = RawShelling::new(order.to_vec());
    let mut worst: Option<(usize, usize)> = None;
    for j in 0..order.len() {
        let fj = order[j];
        // ℓ(v) = first earlier facet with F_j ∖ F_ℓ = {v}
        let mut first = [usize::MAX; 64];
        let mut available = 0u64;
        for (l, &fl) in order[..j].iter().enumerate() {
            let d = fj & !fl;
            if bits::len(d) == 1 {
                let v = d.trailing_zeros() as usize;
                if first[v] == usize::MAX {
                    first[v] = l;
                    available |= d;
                }
            }
        }
        for (i, &fi) in order[..j].iter().enumerate() {
            match bits::lowest(fj & !fi & available) {
                Some(v) => out.set(i, j, (v, first[v])),
                None => {
                    if worst.is_none_or(|w| (i, j) < w) {
                        worst = Some((i, j));
                    }
                    break;
                }
            }
        }
    }
    match worst {
        Some(p) => Err(p),
        None => Ok(out),
    }
}

/// A facet order with a witness `(v, ℓ)` for every pair `i < j`.
#[derive(Clone, PartialEq, Eq)]
pub struct ShellingCertificate {
    universe: Vec<String>,
    raw: RawShelling,
}

/// One witness, with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<'a> {
    pub i: usize,
    pub j: usize,
    pub vertex: &'a str,
    pub earlier: usize,
}

/// Serialized certificate; indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub order: Vec<Vec<String>>,
    pub witnesses: Vec<WitnessDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub i: usize,
    pub j: usize,
    pub v: String,
    pub l: usize,
}

impl ShellingCertificate {
    pub(crate) fn from_raw(universe: Vec<String>, raw: RawShelling) -> Self {
        ShellingCertificate { universe, raw }
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    /// Facets in shelling order, as masks over the universe.
    pub fn order(&self) -> &[u64] {
        &self.raw.order
    }

    pub fn order_labels(&self) -> Vec<Vec<&str>> {
        self.raw
            .order
            .iter()
            .map(|&f| bits::labels(f, &self.universe))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.raw.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.order.is_empty()
    }

    /// `(v, ℓ)` for the 0-based pair `i < j`; `v` indexes the universe.
    pub fn witness(&self, i: usize, j: usize) -> (usize, usize) {
        self.raw.witness(i, j)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = Witness<'_>> {
        let s = self.len();
        (0..s).flat_map(move |i| {
            (i + 1..s).map(move |j| {
                let (v, l) = self.raw.witness(i, j);
                Witness {
                    i,
                    j,
                    vertex: self.universe[v].as_str(),
                    earlier: l,
                }
            })
        })
    }

    /// The complex generated by the facets in the order.
    pub fn complex(&self) -> SimplicialComplex {
        SimplicialComplex::from_masks(self.universe.clone(), self.raw.order.clone())
    }

    /// Rechecks every stored witness against its defining equations.
    pub fn recheck(&self) -> Result<()> {
        self.raw.check().map_err(Error::InvalidCertificate)?;
        let all = bits::full(self.universe.len());
        if self.raw.order.iter().any(|&f| !bits::is_subset(f, all)) {
            return Err(Error::InvalidCertificate("facet outside the universe".into()));
        }
        Ok(())
    }

    /// Rechecks the witnesses and that the order lists exactly the facets of
    /// `delta`.
    pub fn check_against(&self, delta: &SimplicialComplex) -> Result<()> {
        if self.universe != delta.universe() {
            return Err(Error::InvalidCertificate("universe differs from the complex".into()));
        }
        check_permutation(delta, &self.raw.order)?;
        self.recheck()
    }

    pub fn to_document(&self) -> CertificateDocument {
        CertificateDocument {
            order: self
                .raw
                .order
                .iter()
                .map(|&f| bits::owned_labels(f, &self.universe))
                .collect(),
            witnesses: self
                .witnesses()
                .map(|w| WitnessDocument {
                    i: w.i + 1,
                    j: w.j + 1,
                    v: w.vertex.to_string(),
                    l: w.earlier + 1,
                })
                .collect(),
        }
    }

    /// Rebuilds a certificate over `universe` and rechecks it.
    pub fn from_document(doc: &CertificateDocument, universe: &[String]) -> Result<Self> {
        let mut sorted = universe.to_vec();
        sorted.sort();
        sorted.dedup();
        let index = |x: &str| {
            sorted
                .binary_search_by(|v| v.as_str().cmp(x))
                .map_err(|_| Error::UnknownVertex(x.to_string()))
        };
        let mut order = Vec::with_capacity(doc.order.len());
        for f in &doc.order {
            let mut m = 0;
            for x in f {
                m |= bit(index(x)?);
            }
            order.push(m);
        }
        let mut raw = RawShelling::new(order);
        let s = raw.order.len();
        let mut seen = vec![false; raw.witnesses.len()];
        for w in &doc.witnesses {
            if w.i == 0 || w.i >= w.j || w.j > s || w.l == 0 {
                return Err(Error::InvalidCertificate(format!(
                    "witness indices ({}, {}, {}) out of range",
                    w.i, w.j, w.l
                )));
            }
            let (i, j) = (w.i - 1, w.j - 1);
            raw.set(i, j, (index(&w.v)?, w.l - 1));
            seen[tri(i, j)] = true;
        }
        if seen.iter().any(|&b| !b) {
            return Err(Error::InvalidCertificate("missing witnesses".into()));
        }
        let cert = ShellingCertificate::from_raw(sorted, raw);
        cert.recheck()?;
        Ok(cert)
    }
}

impl fmt::Debug for ShellingCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<String> = self
            .order_labels()
            .iter()
            .map(|x| format!("{{{}}}", x.join(",")))
            .collect();
        write!(f, "Shelling[{}]", order.join(" < "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShellingCheck {
    Valid(ShellingCertificate),
    /// 0-based pair `(i, j)` with no witness; lexicographically first.
    Counterexample { i: usize, j: usize },
}

impl ShellingCheck {
    pub fn certificate(self) -> Option<ShellingCertificate> {
        match self {
            ShellingCheck::Valid(c) => Some(c),
            ShellingCheck::Counterexample { .. } => None,
        }
    }
}

fn check_permutation(delta: &SimplicialComplex, order: &[u64]) -> Result<()> {
    let mut a = order.to_vec();
    bits::sort_canonical(&mut a);
    if a != delta.facet_masks() {
        return Err(Error::NotAPermutation(format!(
            "{} facets given, complex has {}",
            order.len(),
            delta.facet_count()
        )));
    }
    Ok(())
}

/// Checks a facet order and builds the full witness map.
pub fn verify_shelling(delta: &SimplicialComplex, order: &[u64]) -> Result<ShellingCheck> {
    check_permutation(delta, order)?;
    Ok(match witnesses_for(order) {
        Ok(raw) => ShellingCheck::Valid(ShellingCertificate::from_raw(delta.universe().to_vec(), raw)),
        Err((i, j)) => ShellingCheck::Counterexample { i, j },
    })
}

/// [`verify_shelling`] with facets given as label lists.
pub fn verify_shelling_labels(delta: &SimplicialComplex, order: &[Vec<&str>]) -> Result<ShellingCheck> {
    let masks = order
        .iter()
        .map(|f| delta.mask_of(f))
        .collect::<Result<Vec<_>>>()?;
    verify_shelling(delta, &masks)
}

pub fn find_shelling_bruteforce(delta: &SimplicialComplex) -> Result<Option<ShellingCertificate>> {
    find_shelling_bruteforce_with_limit(delta, DEFAULT_FACET_LIMIT)
}

/// Depth-first search over facet orders in canonical candidate order.
/// Whether a facet may come next depends only on the set already placed, so
/// placed-sets with no completion are memoized.
pub fn find_shelling_bruteforce_with_limit(
    delta: &SimplicialComplex,
    limit: usize,
) -> Result<Option<ShellingCertificate>> {
    let facets = delta.facet_masks();
    let s = facets.len();
    if s > limit {
        return Err(Error::LimitExceeded {
            what: "facet count",
            value: s,
            limit,
        });
    }
    Ok(search_order(facets).map(|order| {
        let raw = witnesses_for(&order).expect("search only returns shellings");
        ShellingCertificate::from_raw(delta.universe().to_vec(), raw)
    }))
}

pub(crate) fn search_order(facets: &[u64]) -> Option<Vec<u64>> {
    let s = facets.len();
    // single[j][l] = F_j ∖ F_l when that difference is a single vertex
    let single: Vec<Vec<u64>> = facets
        .iter()
        .map(|&fj| {
            facets
                .iter()
                .map(|&fl| {
                    let d = fj & !fl;
                    if bits::len(d) == 1 {
                        d
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();

    struct Search<'a> {
        facets: &'a [u64],
        single: Vec<Vec<u64>>,
        placed: Vec<usize>,
        key: SetKey,
        dead: HashSet<SetKey>,
    }

    impl Search<'_> {
        fn fits(&self, j: usize) -> bool {
            let fj = self.facets[j];
            let avail = self.placed.iter().fold(0, |m, &l| m | self.single[j][l]);
            self.placed
                .iter()
                .all(|&i| fj & !self.facets[i] & avail != 0)
        }

        fn go(&mut self) -> bool {
            let s = self.facets.len();
            if self.placed.len() == s {
                return true;
            }
            if self.dead.contains(&self.key) {
                return false;
            }
            for j in 0..s {
                if self.key.contains(j) || !self.fits(j) {
                    continue;
                }
                self.placed.push(j);
                self.key.insert(j);
                if self.go() {
                    return true;
                }
                self.placed.pop();
                self.key.remove(j);
            }
            self.dead.insert(self.key.clone());
            false
        }
    }

    let mut search = Search {
        facets,
        single,
        placed: Vec::with_capacity(s),
        key: SetKey::with_capacity(s),
        dead: HashSet::new(),
    };
    search
        .go()
        .then(|| search.placed.iter().map(|&j| facets[j]).collect())
}

/// Shelling of the join of two complexes on disjoint universes, in the
/// product order with witnesses carried over from the factors.
pub fn shell_union(a: &ShellingCertificate, b: &ShellingCertificate) -> Result<ShellingCertificate> {
    let (universe, ma, mb) = merge_universes(&a.universe, &b.universe)?;
    let lift = |c: &ShellingCertificate, map: &[usize]| RawShelling {
        order: c.raw.order.iter().map(|&f| bits::translate(f, map)).collect(),
        witnesses: c.raw.witnesses.iter().map(|&(v, l)| (map[v], l)).collect(),
    };
    let raw = RawShelling::union(&lift(a, &ma), &lift(b, &mb));
    Ok(ShellingCertificate::from_raw(universe, raw))
}

/// Given a shelling of `Δ_G`, the facets through `x` with `x` removed, in
/// inherited order, shell the link of `x`, i.e. `Δ_{G ∖ N[x]}`.
pub fn restrict_shelling_to_link(c: &ShellingCertificate, x: &str) -> Result<ShellingCertificate> {
    c.recheck()?;
    let xi = c
        .universe
        .binary_search_by(|v| v.as_str().cmp(x))
        .map_err(|_| Error::UnknownVertex(x.to_string()))?;
    if !c.raw.order.iter().any(|&f| bits::contains(f, xi)) {
        return Err(Error::NotAFace(vec![x.to_string()]));
    }
    let restricted = c
        .raw
        .restrict(|f| bits::contains(f, xi))
        .map_err(|(i, j)| {
            Error::InvalidCertificate(format!("witness of pair ({}, {}) leaves the link", i + 1, j + 1))
        })?;
    let keep = bits::full(c.universe.len()) & !bit(xi);
    let universe: Vec<String> = bits::iter(keep).map(|i| c.universe[i].clone()).collect();
    let shift = |v: usize| if v > xi { v - 1 } else { v };
    let raw = RawShelling {
        order: restricted.order.iter().map(|&f| bits::compress(f, keep)).collect(),
        witnesses: restricted.witnesses.iter().map(|&(v, l)| (shift(v), l)).collect(),
    };
    Ok(ShellingCertificate::from_raw(universe, raw))
}

/// Given a shelling of `Δ_𝒞`, keeps the facets whose covers miss `avoid`
/// (equivalently, facets containing `avoid`), in inherited order.
pub fn restrict_shelling_avoiding(c: &ShellingCertificate, avoid: &[&str]) -> Result<ShellingCertificate> {
    c.recheck()?;
    let a = avoid.iter().try_fold(0u64, |m, x| {
        c.universe
            .binary_search_by(|v| v.as_str().cmp(x))
            .map(|i| m | bit(i))
            .map_err(|_| Error::UnknownVertex(x.to_string()))
    })?;
    let raw = c.raw.restrict(|f| bits::is_subset(a, f)).map_err(|(i, j)| {
        Error::InvalidCertificate(format!("witness of pair ({}, {}) leaves the subcomplex", i + 1, j + 1))
    })?;
    Ok(ShellingCertificate::from_raw(c.universe.clone(), raw))
}

/// One node of a shelling recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub depth: usize,
    /// The subproblem: vertex labels for graphs, edges for clutters.
    pub node: String,
    pub action: Action,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Action {
    /// Nothing left but the empty face.
    Empty,
    /// Vertices in every facet were set aside.
    Cone(Vec<String>),
    /// Shelled per connected component and composed.
    Split(usize),
    /// Branch on a vertex of a pendant pair (bipartite), a simplicial vertex
    /// (chordal) or a free vertex (clutter).
    Pivot { vertex: String, partner: Vec<String> },
    /// Closed-form base case.
    Base,
    /// No pivot exists.
    Stuck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<N> {
    Shelled(ShellingCertificate),
    /// The subproblem where the recursion found no pivot.
    Stuck(N),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recursion<N> {
    pub outcome: Outcome<N>,
    pub trace: Vec<TraceStep>,
}

impl<N> Recursion<N> {
    pub fn certificate(&self) -> Option<&ShellingCertificate> {
        match &self.outcome {
            Outcome::Shelled(c) => Some(c),
            Outcome::Stuck(_) => None,
        }
    }
}

struct GraphRec<'a> {
    adj: &'a [u64],
    labels: &'a [String],
    trace: Vec<TraceStep>,
}

impl GraphRec<'_> {
    fn node(&self, alive: u64) -> String {
        bits::labels(alive, self.labels).join(",")
    }

    fn step(&mut self, depth: usize, alive: u64, action: Action) {
        let node = self.node(alive);
        self.trace.push(TraceStep { depth, node, action });
    }

    fn bipartite(&mut self, alive: u64, depth: usize) -> std::result::Result<RawShelling, u64> {
        let isolated = bits::iter(alive)
            .filter(|&v| self.adj[v] & alive == 0)
            .fold(0, |m, v| m | bit(v));
        let core = alive & !isolated;
        if isolated != 0 {
            self.step(depth, alive, Action::Cone(bits::owned_labels(isolated, self.labels)));
        }
        let shelled = if core == 0 {
            self.step(depth, core, Action::Empty);
            RawShelling::single(0)
        } else {
            let comps = graph::components(self.adj, core);
            if comps.len() > 1 {
                self.step(depth, core, Action::Split(comps.len()));
            }
            let mut acc: Option<RawShelling> = None;
            for comp in comps {
                let part = self.bipartite_connected(comp, depth)?;
                acc = Some(match acc {
                    None => part,
                    Some(prev) => RawShelling::union(&prev, &part),
                });
            }
            acc.unwrap()
        };
        Ok(shelled.adjoin(isolated))
    }

    fn bipartite_connected(&mut self, alive: u64, depth: usize) -> std::result::Result<RawShelling, u64> {
        let Some(x) = bits::iter(alive).find(|&v| bits::len(self.adj[v] & alive) == 1) else {
            self.step(depth, alive, Action::Stuck);
            return Err(alive);
        };
        let y = bits::lowest(self.adj[x] & alive).unwrap();
        self.step(
            depth,
            alive,
            Action::Pivot {
                vertex: self.labels[x].clone(),
                partner: vec![self.labels[y].clone()],
            },
        );
        let with_x = self.bipartite(alive & !bit(x) & !bit(y), depth + 1)?;
        let with_y = self.bipartite(alive & !bit(y) & !self.adj[y], depth + 1)?;
        Ok(assemble_pendant(&with_x, &with_y, x, y))
    }

    fn chordal(&mut self, alive: u64, depth: usize) -> RawShelling {
        if alive == 0 {
            self.step(depth, alive, Action::Empty);
            return RawShelling::single(0);
        }
        if graph::is_clique(self.adj, alive) {
            self.step(depth, alive, Action::Base);
            let order: Vec<u64> = bits::iter(alive).map(bit).collect();
            let mut out = RawShelling::new(order);
            let vs: Vec<usize> = bits::iter(alive).collect();
            for j in 1..vs.len() {
                for i in 0..j {
                    out.set(i, j, (vs[j], 0));
                }
            }
            return out;
        }
        let x1 = graph::simplicial_vertex(self.adj, alive, 0)
            .expect("a chordal graph has a simplicial vertex");
        let clique: Vec<usize> = std::iter::once(x1)
            .chain(bits::iter(self.adj[x1] & alive))
            .collect();
        self.step(
            depth,
            alive,
            Action::Pivot {
                vertex: self.labels[x1].clone(),
                partner: clique[1..].iter().map(|&v| self.labels[v].clone()).collect(),
            },
        );
        let blocks: Vec<RawShelling> = clique
            .iter()
            .map(|&xi| {
                self.chordal(alive & !bit(xi) & !self.adj[xi], depth + 1)
            })
            .collect();
        assemble_clique_blocks(&blocks, &clique)
    }
}

/// Order `F'_1∪{x}, …, F'_r∪{x}, H'_1∪{y}, …, H'_s∪{y}` for a pendant edge
/// `{x, y}` with `deg x = 1`.
fn assemble_pendant(with_x: &RawShelling, with_y: &RawShelling, x: usize, y: usize) -> RawShelling {
    let r = with_x.order.len();
    let order: Vec<u64> = with_x
        .order
        .iter()
        .map(|&f| f | bit(x))
        .chain(with_y.order.iter().map(|&h| h | bit(y)))
        .collect();
    let mut out = RawShelling::new(order);
    for j in 0..r {
        for i in 0..j {
            out.set(i, j, with_x.witness(i, j));
        }
    }
    for (jj, &h) in with_y.order.iter().enumerate() {
        let j = r + jj;
        // H'_j ∪ {x} is independent, so some F'_ℓ contains H'_j
        let l = with_x
            .order
            .iter()
            .position(|&f| bits::is_subset(h, f))
            .expect("every H'_j extends to a facet through x");
        for i in 0..r {
            out.set(i, j, (y, l));
        }
        for ii in 0..jj {
            let (v, l) = with_y.witness(ii, jj);
            out.set(r + ii, j, (v, r + l));
        }
    }
    out
}

/// Blocks `F_{i1}∪{x_i}, …` for the clique `x_1, …, x_r` around a simplicial
/// vertex `x_1`.
fn assemble_clique_blocks(blocks: &[RawShelling], clique: &[usize]) -> RawShelling {
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut order = Vec::new();
    for (b, &xi) in blocks.iter().zip(clique) {
        offsets.push(order.len());
        order.extend(b.order.iter().map(|&f| f | bit(xi)));
    }
    let mut out = RawShelling::new(order);
    let first = &blocks[0].order;
    for (bj, block) in blocks.iter().enumerate() {
        let oj = offsets[bj];
        for (t, &f) in block.order.iter().enumerate() {
            let j = oj + t;
            if bj > 0 {
                // F_{jt} ∪ {x_1} is independent, hence inside some F_{1ℓ} ∪ {x_1}
                let l = first
                    .iter()
                    .position(|&g| bits::is_subset(f, g))
                    .expect("every F_jt extends to a facet through x_1");
                for i in 0..oj {
                    out.set(i, j, (clique[bj], l));
                }
            }
            for k in 0..t {
                let (v, l) = block.witness(k, t);
                out.set(oj + k, j, (v, oj + l));
            }
        }
    }
    out
}

/// The pendant-edge recursion for bipartite graphs. Isolated vertices are
/// set aside as cone points and components are shelled separately. When a
/// connected subproblem has no degree-1 vertex the graph is not shellable,
/// and that subgraph is returned.
pub fn shell_bipartite(g: &Graph) -> Result<Recursion<Graph>> {
    if !g.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    let mut rec = GraphRec {
        adj: g.adjacency(),
        labels: g.vertices(),
        trace: Vec::new(),
    };
    let outcome = match rec.bipartite(g.all(), 0) {
        Ok(raw) => Outcome::Shelled(ShellingCertificate::from_raw(g.vertices().to_vec(), raw)),
        Err(stuck) => Outcome::Stuck(g.induced(stuck)),
    };
    Ok(Recursion {
        outcome,
        trace: rec.trace,
    })
}

/// The simplicial-vertex recursion for chordal graphs.
pub fn shell_chordal(g: &Graph) -> Result<ShellingCertificate> {
    Ok(shell_chordal_traced(g)?.0)
}

pub fn shell_chordal_traced(g: &Graph) -> Result<(ShellingCertificate, Vec<TraceStep>)> {
    if g.is_chordal().is_none() {
        return Err(Error::NotChordal);
    }
    let mut rec = GraphRec {
        adj: g.adjacency(),
        labels: g.vertices(),
        trace: Vec::new(),
    };
    let raw = rec.chordal(g.all(), 0);
    Ok((ShellingCertificate::from_raw(g.vertices().to_vec(), raw), rec.trace))
}

struct ClutterRec<'a> {
    labels: &'a [String],
    trace: Vec<TraceStep>,
}

impl ClutterRec<'_> {
    fn node(&self, edges: &[u64]) -> String {
        let parts: Vec<String> = edges
            .iter()
            .map(|&e| format!("{{{}}}", bits::labels(e, self.labels).join(",")))
            .collect();
        parts.join(" ")
    }

    fn step(&mut self, depth: usize, edges: &[u64], action: Action) {
        let node = self.node(edges);
        self.trace.push(TraceStep { depth, node, action });
    }

    fn shell(&mut self, edges: &[u64], verts: u64, depth: usize) -> std::result::Result<RawShelling, (Vec<u64>, u64)> {
        if edges.contains(&0) {
            // unit ideal: no covers, void complex
            self.step(depth, edges, Action::Empty);
            return Ok(RawShelling::new(Vec::new()));
        }
        if edges.is_empty() {
            self.step(depth, edges, Action::Base);
            return Ok(RawShelling::single(verts));
        }
        if edges.len() == 1 {
            self.step(depth, edges, Action::Base);
            let e: Vec<usize> = bits::iter(edges[0]).collect();
            let mut out = RawShelling::new(e.iter().map(|&s| verts & !bit(s)).collect());
            for j in 1..e.len() {
                for i in 0..j {
                    out.set(i, j, (e[i], i));
                }
            }
            return Ok(out);
        }
        let Some(x) = bits::lowest(clutter::free_mask(edges)) else {
            self.step(depth, edges, Action::Stuck);
            return Err((edges.to_vec(), verts));
        };
        let e = *edges.iter().find(|&&e| bits::contains(e, x)).unwrap();
        let a = e & !bit(x);
        self.step(
            depth,
            edges,
            Action::Pivot {
                vertex: self.labels[x].clone(),
                partner: bits::owned_labels(a, self.labels),
            },
        );
        let rest = verts & !bit(x);
        let zero: Vec<u64> = edges.iter().copied().filter(|&f| f != e).collect();
        let one = clutter::minor_masks(edges, 0, bit(x));
        let through_x = self.shell(&one, rest, depth + 1)?;
        let avoiding_x = self.shell(&zero, rest, depth + 1)?;
        let tail = avoiding_x
            .restrict(|g| bits::is_subset(a, g))
            .expect("restriction of a valid shelling to covers avoiding A");
        Ok(assemble_free_vertex(edges, verts, x, a, &through_x, &tail))
    }
}

/// `F_1, …, F_r, G_1, …, G_s`: facets through the free vertex `x` from the
/// `x = 1` minor, then facets avoiding `x` from the restricted `x = 0` minor.
fn assemble_free_vertex(
    edges: &[u64],
    verts: u64,
    x: usize,
    a: u64,
    through_x: &RawShelling,
    tail: &RawShelling,
) -> RawShelling {
    let r = through_x.order.len();
    let head: Vec<u64> = through_x.order.iter().map(|&f| f | bit(x)).collect();
    let order: Vec<u64> = head.iter().copied().chain(tail.order.iter().copied()).collect();
    let mut out = RawShelling::new(order);
    for j in 0..r {
        for i in 0..j {
            out.set(i, j, through_x.witness(i, j));
        }
    }
    let rest = verts & !bit(x);
    for (jj, &g) in tail.order.iter().enumerate() {
        let j = r + jj;
        let cover_rest = rest & !g;
        for (i, &f) in head.iter().enumerate() {
            let v = bits::lowest(a & !f).expect("A is not inside a facet through x");
            let c_l = shrink_cover(edges, cover_rest | bit(v));
            let f_l = verts & !c_l;
            let l = head
                .iter()
                .position(|&h| h == f_l)
                .expect("the shrunken cover gives a facet through x");
            out.set(i, j, (v, l));
        }
        for ii in 0..jj {
            let (v, l) = tail.witness(ii, jj);
            out.set(r + ii, j, (v, r + l));
        }
    }
    out
}

/// Removes vertices (in index order) while the set still covers every edge.
fn shrink_cover(edges: &[u64], cover: u64) -> u64 {
    let mut c = cover;
    for v in bits::iter(cover) {
        let smaller = c & !bit(v);
        if edges.iter().all(|&e| e & smaller != 0) {
            c = smaller;
        }
    }
    c
}

/// The free-vertex recursion for clutters. A stuck recursion reports the
/// minor (on its remaining vertices) that had no free vertex; that only
/// shows the free vertex property fails, not that `Δ_𝒞` is unshellable.
pub fn shell_free_vertex_clutter(c: &Clutter) -> Result<Recursion<Clutter>> {
    if c.edge_masks().contains(&0) {
        return Err(Error::EmptyEdge);
    }
    let mut rec = ClutterRec {
        labels: c.vertices(),
        trace: Vec::new(),
    };
    let all = bits::full(c.vertices().len());
    let outcome = match rec.shell(c.edge_masks(), all, 0) {
        Ok(raw) => Outcome::Shelled(ShellingCertificate::from_raw(c.vertices().to_vec(), raw)),
        Err((edges, verts)) => {
            let labels = bits::owned_labels(verts, c.vertices());
            let edges = edges.into_iter().map(|e| bits::compress(e, verts)).collect();
            Outcome::Stuck(Clutter::from_masks(labels, edges))
        }
    };
    Ok(Recursion {
        outcome,
        trace: rec.trace,
    })
}
