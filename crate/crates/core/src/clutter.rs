//! Clutters: finite set systems whose edges form an antichain.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::bits::{self, bit};
use crate::complex::for_each_subset_of_size;
use crate::error::{Error, Result};
use crate::graph::{check_label, Graph};
use crate::Check;

/// Default vertex cap for the free vertex property search.
pub const DEFAULT_FVP_LIMIT: usize = 12;
/// Default cap on both dimensions of the incidence matrix for the
/// totally-balanced search.
pub const DEFAULT_BALANCE_LIMIT: usize = 14;
/// Default edge cap for the exhaustive f-forest check.
pub const DEFAULT_FOREST_LIMIT: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Clutter {
    vertices: Vec<String>,
    edges: Vec<u64>,
}

/// A square submatrix of order >= 3 with exactly two ones per row and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoRegularSubmatrix {
    pub rows: Vec<String>,
    pub columns: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FLeaf {
    pub edge: Vec<String>,
    /// `None` when the edge is the only one.
    pub witness: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForestMode {
    /// Every nonempty subclutter is checked for an f-leaf.
    Exhaustive,
    /// Repeatedly strips the smallest f-leaf.
    Greedy,
}

impl Clutter {
    /// Builds a clutter; vertices of the edges are declared implicitly.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Clutter>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = Vec<S>>,
        S: AsRef<str>,
    {
        let mut labels = BTreeSet::new();
        let mut raw = Vec::new();
        for v in vertices {
            check_label(v.as_ref())?;
            labels.insert(v.as_ref().to_string());
        }
        for e in edges {
            if e.is_empty() {
                return Err(Error::EmptyEdge);
            }
            let mut edge = Vec::new();
            for v in e {
                check_label(v.as_ref())?;
                labels.insert(v.as_ref().to_string());
                edge.push(v.as_ref().to_string());
            }
            raw.push(edge);
        }
        if labels.len() > bits::MAX_VERTICES {
            return Err(Error::LimitExceeded {
                what: "vertex count",
                value: labels.len(),
                limit: bits::MAX_VERTICES,
            });
        }
        let vertices: Vec<String> = labels.into_iter().collect();
        let mut edges: Vec<u64> = raw
            .iter()
            .map(|e| {
                e.iter()
                    .fold(0, |m, v| m | bit(vertices.binary_search(v).unwrap()))
            })
            .collect();
        bits::sort_canonical(&mut edges);
        edges.dedup();
        for (i, &a) in edges.iter().enumerate() {
            if let Some(&b) = edges[i + 1..].iter().find(|&&b| bits::is_subset(a, b)) {
                return Err(Error::NotAntichain(format!(
                    "{{{}}} ⊆ {{{}}}",
                    bits::labels(a, &vertices).join(","),
                    bits::labels(b, &vertices).join(",")
                )));
            }
        }
        Ok(Clutter { vertices, edges })
    }

    pub fn from_graph(g: &Graph) -> Clutter {
        let edges = g
            .edges()
            .into_iter()
            .map(|(a, b)| bit(g.index_of(a).unwrap()) | bit(g.index_of(b).unwrap()))
            .collect();
        Clutter::from_masks(g.vertices().to_vec(), edges)
    }

    /// Minimalizes the given edge masks. Empty edges are kept (as the unit
    /// ideal) only by crate-internal callers.
    pub(crate) fn from_masks(vertices: Vec<String>, edges: Vec<u64>) -> Clutter {
        Clutter {
            vertices,
            edges: bits::minimalize(edges),
        }
    }

    /// Line format: one edge per line, optional `vertices: a b c` header.
    pub fn parse(text: &str) -> Result<Clutter> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                vertices.extend(rest.split_whitespace().map(str::to_string));
                continue;
            }
            let edge: Vec<String> = line.split_whitespace().map(str::to_string).collect();
            if let Some(bad) = edge.iter().find(|t| t.contains(crate::graph::RESERVED)) {
                return Err(Error::Parse {
                    line: n + 1,
                    message: format!("label `{bad}` contains a reserved character"),
                });
            }
            edges.push(edge);
        }
        Clutter::new(vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vertices: {}\n", self.vertices.join(" "));
        for e in self.edges() {
            out.push_str(&e.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> Vec<Vec<&str>> {
        self.edges
            .iter()
            .map(|&e| bits::labels(e, &self.vertices))
            .collect()
    }

    /// Edges as masks over [`vertices`](Self::vertices), canonical order.
    pub fn edge_masks(&self) -> &[u64] {
        &self.edges
    }

    pub fn mask_of(&self, xs: &[&str]) -> Result<u64> {
        xs.iter().try_fold(0u64, |m, x| {
            self.vertices
                .binary_search_by(|v| v.as_str().cmp(x))
                .map(|i| m | bit(i))
                .map_err(|_| Error::UnknownVertex(x.to_string()))
        })
    }

    pub fn cover_masks(&self) -> Vec<u64> {
        minimal_transversals(&self.edges)
    }

    pub fn minimal_vertex_covers(&self) -> Vec<Vec<&str>> {
        self.cover_masks()
            .into_iter()
            .map(|c| bits::labels(c, &self.vertices))
            .collect()
    }

    /// Sets `zeros` to 0 and `ones` to 1. `None` when the result is the zero
    /// or the unit ideal.
    pub fn minor(&self, zeros: &[&str], ones: &[&str]) -> Result<Option<Clutter>> {
        let z = self.mask_of(zeros)?;
        let o = self.mask_of(ones)?;
        if z & o != 0 {
            let v = bits::lowest(z & o).unwrap();
            return Err(Error::Overlap(self.vertices[v].clone()));
        }
        let edges = minor_masks(&self.edges, z, o);
        if !is_proper(&edges) {
            return Ok(None);
        }
        let keep = bits::full(self.vertices.len()) & !(z | o);
        let vertices = bits::iter(keep).map(|i| self.vertices[i].clone()).collect();
        let edges = edges.into_iter().map(|e| bits::compress(e, keep)).collect();
        Ok(Some(Clutter::from_masks(vertices, edges)))
    }

    pub fn free_vertices(&self) -> Vec<&str> {
        bits::labels(free_mask(&self.edges), &self.vertices)
    }

    pub fn has_free_vertex_property(&self) -> Result<Check<Clutter>> {
        self.has_free_vertex_property_with_limit(DEFAULT_FVP_LIMIT)
    }

    /// Every minor (including the clutter itself) must have a free vertex.
    /// The failing minor is reported on the full vertex set with the
    /// substituted variables removed.
    pub fn has_free_vertex_property_with_limit(&self, limit: usize) -> Result<Check<Clutter>> {
        if self.vertices.len() > limit {
            return Err(Error::LimitExceeded {
                what: "clutter vertex count",
                value: self.vertices.len(),
                limit,
            });
        }
        Ok(match minor_without_free_vertex(&self.edges) {
            None => Check::Holds,
            Some((edges, removed)) => {
                let keep = bits::full(self.vertices.len()) & !removed;
                let vertices = bits::iter(keep).map(|i| self.vertices[i].clone()).collect();
                let edges = edges.into_iter().map(|e| bits::compress(e, keep)).collect();
                Check::Fails(Clutter::from_masks(vertices, edges))
            }
        })
    }

    pub fn incidence_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.vertices.len())
            .map(|i| {
                self.edges
                    .iter()
                    .map(|&e| bits::contains(e, i) as u8)
                    .collect()
            })
            .collect()
    }

    pub fn is_totally_balanced(&self) -> Result<Check<TwoRegularSubmatrix>> {
        self.is_totally_balanced_with_limit(DEFAULT_BALANCE_LIMIT)
    }

    pub fn is_totally_balanced_with_limit(
        &self,
        limit: usize,
    ) -> Result<Check<TwoRegularSubmatrix>> {
        let n = self.vertices.len().max(self.edges.len());
        if n > limit {
            return Err(Error::LimitExceeded {
                what: "incidence matrix size",
                value: n,
                limit,
            });
        }
        Ok(match two_regular_submatrix(&self.edges) {
            None => Check::Holds,
            Some((rows, cols)) => Check::Fails(TwoRegularSubmatrix {
                rows: bits::owned_labels(rows, &self.vertices),
                columns: bits::iter(cols)
                    .map(|c| bits::owned_labels(self.edges[c], &self.vertices))
                    .collect(),
            }),
        })
    }

    pub fn find_f_leaf(&self) -> Result<Option<FLeaf>> {
        if self.edges.is_empty() {
            return Err(Error::DegenerateIdeal("zero"));
        }
        Ok(f_leaf(&self.edges).map(|(e, h)| FLeaf {
            edge: bits::owned_labels(self.edges[e], &self.vertices),
            witness: h.map(|h| bits::owned_labels(self.edges[h], &self.vertices)),
        }))
    }

    pub fn is_f_forest(&self, mode: ForestMode) -> Result<bool> {
        self.is_f_forest_with_limit(mode, DEFAULT_FOREST_LIMIT)
    }

    pub fn is_f_forest_with_limit(&self, mode: ForestMode, limit: usize) -> Result<bool> {
        match mode {
            ForestMode::Greedy => {
                let mut left = self.edges.clone();
                while !left.is_empty() {
                    match f_leaf(&left) {
                        Some((e, _)) => {
                            left.remove(e);
                        }
                        None => return Ok(false),
                    }
                }
                Ok(true)
            }
            ForestMode::Exhaustive => {
                let q = self.edges.len();
                if q > limit {
                    return Err(Error::LimitExceeded {
                        what: "edge count",
                        value: q,
                        limit,
                    });
                }
                let mut sub = Vec::with_capacity(q);
                for pick in 1u64..(1u64 << q) {
                    sub.clear();
                    sub.extend(bits::iter(pick).map(|i| self.edges[i]));
                    if f_leaf(&sub).is_none() {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }
}

impl fmt::Debug for Clutter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges().iter().map(|e| e.join("")).collect();
        write!(f, "Clutter[{}]{{{}}}", self.vertices.join(","), edges.join(" "))
    }
}

/// Minimal transversals by Berge multiplication. An empty edge yields no
/// transversal; no edges yield `[∅]`.
pub(crate) fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    let mut covers = vec![0u64];
    for &e in edges {
        let mut next = Vec::with_capacity(covers.len() * 2);
        for &c in &covers {
            if c & e != 0 {
                next.push(c);
            } else {
                next.extend(bits::iter(e).map(|v| c | bit(v)));
            }
        }
        covers = bits::minimalize(next);
    }
    bits::sort_canonical(&mut covers);
    covers
}

pub(crate) fn minor_masks(edges: &[u64], zeros: u64, ones: u64) -> Vec<u64> {
    bits::minimalize(
        edges
            .iter()
            .filter(|&&e| e & zeros == 0)
            .map(|&e| e & !ones)
            .collect(),
    )
}

/// `(0) ⊊ I ⊊ R`: at least one edge and no empty edge.
pub(crate) fn is_proper(edges: &[u64]) -> bool {
    !edges.is_empty() && edges.iter().all(|&e| e != 0)
}

pub(crate) fn free_mask(edges: &[u64]) -> u64 {
    let (mut once, mut many) = (0u64, 0u64);
    for &e in edges {
        many |= once & e;
        once |= e;
    }
    once & !many
}

/// Search over all minors reachable by single-variable substitutions.
/// Returns a minor with no free vertex and the set of substituted variables.
fn minor_without_free_vertex(edges: &[u64]) -> Option<(Vec<u64>, u64)> {
    if !is_proper(edges) {
        return None;
    }
    let start = bits::minimalize(edges.to_vec());
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut stack = vec![(start.clone(), 0u64)];
    seen.insert(start);
    while let Some((cur, removed)) = stack.pop() {
        if free_mask(&cur) == 0 {
            return Some((cur, removed));
        }
        let support = cur.iter().fold(0, |m, &e| m | e);
        for v in bits::iter(support) {
            for (z, o) in [(bit(v), 0), (0, bit(v))] {
                let next = minor_masks(&cur, z, o);
                if is_proper(&next) && seen.insert(next.clone()) {
                    stack.push((next, removed | bit(v)));
                }
            }
        }
    }
    None
}

fn two_regular_submatrix(edges: &[u64]) -> Option<(u64, u64)> {
    let q = edges.len();
    let all_cols = bits::full(q);
    for k in 3..=q {
        let mut found = None;
        let mut cols_list = Vec::new();
        for_each_subset_of_size(all_cols, k, &mut |c| cols_list.push(c));
        cols_list.sort_unstable_by(|&a, &b| bits::lex_cmp(a, b));
        for cols in cols_list {
            let (mut once, mut twice, mut more) = (0u64, 0u64, 0u64);
            for c in bits::iter(cols) {
                let e = edges[c];
                more |= twice & e;
                twice |= once & e;
                once |= e;
            }
            let candidates = twice & !more;
            if bits::len(candidates) < k {
                continue;
            }
            let mut rows_list = Vec::new();
            for_each_subset_of_size(candidates, k, &mut |r| rows_list.push(r));
            rows_list.sort_unstable_by(|&a, &b| bits::lex_cmp(a, b));
            if let Some(&rows) = rows_list
                .iter()
                .find(|&&rows| bits::iter(cols).all(|c| bits::len(edges[c] & rows) == 2))
            {
                found = Some((rows, cols));
                break;
            }
        }
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Index of the first f-leaf and of its witness (`None` for a lone edge).
pub(crate) fn f_leaf(edges: &[u64]) -> Option<(usize, Option<usize>)> {
    if edges.len() == 1 {
        return Some((0, None));
    }
    for (i, &e) in edges.iter().enumerate() {
        for (h, &eh) in edges.iter().enumerate() {
            if h == i {
                continue;
            }
            let cap = e & eh;
            let ok = edges
                .iter()
                .enumerate()
                .all(|(j, &other)| j == i || bits::is_subset(e & other, cap));
            if ok {
                return Some((i, Some(h)));
            }
        }
    }
    None
}
