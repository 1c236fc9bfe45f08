//! Simple undirected graphs over string labels.
//!
//! Vertices are kept sorted, so vertex `i` is bit `i` of every adjacency mask
//! and label order doubles as the tie-break order for every choice the
//! recursions make.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::{self, bit};
use crate::error::{Error, Result};

/// Separator reserved for generated labels (whisker tips).
pub const RESERVED: char = '·';
const WHISKER_SUFFIX: &str = "·w";

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertices: Vec<String>,
    adj: Vec<u64>,
}

pub(crate) fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.chars().any(char::is_whitespace) {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

impl Graph {
    /// Builds a graph from a vertex list and an edge list; edge endpoints are
    /// declared implicitly.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Graph>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut labels = BTreeSet::new();
        let mut pairs = Vec::new();
        for v in vertices {
            check_label(v.as_ref())?;
            labels.insert(v.as_ref().to_string());
        }
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            check_label(a)?;
            check_label(b)?;
            if a == b {
                return Err(Error::Loop(a.to_string()));
            }
            labels.insert(a.to_string());
            labels.insert(b.to_string());
            pairs.push((a.to_string(), b.to_string()));
        }
        if labels.len() > bits::MAX_VERTICES {
            return Err(Error::LimitExceeded {
                what: "vertex count",
                value: labels.len(),
                limit: bits::MAX_VERTICES,
            });
        }
        let vertices: Vec<String> = labels.into_iter().collect();
        let mut adj = vec![0u64; vertices.len()];
        for (a, b) in pairs {
            let i = vertices.binary_search(&a).unwrap();
            let j = vertices.binary_search(&b).unwrap();
            adj[i] |= bit(j);
            adj[j] |= bit(i);
        }
        Ok(Graph { vertices, adj })
    }

    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Graph> {
        Graph::new(Vec::<&str>::new(), edges.iter().copied())
    }

    pub fn empty() -> Graph {
        Graph {
            vertices: Vec::new(),
            adj: Vec::new(),
        }
    }

    /// Parses the line format: `v LABEL`, `e LABEL LABEL`, `#` comments.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: n + 1,
                message,
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            for t in &toks[1..] {
                if t.contains(RESERVED) {
                    return Err(err(format!("label `{t}` contains `{RESERVED}`")));
                }
            }
            match toks.as_slice() {
                ["v", label] => vertices.push(label.to_string()),
                ["e", a, b] => {
                    if a == b {
                        return Err(err(format!("loop at `{a}`")));
                    }
                    edges.push((a.to_string(), b.to_string()));
                }
                _ => return Err(err(format!("expected `v LABEL` or `e LABEL LABEL`, got `{line}`"))),
            }
        }
        Graph::new(vertices, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if self.adj[i] == 0 {
                out.push_str(&format!("v {v}\n"));
            }
        }
        for (a, b) in self.edges() {
            out.push_str(&format!("e {a} {b}\n"));
        }
        out
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub(crate) fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub(crate) fn all(&self) -> u64 {
        bits::full(self.len())
    }

    pub fn index_of(&self, x: &str) -> Result<usize> {
        self.vertices
            .binary_search_by(|v| v.as_str().cmp(x))
            .map_err(|_| Error::UnknownVertex(x.to_string()))
    }

    pub(crate) fn mask_of(&self, xs: &[&str]) -> Result<u64> {
        xs.iter()
            .try_fold(0, |m, x| Ok(m | bit(self.index_of(x)?)))
    }

    /// Edges as label pairs, each with the smaller label first, sorted.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in bits::iter(self.adj[i] & !bits::full(i + 1)) {
                out.push((self.vertices[i].as_str(), self.vertices[j].as_str()));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|&m| bits::len(m)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, a: &str, b: &str) -> Result<bool> {
        Ok(bits::contains(self.adj[self.index_of(a)?], self.index_of(b)?))
    }

    pub fn degree(&self, x: &str) -> Result<usize> {
        Ok(bits::len(self.adj[self.index_of(x)?]))
    }

    pub fn neighbors(&self, x: &str) -> Result<Vec<&str>> {
        let i = self.index_of(x)?;
        Ok(bits::labels(self.adj[i], &self.vertices))
    }

    /// The subgraph induced on the vertices of `keep`.
    pub(crate) fn induced(&self, keep: u64) -> Graph {
        let vertices = bits::iter(keep).map(|i| self.vertices[i].clone()).collect();
        let adj = bits::iter(keep)
            .map(|i| bits::compress(self.adj[i] & keep, keep))
            .collect();
        Graph { vertices, adj }
    }

    /// `G ∖ S`: removes the listed vertices and their edges.
    pub fn delete_vertices(&self, s: &[&str]) -> Result<Graph> {
        let m = self.mask_of(s)?;
        Ok(self.induced(self.all() & !m))
    }

    /// `G ∖ ({x} ∪ N(x))`.
    pub fn delete_closed_neighborhood(&self, x: &str) -> Result<Graph> {
        let i = self.index_of(x)?;
        Ok(self.induced(self.all() & !(self.adj[i] | bit(i))))
    }

    /// `G ∪ W(S)`: attaches a fresh degree-1 vertex to every vertex of `S`.
    pub fn add_whiskers(&self, s: &[&str]) -> Result<Graph> {
        let mut taken: BTreeSet<String> = self.vertices.iter().cloned().collect();
        let mut edges: Vec<(String, String)> = self
            .edges()
            .into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        let targets: BTreeSet<&str> = s.iter().copied().collect();
        for x in targets {
            self.index_of(x)?;
            let mut tip = format!("{x}{WHISKER_SUFFIX}");
            while taken.contains(&tip) {
                tip.push_str(WHISKER_SUFFIX);
            }
            taken.insert(tip.clone());
            edges.push((x.to_string(), tip));
        }
        Graph::new(taken, edges)
    }

    /// The label a whisker at `x` receives when no collision occurs.
    pub fn whisker_label(x: &str) -> String {
        format!("{x}{WHISKER_SUFFIX}")
    }

    /// A 2-colouring `(V1, V2)` if one exists. Each component is coloured by
    /// BFS from its smallest label, which goes to `V1`.
    pub fn bipartition(&self) -> Option<(Vec<String>, Vec<String>)> {
        let (a, b) = bipartition_masks(&self.adj, self.all())?;
        Some((
            bits::owned_labels(a, &self.vertices),
            bits::owned_labels(b, &self.vertices),
        ))
    }

    pub fn is_bipartite(&self) -> bool {
        bipartition_masks(&self.adj, self.all()).is_some()
    }

    /// Smallest vertex outside `avoid` whose neighbourhood is a clique.
    pub fn find_simplicial_vertex(&self, avoid: &[&str]) -> Result<Option<&str>> {
        let avoid = self.mask_of(avoid)?;
        Ok(simplicial_vertex(&self.adj, self.all(), avoid).map(|i| self.vertices[i].as_str()))
    }

    /// A perfect elimination ordering built by repeatedly removing the
    /// smallest simplicial vertex, or `None` if the graph is not chordal.
    pub fn is_chordal(&self) -> Option<Vec<String>> {
        perfect_elimination_order(&self.adj, self.all())
            .map(|order| order.into_iter().map(|i| self.vertices[i].clone()).collect())
    }

    pub fn degree_one_vertices(&self) -> Vec<(&str, &str)> {
        (0..self.len())
            .filter(|&i| bits::len(self.adj[i]) == 1)
            .map(|i| {
                let j = bits::lowest(self.adj[i]).unwrap();
                (self.vertices[i].as_str(), self.vertices[j].as_str())
            })
            .collect()
    }

    pub fn connected_components(&self) -> Vec<Graph> {
        components(&self.adj, self.all())
            .into_iter()
            .map(|c| self.induced(c))
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        components(&self.adj, self.all()).len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected() && self.edge_count() + 1 == self.len()
    }

    pub fn isolated_vertices(&self) -> Vec<&str> {
        (0..self.len())
            .filter(|&i| self.adj[i] == 0)
            .map(|i| self.vertices[i].as_str())
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges())
            .finish()
    }
}

// Mask-level helpers shared by the recursions. `alive` selects an induced
// subgraph of the graph described by `adj` without re-indexing.

pub(crate) fn components(adj: &[u64], alive: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut left = alive;
    while let Some(start) = bits::lowest(left) {
        let mut comp = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in bits::iter(frontier) {
                next |= adj[v] & alive;
            }
            frontier = next & !comp;
            comp |= next;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

pub(crate) fn bipartition_masks(adj: &[u64], alive: u64) -> Option<(u64, u64)> {
    let (mut a, mut b) = (0u64, 0u64);
    for comp in components(adj, alive) {
        let start = bits::lowest(comp).unwrap();
        let (mut side_a, mut side_b) = (bit(start), 0u64);
        let mut frontier = bit(start);
        let mut in_a = true;
        while frontier != 0 {
            let mut next = 0;
            for v in bits::iter(frontier) {
                next |= adj[v] & alive;
            }
            if in_a {
                if next & side_a != 0 {
                    return None;
                }
                next &= !side_b;
                side_b |= next;
            } else {
                if next & side_b != 0 {
                    return None;
                }
                next &= !side_a;
                side_a |= next;
            }
            frontier = next;
            in_a = !in_a;
        }
        a |= side_a;
        b |= side_b;
    }
    Some((a, b))
}

pub(crate) fn is_clique(adj: &[u64], set: u64) -> bool {
    bits::iter(set).all(|v| bits::is_subset(set & !bit(v), adj[v]))
}

pub(crate) fn simplicial_vertex(adj: &[u64], alive: u64, avoid: u64) -> Option<usize> {
    bits::iter(alive & !avoid).find(|&v| is_clique(adj, adj[v] & alive))
}

pub(crate) fn perfect_elimination_order(adj: &[u64], alive: u64) -> Option<Vec<usize>> {
    let mut left = alive;
    let mut order = Vec::with_capacity(bits::len(alive));
    while left != 0 {
        let v = simplicial_vertex(adj, left, 0)?;
        order.push(v);
        left &= !bit(v);
    }
    Some(order)
}
