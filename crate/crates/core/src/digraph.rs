//! Bipartite graphs with a fixed perfect matching `{x_i, y_i}` and the
//! directed graph on the `x` side with an arc `(x_i, x_j)` whenever
//! `{x_i, y_j}` is an edge.

use serde::Serialize;

use crate::bits::{self, bit};
use crate::clutter::Clutter;
use crate::complex::independence_complex;
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::homology::{self, FieldSpec};
use crate::Check;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchedBipartite {
    graph: Graph,
    /// `(x_i, y_i)` as vertex indices, sorted by `x` label.
    pairs: Vec<(usize, usize)>,
}

impl MatchedBipartite {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pairs(&self) -> Vec<(&str, &str)> {
        let v = self.graph.vertices();
        self.pairs
            .iter()
            .map(|&(x, y)| (v[x].as_str(), v[y].as_str()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn x_side(&self) -> Vec<&str> {
        self.pairs().into_iter().map(|p| p.0).collect()
    }
}

/// Validates `pairing`, or finds a perfect matching from the side holding
/// the smallest label of each component, trying partners in label order.
pub fn check_conditions(g: &Graph, pairing: Option<&[(&str, &str)]>) -> Result<MatchedBipartite> {
    if !g.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    let adj = g.adjacency();
    let n = g.len();
    let mut pairs = match pairing {
        Some(p) => {
            let mut seen = 0u64;
            let mut pairs = Vec::with_capacity(p.len());
            for &(x, y) in p {
                let (xi, yi) = (g.index_of(x)?, g.index_of(y)?);
                if !bits::contains(adj[xi], yi) {
                    return Err(Error::InvalidPairing(format!("{{{x},{y}}} is not an edge")));
                }
                if (seen & (bit(xi) | bit(yi))) != 0 || xi == yi {
                    return Err(Error::InvalidPairing(format!("a vertex of {{{x},{y}}} is paired twice")));
                }
                seen |= bit(xi) | bit(yi);
                pairs.push((xi, yi));
            }
            if seen != g.all() {
                let missing = bits::lowest(g.all() & !seen).unwrap();
                return Err(Error::InvalidPairing(format!(
                    "`{}` is not paired",
                    g.vertices()[missing]
                )));
            }
            let xs = pairs.iter().fold(0u64, |m, &(x, _)| m | bit(x));
            for (a, b) in g.edges() {
                let (ai, bi) = (g.index_of(a)?, g.index_of(b)?);
                if bits::contains(xs, ai) == bits::contains(xs, bi) {
                    return Err(Error::InvalidPairing(format!(
                        "edge {{{a},{b}}} does not cross the pairing sides"
                    )));
                }
            }
            pairs
        }
        None => {
            let (left, right) = graph::bipartition_masks(adj, g.all()).unwrap();
            let (l, r) = (bits::len(left), bits::len(right));
            if l != r {
                return Err(Error::UnequalSides { left: l, right: r });
            }
            let mut mate = vec![usize::MAX; n];
            for x in bits::iter(left) {
                let mut visited = 0u64;
                if !augment(adj, x, &mut mate, &mut visited) {
                    return Err(Error::NoPerfectMatching);
                }
            }
            bits::iter(right).map(|y| (mate[y], y)).collect()
        }
    };
    pairs.sort();
    Ok(MatchedBipartite {
        graph: g.clone(),
        pairs,
    })
}

/// Kuhn's augmenting path step; `mate[y]` is the partner of right vertex `y`.
fn augment(adj: &[u64], x: usize, mate: &mut [usize], visited: &mut u64) -> bool {
    for y in bits::iter(adj[x]) {
        if bits::contains(*visited, y) {
            continue;
        }
        *visited |= bit(y);
        if mate[y] == usize::MAX || augment(adj, mate[y], mate, visited) {
            mate[y] = x;
            return true;
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    vertices: Vec<String>,
    /// Out-neighbours by vertex position.
    out: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Acyclicity {
    /// Every arc goes forward in this order.
    Order(Vec<String>),
    /// Vertices of a directed cycle, in arc order.
    Cycle(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Classification {
    CohenMacaulay,
    Cycle(Vec<String>),
    NotTransitive([String; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProbeReport {
    pub seq_cm: bool,
    pub acyclic: bool,
}

impl ProbeReport {
    /// Sequentially Cohen-Macaulay implies acyclic.
    pub fn consistent(&self) -> bool {
        !self.seq_cm || self.acyclic
    }
}

impl Digraph {
    /// Vertices keep the given order; arcs are label pairs.
    pub fn new<S: AsRef<str>>(vertices: &[S], arcs: &[(S, S)]) -> Result<Digraph> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        if vertices.len() > bits::MAX_VERTICES {
            return Err(Error::LimitExceeded {
                what: "vertex count",
                value: vertices.len(),
                limit: bits::MAX_VERTICES,
            });
        }
        let pos = |x: &str| {
            vertices
                .iter()
                .position(|v| v == x)
                .ok_or_else(|| Error::UnknownVertex(x.to_string()))
        };
        let mut out = vec![0u64; vertices.len()];
        for (a, b) in arcs {
            let (i, j) = (pos(a.as_ref())?, pos(b.as_ref())?);
            if i == j {
                return Err(Error::Loop(a.as_ref().to_string()));
            }
            out[i] |= bit(j);
        }
        Ok(Digraph { vertices, out })
    }

    /// The digraph of a matched bipartite graph, on `x_1, …, x_g`.
    pub fn build(m: &MatchedBipartite) -> Digraph {
        let adj = m.graph.adjacency();
        let out = m
            .pairs
            .iter()
            .enumerate()
            .map(|(i, &(x, _))| {
                m.pairs
                    .iter()
                    .enumerate()
                    .filter(|&(j, &(_, y))| j != i && bits::contains(adj[x], y))
                    .fold(0, |acc, (j, _)| acc | bit(j))
            })
            .collect();
        Digraph {
            vertices: m.x_side().into_iter().map(str::to_string).collect(),
            out,
        }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arcs(&self) -> Vec<(&str, &str)> {
        let mut arcs = Vec::new();
        for (i, &o) in self.out.iter().enumerate() {
            for j in bits::iter(o) {
                arcs.push((self.vertices[i].as_str(), self.vertices[j].as_str()));
            }
        }
        arcs
    }

    /// Kahn's algorithm taking the earliest available vertex each time.
    pub fn is_acyclic(&self) -> Acyclicity {
        let n = self.vertices.len();
        let mut indeg: Vec<usize> = vec![0; n];
        for &o in &self.out {
            for j in bits::iter(o) {
                indeg[j] += 1;
            }
        }
        let mut done = 0u64;
        let mut order = Vec::with_capacity(n);
        while let Some(v) = (0..n).find(|&v| !bits::contains(done, v) && indeg[v] == 0) {
            done |= bit(v);
            order.push(v);
            for j in bits::iter(self.out[v]) {
                indeg[j] -= 1;
            }
        }
        if order.len() == n {
            return Acyclicity::Order(order.into_iter().map(|v| self.vertices[v].clone()).collect());
        }
        // every remaining vertex has an in-arc from another remaining vertex,
        // so walking backwards must revisit a vertex
        let rest = bits::full(n) & !done;
        let pred = |v: usize| (0..n).find(|&u| bits::contains(rest, u) && bits::contains(self.out[u], v)).unwrap();
        let mut walk = vec![bits::lowest(rest).unwrap()];
        loop {
            let p = pred(*walk.last().unwrap());
            if let Some(at) = walk.iter().position(|&w| w == p) {
                let mut cycle: Vec<usize> = walk[at..].to_vec();
                cycle.reverse();
                let start = (0..cycle.len()).min_by_key(|&k| cycle[k]).unwrap();
                cycle.rotate_left(start);
                return Acyclicity::Cycle(cycle.into_iter().map(|v| self.vertices[v].clone()).collect());
            }
            walk.push(p);
        }
    }

    /// The first triple `(i, j, k)` of distinct vertices, in vertex order,
    /// with arcs `(i, j)`, `(j, k)` but not `(i, k)`.
    pub fn is_transitive(&self) -> Check<[String; 3]> {
        let n = self.vertices.len();
        for i in 0..n {
            for j in bits::iter(self.out[i]) {
                let missing = self.out[j] & !self.out[i] & !bit(i);
                if let Some(k) = bits::lowest(missing) {
                    return Check::Fails([
                        self.vertices[i].clone(),
                        self.vertices[j].clone(),
                        self.vertices[k].clone(),
                    ]);
                }
            }
        }
        Check::Holds
    }
}

/// Cohen-Macaulay exactly when the digraph is acyclic and transitive.
pub fn classify_cm_bipartite(m: &MatchedBipartite) -> Classification {
    let d = Digraph::build(m);
    if let Acyclicity::Cycle(c) = d.is_acyclic() {
        return Classification::Cycle(c);
    }
    match d.is_transitive() {
        Check::Holds => Classification::CohenMacaulay,
        Check::Fails(t) => Classification::NotTransitive(t),
    }
}

/// Evaluates sequential Cohen-Macaulayness of `Δ_G` and acyclicity of the
/// digraph side by side.
pub fn seq_cm_implies_acyclic_probe(m: &MatchedBipartite, field: FieldSpec) -> Result<ProbeReport> {
    let seq_cm = homology::is_sequentially_cm(&independence_complex(&m.graph), field)?.holds();
    let acyclic = matches!(Digraph::build(m).is_acyclic(), Acyclicity::Order(_));
    Ok(ProbeReport { seq_cm, acyclic })
}

/// For trees: every `x_i` has only outgoing or only incoming arcs. Fails
/// with the first vertex that has both.
pub fn tree_sink_source_check(m: &MatchedBipartite) -> Result<Check<String>> {
    if !m.graph.is_tree() {
        return Err(Error::NotATree);
    }
    let d = Digraph::build(m);
    let n = d.vertices.len();
    let into = |v: usize| (0..n).any(|u| bits::contains(d.out[u], v));
    Ok(
        match (0..n).find(|&v| d.out[v] != 0 && into(v)) {
            Some(v) => Check::Fails(d.vertices[v].clone()),
            None => Check::Holds,
        },
    )
}

/// Unmixedness of the edge clutter, the counterpart of transitivity.
pub fn is_unmixed_graph(m: &MatchedBipartite) -> bool {
    homology::is_unmixed(&Clutter::from_graph(&m.graph))
}
