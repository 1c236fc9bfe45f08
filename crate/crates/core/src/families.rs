//! Deterministic instance families for the cross-checking suites. Random
//! families take a caller-seeded generator so runs are reproducible.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bits::{self, bit};
use crate::clutter::{Clutter, ForestMode};
use crate::digraph::{check_conditions, MatchedBipartite};
use crate::graph::Graph;

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn bipartite_from_bits(xs: &[String], ys: &[String], pick: u64) -> Graph {
    let b = ys.len();
    let mut edges = Vec::new();
    for k in bits::iter(pick) {
        edges.push((xs[k / b].clone(), ys[k % b].clone()));
    }
    let vertices: Vec<String> = xs.iter().chain(ys).cloned().collect();
    Graph::new(vertices, edges).expect("labels are valid")
}

/// Every bipartite graph on sides `x1…xa`, `y1…yb` for `1 ≤ a+b ≤ max_total`,
/// one per edge subset of `K_{a,b}`.
pub fn all_bipartite_graphs(max_total: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for total in 1..=max_total {
        for a in 0..=total {
            let b = total - a;
            let (xs, ys) = (labels("x", a), labels("y", b));
            for pick in 0u64..(1u64 << (a * b)) {
                out.push(bipartite_from_bits(&xs, &ys, pick));
            }
        }
    }
    out
}

/// A bipartite graph on `n` vertices with a random side split and edge
/// density drawn from `[0.15, 0.6)`.
pub fn random_bipartite<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let a = rng.gen_range(1..n);
    let (xs, ys) = (labels("x", a), labels("y", n - a));
    let p: f64 = rng.gen_range(0.15..0.6);
    let mut pick = 0u64;
    for k in 0..a * (n - a) {
        if rng.gen_bool(p) {
            pick |= bit(k);
        }
    }
    bipartite_from_bits(&xs, &ys, pick)
}

/// A chordal graph on `n` vertices: each new vertex is joined to a random
/// clique of the current graph, so it is simplicial when added.
pub fn random_chordal<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let names = labels("v", n);
    let mut adj = vec![0u64; n];
    for v in 1..n {
        if rng.gen_bool(0.15) {
            continue;
        }
        let u = rng.gen_range(0..v);
        let mut clique = bit(u);
        let mut around: Vec<usize> = bits::iter(adj[u]).collect();
        around.shuffle(rng);
        for w in around {
            if bits::is_subset(clique, adj[w]) && rng.gen_bool(0.5) {
                clique |= bit(w);
            }
        }
        for w in bits::iter(clique) {
            adj[w] |= bit(v);
            adj[v] |= bit(w);
        }
    }
    let mut edges = Vec::new();
    for (v, &a) in adj.iter().enumerate() {
        for w in bits::iter(a).filter(|&w| w > v) {
            edges.push((names[v].clone(), names[w].clone()));
        }
    }
    Graph::new(names.clone(), edges).expect("labels are valid")
}

/// `G(n, p)` with `p` drawn from `[0.1, 0.7)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> Graph {
    let names = labels("v", n);
    let p: f64 = rng.gen_range(0.1..0.7);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(names.clone(), edges).expect("labels are valid")
}

/// Every graph containing the matching `{x_i, y_i}`, `1 ≤ i ≤ g`, whose
/// other edges join some `x_i` to some `y_j`, for `1 ≤ g ≤ max_g`.
pub fn all_matched_bipartite(max_g: usize) -> Vec<MatchedBipartite> {
    let mut out = Vec::new();
    for g in 1..=max_g {
        let (xs, ys) = (labels("x", g), labels("y", g));
        let off: Vec<(usize, usize)> = (0..g)
            .flat_map(|i| (0..g).filter(move |&j| j != i).map(move |j| (i, j)))
            .collect();
        let pairing: Vec<(&str, &str)> = xs.iter().zip(&ys).map(|(x, y)| (x.as_str(), y.as_str())).collect();
        for pick in 0u64..(1u64 << off.len()) {
            let mut edges: Vec<(String, String)> =
                xs.iter().cloned().zip(ys.iter().cloned()).collect();
            edges.extend(bits::iter(pick).map(|k| (xs[off[k].0].clone(), ys[off[k].1].clone())));
            let graph = Graph::new(Vec::<String>::new(), edges).expect("labels are valid");
            out.push(check_conditions(&graph, Some(&pairing)).expect("the diagonal is a perfect matching"));
        }
    }
    out
}

/// Every clutter with at most `max_edges` nonempty edges on the vertex set
/// `{a, b, …}` of size `n`; vertices outside all edges are allowed.
pub fn all_clutters(n: usize, max_edges: usize) -> Vec<Clutter> {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let mut subsets: Vec<u64> = (1..(1u64 << n)).collect();
    bits::sort_canonical(&mut subsets);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn walk(
        subsets: &[u64],
        from: usize,
        max_edges: usize,
        chosen: &mut Vec<u64>,
        names: &[String],
        out: &mut Vec<Clutter>,
    ) {
        out.push(Clutter::from_masks(names.to_vec(), chosen.clone()));
        if chosen.len() == max_edges {
            return;
        }
        for k in from..subsets.len() {
            let s = subsets[k];
            // canonical order puts subsets before supersets, so only
            // containment of an earlier pick can break the antichain
            if chosen.iter().any(|&c| bits::is_subset(c, s)) {
                continue;
            }
            chosen.push(s);
            walk(subsets, k + 1, max_edges, chosen, names, out);
            chosen.pop();
        }
    }
    walk(&subsets, 0, max_edges, &mut chosen, &names, &mut out);
    out
}

/// A random f-forest on at most `max_vertices` vertices. Edges are grown one
/// at a time: a proper part of an existing edge plus fresh vertices, or a
/// brand-new component. Candidates failing the exhaustive f-forest test are
/// rejected and redrawn.
pub fn random_f_forest<R: Rng>(rng: &mut R, max_vertices: usize) -> Clutter {
    assert!(max_vertices >= 1);
    loop {
        let mut edges: Vec<u64> = Vec::new();
        let mut used = 0usize;
        let target = rng.gen_range(1..=max_vertices);
        while used < target {
            let fresh_count = rng.gen_range(1..=(target - used).min(3));
            let fresh = bits::full(used + fresh_count) & !bits::full(used);
            used += fresh_count;
            let kept = if edges.is_empty() || rng.gen_bool(0.2) {
                0
            } else {
                let h = edges[rng.gen_range(0..edges.len())];
                let mut part = 0;
                for v in bits::iter(h) {
                    if rng.gen_bool(0.5) {
                        part |= bit(v);
                    }
                }
                if part == h {
                    part &= !bit(bits::lowest(h).unwrap());
                }
                part
            };
            edges.push(kept | fresh);
        }
        let names: Vec<String> = (1..=used).map(|i| format!("x{i:02}")).collect();
        let c = Clutter::from_masks(names, edges);
        if c.is_f_forest(ForestMode::Exhaustive).unwrap_or(false) {
            return c;
        }
    }
}
