//! Facet-based simplicial complexes.
//!
//! A complex stores its sorted vertex universe and its facets as masks over
//! that universe, in canonical (size, lexicographic) order. `facets == []` is
//! the void complex; `facets == [∅]` is the complex `{∅}`.

use std::collections::HashSet;
use std::fmt;

use crate::bits::{self, bit};
use crate::clutter::Clutter;
use crate::error::{Error, Result};
use crate::graph::{check_label, Graph};

/// Default cap on the universe size for face enumeration and homology.
pub const DEFAULT_UNIVERSE_LIMIT: usize = 24;

const EMPTY_FACET: &str = "EMPTYFACET";

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    universe: Vec<String>,
    facets: Vec<u64>,
}

impl SimplicialComplex {
    /// Builds a complex from explicit facets, which must form an antichain.
    pub fn from_facets<U, F, S>(universe: U, facets: F) -> Result<Self>
    where
        U: IntoIterator<Item = S>,
        F: IntoIterator<Item = Vec<S>>,
        S: AsRef<str>,
    {
        let (universe, masks) = collect_masks(universe, facets)?;
        let mut sorted = masks.clone();
        bits::sort_canonical(&mut sorted);
        sorted.dedup();
        for (i, &a) in sorted.iter().enumerate() {
            if let Some(&b) = sorted[i + 1..].iter().find(|&&b| bits::is_subset(a, b)) {
                return Err(Error::NotAntichain(format!(
                    "{{{}}} ⊆ {{{}}}",
                    bits::labels(a, &universe).join(","),
                    bits::labels(b, &universe).join(",")
                )));
            }
        }
        Ok(SimplicialComplex {
            universe,
            facets: sorted,
        })
    }

    /// The complex generated by the given faces (non-maximal ones are dropped).
    pub fn generated_by<U, F, S>(universe: U, faces: F) -> Result<Self>
    where
        U: IntoIterator<Item = S>,
        F: IntoIterator<Item = Vec<S>>,
        S: AsRef<str>,
    {
        let (universe, masks) = collect_masks(universe, faces)?;
        Ok(Self::from_masks(universe, masks))
    }

    pub(crate) fn from_masks(universe: Vec<String>, faces: Vec<u64>) -> Self {
        SimplicialComplex {
            universe,
            facets: bits::maximalize(faces),
        }
    }

    pub fn void<S: AsRef<str>>(universe: impl IntoIterator<Item = S>) -> Result<Self> {
        Self::from_facets(universe, Vec::<Vec<S>>::new())
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    /// Facets as masks over [`universe`](Self::universe), canonical order.
    pub fn facet_masks(&self) -> &[u64] {
        &self.facets
    }

    pub fn facets(&self) -> Vec<Vec<&str>> {
        self.facets
            .iter()
            .map(|&f| bits::labels(f, &self.universe))
            .collect()
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// `None` for the void complex, `-1` for `{∅}`.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|&f| bits::len(f) as isize - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| bits::len(w[0]) == bits::len(w[1]))
    }

    pub fn mask_of(&self, face: &[&str]) -> Result<u64> {
        face.iter().try_fold(0u64, |m, x| {
            self.universe
                .binary_search_by(|v| v.as_str().cmp(x))
                .map(|i| m | bit(i))
                .map_err(|_| Error::UnknownVertex(x.to_string()))
        })
    }

    pub fn contains_face(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| bits::is_subset(face, f))
    }

    /// Link of a face, on the universe with the face removed.
    pub fn link(&self, face: &[&str]) -> Result<Self> {
        let m = self.mask_of(face)?;
        if !self.contains_face(m) {
            return Err(Error::NotAFace(face.iter().map(|s| s.to_string()).collect()));
        }
        let keep = bits::full(self.universe.len()) & !m;
        let universe = bits::iter(keep).map(|i| self.universe[i].clone()).collect();
        let facets = self
            .link_facets(m)
            .into_iter()
            .map(|f| bits::compress(f, keep))
            .collect();
        Ok(Self::from_masks(universe, facets))
    }

    /// Facets of the link of `face`, still indexed over this universe.
    pub(crate) fn link_facets(&self, face: u64) -> Vec<u64> {
        self.facets
            .iter()
            .filter(|&&f| bits::is_subset(face, f))
            .map(|&f| f & !face)
            .collect()
    }

    /// The pure subcomplex generated by all `k`-dimensional faces.
    pub fn pure_skeleton(&self, k: isize) -> Result<Self> {
        let dim = self.dim().ok_or(Error::VoidComplex)?;
        if k < -1 || k > dim {
            return Err(Error::DimensionOutOfRange { k, dim });
        }
        Ok(SimplicialComplex {
            universe: self.universe.clone(),
            facets: self.pure_skeleton_facets(k),
        })
    }

    pub(crate) fn pure_skeleton_facets(&self, k: isize) -> Vec<u64> {
        let size = (k + 1) as usize;
        let mut out = HashSet::new();
        for &f in self.facets.iter().filter(|&&f| bits::len(f) >= size) {
            for_each_subset_of_size(f, size, &mut |s| {
                out.insert(s);
            });
        }
        let mut v: Vec<u64> = out.into_iter().collect();
        bits::sort_canonical(&mut v);
        v
    }

    /// All faces grouped by dimension; entry `d + 1` holds the `d`-faces.
    pub fn faces_by_dimension(&self, limit: usize) -> Result<Vec<Vec<u64>>> {
        if self.universe.len() > limit {
            return Err(Error::LimitExceeded {
                what: "universe size",
                value: self.universe.len(),
                limit,
            });
        }
        Ok(faces_by_dimension(&self.facets))
    }

    pub fn all_faces(&self) -> Result<Vec<u64>> {
        Ok(self
            .faces_by_dimension(DEFAULT_UNIVERSE_LIMIT)?
            .into_iter()
            .flatten()
            .collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut faces: Vec<Vec<String>> = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let err = |message: &str| Error::Parse {
                line: n + 1,
                message: message.to_string(),
            };
            if toks.is_empty() {
                return Err(err("blank lines are not allowed"));
            }
            if toks == [EMPTY_FACET] {
                faces.push(Vec::new());
            } else if toks.contains(&EMPTY_FACET) {
                return Err(err("EMPTYFACET must stand alone"));
            } else {
                faces.push(toks.iter().map(|s| s.to_string()).collect());
            }
        }
        let universe: Vec<String> = faces.iter().flatten().cloned().collect();
        Self::generated_by(universe, faces)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for f in self.facets() {
            if f.is_empty() {
                out.push_str(EMPTY_FACET);
            } else {
                out.push_str(&f.join(" "));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (n, facet) in self.facets().iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{{}}}", facet.join(","))?;
        }
        write!(f, "⟩")
    }
}

fn collect_masks<U, F, S>(universe: U, faces: F) -> Result<(Vec<String>, Vec<u64>)>
where
    U: IntoIterator<Item = S>,
    F: IntoIterator<Item = Vec<S>>,
    S: AsRef<str>,
{
    let mut labels: Vec<String> = Vec::new();
    for u in universe {
        check_label(u.as_ref())?;
        labels.push(u.as_ref().to_string());
    }
    labels.sort();
    labels.dedup();
    if labels.len() > bits::MAX_VERTICES {
        return Err(Error::LimitExceeded {
            what: "universe size",
            value: labels.len(),
            limit: bits::MAX_VERTICES,
        });
    }
    let mut masks = Vec::new();
    for face in faces {
        let mut m = 0;
        for v in face {
            let i = labels
                .binary_search_by(|l| l.as_str().cmp(v.as_ref()))
                .map_err(|_| Error::UnknownVertex(v.as_ref().to_string()))?;
            m |= bit(i);
        }
        masks.push(m);
    }
    Ok((labels, masks))
}

pub(crate) fn for_each_subset_of_size(set: u64, size: usize, f: &mut impl FnMut(u64)) {
    fn go(rest: u64, need: usize, acc: u64, f: &mut impl FnMut(u64)) {
        if need == 0 {
            f(acc);
            return;
        }
        if bits::len(rest) < need {
            return;
        }
        let v = rest & rest.wrapping_neg();
        go(rest & !v, need - 1, acc | v, f);
        go(rest & !v, need, acc, f);
    }
    go(set, size, 0, f);
}

/// Every face of the complex generated by `facets`, grouped by dimension.
pub(crate) fn faces_by_dimension(facets: &[u64]) -> Vec<Vec<u64>> {
    let top = match facets.iter().map(|&f| bits::len(f)).max() {
        Some(t) => t,
        None => return Vec::new(),
    };
    let mut seen: HashSet<u64> = HashSet::new();
    for &f in facets {
        let mut s = f;
        loop {
            seen.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    let mut by_dim = vec![Vec::new(); top + 1];
    for s in seen {
        by_dim[bits::len(s)].push(s);
    }
    for level in &mut by_dim {
        level.sort_unstable_by(|&a, &b| bits::lex_cmp(a, b));
    }
    by_dim
}

/// Maximal independent sets of the subgraph of `adj` induced on `alive`.
pub(crate) fn maximal_independent_sets(adj: &[u64], alive: u64) -> Vec<u64> {
    // Bron–Kerbosch with pivoting on the complement graph.
    let comp: Vec<u64> = (0..adj.len())
        .map(|v| alive & !adj[v] & !bit(v))
        .collect();
    let mut out = Vec::new();
    fn bk(comp: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let pivot = bits::iter(p | x)
            .max_by_key(|&u| bits::len(p & comp[u]))
            .unwrap();
        for v in bits::iter(p & !comp[pivot]) {
            bk(comp, r | bit(v), p & comp[v], x & comp[v], out);
            p &= !bit(v);
            x |= bit(v);
        }
    }
    bk(&comp, 0, alive, 0, &mut out);
    bits::sort_canonical(&mut out);
    out
}

/// `Δ_G`: faces are the independent sets of `G`.
pub fn independence_complex(g: &Graph) -> SimplicialComplex {
    SimplicialComplex {
        universe: g.vertices().to_vec(),
        facets: maximal_independent_sets(g.adjacency(), g.all()),
    }
}

/// `Δ_𝒞`: facets are complements of minimal vertex covers.
pub fn from_minimal_covers(c: &Clutter) -> SimplicialComplex {
    let all = bits::full(c.vertices().len());
    let facets = c
        .cover_masks()
        .into_iter()
        .map(|cover| all & !cover)
        .collect();
    SimplicialComplex::from_masks(c.vertices().to_vec(), facets)
}

/// Facet products `F ∪ H` of complexes on disjoint universes.
pub fn disjoint_join(a: &SimplicialComplex, b: &SimplicialComplex) -> Result<SimplicialComplex> {
    let (universe, ma, mb) = merge_universes(&a.universe, &b.universe)?;
    let mut facets = Vec::with_capacity(a.facets.len() * b.facets.len());
    for &f in &a.facets {
        for &h in &b.facets {
            facets.push(bits::translate(f, &ma) | bits::translate(h, &mb));
        }
    }
    bits::sort_canonical(&mut facets);
    Ok(SimplicialComplex { universe, facets })
}

/// Sorted union of two disjoint label lists plus index maps into it.
pub(crate) fn merge_universes(
    a: &[String],
    b: &[String],
) -> Result<(Vec<String>, Vec<usize>, Vec<usize>)> {
    if let Some(x) = a.iter().find(|x| b.binary_search(x).is_ok()) {
        return Err(Error::Overlap(x.clone()));
    }
    let mut universe: Vec<String> = a.iter().chain(b).cloned().collect();
    universe.sort();
    if universe.len() > bits::MAX_VERTICES {
        return Err(Error::LimitExceeded {
            what: "universe size",
            value: universe.len(),
            limit: bits::MAX_VERTICES,
        });
    }
    let ma = bits::index_map(a, &universe).unwrap();
    let mb = bits::index_map(b, &universe).unwrap();
    Ok((universe, ma, mb))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(String, String)> = (1..=n)
            .map(|i| (i.to_string(), (i % n + 1).to_string()))
            .collect();
        Graph::new(Vec::<String>::new(), edges).unwrap()
    }

    fn facets_of(d: &SimplicialComplex) -> Vec<Vec<&str>> {
        d.facets()
    }

    #[test]
    fn independence_complex_examples() {
        let k2 = Graph::from_edges(&[("a", "b")]).unwrap();
        assert_eq!(facets_of(&independence_complex(&k2)), vec![vec!["a"], vec!["b"]]);

        let c4 = Graph::from_edges(&[("x1", "y1"), ("x1", "y2"), ("x2", "y1"), ("x2", "y2")]).unwrap();
        assert_eq!(
            facets_of(&independence_complex(&c4)),
            vec![vec!["x1", "x2"], vec!["y1", "y2"]]
        );

        let c5 = independence_complex(&cycle(5));
        assert_eq!(
            facets_of(&c5),
            vec![vec!["1", "3"], vec!["1", "4"], vec!["2", "4"], vec!["2", "5"], vec!["3", "5"]]
        );
        assert_eq!(independence_complex(&Graph::empty()).facet_masks(), &[0]);
    }

    #[test]
    fn link_examples() {
        let p = independence_complex(&Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap());
        let l = p.link(&["b"]).unwrap();
        assert_eq!(l.facet_masks(), &[0]);
        assert_eq!(l.universe(), ["a", "c"]);

        let g = cycle(6);
        let d = independence_complex(&g);
        let l = d.link(&["1"]).unwrap();
        let g2 = g.delete_closed_neighborhood("1").unwrap();
        let expected = independence_complex(&g2);
        assert_eq!(l.facets(), expected.facets());

        assert_eq!(d.link(&[]).unwrap(), d);
        assert!(matches!(d.link(&["1", "2"]), Err(Error::NotAFace(_))));
    }

    #[test]
    fn pure_skeleton_examples() {
        let d = SimplicialComplex::from_facets(["a", "b", "c"], vec![vec!["a", "b"], vec!["c"]]).unwrap();
        let s = d.pure_skeleton(0).unwrap();
        assert_eq!(s.facets(), vec![vec!["a"], vec!["b"], vec!["c"]]);
        let pure = independence_complex(&cycle(5));
        assert_eq!(pure.pure_skeleton(1).unwrap(), pure);
        assert_eq!(d.pure_skeleton(-1).unwrap().facet_masks(), &[0]);
        assert!(d.pure_skeleton(2).is_err());
        assert!(d.pure_skeleton(-2).is_err());
    }

    #[test]
    fn covers_complex_examples() {
        let c = Clutter::new(["a", "b"], vec![vec!["a", "b"]]).unwrap();
        assert_eq!(from_minimal_covers(&c).facets(), vec![vec!["a"], vec!["b"]]);
        let c = Clutter::new(["a", "b", "c"], vec![vec!["a", "b"], vec!["b", "c"]]).unwrap();
        assert_eq!(from_minimal_covers(&c).facets(), vec![vec!["b"], vec!["a", "c"]]);
        let g = cycle(4);
        assert_eq!(
            from_minimal_covers(&Clutter::from_graph(&g)),
            independence_complex(&g)
        );
    }

    #[test]
    fn join_examples() {
        let a = SimplicialComplex::from_facets(["a"], vec![vec!["a"]]).unwrap();
        let b = SimplicialComplex::from_facets(["b"], vec![vec!["b"]]).unwrap();
        assert_eq!(disjoint_join(&a, &b).unwrap().facets(), vec![vec!["a", "b"]]);

        let k2a = independence_complex(&Graph::from_edges(&[("a", "b")]).unwrap());
        let k2b = independence_complex(&Graph::from_edges(&[("c", "d")]).unwrap());
        let j = disjoint_join(&k2a, &k2b).unwrap();
        assert_eq!(j.facet_count(), 4);
        assert!(j.facets().iter().all(|f| f.len() == 2));

        let empty = SimplicialComplex::from_facets(Vec::<&str>::new(), vec![vec![]]).unwrap();
        assert_eq!(disjoint_join(&k2a, &empty).unwrap(), k2a);
        assert!(matches!(disjoint_join(&k2a, &k2a), Err(Error::Overlap(_))));
    }

    #[test]
    fn face_enumeration() {
        let d = SimplicialComplex::from_facets(["a", "b"], vec![vec!["a", "b"]]).unwrap();
        assert_eq!(d.all_faces().unwrap(), vec![0, 0b01, 0b10, 0b11]);
        let d = SimplicialComplex::from_facets(["a", "b"], vec![vec!["a"], vec!["b"]]).unwrap();
        assert_eq!(d.all_faces().unwrap(), vec![0, 0b01, 0b10]);
        let c5 = independence_complex(&cycle(5));
        assert_eq!(c5.all_faces().unwrap().len(), 11);
        let big: Vec<String> = (0..30).map(|i| format!("v{i}")).collect();
        let d = SimplicialComplex::from_facets(big.clone(), vec![big.clone()]).unwrap();
        assert!(matches!(d.all_faces(), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn antichain_and_parsing() {
        assert!(matches!(
            SimplicialComplex::from_facets(["a", "b"], vec![vec!["a"], vec!["a", "b"]]),
            Err(Error::NotAntichain(_))
        ));
        let d = SimplicialComplex::parse("a b\nc\n").unwrap();
        assert_eq!(d.facets(), vec![vec!["c"], vec!["a", "b"]]);
        let e = SimplicialComplex::parse("EMPTYFACET\n").unwrap();
        assert_eq!(e.dim(), Some(-1));
        assert!(SimplicialComplex::parse("a\n\nb\n").is_err());
        assert_eq!(SimplicialComplex::parse(&d.to_text()).unwrap(), d);
        assert!(SimplicialComplex::void(["a"]).unwrap().is_void());
    }
}
