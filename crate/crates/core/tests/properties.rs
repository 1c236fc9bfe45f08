use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shellkit::bits;
use shellkit::clutter::{Clutter, ForestMode};
use shellkit::complex::{disjoint_join, from_minimal_covers, independence_complex, SimplicialComplex};
use shellkit::digraph::{self, Acyclicity, Classification, Digraph};
use shellkit::families;
use shellkit::homology::{self, FieldSpec};
use shellkit::ideal::SquarefreeMonomialIdeal;
use shellkit::shelling::{self, ShellingCertificate, ShellingCheck};
use shellkit::Graph;

const Q: FieldSpec = FieldSpec::Rationals;

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> k & 1 == 1 {
                edges.push((names[i].clone(), names[j].clone()));
            }
            k += 1;
        }
    }
    Graph::new(names.clone(), edges).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << pairs)).prop_map(|(n, m)| graph_from_mask(n, m))
    })
}

fn arb_complex(max_vertices: usize, max_facets: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_vertices).prop_flat_map(move |n| {
        proptest::collection::vec(1u64..(1u64 << n), 1..=max_facets).prop_map(move |faces| {
            let names: Vec<String> = (0..n).map(|i| format!("u{i}")).collect();
            let faces: Vec<Vec<String>> = faces.iter().map(|&f| bits::owned_labels(f, &names)).collect();
            SimplicialComplex::generated_by(names, faces).unwrap()
        })
    })
}

fn arb_clutter(n: usize, max_edges: usize) -> impl Strategy<Value = Clutter> {
    proptest::collection::vec(1u64..(1u64 << n), 1..=max_edges).prop_map(move |edges| {
        let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        let edges = bits::minimalize(edges);
        Clutter::new(names.clone(), edges.iter().map(|&e| bits::owned_labels(e, &names)).collect::<Vec<_>>()).unwrap()
    })
}

fn cone(delta: &SimplicialComplex, apex: &str) -> SimplicialComplex {
    let mut universe = delta.universe().to_vec();
    universe.push(apex.to_string());
    let faces: Vec<Vec<String>> = delta
        .facets()
        .iter()
        .map(|f| f.iter().map(|s| s.to_string()).chain([apex.to_string()]).collect())
        .collect();
    SimplicialComplex::from_facets(universe, faces).unwrap()
}

/// Reduced Euler characteristic from face counts.
fn euler_from_faces(delta: &SimplicialComplex) -> i64 {
    -1 + delta
        .all_faces()
        .unwrap()
        .iter()
        .filter(|&&f| f != 0)
        .map(|&f| if bits::len(f) % 2 == 1 { 1 } else { -1 })
        .sum::<i64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn brute_force_certificates_verify(g in arb_graph(8)) {
        let delta = independence_complex(&g);
        if let Some(c) = shelling::find_shelling_bruteforce_with_limit(&delta, 64).unwrap() {
            prop_assert!(c.check_against(&delta).is_ok());
            prop_assert!(matches!(shelling::verify_shelling(&delta, c.order()).unwrap(), ShellingCheck::Valid(_)));
        }
    }

    #[test]
    fn shellable_implies_sequentially_cm(g in arb_graph(8)) {
        let delta = independence_complex(&g);
        if shelling::find_shelling_bruteforce_with_limit(&delta, 64).unwrap().is_some() {
            prop_assert!(homology::is_sequentially_cm(&delta, Q).unwrap().holds());
        }
    }

    #[test]
    fn chordal_recursion_never_fails(seed in any::<u64>(), n in 1usize..=12) {
        let g = families::random_chordal(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let c = shelling::shell_chordal(&g).unwrap();
        prop_assert!(c.check_against(&independence_complex(&g)).is_ok());
    }

    #[test]
    fn bipartite_recursion_restricts_to_every_link(seed in any::<u64>(), n in 2usize..=8) {
        let g = families::random_bipartite(&mut ChaCha8Rng::seed_from_u64(seed), n);
        let delta = independence_complex(&g);
        if let Some(c) = shelling::shell_bipartite(&g).unwrap().certificate() {
            for x in g.vertices() {
                let r = shelling::restrict_shelling_to_link(c, x).unwrap();
                prop_assert!(r.check_against(&delta.link(&[x]).unwrap()).is_ok());
            }
        }
    }

    #[test]
    fn cone_points_do_not_change_shellability(delta in arb_complex(6, 10)) {
        let coned = cone(&delta, "zz");
        let a = shelling::find_shelling_bruteforce(&delta).unwrap().is_some();
        let b = shelling::find_shelling_bruteforce(&coned).unwrap().is_some();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn whiskers_pass_shellability_to_deletions(g in arb_graph(6), pick in any::<u64>()) {
        let s: Vec<&str> = g
            .vertices()
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .map(|(_, v)| v.as_str())
            .collect();
        let whiskered = g.add_whiskers(&s).unwrap();
        let deleted = g.delete_vertices(&s).unwrap();
        let big = shelling::find_shelling_bruteforce_with_limit(&independence_complex(&whiskered), 64).unwrap();
        if big.is_some() {
            prop_assert!(shelling::find_shelling_bruteforce(&independence_complex(&deleted)).unwrap().is_some());
        }
    }

    #[test]
    fn union_of_shellings_is_a_shelling(a in arb_graph(4), b in arb_graph(4)) {
        let rename = |g: &Graph, p: &str| {
            let edges: Vec<(String, String)> = g.edges().iter().map(|(x, y)| (format!("{p}{x}"), format!("{p}{y}"))).collect();
            let vs: Vec<String> = g.vertices().iter().map(|v| format!("{p}{v}")).collect();
            Graph::new(vs, edges).unwrap()
        };
        let (a, b) = (rename(&a, "a"), rename(&b, "b"));
        let (da, db) = (independence_complex(&a), independence_complex(&b));
        if let (Some(ca), Some(cb)) = (
            shelling::find_shelling_bruteforce(&da).unwrap(),
            shelling::find_shelling_bruteforce(&db).unwrap(),
        ) {
            let u = shelling::shell_union(&ca, &cb).unwrap();
            prop_assert!(u.check_against(&disjoint_join(&da, &db).unwrap()).is_ok());
        }
    }

    #[test]
    fn certificate_documents_round_trip(g in arb_graph(7)) {
        let delta = independence_complex(&g);
        if let Some(c) = shelling::find_shelling_bruteforce(&delta).unwrap() {
            let json = serde_json::to_string(&c.to_document()).unwrap();
            let doc = serde_json::from_str(&json).unwrap();
            let back = ShellingCertificate::from_document(&doc, delta.universe()).unwrap();
            prop_assert_eq!(back, c);
        }
    }

    #[test]
    fn euler_characteristic_matches_face_counts(delta in arb_complex(7, 8)) {
        let h = homology::reduced_homology(&delta, Q).unwrap();
        prop_assert_eq!(h.euler_characteristic(), euler_from_faces(&delta));
        let h2 = homology::reduced_homology(&delta, FieldSpec::Prime(2)).unwrap();
        prop_assert_eq!(h2.euler_characteristic(), euler_from_faces(&delta));
        for i in -1..=h.top() {
            prop_assert!(h2.rank(i) >= h.rank(i));
        }
    }

    #[test]
    fn cohen_macaulay_implies_sequentially_cm(delta in arb_complex(6, 8)) {
        if homology::is_cohen_macaulay(&delta, Q).unwrap().holds() {
            prop_assert!(delta.is_pure());
            prop_assert!(homology::is_sequentially_cm(&delta, Q).unwrap().holds());
        }
    }

    #[test]
    fn link_of_a_vertex_is_the_deletion_complex(g in arb_graph(7)) {
        let delta = independence_complex(&g);
        for x in g.vertices() {
            let link = delta.link(&[x]).unwrap();
            let smaller = independence_complex(&g.delete_closed_neighborhood(x).unwrap());
            prop_assert_eq!(link.facets(), smaller.facets());
        }
    }

    #[test]
    fn dual_is_an_involution_and_lists_covers(c in arb_clutter(6, 6)) {
        let i = SquarefreeMonomialIdeal::edge_ideal(&c);
        let d = i.alexander_dual().unwrap();
        prop_assert_eq!(d.generators(), c.minimal_vertex_covers());
        prop_assert_eq!(d.alexander_dual().unwrap(), i);
    }

    #[test]
    fn componentwise_linear_quotients_imply_sequentially_cm(c in arb_clutter(6, 5)) {
        let dual = SquarefreeMonomialIdeal::edge_ideal(&c).alexander_dual().unwrap();
        let all_linear = (0..=dual.variables().len())
            .all(|d| dual.degree_component(d).unwrap().linear_quotients().is_some());
        if all_linear {
            prop_assert!(homology::is_sequentially_cm(&from_minimal_covers(&c), Q).unwrap().holds());
        }
    }

    #[test]
    fn free_vertex_shellings_verify(c in arb_clutter(6, 5)) {
        let delta = from_minimal_covers(&c);
        let rec = shelling::shell_free_vertex_clutter(&c).unwrap();
        if let Some(cert) = rec.certificate() {
            prop_assert!(cert.check_against(&delta).is_ok());
        }
        if c.has_free_vertex_property().unwrap().holds() {
            prop_assert!(rec.certificate().is_some());
        }
    }

    #[test]
    fn greedy_forest_check_agrees_with_exhaustive(c in arb_clutter(6, 7)) {
        prop_assert_eq!(
            c.is_f_forest(ForestMode::Greedy).unwrap(),
            c.is_f_forest(ForestMode::Exhaustive).unwrap()
        );
    }

    #[test]
    fn topological_orders_send_arcs_forward(seed in any::<u64>()) {
        let g = families::random_bipartite(&mut ChaCha8Rng::seed_from_u64(seed), 8);
        if let Ok(m) = digraph::check_conditions(&g, None) {
            let d = Digraph::build(&m);
            if let Acyclicity::Order(o) = d.is_acyclic() {
                let pos = |x: &str| o.iter().position(|v| v == x).unwrap();
                for (a, b) in d.arcs() {
                    prop_assert!(pos(a) < pos(b));
                }
            }
            let probe = digraph::seq_cm_implies_acyclic_probe(&m, Q).unwrap();
            prop_assert!(probe.consistent());
        }
    }
}

/// Every perfect matching of a small matched bipartite graph, as pairings.
fn all_pairings(m: &digraph::MatchedBipartite) -> Vec<Vec<(String, String)>> {
    let g = m.graph();
    let xs: Vec<&str> = m.x_side();
    let ys: Vec<&str> = m.pairs().iter().map(|p| p.1).collect();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..ys.len()).collect();
    permute(&mut perm, 0, &mut |p| {
        if p.iter().enumerate().all(|(i, &j)| g.has_edge(xs[i], ys[j]).unwrap()) {
            out.push(p.iter().enumerate().map(|(i, &j)| (xs[i].to_string(), ys[j].to_string())).collect());
        }
    });
    out
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

#[test]
fn classification_does_not_depend_on_the_pairing() {
    for m in families::all_matched_bipartite(3) {
        let base = digraph::classify_cm_bipartite(&m) == Classification::CohenMacaulay;
        let base_t = Digraph::build(&m).is_transitive().holds();
        for p in all_pairings(&m) {
            let borrowed: Vec<(&str, &str)> = p.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
            let other = digraph::check_conditions(m.graph(), Some(&borrowed)).unwrap();
            assert_eq!(digraph::classify_cm_bipartite(&other) == Classification::CohenMacaulay, base);
            assert_eq!(Digraph::build(&other).is_transitive().holds(), base_t);
        }
    }
}

#[test]
fn rank_over_a_field_can_depend_on_characteristic() {
    let rp2 = SimplicialComplex::from_facets(
        ["1", "2", "3", "4", "5", "6"],
        [
            ["1", "2", "3"], ["1", "3", "4"], ["1", "4", "5"], ["1", "5", "6"], ["1", "2", "6"],
            ["2", "3", "5"], ["2", "4", "5"], ["2", "4", "6"], ["3", "4", "6"], ["3", "5", "6"],
        ]
        .map(|f| f.to_vec()),
    )
    .unwrap();
    assert!(homology::is_cohen_macaulay(&rp2, Q).unwrap().holds());
    assert!(!homology::is_cohen_macaulay(&rp2, FieldSpec::Prime(2)).unwrap().holds());
    assert!(homology::is_cohen_macaulay(&rp2, FieldSpec::Prime(3)).unwrap().holds());
}

#[test]
fn free_vertex_failure_is_not_a_disproof() {
    // the triangle clutter has no free vertex, yet its cover complex shells
    let tri = Clutter::new(Vec::<&str>::new(), vec![vec!["a", "b"], vec!["b", "c"], vec!["a", "c"]]).unwrap();
    assert!(shelling::shell_free_vertex_clutter(&tri).unwrap().certificate().is_none());
    assert!(shelling::find_shelling_bruteforce(&from_minimal_covers(&tri)).unwrap().is_some());
}
