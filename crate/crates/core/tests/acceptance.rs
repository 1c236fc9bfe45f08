//! Acceptance suite. Each criterion prints one PASS/FAIL line with its case
//! count and elapsed time; the process fails if any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shellkit::bits;
use shellkit::clutter::{Clutter, ForestMode};
use shellkit::complex::{from_minimal_covers, independence_complex};
use shellkit::digraph::{self, Acyclicity, Classification, Digraph};
use shellkit::families;
use shellkit::homology::{self, FieldSpec};
use shellkit::shelling::{self, ShellingCheck};
use shellkit::{Graph, SquarefreeMonomialIdeal};

const Q: FieldSpec = FieldSpec::Rationals;
/// Facet cap for brute force inside the suites; well above what the
/// families produce.
const BRUTE_LIMIT: usize = 64;

struct Report {
    cases: usize,
    /// Instances on the "yes" side, to show the family is not one-sided.
    positives: usize,
    failures: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report {
            cases: 0,
            positives: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn graph(edges: &[(String, String)]) -> Graph {
    Graph::new(Vec::<String>::new(), edges.to_vec()).unwrap()
}

fn cycle(n: usize) -> Graph {
    graph(&(1..=n).map(|i| (format!("c{i}"), format!("c{}", i % n + 1))).collect::<Vec<_>>())
}

fn complete_bipartite(m: usize, n: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 1..=m {
        for j in 1..=n {
            edges.push((format!("x{i}"), format!("y{j}")));
        }
    }
    graph(&edges)
}

fn example_ten() -> Graph {
    let e = [
        ("x1", "y1"),
        ("x1", "y2"),
        ("x2", "y2"),
        ("x2", "y3"),
        ("x2", "y4"),
        ("x3", "y3"),
        ("x3", "y4"),
        ("x4", "y4"),
        ("x4", "y5"),
        ("x5", "y5"),
    ];
    Graph::from_edges(&e).unwrap()
}

fn brute_shellable(g: &Graph) -> bool {
    shelling::find_shelling_bruteforce_with_limit(&independence_complex(g), BRUTE_LIMIT)
        .unwrap()
        .is_some()
}

fn seq_cm(g: &Graph) -> bool {
    homology::is_sequentially_cm(&independence_complex(g), Q).unwrap().holds()
}

fn criterion_fixtures() -> Report {
    let mut r = Report::new();
    for n in [3, 5] {
        r.check(seq_cm(&cycle(n)), || format!("C_{n} should be sequentially CM"));
    }
    for n in [4, 6, 8] {
        let g = cycle(n);
        r.check(!seq_cm(&g), || format!("C_{n} should not be sequentially CM"));
        r.check(!brute_shellable(&g), || format!("C_{n} should not be shellable"));
        let rec = shelling::shell_bipartite(&g).unwrap();
        r.check(rec.certificate().is_none(), || format!("bipartite recursion shelled C_{n}"));
    }
    for n in 1..=5 {
        for g in [complete_bipartite(1, n), complete_bipartite(n, 1)] {
            let delta = independence_complex(&g);
            let found = shelling::find_shelling_bruteforce(&delta).unwrap();
            let ok = found.map(|c| c.check_against(&delta).is_ok()).unwrap_or(false);
            r.check(ok, || format!("{:?} should be shellable", g.vertices()));
            let rec = shelling::shell_bipartite(&g).unwrap();
            let ok = rec.certificate().map(|c| c.check_against(&delta).is_ok()).unwrap_or(false);
            r.check(ok, || format!("bipartite recursion failed on a star with {n} leaves"));
        }
    }
    for m in 2..=4 {
        for n in 2..=4 {
            let g = complete_bipartite(m, n);
            r.check(!brute_shellable(&g), || format!("K_{{{m},{n}}} should not be shellable"));
        }
    }
    r
}

fn three_way(g: &Graph, r: &mut Report) {
    let delta = independence_complex(g);
    let rec = shelling::shell_bipartite(g).unwrap();
    let by_recursion = rec.certificate().is_some();
    if let Some(c) = rec.certificate() {
        r.check(c.check_against(&delta).is_ok(), || format!("recursion certificate invalid for {g:?}"));
    }
    let brute = shelling::find_shelling_bruteforce_with_limit(&delta, BRUTE_LIMIT).unwrap().is_some();
    let scm = homology::is_sequentially_cm(&delta, Q).unwrap().holds();
    r.positives += usize::from(brute);
    r.check(by_recursion == brute && brute == scm, || {
        format!("{g:?}: recursion {by_recursion}, brute force {brute}, seq-CM {scm}")
    });
}

fn criterion_bipartite() -> Report {
    let mut r = Report::new();
    for g in families::all_bipartite_graphs(6) {
        three_way(&g, &mut r);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..2000 {
        let n = rng.gen_range(7..=9);
        let g = families::random_bipartite(&mut rng, n);
        three_way(&g, &mut r);
    }
    r
}

fn criterion_chordal() -> Report {
    let mut r = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut produced = 0;
    while produced < 200 {
        let n = rng.gen_range(2..=12);
        let g = families::random_chordal(&mut rng, n);
        if g.edge_count() == 0 {
            // the dual of the zero ideal is undefined
            continue;
        }
        produced += 1;
        let delta = independence_complex(&g);
        let cert = shelling::shell_chordal(&g).unwrap();
        let verified = matches!(
            shelling::verify_shelling(&delta, cert.order()).unwrap(),
            ShellingCheck::Valid(_)
        );
        r.check(verified && cert.check_against(&delta).is_ok(), || format!("chordal certificate invalid for {g:?}"));
        r.check(homology::is_sequentially_cm(&delta, Q).unwrap().holds(), || format!("{g:?} not seq-CM"));
        let dual = SquarefreeMonomialIdeal::edge_ideal(&Clutter::from_graph(&g))
            .alexander_dual()
            .unwrap();
        r.check(dual.linear_quotients().is_some(), || format!("dual of I({g:?}) has no linear quotients"));
    }
    r
}

fn criterion_classification() -> Report {
    let mut r = Report::new();
    for m in families::all_matched_bipartite(4) {
        let delta = independence_complex(m.graph());
        let g = m.len() as isize;
        let direct = homology::is_cohen_macaulay(&delta, Q).unwrap().holds() && delta.dim() == Some(g - 1);
        r.positives += usize::from(direct);
        let class = digraph::classify_cm_bipartite(&m) == Classification::CohenMacaulay;
        r.check(direct == class, || format!("{:?}: digraph says {class}, homology {direct}", m.pairs()));
        let d = Digraph::build(&m);
        let transitive = d.is_transitive().holds();
        let unmixed = digraph::is_unmixed_graph(&m);
        r.check(transitive == unmixed, || format!("{:?}: transitive {transitive}, unmixed {unmixed}", m.graph()));
    }
    let m = digraph::check_conditions(&example_ten(), None).unwrap();
    let d = Digraph::build(&m);
    r.check(matches!(d.is_acyclic(), Acyclicity::Order(_)), || "example digraph should be acyclic".into());
    r.check(!d.is_transitive().holds(), || "example digraph should not be transitive".into());
    r.check(!seq_cm(m.graph()), || "example graph should not be sequentially CM".into());
    r
}

fn criterion_clutters() -> Report {
    let mut r = Report::new();
    for c in families::all_clutters(5, 5) {
        let forest = c.is_f_forest(ForestMode::Exhaustive).unwrap();
        let balanced = c.is_totally_balanced().unwrap().holds();
        r.positives += usize::from(forest);
        r.check(forest == balanced, || format!("{c:?}: f-forest {forest}, totally balanced {balanced}"));
        if balanced {
            let fvp = c.has_free_vertex_property().unwrap().holds();
            r.check(fvp, || format!("{c:?} totally balanced without the free vertex property"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let c = families::random_f_forest(&mut rng, 10);
        let delta = from_minimal_covers(&c);
        let rec = shelling::shell_free_vertex_clutter(&c).unwrap();
        let ok = rec.certificate().is_some_and(|cert| {
            cert.check_against(&delta).is_ok()
                && matches!(shelling::verify_shelling(&delta, cert.order()).unwrap(), ShellingCheck::Valid(_))
        });
        r.check(ok, || format!("free-vertex shelling failed for {c:?}"));
        r.check(homology::is_sequentially_cm(&delta, Q).unwrap().holds(), || format!("{c:?} not seq-CM"));
    }
    r
}

fn criterion_deletion() -> Report {
    let mut r = Report::new();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let g = families::random_graph(&mut rng, n);
        let delta = independence_complex(&g);
        if let Some(cert) = shelling::find_shelling_bruteforce_with_limit(&delta, BRUTE_LIMIT).unwrap() {
            r.positives += 1;
            for x in g.vertices() {
                let restricted = shelling::restrict_shelling_to_link(&cert, x).unwrap();
                let link = delta.link(&[x]).unwrap();
                let smaller = independence_complex(&g.delete_closed_neighborhood(x).unwrap());
                let same = link.facets() == smaller.facets();
                r.check(restricted.check_against(&link).is_ok() && same, || {
                    format!("{g:?}: restriction at {x} does not shell the link")
                });
            }
        }
        if seq_cm(&g) {
            for x in g.vertices() {
                let h = g.delete_closed_neighborhood(x).unwrap();
                r.check(seq_cm(&h), || format!("{g:?} loses seq-CM after deleting N[{x}]"));
            }
        }
    }
    r
}

fn criterion_structure() -> Report {
    let mut r = Report::new();
    for c in families::all_clutters(5, 5) {
        let edges = c.edge_masks();
        let covers = c.cover_masks();
        for xn in c.free_vertices() {
            r.positives += 1;
            let x = bits::bit(c.vertices().iter().position(|v| v == xn).unwrap());
            let e = *edges.iter().find(|&&e| e & x != 0).unwrap();
            let a = e & !x;
            let rest: Vec<u64> = edges.iter().copied().filter(|&f| f != e).collect();
            let c1 = clutter_on(&c, rest.clone());
            let mut with_a = rest;
            with_a.push(a);
            // (a) covers through x_n are x_n plus a cover of C_1 missing A
            let mut lhs: Vec<u64> = covers.iter().copied().filter(|&k| k & x != 0).collect();
            let mut rhs: Vec<u64> = c1
                .iter()
                .filter(|&&k| k & a == 0)
                .map(|&k| k | x)
                .collect();
            lhs.sort();
            rhs.sort();
            r.check(lhs == rhs, || format!("{c:?}, free vertex {xn}: part (a) fails"));
            // (b) covers avoiding x_n are the covers of C_2
            let mut lhs: Vec<u64> = covers.iter().copied().filter(|&k| k & x == 0).collect();
            let mut rhs = clutter_on(&c, with_a);
            lhs.sort();
            rhs.sort();
            r.check(lhs == rhs, || format!("{c:?}, free vertex {xn}: part (b) fails"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut family = families::all_bipartite_graphs(6);
    family.extend((0..2000).map(|_| {
        let n = rng.gen_range(7..=9);
        families::random_bipartite(&mut rng, n)
    }));
    for g in family {
        if g.is_empty() || !g.isolated_vertices().is_empty() {
            continue;
        }
        if brute_shellable(&g) || seq_cm(&g) {
            r.check(!g.degree_one_vertices().is_empty(), || format!("{g:?} has no degree-1 vertex"));
        }
    }
    r
}

/// Minimal vertex covers of the clutter generated by `edges` (minimalized),
/// computed by brute force over all vertex subsets.
fn clutter_on(c: &Clutter, edges: Vec<u64>) -> Vec<u64> {
    let n = c.vertices().len();
    let covers: Vec<u64> = (0..1u64 << n)
        .filter(|&s| edges.iter().all(|&e| e & s != 0))
        .collect();
    covers
        .iter()
        .copied()
        .filter(|&s| !covers.iter().any(|&t| t != s && bits::is_subset(t, s)))
        .collect()
}

fn main() {
    let criteria: [(&str, fn() -> Report, Duration); 7] = [
        ("1 fixture verdicts", criterion_fixtures, Duration::from_secs(10)),
        ("2 bipartite equivalence", criterion_bipartite, Duration::from_secs(600)),
        ("3 chordal shellings", criterion_chordal, Duration::from_secs(300)),
        ("4 digraph classification", criterion_classification, Duration::from_secs(600)),
        ("5 clutter suite", criterion_clutters, Duration::from_secs(900)),
        ("6 deletion stability", criterion_deletion, Duration::from_secs(600)),
        ("7 structural suites", criterion_structure, Duration::from_secs(600)),
    ];
    let mut failed = false;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let report = run();
        let elapsed = start.elapsed();
        let ok = report.failures.is_empty() && elapsed < budget;
        failed |= !ok;
        println!(
            "{} criterion {name}: {} cases ({} positive), {} failures, {:.2}s (budget {}s)",
            if ok { "PASS" } else { "FAIL" },
            report.cases,
            report.positives,
            report.failures.len(),
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        for f in report.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    if failed {
        std::process::exit(1);
    }
}
