//! Property tests for the structural invariants: join/union edge counts,
//! graph6 round trips, detection soundness against the naive oracles, and
//! the basic spectral inequalities.

use fan_extremal::detect::{self, FanParams, PackingOutcome};
use fan_extremal::graph::{Graph, GraphJson};
use fan_extremal::oracle;
use fan_extremal::spectral;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .zip(mask.iter())
                .filter(|(_, &m)| m)
                .map(|(&e, _)| e)
                .collect();
            Graph::from_edges(n, &edges)
        })
    })
}

proptest! {
    #[test]
    fn join_edge_count(g in arb_graph(10), h in arb_graph(10)) {
        let j = Graph::join(&g, &h);
        prop_assert_eq!(j.edge_count(), g.edge_count() + h.edge_count() + g.n() * h.n());
        prop_assert_eq!(j.n(), g.n() + h.n());
    }

    #[test]
    fn disjoint_union_edge_count(g in arb_graph(10), h in arb_graph(10)) {
        let u = Graph::disjoint_union(&[g.clone(), h.clone()]);
        prop_assert_eq!(u.edge_count(), g.edge_count() + h.edge_count());
    }

    #[test]
    fn graph6_round_trip(g in arb_graph(20)) {
        let s = g.to_graph6();
        prop_assert_eq!(Graph::from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn induced_on_full_vertex_set_is_identity(g in arb_graph(12)) {
        let all: Vec<usize> = (0..g.n()).collect();
        prop_assert_eq!(g.induced(&all), g);
    }

    #[test]
    fn json_round_trip(g in arb_graph(12)) {
        let j = serde_json::to_string(&g.to_json()).unwrap();
        let back: GraphJson = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(Graph::from_json(&back), g);
    }

    #[test]
    fn edge_addition_never_removes_a_fan(g in arb_graph(10), extra in any::<u64>()) {
        if g.n() < 2 { return Ok(()); }
        let u = (extra % g.n() as u64) as usize;
        let v = ((extra >> 16) % g.n() as u64) as usize;
        let had = detect::contains_fan(&g, 3).is_some();
        if u != v {
            let g2 = g.with_edge(u, v);
            let has = detect::contains_fan(&g2, 3).is_some();
            prop_assert!(!had || has);
        }
    }

    #[test]
    fn rho_at_least_average_degree(g in arb_graph(12)) {
        if g.n() == 0 { return Ok(()); }
        let rho = spectral::spectral_radius(&g, 1e-10).unwrap().rho;
        let avg = 2.0 * g.edge_count() as f64 / g.n() as f64;
        prop_assert!(rho >= avg - 1e-8, "rho={rho} avg={avg}");
    }
}

fn random_gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = vec![];
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

#[test]
fn detection_agrees_with_naive_oracle_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfa2f);
    let mut checked = 0;
    while checked < 500 {
        let n = rng.gen_range(7..=12);
        let p = [0.15, 0.3, 0.5][rng.gen_range(0..3)];
        let g = random_gnp(&mut rng, n, p);
        for (t, k) in [(1usize, 3usize), (1, 4), (2, 3)] {
            if n < t * (2 * k + 1) {
                continue;
            }
            let params = FanParams::new(t, k).unwrap();
            let fast = match detect::contains_disjoint_fans(&g, params) {
                PackingOutcome::Found(w) => {
                    assert_eq!(w.verify(&g, k), Ok(()), "witness must verify");
                    true
                }
                PackingOutcome::Absent => false,
                PackingOutcome::BudgetExhausted => panic!("budget exhausted on n={n}"),
            };
            let naive = oracle::naive_contains_disjoint_fans(&g, params);
            assert_eq!(fast, naive, "disagreement at n={n} p={p} t={t} k={k}: {g:?}");
        }
        checked += 1;
    }
}

#[test]
fn path_detection_agrees_with_bruteforce_on_random_graphs() {
    // independent check of has_path_on against a plain permutation DFS
    let mut rng = ChaCha8Rng::seed_from_u64(0xbeef);
    for _ in 0..300 {
        let n = rng.gen_range(2..=10);
        let g = random_gnp(&mut rng, n, 0.35);
        for m in 2..=n {
            let fast = detect::has_path_on(&g, m);
            let slow = brute_has_path(&g, m);
            assert_eq!(fast, slow, "n={n} m={m} g={g:?}");
        }
    }
}

fn brute_has_path(g: &Graph, m: usize) -> bool {
    fn rec(g: &Graph, visited: &mut Vec<bool>, last: usize, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for v in 0..g.n() {
            if !visited[v] && g.has_edge(last, v) {
                visited[v] = true;
                if rec(g, visited, v, left - 1) {
                    return true;
                }
                visited[v] = false;
            }
        }
        false
    }
    if m <= 1 {
        return g.n() >= m;
    }
    for s in 0..g.n() {
        let mut visited = vec![false; g.n()];
        visited[s] = true;
        if rec(g, &mut visited, s, m - 1) {
            return true;
        }
    }
    false
}

#[test]
fn matching_agrees_with_bruteforce_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3141);
    for _ in 0..200 {
        let n = rng.gen_range(2..=10);
        let g = random_gnp(&mut rng, n, 0.4);
        assert_eq!(
            oracle::matching_number(&g),
            oracle::brute_matching_number(&g),
            "{g:?}"
        );
        assert!(oracle::check_md_bound(&g));
    }
}

#[test]
fn intersection_bound_on_random_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2718);
    for _ in 0..300 {
        let m = rng.gen_range(1..=5);
        let sets: Vec<Vec<usize>> = (0..m)
            .map(|_| (0..20).filter(|_| rng.gen_bool(0.4)).collect())
            .collect();
        assert!(oracle::intersection_bound_check(&sets));
    }
}

#[test]
fn naive_oracle_confirms_the_constructed_extremal_graph_at_n30() {
    // independent brute-force subgraph search on the (n=30, t=2, k=3)
    // construction: enumerate all 7-subsets, test each for a spanning fan,
    // then solve the exact set packing
    use fan_extremal::family;
    let (n1, _) = family::optimal_n1_ex(30, 2, 3);
    let g = family::build_extremal(30, 2, 3, n1).unwrap();
    let params = FanParams::new(2, 3).unwrap();
    assert!(!oracle::naive_contains_disjoint_fans(&g, params));
    assert_eq!(
        detect::contains_disjoint_fans(&g, params),
        PackingOutcome::Absent
    );
    // the same graph does contain a single fan (the universal vertex centers
    // one), so the t=2 absence is about disjointness, not absence of fans
    assert!(oracle::naive_contains_disjoint_fans(&g, FanParams::new(1, 3).unwrap()));
}

#[test]
fn adding_edges_strictly_increases_rho_of_connected_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1618);
    let mut done = 0;
    while done < 40 {
        let n = rng.gen_range(4..=12);
        let g = random_gnp(&mut rng, n, 0.5);
        if g.components().len() != 1 || g.edge_count() == n * (n - 1) / 2 {
            continue;
        }
        let (u, v) = loop {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && !g.has_edge(u, v) {
                break (u, v);
            }
        };
        let r1 = spectral::spectral_radius(&g, 1e-11).unwrap().rho;
        let r2 = spectral::spectral_radius(&g.with_edge(u, v), 1e-11).unwrap().rho;
        assert!(r2 > r1, "n={n} rho did not increase: {r1} -> {r2}");
        done += 1;
    }
}
