//! Ground truth at desk scale: isomorph-free enumeration, exhaustive
//! edge/spectral maxima with witnesses, and brute-force counterparts of the
//! fast detection routines.
//!
//! Enumeration follows the canonical-construction-path method: a graph on
//! m+1 vertices is accepted only from its canonical parent, with extension
//! sets deduplicated by automorphism orbit. Both group questions reduce to
//! canonical codes of marked (vertex-colored) graphs, so the only trusted
//! primitive is the canonical labeling in [`canon`], which is itself tested
//! against an all-permutations oracle.

pub mod canon;
mod matching;

pub use canon::{canonical, canonical_graph6, SmallGraph, MAX_SMALL_N};
pub use matching::{brute_matching_number, matching_number};

use crate::detect::{self, FanParams, PackingOutcome};
use crate::graph::Graph;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::time::Instant;
use thiserror::Error;

/// Default order caps: enumeration, edge census, spectral census.
pub const DEFAULT_ENUM_CAP: usize = 11;
pub const DEFAULT_EX_CAP: usize = 10;
pub const DEFAULT_SPEX_CAP: usize = 9;

/// Isomorphism class counts of simple graphs on 0..=10 vertices.
pub const KNOWN_GRAPH_COUNTS: [u64; 11] =
    [1, 1, 2, 4, 11, 34, 156, 1044, 12346, 274_668, 12_005_168];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("order {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("packing search exhausted its budget on a scanned graph")]
    BudgetExhausted,
}

/// Census over all F-free isomorphism classes of a fixed order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CensusResult {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_edges: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_rho: Option<f64>,
    pub witnesses: Vec<String>,
    pub scanned: u64,
    pub wall_ms: u64,
}

// ---------------------------------------------------------------------------
// isomorph-free enumeration
// ---------------------------------------------------------------------------

fn accept_child(child: &SmallGraph) -> bool {
    let (_, perm) = canon::canonical(child);
    let last = perm[child.n - 1];
    canon::same_orbit(child, last, child.n - 1)
}

fn orbit_masks(g: &SmallGraph) -> Vec<u16> {
    let mut seen = HashSet::new();
    let mut out = vec![];
    for mask in 0..(1u32 << g.n) {
        let mut colors = vec![0u8; g.n];
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            colors[v] = 1;
        }
        let code = canon::canonical_colored(g, &colors).0;
        if seen.insert(code) {
            out.push(mask as u16);
        }
    }
    out
}

fn enumerate_rec(g: &SmallGraph, n: usize, visitor: &mut dyn FnMut(&SmallGraph)) -> u64 {
    if g.n == n {
        visitor(g);
        return 1;
    }
    let mut count = 0;
    for mask in orbit_masks(g) {
        let child = g.extend(mask);
        if accept_child(&child) {
            count += enumerate_rec(&child, n, visitor);
        }
    }
    count
}

/// Visits each isomorphism class of simple graphs on `n` vertices exactly
/// once (in some labeling); returns the class count.
pub fn enumerate_graphs(
    n: usize,
    visitor: &mut dyn FnMut(&SmallGraph),
) -> Result<u64, OracleError> {
    enumerate_graphs_capped(n, DEFAULT_ENUM_CAP, visitor)
}

pub fn enumerate_graphs_capped(
    n: usize,
    cap: usize,
    visitor: &mut dyn FnMut(&SmallGraph),
) -> Result<u64, OracleError> {
    if n > cap.min(MAX_SMALL_N - 1) {
        return Err(OracleError::CapExceeded { n, cap });
    }
    if n == 0 {
        visitor(&SmallGraph::empty(0));
        return Ok(1);
    }
    Ok(enumerate_rec(&SmallGraph::empty(1), n, visitor))
}

/// Class counts by brute-force dedup, independent of the augmentation logic:
/// all labeled graphs for n <= 6 (all-permutations codes), one induction
/// step on top for n = 7.
pub fn naive_class_count(n: usize) -> Result<u64, OracleError> {
    if n > 7 {
        return Err(OracleError::CapExceeded { n, cap: 7 });
    }
    if n <= 1 {
        return Ok(1);
    }
    fn level_reps(n: usize) -> Vec<SmallGraph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let mut seen = HashSet::new();
        let mut reps = vec![];
        for mask in 0u64..(1u64 << pairs.len()) {
            let mut g = SmallGraph::empty(n);
            for (i, &(u, v)) in pairs.iter().enumerate() {
                if mask >> i & 1 != 0 {
                    g.add_edge(u, v);
                }
            }
            if seen.insert(canon::brute_code(&g)) {
                reps.push(g);
            }
        }
        reps
    }
    if n <= 6 {
        return Ok(level_reps(n).len() as u64);
    }
    // n == 7: extend the 156 six-vertex classes by every subset
    let reps = level_reps(6);
    let seen: HashSet<u128> = reps
        .par_iter()
        .flat_map_iter(|g| (0u16..64).map(move |mask| canon::brute_code(&g.extend(mask))))
        .collect();
    Ok(seen.len() as u64)
}

// ---------------------------------------------------------------------------
// censuses
// ---------------------------------------------------------------------------

fn contains_forbidden(g: &SmallGraph, params: FanParams) -> Result<bool, OracleError> {
    // small graphs resolve instantly; exhaustion here would poison the census
    match detect::contains_disjoint_fans(&g.to_graph(), params) {
        PackingOutcome::Found(_) => Ok(true),
        PackingOutcome::Absent => Ok(false),
        PackingOutcome::BudgetExhausted => Err(OracleError::BudgetExhausted),
    }
}

/// Seeds for parallel census work: all F-free classes at a shallow level.
fn census_seeds(n: usize, params: FanParams) -> Result<(usize, Vec<SmallGraph>), OracleError> {
    let level = n.min(6);
    let mut seeds = vec![];
    // enumerate with pruning folded in: F-containing classes cannot extend
    // to F-free ones
    fn rec(
        g: &SmallGraph,
        level: usize,
        params: FanParams,
        out: &mut Vec<SmallGraph>,
    ) -> Result<(), OracleError> {
        if contains_forbidden(g, params)? {
            return Ok(());
        }
        if g.n == level {
            out.push(*g);
            return Ok(());
        }
        for mask in orbit_masks(g) {
            let child = g.extend(mask);
            if accept_child(&child) {
                rec(&child, level, params, out)?;
            }
        }
        Ok(())
    }
    rec(&SmallGraph::empty(1), level, params, &mut seeds)?;
    Ok((level, seeds))
}

struct ExTask {
    n: usize,
    params: FanParams,
    init_bound: i64,
}

impl ExTask {
    // returns (scanned, best, argmax classes)
    fn run(&self, seed: &SmallGraph) -> Result<(u64, i64, Vec<SmallGraph>), OracleError> {
        let mut best = self.init_bound;
        let mut arg: Vec<SmallGraph> = vec![];
        let mut scanned = 0u64;
        self.rec(seed, &mut best, &mut arg, &mut scanned)?;
        Ok((scanned, best, arg))
    }

    fn rec(
        &self,
        g: &SmallGraph,
        best: &mut i64,
        arg: &mut Vec<SmallGraph>,
        scanned: &mut u64,
    ) -> Result<(), OracleError> {
        if g.n > self.n.min(6) && contains_forbidden(g, self.params)? {
            return Ok(());
        }
        if g.n == self.n {
            *scanned += 1;
            let e = g.edge_count() as i64;
            match e.cmp(best) {
                std::cmp::Ordering::Greater => {
                    *best = e;
                    arg.clear();
                    arg.push(*g);
                }
                std::cmp::Ordering::Equal => arg.push(*g),
                _ => {}
            }
            return Ok(());
        }
        // completing to K_n adds at most C(n,2) - C(m,2) edges
        let m = g.n as i64;
        let nn = self.n as i64;
        let addable = nn * (nn - 1) / 2 - m * (m - 1) / 2;
        if (g.edge_count() as i64) + addable < *best {
            return Ok(());
        }
        for mask in orbit_masks(g) {
            let child = g.extend(mask);
            if accept_child(&child) {
                self.rec(&child, best, arg, scanned)?;
            }
        }
        Ok(())
    }
}

/// Exact maximum edge count over F-free graphs on n vertices, with the
/// maximizing classes as canonical graph6 strings. Deterministic across
/// worker counts: every seed task prunes against the same construction-based
/// initial bound and its own local improvements only.
pub fn brute_ex(n: usize, params: FanParams, cap: usize) -> Result<CensusResult, OracleError> {
    if n > cap.min(MAX_SMALL_N - 1) {
        return Err(OracleError::CapExceeded { n, cap });
    }
    let start = Instant::now();
    // sound initial bound: the family construction is F-free whenever it fits
    let init_bound = construction_lower_bound(n, params);
    let (_, seeds) = census_seeds(n, params)?;
    let task = ExTask { n, params, init_bound };
    let partials: Result<Vec<_>, OracleError> =
        seeds.par_iter().map(|s| task.run(s)).collect();
    let partials = partials?;
    let mut scanned = 0u64;
    let mut best = i64::MIN;
    let mut arg: Vec<SmallGraph> = vec![];
    for (s, b, a) in partials {
        scanned += s;
        match b.cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = b;
                arg = a;
            }
            std::cmp::Ordering::Equal => arg.extend(a),
            _ => {}
        }
    }
    // the initial bound may exceed every scanned value only if nothing
    // reached it, which cannot happen: the construction itself is scanned
    let mut witnesses: Vec<String> = arg.iter().map(canon::canonical_graph6).collect();
    witnesses.sort();
    witnesses.dedup();
    // re-certify
    for w in &witnesses {
        let g = Graph::from_graph6(w).expect("witness reparse");
        assert_eq!(g.edge_count() as i64, best, "witness edge count");
        assert_eq!(
            detect::contains_disjoint_fans(&g, params),
            PackingOutcome::Absent,
            "witness must be F-free"
        );
    }
    Ok(CensusResult {
        n,
        t: params.t,
        k: params.k,
        max_edges: Some(best),
        max_rho: None,
        witnesses,
        scanned,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

fn construction_lower_bound(n: usize, params: FanParams) -> i64 {
    let (t, k) = (params.t, params.k);
    if n < t * (2 * k + 1) {
        // forbidden graph does not fit: K_n is F-free
        return (n * (n - 1) / 2) as i64;
    }
    let (n1, value) = crate::family::optimal_n1_ex(n, t, k);
    if n1 >= k && n + 1 >= n1 + t {
        value
    } else {
        i64::MIN
    }
}

/// Exact maximum spectral radius over F-free graphs on n vertices (dense
/// Jacobi per class, tolerance 1e-9), with maximizer classes as graph6.
pub fn brute_spex(n: usize, params: FanParams, cap: usize) -> Result<CensusResult, OracleError> {
    if n > cap.min(MAX_SMALL_N - 1) {
        return Err(OracleError::CapExceeded { n, cap });
    }
    const TOL: f64 = 1e-9;
    let start = Instant::now();
    let (level, seeds) = census_seeds(n, params)?;
    let _ = level;
    let run_seed = |seed: &SmallGraph| -> Result<(u64, Vec<(f64, SmallGraph)>), OracleError> {
        let mut cands: Vec<(f64, SmallGraph)> = vec![];
        let mut scanned = 0u64;
        let mut local_max = f64::NEG_INFINITY;
        let mut stack = vec![*seed];
        while let Some(g) = stack.pop() {
            if g.n > n.min(6) && contains_forbidden(&g, params)? {
                continue;
            }
            if g.n == n {
                scanned += 1;
                let rho = small_graph_rho(&g);
                if rho > local_max {
                    local_max = rho;
                }
                if rho >= local_max - TOL {
                    cands.push((rho, g));
                }
                continue;
            }
            for mask in orbit_masks(&g) {
                let child = g.extend(mask);
                if accept_child(&child) {
                    stack.push(child);
                }
            }
        }
        cands.retain(|(r, _)| *r >= local_max - TOL);
        Ok((scanned, cands))
    };
    let partials: Result<Vec<_>, OracleError> = seeds.par_iter().map(run_seed).collect();
    let partials = partials?;
    let mut scanned = 0u64;
    let mut all: Vec<(f64, SmallGraph)> = vec![];
    for (s, c) in partials {
        scanned += s;
        all.extend(c);
    }
    let best = all.iter().map(|(r, _)| *r).fold(f64::NEG_INFINITY, f64::max);
    let mut witnesses: Vec<String> = all
        .iter()
        .filter(|(r, _)| *r >= best - TOL)
        .map(|(_, g)| canon::canonical_graph6(g))
        .collect();
    witnesses.sort();
    witnesses.dedup();
    for w in &witnesses {
        let g = Graph::from_graph6(w).expect("witness reparse");
        assert_eq!(
            detect::contains_disjoint_fans(&g, params),
            PackingOutcome::Absent,
            "witness must be F-free"
        );
    }
    Ok(CensusResult {
        n,
        t: params.t,
        k: params.k,
        max_edges: None,
        max_rho: Some(best),
        witnesses,
        scanned,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Largest adjacency eigenvalue of a small graph by dense Jacobi, used by
/// the spectral census (deterministic, independent of the power iteration).
pub fn small_graph_rho(g: &SmallGraph) -> f64 {
    let n = g.n;
    if n == 0 {
        return f64::NEG_INFINITY;
    }
    let dense: Vec<Vec<f64>> = (0..n)
        .map(|u| (0..n).map(|v| f64::from(u != v && g.has_edge(u, v))).collect())
        .collect();
    crate::spectral::rho_dense_symmetric(&dense)
}

// ---------------------------------------------------------------------------
// brute-force counterparts and inequality harnesses
// ---------------------------------------------------------------------------

/// e(G) <= nu(G) (Delta(G) + 1): the matching-degree edge bound.
pub fn check_md_bound(g: &Graph) -> bool {
    g.edge_count() <= matching_number(g) * (g.max_degree() + 1)
}

/// |A_1 cap ... cap A_m| >= sum |A_i| - (m-1) |A_1 cup ... cup A_m|.
pub fn intersection_bound_check(sets: &[Vec<usize>]) -> bool {
    if sets.is_empty() {
        return true;
    }
    let uniq: Vec<HashSet<usize>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    let mut inter = uniq[0].clone();
    let mut union = uniq[0].clone();
    for s in &uniq[1..] {
        inter = inter.intersection(s).copied().collect();
        union = union.union(s).copied().collect();
    }
    let sum: i64 = uniq.iter().map(|s| s.len() as i64).sum();
    inter.len() as i64 >= sum - (uniq.len() as i64 - 1) * union.len() as i64
}

/// Subset-based packing oracle, independent of the fast search: enumerate
/// all (2k+1)-subsets, keep those that carry a spanning fan (checked with a
/// plain permutation DFS for the Hamilton path), then solve the exact
/// disjoint set packing over the candidates.
pub fn naive_contains_disjoint_fans(g: &Graph, params: FanParams) -> bool {
    let n = g.n();
    let (t, k) = (params.t, params.k);
    let size = 2 * k + 1;
    assert!(n <= 31, "naive packing oracle is capped at 31 vertices");
    if n < t * size {
        return false;
    }
    let mut candidates: Vec<u32> = vec![];
    let mut subset: Vec<usize> = vec![];
    collect_fan_subsets(g, k, size, 0, &mut subset, &mut candidates);
    pack_disjoint(&candidates, 0, 0, t)
}

fn collect_fan_subsets(
    g: &Graph,
    k: usize,
    size: usize,
    from: usize,
    subset: &mut Vec<usize>,
    out: &mut Vec<u32>,
) {
    if subset.len() == size {
        if subset_carries_fan(g, k, subset) {
            let mut mask = 0u32;
            for &v in subset.iter() {
                mask |= 1 << v;
            }
            out.push(mask);
        }
        return;
    }
    let need = size - subset.len();
    for v in from..=(g.n().saturating_sub(need)) {
        subset.push(v);
        collect_fan_subsets(g, k, size, v + 1, subset, out);
        subset.pop();
    }
}

fn subset_carries_fan(g: &Graph, _k: usize, subset: &[usize]) -> bool {
    'center: for (ci, &c) in subset.iter().enumerate() {
        for (vi, &v) in subset.iter().enumerate() {
            if vi != ci && !g.has_edge(c, v) {
                continue 'center;
            }
        }
        let rest: Vec<usize> = subset
            .iter()
            .enumerate()
            .filter(|&(vi, _)| vi != ci)
            .map(|(_, &v)| v)
            .collect();
        if brute_hamilton_path(g, &rest) {
            return true;
        }
    }
    false
}

// plain DFS over the induced vertex list; no pruning, independent oracle
fn brute_hamilton_path(g: &Graph, verts: &[usize]) -> bool {
    let m = verts.len();
    fn rec(g: &Graph, verts: &[usize], visited: &mut Vec<bool>, last: usize, left: usize) -> bool {
        if left == 0 {
            return true;
        }
        for i in 0..verts.len() {
            if !visited[i] && g.has_edge(verts[last], verts[i]) {
                visited[i] = true;
                if rec(g, verts, visited, i, left - 1) {
                    return true;
                }
                visited[i] = false;
            }
        }
        false
    }
    for s in 0..m {
        let mut visited = vec![false; m];
        visited[s] = true;
        if rec(g, verts, &mut visited, s, m - 1) {
            return true;
        }
    }
    m == 0
}

fn pack_disjoint(cands: &[u32], from: usize, used: u32, need: usize) -> bool {
    if need == 0 {
        return true;
    }
    if need >= 2 {
        // if every remaining compatible candidate shares a vertex, no two of
        // them are disjoint; this collapses the quadratic scan on graphs
        // where a single cut vertex meets all copies
        let mut inter = u32::MAX;
        let mut count = 0usize;
        for &c in &cands[from..] {
            if c & used == 0 {
                inter &= c;
                count += 1;
            }
        }
        if count < need || inter != 0 {
            return false;
        }
    }
    for i in from..cands.len() {
        if cands[i] & used == 0 && pack_disjoint(cands, i + 1, used | cands[i], need - 1) {
            return true;
        }
    }
    false
}
