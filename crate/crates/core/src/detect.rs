//! Exact containment decisions: paths, fans, and vertex-disjoint fan packings.
//!
//! A fan on 2k+1 vertices is a center adjacent to every vertex of a path on
//! 2k vertices, so fan detection is center-first: filter vertices of degree
//! at least 2k, then look for a path on 2k vertices inside the neighborhood.
//! Path search is exact: bitmask DP when the relevant component has <= 24
//! vertices, pruned DFS otherwise. The packing search is exact backtracking
//! with a node budget; two sound pre-checks (greedy packing for a fast YES
//! and a hitting-set certificate for a fast NO) resolve the structured
//! instances long before the backtracking would have to enumerate path
//! choices.

use crate::graph::Graph;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Parameters of the forbidden graph: t vertex-disjoint fans, half-path k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanParams {
    pub t: usize,
    pub k: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FanParamsError {
    #[error("copy count t must be >= 1, got {0}")]
    BadT(usize),
    #[error("half-path length k must be >= 3, got {0}")]
    BadK(usize),
}

impl FanParams {
    pub fn new(t: usize, k: usize) -> Result<Self, FanParamsError> {
        if t < 1 {
            return Err(FanParamsError::BadT(t));
        }
        if k < 3 {
            return Err(FanParamsError::BadK(k));
        }
        Ok(FanParams { t, k })
    }

    /// Vertices of one fan copy.
    pub fn copy_order(&self) -> usize {
        2 * self.k + 1
    }
}

/// One fan copy: a center and the path inside its neighborhood, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanCopy {
    pub center: usize,
    pub path: Vec<usize>,
}

/// A collection of vertex-disjoint fan copies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanWitness {
    pub copies: Vec<FanCopy>,
}

impl FanWitness {
    /// Re-checks every adjacency and disjointness claim against `g`.
    pub fn verify(&self, g: &Graph, k: usize) -> Result<(), String> {
        let mut seen = vec![false; g.n()];
        for (ci, c) in self.copies.iter().enumerate() {
            if c.path.len() != 2 * k {
                return Err(format!(
                    "copy {ci}: path has {} vertices, want {}",
                    c.path.len(),
                    2 * k
                ));
            }
            for &v in c.path.iter().chain(std::iter::once(&c.center)) {
                if v >= g.n() {
                    return Err(format!("copy {ci}: vertex {v} out of range"));
                }
                if seen[v] {
                    return Err(format!("copy {ci}: vertex {v} reused"));
                }
                seen[v] = true;
            }
            for w in c.path.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(format!("copy {ci}: path edge ({},{}) missing", w[0], w[1]));
                }
            }
            for &v in &c.path {
                if !g.has_edge(c.center, v) {
                    return Err(format!("copy {ci}: center {} not adjacent to {v}", c.center));
                }
            }
        }
        Ok(())
    }
}

/// Result of the disjoint-packing search. `BudgetExhausted` is distinct from
/// `Absent`: the search is exact only when it terminates within budget.
#[derive(Debug, Clone, PartialEq)]
pub enum PackingOutcome {
    Found(FanWitness),
    Absent,
    BudgetExhausted,
}

impl PackingOutcome {
    pub fn witness(&self) -> Option<&FanWitness> {
        match self {
            PackingOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

/// Default node budget for the backtracking packing search.
pub const DEFAULT_PACKING_BUDGET: u64 = 10_000_000;

// ---------------------------------------------------------------------------
// bit helpers
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn new(n: usize) -> Self {
        Bits {
            words: vec![0; n.div_ceil(64).max(1)],
        }
    }
    pub(crate) fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 != 0
    }
    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }
    pub(crate) fn clear(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }
}

/// Vertices of `row` not excluded by `avoid`, ascending.
fn masked_neighbors(row: &[u64], avoid: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, (&r, &a)) in row.iter().zip(avoid.words.iter()).enumerate() {
        let mut w = r & !a;
        while w != 0 {
            out.push(wi * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

fn masked_degree(row: &[u64], avoid: &Bits) -> usize {
    row.iter()
        .zip(avoid.words.iter())
        .map(|(&r, &a)| (r & !a).count_ones() as usize)
        .sum()
}

// neighbors restricted to `allowed` and not in `used`
fn allowed_neighbors(row: &[u64], allowed: &Bits, used: &Bits) -> Vec<usize> {
    let mut out = Vec::new();
    for (wi, ((&r, &a), &u)) in row
        .iter()
        .zip(allowed.words.iter())
        .zip(used.words.iter())
        .enumerate()
    {
        let mut w = r & a & !u;
        while w != 0 {
            out.push(wi * 64 + w.trailing_zeros() as usize);
            w &= w - 1;
        }
    }
    out
}

fn allowed_degree(row: &[u64], allowed: &Bits, used: &Bits) -> usize {
    row.iter()
        .zip(allowed.words.iter())
        .zip(used.words.iter())
        .map(|((&r, &a), &u)| (r & a & !u).count_ones() as usize)
        .sum()
}

// ---------------------------------------------------------------------------
// path search
// ---------------------------------------------------------------------------

/// True iff `g` contains a path on `m` vertices as a subgraph.
pub fn has_path_on(g: &Graph, m: usize) -> bool {
    find_path_on(g, m).is_some()
}

/// A path on `m` vertices if one exists, as a vertex sequence.
pub fn find_path_on(g: &Graph, m: usize) -> Option<Vec<usize>> {
    if m == 0 {
        return Some(vec![]);
    }
    if m == 1 {
        return (g.n() >= 1).then(|| vec![0]);
    }
    for comp in g.components() {
        if comp.len() < m {
            continue;
        }
        let h = g.induced(&comp);
        if alternation_bound(&h) < m {
            continue;
        }
        let local = if h.n() <= 24 { dp_path(&h, m) } else { dfs_path(&h, m) };
        if let Some(p) = local {
            return Some(p.into_iter().map(|i| comp[i]).collect());
        }
    }
    None
}

/// Upper bound on the order of any path in `h`: between two consecutive
/// vertices of an independent set I a path must visit a vertex outside I, so
/// no path has more than 2(n-|I|)+1 vertices. I is grown greedily by minimum
/// degree. Decisive on join-like neighborhoods where most of the graph is an
/// independent class.
fn alternation_bound(h: &Graph) -> usize {
    let n = h.n();
    let mut removed = Bits::new(n);
    let mut remaining = n;
    let mut independent = 0usize;
    while remaining > 0 {
        let mut best = usize::MAX;
        let mut best_deg = usize::MAX;
        for v in 0..n {
            if !removed.get(v) {
                let d = masked_degree(h.row(v), &removed);
                if d < best_deg {
                    best_deg = d;
                    best = v;
                }
            }
        }
        independent += 1;
        removed.set(best);
        remaining -= 1;
        for u in masked_neighbors(h.row(best), &removed) {
            removed.set(u);
            remaining -= 1;
        }
    }
    2 * (n - independent) + 1
}

/// Bitmask DP: ends[mask] holds the possible final vertices of a path whose
/// vertex set is exactly `mask`. Component order must be <= 24.
fn dp_path(h: &Graph, m: usize) -> Option<Vec<usize>> {
    let c = h.n();
    debug_assert!(c <= 24 && m >= 2);
    let adj: Vec<u32> = (0..c)
        .map(|v| {
            let mut a = 0u32;
            for u in h.neighbors(v) {
                a |= 1 << u;
            }
            a
        })
        .collect();
    let mut ends = vec![0u32; 1usize << c];
    for v in 0..c {
        ends[1usize << v] = 1 << v;
    }
    let full: u32 = ((1u64 << c) - 1) as u32;
    for mask in 1u32..=full {
        let e = ends[mask as usize];
        if e == 0 {
            continue;
        }
        let pc = mask.count_ones() as usize;
        if pc == m {
            return Some(reconstruct_dp(&ends, &adj, mask, e.trailing_zeros() as usize, m));
        }
        if pc > m {
            continue;
        }
        let mut rem = e;
        while rem != 0 {
            let v = rem.trailing_zeros() as usize;
            rem &= rem - 1;
            let mut ext = adj[v] & !mask;
            while ext != 0 {
                let u = ext.trailing_zeros() as usize;
                ext &= ext - 1;
                ends[(mask | 1 << u) as usize] |= 1 << u;
            }
        }
    }
    None
}

fn reconstruct_dp(ends: &[u32], adj: &[u32], mut mask: u32, mut end: usize, m: usize) -> Vec<usize> {
    let mut path = vec![end];
    for _ in 1..m {
        let prev_mask = mask & !(1 << end);
        let cands = ends[prev_mask as usize] & adj[end];
        debug_assert_ne!(cands, 0);
        let p = cands.trailing_zeros() as usize;
        path.push(p);
        mask = prev_mask;
        end = p;
    }
    path.reverse();
    path
}

/// DFS with reachability pruning for components above the DP size.
fn dfs_path(h: &Graph, m: usize) -> Option<Vec<usize>> {
    let n = h.n();
    let mut visited = Bits::new(n);
    let mut path: Vec<usize> = Vec::with_capacity(m);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (h.degree(v), v));
    for s in starts {
        visited.set(s);
        path.push(s);
        if dfs_extend(h, m, &mut visited, &mut path) {
            return Some(path);
        }
        path.pop();
        visited.clear(s);
    }
    None
}

fn dfs_extend(h: &Graph, m: usize, visited: &mut Bits, path: &mut Vec<usize>) -> bool {
    if path.len() == m {
        return true;
    }
    let cur = *path.last().unwrap();
    let mut nexts = masked_neighbors(h.row(cur), visited);
    nexts.sort_by_key(|&v| (masked_degree(h.row(v), visited), v));
    for v in nexts {
        if !reachable_at_least(h, v, visited, m - path.len()) {
            continue;
        }
        visited.set(v);
        path.push(v);
        if dfs_extend(h, m, visited, path) {
            return true;
        }
        path.pop();
        visited.clear(v);
    }
    false
}

/// BFS from `from` over unvisited vertices; early exit once `need` reached.
fn reachable_at_least(h: &Graph, from: usize, visited: &Bits, need: usize) -> bool {
    if need <= 1 {
        return true;
    }
    let mut seen = visited.clone();
    seen.set(from);
    let mut frontier = vec![from];
    let mut count = 1usize;
    while let Some(v) = frontier.pop() {
        for u in masked_neighbors(h.row(v), &seen) {
            seen.set(u);
            count += 1;
            if count >= need {
                return true;
            }
            frontier.push(u);
        }
    }
    false
}

/// True iff `g` has no path on 2k vertices.
pub fn is_p2k_free(g: &Graph, k: usize) -> bool {
    assert!(k >= 3);
    !has_path_on(g, 2 * k)
}

// ---------------------------------------------------------------------------
// single fan
// ---------------------------------------------------------------------------

/// A single fan copy if `g` contains one; the witness is verified before
/// return. Centers are tried in decreasing degree order, ties by lowest label.
pub fn contains_fan(g: &Graph, k: usize) -> Option<FanWitness> {
    assert!(k >= 3);
    let none = Bits::new(g.n());
    contains_fan_avoiding(g, &none, k).map(|c| {
        let w = FanWitness { copies: vec![c] };
        debug_assert_eq!(w.verify(g, k), Ok(()));
        w
    })
}

fn contains_fan_avoiding(g: &Graph, avoid: &Bits, k: usize) -> Option<FanCopy> {
    let mut centers: Vec<usize> = (0..g.n())
        .filter(|&v| !avoid.get(v) && masked_degree(g.row(v), avoid) >= 2 * k)
        .collect();
    centers.sort_by(|&a, &b| {
        masked_degree(g.row(b), avoid)
            .cmp(&masked_degree(g.row(a), avoid))
            .then(a.cmp(&b))
    });
    for v in centers {
        let nb = masked_neighbors(g.row(v), avoid);
        let h = g.induced(&nb);
        if let Some(local) = find_path_on(&h, 2 * k) {
            return Some(FanCopy {
                center: v,
                path: local.into_iter().map(|i| nb[i]).collect(),
            });
        }
    }
    None
}

// ---------------------------------------------------------------------------
// disjoint packing
// ---------------------------------------------------------------------------

/// Searches for t vertex-disjoint fan copies with the default node budget.
pub fn contains_disjoint_fans(g: &Graph, params: FanParams) -> PackingOutcome {
    contains_disjoint_fans_with_budget(g, params, DEFAULT_PACKING_BUDGET)
}

/// Exact packing search. Order of attack:
/// 1. greedy packing (finds a witness on most packable inputs immediately);
/// 2. hitting-set certificate: grow a set S from the highest-degree vertex of
///    each fan found in G-S; if G-S becomes fan-free while |S| < t, every
///    copy of the fan meets S, so no t disjoint copies exist;
/// 3. full backtracking over centers (decreasing degree, ties by label) and
///    neighborhood paths, with the node budget.
pub fn contains_disjoint_fans_with_budget(
    g: &Graph,
    params: FanParams,
    budget: u64,
) -> PackingOutcome {
    let (t, k) = (params.t, params.k);
    assert!(t >= 1 && k >= 3);
    if g.n() < t * (2 * k + 1) {
        return PackingOutcome::Absent;
    }
    if t == 1 {
        return match contains_fan(g, k) {
            Some(w) => PackingOutcome::Found(w),
            None => PackingOutcome::Absent,
        };
    }

    // greedy phase
    let mut used = Bits::new(g.n());
    let mut copies = Vec::new();
    for _ in 0..t {
        match contains_fan_avoiding(g, &used, k) {
            Some(c) => {
                used.set(c.center);
                for &v in &c.path {
                    used.set(v);
                }
                copies.push(c);
            }
            None => break,
        }
    }
    if copies.len() == t {
        let w = FanWitness { copies };
        debug_assert_eq!(w.verify(g, k), Ok(()));
        return PackingOutcome::Found(w);
    }

    // hitting-set certificate
    let mut hit = Bits::new(g.n());
    for round in 0..t {
        match contains_fan_avoiding(g, &hit, k) {
            Some(c) => {
                let pick = std::iter::once(c.center)
                    .chain(c.path.iter().copied())
                    .max_by_key(|&v| (masked_degree(g.row(v), &hit), std::cmp::Reverse(v)))
                    .unwrap();
                hit.set(pick);
            }
            None => {
                debug_assert!(round < t);
                return PackingOutcome::Absent;
            }
        }
    }

    // full backtracking
    let mut centers: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) >= 2 * k).collect();
    centers.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut search = PackSearch {
        g,
        k,
        centers,
        nodes_left: budget,
        stack: Vec::new(),
    };
    let mut used = Bits::new(g.n());
    match search.place_copies(&mut used, t, 0) {
        Err(Exhausted) => PackingOutcome::BudgetExhausted,
        Ok(true) => {
            let w = FanWitness {
                copies: search.stack,
            };
            debug_assert_eq!(w.verify(g, k), Ok(()));
            PackingOutcome::Found(w)
        }
        Ok(false) => PackingOutcome::Absent,
    }
}

struct Exhausted;

struct PackSearch<'a> {
    g: &'a Graph,
    k: usize,
    centers: Vec<usize>,
    nodes_left: u64,
    stack: Vec<FanCopy>,
}

impl PackSearch<'_> {
    fn tick(&mut self) -> Result<(), Exhausted> {
        if self.nodes_left == 0 {
            return Err(Exhausted);
        }
        self.nodes_left -= 1;
        Ok(())
    }

    // Copies are committed in the fixed center order, a sound symmetry break:
    // any packing can be listed with its centers in that order.
    fn place_copies(
        &mut self,
        used: &mut Bits,
        copies_left: usize,
        from: usize,
    ) -> Result<bool, Exhausted> {
        if copies_left == 0 {
            return Ok(true);
        }
        for pos in from..self.centers.len() {
            let v = self.centers[pos];
            if used.get(v) || masked_degree(self.g.row(v), used) < 2 * self.k {
                continue;
            }
            self.tick()?;
            let nb = masked_neighbors(self.g.row(v), used);
            // cheap decision first: skip centers whose free neighborhood has
            // no long path at all
            let h = self.g.induced(&nb);
            if alternation_bound(&h) < 2 * self.k {
                continue;
            }
            if h.n() <= 24 && dp_path(&h, 2 * self.k).is_none() {
                continue;
            }
            let mut allowed = Bits::new(self.g.n());
            for &u in &nb {
                allowed.set(u);
            }
            used.set(v);
            let mut path = Vec::with_capacity(2 * self.k);
            let found = self.extend_copy_path(used, &allowed, v, &mut path, copies_left, pos);
            match found {
                Ok(true) => return Ok(true),
                Ok(false) => {
                    used.clear(v);
                }
                Err(e) => {
                    used.clear(v);
                    return Err(e);
                }
            }
        }
        Ok(false)
    }

    // Enumerates paths on 2k vertices inside `allowed`, recursing into the
    // next copy each time one completes. Path vertices are tracked in `used`.
    fn extend_copy_path(
        &mut self,
        used: &mut Bits,
        allowed: &Bits,
        center: usize,
        path: &mut Vec<usize>,
        copies_left: usize,
        center_pos: usize,
    ) -> Result<bool, Exhausted> {
        self.tick()?;
        if path.len() == 2 * self.k {
            self.stack.push(FanCopy {
                center,
                path: path.clone(),
            });
            let sub = self.place_copies(used, copies_left - 1, center_pos + 1);
            match sub {
                Ok(true) => return Ok(true),
                Ok(false) => {
                    self.stack.pop();
                    return Ok(false);
                }
                Err(e) => {
                    self.stack.pop();
                    return Err(e);
                }
            }
        }
        let candidates = if path.is_empty() {
            let mut starts = allowed_neighbors(self.g.row(center), allowed, used);
            starts.sort_by_key(|&v| (allowed_degree(self.g.row(v), allowed, used), v));
            starts
        } else {
            let cur = *path.last().unwrap();
            let mut nexts = allowed_neighbors(self.g.row(cur), allowed, used);
            nexts.sort_by_key(|&v| (allowed_degree(self.g.row(v), allowed, used), v));
            nexts
        };
        for v in candidates {
            used.set(v);
            path.push(v);
            let r = self.extend_copy_path(used, allowed, center, path, copies_left, center_pos);
            path.pop();
            used.clear(v);
            match r {
                Ok(true) => return Ok(true),
                Ok(false) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(false)
    }
}
