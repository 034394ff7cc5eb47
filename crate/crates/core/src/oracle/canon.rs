//! Canonical labeling for graphs of order <= 12, via iterated color
//! refinement plus individualization backtracking. No partial pruning: at
//! this order the refinement discretizes almost every graph after one or two
//! individualizations, and the rare highly regular cases stay cheap.
//!
//! The leaf code packs the (input) vertex colors and the permuted upper
//! triangle into a u128 and the canonical form maximizes it. Colored codes
//! double as exact orbit tests: vertices u, v lie in one automorphism orbit
//! iff marking u and marking v give equal codes, and two candidate extension
//! sets lie in one orbit iff their membership colorings give equal codes.

use crate::graph::Graph;

pub const MAX_SMALL_N: usize = 12;

/// Fixed-capacity graph with one u16 adjacency row per vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SmallGraph {
    pub n: usize,
    rows: [u16; MAX_SMALL_N],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_SMALL_N);
        SmallGraph { n, rows: [0; MAX_SMALL_N] }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut s = Self::empty(g.n());
        for (u, v) in g.edges() {
            s.add_edge(u, v);
        }
        s
    }

    pub fn to_graph(self) -> Graph {
        let mut edges = vec![];
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(self.n, &edges)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn row(&self, v: usize) -> u16 {
        self.rows[v]
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Extends by one vertex adjacent to the set `mask`.
    pub fn extend(&self, mask: u16) -> SmallGraph {
        let mut g = *self;
        let v = g.n;
        g.n += 1;
        let mut m = mask;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            g.add_edge(u, v);
        }
        g
    }

    /// Relabels so that position i holds old vertex perm[i].
    pub fn relabeled(&self, perm: &[usize]) -> SmallGraph {
        let mut g = Self::empty(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if self.has_edge(perm[i], perm[j]) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }
}

fn leaf_code(g: &SmallGraph, colors: &[u8], perm: &[usize]) -> u128 {
    let mut color_part: u64 = 0;
    for &p in perm.iter() {
        color_part = (color_part << 2) | colors[p] as u64;
    }
    let mut adj: u64 = 0;
    for i in 0..g.n {
        for j in (i + 1)..g.n {
            adj = (adj << 1) | u64::from(g.has_edge(perm[i], perm[j]));
        }
    }
    ((color_part as u128) << 64) | adj as u128
}

/// 1-WL refinement to a fixed point; returns compact ids assigned in sorted
/// signature order, so the ids are isomorphism-invariant.
fn refine(g: &SmallGraph, colors: &[u16]) -> Vec<u16> {
    let n = g.n;
    let mut cur: Vec<u16> = colors.to_vec();
    loop {
        let mut sigs: Vec<(u16, Vec<u16>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u16> = (0..n)
                    .filter(|&u| g.has_edge(v, u))
                    .map(|u| cur[u])
                    .collect();
                nb.sort_unstable();
                (cur[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0u16; n];
        let mut id = 0u16;
        for w in 0..n {
            if w > 0 && (sigs[w].0, &sigs[w].1) != (sigs[w - 1].0, &sigs[w - 1].1) {
                id += 1;
            }
            next[sigs[w].2] = id;
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

struct CanonSearch<'a> {
    g: &'a SmallGraph,
    input_colors: &'a [u8],
    best: Option<(u128, Vec<usize>)>,
}

impl CanonSearch<'_> {
    fn run(&mut self, colors: Vec<u16>) {
        let refined = refine(self.g, &colors);
        let n = self.g.n;
        // locate the first non-singleton class
        let mut counts = vec![0usize; n + 1];
        for &c in &refined {
            counts[c as usize] += 1;
        }
        let target = (0..n).find(|&c| counts[c] >= 2);
        // When every cell pair is homogeneous (complete or empty between and
        // within cells) all cell-respecting orders give one code, so branching
        // is pointless. This collapses the factorial tree of complete and
        // complete-multipartite graphs.
        if target.is_some() && homogeneous(self.g, &refined) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.sort_by_key(|&v| (refined[v], v));
            let code = leaf_code(self.g, self.input_colors, &perm);
            if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                self.best = Some((code, perm));
            }
            return;
        }
        match target {
            None => {
                // discrete: order vertices by refined color
                let mut perm: Vec<usize> = (0..n).collect();
                perm.sort_by_key(|&v| refined[v]);
                let code = leaf_code(self.g, self.input_colors, &perm);
                if self.best.as_ref().is_none_or(|(b, _)| code > *b) {
                    self.best = Some((code, perm));
                }
            }
            Some(cell) => {
                for v in 0..n {
                    if refined[v] as usize != cell {
                        continue;
                    }
                    let mut next: Vec<u16> = refined.iter().map(|&c| 2 * c + 1).collect();
                    next[v] = 2 * refined[v];
                    self.run(next);
                }
            }
        }
    }
}

fn homogeneous(g: &SmallGraph, refined: &[u16]) -> bool {
    let n = g.n;
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for (v, &rc) in refined.iter().enumerate().take(n) {
        let c = rc as usize;
        if cells.len() <= c {
            cells.resize(c + 1, vec![]);
        }
        cells[c].push(v);
    }
    for (ai, a) in cells.iter().enumerate() {
        // within-cell: complete or empty
        let mut need: Option<bool> = None;
        for i in 0..a.len() {
            for j in (i + 1)..a.len() {
                let e = g.has_edge(a[i], a[j]);
                match need {
                    None => need = Some(e),
                    Some(x) if x != e => return false,
                    _ => {}
                }
            }
        }
        // cross-cell: all or nothing
        for b in cells.iter().skip(ai + 1) {
            let mut need: Option<bool> = None;
            for &u in a {
                for &w in b {
                    let e = g.has_edge(u, w);
                    match need {
                        None => need = Some(e),
                        Some(x) if x != e => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}

/// Canonical form of a vertex-colored graph: the maximal leaf code and a
/// permutation achieving it.
pub fn canonical_colored(g: &SmallGraph, colors: &[u8]) -> (u128, Vec<usize>) {
    debug_assert_eq!(colors.len(), g.n);
    if g.n == 0 {
        return (0, vec![]);
    }
    let mut search = CanonSearch {
        g,
        input_colors: colors,
        best: None,
    };
    search.run(colors.iter().map(|&c| c as u16).collect());
    search.best.unwrap()
}

/// Canonical form with uniform colors.
pub fn canonical(g: &SmallGraph) -> (u128, Vec<usize>) {
    canonical_colored(g, &vec![0u8; g.n])
}

/// graph6 string of the canonical representative of `g`'s class.
pub fn canonical_graph6(g: &SmallGraph) -> String {
    let (_, perm) = canonical(g);
    g.relabeled(&perm).to_graph().to_graph6()
}

/// Exact orbit test: u and v lie in one Aut(g) orbit iff the mark-u and
/// mark-v colorings are isomorphic as colored graphs.
pub fn same_orbit(g: &SmallGraph, u: usize, v: usize) -> bool {
    if u == v {
        return true;
    }
    let mut cu = vec![0u8; g.n];
    cu[u] = 1;
    let mut cv = vec![0u8; g.n];
    cv[v] = 1;
    canonical_colored(g, &cu).0 == canonical_colored(g, &cv).0
}

/// Brute-force canonical code over all n! permutations. Test oracle for the
/// search; only sensible for n <= 7.
pub fn brute_code(g: &SmallGraph) -> u128 {
    let n = g.n;
    let colors = vec![0u8; n];
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = 0u128;
    permute(&mut perm, 0, &mut |p| {
        let c = leaf_code(g, &colors, p);
        if c > best {
            best = c;
        }
    });
    best
}

fn permute(perm: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
    if i == perm.len() {
        f(perm);
        return;
    }
    for j in i..perm.len() {
        perm.swap(i, j);
        permute(perm, i + 1, f);
        perm.swap(i, j);
    }
}
