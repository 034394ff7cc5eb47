//! The extremal family: closed-form edge counts, optimal class sizes, and
//! construction/verification of family members.
//!
//! A member is K_{t-1} joined to a graph built from the complete bipartite
//! K_{n1,n2} by adding edges inside the size-n1 class so that it induces a
//! P_{2k}-free graph that is (k-1)-regular, or nearly so (one vertex of
//! degree k-2) when (k-1)*n1 is odd. Vertex labels are block-contiguous:
//! the t-1 universal vertices first, then the n1 class, then the n2 class.

use crate::detect;
use crate::graph::{Graph, VertexSet};
use crate::ratio::{rat, rint, Rat};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("inner class size {n1} is below k={k}")]
    InnerTooSmall { n1: usize, k: usize },
    #[error("sizes infeasible: n={n}, t={t}, n1={n1} leaves a negative outer class")]
    NegativeOuterClass { n: usize, t: usize, n1: usize },
    #[error("t must be >= 1, got {0}")]
    BadT(usize),
    #[error("k must be >= 3, got {0}")]
    BadK(usize),
    #[error("operation requires t >= 2, got t={0}")]
    RequiresTAtLeast2(usize),
}

fn check_tk(t: usize, k: usize) -> Result<(), FamilyError> {
    if t < 1 {
        return Err(FamilyError::BadT(t));
    }
    if k < 3 {
        return Err(FamilyError::BadK(k));
    }
    Ok(())
}

/// One member of the family, described by its sizes. `r` measures how far
/// n1 sits from an even split of the n-t+1 non-universal vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilySpec {
    pub n: usize,
    pub t: usize,
    pub k: usize,
    pub n1: usize,
    pub n2: usize,
    pub r: Rat,
}

impl FamilySpec {
    pub fn new(n: usize, t: usize, k: usize, n1: usize) -> Result<Self, FamilyError> {
        check_tk(t, k)?;
        if n1 < k {
            return Err(FamilyError::InnerTooSmall { n1, k });
        }
        if n + 1 < n1 + t {
            return Err(FamilyError::NegativeOuterClass { n, t, n1 });
        }
        let n2 = n + 1 - n1 - t;
        let r = rint(n1 as i128) - rat((n - t + 1) as i128, 2);
        Ok(FamilySpec { n, t, k, n1, n2, r })
    }

    /// True iff the inner class can be exactly (k-1)-regular.
    pub fn inner_regular(&self) -> bool {
        ((self.k - 1) * self.n1).is_multiple_of(2)
    }
}

/// f(n1, n2, t) = C(t-1,2) + (t-1)(n1+n2) + floor((k-1)n1/2) + n1*n2,
/// the size of any family member with these class sizes. Exact integers.
pub fn edge_formula(n1: usize, n2: usize, t: usize, k: usize) -> i64 {
    let (n1, n2, t, k) = (n1 as i64, n2 as i64, t as i64, k as i64);
    (t - 1) * (t - 2) / 2 + (t - 1) * (n1 + n2) + (k - 1) * n1 / 2 + n1 * n2
}

/// The edge-maximizing n1 and the maximum value: n1 is the floor of
/// (n-t+1)/2 + (k-1)/4 when 2n-2t+k is divisible by 4, the ceiling
/// otherwise. Callers must keep n large enough that n2 stays nonnegative.
pub fn optimal_n1_ex(n: usize, t: usize, k: usize) -> (usize, i64) {
    assert!(t >= 1 && k >= 3 && n + 1 >= t);
    let s = 2 * (n - t + 1) + (k - 1); // 4*((n-t+1)/2 + (k-1)/4)
    let n1 = if (2 * n + k).wrapping_sub(2 * t).is_multiple_of(4) {
        s / 4
    } else {
        s.div_ceil(4)
    };
    debug_assert!(n + 1 >= n1 + t, "n too small for a nonnegative outer class");
    let n2 = n + 1 - n1 - t;
    (n1, edge_formula(n1, n2, t, k))
}

/// Maximum of `edge_formula` over all feasible n1, by exhaustive loop.
/// Test oracle for `optimal_n1_ex`; O(n) but trivially cheap.
pub fn brute_optimal_n1_ex(n: usize, t: usize, k: usize) -> (Vec<usize>, i64) {
    let mut best = i64::MIN;
    let mut arg = vec![];
    for n1 in 0..=(n + 1 - t) {
        let v = edge_formula(n1, n + 1 - t - n1, t, k);
        match v.cmp(&best) {
            std::cmp::Ordering::Greater => {
                best = v;
                arg = vec![n1];
            }
            std::cmp::Ordering::Equal => arg.push(n1),
            _ => {}
        }
    }
    (arg, best)
}

/// The spectral-radius-maximizing n1 values (one or two), by case on the
/// parities of k and n (t=1) or of k and n-t mod 4 (t>=2).
pub fn optimal_n1_spex(n: usize, t: usize, k: usize) -> Vec<usize> {
    assert!(t >= 1 && k >= 3 && n + 1 >= t);
    if t == 1 {
        if k % 2 == 1 {
            if n.is_multiple_of(2) {
                vec![n / 2]
            } else {
                vec![(n - 1) / 2, n.div_ceil(2)]
            }
        } else {
            match n % 4 {
                0 => vec![n / 2],
                1 => vec![(n - 1) / 2],
                2 => vec![n / 2 - 1, n / 2 + 1],
                _ => vec![n.div_ceil(2)],
            }
        }
    } else {
        let d = (n - t) % 4;
        if k % 2 == 1 || d == 2 || d == 3 {
            vec![(n - t + 2) / 2] // ceil((n-t+1)/2)
        } else if d == 0 {
            vec![(n - t).div_ceil(2)]
        } else {
            vec![(n - t + 3) / 2] // ceil((n-t+2)/2)
        }
    }
}

/// The deviation r of the spectral optimum from the even split, for t >= 2.
/// Satisfies (n-t+1)/2 + r = optimal_n1_spex(n, t, k).
pub fn r_of_spec(n: usize, t: usize, k: usize) -> Result<Rat, FamilyError> {
    check_tk(t, k)?;
    if t < 2 {
        return Err(FamilyError::RequiresTAtLeast2(t));
    }
    Ok(if k % 2 == 1 {
        if (n - t) % 2 == 1 {
            rint(0)
        } else {
            rat(1, 2)
        }
    } else {
        match (n - t) % 4 {
            3 => rint(0),
            0 => rat(-1, 2),
            1 => rint(1),
            _ => rat(1, 2),
        }
    })
}

/// Inner graph on n1 vertices together with its degree audit.
#[derive(Debug, Clone)]
pub struct InnerGraphReport {
    pub graph: Graph,
    /// Sorted degree sequence.
    pub degrees: Vec<usize>,
    /// The single vertex of degree k-2, when (k-1)*n1 is odd.
    pub deficient_vertex: Option<usize>,
}

/// Component sizes for the inner graph, each in [k, 2k-1]. For odd k every
/// size works (k-1 is even), so the plain greedy applies: as many size-k
/// parts as possible, remainder spread one vertex at a time. For even k the
/// greedy can produce several odd parts, which the degree contract forbids,
/// so sizes are kept even except for exactly one odd part when n1 is odd.
fn inner_component_sizes(n1: usize, k: usize) -> Result<Vec<usize>, FamilyError> {
    if n1 < k {
        return Err(FamilyError::InnerTooSmall { n1, k });
    }
    fn greedy(total: usize, unit: usize) -> Vec<usize> {
        let q = total / unit;
        let rem = total - q * unit;
        let mut sizes = vec![unit; q];
        for i in 0..rem {
            sizes[i % q] += 1;
        }
        sizes
    }
    let mut sizes = if k % 2 == 1 {
        greedy(n1, k)
    } else if n1.is_multiple_of(2) {
        greedy(n1 / 2, k / 2).into_iter().map(|s| 2 * s).collect()
    } else if n1 < 2 * k {
        vec![n1]
    } else {
        let mut v: Vec<usize> = greedy((n1 - k - 1) / 2, k / 2)
            .into_iter()
            .map(|s| 2 * s)
            .collect();
        v.push(k + 1);
        v
    };
    sizes.sort_unstable();
    debug_assert_eq!(sizes.iter().sum::<usize>(), n1);
    debug_assert!(sizes.iter().all(|&s| (k..=2 * k - 1).contains(&s)));
    Ok(sizes)
}

// Circulant-based component of order m and degree k-1 (vertex 0 drops to
// k-2 in the odd case). Labels are 0..m relative to the component.
fn component_edges(m: usize, k: usize) -> (Vec<(usize, usize)>, Option<usize>) {
    let mut edges = vec![];
    if k % 2 == 1 {
        for off in 1..=(k - 1) / 2 {
            for i in 0..m {
                edges.push((i, (i + off) % m));
            }
        }
        (edges, None)
    } else {
        for off in 1..=(k - 2) / 2 {
            for i in 0..m {
                edges.push((i, (i + off) % m));
            }
        }
        if m.is_multiple_of(2) {
            for i in 0..m / 2 {
                edges.push((i, i + m / 2));
            }
            (edges, None)
        } else {
            // near-perfect matching at stride (m-1)/2 leaves vertex 0 short
            let h = (m - 1) / 2;
            for i in 1..=h {
                edges.push((i, i + h));
            }
            (edges, Some(0))
        }
    }
}

/// Builds the inner graph: P_{2k}-free (every component has fewer than 2k
/// vertices) and (k-1)-regular, or nearly so when (k-1)*n1 is odd.
pub fn build_inner(n1: usize, k: usize) -> Result<InnerGraphReport, FamilyError> {
    if k < 3 {
        return Err(FamilyError::BadK(k));
    }
    let sizes = inner_component_sizes(n1, k)?;
    let mut g = Graph::empty(n1);
    let mut deficient = None;
    let mut base = 0;
    for &m in &sizes {
        let (edges, def) = component_edges(m, k);
        for (u, v) in edges {
            g = g.with_edge(base + u, base + v);
        }
        if let Some(d) = def {
            debug_assert!(deficient.is_none());
            deficient = Some(base + d);
        }
        base += m;
    }
    let mut degrees: Vec<usize> = (0..n1).map(|v| g.degree(v)).collect();
    degrees.sort_unstable();
    debug_assert!(detect::is_p2k_free(&g, k));
    Ok(InnerGraphReport {
        graph: g,
        degrees,
        deficient_vertex: deficient,
    })
}

/// Builds K_{t-1} joined to (inner ∨ n2*K1), blocks labeled in that order.
pub fn build_extremal(n: usize, t: usize, k: usize, n1: usize) -> Result<Graph, FamilyError> {
    let spec = FamilySpec::new(n, t, k, n1)?;
    let inner = build_inner(n1, k)?;
    let h = Graph::join(&inner.graph, &Graph::empty(spec.n2));
    Ok(Graph::join(&Graph::complete(t - 1), &h))
}

/// The block partition of a family member's labels; empty blocks (t=1) are
/// omitted so the result is always a valid partition.
pub fn extremal_partition(n: usize, t: usize, n1: usize) -> Vec<VertexSet> {
    let mut blocks = vec![];
    if t > 1 {
        blocks.push(VertexSet::range(n, 0..t - 1).unwrap());
    }
    blocks.push(VertexSet::range(n, t - 1..t - 1 + n1).unwrap());
    if t - 1 + n1 < n {
        blocks.push(VertexSet::range(n, t - 1 + n1..n).unwrap());
    }
    blocks
}

/// Outcome of a membership audit; `first_violation` names the first failed
/// condition in the fixed check order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub ok: bool,
    pub first_violation: Option<String>,
}

impl MembershipReport {
    fn fail(msg: String) -> Self {
        MembershipReport {
            ok: false,
            first_violation: Some(msg),
        }
    }
    fn pass() -> Self {
        MembershipReport {
            ok: true,
            first_violation: None,
        }
    }
}

/// Checks that `g`, labeled in block order, is a family member: universal
/// clique block, complete V1-V2 bipartite part, independent V2, and a
/// P_{2k}-free (nearly) (k-1)-regular V1 with the parity-correct deficiency.
pub fn verify_membership(g: &Graph, n1: usize, t: usize, k: usize) -> MembershipReport {
    let n = g.n();
    if t < 1 || k < 3 || n + 1 < t + n1 {
        return MembershipReport::fail("size mismatch".into());
    }
    let n2 = n + 1 - t - n1;
    // (i) universal block
    for v in 0..t - 1 {
        if g.degree(v) != n - 1 {
            return MembershipReport::fail(format!("universal vertex {v} has degree < n-1"));
        }
    }
    let v1: Vec<usize> = (t - 1..t - 1 + n1).collect();
    let v2: Vec<usize> = (t - 1 + n1..n).collect();
    // (ii) V1-V2 complete bipartite
    for &u in &v1 {
        for &w in &v2 {
            if !g.has_edge(u, w) {
                return MembershipReport::fail(format!("V1-V2 edge ({u},{w}) missing"));
            }
        }
    }
    // (iii) V2 independent
    for i in 0..v2.len() {
        for j in i + 1..v2.len() {
            if g.has_edge(v2[i], v2[j]) {
                return MembershipReport::fail("V2 not independent".into());
            }
        }
    }
    // (iv) inner graph
    let inner = g.induced(&v1);
    if !detect::is_p2k_free(&inner, k) {
        return MembershipReport::fail(format!("inner graph contains a path on {} vertices", 2 * k));
    }
    let mut deficient = 0usize;
    for v in 0..n1 {
        let d = inner.degree(v);
        if d == k - 2 {
            deficient += 1;
        } else if d != k - 1 {
            return MembershipReport::fail(format!(
                "degree deficit: inner vertex {v} has degree {d}, want {} or {}",
                k - 1,
                k - 2
            ));
        }
    }
    let want_deficient = ((k - 1) * n1) % 2;
    if deficient != want_deficient {
        return MembershipReport::fail(format!(
            "degree deficit: {deficient} vertices of degree k-2, parity requires {want_deficient}"
        ));
    }
    let _ = n2;
    MembershipReport::pass()
}

/// Exact rational bounds that bracket the extremal size for large n:
/// (n/4)(n + k + 2t - 7/2) below, n^2/4 + (2t+k-2)n/4 above.
pub fn fina_bounds(n: usize, t: usize, k: usize) -> (Rat, Rat) {
    let (n, t, k) = (n as i128, t as i128, k as i128);
    let lower = rat(n, 4) * (rint(n + k + 2 * t) - rat(7, 2));
    let upper = rat(n * n, 4) + rat((2 * t + k - 2) * n, 4);
    (lower, upper)
}
