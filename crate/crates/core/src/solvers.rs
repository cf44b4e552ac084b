//! Exact solvers for the independence number `alpha` and the broadcast
//! independence number `alpha_b`, plus a definitional brute-force oracle.
//!
//! `alpha_b` reduces to a search over independent supports: positive
//! values force their vertices pairwise nonadjacent by (B2), and at an
//! optimum every `f(x)` sits at its cap
//! `min(ecc(x), min_{y in S, y != x} dist(x, y) - 1)` — raising any value
//! below the cap keeps the broadcast valid and gains weight. The search
//! therefore maximizes the cap sum over nonempty independent sets. The
//! nontrivial equivalence with the raw definition is pinned by the
//! [`naive_alpha_b`] oracle on every connected graph with up to five
//! vertices.

use std::collections::BTreeSet;

use crate::broadcast::{validate, Broadcast};
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Vertex cap for [`alpha`].
pub const ALPHA_CAP: usize = 60;
/// Vertex cap for [`alpha_b`] and [`enumerate_optimal_supports`].
pub const ALPHA_B_CAP: usize = 40;
/// Assignment budget for [`naive_alpha_b`].
pub const NAIVE_BUDGET: u64 = 10_000_000;

/// Result of an exact `alpha` computation.
#[derive(Clone, Debug)]
pub struct AlphaResult {
    pub value: usize,
    /// One maximum independent set, sorted ascending.
    pub witness: Vec<usize>,
}

/// Result of an exact `alpha_b` computation.
#[derive(Clone, Debug)]
pub struct AlphaBResult {
    pub value: u32,
    /// An optimal broadcast; support is the lexicographically smallest
    /// optimal support, each value at its cap.
    pub witness: Broadcast,
    /// `max f(x)` over *every* optimal broadcast, collected from all
    /// optimal supports.
    pub optimal_fmax: BTreeSet<u32>,
}

/// Exact maximum independent set by branch and bound over `u64` bitsets.
///
/// Branches on a maximum-degree vertex of the remaining subgraph; prunes
/// with the remaining-vertex count and a greedy clique cover.
pub fn alpha(g: &Graph) -> Result<AlphaResult> {
    let n = g.n();
    if n > ALPHA_CAP {
        return Err(Error::SizeCap {
            solver: "alpha",
            n,
            cap: ALPHA_CAP,
        });
    }
    let adj = g.adjacency_masks();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut search = AlphaSearch {
        adj: &adj,
        best: 0,
        best_set: 0,
    };
    search.run(all, 0, 0);
    let witness = bits(search.best_set);
    debug_assert_eq!(witness.len(), search.best);
    Ok(AlphaResult {
        value: search.best,
        witness,
    })
}

struct AlphaSearch<'a> {
    adj: &'a [u64],
    best: usize,
    best_set: u64,
}

impl AlphaSearch<'_> {
    fn run(&mut self, cand: u64, chosen: u64, size: usize) {
        if cand == 0 {
            if size > self.best {
                self.best = size;
                self.best_set = chosen;
            }
            return;
        }
        if size + cand.count_ones() as usize <= self.best
            || size + self.clique_cover_bound(cand) <= self.best
        {
            return;
        }
        // branch vertex: max degree inside the candidate subgraph
        let mut v = usize::MAX;
        let mut vdeg = 0;
        let mut scan = cand;
        while scan != 0 {
            let u = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            let deg = (self.adj[u] & cand).count_ones() as usize + 1;
            if deg > vdeg {
                vdeg = deg;
                v = u;
            }
        }
        // include v
        self.run(cand & !self.adj[v] & !(1 << v), chosen | 1 << v, size + 1);
        // exclude v
        self.run(cand & !(1 << v), chosen, size);
    }

    /// Greedily partitions the candidates into cliques; the clique count
    /// bounds any independent set inside them.
    fn clique_cover_bound(&self, cand: u64) -> usize {
        let mut left = cand;
        let mut cliques = 0;
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            left &= !(1 << v);
            let mut clique = 1u64 << v;
            let mut scan = left & self.adj[v];
            while scan != 0 {
                let u = scan.trailing_zeros() as usize;
                scan &= scan - 1;
                if self.adj[u] & clique == clique {
                    clique |= 1 << u;
                    scan &= self.adj[u];
                }
            }
            left &= !clique;
            cliques += 1;
        }
        cliques
    }
}

fn bits(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// The largest admissible `f(x)` for `x` in the support `S`:
/// `min(ecc(x), min_{y in S, y != x} dist(x, y) - 1)`, or `ecc(x)` when
/// `S = {x}`.
pub fn value_cap(d: &DistanceMatrix, support: &[usize], x: usize) -> Result<u32> {
    if !support.contains(&x) {
        return Err(Error::NotInSet { vertex: x });
    }
    for (i, &u) in support.iter().enumerate() {
        for &v in &support[i + 1..] {
            if d.dist(u, v) <= 1 {
                return Err(Error::NotIndependent { u, v });
            }
        }
    }
    let mut cap = d.ecc(x);
    for &y in support {
        if y != x {
            cap = cap.min(d.dist(x, y) - 1);
        }
    }
    Ok(cap)
}

/// Shared search state: finds the maximum cap sum over nonempty
/// independent sets and collects every optimal support.
struct AlphaBSearch<'a> {
    adj: &'a [u64],
    dist: &'a DistanceMatrix,
    best: u32,
    optimal: Vec<Vec<usize>>,
}

impl AlphaBSearch<'_> {
    /// `support`/`caps` describe the current set with exact cap values;
    /// `cand` holds the extension candidates (all beyond the last chosen
    /// vertex and nonadjacent to the set).
    fn run(&mut self, support: &mut Vec<usize>, caps: &mut Vec<u32>, value: u32, cand: u64) {
        if !support.is_empty() {
            if value > self.best {
                self.best = value;
                self.optimal.clear();
            }
            if value == self.best {
                self.optimal.push(support.clone());
            }
        }
        // caps only shrink when the set grows, so eccentricities bound
        // every candidate's contribution; prune strictly below the best
        // to keep all ties
        let mut ecc_left: u64 = 0;
        let mut scan = cand;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            ecc_left += u64::from(self.dist.ecc(v));
        }
        if u64::from(value) + ecc_left < u64::from(self.best) {
            return;
        }
        let mut scan = cand;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;

            let mut new_value = 0u32;
            let mut cap_v = self.dist.ecc(v);
            let old_caps = caps.clone();
            for (i, &x) in support.iter().enumerate() {
                let cut = self.dist.dist(x, v) - 1;
                caps[i] = caps[i].min(cut);
                cap_v = cap_v.min(cut);
                new_value += caps[i];
            }
            caps.push(cap_v);
            new_value += cap_v;
            support.push(v);

            let rest = cand & !self.adj[v] & !((1u64 << v) | ((1u64 << v) - 1));
            self.run(support, caps, new_value, rest);

            support.pop();
            caps.pop();
            caps.copy_from_slice(&old_caps);
        }
    }
}

fn alpha_b_search(g: &Graph, d: &DistanceMatrix) -> Result<(u32, Vec<Vec<usize>>)> {
    let n = g.n();
    if n > ALPHA_B_CAP {
        return Err(Error::SizeCap {
            solver: "alpha_b",
            n,
            cap: ALPHA_B_CAP,
        });
    }
    if n == 1 {
        // only the zero broadcast exists: ecc(0) = 0 caps f at 0
        return Ok((0, vec![Vec::new()]));
    }
    let adj = g.adjacency_masks();
    let all = (1u64 << n) - 1;
    let mut search = AlphaBSearch {
        adj: &adj,
        dist: d,
        best: 0,
        optimal: Vec::new(),
    };
    search.run(&mut Vec::new(), &mut Vec::new(), 0, all);
    Ok((search.best, search.optimal))
}

/// Exact broadcast independence number with an optimal witness.
pub fn alpha_b(g: &Graph) -> Result<AlphaBResult> {
    let d = DistanceMatrix::new(g)?;
    let (value, supports) = alpha_b_search(g, &d)?;
    let mut optimal_fmax = BTreeSet::new();
    for s in &supports {
        let fmax = s
            .iter()
            .map(|&x| value_cap(&d, s, x).expect("search yields independent sets"))
            .max()
            .unwrap_or(0);
        optimal_fmax.insert(fmax);
    }
    // DFS explores supports in lexicographic order, so the first one is
    // the lexicographically smallest
    let mut values = vec![0u32; g.n()];
    if let Some(first) = supports.first() {
        for &x in first {
            values[x] = value_cap(&d, first, x).expect("independent support");
        }
    }
    let witness = Broadcast::new(values);
    debug_assert_eq!(witness.weight(), value);
    debug_assert!(validate(g, &d, &witness)
        .map(|r| r.is_valid())
        .unwrap_or(false));
    Ok(AlphaBResult {
        value,
        witness,
        optimal_fmax,
    })
}

/// Every independent support whose cap sum attains `alpha_b`, in
/// lexicographic order. These biject with the optimal broadcasts since
/// caps are forced at the optimum.
pub fn enumerate_optimal_supports(g: &Graph) -> Result<Vec<Vec<usize>>> {
    let d = DistanceMatrix::new(g)?;
    Ok(alpha_b_search(g, &d)?.1)
}

/// The definitional optimum: maximum weight over *all* assignments
/// `f(x) in 0..=ecc(x)` that pass validation. Exponential; guarded by
/// [`NAIVE_BUDGET`].
pub fn naive_alpha_b(g: &Graph) -> Result<u32> {
    let d = DistanceMatrix::new(g)?;
    let n = g.n();
    let size: u128 = (0..n).map(|v| u128::from(d.ecc(v)) + 1).product();
    if size > u128::from(NAIVE_BUDGET) {
        return Err(Error::BudgetExceeded {
            size,
            budget: NAIVE_BUDGET,
        });
    }
    let mut f = vec![0u32; n];
    let mut best = 0u32;
    loop {
        let b = Broadcast::new(f.clone());
        if validate(g, &d, &b)?.is_valid() {
            best = best.max(b.weight());
        }
        let mut i = 0;
        while i < n {
            if f[i] < d.ecc(i) {
                f[i] += 1;
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == n {
            return Ok(best);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::supply::enumerate_connected;

    #[test]
    fn alpha_paths_and_cliques() {
        assert_eq!(alpha(&Graph::path(6)).unwrap().value, 3);
        assert_eq!(alpha(&Graph::path(8)).unwrap().value, 4);
        assert_eq!(alpha(&Graph::complete(5)).unwrap().value, 1);
    }

    #[test]
    fn alpha_witness_is_independent() {
        for g in enumerate_connected(5).unwrap() {
            let r = alpha(&g).unwrap();
            assert_eq!(r.witness.len(), r.value);
            for (i, &u) in r.witness.iter().enumerate() {
                for &v in &r.witness[i + 1..] {
                    assert!(!g.has_edge(u, v));
                }
            }
        }
    }

    /// Brute-force maximum independent set over all subsets.
    fn alpha_oracle(g: &Graph) -> usize {
        let adj = g.adjacency_masks();
        let mut best = 0;
        for mask in 0u64..1 << g.n() {
            let ok = (0..g.n())
                .all(|v| mask & (1 << v) == 0 || adj[v] & mask == 0);
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    #[test]
    fn alpha_matches_subset_oracle() {
        for n in 1..=5 {
            for g in enumerate_connected(n).unwrap() {
                assert_eq!(alpha(&g).unwrap().value, alpha_oracle(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn value_caps_on_paths() {
        let d = DistanceMatrix::new(&Graph::path(4)).unwrap();
        assert_eq!(value_cap(&d, &[0, 3], 0).unwrap(), 2);
        let d6 = DistanceMatrix::new(&Graph::path(6)).unwrap();
        assert_eq!(value_cap(&d6, &[0, 5], 0).unwrap(), 4);
        assert_eq!(value_cap(&d6, &[2], 2).unwrap(), 3);
    }

    #[test]
    fn value_cap_rejects_bad_sets() {
        let d = DistanceMatrix::new(&Graph::path(4)).unwrap();
        assert!(matches!(
            value_cap(&d, &[0, 1], 0),
            Err(Error::NotIndependent { u: 0, v: 1 })
        ));
        assert!(matches!(
            value_cap(&d, &[0, 3], 2),
            Err(Error::NotInSet { vertex: 2 })
        ));
    }

    #[test]
    fn alpha_b_known_values() {
        let p8 = alpha_b(&Graph::path(8)).unwrap();
        assert_eq!(p8.value, 12);
        assert_eq!(p8.witness.values(), &[6, 0, 0, 0, 0, 0, 0, 6]);
        assert_eq!(p8.optimal_fmax.iter().copied().collect::<Vec<_>>(), [6]);

        let p6 = alpha_b(&Graph::path(6)).unwrap();
        assert_eq!(p6.value, 8);
        assert_eq!(p6.witness.values(), &[4, 0, 0, 0, 0, 4]);

        for n in 2..=6 {
            assert_eq!(alpha_b(&Graph::complete(n)).unwrap().value, 1);
        }
        assert_eq!(alpha_b(&Graph::path(4)).unwrap().value, 4);
    }

    #[test]
    fn naive_known_values() {
        assert_eq!(naive_alpha_b(&Graph::path(4)).unwrap(), 4);
        assert_eq!(naive_alpha_b(&Graph::cycle(4)).unwrap(), 2);
        assert_eq!(naive_alpha_b(&Graph::complete(3)).unwrap(), 1);
    }

    #[test]
    fn single_vertex_degenerates_to_zero() {
        let k1 = Graph::new(1, []).unwrap();
        let r = alpha_b(&k1).unwrap();
        assert_eq!(r.value, 0);
        assert_eq!(r.witness.values(), &[0]);
        assert_eq!(naive_alpha_b(&k1).unwrap(), 0);
    }

    #[test]
    fn optimal_supports_unique_cases() {
        assert_eq!(
            enumerate_optimal_supports(&Graph::path(6)).unwrap(),
            vec![vec![0, 5]]
        );
        assert_eq!(
            enumerate_optimal_supports(&Graph::path(4)).unwrap(),
            vec![vec![0, 3]]
        );
        assert_eq!(
            enumerate_optimal_supports(&Graph::complete(4)).unwrap(),
            vec![vec![0], vec![1], vec![2], vec![3]]
        );
    }

    /// Exhaustive subset check that the support enumeration misses
    /// nothing on P4.
    #[test]
    fn p4_supports_by_exhaustion() {
        let g = Graph::path(4);
        let d = DistanceMatrix::new(&g).unwrap();
        let mut best = 0;
        let mut opt = Vec::new();
        for mask in 1u64..16 {
            let s = bits(mask);
            let independent = s
                .iter()
                .enumerate()
                .all(|(i, &u)| s[i + 1..].iter().all(|&v| !g.has_edge(u, v)));
            if !independent {
                continue;
            }
            let val: u32 = s.iter().map(|&x| value_cap(&d, &s, x).unwrap()).sum();
            if val > best {
                best = val;
                opt.clear();
            }
            if val == best {
                opt.push(s);
            }
        }
        opt.sort();
        assert_eq!(best, 4);
        assert_eq!(opt, enumerate_optimal_supports(&g).unwrap());
    }

    #[test]
    fn reduction_matches_oracle_small() {
        for n in 1..=4 {
            for g in enumerate_connected(n).unwrap() {
                assert_eq!(
                    alpha_b(&g).unwrap().value,
                    naive_alpha_b(&g).unwrap(),
                    "{g:?}"
                );
            }
        }
    }

    #[test]
    fn caps_enforced() {
        let big = Graph::path(ALPHA_B_CAP + 1);
        assert!(matches!(alpha_b(&big), Err(Error::SizeCap { .. })));
        let huge = Graph::path(ALPHA_CAP + 1);
        assert!(matches!(alpha(&huge), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn naive_budget_enforced() {
        // P25 has eccentricity products far above the budget
        assert!(matches!(
            naive_alpha_b(&Graph::path(25)),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
