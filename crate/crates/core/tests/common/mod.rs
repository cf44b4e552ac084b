//! Shared helpers for the integration suites.

use bindep::broadcast::Broadcast;
use bindep::graph::{DistanceMatrix, Graph};
use bindep::solvers::value_cap;
use bindep::supply::XorShift64Star;

/// Draws a valid broadcast with nonempty support on a graph with at
/// least two vertices: a random independent support, then a random
/// value in `1..=cap` per member. Values at or below the cap always
/// satisfy both axioms.
pub fn random_valid_broadcast(
    g: &Graph,
    d: &DistanceMatrix,
    rng: &mut XorShift64Star,
) -> Broadcast {
    let n = g.n();
    assert!(n >= 2, "single-vertex graphs only carry the zero broadcast");
    let target = 1 + rng.next_below(n as u64 / 2 + 1) as usize;
    let mut support: Vec<usize> = Vec::new();
    for _ in 0..4 * n {
        if support.len() == target {
            break;
        }
        let v = rng.next_below(n as u64) as usize;
        if support.contains(&v) || support.iter().any(|&u| u == v || g.has_edge(u, v)) {
            continue;
        }
        support.push(v);
    }
    if support.is_empty() {
        support.push(rng.next_below(n as u64) as usize);
    }
    support.sort_unstable();

    let mut values = vec![0u32; n];
    for &x in &support {
        let cap = value_cap(d, &support, x).expect("support is independent");
        values[x] = 1 + rng.next_below(u64::from(cap)) as u32;
    }
    Broadcast::new(values)
}
