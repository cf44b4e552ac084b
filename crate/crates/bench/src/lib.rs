//! Shared inputs for the benchmark targets.

use bindep::families::{build_g0, G0Params};
use bindep::graph::Graph;
use bindep::supply::random_connected;

/// A fixed mid-size random instance for the exact solvers.
pub fn random_instance(n: usize) -> Graph {
    random_connected(n, 0.25, 0xBEEF).expect("rejection budget")
}

/// The largest family member of the conformance grids.
pub fn big_g0_member() -> Graph {
    build_g0(&G0Params::uniform(2, 3, 2, 2)).expect("grid params")
}
