//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// graph6 input that does not decode to a graph.
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),

    /// A graph definition that breaks the simple-graph invariants.
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// Metric or solver routines only accept connected graphs.
    #[error("graph is disconnected (vertex {unreached} unreachable from vertex 0)")]
    Disconnected { unreached: usize },

    /// A broadcast whose length does not match the host graph.
    #[error("broadcast has {got} values but the graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },

    /// A broadcast that violates the independence axioms where a valid
    /// one is required; the first violation is carried for diagnostics.
    #[error("invalid broadcast: {0}")]
    InvalidBroadcast(String),

    /// Exact solvers refuse graphs beyond their size cap.
    #[error("graph has {n} vertices, above the {cap}-vertex cap of {solver}")]
    SizeCap {
        solver: &'static str,
        n: usize,
        cap: usize,
    },

    /// The brute-force oracle refuses search spaces beyond its budget.
    #[error("oracle search space of {size} assignments exceeds the {budget} budget")]
    BudgetExceeded { size: u128, budget: u64 },

    /// Rejection sampling failed to produce a connected graph in time.
    #[error("no connected graph found within {attempts} rejection attempts")]
    RejectionBudget { attempts: u64 },

    /// A vertex set that was required to be independent is not.
    #[error("vertex set is not independent: {u} and {v} are adjacent")]
    NotIndependent { u: usize, v: usize },

    /// An argument vertex missing from the set it must belong to.
    #[error("vertex {vertex} is not a member of the given set")]
    NotInSet { vertex: usize },

    /// Out-of-range argument (vertex id, enumeration size, probability, ...).
    #[error("{0}")]
    InvalidArgument(String),

    /// A family spec that cannot be built.
    #[error("invalid family spec: {0}")]
    InvalidFamilySpec(String),

    /// The extraction produced something the construction rules out;
    /// indicates a defect, not bad input.
    #[error("extraction defect: {0}")]
    ExtractionDefect(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
