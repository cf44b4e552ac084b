//! `bindep` is an exact toolkit for *broadcast independence* in connected
//! graphs.
//!
//! An independent broadcast on a connected graph assigns every vertex a
//! nonnegative integer `f(x)` such that `f(x)` never exceeds the
//! eccentricity of `x`, and any two vertices with positive values are
//! farther apart than either value. The broadcast independence number
//! `alpha_b(G)` is the largest total weight of such an assignment; it
//! relates to the ordinary independence number `alpha(G)` by
//! `alpha(G) <= alpha_b(G) <= 4*alpha(G)` with a tight refinement of the
//! upper bound that is attained exactly on two structured graph families.
//!
//! The crate provides:
//!
//! * [`graph`] — immutable simple graphs, BFS metrics, and [`graph6`]
//!   encoding plus exhaustive/random small-graph supply in [`supply`];
//! * [`broadcast`] — broadcast values, axiom validation, and the ball
//!   system around the support vertices;
//! * [`solvers`] — exact `alpha` and `alpha_b` via branch and bound,
//!   with a definitional brute-force oracle for cross-checks;
//! * [`extraction`] — the constructive routine that turns any valid
//!   broadcast into an independent set of size at least a quarter of the
//!   broadcast weight, with a checkable certificate;
//! * [`families`] — builders and a recognizer for the extremal families
//!   `G0(k, l)` and `G2(k)`;
//! * [`harness`] — the bound checker and verification campaigns over
//!   enumerated, random, or file-supplied graphs.

pub mod broadcast;
pub mod error;
pub mod extraction;
pub mod families;
pub mod graph;
pub mod graph6;
pub mod harness;
pub mod solvers;
pub mod supply;

pub use broadcast::{BallSystem, Broadcast, ValidationResult, Violation};
pub use error::{Error, Result};
pub use extraction::{CaseTag, ExtractionCertificate};
pub use families::{FamilyParams, G0Params, G2Params, OddPattern, StripSpec};
pub use graph::{DistanceMatrix, Graph};
pub use harness::{BoundCheck, VerificationRecord};
pub use solvers::{AlphaBResult, AlphaResult};
