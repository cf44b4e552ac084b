//! Broadcast values, axiom validation, and the ball system around the
//! support.
//!
//! A broadcast `f` is *independent* when
//!
//! * (B1) `f(x) <= ecc(x)` for every vertex, and
//! * (B2) `dist(x, y) > max(f(x), f(y))` for distinct `x`, `y` with
//!   positive values.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Per-vertex nonnegative integer values, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Broadcast {
    values: Vec<u32>,
}

impl Broadcast {
    pub fn new(values: Vec<u32>) -> Self {
        Self { values }
    }

    /// All-zero broadcast on `n` vertices.
    pub fn zero(n: usize) -> Self {
        Self { values: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn value(&self, v: usize) -> u32 {
        self.values[v]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Vertices with positive value, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.values[v] > 0).collect()
    }

    /// Sum of all values.
    pub fn weight(&self) -> u32 {
        self.values.iter().sum()
    }

    /// Largest value (0 for the zero broadcast).
    pub fn fmax(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Parses the line format: whitespace-separated integers aligned
    /// with vertex ids.
    pub fn parse_line(line: &str) -> Result<Self> {
        let values = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>().map_err(|_| {
                    Error::InvalidArgument(format!("bad broadcast value {tok:?}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if values.is_empty() {
            return Err(Error::InvalidArgument("empty broadcast line".into()));
        }
        Ok(Self { values })
    }

    /// Renders the line format parsed by [`Broadcast::parse_line`].
    pub fn to_line(&self) -> String {
        self.values
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One axiom violation found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// (B1): `f(vertex) > ecc(vertex)`.
    ExceedsEccentricity { vertex: usize, value: u32, ecc: u32 },
    /// (B2): support pair at distance `<= max(fx, fy)`.
    PairTooClose {
        x: usize,
        y: usize,
        dist: u32,
        fx: u32,
        fy: u32,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ExceedsEccentricity { vertex, value, ecc } => {
                write!(f, "f({vertex})={value} exceeds eccentricity {ecc}")
            }
            Violation::PairTooClose { x, y, dist, fx, fy } => write!(
                f,
                "support pair ({x},{y}) at distance {dist} <= max(f({x})={fx}, f({y})={fy})"
            ),
        }
    }
}

/// Outcome of checking (B1)/(B2); lists *every* violation so a near-miss
/// can be diagnosed in full.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationResult {
    pub violations: Vec<Violation>,
}

impl ValidationResult {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks (B1) for every vertex and (B2) for every distinct support pair.
pub fn validate(g: &Graph, d: &DistanceMatrix, f: &Broadcast) -> Result<ValidationResult> {
    if f.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            got: f.len(),
        });
    }
    let mut violations = Vec::new();
    for v in 0..g.n() {
        if f.value(v) > d.ecc(v) {
            violations.push(Violation::ExceedsEccentricity {
                vertex: v,
                value: f.value(v),
                ecc: d.ecc(v),
            });
        }
    }
    let support = f.support();
    for (i, &x) in support.iter().enumerate() {
        for &y in &support[i + 1..] {
            let dist = d.dist(x, y);
            if dist <= f.value(x).max(f.value(y)) {
                violations.push(Violation::PairTooClose {
                    x,
                    y,
                    dist,
                    fx: f.value(x),
                    fy: f.value(y),
                });
            }
        }
    }
    Ok(ValidationResult { violations })
}

/// The ball of one support vertex: all vertices within radius
/// `floor(f(x) / 2)` of the center, plus the boundary at exactly that
/// distance.
#[derive(Clone, Debug, Serialize)]
pub struct Ball {
    pub center: usize,
    pub radius: u32,
    /// Members sorted ascending; always contains `center`.
    pub members: Vec<usize>,
    /// Members at distance exactly `radius`; subset of `members`.
    pub boundary: Vec<usize>,
}

/// The balls of all support vertices plus the residue `R` of vertices
/// covered by no ball. For a valid broadcast the balls are pairwise
/// disjoint and together with `R` partition the vertex set.
#[derive(Clone, Debug, Serialize)]
pub struct BallSystem {
    /// One ball per support vertex, in ascending center order.
    pub balls: Vec<Ball>,
    /// Vertices in no ball, ascending.
    pub residue: Vec<usize>,
}

impl BallSystem {
    /// The center whose ball contains `v`, if any.
    pub fn ball_of(&self, v: usize) -> Option<usize> {
        self.balls
            .iter()
            .find(|b| b.members.binary_search(&v).is_ok())
            .map(|b| b.center)
    }

    pub fn in_residue(&self, v: usize) -> bool {
        self.residue.binary_search(&v).is_ok()
    }
}

/// Builds the ball system of a valid broadcast.
///
/// Invalid broadcasts are rejected up front: overlapping balls can only
/// come from a (B2) violation, and the error names the offending pair.
pub fn ball_system(g: &Graph, d: &DistanceMatrix, f: &Broadcast) -> Result<BallSystem> {
    let check = validate(g, d, f)?;
    if let Some(v) = check.violations.first() {
        return Err(Error::InvalidBroadcast(v.to_string()));
    }

    let mut owner: Vec<Option<usize>> = vec![None; g.n()];
    let mut balls = Vec::new();
    for x in f.support() {
        let radius = f.value(x) / 2;
        let mut members = Vec::new();
        let mut boundary = Vec::new();
        for v in 0..g.n() {
            let dist = d.dist(x, v);
            if dist <= radius {
                // a valid broadcast cannot put one vertex in two balls
                assert!(
                    owner[v].is_none(),
                    "ball overlap at vertex {v} between centers {:?} and {x}",
                    owner[v]
                );
                owner[v] = Some(x);
                members.push(v);
                if dist == radius {
                    boundary.push(v);
                }
            }
        }
        balls.push(Ball {
            center: x,
            radius,
            members,
            boundary,
        });
    }
    let residue = (0..g.n()).filter(|&v| owner[v].is_none()).collect();
    Ok(BallSystem { balls, residue })
}
