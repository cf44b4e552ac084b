//! Constructive extraction of an independent set from a valid broadcast.
//!
//! For every support vertex `x` an anchor `p(x)` is picked on the
//! boundary of its ball and joined to `x` by a shortest path `P(x)` of
//! order `floor((f(x) + 2) / 2)`. Alternating vertices of `P(x)` form an
//! independent set `I(x)` inside the ball: when `f(x) mod 4` is 0 or 1
//! the alternation starts at the anchor (so `p(x)` is included), when it
//! is 2 or 3 it starts one step in (so `p(x)` is excluded). Balls are
//! pairwise disjoint, so the union of the `I(x)` — adjusted per case
//! below — is independent and certifies `4 |I| >= weight(f)`.
//!
//! The three cases split on the support classes `X_i = {x : f(x) mod 4 = i}`:
//!
//! * case 1 (`X0 = X3 = {}`): plain union; `4 |I| >= w + 2 |X|`;
//! * case 2 (`X0 = {}`, `X3 != {}`): one extra vertex `y3` outside all
//!   balls joins the union; `4 |I| >= 4 + w + |X|`;
//! * case 3 (`X0 != {}`): anchors of all but one `X0` vertex are dropped;
//!   `4 |I| >= 4 + w`.

use serde::Serialize;

use crate::broadcast::{ball_system, validate, BallSystem, Broadcast};
use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Which proof case the extraction took.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
}

/// Anchor data for one support vertex.
#[derive(Clone, Debug, Serialize)]
pub struct AnchorPath {
    pub center: usize,
    /// Chosen boundary vertex `p(x)`; equals `center` iff `f(x) = 1`.
    pub anchor: usize,
    /// Shortest path `x = v_0, ..., v_m = p(x)`.
    pub path: Vec<usize>,
    /// Alternating set `I(x)` drawn from the path, ascending.
    pub selected: Vec<usize>,
}

/// Full record of one extraction run; everything needed to re-check the
/// construction independently.
#[derive(Clone, Debug, Serialize)]
pub struct ExtractionCertificate {
    pub case: CaseTag,
    /// Support classes by `f(x) mod 4`, each ascending.
    pub classes: [Vec<usize>; 4],
    pub anchors: Vec<AnchorPath>,
    /// Case 2 only: the residue neighbor added to the set.
    pub y3: Option<usize>,
    /// The extracted independent set, ascending.
    pub independent_set: Vec<usize>,
    /// Case-specific guaranteed lower bound on `|I|`.
    pub lower_bound: usize,
    /// Weight of the broadcast the certificate was extracted from.
    pub weight: u32,
}

/// Splits the support by `f(x) mod 4`.
pub fn classify_support(f: &Broadcast) -> [Vec<usize>; 4] {
    let mut classes: [Vec<usize>; 4] = Default::default();
    for x in f.support() {
        classes[(f.value(x) % 4) as usize].push(x);
    }
    classes
}

/// Picks the anchor `p(x)` and its shortest path for a support vertex.
///
/// Among qualifying boundary vertices the smallest id wins, and the path
/// follows smallest-id BFS parents, so certificates are reproducible.
/// With `needs_outside_neighbor` the anchor must additionally have a
/// neighbor outside the ball — (B1) guarantees one exists whenever the
/// ball radius is below the eccentricity of `x`.
pub fn choose_anchor(
    g: &Graph,
    d: &DistanceMatrix,
    f: &Broadcast,
    x: usize,
    needs_outside_neighbor: bool,
) -> Result<(usize, Vec<usize>)> {
    if f.value(x) == 0 {
        return Err(Error::InvalidArgument(format!(
            "vertex {x} is not in the support"
        )));
    }
    let radius = f.value(x) / 2;
    let anchor = (0..g.n())
        .filter(|&p| d.dist(x, p) == radius)
        .find(|&p| {
            !needs_outside_neighbor
                || g.neighbors(p).iter().any(|&y| d.dist(x, y) > radius)
        })
        .ok_or_else(|| {
            Error::InvalidArgument(format!(
                "no boundary vertex of {x} with an outside neighbor"
            ))
        })?;

    // walk the anchor back to x along smallest-id parents
    let mut path = vec![anchor];
    let mut cur = anchor;
    while cur != x {
        let step = d.dist(x, cur) - 1;
        let parent = *g
            .neighbors(cur)
            .iter()
            .find(|&&u| d.dist(x, u) == step)
            .expect("BFS layer below is nonempty");
        path.push(parent);
        cur = parent;
    }
    path.reverse();
    debug_assert_eq!(path.len(), (f.value(x) as usize + 2) / 2);
    Ok((anchor, path))
}

/// Builds `I(x)` from `f(x)` and its anchor path by the alternation
/// rule. The result always contains `x` and contains the anchor exactly
/// when `f(x) mod 4` is 0 or 1.
pub fn build_ix(fx: u32, path: &[usize]) -> Result<Vec<usize>> {
    let expect = (fx as usize + 2) / 2;
    if path.len() != expect {
        return Err(Error::InvalidArgument(format!(
            "path of order {} does not match f(x)={fx} (expected {expect})",
            path.len()
        )));
    }
    let m = path.len() - 1;
    let start = match fx % 4 {
        0 | 1 => m,
        _ => m.wrapping_sub(1), // fx in {2, 3} has m >= 1
    };
    let mut selected: Vec<usize> = path
        .iter()
        .enumerate()
        .filter(|(i, _)| start.wrapping_sub(*i) % 2 == 0 && *i <= start)
        .map(|(_, &v)| v)
        .collect();
    selected.sort_unstable();
    let want = match fx % 4 {
        0 | 1 => (fx as usize + 4) / 4,
        _ => (fx as usize + 2) / 4,
    };
    debug_assert_eq!(selected.len(), want);
    Ok(selected)
}

/// Runs the full construction on a valid broadcast with nonempty
/// support and certifies the result.
pub fn extract_independent_set(
    g: &Graph,
    d: &DistanceMatrix,
    f: &Broadcast,
) -> Result<ExtractionCertificate> {
    let check = validate(g, d, f)?;
    if let Some(v) = check.violations.first() {
        return Err(Error::InvalidBroadcast(v.to_string()));
    }
    let support = f.support();
    if support.is_empty() {
        return Err(Error::InvalidArgument(
            "extraction needs a nonempty support".into(),
        ));
    }
    let balls = ball_system(g, d, f)?;
    let classes = classify_support(f);

    let case = if classes[0].is_empty() && classes[3].is_empty() {
        CaseTag::Case1
    } else if classes[0].is_empty() {
        CaseTag::Case2
    } else {
        CaseTag::Case3
    };

    // pick the distinguished vertex: maximum f, then smallest id
    let pick = |class: &[usize]| -> usize {
        *class
            .iter()
            .max_by_key(|&&x| (f.value(x), std::cmp::Reverse(x)))
            .expect("class checked nonempty")
    };

    let mut anchors = Vec::with_capacity(support.len());
    let mut y3 = None;
    let mut set = Vec::new();
    let weight = f.weight();

    match case {
        CaseTag::Case1 => {
            for &x in &support {
                let (anchor, path) = choose_anchor(g, d, f, x, false)?;
                let selected = build_ix(f.value(x), &path)?;
                set.extend_from_slice(&selected);
                anchors.push(AnchorPath { center: x, anchor, path, selected });
            }
        }
        CaseTag::Case2 => {
            let x3 = pick(&classes[3]);
            for &x in &support {
                let (anchor, path) = choose_anchor(g, d, f, x, x == x3)?;
                if x == x3 {
                    let radius = f.value(x) / 2;
                    let neighbor = *g
                        .neighbors(anchor)
                        .iter()
                        .find(|&&y| d.dist(x, y) > radius)
                        .expect("anchor chosen with an outside neighbor");
                    ensure_in_residue(&balls, neighbor)?;
                    y3 = Some(neighbor);
                }
                let selected = build_ix(f.value(x), &path)?;
                set.extend_from_slice(&selected);
                anchors.push(AnchorPath { center: x, anchor, path, selected });
            }
            set.push(y3.expect("x3 processed"));
        }
        CaseTag::Case3 => {
            let x0 = pick(&classes[0]);
            for &x in &support {
                let (anchor, path) = choose_anchor(g, d, f, x, false)?;
                let mut selected = build_ix(f.value(x), &path)?;
                if f.value(x) % 4 == 0 && x != x0 {
                    // drop the anchor from the other X0 members
                    selected.retain(|&v| v != anchor);
                }
                set.extend_from_slice(&selected);
                anchors.push(AnchorPath { center: x, anchor, path, selected });
            }
        }
    }

    set.sort_unstable();
    set.dedup();

    // the construction guarantees independence; failure is a defect
    for (i, &u) in set.iter().enumerate() {
        for &v in &set[i + 1..] {
            if g.has_edge(u, v) {
                return Err(Error::ExtractionDefect(format!(
                    "extracted set contains the edge ({u},{v})"
                )));
            }
        }
    }

    let sizes: usize = anchors.iter().map(|a| a.selected.len()).sum();
    let support_len = support.len() as u32;
    let lower_bound = match case {
        // 4|I| >= w + 2|X|
        CaseTag::Case1 => ceil_div(weight + 2 * support_len, 4),
        // |I| >= 1 + (w + |X|)/4
        CaseTag::Case2 => 1 + ceil_div(weight + support_len, 4),
        // |I| >= 1 + w/4
        CaseTag::Case3 => 1 + ceil_div(weight, 4),
    } as usize;
    if set.len() < lower_bound || sizes + usize::from(y3.is_some()) != set.len() {
        return Err(Error::ExtractionDefect(format!(
            "set of size {} misses the case bound {lower_bound}",
            set.len()
        )));
    }

    Ok(ExtractionCertificate {
        case,
        classes,
        anchors,
        y3,
        independent_set: set,
        lower_bound,
        weight,
    })
}

fn ensure_in_residue(balls: &BallSystem, v: usize) -> Result<()> {
    if balls.in_residue(v) {
        Ok(())
    } else {
        Err(Error::ExtractionDefect(format!(
            "outside neighbor {v} lands in the ball of {:?} instead of the residue",
            balls.ball_of(v)
        )))
    }
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn certify(g: &Graph, values: Vec<u32>) -> ExtractionCertificate {
        let d = DistanceMatrix::new(g).unwrap();
        extract_independent_set(g, &d, &Broadcast::new(values)).unwrap()
    }

    #[test]
    fn classes_by_residue() {
        let f = Broadcast::new(vec![6, 0, 0, 0, 0, 0, 0, 6]);
        let classes = classify_support(&f);
        assert_eq!(classes[2], vec![0, 7]);
        assert!(classes[0].is_empty() && classes[1].is_empty() && classes[3].is_empty());

        let f = Broadcast::new(vec![4, 0, 0, 0, 0, 4]);
        assert_eq!(classify_support(&f)[0], vec![0, 5]);

        let f = Broadcast::new(vec![1, 0, 0]);
        assert_eq!(classify_support(&f)[1], vec![0]);
    }

    #[test]
    fn anchors_on_paths() {
        let g = Graph::path(6);
        let d = DistanceMatrix::new(&g).unwrap();
        let f = Broadcast::new(vec![4, 0, 0, 0, 0, 4]);
        let (p, path) = choose_anchor(&g, &d, &f, 0, false).unwrap();
        assert_eq!(p, 2);
        assert_eq!(path, vec![0, 1, 2]);

        let g8 = Graph::path(8);
        let d8 = DistanceMatrix::new(&g8).unwrap();
        let f8 = Broadcast::new(vec![6, 0, 0, 0, 0, 0, 0, 6]);
        let (p, path) = choose_anchor(&g8, &d8, &f8, 0, false).unwrap();
        assert_eq!(p, 3);
        assert_eq!(path, vec![0, 1, 2, 3]);
    }

    #[test]
    fn anchor_coincides_iff_f_is_one() {
        let g = Graph::cycle(5);
        let d = DistanceMatrix::new(&g).unwrap();
        let f = Broadcast::new(vec![0, 1, 0, 0, 0]);
        let (p, path) = choose_anchor(&g, &d, &f, 1, false).unwrap();
        assert_eq!(p, 1);
        assert_eq!(path, vec![1]);
    }

    #[test]
    fn alternation_follows_the_table() {
        // f = 4: keep the anchor
        assert_eq!(build_ix(4, &[0, 1, 2]).unwrap(), vec![0, 2]);
        // f = 6: drop the anchor
        assert_eq!(build_ix(6, &[0, 1, 2, 3]).unwrap(), vec![0, 2]);
        // f = 1: singleton
        assert_eq!(build_ix(1, &[0]).unwrap(), vec![0]);
        assert!(build_ix(4, &[0, 1]).is_err());
    }

    /// |I(x)| follows the closed forms for every residue class.
    #[test]
    fn table_sizes_on_paths() {
        let g = Graph::path(13);
        let d = DistanceMatrix::new(&g).unwrap();
        for fx in 1..=12u32 {
            let mut values = vec![0; 13];
            values[0] = fx;
            let f = Broadcast::new(values);
            let (anchor, path) = choose_anchor(&g, &d, &f, 0, false).unwrap();
            assert_eq!(path.len(), (fx as usize + 2) / 2, "f={fx}");
            let ix = build_ix(fx, &path).unwrap();
            let want = match fx % 4 {
                0 | 1 => (fx + 4) / 4,
                _ => (fx + 2) / 4,
            } as usize;
            assert_eq!(ix.len(), want, "f={fx}");
            assert_eq!(ix.contains(&anchor), fx % 4 <= 1, "f={fx}");
            assert!(ix.contains(&0), "f={fx}");
        }
    }

    #[test]
    fn case1_on_p8() {
        let cert = certify(&Graph::path(8), vec![6, 0, 0, 0, 0, 0, 0, 6]);
        assert_eq!(cert.case, CaseTag::Case1);
        assert_eq!(cert.independent_set, vec![0, 2, 5, 7]);
        assert!(4 * cert.independent_set.len() as u32 >= cert.weight + 4);
    }

    #[test]
    fn case3_on_p6() {
        let cert = certify(&Graph::path(6), vec![4, 0, 0, 0, 0, 4]);
        assert_eq!(cert.case, CaseTag::Case3);
        assert_eq!(cert.independent_set, vec![0, 2, 5]);
        assert_eq!(cert.lower_bound, 3);
    }

    #[test]
    fn case2_picks_a_residue_vertex() {
        // f(0) = 3 on P6: X3 = {0}, ball radius 1, boundary {1}
        let cert = certify(&Graph::path(6), vec![3, 0, 0, 0, 0, 0]);
        assert_eq!(cert.case, CaseTag::Case2);
        assert_eq!(cert.y3, Some(2));
        assert!(cert.independent_set.contains(&2));
    }

    #[test]
    fn indicator_broadcast_recovers_the_set() {
        let g = Graph::cycle(6);
        let d = DistanceMatrix::new(&g).unwrap();
        let cert =
            extract_independent_set(&g, &d, &Broadcast::new(vec![1, 0, 1, 0, 1, 0])).unwrap();
        assert_eq!(cert.case, CaseTag::Case1);
        assert_eq!(cert.independent_set, vec![0, 2, 4]);
    }

    #[test]
    fn rejects_invalid_broadcasts() {
        let g = Graph::path(4);
        let d = DistanceMatrix::new(&g).unwrap();
        assert!(extract_independent_set(&g, &d, &Broadcast::new(vec![2, 0, 2, 0])).is_err());
        assert!(extract_independent_set(&g, &d, &Broadcast::zero(4)).is_err());
    }
}
