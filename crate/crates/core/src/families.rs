//! Builders and a recognizer for the two extremal families.
//!
//! A *k-strip* is a layered graph on cliques `B_0, ..., B_k` rooted at
//! the single vertex of `B_0`: layer `i` sits at distance exactly `i`
//! from the root, consecutive even-to-odd layers are completely joined,
//! odd-to-even transitions may carry any bipartite pattern as long as
//! every vertex of the upper layer keeps a neighbor in the lower one,
//! and no edge skips a layer.
//!
//! `G2(k)` glues two `(2k+1)`-strips with a nonempty edge set between
//! their terminal layers; `G0(k, l)` glues `l >= 2` `2k`-strips and an
//! optional vertex set `R` with one big clique on `R` and all terminal
//! layers. Recognition re-derives the layer structure from the metric,
//! so it is independent of vertex labels.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistanceMatrix, Graph};

/// Edge pattern of one odd-to-even transition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OddPattern {
    /// Complete bipartite join (the default).
    Complete,
    /// Explicit pairs `(i, j)` of layer-local indices, lower layer
    /// first. Every upper-layer vertex needs at least one pair.
    Explicit(Vec<(usize, usize)>),
}

/// Layer sizes and odd-transition patterns of one strip.
///
/// `layer_sizes[0]` is the root layer and must be 1; the strip length
/// (the `k` of "k-strip") is `layer_sizes.len() - 1`. `odd_patterns[j]`
/// describes transition `2j + 1`; even transitions are always complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StripSpec {
    pub layer_sizes: Vec<usize>,
    pub odd_patterns: Vec<OddPattern>,
}

impl StripSpec {
    /// A strip of the given length with every non-root layer of size
    /// `width` and complete odd transitions.
    pub fn uniform(length: usize, width: usize) -> Self {
        let mut layer_sizes = vec![width; length + 1];
        layer_sizes[0] = 1;
        Self {
            layer_sizes,
            odd_patterns: vec![OddPattern::Complete; length / 2],
        }
    }

    pub fn length(&self) -> usize {
        self.layer_sizes.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.layer_sizes.iter().sum()
    }

    fn validate(&self) -> Result<()> {
        if self.layer_sizes.is_empty() || self.layer_sizes[0] != 1 {
            return Err(Error::InvalidFamilySpec(
                "the root layer must contain exactly one vertex".into(),
            ));
        }
        if self.layer_sizes.iter().any(|&s| s == 0) {
            return Err(Error::InvalidFamilySpec("empty layer".into()));
        }
        let odd_transitions = self.length() / 2;
        if self.odd_patterns.len() != odd_transitions {
            return Err(Error::InvalidFamilySpec(format!(
                "expected {odd_transitions} odd-transition patterns, got {}",
                self.odd_patterns.len()
            )));
        }
        for (j, pattern) in self.odd_patterns.iter().enumerate() {
            let i = 2 * j + 1;
            let (lower, upper) = (self.layer_sizes[i], self.layer_sizes[i + 1]);
            if let OddPattern::Explicit(pairs) = pattern {
                let mut covered = vec![false; upper];
                for &(a, b) in pairs {
                    if a >= lower || b >= upper {
                        return Err(Error::InvalidFamilySpec(format!(
                            "pair ({a},{b}) out of range on transition {i}"
                        )));
                    }
                    covered[b] = true;
                }
                if let Some(b) = covered.iter().position(|&c| !c) {
                    return Err(Error::InvalidFamilySpec(format!(
                        "vertex {b} of layer {} has no neighbor in layer {i} \
                         (distance property)",
                        i + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Parameters of a `G2(k)` member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G2Params {
    pub k: usize,
    pub strips: [StripSpec; 2],
    /// Cross edges as `(i, j)` pairs of terminal-layer-local indices,
    /// strip 1 first. Must be nonempty.
    pub cross_edges: Vec<(usize, usize)>,
}

impl G2Params {
    /// Both strips uniform; `complete_cross` joins the terminal layers
    /// completely, otherwise a single `(0, 0)` edge is used.
    pub fn uniform(k: usize, width: usize, complete_cross: bool) -> Self {
        let strip = StripSpec::uniform(2 * k + 1, width);
        let t = *strip.layer_sizes.last().expect("nonempty");
        let cross_edges = if complete_cross {
            (0..t).flat_map(|i| (0..t).map(move |j| (i, j))).collect()
        } else {
            vec![(0, 0)]
        };
        Self {
            k,
            strips: [strip.clone(), strip],
            cross_edges,
        }
    }
}

/// Parameters of a `G0(k, l)` member; `l = strips.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct G0Params {
    pub k: usize,
    pub strips: Vec<StripSpec>,
    pub r_size: usize,
}

impl G0Params {
    pub fn uniform(k: usize, ell: usize, width: usize, r_size: usize) -> Self {
        Self {
            k,
            strips: vec![StripSpec::uniform(2 * k, width); ell],
            r_size,
        }
    }

    pub fn ell(&self) -> usize {
        self.strips.len()
    }
}

/// Recognized family membership.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyParams {
    G0(G0Params),
    G2(G2Params),
}

impl FamilyParams {
    pub fn k(&self) -> usize {
        match self {
            FamilyParams::G0(p) => p.k,
            FamilyParams::G2(p) => p.k,
        }
    }

    pub fn ell(&self) -> Option<usize> {
        match self {
            FamilyParams::G0(p) => Some(p.ell()),
            FamilyParams::G2(_) => None,
        }
    }
}

/// Emits the edges of one strip laid out from vertex id `base` upward,
/// layer by layer; returns the layer map.
fn strip_edges(spec: &StripSpec, base: usize, edges: &mut Vec<(usize, usize)>) -> Vec<Vec<usize>> {
    let mut layers = Vec::with_capacity(spec.layer_sizes.len());
    let mut next = base;
    for &size in &spec.layer_sizes {
        layers.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    for layer in &layers {
        for (a, &u) in layer.iter().enumerate() {
            for &v in &layer[a + 1..] {
                edges.push((u, v));
            }
        }
    }
    for i in 0..spec.length() {
        let (lower, upper) = (&layers[i], &layers[i + 1]);
        if i % 2 == 0 {
            for &u in lower {
                for &v in upper {
                    edges.push((u, v));
                }
            }
        } else {
            match &spec.odd_patterns[i / 2] {
                OddPattern::Complete => {
                    for &u in lower {
                        for &v in upper {
                            edges.push((u, v));
                        }
                    }
                }
                OddPattern::Explicit(pairs) => {
                    for &(a, b) in pairs {
                        edges.push((lower[a], upper[b]));
                    }
                }
            }
        }
    }
    layers
}

/// Builds a single strip as a standalone graph; vertex 0 is the root and
/// ids grow layer by layer. Returns the graph and the layer map.
pub fn build_strip(spec: &StripSpec) -> Result<(Graph, Vec<Vec<usize>>)> {
    spec.validate()?;
    let mut edges = Vec::new();
    let layers = strip_edges(spec, 0, &mut edges);
    let g = Graph::new(spec.vertex_count(), edges)?;
    // BFS from the root must reproduce the layers exactly
    let dist = g.bfs_distances(0);
    for (i, layer) in layers.iter().enumerate() {
        for &v in layer {
            if dist[v] as usize != i {
                return Err(Error::InvalidFamilySpec(format!(
                    "vertex {v} of layer {i} sits at distance {} from the root",
                    dist[v]
                )));
            }
        }
    }
    Ok((g, layers))
}

/// Builds a `G2(k)` member. `k = 0` is outside the family proper and
/// must be requested explicitly via `allow_k0`.
pub fn build_g2(params: &G2Params, allow_k0: bool) -> Result<Graph> {
    if params.k == 0 && !allow_k0 {
        return Err(Error::InvalidFamilySpec(
            "k = 0 needs the explicit opt-in (allow_k0)".into(),
        ));
    }
    let expect = 2 * params.k + 1;
    for (s, strip) in params.strips.iter().enumerate() {
        strip.validate()?;
        if strip.length() != expect {
            return Err(Error::InvalidFamilySpec(format!(
                "strip {s} has length {}, expected {expect}",
                strip.length()
            )));
        }
    }
    if params.cross_edges.is_empty() {
        return Err(Error::InvalidFamilySpec(
            "cross edge set must be nonempty".into(),
        ));
    }

    let mut edges = Vec::new();
    let layers1 = strip_edges(&params.strips[0], 0, &mut edges);
    let base2 = params.strips[0].vertex_count();
    let layers2 = strip_edges(&params.strips[1], base2, &mut edges);
    let (t1, t2) = (layers1.last().unwrap(), layers2.last().unwrap());
    for &(i, j) in &params.cross_edges {
        if i >= t1.len() || j >= t2.len() {
            return Err(Error::InvalidFamilySpec(format!(
                "cross edge ({i},{j}) out of terminal range"
            )));
        }
        edges.push((t1[i], t2[j]));
    }
    let n = base2 + params.strips[1].vertex_count();
    let g = Graph::new(n, edges)?;

    let expect_diam = (4 * params.k + 3) as u32;
    let d = DistanceMatrix::new(&g)?;
    debug_assert_eq!(d.diameter(), expect_diam);
    debug_assert_eq!(d.dist(0, base2), expect_diam);
    Ok(g)
}

/// Builds a `G0(k, l)` member: `l >= 2` strips of length `2k` plus
/// `r_size` extra vertices, with one clique on the extras and all
/// terminal layers.
pub fn build_g0(params: &G0Params) -> Result<Graph> {
    if params.k == 0 {
        return Err(Error::InvalidFamilySpec("k must be at least 1".into()));
    }
    if params.ell() < 2 {
        return Err(Error::InvalidFamilySpec(
            "at least two strips are required".into(),
        ));
    }
    let expect = 2 * params.k;
    let mut edges = Vec::new();
    let mut base = 0;
    let mut clique = Vec::new();
    for (s, strip) in params.strips.iter().enumerate() {
        strip.validate()?;
        if strip.length() != expect {
            return Err(Error::InvalidFamilySpec(format!(
                "strip {s} has length {}, expected {expect}",
                strip.length()
            )));
        }
        let layers = strip_edges(strip, base, &mut edges);
        clique.extend_from_slice(layers.last().unwrap());
        base += strip.vertex_count();
    }
    clique.extend(base..base + params.r_size);
    let n = base + params.r_size;
    // one big clique on R and the terminal layers (their internal edges
    // are already present; Graph::new dedups)
    for (a, &u) in clique.iter().enumerate() {
        for &v in &clique[a + 1..] {
            edges.push((u, v));
        }
    }
    let g = Graph::new(n, edges)?;

    let d = DistanceMatrix::new(&g)?;
    debug_assert_eq!(d.diameter(), (4 * params.k + 1) as u32);
    debug_assert_eq!(d.ecc(0), (4 * params.k + 1) as u32);
    Ok(g)
}

/// Recognizes membership in `G0 (k >= 1, l >= 2)` or `G2 (k >= 1)`.
/// Returns `None` for non-members. Layers are re-derived from hop
/// distances, so the verdict does not depend on vertex order.
pub fn recognize(g: &Graph) -> Option<FamilyParams> {
    recognize_impl(g, false)
}

/// Like [`recognize`], but additionally matches the degenerate `G2(0)`
/// shape (two 1-strips joined at their terminal layers).
pub fn recognize_allow_k0(g: &Graph) -> Option<FamilyParams> {
    recognize_impl(g, true)
}

fn recognize_impl(g: &Graph, allow_k0: bool) -> Option<FamilyParams> {
    let d = DistanceMatrix::new(g).ok()?;
    let diam = d.diameter() as usize;
    if diam >= 3 && diam % 4 == 3 {
        let k = (diam - 3) / 4;
        if k >= 1 || allow_k0 {
            return recognize_g2(g, &d, k).map(FamilyParams::G2);
        }
    }
    if diam >= 5 && diam % 4 == 1 {
        let k = (diam - 1) / 4;
        return recognize_g0(g, &d, k).map(FamilyParams::G0);
    }
    None
}

fn recognize_g2(g: &Graph, d: &DistanceMatrix, k: usize) -> Option<G2Params> {
    let n = g.n();
    let diam = (4 * k + 3) as u32;
    for u in 0..n {
        for v in u + 1..n {
            if d.dist(u, v) == diam {
                if let Some(params) = try_g2_roots(g, d, k, u, v) {
                    return Some(params);
                }
            }
        }
    }
    None
}

fn try_g2_roots(g: &Graph, d: &DistanceMatrix, k: usize, r1: usize, r2: usize) -> Option<G2Params> {
    let n = g.n();
    let half = (2 * k + 1) as u32;
    let mut side = vec![0u8; n];
    for w in 0..n {
        match (d.dist(r1, w) <= half, d.dist(r2, w) <= half) {
            (true, false) => side[w] = 1,
            (false, true) => side[w] = 2,
            _ => return None, // sides must partition the vertex set
        }
    }
    let layers1 = collect_layers(d, r1, half, |w| side[w] == 1, n)?;
    let layers2 = collect_layers(d, r2, half, |w| side[w] == 2, n)?;

    // every edge: within a layer, between consecutive layers of one
    // side, or between the two terminal layers
    let mut cross = Vec::new();
    for (u, v) in g.edges() {
        let (lu, lv) = (d.dist(r1, u), d.dist(r1, v));
        if side[u] == side[v] {
            let (du, dv) = if side[u] == 1 {
                (lu, lv)
            } else {
                (d.dist(r2, u), d.dist(r2, v))
            };
            if du.abs_diff(dv) > 1 {
                return None;
            }
        } else {
            let (a, b) = if side[u] == 1 { (u, v) } else { (v, u) };
            if d.dist(r1, a) != half || d.dist(r2, b) != half {
                return None;
            }
            cross.push((a, b));
        }
    }

    let spec1 = strip_spec_from_layers(g, &layers1)?;
    let spec2 = strip_spec_from_layers(g, &layers2)?;
    let (t1, t2) = (layers1.last().unwrap(), layers2.last().unwrap());
    let mut cross_edges: Vec<(usize, usize)> = cross
        .into_iter()
        .map(|(a, b)| {
            (
                t1.binary_search(&a).expect("terminal member"),
                t2.binary_search(&b).expect("terminal member"),
            )
        })
        .collect();
    cross_edges.sort_unstable();
    if cross_edges.is_empty() {
        return None;
    }
    Some(G2Params {
        k,
        strips: [spec1, spec2],
        cross_edges,
    })
}

fn recognize_g0(g: &Graph, d: &DistanceMatrix, k: usize) -> Option<G0Params> {
    let n = g.n();
    let deep = (4 * k + 1) as u32;
    let shallow = (2 * k + 1) as u32;

    // the big clique is exactly the set of shallow-eccentricity vertices
    let clique: Vec<usize> = (0..n).filter(|&v| d.ecc(v) <= shallow).collect();
    if clique.is_empty() {
        return None;
    }
    for (a, &u) in clique.iter().enumerate() {
        for &v in &clique[a + 1..] {
            if !g.has_edge(u, v) {
                return None;
            }
        }
    }
    let in_clique = {
        let mut m = vec![false; n];
        for &v in &clique {
            m[v] = true;
        }
        m
    };

    // connected components away from the clique are the strip bodies
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if in_clique[start] || comp[start] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            for &v in g.neighbors(u) {
                if !in_clique[v] && comp[v] == usize::MAX {
                    comp[v] = id;
                    members.push(v);
                    queue.push(v);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    if comps.len() < 2 {
        return None;
    }

    let mut strips = Vec::with_capacity(comps.len());
    let mut terminal_of = vec![usize::MAX; n]; // clique vertex -> strip id
    for (id, members) in comps.iter().enumerate() {
        // terminal layer: clique vertices adjacent to this component
        let mut terminal: Vec<usize> = clique
            .iter()
            .copied()
            .filter(|&q| g.neighbors(q).iter().any(|&w| comp[w] == id))
            .collect();
        terminal.sort_unstable();
        if terminal.is_empty() {
            return None;
        }
        for &q in &terminal {
            if terminal_of[q] != usize::MAX {
                return None; // terminal layers must not overlap
            }
            terminal_of[q] = id;
        }

        let layers = find_g0_strip(g, d, k, members, &terminal, deep)?;
        strips.push((layers, terminal));
    }

    // classify every edge touching a strip body
    for (u, v) in g.edges() {
        if in_clique[u] && in_clique[v] {
            continue;
        }
        let (w, q) = if in_clique[v] { (u, v) } else { (v, u) };
        if in_clique[q] {
            // body-to-clique edges may only reach the matching terminal
            // from the second-to-last layer
            let id = comp[w];
            if terminal_of[q] != id {
                return None;
            }
            let (layers, _) = &strips[id];
            if layers[2 * k - 1].binary_search(&w).is_err() {
                return None;
            }
        } else {
            // body-to-body edges stay within one component and differ by
            // at most one layer — checked via the strip's own root
            let id = comp[w];
            if comp[q] != id {
                return None;
            }
            let root = strips[id].0[0][0];
            if d.dist(root, w).abs_diff(d.dist(root, q)) > 1 {
                return None;
            }
        }
    }

    let mut specs = Vec::with_capacity(strips.len());
    for (layers, terminal) in &strips {
        let mut full = layers.clone();
        full.push(terminal.clone());
        specs.push(strip_spec_from_layers(g, &full)?);
    }
    let r_size = clique.len() - strips.iter().map(|(_, t)| t.len()).sum::<usize>();
    Some(G0Params {
        k,
        strips: specs,
        r_size,
    })
}

/// Tries every component vertex as the strip root and returns the body
/// layers `B_0 .. B_{2k-1}` of the first that produces a consistent
/// layering reaching the given terminal.
fn find_g0_strip(
    g: &Graph,
    d: &DistanceMatrix,
    k: usize,
    members: &[usize],
    terminal: &[usize],
    deep: u32,
) -> Option<Vec<Vec<usize>>> {
    'root: for &r in members {
        if d.ecc(r) != deep {
            continue;
        }
        let mut layers: Vec<Vec<usize>> = vec![Vec::new(); 2 * k];
        for &w in members {
            let dist = d.dist(r, w) as usize;
            if dist >= 2 * k {
                continue 'root;
            }
            layers[dist].push(w);
        }
        if layers.iter().any(Vec::is_empty) {
            continue;
        }
        // terminal vertices must sit at distance exactly 2k from the root
        if terminal.iter().any(|&q| d.dist(r, q) as usize != 2 * k) {
            continue;
        }
        let mut full = layers.clone();
        full.push(terminal.to_vec());
        if strip_spec_from_layers(g, &full).is_some() {
            return Some(layers);
        }
    }
    None
}

/// Collects BFS layers `0..=half` on one side; fails on empty layers.
fn collect_layers<F>(
    d: &DistanceMatrix,
    root: usize,
    half: u32,
    on_side: F,
    n: usize,
) -> Option<Vec<Vec<usize>>>
where
    F: Fn(usize) -> bool,
{
    let mut layers: Vec<Vec<usize>> = vec![Vec::new(); half as usize + 1];
    for w in 0..n {
        if on_side(w) {
            layers[d.dist(root, w) as usize].push(w);
        }
    }
    if layers.iter().any(Vec::is_empty) {
        return None;
    }
    Some(layers)
}

/// Validates layer cliques and even-transition complete joins, then
/// reads back a [`StripSpec`]; odd transitions that happen to be
/// complete normalize to [`OddPattern::Complete`].
fn strip_spec_from_layers(g: &Graph, layers: &[Vec<usize>]) -> Option<StripSpec> {
    if layers[0].len() != 1 {
        return None;
    }
    for layer in layers {
        for (a, &u) in layer.iter().enumerate() {
            for &v in &layer[a + 1..] {
                if !g.has_edge(u, v) {
                    return None;
                }
            }
        }
    }
    let mut odd_patterns = Vec::new();
    for i in 0..layers.len() - 1 {
        let (lower, upper) = (&layers[i], &layers[i + 1]);
        if i % 2 == 0 {
            for &u in lower {
                for &v in upper {
                    if !g.has_edge(u, v) {
                        return None;
                    }
                }
            }
        } else {
            let mut pairs = Vec::new();
            for (a, &u) in lower.iter().enumerate() {
                for (b, &v) in upper.iter().enumerate() {
                    if g.has_edge(u, v) {
                        pairs.push((a, b));
                    }
                }
            }
            // BFS layering already guarantees every upper vertex has a
            // lower neighbor; normalize complete patterns
            if pairs.len() == lower.len() * upper.len() {
                odd_patterns.push(OddPattern::Complete);
            } else {
                pairs.sort_unstable();
                odd_patterns.push(OddPattern::Explicit(pairs));
            }
        }
    }
    Some(StripSpec {
        layer_sizes: layers.iter().map(Vec::len).collect(),
        odd_patterns,
    })
}
