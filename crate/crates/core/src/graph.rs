//! Bounded-degree simple graphs: storage, generators, derived graphs and
//! structural queries.
//!
//! Vertices are dense 0-based indices. These are storage identifiers only;
//! adversarial LOCAL-model IDs live in [`crate::sim`].

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};

/// Immutable simple graph in CSR form with a canonical sorted edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// CSR offsets into `nbrs`/`inc`.
    offs: Vec<usize>,
    /// Neighbor lists, sorted ascending per vertex.
    nbrs: Vec<usize>,
    /// Incident edge ids aligned with `nbrs`.
    inc: Vec<usize>,
    /// Canonical edge list: u < v, sorted lexicographically.
    edges: Vec<(usize, usize)>,
    max_degree: usize,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops and parallel edges.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut canon: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InfeasibleSpec(format!("loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InfeasibleSpec(format!(
                    "edge {a}-{b} out of range for n={n}"
                )));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InfeasibleSpec("parallel edge".into()));
        }
        let mut deg = vec![0usize; n];
        for &(u, v) in &canon {
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut offs = vec![0usize; n + 1];
        for v in 0..n {
            offs[v + 1] = offs[v] + deg[v];
        }
        let mut cursor = offs.clone();
        let mut nbrs = vec![0usize; 2 * canon.len()];
        let mut inc = vec![0usize; 2 * canon.len()];
        for (eid, &(u, v)) in canon.iter().enumerate() {
            nbrs[cursor[u]] = v;
            inc[cursor[u]] = eid;
            cursor[u] += 1;
            nbrs[cursor[v]] = u;
            inc[cursor[v]] = eid;
            cursor[v] += 1;
        }
        // Canonical edge order inserts neighbors in ascending order already,
        // except at the lower endpoint where higher-indexed partners come
        // later anyway. Sort each range to be safe.
        for v in 0..n {
            let range = offs[v]..offs[v + 1];
            let mut pairs: Vec<(usize, usize)> = nbrs[range.clone()]
                .iter()
                .copied()
                .zip(inc[range.clone()].iter().copied())
                .collect();
            pairs.sort_unstable();
            for (i, (w, e)) in pairs.into_iter().enumerate() {
                nbrs[offs[v] + i] = w;
                inc[offs[v] + i] = e;
            }
        }
        let max_degree = deg.iter().copied().max().unwrap_or(0);
        Ok(Graph {
            n,
            offs,
            nbrs,
            inc,
            edges: canon,
            max_degree,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offs[v + 1] - self.offs[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.nbrs[self.offs[v]..self.offs[v + 1]]
    }

    /// Edge ids incident to `v`, aligned with `neighbors(v)`.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.inc[self.offs[v]..self.offs[v + 1]]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    /// Given an edge id and one endpoint, returns the other endpoint.
    pub fn other_endpoint(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// BFS distances from `v`, truncated at `max_dist` (`usize::MAX` marks
    /// unreached vertices).
    pub fn bfs_distances(&self, v: usize, max_dist: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            if dist[u] == max_dist {
                continue;
            }
            for &w in self.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest BFS eccentricity over all vertices of the (possibly
    /// disconnected) graph, ignoring unreachable pairs.
    pub fn diameter(&self) -> usize {
        let mut best = 0;
        for v in 0..self.n {
            let dist = self.bfs_distances(v, usize::MAX);
            for &d in &dist {
                if d != usize::MAX && d > best {
                    best = d;
                }
            }
        }
        best
    }
}

/// Graph with a total edge labeling into `1..=delta_labels`.
#[derive(Debug, Clone)]
pub struct EdgeLabeledGraph {
    pub graph: Graph,
    /// Label per canonical edge id, values in `1..=delta_labels`.
    pub edge_labels: Vec<u32>,
    pub delta_labels: u32,
    /// True when every vertex is incident to at least one edge of each label.
    pub nice: bool,
}

impl EdgeLabeledGraph {
    pub fn new(graph: Graph, edge_labels: Vec<u32>, delta_labels: u32) -> Result<EdgeLabeledGraph> {
        if edge_labels.len() != graph.edge_count() {
            return Err(Error::InfeasibleSpec(
                "one label per edge is required".into(),
            ));
        }
        if edge_labels
            .iter()
            .any(|&l| l == 0 || l > delta_labels)
        {
            return Err(Error::InfeasibleSpec(format!(
                "edge labels must lie in 1..={delta_labels}"
            )));
        }
        let nice = compute_nice(&graph, &edge_labels, delta_labels);
        Ok(EdgeLabeledGraph {
            graph,
            edge_labels,
            delta_labels,
            nice,
        })
    }

    pub fn label_of(&self, e: usize) -> u32 {
        self.edge_labels[e]
    }

    /// Label of the edge between `u` and `v`, if present.
    pub fn label_between(&self, u: usize, v: usize) -> Option<u32> {
        self.graph.edge_id(u, v).map(|e| self.edge_labels[e])
    }
}

fn compute_nice(graph: &Graph, labels: &[u32], delta_labels: u32) -> bool {
    (0..graph.vertex_count()).all(|v| {
        let mut seen = vec![false; delta_labels as usize + 1];
        for &e in graph.incident_edges(v) {
            seen[labels[e] as usize] = true;
        }
        (1..=delta_labels).all(|l| seen[l as usize])
    })
}

/// Rooted, label-carrying radius-`t` neighborhood in canonical form.
///
/// Local indices follow a breadth-first traversal from the root with
/// children ordered by (label, original index), so two balls that agree as
/// labeled rooted graphs produce identical structs. With injective labels
/// (IDs) this is a full canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedBall {
    pub root: usize,
    pub local_graph: Graph,
    pub labels: Vec<u64>,
    pub radius: usize,
    /// Local index -> original vertex id (not part of the canonical form).
    pub original: Vec<usize>,
}

/// Extracts the radius-`t` ball around `v`, optionally restricting a vertex
/// labeling to it.
pub fn ball(g: &Graph, v: usize, t: usize, labels: Option<&[u64]>) -> RootedBall {
    let dist = g.bfs_distances(v, t);
    // Canonical ordering: BFS layers, children sorted by (label, index).
    let mut order: Vec<usize> = Vec::new();
    let mut local = vec![usize::MAX; g.vertex_count()];
    let key = |u: usize| (labels.map_or(0, |l| l[u]), u);
    order.push(v);
    local[v] = 0;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        let mut next: Vec<usize> = g
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| dist[w] != usize::MAX && dist[w] == dist[u] + 1 && local[w] == usize::MAX)
            .collect();
        next.sort_by_key(|&w| key(w));
        for w in next {
            local[w] = order.len();
            order.push(w);
        }
    }
    let mut ball_edges = Vec::new();
    for &u in &order {
        for &w in g.neighbors(u) {
            if local[w] != usize::MAX && u < w {
                ball_edges.push((local[u], local[w]));
            }
        }
    }
    let local_graph = Graph::from_edges(order.len(), &ball_edges).expect("induced ball is simple");
    let ball_labels = labels.map_or_else(Vec::new, |l| order.iter().map(|&u| l[u]).collect());
    RootedBall {
        root: 0,
        local_graph,
        labels: ball_labels,
        radius: t,
        original: order,
    }
}

/// Graph family descriptors accepted by [`gen_graph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    Cycle { n: usize },
    Path { n: usize },
    Grid { w: usize, h: usize, wrap: bool },
    Complete { n: usize },
    RandomRegular { n: usize, d: usize, seed: u64 },
    TruncatedRegularTree { delta: usize, depth: usize },
}

/// Generates a graph of the requested family. Randomized families are
/// deterministic in the supplied seed. `max_degree_cap` rejects families
/// whose maximum degree exceeds it.
pub fn gen_graph(spec: &FamilySpec, max_degree_cap: Option<usize>) -> Result<Graph> {
    let g = match *spec {
        FamilySpec::Cycle { n } => {
            if n < 3 {
                return Err(Error::InfeasibleSpec(format!("cycle needs n >= 3, got {n}")));
            }
            let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Graph::from_edges(n, &edges)?
        }
        FamilySpec::Path { n } => {
            if n == 0 {
                return Err(Error::InfeasibleSpec("path needs n >= 1".into()));
            }
            let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            Graph::from_edges(n, &edges)?
        }
        FamilySpec::Grid { w, h, wrap } => {
            if w == 0 || h == 0 {
                return Err(Error::InfeasibleSpec("grid needs w,h >= 1".into()));
            }
            if wrap && (w < 3 || h < 3) {
                return Err(Error::InfeasibleSpec(
                    "wrapped grid needs w,h >= 3 to stay simple".into(),
                ));
            }
            let id = |x: usize, y: usize| y * w + x;
            let mut edges = Vec::new();
            for y in 0..h {
                for x in 0..w {
                    if x + 1 < w {
                        edges.push((id(x, y), id(x + 1, y)));
                    } else if wrap {
                        edges.push((id(x, y), id(0, y)));
                    }
                    if y + 1 < h {
                        edges.push((id(x, y), id(x, y + 1)));
                    } else if wrap {
                        edges.push((id(x, y), id(x, 0)));
                    }
                }
            }
            Graph::from_edges(w * h, &edges)?
        }
        FamilySpec::Complete { n } => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n, &edges)?
        }
        FamilySpec::RandomRegular { n, d, seed } => random_regular(n, d, seed)?,
        FamilySpec::TruncatedRegularTree { delta, depth } => truncated_regular_tree(delta, depth)?,
    };
    if let Some(cap) = max_degree_cap {
        if g.max_degree() > cap {
            return Err(Error::DegreeOverflow {
                found: g.max_degree(),
                cap,
            });
        }
    }
    Ok(g)
}

/// Retry budget for whole-pairing resampling in the configuration model.
pub const CONFIG_MODEL_RETRIES: usize = 1000;

/// Configuration-model sampler: pairs degree stubs uniformly and resamples
/// the whole pairing until the result is simple.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n {
        return Err(Error::InfeasibleSpec(format!(
            "regular degree {d} needs more than {n} vertices"
        )));
    }
    if n * d % 2 != 0 {
        return Err(Error::InfeasibleSpec(format!(
            "n*d must be even, got n={n} d={d}"
        )));
    }
    if d == 0 {
        return Graph::from_edges(n, &[]);
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut stubs: Vec<u32> = (0..n).flat_map(|v| std::iter::repeat(v as u32).take(d)).collect();
    let half = stubs.len() / 2;
    'resample: for _ in 0..CONFIG_MODEL_RETRIES {
        stubs.shuffle(&mut rng);
        let mut seen = std::collections::HashSet::with_capacity(half * 2);
        for i in 0..half {
            let (u, v) = (stubs[i], stubs[half + i]);
            if u == v {
                continue 'resample;
            }
            if !seen.insert((u.min(v), u.max(v))) {
                continue 'resample;
            }
        }
        let edges: Vec<(usize, usize)> = (0..half)
            .map(|i| (stubs[i] as usize, stubs[half + i] as usize))
            .collect();
        return Graph::from_edges(n, &edges);
    }
    Err(Error::InfeasibleSpec(format!(
        "configuration model produced no simple pairing in {CONFIG_MODEL_RETRIES} tries"
    )))
}

fn truncated_regular_tree(delta: usize, depth: usize) -> Result<Graph> {
    if delta == 0 {
        return Err(Error::InfeasibleSpec("tree needs delta >= 1".into()));
    }
    let mut edges = Vec::new();
    let mut next = 1usize;
    // frontier holds the vertices of the current layer.
    let mut frontier = vec![0usize];
    for layer in 0..depth {
        let children_per = if layer == 0 { delta } else { delta - 1 };
        let mut new_frontier = Vec::new();
        for &p in &frontier {
            for _ in 0..children_per {
                edges.push((p, next));
                new_frontier.push(next);
                next += 1;
            }
        }
        frontier = new_frontier;
    }
    Graph::from_edges(next, &edges)
}

/// The k-th power: vertices adjacent iff their distance in `g` lies in 1..=k.
pub fn power(g: &Graph, k: usize) -> Graph {
    assert!(k >= 1, "power needs k >= 1");
    if k == 1 {
        return g.clone();
    }
    let mut edges = Vec::new();
    for v in 0..g.vertex_count() {
        let dist = g.bfs_distances(v, k);
        for (w, &d) in dist.iter().enumerate() {
            if d != usize::MAX && d >= 1 && v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edges(g.vertex_count(), &edges).expect("power of a simple graph is simple")
}

/// Line graph: one vertex per edge of `g`, adjacent iff the edges share an
/// endpoint. Vertex i of the result is canonical edge i of `g`.
pub fn line_graph(g: &Graph) -> Graph {
    let mut edges = Vec::new();
    for v in 0..g.vertex_count() {
        let inc = g.incident_edges(v);
        for i in 0..inc.len() {
            for j in i + 1..inc.len() {
                edges.push((inc[i].min(inc[j]), inc[i].max(inc[j])));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(g.edge_count(), &edges).expect("line graph is simple")
}

/// Length of the shortest cycle; `None` for forests.
///
/// Runs a truncated BFS from every vertex and records the best cycle closed
/// by a non-tree edge, with early exit once no shorter cycle can appear.
pub fn girth(g: &Graph) -> Option<usize> {
    let mut best = usize::MAX;
    for v in 0..g.vertex_count() {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        let mut parent = vec![usize::MAX; g.vertex_count()];
        let mut queue = VecDeque::new();
        dist[v] = 0;
        queue.push_back(v);
        while let Some(u) = queue.pop_front() {
            if best != usize::MAX && 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w && dist[w] >= dist[u] {
                    // Non-tree edge closes a cycle through v of this length.
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Growth bound f(r), either closed-form or tabulated.
///
/// Tabulated bounds clamp to their last value past the table end; the clamp
/// is reported through [`GrowthBound::clamped`].
pub enum GrowthBound {
    ClosedForm {
        name: String,
        f: Box<dyn Fn(usize) -> u64 + Send + Sync>,
    },
    Table {
        name: String,
        values: Vec<u64>,
    },
}

impl GrowthBound {
    pub fn closed_form(
        name: impl Into<String>,
        f: impl Fn(usize) -> u64 + Send + Sync + 'static,
    ) -> GrowthBound {
        GrowthBound::ClosedForm {
            name: name.into(),
            f: Box::new(f),
        }
    }

    pub fn table(name: impl Into<String>, values: Vec<u64>) -> GrowthBound {
        assert!(!values.is_empty(), "tabulated bound needs at least one value");
        GrowthBound::Table {
            name: name.into(),
            values,
        }
    }

    pub fn name(&self) -> &str {
        match self {
            GrowthBound::ClosedForm { name, .. } => name,
            GrowthBound::Table { name, .. } => name,
        }
    }

    pub fn evaluate(&self, r: usize) -> u64 {
        match self {
            GrowthBound::ClosedForm { f, .. } => f(r),
            GrowthBound::Table { values, .. } => {
                *values.get(r).unwrap_or_else(|| values.last().unwrap())
            }
        }
    }

    /// True when evaluating at `r` falls past a tabulated range.
    pub fn clamped(&self, r: usize) -> bool {
        matches!(self, GrowthBound::Table { values, .. } if r >= values.len())
    }
}

/// Outcome of [`check_growth`]: pass, or the first witness in (r, v) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GrowthCheck {
    Pass,
    Fail {
        vertex: usize,
        radius: usize,
        ball: u64,
        bound: u64,
    },
}

impl GrowthCheck {
    pub fn passed(&self) -> bool {
        matches!(self, GrowthCheck::Pass)
    }
}

/// Verifies |B(v,r)| < f(r) for every vertex and every radius up to the
/// graph diameter. Per vertex, a single BFS yields the whole ball-size
/// profile; radii where f(r) exceeds n+… cannot fail and are skipped.
pub fn check_growth(g: &Graph, f: &GrowthBound) -> GrowthCheck {
    let n = g.vertex_count() as u64;
    for v in 0..g.vertex_count() {
        let dist = g.bfs_distances(v, usize::MAX);
        let mut ecc = 0usize;
        let mut counts = vec![0u64; 1];
        for &d in &dist {
            if d == usize::MAX {
                continue;
            }
            if d >= counts.len() {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
            ecc = ecc.max(d);
        }
        let mut ball = 0u64;
        for r in 0..=ecc {
            ball += counts.get(r).copied().unwrap_or(0);
            let bound = f.evaluate(r);
            if bound > n {
                // Larger radii only grow the bound if f is monotone; the
                // ball can never reach it again. Still scan: monotonicity is
                // an invariant of the type, so breaking here is sound.
                break;
            }
            if ball >= bound {
                return GrowthCheck::Fail {
                    vertex: v,
                    radius: r,
                    ball,
                    bound,
                };
            }
        }
    }
    GrowthCheck::Pass
}

/// Unions d-regular parts on a shared vertex set into an edge-labeled graph;
/// edge labels are 1-based part indices.
pub fn union_labeled(parts: &[Graph]) -> Result<EdgeLabeledGraph> {
    if parts.is_empty() {
        return Err(Error::InfeasibleSpec("union of zero parts".into()));
    }
    let n = parts[0].vertex_count();
    if parts.iter().any(|p| p.vertex_count() != n) {
        return Err(Error::InfeasibleSpec(
            "all parts must share the vertex count".into(),
        ));
    }
    let mut labeled: Vec<((usize, usize), u32)> = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        for &(u, v) in part.edges() {
            labeled.push(((u, v), i as u32 + 1));
        }
    }
    labeled.sort_unstable();
    for w in labeled.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::EdgeCollision(w[0].0 .0, w[0].0 .1));
        }
    }
    let edges: Vec<(usize, usize)> = labeled.iter().map(|&(e, _)| e).collect();
    let labels: Vec<u32> = labeled.iter().map(|&(_, l)| l).collect();
    let graph = Graph::from_edges(n, &edges)?;
    EdgeLabeledGraph::new(graph, labels, parts.len() as u32)
}

/// Detects a K_{k} subgraph; returns one witness clique if present.
/// Intended for bounded-degree graphs where k-1 <= max degree.
pub fn find_clique(g: &Graph, k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(vec![]);
    }
    if k == 1 {
        return (g.vertex_count() > 0).then(|| vec![0]);
    }
    for v in 0..g.vertex_count() {
        let nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
        if nbrs.len() < k - 1 {
            continue;
        }
        let mut pick = Vec::with_capacity(k - 1);
        if choose_clique(g, &nbrs, 0, k - 1, &mut pick) {
            let mut clique = vec![v];
            clique.extend_from_slice(&pick);
            return Some(clique);
        }
    }
    None
}

fn choose_clique(g: &Graph, pool: &[usize], from: usize, need: usize, pick: &mut Vec<usize>) -> bool {
    if need == 0 {
        return true;
    }
    for i in from..pool.len() {
        let cand = pool[i];
        if pick.iter().all(|&p| g.has_edge(p, cand)) {
            pick.push(cand);
            if choose_clique(g, pool, i + 1, need - 1, pick) {
                return true;
            }
            pick.pop();
        }
    }
    false
}

/// Writes the graph text format: header `n m L`, then `u v [label]` lines in
/// canonical sorted order. Round-trips bit-exact.
pub fn write_graph_text(g: &Graph, labels: Option<&EdgeLabeledGraph>) -> String {
    let mut out = String::new();
    let label_count = labels.map_or(0, |l| l.delta_labels);
    let _ = writeln!(out, "{} {} {}", g.vertex_count(), g.edge_count(), label_count);
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match labels {
            Some(l) => {
                let _ = writeln!(out, "{} {} {}", u, v, l.edge_labels[e]);
            }
            None => {
                let _ = writeln!(out, "{} {}", u, v);
            }
        }
    }
    out
}

/// Parsed graph text file: plain or edge-labeled.
pub enum ParsedGraph {
    Plain(Graph),
    Labeled(EdgeLabeledGraph),
}

impl ParsedGraph {
    pub fn graph(&self) -> &Graph {
        match self {
            ParsedGraph::Plain(g) => g,
            ParsedGraph::Labeled(l) => &l.graph,
        }
    }
}

pub fn read_graph_text(text: &str) -> Result<ParsedGraph> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty graph file".into()))?;
    let mut parts = header.split_whitespace();
    let n: usize = parse_field(parts.next(), "n")?;
    let m: usize = parse_field(parts.next(), "m")?;
    let l: u32 = parse_field(parts.next(), "L")?;
    let mut edges = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse("missing edge line".into()))?;
        let mut fields = line.split_whitespace();
        let u: usize = parse_field(fields.next(), "u")?;
        let v: usize = parse_field(fields.next(), "v")?;
        if u >= v {
            return Err(Error::Parse(format!("edge {u} {v} not in u < v form")));
        }
        edges.push((u, v));
        if l > 0 {
            let lab: u32 = parse_field(fields.next(), "label")?;
            labels.push(lab);
        }
    }
    let graph = Graph::from_edges(n, &edges)?;
    if l > 0 {
        Ok(ParsedGraph::Labeled(EdgeLabeledGraph::new(graph, labels, l)?))
    } else {
        Ok(ParsedGraph::Plain(graph))
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, name: &str) -> Result<T> {
    field
        .ok_or_else(|| Error::Parse(format!("missing field {name}")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad field {name}")))
}

/// Fixed Petersen graph, a standard test instance (3-regular, girth 5).
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// Circular ladder (prism over an n-cycle): 3-regular, bipartite iff n even.
pub fn circular_ladder(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InfeasibleSpec("circular ladder needs n >= 3".into()));
    }
    let mut edges = Vec::new();
    for i in 0..n {
        edges.push((i, (i + 1) % n));
        edges.push((n + i, n + (i + 1) % n));
        edges.push((i, n + i));
    }
    Graph::from_edges(2 * n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_counts() {
        let g = gen_graph(&FamilySpec::Cycle { n: 5 }, None).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(g.max_degree(), 2);
    }

    #[test]
    fn grid_counts() {
        let g = gen_graph(
            &FamilySpec::Grid {
                w: 3,
                h: 3,
                wrap: false,
            },
            None,
        )
        .unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.max_degree(), 4);
    }

    #[test]
    fn random_regular_is_simple_and_regular() {
        let g = gen_graph(
            &FamilySpec::RandomRegular {
                n: 100,
                d: 3,
                seed: 7,
            },
            None,
        )
        .unwrap();
        assert_eq!(g.edge_count(), 150);
        for v in 0..100 {
            assert_eq!(g.degree(v), 3);
            // no loops, no duplicate neighbors
            let nb = g.neighbors(v);
            assert!(!nb.contains(&v));
            assert!(nb.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn random_regular_rejects_odd_sum() {
        let err = gen_graph(
            &FamilySpec::RandomRegular {
                n: 5,
                d: 3,
                seed: 1,
            },
            None,
        );
        assert!(matches!(err, Err(Error::InfeasibleSpec(_))));
    }

    #[test]
    fn degree_cap_enforced() {
        let err = gen_graph(&FamilySpec::Complete { n: 6 }, Some(3));
        assert!(matches!(err, Err(Error::DegreeOverflow { found: 5, cap: 3 })));
    }

    #[test]
    fn power_of_cycle() {
        let c6 = gen_graph(&FamilySpec::Cycle { n: 6 }, None).unwrap();
        let p = power(&c6, 2);
        for v in 0..6 {
            assert_eq!(p.degree(v), 4);
        }
        assert_eq!(power(&c6, 1), c6);
    }

    #[test]
    fn power_of_path_is_complete() {
        let p3 = gen_graph(&FamilySpec::Path { n: 3 }, None).unwrap();
        let sq = power(&p3, 2);
        assert_eq!(sq.edge_count(), 3);
        assert_eq!(sq.max_degree(), 2);
    }

    #[test]
    fn power_degrees_match_ball_oracle() {
        let g = gen_graph(
            &FamilySpec::Grid {
                w: 5,
                h: 5,
                wrap: false,
            },
            None,
        )
        .unwrap();
        let p = power(&g, 3);
        for v in 0..g.vertex_count() {
            let b = ball(&g, v, 3, None);
            assert_eq!(p.degree(v), b.local_graph.vertex_count() - 1);
        }
    }

    #[test]
    fn line_graph_shapes() {
        let k3 = gen_graph(&FamilySpec::Complete { n: 3 }, None).unwrap();
        let l = line_graph(&k3);
        assert_eq!(l.vertex_count(), 3);
        assert_eq!(l.edge_count(), 3);

        let p4 = gen_graph(&FamilySpec::Path { n: 4 }, None).unwrap();
        let lp = line_graph(&p4);
        assert_eq!(lp.vertex_count(), 3);
        assert_eq!(lp.edge_count(), 2);

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let ls = line_graph(&star);
        assert_eq!(ls.vertex_count(), 3);
        assert_eq!(ls.edge_count(), 3);
    }

    #[test]
    fn line_graph_degree_identity() {
        let g = gen_graph(
            &FamilySpec::RandomRegular {
                n: 20,
                d: 4,
                seed: 3,
            },
            None,
        )
        .unwrap();
        let l = line_graph(&g);
        assert_eq!(l.vertex_count(), g.edge_count());
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            assert_eq!(l.degree(e), g.degree(u) + g.degree(v) - 2);
        }
    }

    #[test]
    fn ball_shapes() {
        let c8 = gen_graph(&FamilySpec::Cycle { n: 8 }, None).unwrap();
        let b = ball(&c8, 3, 2, None);
        assert_eq!(b.local_graph.vertex_count(), 5);
        assert_eq!(b.local_graph.edge_count(), 4);

        let tree = gen_graph(
            &FamilySpec::TruncatedRegularTree { delta: 3, depth: 4 },
            None,
        )
        .unwrap();
        let b = ball(&tree, 0, 2, None);
        assert_eq!(b.local_graph.vertex_count(), 10);

        let b0 = ball(&c8, 5, 0, None);
        assert_eq!(b0.local_graph.vertex_count(), 1);
    }

    #[test]
    fn girth_values() {
        let c5 = gen_graph(&FamilySpec::Cycle { n: 5 }, None).unwrap();
        assert_eq!(girth(&c5), Some(5));
        let tree = gen_graph(
            &FamilySpec::TruncatedRegularTree { delta: 3, depth: 3 },
            None,
        )
        .unwrap();
        assert_eq!(girth(&tree), None);
        assert_eq!(girth(&petersen()), Some(5));
    }

    #[test]
    fn growth_checks() {
        let g = gen_graph(
            &FamilySpec::Grid {
                w: 9,
                h: 9,
                wrap: false,
            },
            None,
        )
        .unwrap();
        let f = GrowthBound::closed_form("2r^2+2r+2", |r| {
            let r = r as u64;
            2 * r * r + 2 * r + 2
        });
        assert!(check_growth(&g, &f).passed());

        let tree = gen_graph(
            &FamilySpec::TruncatedRegularTree { delta: 3, depth: 12 },
            None,
        )
        .unwrap();
        // |B(root, 10)| = 3 * 2^10 - 2 = 3070 >= 10^3
        let b = ball(&tree, 0, 10, None);
        assert_eq!(b.local_graph.vertex_count(), 3070);
        let cubic = GrowthBound::closed_form("r^3", |r| (r as u64).pow(3));
        let check = check_growth(&tree, &cubic);
        match check {
            GrowthCheck::Fail { vertex, radius, ball, bound } => {
                let d = tree.bfs_distances(vertex, radius);
                let count = d.iter().filter(|&&x| x != usize::MAX).count() as u64;
                assert_eq!(count, ball);
                assert!(ball >= bound);
            }
            GrowthCheck::Pass => panic!("cubic bound must fail on a 3-regular tree"),
        }

        let n = g.vertex_count() as u64;
        let constant = GrowthBound::closed_form("n+1", move |_| n + 1);
        assert!(check_growth(&g, &constant).passed());
    }

    #[test]
    fn union_labeled_cases() {
        let part = gen_graph(&FamilySpec::Cycle { n: 6 }, None).unwrap();
        let u = union_labeled(std::slice::from_ref(&part)).unwrap();
        assert!(u.nice);
        assert!(u.edge_labels.iter().all(|&l| l == 1));

        let m1 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let m2 = Graph::from_edges(4, &[(0, 2), (1, 3)]).unwrap();
        let u = union_labeled(&[m1.clone(), m2]).unwrap();
        assert!(u.nice);
        assert_eq!(u.graph.max_degree(), 2);

        let clash = union_labeled(&[m1.clone(), m1]);
        assert!(matches!(clash, Err(Error::EdgeCollision(_, _))));
    }

    #[test]
    fn union_labeled_seeded_audit() {
        // Parts may collide; resample upstream until disjoint.
        let mut seed = 0;
        let u = loop {
            let candidate: Vec<Graph> = (0..3)
                .map(|i| random_regular(50, 4, seed * 17 + i).unwrap())
                .collect();
            if let Ok(u) = union_labeled(&candidate) {
                break u;
            }
            seed += 1;
        };
        assert_eq!(u.graph.max_degree(), 12);
        assert!(u.nice);
        // per-label degree audit
        for v in 0..50 {
            let mut count = vec![0usize; 4];
            for &e in u.graph.incident_edges(v) {
                count[u.edge_labels[e] as usize] += 1;
            }
            for l in 1..=3 {
                assert_eq!(count[l], 4);
            }
        }
    }

    #[test]
    fn graph_text_round_trip() {
        let g = gen_graph(
            &FamilySpec::RandomRegular {
                n: 30,
                d: 3,
                seed: 5,
            },
            None,
        )
        .unwrap();
        let text = write_graph_text(&g, None);
        let parsed = read_graph_text(&text).unwrap();
        let again = write_graph_text(parsed.graph(), None);
        assert_eq!(text, again);
    }

    #[test]
    fn ball_matches_bfs_frontier_union() {
        let g = random_regular(40, 3, 11).unwrap();
        for t in 0..4 {
            let b = ball(&g, 7, t, None);
            let dist = g.bfs_distances(7, t);
            let expect: std::collections::BTreeSet<usize> = dist
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != usize::MAX)
                .map(|(v, _)| v)
                .collect();
            let got: std::collections::BTreeSet<usize> = b.original.iter().copied().collect();
            assert_eq!(expect, got);
        }
    }
}
