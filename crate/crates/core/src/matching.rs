//! Matchings, augmenting paths and stage-wise elimination of short
//! augmenting paths.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A matching as an edge-id set plus derived coverage data.
#[derive(Debug, Clone)]
pub struct Matching {
    /// matched[e] is true iff canonical edge e is in the matching.
    pub matched: Vec<bool>,
    /// mate[v] is the matched edge at v, if any.
    pub mate: Vec<Option<usize>>,
}

impl Matching {
    pub fn empty(g: &Graph) -> Matching {
        Matching {
            matched: vec![false; g.edge_count()],
            mate: vec![None; g.vertex_count()],
        }
    }

    pub fn size(&self) -> usize {
        self.matched.iter().filter(|&&b| b).count()
    }

    pub fn unmatched(&self) -> Vec<usize> {
        self.mate
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_none())
            .map(|(v, _)| v)
            .collect()
    }

    pub fn is_covered(&self, v: usize) -> bool {
        self.mate[v].is_some()
    }

    fn insert(&mut self, g: &Graph, e: usize) {
        let (u, v) = g.endpoints(e);
        debug_assert!(self.mate[u].is_none() && self.mate[v].is_none());
        self.matched[e] = true;
        self.mate[u] = Some(e);
        self.mate[v] = Some(e);
    }

    fn remove(&mut self, g: &Graph, e: usize) {
        let (u, v) = g.endpoints(e);
        debug_assert!(self.matched[e]);
        self.matched[e] = false;
        self.mate[u] = None;
        self.mate[v] = None;
    }

    /// Full consistency audit: no two matched edges share a vertex.
    pub fn validate(&self, g: &Graph) -> bool {
        let mut count = vec![0usize; g.vertex_count()];
        for (e, &m) in self.matched.iter().enumerate() {
            if m {
                let (u, v) = g.endpoints(e);
                count[u] += 1;
                count[v] += 1;
            }
        }
        count.iter().all(|&c| c <= 1)
            && (0..g.vertex_count()).all(|v| (count[v] == 1) == self.mate[v].is_some())
    }
}

/// An augmenting path as its vertex sequence: endpoints unmatched, matched
/// edges at the even positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugPath {
    pub vertices: Vec<usize>,
}

impl AugPath {
    pub fn edge_len(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Checks the augmenting-path shape against a matching.
    pub fn validate(&self, g: &Graph, m: &Matching) -> bool {
        let vs = &self.vertices;
        if vs.len() < 2 || vs.len() % 2 != 0 {
            return false;
        }
        let mut seen = std::collections::HashSet::new();
        if !vs.iter().all(|&v| seen.insert(v)) {
            return false;
        }
        if m.is_covered(vs[0]) || m.is_covered(*vs.last().unwrap()) {
            return false;
        }
        for i in 0..vs.len() - 1 {
            let e = match g.edge_id(vs[i], vs[i + 1]) {
                Some(e) => e,
                None => return false,
            };
            let should_match = i % 2 == 1;
            if m.matched[e] != should_match {
                return false;
            }
        }
        true
    }
}

/// Greedy maximal matching scanning vertices in the given order, matching
/// each to its least unmatched neighbor.
pub fn maximal_matching(g: &Graph, order: &[usize]) -> Matching {
    let mut m = Matching::empty(g);
    for &v in order {
        if m.is_covered(v) {
            continue;
        }
        for (i, &w) in g.neighbors(v).iter().enumerate() {
            if !m.is_covered(w) {
                m.insert(g, g.incident_edges(v)[i]);
                break;
            }
        }
    }
    m
}

/// Shortest augmenting path with fewer than `max_len` edges, or None.
///
/// Bipartite graphs use a multi-source alternating BFS (exact there);
/// general graphs fall back to iterative-deepening DFS over simple
/// alternating paths, which is exact for the bounded lengths the stages
/// use.
pub fn find_aug_path(g: &Graph, m: &Matching, max_len: usize) -> Option<AugPath> {
    if max_len <= 1 {
        return None;
    }
    match bipartition(g) {
        Some(side) => find_aug_path_bfs(g, m, max_len, &side),
        None => find_aug_path_dfs(g, m, max_len),
    }
}

fn bipartition(g: &Graph) -> Option<Vec<u8>> {
    let n = g.vertex_count();
    let mut side = vec![u8::MAX; n];
    for s in 0..n {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return None;
                }
            }
        }
    }
    Some(side)
}

/// Alternating BFS rooted at the unmatched side-0 vertices. Every
/// augmenting path has odd edge count, hence exactly one side-0 endpoint,
/// so this search is exact on bipartite graphs. Even layers leave side 0
/// over unmatched edges; odd layers return over the matched edge.
fn find_aug_path_bfs(g: &Graph, m: &Matching, max_len: usize, side: &[u8]) -> Option<AugPath> {
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for v in 0..n {
        if side[v] == 0 && !m.is_covered(v) {
            dist[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        let d = dist[u];
        if d + 1 >= max_len {
            continue;
        }
        if side[u] == 0 {
            // leave over unmatched edges
            for (i, &w) in g.neighbors(u).iter().enumerate() {
                let e = g.incident_edges(u)[i];
                if m.matched[e] || dist[w] != usize::MAX {
                    continue;
                }
                if !m.is_covered(w) {
                    let mut path = vec![w, u];
                    let mut cur = u;
                    while parent[cur] != usize::MAX {
                        cur = parent[cur];
                        path.push(cur);
                    }
                    path.reverse();
                    let found = AugPath { vertices: path };
                    debug_assert!(found.validate(g, m));
                    return Some(found);
                }
                dist[w] = d + 1;
                parent[w] = u;
                queue.push_back(w);
            }
        } else {
            // covered side-1 vertex: continue along its matched edge
            if let Some(e) = m.mate[u] {
                let z = g.other_endpoint(e, u);
                if dist[z] == usize::MAX {
                    dist[z] = d + 1;
                    parent[z] = u;
                    queue.push_back(z);
                }
            }
        }
    }
    None
}

/// Iterative deepening over simple alternating paths; exact for short
/// bounds on any graph. Deterministic: sources ascending, neighbors in
/// adjacency order.
fn find_aug_path_dfs(g: &Graph, m: &Matching, max_len: usize) -> Option<AugPath> {
    let unmatched: Vec<usize> = m.unmatched();
    let mut on_path = vec![false; g.vertex_count()];
    for target in (1..max_len).step_by(2) {
        for &s in &unmatched {
            let mut path = vec![s];
            on_path[s] = true;
            let found = dfs_exact(g, m, &mut path, &mut on_path, false, target);
            on_path[s] = false;
            if let Some(p) = found {
                debug_assert!(p.validate(g, m));
                return Some(p);
            }
        }
    }
    None
}

fn dfs_exact(
    g: &Graph,
    m: &Matching,
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    want_matched: bool,
    target: usize,
) -> Option<AugPath> {
    let cur = *path.last().unwrap();
    let used = path.len() - 1;
    if used == target {
        // valid iff the last edge was unmatched and the endpoint is free
        return (want_matched && !m.is_covered(cur)).then(|| AugPath {
            vertices: path.clone(),
        });
    }
    for (i, &w) in g.neighbors(cur).iter().enumerate() {
        let e = g.incident_edges(cur)[i];
        if on_path[w] || m.matched[e] != want_matched {
            continue;
        }
        // An augmenting path can only end right after an unmatched edge.
        if used + 1 == target && (want_matched || m.is_covered(w)) {
            continue;
        }
        path.push(w);
        on_path[w] = true;
        let found = dfs_exact(g, m, path, on_path, !want_matched, target);
        path.pop();
        on_path[w] = false;
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Flips an augmenting path: matched and unmatched edges along it swap,
/// growing the matching by one and covering both endpoints.
pub fn flip(g: &Graph, m: &Matching, p: &AugPath) -> Result<Matching> {
    if !p.validate(g, m) {
        return Err(Error::NotAugmentingPath);
    }
    let mut out = m.clone();
    let vs = &p.vertices;
    // remove matched edges first, then insert the new ones
    for i in (1..vs.len() - 1).step_by(2) {
        let e = g.edge_id(vs[i], vs[i + 1]).unwrap();
        out.remove(g, e);
    }
    for i in (0..vs.len() - 1).step_by(2) {
        let e = g.edge_id(vs[i], vs[i + 1]).unwrap();
        out.insert(g, e);
    }
    debug_assert!(out.validate(g));
    debug_assert_eq!(out.size(), m.size() + 1);
    Ok(out)
}

/// Log line per flip performed by a stage.
#[derive(Debug, Clone)]
pub struct StageLog {
    pub k: usize,
    pub flips: usize,
    pub unmatched_after: usize,
}

/// Repeatedly flips augmenting paths shorter than `k` (in edges) until
/// none remain. Covered vertices stay covered throughout.
pub fn stage_eliminate(g: &Graph, m: &Matching, k: usize) -> (Matching, StageLog) {
    let mut cur = m.clone();
    let mut flips = 0;
    while let Some(p) = find_aug_path(g, &cur, k) {
        cur = flip(g, &cur, &p).expect("found path augments");
        flips += 1;
    }
    let log = StageLog {
        k,
        flips,
        unmatched_after: cur.unmatched().len(),
    };
    (cur, log)
}
