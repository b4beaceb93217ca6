//! Brute-force oracles: small, slow, obviously-correct reference routines
//! used to cross-check the algorithms in this crate. They share no code
//! with the implementations they audit.

use crate::graph::{EdgeLabeledGraph, Graph};

/// Decides whether `g` admits a proper vertex coloring with `k` colors,
/// returning one witness. Plain backtracking over vertices in index order,
/// restricting each vertex to at most one fresh color (symmetry pruning).
pub fn color_with(g: &Graph, k: usize) -> Option<Vec<u32>> {
    if g.vertex_count() == 0 {
        return Some(vec![]);
    }
    let mut colors = vec![0u32; g.vertex_count()];
    fn rec(g: &Graph, k: usize, colors: &mut Vec<u32>, v: usize, max_used: u32) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        let cap = (max_used + 1).min(k as u32);
        for c in 1..=cap {
            if g.neighbors(v).iter().all(|&w| colors[w] != c) {
                colors[v] = c;
                if rec(g, k, colors, v + 1, max_used.max(c)) {
                    return true;
                }
                colors[v] = 0;
            }
        }
        false
    }
    rec(g, k, &mut colors, 0, 0).then_some(colors)
}

/// Exact chromatic number by increasing k.
pub fn chromatic_number(g: &Graph) -> usize {
    if g.vertex_count() == 0 {
        return 0;
    }
    let mut k = 1;
    loop {
        if color_with(g, k).is_some() {
            return k;
        }
        k += 1;
    }
}

/// Decides whether `g` admits a proper edge coloring with `k` colors,
/// returning one witness indexed by canonical edge id.
pub fn edge_color_with(g: &Graph, k: usize) -> Option<Vec<u32>> {
    let m = g.edge_count();
    if m == 0 {
        return Some(vec![]);
    }
    let mut colors = vec![0u32; m];
    fn conflicts(g: &Graph, colors: &[u32], e: usize, c: u32) -> bool {
        let (u, v) = g.endpoints(e);
        g.incident_edges(u)
            .iter()
            .chain(g.incident_edges(v))
            .any(|&f| f != e && colors[f] == c)
    }
    fn rec(g: &Graph, k: usize, colors: &mut Vec<u32>, e: usize, max_used: u32) -> bool {
        if e == g.edge_count() {
            return true;
        }
        let cap = (max_used + 1).min(k as u32);
        for c in 1..=cap {
            if !conflicts(g, colors, e, c) {
                colors[e] = c;
                if rec(g, k, colors, e + 1, max_used.max(c)) {
                    return true;
                }
                colors[e] = 0;
            }
        }
        false
    }
    rec(g, k, &mut colors, 0, 0).then_some(colors)
}

/// Exact chromatic index by increasing k.
pub fn edge_chromatic_number(g: &Graph) -> usize {
    if g.edge_count() == 0 {
        return 0;
    }
    let mut k = 1;
    loop {
        if edge_color_with(g, k).is_some() {
            return k;
        }
        k += 1;
    }
}

/// Exhaustive scan over all `delta^n` maps checking the edge-labeled
/// coloring predicate: no edge {v,w} with c(v)=c(w)=label(v,w). Intended
/// for n <= 14.
pub fn chi_el_at_most_scan(h: &EdgeLabeledGraph, delta: u32) -> Option<Vec<u32>> {
    let n = h.graph.vertex_count();
    let mut assignment = vec![1u32; n];
    loop {
        let ok = h.graph.edges().iter().enumerate().all(|(e, &(u, v))| {
            !(assignment[u] == assignment[v] && assignment[u] == h.edge_labels[e])
        });
        if ok {
            return Some(assignment);
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == n {
                return None;
            }
            if assignment[i] < delta {
                assignment[i] += 1;
                break;
            }
            assignment[i] = 1;
            i += 1;
        }
    }
}

/// Exact girth by edge deletion: for each edge, the shortest alternative
/// path between its endpoints closes the shortest cycle through that edge.
pub fn girth_by_edge_removal(g: &Graph) -> Option<usize> {
    let mut best = usize::MAX;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        // BFS from u to v avoiding edge e.
        let mut dist = vec![usize::MAX; g.vertex_count()];
        let mut queue = std::collections::VecDeque::new();
        dist[u] = 0;
        queue.push_back(u);
        'bfs: while let Some(x) = queue.pop_front() {
            for (i, &y) in g.neighbors(x).iter().enumerate() {
                if g.incident_edges(x)[i] == e {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    if y == v {
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
        }
        if dist[v] != usize::MAX {
            best = best.min(dist[v] + 1);
        }
    }
    (best != usize::MAX).then_some(best)
}

/// Enumerates every simple alternating path that augments `matched` (edge
/// ids marked true), in vertex-list form. Exponential; small graphs only.
pub fn all_augmenting_paths(g: &Graph, matched: &[bool], max_edges: usize) -> Vec<Vec<usize>> {
    let mut covered = vec![false; g.vertex_count()];
    for (e, &is_m) in matched.iter().enumerate() {
        if is_m {
            let (u, v) = g.endpoints(e);
            covered[u] = true;
            covered[v] = true;
        }
    }
    let mut found = Vec::new();
    for start in 0..g.vertex_count() {
        if covered[start] {
            continue;
        }
        let mut path = vec![start];
        let mut on_path = vec![false; g.vertex_count()];
        on_path[start] = true;
        extend(
            g,
            matched,
            &covered,
            &mut path,
            &mut on_path,
            false,
            max_edges,
            &mut found,
        );
    }
    found
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    matched: &[bool],
    covered: &[bool],
    path: &mut Vec<usize>,
    on_path: &mut Vec<bool>,
    want_matched: bool,
    max_edges: usize,
    found: &mut Vec<Vec<usize>>,
) {
    let cur = *path.last().unwrap();
    if path.len() >= 2 && want_matched && !covered[cur] {
        // Arrived over an unmatched edge at an unmatched vertex: augmenting.
        found.push(path.clone());
        // An unmatched vertex has no matched edge to continue along.
        return;
    }
    if path.len() > max_edges {
        return;
    }
    for (i, &next) in g.neighbors(cur).iter().enumerate() {
        let e = g.incident_edges(cur)[i];
        if on_path[next] || matched[e] != want_matched {
            continue;
        }
        path.push(next);
        on_path[next] = true;
        extend(g, matched, covered, path, on_path, !want_matched, max_edges, found);
        path.pop();
        on_path[next] = false;
    }
}

/// Shortest augmenting path length (in edges) found by exhaustive scan, or
/// None. Used to audit the stage post-condition independently.
pub fn shortest_augmenting_path_len(g: &Graph, matched: &[bool], max_edges: usize) -> Option<usize> {
    all_augmenting_paths(g, matched, max_edges)
        .iter()
        .map(|p| p.len() - 1)
        .min()
}
