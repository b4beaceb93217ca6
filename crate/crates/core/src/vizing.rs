//! (Δ+1)-edge coloring via Vizing chains: missing-color bookkeeping,
//! chain shifts, fans, alternating paths, the sequential algorithm, and
//! multi-step chain search with truncation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Partial edge coloring d: E ⇀ 1..=palette with per-vertex missing-color
/// sets maintained incrementally. Palettes are capped at 63 so the missing
/// sets fit one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialEdgeColoring {
    pub palette: u32,
    /// color[e] in 1..=palette, 0 = uncolored.
    color: Vec<u32>,
    /// Bitmask of missing colors per vertex (bit c-1 set = color c missing).
    missing: Vec<u64>,
    /// incidence[v * (palette+1) + c] = edge at v colored c, or usize::MAX.
    incidence: Vec<usize>,
    uncolored: usize,
}

impl PartialEdgeColoring {
    pub fn empty(g: &Graph, palette: u32) -> PartialEdgeColoring {
        assert!(palette >= 1 && palette <= 63, "palette must fit one word");
        assert!(
            (g.max_degree() as u32) <= palette,
            "palette must be at least the maximum degree for |m_d(v)| > 0"
        );
        let full = (1u64 << palette) - 1;
        PartialEdgeColoring {
            palette,
            color: vec![0; g.edge_count()],
            missing: vec![full; g.vertex_count()],
            incidence: vec![usize::MAX; g.vertex_count() * (palette as usize + 1)],
            uncolored: g.edge_count(),
        }
    }

    pub fn color_of(&self, e: usize) -> Option<u32> {
        (self.color[e] != 0).then_some(self.color[e])
    }

    pub fn is_colored(&self, e: usize) -> bool {
        self.color[e] != 0
    }

    pub fn colored_count(&self) -> usize {
        self.color.len() - self.uncolored
    }

    pub fn uncolored_count(&self) -> usize {
        self.uncolored
    }

    pub fn uncolored_edges(&self) -> Vec<usize> {
        self.color
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(e, _)| e)
            .collect()
    }

    /// Missing-color set at `v` as a bitmask (bit c-1 = color c).
    pub fn missing_mask(&self, v: usize) -> u64 {
        self.missing[v]
    }

    /// Missing colors at `v` in ascending order.
    pub fn missing(&self, v: usize) -> Vec<u32> {
        let mut mask = self.missing[v];
        let mut out = Vec::new();
        while mask != 0 {
            let c = mask.trailing_zeros() + 1;
            out.push(c);
            mask &= mask - 1;
        }
        out
    }

    pub fn least_missing(&self, v: usize) -> Option<u32> {
        (self.missing[v] != 0).then(|| self.missing[v].trailing_zeros() + 1)
    }

    /// The edge at `v` carrying color `c`, if any.
    pub fn edge_with_color(&self, v: usize, c: u32) -> Option<usize> {
        let e = self.incidence[v * (self.palette as usize + 1) + c as usize];
        (e != usize::MAX).then_some(e)
    }

    pub fn set(&mut self, g: &Graph, e: usize, c: u32) {
        debug_assert!(c >= 1 && c <= self.palette);
        debug_assert_eq!(self.color[e], 0, "edge {e} already colored");
        let (u, v) = g.endpoints(e);
        debug_assert!(
            self.missing[u] & (1 << (c - 1)) != 0,
            "color {c} not missing at {u}"
        );
        debug_assert!(
            self.missing[v] & (1 << (c - 1)) != 0,
            "color {c} not missing at {v}"
        );
        self.color[e] = c;
        self.missing[u] &= !(1 << (c - 1));
        self.missing[v] &= !(1 << (c - 1));
        self.incidence[u * (self.palette as usize + 1) + c as usize] = e;
        self.incidence[v * (self.palette as usize + 1) + c as usize] = e;
        self.uncolored -= 1;
    }

    pub fn unset(&mut self, g: &Graph, e: usize) -> u32 {
        let c = self.color[e];
        debug_assert!(c != 0);
        let (u, v) = g.endpoints(e);
        self.color[e] = 0;
        self.missing[u] |= 1 << (c - 1);
        self.missing[v] |= 1 << (c - 1);
        self.incidence[u * (self.palette as usize + 1) + c as usize] = usize::MAX;
        self.incidence[v * (self.palette as usize + 1) + c as usize] = usize::MAX;
        self.uncolored += 1;
        c
    }

    /// Whether assigning color c to e would clash at either endpoint.
    pub fn admissible(&self, g: &Graph, e: usize, c: u32) -> bool {
        let (u, v) = g.endpoints(e);
        let bit = 1u64 << (c - 1);
        self.missing[u] & bit != 0 && self.missing[v] & bit != 0
    }

    /// Full properness audit, used by tests and the shift validator.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        for v in 0..g.vertex_count() {
            let mut seen = 0u64;
            for &e in g.incident_edges(v) {
                let c = self.color[e];
                if c == 0 {
                    continue;
                }
                if c > self.palette {
                    return Err(Error::ImproperInput(format!("edge {e} color {c} too big")));
                }
                let bit = 1u64 << (c - 1);
                if seen & bit != 0 {
                    return Err(Error::ImproperInput(format!(
                        "vertex {v} sees color {c} twice"
                    )));
                }
                seen |= bit;
            }
            let full = (1u64 << self.palette) - 1;
            if self.missing[v] != full & !seen {
                return Err(Error::ImproperInput(format!(
                    "missing set at {v} out of sync"
                )));
            }
        }
        Ok(())
    }
}

/// An edge chain: consecutive edges intersect.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub edges: Vec<usize>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge_injective(&self) -> bool {
        let mut sorted = self.edges.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn consecutive_intersect(&self, g: &Graph) -> bool {
        self.edges.windows(2).all(|w| {
            let (a, b) = g.endpoints(w[0]);
            let (c, d) = g.endpoints(w[1]);
            a == c || a == d || b == c || b == d
        })
    }
}

/// A fan: an edge-injective chain all of whose edges contain the pivot.
#[derive(Debug, Clone)]
pub struct Fan {
    pub pivot: usize,
    pub edges: Vec<usize>,
}

/// A maximal or truncated alternating path.
#[derive(Debug, Clone)]
pub struct AlternatingPath {
    pub start: usize,
    pub alpha: u32,
    pub beta: u32,
    pub edges: Vec<usize>,
    /// False when this is a proper prefix of the maximal path.
    pub maximal: bool,
}

/// One-step Vizing chain: fan then alternating path.
#[derive(Debug, Clone)]
pub struct VizingChain {
    pub fan: Fan,
    pub path: AlternatingPath,
}

impl VizingChain {
    pub fn chain(&self) -> Chain {
        let mut edges = self.fan.edges.clone();
        edges.extend_from_slice(&self.path.edges);
        Chain { edges }
    }
}

/// Role tags for chain traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainRole {
    Fan,
    Path,
}

/// Multi-step Vizing chain: alternating fans and truncated paths. Step
/// j >= 2 conceptually starts at the junction edge (the previous truncated
/// path's last edge); that edge is stored once, in the path.
#[derive(Debug, Clone)]
pub struct MultiStepVizingChain {
    pub steps: Vec<(Fan, AlternatingPath)>,
}

impl MultiStepVizingChain {
    pub fn step_count(&self) -> usize {
        self.steps.len()
    }

    pub fn chain(&self) -> Chain {
        let mut edges = Vec::new();
        for (fan, path) in &self.steps {
            edges.extend_from_slice(&fan.edges);
            edges.extend_from_slice(&path.edges);
        }
        Chain { edges }
    }

    /// Ordered (role, step, edge) rows for trace dumps.
    pub fn trace(&self) -> Vec<(ChainRole, usize, usize)> {
        let mut rows = Vec::new();
        for (i, (fan, path)) in self.steps.iter().enumerate() {
            for &e in &fan.edges {
                rows.push((ChainRole::Fan, i + 1, e));
            }
            for &e in &path.edges {
                rows.push((ChainRole::Path, i + 1, e));
            }
        }
        rows
    }
}

/// Validates d-shiftability: nonempty, edge-injective, first edge
/// uncolored, the rest colored, consecutive edges intersecting.
pub fn check_shiftable(g: &Graph, d: &PartialEdgeColoring, p: &Chain) -> Result<()> {
    if p.is_empty() {
        return Err(Error::NotShiftable("empty chain".into()));
    }
    if !p.edge_injective() {
        return Err(Error::NotShiftable("chain repeats an edge".into()));
    }
    if !p.consecutive_intersect(g) {
        return Err(Error::NotShiftable(
            "consecutive chain edges do not intersect".into(),
        ));
    }
    if d.is_colored(p.edges[0]) {
        return Err(Error::NotShiftable("first edge must be uncolored".into()));
    }
    if p.edges[1..].iter().any(|&e| !d.is_colored(e)) {
        return Err(Error::NotShiftable(
            "every edge after the first must be colored".into(),
        ));
    }
    Ok(())
}

/// The P-shift of d: every chain edge takes the color of its successor and
/// the last edge becomes uncolored. Errors with `NotShiftable` /
/// `ImproperShift`; `d` is never modified.
pub fn shift(g: &Graph, d: &PartialEdgeColoring, p: &Chain) -> Result<PartialEdgeColoring> {
    check_shiftable(g, d, p)?;
    let mut out = d.clone();
    let l = p.len();
    if l == 1 {
        // degenerate: dom gains e0 and loses e0
        return Ok(out);
    }
    let colors: Vec<u32> = p.edges[1..].iter().map(|&e| out.unset(g, e)).collect();
    for (i, &e) in p.edges[..l - 1].iter().enumerate() {
        let c = colors[i];
        if !out.admissible(g, e, c) {
            return Err(Error::ImproperShift(e));
        }
        out.set(g, e, c);
    }
    debug_assert!(out.validate(g).is_ok());
    Ok(out)
}

/// Whether the chain is d-augmenting: proper-shiftable with a common
/// missing color at the endpoints of its (shifted-uncolored) last edge.
pub fn is_augmenting(g: &Graph, d: &PartialEdgeColoring, p: &Chain) -> bool {
    match shift(g, d, p) {
        Ok(shifted) => {
            let last = *p.edges.last().unwrap();
            let (x, y) = g.endpoints(last);
            shifted.missing_mask(x) & shifted.missing_mask(y) != 0
        }
        Err(_) => false,
    }
}

/// Applies an augmenting chain: shift, then color the last edge with the
/// least common missing color. Grows the domain by exactly one edge.
pub fn augment(g: &Graph, d: &PartialEdgeColoring, p: &Chain) -> Result<PartialEdgeColoring> {
    let mut shifted = shift(g, d, p)?;
    let last = *p.edges.last().unwrap();
    let (x, y) = g.endpoints(last);
    let common = shifted.missing_mask(x) & shifted.missing_mask(y);
    if common == 0 {
        return Err(Error::NotAugmenting);
    }
    let c = common.trailing_zeros() + 1;
    shifted.set(g, last, c);
    debug_assert_eq!(shifted.colored_count(), d.colored_count() + 1);
    Ok(shifted)
}

/// The maximal alpha/beta path starting at `x`: first edge colored alpha,
/// then beta, alternating, until no continuation exists or the chain would
/// repeat an edge (alpha/beta cycles through x stop at full circle).
pub fn alternating_path(
    g: &Graph,
    d: &PartialEdgeColoring,
    x: usize,
    alpha: u32,
    beta: u32,
) -> AlternatingPath {
    assert_ne!(alpha, beta);
    let mut edges = Vec::new();
    let mut at = x;
    let mut want = alpha;
    loop {
        match d.edge_with_color(at, want) {
            Some(e) if !edges.contains(&e) => {
                edges.push(e);
                at = g.other_endpoint(e, at);
                want = if want == alpha { beta } else { alpha };
            }
            _ => break,
        }
    }
    AlternatingPath {
        start: x,
        alpha,
        beta,
        edges,
        maximal: true,
    }
}

/// Classic Vizing chain construction for an uncolored edge `e` at pivot
/// `x`: grows the fan by following the tip's least missing color, then
/// closes via a common missing color, fan rotation, or one of the two
/// alpha/beta path closures (stuck tip or the earlier fan vertex missing
/// beta). One of the candidates is always proper-shiftable and augmenting.
pub fn build_vizing_chain(
    g: &Graph,
    d: &PartialEdgeColoring,
    x: usize,
    e: usize,
) -> Result<VizingChain> {
    if d.is_colored(e) {
        return Err(Error::NotShiftable("edge already colored".into()));
    }
    let (a, b) = g.endpoints(e);
    if x != a && x != b {
        return Err(Error::NotShiftable("pivot not on the edge".into()));
    }
    let mut fan_edges = vec![e];
    let mut fan_tips = vec![g.other_endpoint(e, x)];

    loop {
        let tip = *fan_tips.last().unwrap();
        let common = d.missing_mask(x) & d.missing_mask(tip);
        if common != 0 {
            // fan rotation closes with an empty path
            return Ok(VizingChain {
                fan: Fan {
                    pivot: x,
                    edges: fan_edges,
                },
                path: AlternatingPath {
                    start: tip,
                    alpha: 0,
                    beta: 0,
                    edges: vec![],
                    maximal: true,
                },
            });
        }
        let gamma = d.least_missing(tip).expect("palette exceeds max degree");
        match d.edge_with_color(x, gamma) {
            Some(next) if !fan_edges.contains(&next) => {
                fan_edges.push(next);
                fan_tips.push(g.other_endpoint(next, x));
            }
            Some(stuck_edge) => {
                // gamma sits on fan edge e_h; try the two classic closures.
                let h = fan_edges.iter().position(|&f| f == stuck_edge).unwrap();
                debug_assert!(h >= 1);
                let alpha = d.least_missing(x).expect("palette exceeds max degree");
                let beta = gamma;
                let full = VizingChain {
                    fan: Fan {
                        pivot: x,
                        edges: fan_edges.clone(),
                    },
                    path: alternating_path(g, d, tip, alpha, beta),
                };
                if is_augmenting(g, d, &full.chain()) {
                    return Ok(full);
                }
                let prefix_tip = fan_tips[h - 1];
                let truncated = VizingChain {
                    fan: Fan {
                        pivot: x,
                        edges: fan_edges[..h].to_vec(),
                    },
                    path: alternating_path(g, d, prefix_tip, alpha, beta),
                };
                if is_augmenting(g, d, &truncated.chain()) {
                    return Ok(truncated);
                }
                unreachable!("no augmenting Vizing chain at pivot {x}, edge {e}");
            }
            None => {
                unreachable!("missing color at tip neither closes nor extends");
            }
        }
    }
}

/// Sequential (Δ+1)-edge coloring: augments one uncolored edge at a time
/// along its Vizing chain, in canonical edge order.
pub fn sequential_vizing(g: &Graph) -> Result<PartialEdgeColoring> {
    let palette = (g.max_degree() as u32 + 1).max(1);
    let mut d = PartialEdgeColoring::empty(g, palette);
    for e in 0..g.edge_count() {
        let (u, _) = g.endpoints(e);
        let chain = build_vizing_chain(g, &d, u, e)?;
        d = augment(g, &d, &chain.chain())?;
    }
    debug_assert!(d.validate(g).is_ok());
    Ok(d)
}

/// Default truncation length: ceil(log2 n) scaled by delta.
pub fn default_trunc_len(n: usize, delta: usize) -> usize {
    let log = (usize::BITS - n.max(2).leading_zeros()) as usize;
    (log * delta.max(1)).max(4)
}

/// Multi-step Vizing chain search.
///
/// Grows a Vizing chain for `e`; while the alternating path overshoots
/// `trunc_len`, truncates it at a seeded-uniform point in 1..=trunc_len,
/// virtually shifts, and grows the next fan from the truncation endpoint.
/// Truncated paths stay pairwise edge-disjoint, truncation endpoints must
/// avoid earlier fan pivots, and the returned concatenation is validated
/// augmenting against the input coloring.
pub fn multi_step_search(
    g: &Graph,
    d: &PartialEdgeColoring,
    e: usize,
    max_steps: usize,
    trunc_len: usize,
    seed: u64,
) -> Result<MultiStepVizingChain> {
    if d.is_colored(e) {
        return Err(Error::NotShiftable("edge already colored".into()));
    }
    let trunc_len = trunc_len.max(1);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut virtual_d = d.clone();
    let mut steps: Vec<(Fan, AlternatingPath)> = Vec::new();
    let mut used_path_edges: Vec<usize> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut cur_edge = e;
    let (a, _) = g.endpoints(e);
    let mut cur_pivot = a;

    for step in 0..max_steps {
        let chain = build_vizing_chain(g, &virtual_d, cur_pivot, cur_edge)?;
        pivots.push(cur_pivot);
        // Step >= 2 fans start at the junction edge, already stored in the
        // previous truncated path; drop it here.
        let fan = Fan {
            pivot: chain.fan.pivot,
            edges: if step == 0 {
                chain.fan.edges.clone()
            } else {
                chain.fan.edges[1..].to_vec()
            },
        };

        if chain.path.edges.len() <= trunc_len {
            // final step: the full chain augments in the virtual coloring
            steps.push((fan, chain.path.clone()));
            let result = MultiStepVizingChain { steps };
            if is_augmenting(g, d, &result.chain()) {
                return Ok(result);
            }
            // overlap with earlier steps invalidated the concatenation
            return Err(Error::StepBudgetExhausted(max_steps));
        }

        // Truncate: sample until the prefix avoids earlier paths and its
        // endpoint avoids earlier pivots.
        if fan.edges.iter().any(|f| used_path_edges.contains(f)) {
            return Err(Error::StepBudgetExhausted(max_steps));
        }
        let mut accepted = None;
        for _ in 0..4 * trunc_len {
            let t = rng.gen_range(1..=trunc_len);
            let prefix = &chain.path.edges[..t];
            if prefix.iter().any(|p| used_path_edges.contains(p)) {
                continue;
            }
            let mut at = chain.path.start;
            for &pe in prefix {
                at = g.other_endpoint(pe, at);
            }
            if pivots.contains(&at) {
                continue;
            }
            accepted = Some((t, at));
            break;
        }
        let (t, next_pivot) = match accepted {
            Some(x) => x,
            None => return Err(Error::StepBudgetExhausted(max_steps)),
        };
        let trunc = AlternatingPath {
            start: chain.path.start,
            alpha: chain.path.alpha,
            beta: chain.path.beta,
            edges: chain.path.edges[..t].to_vec(),
            maximal: false,
        };
        // virtually shift this step
        let mut step_edges: Vec<usize> = if step == 0 {
            Vec::new()
        } else {
            vec![cur_edge]
        };
        step_edges.extend_from_slice(&fan.edges);
        step_edges.extend_from_slice(&trunc.edges);
        virtual_d = shift(g, &virtual_d, &Chain { edges: step_edges })?;
        used_path_edges.extend_from_slice(&trunc.edges);
        let last_edge = *trunc.edges.last().unwrap();
        steps.push((fan, trunc));

        // opportunistic: the truncated concatenation may already augment
        let so_far = MultiStepVizingChain {
            steps: steps.clone(),
        };
        if is_augmenting(g, d, &so_far.chain()) {
            return Ok(so_far);
        }
        cur_edge = last_edge;
        cur_pivot = next_pivot;
    }
    Err(Error::StepBudgetExhausted(max_steps))
}

/// Enumerates every multi-step chain growable from `e` under the
/// deterministic fan/closure rules, branching over all admissible
/// truncation points. Small instances only; `budget` caps the output.
pub fn enumerate_chains_from(
    g: &Graph,
    d: &PartialEdgeColoring,
    e: usize,
    max_steps: usize,
    trunc_len: usize,
    budget: usize,
) -> Result<Vec<Chain>> {
    let mut out = Vec::new();
    let (a, b) = g.endpoints(e);
    let mut pivots = vec![a.min(b), a.max(b)];
    pivots.dedup();
    for pivot in pivots {
        let mut state = EnumState {
            prefix: Vec::new(),
            used_paths: Vec::new(),
            pivots: Vec::new(),
        };
        rec_enumerate(
            g, d, d, pivot, e, max_steps, trunc_len, &mut state, &mut out, budget, true,
        )?;
    }
    Ok(out)
}

struct EnumState {
    prefix: Vec<usize>,
    used_paths: Vec<usize>,
    pivots: Vec<usize>,
}

#[allow(clippy::too_many_arguments)]
fn rec_enumerate(
    g: &Graph,
    original: &PartialEdgeColoring,
    d: &PartialEdgeColoring,
    pivot: usize,
    edge: usize,
    steps_left: usize,
    trunc_len: usize,
    state: &mut EnumState,
    out: &mut Vec<Chain>,
    budget: usize,
    first: bool,
) -> Result<()> {
    if steps_left == 0 {
        return Ok(());
    }
    if out.len() >= budget {
        return Err(Error::EnumerationBudgetExhausted(budget));
    }
    let chain = match build_vizing_chain(g, d, pivot, edge) {
        Ok(c) => c,
        Err(_) => return Ok(()),
    };
    let fan_edges: Vec<usize> = if first {
        chain.fan.edges.clone()
    } else {
        chain.fan.edges[1..].to_vec()
    };
    if fan_edges.iter().any(|f| state.prefix.contains(f)) {
        return Ok(());
    }
    state.pivots.push(pivot);

    // terminal: full path within the truncation bound
    if chain.path.edges.len() <= trunc_len
        && !chain
            .path
            .edges
            .iter()
            .any(|p| state.prefix.contains(p))
    {
        let mut edges = state.prefix.clone();
        edges.extend_from_slice(&fan_edges);
        edges.extend_from_slice(&chain.path.edges);
        let flat = Chain { edges };
        if is_augmenting(g, original, &flat) {
            out.push(flat);
        }
    }

    // branch over truncation points
    let deepest = trunc_len.min(chain.path.edges.len().saturating_sub(1));
    for t in 1..=deepest {
        let piece: Vec<usize> = chain.path.edges[..t].to_vec();
        if piece
            .iter()
            .any(|p| state.used_paths.contains(p) || state.prefix.contains(p))
        {
            continue;
        }
        let mut at = chain.path.start;
        for &pe in &piece {
            at = g.other_endpoint(pe, at);
        }
        if state.pivots.contains(&at) {
            continue;
        }
        let mut step_edges: Vec<usize> = if first { Vec::new() } else { vec![edge] };
        step_edges.extend_from_slice(&fan_edges);
        step_edges.extend_from_slice(&piece);
        let shifted = match shift(g, d, &Chain { edges: step_edges }) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let last = *piece.last().unwrap();
        let old_prefix = state.prefix.len();
        let old_used = state.used_paths.len();
        state.prefix.extend_from_slice(&fan_edges);
        state.prefix.extend_from_slice(&piece);
        state.used_paths.extend_from_slice(&piece);
        rec_enumerate(
            g,
            original,
            &shifted,
            at,
            last,
            steps_left - 1,
            trunc_len,
            state,
            out,
            budget,
            false,
        )?;
        state.prefix.truncate(old_prefix);
        state.used_paths.truncate(old_used);
    }
    state.pivots.pop();
    Ok(())
}

/// Number of enumerable multi-step chains (over all uncolored edges, both
/// pivots) passing through the colored edge `f`.
pub fn chains_through(
    g: &Graph,
    d: &PartialEdgeColoring,
    f: usize,
    max_steps: usize,
    trunc_len: usize,
    budget: usize,
) -> Result<usize> {
    if !d.is_colored(f) {
        return Ok(0);
    }
    let mut count = 0;
    for e in d.uncolored_edges() {
        for chain in enumerate_chains_from(g, d, e, max_steps, trunc_len, budget)? {
            if chain.edges.contains(&f) {
                count += 1;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_graph, petersen, random_regular, FamilySpec, Graph};
    use crate::oracle;

    fn colored(
        g: &Graph,
        palette: u32,
        assignments: &[((usize, usize), u32)],
    ) -> PartialEdgeColoring {
        let mut d = PartialEdgeColoring::empty(g, palette);
        for &((u, v), c) in assignments {
            let e = g.edge_id(u, v).unwrap();
            d.set(g, e, c);
        }
        d
    }

    #[test]
    fn missing_bookkeeping() {
        let g = gen_graph(&FamilySpec::Complete { n: 4 }, None).unwrap();
        let mut d = PartialEdgeColoring::empty(&g, 4);
        assert_eq!(d.missing(0), vec![1, 2, 3, 4]);
        let e01 = g.edge_id(0, 1).unwrap();
        d.set(&g, e01, 1);
        assert_eq!(d.missing(0), vec![2, 3, 4]);
        d.unset(&g, e01);
        d.set(&g, e01, 2);
        assert_eq!(d.missing(0), vec![1, 3, 4]);
        // degree-Delta vertex with incident colors 1..Delta misses only Delta+1
        let g3 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let d3 = colored(&g3, 4, &[((0, 1), 1), ((0, 2), 2), ((0, 3), 3)]);
        assert_eq!(d3.missing(0), vec![4]);
    }

    #[test]
    fn shift_degenerate_and_two_edge() {
        let g = gen_graph(&FamilySpec::Path { n: 3 }, None).unwrap();
        let e01 = g.edge_id(0, 1).unwrap();
        let e12 = g.edge_id(1, 2).unwrap();
        let d = colored(&g, 3, &[((1, 2), 1)]);
        let p = Chain { edges: vec![e01] };
        let shifted = shift(&g, &d, &p).unwrap();
        assert_eq!(shifted, d);
        let p = Chain {
            edges: vec![e01, e12],
        };
        let shifted = shift(&g, &d, &p).unwrap();
        assert_eq!(shifted.color_of(e01), Some(1));
        assert_eq!(shifted.color_of(e12), None);
    }

    #[test]
    fn shift_collision_is_improper() {
        // Incoming color 1 collides at vertex 0, which already sees 1.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let d = colored(&g, 3, &[((1, 2), 1), ((0, 3), 1)]);
        d.validate(&g).unwrap();
        let p = Chain {
            edges: vec![g.edge_id(0, 1).unwrap(), g.edge_id(1, 2).unwrap()],
        };
        assert!(matches!(shift(&g, &d, &p), Err(Error::ImproperShift(_))));
    }

    #[test]
    fn shift_then_reverse_restores() {
        let g = random_regular(20, 3, 5).unwrap();
        let mut d = sequential_vizing(&g).unwrap();
        let e = 0;
        d.unset(&g, e);
        let (x, _) = g.endpoints(e);
        let chain = build_vizing_chain(&g, &d, x, e).unwrap().chain();
        let shifted = shift(&g, &d, &chain).unwrap();
        let mut rev = chain.edges.clone();
        rev.reverse();
        let restored = shift(&g, &shifted, &Chain { edges: rev }).unwrap();
        assert_eq!(restored, d);
    }

    #[test]
    fn alternating_path_shapes() {
        let g = gen_graph(&FamilySpec::Path { n: 4 }, None).unwrap();
        let d = colored(&g, 3, &[((0, 1), 1), ((1, 2), 2), ((2, 3), 1)]);
        let p = alternating_path(&g, &d, 0, 1, 2);
        assert_eq!(p.edges.len(), 3);
        let p = alternating_path(&g, &d, 0, 3, 1);
        assert!(p.edges.is_empty());
        // alpha/beta 4-cycle terminates at full circle by edge injectivity
        let c4 = gen_graph(&FamilySpec::Cycle { n: 4 }, None).unwrap();
        let d = colored(
            &c4,
            3,
            &[((0, 1), 1), ((1, 2), 2), ((2, 3), 1), ((0, 3), 2)],
        );
        let p = alternating_path(&c4, &d, 0, 1, 2);
        assert_eq!(p.edges.len(), 4);
        assert!(Chain {
            edges: p.edges.clone()
        }
        .edge_injective());
        for (i, &e) in p.edges.iter().enumerate() {
            let want = if i % 2 == 0 { 1 } else { 2 };
            assert_eq!(d.color_of(e), Some(want));
        }
    }

    #[test]
    fn vizing_chain_common_missing() {
        let g = gen_graph(&FamilySpec::Path { n: 3 }, None).unwrap();
        let d = colored(&g, 3, &[((1, 2), 1)]);
        let e = g.edge_id(0, 1).unwrap();
        let chain = build_vizing_chain(&g, &d, 0, e).unwrap();
        assert_eq!(chain.fan.edges, vec![e]);
        assert!(chain.path.edges.is_empty());
        let next = augment(&g, &d, &chain.chain()).unwrap();
        assert_eq!(next.colored_count(), 2);
        next.validate(&g).unwrap();
    }

    #[test]
    fn vizing_fan_rotation_five_edges() {
        // Pivot 0 misses {3,4}. Tip 1 misses {1,2} (disjoint), so the fan
        // extends along color 1 to tip 2, which shares missing colors with
        // the pivot: rotation closes with an empty path.
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)]).unwrap();
        let d = colored(&g, 4, &[((0, 2), 1), ((0, 3), 2), ((1, 4), 3), ((1, 5), 4)]);
        d.validate(&g).unwrap();
        let e = g.edge_id(0, 1).unwrap();
        let chain = build_vizing_chain(&g, &d, 0, e).unwrap();
        assert_eq!(chain.fan.edges.len(), 2);
        assert!(chain.path.edges.is_empty());
        let next = augment(&g, &d, &chain.chain()).unwrap();
        next.validate(&g).unwrap();
        assert_eq!(next.colored_count(), d.colored_count() + 1);
    }

    #[test]
    fn vizing_fan_plus_path() {
        // Fan order 1 -> 2 -> 3; tip 3 misses only color 1, which sits on
        // fan edge (0,2): stuck, so an alpha/beta path closure fires. The
        // path leaves tip 3 along color 3 and does not return to the fan.
        let g = Graph::from_edges(
            10,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 4),
                (1, 5),
                (2, 6),
                (2, 7),
                (3, 8),
                (3, 9),
            ],
        )
        .unwrap();
        let d = colored(
            &g,
            4,
            &[
                ((0, 2), 1),
                ((0, 3), 2),
                ((1, 4), 3),
                ((1, 5), 4),
                ((2, 6), 3),
                ((2, 7), 4),
                ((3, 8), 3),
                ((3, 9), 4),
            ],
        );
        d.validate(&g).unwrap();
        let e = g.edge_id(0, 1).unwrap();
        let chain = build_vizing_chain(&g, &d, 0, e).unwrap();
        assert_eq!(chain.fan.edges.len(), 3);
        assert!(!chain.path.edges.is_empty());
        let next = augment(&g, &d, &chain.chain()).unwrap();
        next.validate(&g).unwrap();
    }

    #[test]
    fn augment_rejects_non_augmenting() {
        // Palette 2 on a path: after shifting (e01, e12) the endpoints of
        // the uncolored last edge share no missing color.
        let g = gen_graph(&FamilySpec::Path { n: 4 }, None).unwrap();
        let d = colored(&g, 2, &[((1, 2), 1), ((2, 3), 2)]);
        let p = Chain {
            edges: vec![g.edge_id(0, 1).unwrap(), g.edge_id(1, 2).unwrap()],
        };
        assert!(matches!(augment(&g, &d, &p), Err(Error::NotAugmenting)));
    }

    #[test]
    fn sequential_vizing_small_graphs() {
        let c5 = gen_graph(&FamilySpec::Cycle { n: 5 }, None).unwrap();
        let d = sequential_vizing(&c5).unwrap();
        d.validate(&c5).unwrap();
        assert_eq!(d.uncolored_count(), 0);

        let k4 = gen_graph(&FamilySpec::Complete { n: 4 }, None).unwrap();
        let d = sequential_vizing(&k4).unwrap();
        d.validate(&k4).unwrap();
        assert_eq!(d.uncolored_count(), 0);
        assert_eq!(oracle::edge_chromatic_number(&k4), 3);

        let p = petersen();
        let d = sequential_vizing(&p).unwrap();
        d.validate(&p).unwrap();
        // chi'(Petersen) = 4: no 3-edge-coloring exists
        assert!(oracle::edge_color_with(&p, 3).is_none());
    }

    #[test]
    fn multi_step_trivial_instance() {
        let g = gen_graph(&FamilySpec::Path { n: 3 }, None).unwrap();
        let d = colored(&g, 3, &[((1, 2), 1)]);
        let e = g.edge_id(0, 1).unwrap();
        let ms = multi_step_search(&g, &d, e, 8, 10, 1).unwrap();
        assert_eq!(ms.step_count(), 1);
        let chain = build_vizing_chain(&g, &d, 0, e).unwrap();
        assert_eq!(ms.chain().edges, chain.chain().edges);
    }

    #[test]
    fn multi_step_truncates_long_path() {
        // The fan at 0 gets stuck at tip 3 with alpha=3, beta=1, and the
        // 3/1 path from 3 runs seven edges. Fillers alternate 2/4 along the
        // path so no truncation point is accidentally augmenting: the
        // search must shift and grow at least one more fan.
        let core = [
            ((0, 1), 0u32), // uncolored
            ((0, 2), 1),
            ((0, 3), 2),
            ((1, 4), 3),
            ((1, 5), 4),
            ((2, 6), 3),
            ((2, 7), 4),
            ((3, 9), 4),
        ];
        let path = [
            ((3, 8), 3u32),
            ((8, 10), 1),
            ((10, 11), 3),
            ((11, 12), 1),
            ((12, 13), 3),
            ((13, 14), 1),
            ((14, 15), 3),
        ];
        let fillers = [
            ((8, 16), 2u32),
            ((10, 17), 4),
            ((11, 18), 2),
            ((12, 19), 4),
            ((13, 20), 2),
            ((14, 21), 4),
        ];
        let mut edges = Vec::new();
        for &((u, v), _) in core.iter().chain(path.iter()).chain(fillers.iter()) {
            edges.push((u, v));
        }
        let g = Graph::from_edges(22, &edges).unwrap();
        let mut d = PartialEdgeColoring::empty(&g, 4);
        for &((u, v), c) in core.iter().chain(path.iter()).chain(fillers.iter()) {
            if c != 0 {
                d.set(&g, g.edge_id(u, v).unwrap(), c);
            }
        }
        d.validate(&g).unwrap();
        let e = g.edge_id(0, 1).unwrap();
        // sanity: the one-step chain's path really overshoots
        let one = build_vizing_chain(&g, &d, 0, e).unwrap();
        assert!(one.path.edges.len() > 4);
        let ms = multi_step_search(&g, &d, e, 16, 4, 3).unwrap();
        assert!(ms.step_count() >= 2, "expected truncation: {:?}", ms.trace());
        let final_d = augment(&g, &d, &ms.chain()).unwrap();
        final_d.validate(&g).unwrap();
    }

    #[test]
    fn chains_through_zero_when_uncolored() {
        let g = gen_graph(&FamilySpec::Cycle { n: 6 }, None).unwrap();
        let d = PartialEdgeColoring::empty(&g, 3);
        for e in 0..g.edge_count() {
            assert_eq!(chains_through(&g, &d, e, 2, 4, 10_000).unwrap(), 0);
        }
    }

    #[test]
    fn double_counting_identity_small() {
        let g = random_regular(14, 3, 2).unwrap();
        let mut d = sequential_vizing(&g).unwrap();
        for e in [0usize, 5, 11] {
            d.unset(&g, e);
        }
        let (i, l, budget) = (2, 4, 100_000);
        let mut lhs = 0usize;
        for e in d.uncolored_edges() {
            for chain in enumerate_chains_from(&g, &d, e, i, l, budget).unwrap() {
                lhs += chain.edges.iter().filter(|&&x| d.is_colored(x)).count();
            }
        }
        let mut rhs = 0usize;
        for f in 0..g.edge_count() {
            if d.is_colored(f) {
                rhs += chains_through(&g, &d, f, i, l, budget).unwrap();
            }
        }
        assert_eq!(lhs, rhs);
    }
}
