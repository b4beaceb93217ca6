//! Round-based LOCAL-model execution: adversarial IDs, random tapes,
//! packaged algorithms, verification and locality surgery.
//!
//! A t-round algorithm is evaluated in its closed form, as a function of
//! each vertex's radius-t neighborhood. Packaged algorithms implement a
//! whole-graph evaluation; per-ball evaluation runs the same function on
//! the extracted ball, which agrees at the root whenever the locality
//! envelope is respected (asserted by tests at desk scale).

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ball, line_graph, Graph, RootedBall};
use crate::greedy::{greedy_pipeline, reduce_rounds_for_palette};

/// Injective vertex identifiers drawn from `0..n^c`.
#[derive(Debug, Clone)]
pub struct IdAssignment {
    pub ids: Vec<u64>,
    pub c_exponent: u32,
}

/// ID assignment strategies. `AdversarialHook` lets tests supply any
/// injective map.
#[derive(Debug, Clone)]
pub enum IdStrategy {
    RandomPermutation { seed: u64 },
    BfsOrder { root: usize },
    ReverseBfs { root: usize },
    AdversarialHook(Vec<u64>),
}

impl IdAssignment {
    pub fn bound(&self, n: usize) -> u64 {
        (n as u64).saturating_pow(self.c_exponent)
    }
}

/// Builds an injective assignment into `0..n^c` under the given strategy.
pub fn assign_ids(g: &Graph, strategy: &IdStrategy, c_exponent: u32) -> IdAssignment {
    assert!(c_exponent >= 1);
    let n = g.vertex_count();
    let bound = (n as u64).saturating_pow(c_exponent);
    let ids = match strategy {
        IdStrategy::RandomPermutation { seed } => {
            let mut rng = ChaCha20Rng::seed_from_u64(*seed);
            if c_exponent == 1 {
                let mut perm: Vec<u64> = (0..n as u64).collect();
                for i in (1..n).rev() {
                    let j = rng.gen_range(0..=i);
                    perm.swap(i, j);
                }
                perm
            } else {
                let mut seen = std::collections::HashSet::with_capacity(n);
                let mut out = Vec::with_capacity(n);
                while out.len() < n {
                    let x = rng.gen_range(0..bound);
                    if seen.insert(x) {
                        out.push(x);
                    }
                }
                out
            }
        }
        IdStrategy::BfsOrder { root } => bfs_order_ids(g, *root),
        IdStrategy::ReverseBfs { root } => {
            let fwd = bfs_order_ids(g, *root);
            fwd.iter().map(|&x| (n as u64 - 1) - x).collect()
        }
        IdStrategy::AdversarialHook(ids) => ids.clone(),
    };
    debug_assert!({
        let mut s = ids.clone();
        s.sort_unstable();
        s.windows(2).all(|w| w[0] != w[1]) && s.iter().all(|&x| x < bound)
    });
    IdAssignment { ids, c_exponent }
}

fn bfs_order_ids(g: &Graph, root: usize) -> Vec<u64> {
    let n = g.vertex_count();
    let mut ids = vec![u64::MAX; n];
    let mut next = 0u64;
    let mut queue = std::collections::VecDeque::new();
    if n > 0 {
        ids[root] = next;
        next += 1;
        queue.push_back(root);
    }
    loop {
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if ids[w] == u64::MAX {
                    ids[w] = next;
                    next += 1;
                    queue.push_back(w);
                }
            }
        }
        // disconnected remainder in index order
        match ids.iter().position(|&x| x == u64::MAX) {
            Some(v) => {
                ids[v] = next;
                next += 1;
                queue.push_back(v);
            }
            None => break,
        }
    }
    ids
}

/// Per-vertex random bit streams, reproducible from one seed. Distinct
/// vertices get independent ChaCha streams.
#[derive(Debug, Clone)]
pub struct RandomTape {
    pub seed: u64,
}

impl RandomTape {
    pub fn new(seed: u64) -> RandomTape {
        RandomTape { seed }
    }

    fn rng_for(&self, vertex: usize) -> ChaCha20Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&(vertex as u64).to_le_bytes());
        ChaCha20Rng::from_seed(key)
    }

    /// First `count` bits of the vertex's stream (count <= 64), as the low
    /// bits of the result; bit 0 is the first tape bit.
    pub fn prefix(&self, vertex: usize, count: u32) -> u64 {
        assert!(count <= 64);
        let word: u64 = self.rng_for(vertex).gen();
        if count == 64 {
            word
        } else {
            word & ((1u64 << count) - 1)
        }
    }

    /// Arbitrary-length bit prefix for callers that need more than a word.
    pub fn bits(&self, vertex: usize, count: usize) -> Vec<bool> {
        let mut rng = self.rng_for(vertex);
        let mut out = Vec::with_capacity(count);
        let mut word: u64 = 0;
        for i in 0..count {
            if i % 64 == 0 {
                word = rng.gen();
            }
            out.push(word & 1 == 1);
            word >>= 1;
        }
        out
    }
}

/// Whether an algorithm labels vertices or edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputKind {
    Vertex,
    Edge,
}

/// A LOCAL algorithm in closed form.
///
/// `run_global` evaluates the algorithm on a whole labeled graph; the
/// declared `rounds` is the reported communication-round complexity and
/// `locality_radius` bounds the dependence region of any single output
/// (perturbations strictly outside it cannot change that output).
pub trait LocalAlgorithm {
    fn name(&self) -> &'static str;
    fn output_kind(&self) -> OutputKind;
    fn rounds(&self, n: usize) -> u64;
    fn locality_radius(&self, n: usize) -> usize;
    fn run_global(&self, g: &Graph, labels: &[u64], n: usize) -> Result<Vec<u64>>;

    /// Pure ball evaluation: runs the same closed form on the extracted
    /// ball and reads off the root.
    fn evaluate_ball(&self, b: &RootedBall, n: usize) -> Result<u64> {
        let outputs = self.run_global(&b.local_graph, &b.labels, n)?;
        outputs
            .get(b.root)
            .copied()
            .ok_or(Error::AlgorithmUndefined(b.root))
    }
}

/// Result of one simulated run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunResult {
    pub outputs: Vec<u64>,
    pub rounds_used: u64,
    pub wall_ms: u128,
}

/// Runs a deterministic algorithm under the given IDs.
pub fn run_deterministic(g: &Graph, alg: &dyn LocalAlgorithm, ids: &IdAssignment) -> Result<RunResult> {
    let start = Instant::now();
    let n = g.vertex_count();
    let outputs = alg.run_global(g, &ids.ids, n)?;
    Ok(RunResult {
        outputs,
        rounds_used: alg.rounds(n),
        wall_ms: start.elapsed().as_millis(),
    })
}

/// Runs a randomized algorithm; vertex labels are 64-bit tape prefixes.
pub fn run_randomized(g: &Graph, alg: &dyn LocalAlgorithm, tape: &RandomTape) -> Result<RunResult> {
    let start = Instant::now();
    let n = g.vertex_count();
    let labels: Vec<u64> = (0..n).map(|v| tape.prefix(v, 64)).collect();
    let outputs = alg.run_global(g, &labels, n)?;
    Ok(RunResult {
        outputs,
        rounds_used: alg.rounds(n),
        wall_ms: start.elapsed().as_millis(),
    })
}

/// Verification verdict with every violation listed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub violations: Vec<String>,
}

/// Checks a vertex (or edge) labeling for properness within palette
/// `1..=k`. Edge outputs are indexed by canonical edge id.
pub fn verify_coloring(g: &Graph, outputs: &[u64], mode: OutputKind, k: u64) -> VerifyReport {
    let mut violations = Vec::new();
    match mode {
        OutputKind::Vertex => {
            if outputs.len() != g.vertex_count() {
                violations.push(format!(
                    "expected {} vertex outputs, got {}",
                    g.vertex_count(),
                    outputs.len()
                ));
            } else {
                for (v, &c) in outputs.iter().enumerate() {
                    if c == 0 || c > k {
                        violations.push(format!("vertex {v}: color {c} outside 1..={k}"));
                    }
                }
                for &(u, v) in g.edges() {
                    if outputs[u] == outputs[v] {
                        violations.push(format!("edge {u}-{v}: both colored {}", outputs[u]));
                    }
                }
            }
        }
        OutputKind::Edge => {
            if outputs.len() != g.edge_count() {
                violations.push(format!(
                    "expected {} edge outputs, got {}",
                    g.edge_count(),
                    outputs.len()
                ));
            } else {
                for (e, &c) in outputs.iter().enumerate() {
                    if c == 0 || c > k {
                        violations.push(format!("edge {e}: color {c} outside 1..={k}"));
                    }
                }
                for v in 0..g.vertex_count() {
                    let inc = g.incident_edges(v);
                    for i in 0..inc.len() {
                        for j in i + 1..inc.len() {
                            if outputs[inc[i]] == outputs[inc[j]] {
                                violations.push(format!(
                                    "edges {} and {} share vertex {v} and color {}",
                                    inc[i], inc[j], outputs[inc[i]]
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    VerifyReport {
        pass: violations.is_empty(),
        violations,
    }
}

// ---------------------------------------------------------------------------
// Packaged algorithms
// ---------------------------------------------------------------------------

/// 0-round algorithm that outputs a constant label.
pub struct ConstantAlg(pub u64);

impl LocalAlgorithm for ConstantAlg {
    fn name(&self) -> &'static str {
        "const"
    }
    fn output_kind(&self) -> OutputKind {
        OutputKind::Vertex
    }
    fn rounds(&self, _n: usize) -> u64 {
        0
    }
    fn locality_radius(&self, _n: usize) -> usize {
        0
    }
    fn run_global(&self, g: &Graph, _labels: &[u64], _n: usize) -> Result<Vec<u64>> {
        Ok(vec![self.0; g.vertex_count()])
    }
}

/// 0-round algorithm echoing the vertex's own label (ID).
pub struct IdEchoAlg;

impl LocalAlgorithm for IdEchoAlg {
    fn name(&self) -> &'static str {
        "id-echo"
    }
    fn output_kind(&self) -> OutputKind {
        OutputKind::Vertex
    }
    fn rounds(&self, _n: usize) -> u64 {
        0
    }
    fn locality_radius(&self, _n: usize) -> usize {
        0
    }
    fn run_global(&self, _g: &Graph, labels: &[u64], _n: usize) -> Result<Vec<u64>> {
        Ok(labels.to_vec())
    }
}

/// 0-round randomized algorithm returning the first tape bit.
pub struct TapeBitAlg;

impl LocalAlgorithm for TapeBitAlg {
    fn name(&self) -> &'static str {
        "tape-bit"
    }
    fn output_kind(&self) -> OutputKind {
        OutputKind::Vertex
    }
    fn rounds(&self, _n: usize) -> u64 {
        0
    }
    fn locality_radius(&self, _n: usize) -> usize {
        0
    }
    fn run_global(&self, _g: &Graph, labels: &[u64], _n: usize) -> Result<Vec<u64>> {
        Ok(labels.iter().map(|&l| l & 1).collect())
    }
}

/// Fixed point the reduction reaches for a given delta, starting from any
/// palette at most `from`.
fn reduction_fixed_palette(from: u64, delta: u32) -> u64 {
    let mut k = from.max(2);
    loop {
        let next = crate::greedy::cv_bound_sat(k, delta);
        if next >= k as u128 {
            return k;
        }
        k = next as u64;
    }
}

/// Distributed greedy (Δ+1)-vertex-coloring: color reduction from IDs
/// followed by the class-by-class greedy finish. `delta` is the class
/// promise; graphs of larger degree are rejected.
pub struct GreedyVertexAlg {
    pub delta: u32,
    pub c_exponent: u32,
}

impl GreedyVertexAlg {
    fn id_bound(&self, n: usize) -> u64 {
        (n as u64).saturating_pow(self.c_exponent).max(2)
    }
}

impl LocalAlgorithm for GreedyVertexAlg {
    fn name(&self) -> &'static str {
        "greedy-vertex"
    }
    fn output_kind(&self) -> OutputKind {
        OutputKind::Vertex
    }
    fn rounds(&self, n: usize) -> u64 {
        reduce_rounds_for_palette(self.id_bound(n), self.delta) as u64
    }
    fn locality_radius(&self, n: usize) -> usize {
        // reduction rounds + one hop per finish sweep
        let sweeps = reduction_fixed_palette(self.id_bound(n), self.delta);
        self.rounds(n) as usize + sweeps as usize
    }
    fn run_global(&self, g: &Graph, labels: &[u64], n: usize) -> Result<Vec<u64>> {
        if g.max_degree() as u32 > self.delta {
            return Err(Error::ImproperInput(format!(
                "degree {} exceeds promised delta {}",
                g.max_degree(),
                self.delta
            )));
        }
        let (coloring, _rounds) = greedy_pipeline(g, labels, self.id_bound(n), self.delta)?;
        Ok(coloring.colors)
    }
}

/// Distributed greedy (2Δ-1)-edge-coloring: the vertex pipeline on the
/// line graph, with the line-graph degree promise 2Δ-2.
pub struct GreedyEdgeAlg {
    pub delta: u32,
    pub c_exponent: u32,
}

impl GreedyEdgeAlg {
    fn line_delta(&self) -> u32 {
        (2 * self.delta).saturating_sub(2).max(1)
    }
}

impl LocalAlgorithm for GreedyEdgeAlg {
    fn name(&self) -> &'static str {
        "greedy-edge"
    }
    fn output_kind(&self) -> OutputKind {
        OutputKind::Edge
    }
    fn rounds(&self, n: usize) -> u64 {
        let id_bound = (n as u64).saturating_pow(self.c_exponent).max(2);
        reduce_rounds_for_palette(id_bound, self.line_delta()) as u64
    }
    fn locality_radius(&self, n: usize) -> usize {
        let id_bound = (n as u64).saturating_pow(self.c_exponent).max(2);
        let sweeps = reduction_fixed_palette(id_bound, self.line_delta());
        self.rounds(n) as usize + sweeps as usize + 1
    }
    fn run_global(&self, g: &Graph, labels: &[u64], n: usize) -> Result<Vec<u64>> {
        if g.max_degree() as u32 > self.delta {
            return Err(Error::ImproperInput(format!(
                "degree {} exceeds promised delta {}",
                g.max_degree(),
                self.delta
            )));
        }
        let lg = line_graph(g);
        // Edge IDs: the smaller endpoint pair (id(u), id(v)) packed; any
        // injective edge labeling works, and this one is ID-derived.
        let id_bound = (n as u64).saturating_pow(self.c_exponent).max(2);
        let edge_labels: Vec<u64> = g
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = if labels[u] < labels[v] {
                    (labels[u], labels[v])
                } else {
                    (labels[v], labels[u])
                };
                a * id_bound + b
            })
            .collect();
        let (coloring, _rounds) =
            greedy_pipeline(&lg, &edge_labels, id_bound.saturating_mul(id_bound), self.line_delta())?;
        Ok(coloring.colors)
    }
}

/// The algorithms this crate packages, by registry name.
pub fn algorithm_by_name(
    name: &str,
    delta: u32,
    c_exponent: u32,
) -> Option<Box<dyn LocalAlgorithm + Send + Sync>> {
    match name {
        "const0" => Some(Box::new(ConstantAlg(0))),
        "id-echo" => Some(Box::new(IdEchoAlg)),
        "tape-bit" => Some(Box::new(TapeBitAlg)),
        "greedy-vertex" => Some(Box::new(GreedyVertexAlg { delta, c_exponent })),
        "greedy-edge" => Some(Box::new(GreedyEdgeAlg { delta, c_exponent })),
        _ => None,
    }
}

// ---------------------------------------------------------------------------
// Locality surgery
// ---------------------------------------------------------------------------

/// Outcome of one surgery trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurgeryOutcome {
    /// Output at the probed vertex (or its incident edges) was unchanged.
    Unchanged,
    /// Output changed — a locality violation.
    Changed { vertex: usize },
    /// No legal perturbation strictly outside the ball was found.
    Vacuous,
}

/// Perturbs the graph strictly outside B(v, radius) and compares outputs at
/// v (vertex mode) or at v's incident edges (edge mode). The perturbation
/// removes one edge whose endpoints both lie outside the ball, which keeps
/// the graph inside any degree-bounded class.
pub fn surgery_trial(
    g: &Graph,
    alg: &dyn LocalAlgorithm,
    labels: &[u64],
    v: usize,
    rng: &mut ChaCha20Rng,
) -> Result<SurgeryOutcome> {
    let n = g.vertex_count();
    let radius = alg.locality_radius(n);
    let dist = g.bfs_distances(v, radius);
    let candidates: Vec<usize> = (0..g.edge_count())
        .filter(|&e| {
            let (a, b) = g.endpoints(e);
            dist[a] == usize::MAX && dist[b] == usize::MAX
        })
        .collect();
    if candidates.is_empty() {
        return Ok(SurgeryOutcome::Vacuous);
    }
    let removed = candidates[rng.gen_range(0..candidates.len())];
    let perturbed_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| e != removed)
        .map(|(_, &uv)| uv)
        .collect();
    let perturbed = Graph::from_edges(n, &perturbed_edges)?;

    let before = alg.run_global(g, labels, n)?;
    let after = alg.run_global(&perturbed, labels, n)?;
    match alg.output_kind() {
        OutputKind::Vertex => {
            if before[v] != after[v] {
                return Ok(SurgeryOutcome::Changed { vertex: v });
            }
        }
        OutputKind::Edge => {
            for &e in g.incident_edges(v) {
                let (a, b) = g.endpoints(e);
                let pe = perturbed.edge_id(a, b).expect("edge at v survives surgery");
                if before[e] != after[pe] {
                    return Ok(SurgeryOutcome::Changed { vertex: v });
                }
            }
        }
    }
    Ok(SurgeryOutcome::Unchanged)
}

// ---------------------------------------------------------------------------
// Run manifests
// ---------------------------------------------------------------------------

/// Serializable record of one run: enough to reproduce it bit-exactly.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub graph_file: String,
    pub algorithm_name: String,
    pub id_strategy: String,
    pub seed: u64,
    pub c_exponent: u32,
    pub delta: u32,
    pub outputs: Vec<u64>,
    pub rounds_used: u64,
}

impl RunManifest {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    pub fn from_json(text: &str) -> Result<RunManifest> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}
