//! Greedy (Δ+1)-coloring machinery: iterated one-round color reduction and
//! the class-by-class greedy finish, plus a sequential reference.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Iterated-logarithm count: applications of log2 until the value is <= 2.
pub fn log_star(n: f64) -> u32 {
    assert!(n >= 1.0);
    let mut x = n;
    let mut count = 0;
    while x > 2.0 {
        x = x.log2();
        count += 1;
    }
    count
}

/// log* for arbitrarily large integers; the first step uses the bit length.
pub fn log_star_big(n: &BigUint) -> u32 {
    let two = BigUint::from(2u32);
    if *n <= two {
        return 0;
    }
    // log2(n) <= bits(n); for the iterated logarithm the ceiling is exact
    // enough: one application lands in f64 range.
    1 + log_star(n.bits() as f64)
}

/// Number of bits in the binary representation of the palette `1..=k`
/// written as values `0..k`, i.e. ceil(log2(k)).
fn ceil_log2_u64(k: u64) -> u32 {
    assert!(k >= 2);
    64 - (k - 1).leading_zeros()
}

fn ceil_log2_big(k: &BigUint) -> u64 {
    assert!(*k >= BigUint::from(2u32));
    let km1 = k - 1u32;
    km1.bits()
}

/// One-round palette bound: (2 ceil(log2 k))^delta.
pub fn cv_bound(k: &BigUint, delta: u32) -> BigUint {
    BigUint::from(2 * ceil_log2_big(k)).pow(delta)
}

/// u64 variant of [`cv_bound`], saturating in u128 to keep the stop test
/// exact for any delta.
pub fn cv_bound_sat(k: u64, delta: u32) -> u128 {
    let base = 2 * ceil_log2_u64(k) as u128;
    let mut acc: u128 = 1;
    for _ in 0..delta {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// A total vertex coloring with a declared palette size. Colors are
/// 1-based; `palette` may exceed the largest color in use.
#[derive(Debug, Clone)]
pub struct Coloring {
    pub colors: Vec<u64>,
    pub palette: u64,
}

impl Coloring {
    pub fn new(colors: Vec<u64>, palette: u64) -> Coloring {
        Coloring { colors, palette }
    }

    pub fn validate_proper(&self, g: &Graph) -> Result<()> {
        if self.colors.len() != g.vertex_count() {
            return Err(Error::ImproperInput("coloring is not total".into()));
        }
        for (v, &c) in self.colors.iter().enumerate() {
            if c == 0 || c > self.palette {
                return Err(Error::ImproperInput(format!(
                    "color {c} at vertex {v} outside 1..={}",
                    self.palette
                )));
            }
            for &w in g.neighbors(v) {
                if self.colors[w] == c {
                    return Err(Error::ImproperInput(format!(
                        "edge {v}-{w} is monochromatic"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<u64> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    pub fn max_color(&self) -> u64 {
        self.colors.iter().copied().max().unwrap_or(0)
    }
}

/// One round of color reduction. Every vertex lists, per neighbor, the
/// first bit position where the two colors differ together with its own bit
/// there; the pair multiset is padded to `delta` entries and re-encoded
/// canonically (sorted) into `1..=(2L)^delta`.
///
/// Vertices of degree < delta pad with a copy of their first real pair (or
/// pair 0 when isolated), which keeps every multiset entry a genuine pair
/// of the vertex and the properness argument intact.
pub fn cv_step(g: &Graph, c: &Coloring, delta: u32) -> Result<Coloring> {
    let k = c.palette;
    if k < 2 {
        return Err(Error::ImproperInput("cv_step needs palette >= 2".into()));
    }
    c.validate_proper(g)?;
    if g.max_degree() as u32 > delta {
        return Err(Error::ImproperInput(format!(
            "graph degree {} exceeds declared delta {delta}",
            g.max_degree()
        )));
    }
    let bits = ceil_log2_u64(k) as u64;
    let base = 2 * bits;
    let new_palette = cv_bound_sat(k, delta);
    let new_palette: u64 = u64::try_from(new_palette)
        .map_err(|_| Error::ImproperInput("cv palette exceeds u64; do not step here".into()))?;
    let mut out = Vec::with_capacity(g.vertex_count());
    let mut pairs: Vec<u64> = Vec::with_capacity(delta as usize);
    for v in 0..g.vertex_count() {
        pairs.clear();
        let cv = c.colors[v] - 1;
        for &w in g.neighbors(v) {
            let cw = c.colors[w] - 1;
            let diff = cv ^ cw;
            debug_assert!(diff != 0);
            let pos = diff.trailing_zeros() as u64;
            let bit = (cv >> pos) & 1;
            pairs.push(2 * pos + bit);
        }
        let pad = pairs.first().copied().unwrap_or(0);
        while pairs.len() < delta as usize {
            pairs.push(pad);
        }
        pairs.sort_unstable();
        let mut enc: u64 = 0;
        for &p in pairs.iter() {
            debug_assert!(p < base);
            enc = enc * base + p;
        }
        out.push(enc + 1);
    }
    let result = Coloring::new(out, new_palette);
    debug_assert!(result.validate_proper(g).is_ok());
    Ok(result)
}

/// Outcome of [`reduce_to_constant`]: the reduced coloring plus the number
/// of reduction rounds that ran.
pub struct Reduced {
    pub coloring: Coloring,
    pub rounds: u32,
}

/// Iterates [`cv_step`] until the palette bound stops shrinking, i.e. until
/// cv_bound(k, delta) >= k. Terminates for every delta.
pub fn reduce_to_constant(g: &Graph, c: &Coloring, delta: u32) -> Result<Reduced> {
    let mut cur = c.clone();
    let mut rounds = 0;
    while cv_bound_sat(cur.palette, delta) < cur.palette as u128 {
        cur = cv_step(g, &cur, delta)?;
        rounds += 1;
    }
    Ok(Reduced {
        coloring: cur,
        rounds,
    })
}

/// Iteration count [`reduce_to_constant`] will take from palette `k`
/// without touching a graph.
pub fn reduce_rounds_for_palette(k: u64, delta: u32) -> u32 {
    let mut k = k as u128;
    let mut rounds = 0;
    loop {
        if k < 2 {
            return rounds;
        }
        let next = cv_bound_sat(k as u64, delta);
        if next >= k {
            return rounds;
        }
        k = next;
        rounds += 1;
    }
}

/// Class-by-class greedy finish: sweeps the color classes of `c` in
/// ascending order; each vertex takes the least color in `1..=palette`
/// absent from its already-finalized neighbors. One sweep per class index;
/// within a sweep the class is an independent set, so order is immaterial.
pub fn greedy_finish(g: &Graph, c: &Coloring, palette: u64) -> Result<Coloring> {
    c.validate_proper(g)?;
    if (g.max_degree() as u64) >= palette {
        return Err(Error::ImproperInput(format!(
            "palette {palette} too small for degree {}",
            g.max_degree()
        )));
    }
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (c.colors[v], v));
    let mut out = vec![0u64; n];
    // Only colors up to degree+1 are ever assigned, so the mark buffer stays
    // small even for astronomically declared palettes.
    let mut marks = vec![false; g.max_degree() + 2];
    for &v in &order {
        for &w in g.neighbors(v) {
            if out[w] != 0 && c.colors[w] < c.colors[v] {
                marks[out[w] as usize] = true;
            }
        }
        let cap = (g.degree(v) as u64 + 1).min(palette);
        out[v] = (1..=cap).find(|&col| !marks[col as usize]).unwrap();
        for &w in g.neighbors(v) {
            if out[w] != 0 && c.colors[w] < c.colors[v] {
                marks[out[w] as usize] = false;
            }
        }
    }
    let result = Coloring::new(out, palette);
    debug_assert!(result.validate_proper(g).is_ok());
    Ok(result)
}

/// Single-pass sequential greedy over the given vertex order; at most
/// max-degree + 1 colors.
pub fn sequential_greedy(g: &Graph, order: &[usize]) -> Coloring {
    let n = g.vertex_count();
    debug_assert_eq!(order.len(), n);
    let palette = g.max_degree() as u64 + 1;
    let mut out = vec![0u64; n];
    let mut marks = vec![false; palette as usize + 1];
    for &v in order {
        for &w in g.neighbors(v) {
            if out[w] != 0 {
                marks[out[w] as usize] = true;
            }
        }
        let c = (1..=palette).find(|&c| !marks[c as usize]).unwrap();
        out[v] = c;
        for &w in g.neighbors(v) {
            if out[w] != 0 {
                marks[out[w] as usize] = false;
            }
        }
    }
    Coloring::new(out, palette)
}

/// Full distributed-greedy pipeline evaluated in closed form: initial
/// colors (IDs shifted to 1-based), color reduction, then the greedy
/// finish against the declared `delta` with palette delta+1.
///
/// Returns the final coloring and the number of reduction rounds.
pub fn greedy_pipeline(g: &Graph, ids: &[u64], id_bound: u64, delta: u32) -> Result<(Coloring, u32)> {
    let init = Coloring::new(ids.iter().map(|&x| x + 1).collect(), id_bound.max(2));
    init.validate_proper(g).map_err(|_| {
        Error::ImproperInput("ids must be injective to serve as a coloring".into())
    })?;
    let reduced = reduce_to_constant(g, &init, delta)?;
    let finished = greedy_finish(g, &reduced.coloring, delta as u64 + 1)?;
    Ok((finished, reduced.rounds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_graph, FamilySpec};
    use num_bigint::BigUint;

    #[test]
    fn log_star_values() {
        assert_eq!(log_star(2.0), 0);
        assert_eq!(log_star(16.0), 2);
        assert_eq!(log_star(65536.0), 3);
        assert_eq!(log_star_big(&BigUint::from(2u32).pow(65536)), 4);
    }

    #[test]
    fn cv_bound_paper_chain() {
        let k = BigUint::from(2u32).pow(65536);
        let b1 = cv_bound(&k, 2);
        assert_eq!(b1, BigUint::from(17179869184u64));
        let b2 = cv_bound(&b1, 2);
        assert_eq!(b2, BigUint::from(4624u32));
        let b3 = cv_bound(&b2, 2);
        assert_eq!(b3, BigUint::from(676u32));
        let b4 = cv_bound(&b3, 2);
        assert_eq!(b4, BigUint::from(400u32));
    }

    #[test]
    fn cv_step_on_cycle() {
        let g = gen_graph(&FamilySpec::Cycle { n: 12 }, None).unwrap();
        // proper 8-coloring of C12
        let colors: Vec<u64> = (0..12).map(|i| (i % 4) * 2 + 1 + (i / 4) % 2).collect();
        let c = Coloring::new(colors, 8);
        c.validate_proper(&g).unwrap();
        let next = cv_step(&g, &c, 2).unwrap();
        next.validate_proper(&g).unwrap();
        assert!(next.palette <= 36);
        assert!(next.max_color() <= 36);
    }

    #[test]
    fn cv_step_isolated_vertex() {
        let g = crate::graph::Graph::from_edges(3, &[(0, 1)]).unwrap();
        let c = Coloring::new(vec![1, 2, 1], 4);
        let next = cv_step(&g, &c, 2).unwrap();
        next.validate_proper(&g).unwrap();
        // the isolated vertex gets the fixed all-sentinel encoding
        assert_eq!(next.colors[2], 1);
    }

    #[test]
    fn cv_step_two_vertex_edge() {
        let g = crate::graph::Graph::from_edges(2, &[(0, 1)]).unwrap();
        let c = Coloring::new(vec![1, 2], 2);
        let next = cv_step(&g, &c, 2).unwrap();
        assert_ne!(next.colors[0], next.colors[1]);
    }

    #[test]
    fn reduce_fixed_point_counting() {
        // From 2^64-scale palettes with delta=2 the trajectory ends at 324.
        assert_eq!(reduce_rounds_for_palette(324, 2), 0);
        assert_eq!(reduce_rounds_for_palette(400, 2), 1);
        // ids as initial colors on C_1000, c=1
        let g = gen_graph(&FamilySpec::Cycle { n: 1000 }, None).unwrap();
        let ids: Vec<u64> = (0..1000).collect();
        let init = Coloring::new(ids.iter().map(|&x| x + 1).collect(), 1000);
        let red = reduce_to_constant(&g, &init, 2).unwrap();
        red.coloring.validate_proper(&g).unwrap();
        assert!(red.rounds <= log_star(1000.0) + 4);
        assert_eq!(red.rounds, reduce_rounds_for_palette(1000, 2));
        assert!(red.coloring.palette <= 400);
    }

    #[test]
    fn greedy_finish_cases() {
        let g = gen_graph(&FamilySpec::Cycle { n: 6 }, None).unwrap();
        // a proper coloring with a large palette
        let c = Coloring::new(vec![1, 9, 17, 25, 33, 36], 36);
        c.validate_proper(&g).unwrap();
        let done = greedy_finish(&g, &c, 3).unwrap();
        done.validate_proper(&g).unwrap();
        assert!(done.max_color() <= 3);

        // already a proper (delta+1)-coloring used as classes
        let again = greedy_finish(&g, &done, 3).unwrap();
        again.validate_proper(&g).unwrap();

        let k4 = gen_graph(&FamilySpec::Complete { n: 4 }, None).unwrap();
        let c = Coloring::new(vec![1, 2, 3, 4], 4);
        let done = greedy_finish(&k4, &c, 4).unwrap();
        let mut sorted = done.colors.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 2, 3, 4]);
    }

    #[test]
    fn sequential_greedy_cases() {
        let empty = crate::graph::Graph::from_edges(5, &[]).unwrap();
        let order: Vec<usize> = (0..5).collect();
        let c = sequential_greedy(&empty, &order);
        assert!(c.colors.iter().all(|&x| x == 1));

        let k5 = gen_graph(&FamilySpec::Complete { n: 5 }, None).unwrap();
        let c = sequential_greedy(&k5, &order);
        assert_eq!(c.colors, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn pipeline_on_cycle() {
        let g = gen_graph(&FamilySpec::Cycle { n: 100 }, None).unwrap();
        let ids: Vec<u64> = (0..100).map(|i| (i * 37) % 100).collect();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 100);
        let (c, rounds) = greedy_pipeline(&g, &ids, 100, 2).unwrap();
        c.validate_proper(&g).unwrap();
        assert!(c.max_color() <= 3);
        assert_eq!(rounds, reduce_rounds_for_palette(100, 2));
    }
}
