//! Seeded generators for the experiment graph families and cost samplers.
//!
//! All randomness flows through ChaCha8 seeded via `seed_from_u64`, so a
//! seed plus parameters pins the output bit-for-bit. Trial seeds are
//! derived with a splitmix64 mix, making trials independent and
//! reproducible in any order.

use rand::distributions::{Distribution, Uniform};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// splitmix64 finalizer.
fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for one trial of a multi-trial run: `splitmix64(seed ^ f(trial))`.
pub fn derive_trial_seed(seed: u64, trial: u64) -> u64 {
    splitmix64(seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(1))
}

/// Independent stream within one trial (graph one, graph two, costs, ...).
pub fn derive_stream_seed(trial_seed: u64, stream: u64) -> u64 {
    splitmix64(trial_seed ^ splitmix64(stream.wrapping_add(0xA5A5_A5A5)))
}

/// Scale-free graph by preferential attachment: a complete seed graph on
/// `init_nodes`, then each new node attaches to `edges_per_node` distinct
/// existing nodes sampled proportionally to degree (duplicates resampled).
/// A new node with fewer than `edges_per_node` predecessors attaches to
/// all of them, so for `edges_per_node <= init_nodes` the edge count is
/// exactly `C(init,2) + (n - init) * edges_per_node`.
pub fn preferential_attachment(
    n: usize,
    init_nodes: usize,
    edges_per_node: usize,
    seed: u64,
) -> Result<Graph> {
    if edges_per_node < 1 || init_nodes < 1 || n < init_nodes {
        return Err(Error::invalid(format!(
            "need n >= init_nodes >= 1 and edges_per_node >= 1, got n = {n}, \
             init_nodes = {init_nodes}, edges_per_node = {edges_per_node}"
        )));
    }
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n);
    // One entry per endpoint: sampling an index uniformly is sampling a
    // node proportionally to its degree.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * (n * edges_per_node + init_nodes));
    for u in 0..init_nodes {
        for v in u + 1..init_nodes {
            g.add_edge(u, v)?;
            endpoints.push(u);
            endpoints.push(v);
        }
    }
    for v in init_nodes..n {
        let wanted = edges_per_node.min(v);
        let mut targets: Vec<usize> = Vec::with_capacity(wanted);
        if wanted == v {
            targets.extend(0..v);
        } else {
            while targets.len() < wanted {
                let t = endpoints[rng.gen_range(0..endpoints.len())];
                if !targets.contains(&t) {
                    targets.push(t);
                }
            }
        }
        for t in targets {
            g.add_edge(v, t)?;
            endpoints.push(v);
            endpoints.push(t);
        }
    }
    Ok(g)
}

/// Each of the `C(n,2)` pairs is an edge independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "edge probability must be in [0, 1], got {p}"
        )));
    }
    let mut rng = rng_for(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// `n` points uniform in a `side x side` square; an edge joins every pair
/// at Euclidean distance at most `radius`.
pub fn geometric_random(n: usize, side: f64, radius: f64, seed: u64) -> Result<Graph> {
    if !(side > 0.0) || !(radius > 0.0) {
        return Err(Error::invalid(format!(
            "side and radius must be positive, got side = {side}, radius = {radius}"
        )));
    }
    let mut rng = rng_for(seed);
    let points: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.gen::<f64>() * side, rng.gen::<f64>() * side))
        .collect();
    let r2 = radius * radius;
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            let dx = points[u].0 - points[v].0;
            let dy = points[u].1 - points[v].1;
            if dx * dx + dy * dy <= r2 {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// Copy of `g` with every missing edge at `hub` added, making it adjacent
/// to all other nodes.
pub fn add_hub(g: &Graph, hub: usize) -> Result<Graph> {
    if hub >= g.node_count() {
        return Err(Error::invalid(format!(
            "hub {hub} out of range for graph on {} nodes",
            g.node_count()
        )));
    }
    let mut out = g.clone();
    for v in 0..g.node_count() {
        if v != hub {
            out.add_edge(hub, v)?;
        }
    }
    Ok(out)
}

/// `count` i.i.d. uniform draws on `[low, high]`.
pub fn sample_costs(count: usize, low: f64, high: f64, seed: u64) -> Result<Vec<f64>> {
    if !(low > 0.0) || !(high > low) {
        return Err(Error::invalid(format!(
            "cost range must satisfy 0 < low < high, got [{low}, {high}]"
        )));
    }
    let mut rng = rng_for(seed);
    let dist = Uniform::new_inclusive(low, high);
    Ok((0..count).map(|_| dist.sample(&mut rng)).collect())
}
