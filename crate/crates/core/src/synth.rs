//! Seeded synthetic temporal graphs.
//!
//! Both generators emit edges in non-decreasing time order, so the input
//! ordinal agrees with the `(t, seq)` order and the graphs can be replayed
//! as streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Pareto, Zipf};

use crate::graph::{TemporalGraph, Timestamp, VertexId};

/// `m` edges between uniformly random endpoints with timestamps uniform in
/// `[0, span]`. Self-loops are kept when `self_loops` is set.
pub fn uniform(seed: u64, n: u32, m: usize, span: Timestamp, self_loops: bool) -> TemporalGraph {
    assert!(n >= 2, "need at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(VertexId, VertexId, Timestamp)> = (0..m)
        .map(|_| {
            let u = rng.random_range(0..n);
            let mut v = rng.random_range(0..n);
            while !self_loops && v == u {
                v = rng.random_range(0..n);
            }
            (u, v, rng.random_range(0..=span))
        })
        .collect();
    edges.sort_by_key(|e| e.2);
    TemporalGraph::from_edges(edges)
}

/// `m` edges with Zipf-distributed endpoints (exponent `skew`) and
/// heavy-tailed Pareto inter-arrival gaps, giving quiet stretches broken by
/// bursts of activity. No self-loops.
pub fn power_law_bursty(seed: u64, n: u32, m: usize, skew: f64, mean_gap: f64) -> TemporalGraph {
    assert!(n >= 2, "need at least two vertices");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zipf = Zipf::new(n as f64, skew).expect("valid zipf parameters");
    // Shape 1.5 has a finite mean of 3 * scale.
    let pareto = Pareto::new(mean_gap / 3.0, 1.5).expect("valid pareto parameters");
    // Scramble ranks so hubs are not simply the low ids.
    let mut perm: Vec<VertexId> = (0..n).collect();
    for i in (1..perm.len()).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let mut t: f64 = 0.0;
    let mut edges = Vec::with_capacity(m);
    while edges.len() < m {
        // A gap below one tick lands in the same second.
        let gap: f64 = pareto.sample(&mut rng);
        t += if rng.random_bool(0.7) { gap * 0.02 } else { gap * 2.3 };
        let u = perm[zipf.sample(&mut rng) as usize - 1];
        let v = perm[zipf.sample(&mut rng) as usize - 1];
        if u == v {
            continue;
        }
        edges.push((u, v, t as Timestamp));
    }
    TemporalGraph::from_edges(edges)
}
