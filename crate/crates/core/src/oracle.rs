//! Brute-force reference counter.
//!
//! Walks every strictly increasing subsequence of edges that fits in a
//! delta window and checks the vertex bijection directly. Exponential in the
//! motif length; meant for small graphs.

use crate::graph::{Delta, TemporalGraph, VertexId};
use crate::motif::{Label, Motif};

pub fn brute_force_count(g: &TemporalGraph, motif: &Motif, delta: Delta) -> u64 {
    let edges = g.edges();
    let mut count = 0;
    let mut forward: Vec<Option<VertexId>> = vec![None; motif.num_vertices()];
    let mut backward = std::collections::HashMap::new();
    for first in 0..edges.len() {
        let limit = edges[first].t.saturating_add(delta.get());
        let end = edges.partition_point(|e| e.t <= limit);
        let mut chosen = vec![first];
        walk(g, motif, &mut chosen, end, &mut forward, &mut backward, &mut count);
    }
    count
}

fn walk(
    g: &TemporalGraph,
    motif: &Motif,
    chosen: &mut Vec<usize>,
    end: usize,
    forward: &mut [Option<VertexId>],
    backward: &mut std::collections::HashMap<VertexId, Label>,
    count: &mut u64,
) {
    let depth = chosen.len() - 1;
    let e = g.edges()[*chosen.last().unwrap()];
    let (a, b) = motif.edge(depth);
    // Try to extend the label bijection with a->src, b->dst.
    let mut added = Vec::new();
    let mut ok = true;
    for (label, v) in [(a, e.src), (b, e.dst)] {
        match (forward[label], backward.get(&v)) {
            (Some(w), _) if w != v => ok = false,
            (None, Some(_)) => ok = false,
            (None, None) => {
                forward[label] = Some(v);
                backward.insert(v, label);
                added.push((label, v));
            }
            _ => {}
        }
        if !ok {
            break;
        }
    }
    if ok {
        if chosen.len() == motif.len() {
            *count += 1;
        } else {
            let next_start = *chosen.last().unwrap() + 1;
            for next in next_start..end {
                chosen.push(next);
                walk(g, motif, chosen, end, forward, backward, count);
                chosen.pop();
            }
        }
    }
    for (label, v) in added {
        forward[label] = None;
        backward.remove(&v);
    }
}
