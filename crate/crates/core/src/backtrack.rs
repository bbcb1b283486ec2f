//! Exact local and global counting by backtracking.
//!
//! A sampled edge is pinned to one motif position and the remaining
//! positions are matched depth-first along a [`MatchingOrder`]. Candidates at
//! each depth come from the adjacency of an already mapped vertex, restricted
//! to the time window implied by the mapped neighbours in temporal order and
//! by the duration bound.

use std::ops::Bound;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Delta, EdgeKey, KeyRange, TemporalEdge, TemporalGraph, TemporalIndex, VertexId};
use crate::motif::{MatchingOrder, Motif};
use crate::parallel::with_workers;

/// Per-anchor local counts of one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCount {
    eta: Vec<u64>,
}

impl LocalCount {
    pub fn new(eta: Vec<u64>) -> Self {
        Self { eta }
    }

    /// Instances with the edge at position `j`, for each `j`.
    pub fn per_anchor(&self) -> &[u64] {
        &self.eta
    }

    pub fn total(&self) -> u64 {
        self.eta.iter().sum()
    }
}

/// A motif together with its precomputed matching orders.
#[derive(Debug, Clone)]
pub struct Backtracker<'m> {
    motif: &'m Motif,
    orders: Vec<MatchingOrder>,
}

impl<'m> Backtracker<'m> {
    pub fn new(motif: &'m Motif) -> Self {
        Self {
            motif,
            orders: motif.matching_orders(),
        }
    }

    /// Uses caller-supplied orders; `orders[j]` must be anchored at `j`.
    pub fn with_orders(motif: &'m Motif, orders: Vec<MatchingOrder>) -> Result<Self> {
        if orders.len() != motif.len() || orders.iter().enumerate().any(|(j, o)| o.anchor() != j) {
            return Err(Error::InvalidOrder("one order per anchor position is required".into()));
        }
        Ok(Self { motif, orders })
    }

    pub fn motif(&self) -> &Motif {
        self.motif
    }

    pub fn orders(&self) -> &[MatchingOrder] {
        &self.orders
    }

    pub fn anchored<I: TemporalIndex + ?Sized>(&self, index: &I, j: usize, e: &TemporalEdge, delta: Delta) -> u64 {
        enumerate_local(index, self.motif, &self.orders[j], e, delta)
    }

    pub fn local_count<I: TemporalIndex + ?Sized>(&self, index: &I, e: &TemporalEdge, delta: Delta) -> LocalCount {
        LocalCount::new(
            self.orders
                .iter()
                .map(|o| enumerate_local(index, self.motif, o, e, delta))
                .collect(),
        )
    }

    pub fn local_total<I: TemporalIndex + ?Sized>(&self, index: &I, e: &TemporalEdge, delta: Delta) -> u64 {
        self.orders
            .iter()
            .map(|o| enumerate_local(index, self.motif, o, e, delta))
            .sum()
    }
}

/// Counts the instances in which `e` occupies position `order.anchor()`.
pub fn enumerate_local<I: TemporalIndex + ?Sized>(
    index: &I,
    motif: &Motif,
    order: &MatchingOrder,
    e: &TemporalEdge,
    delta: Delta,
) -> u64 {
    enumerate_local_with(index, motif, order, e, delta, |_| {})
}

/// Like [`enumerate_local`], calling `emit` with each instance's edges in
/// motif position order.
pub fn enumerate_local_with<I, F>(
    index: &I,
    motif: &Motif,
    order: &MatchingOrder,
    e: &TemporalEdge,
    delta: Delta,
    emit: F,
) -> u64
where
    I: TemporalIndex + ?Sized,
    F: FnMut(&[TemporalEdge]),
{
    if e.is_self_loop() {
        return 0;
    }
    let (a, b) = motif.edge(order.anchor());
    let mut search = Search {
        index,
        motif,
        order: order.positions(),
        delta: delta.get(),
        edge_map: vec![None; motif.len()],
        vertex_map: vec![None; motif.num_vertices()],
        emit,
        found: 0,
        instance: Vec::with_capacity(motif.len()),
    };
    search.edge_map[order.anchor()] = Some(*e);
    search.vertex_map[a] = Some(e.src);
    search.vertex_map[b] = Some(e.dst);
    search.extend(1);
    search.found
}

struct Search<'a, I: ?Sized, F> {
    index: &'a I,
    motif: &'a Motif,
    order: &'a [usize],
    delta: i64,
    edge_map: Vec<Option<TemporalEdge>>,
    vertex_map: Vec<Option<VertexId>>,
    emit: F,
    found: u64,
    instance: Vec<TemporalEdge>,
}

impl<'a, I, F> Search<'a, I, F>
where
    I: TemporalIndex + ?Sized,
    F: FnMut(&[TemporalEdge]),
{
    fn extend(&mut self, depth: usize) {
        if depth == self.order.len() {
            self.found += 1;
            self.instance.clear();
            self.instance.extend(self.edge_map.iter().map(|e| e.expect("complete map")));
            (self.emit)(&self.instance);
            return;
        }
        let pos = self.order[depth];
        let (a, b) = self.motif.edge(pos);
        let range = self.window(pos);
        let index = self.index;
        let (va, vb) = (self.vertex_map[a], self.vertex_map[b]);
        let candidates: &'a [TemporalEdge] = match (va, vb) {
            (Some(x), Some(y)) => {
                let out = range.slice(index.out_edges(x));
                let inn = range.slice(index.in_edges(y));
                if out.len() <= inn.len() {
                    out
                } else {
                    inn
                }
            }
            (Some(x), None) => range.slice(index.out_edges(x)),
            (None, Some(y)) => range.slice(index.in_edges(y)),
            (None, None) => unreachable!("matching order is connected"),
        };
        for c in candidates {
            if !self.accepts(c, va, vb) {
                continue;
            }
            self.edge_map[pos] = Some(*c);
            self.vertex_map[a] = Some(c.src);
            self.vertex_map[b] = Some(c.dst);
            self.extend(depth + 1);
            self.vertex_map[a] = va;
            self.vertex_map[b] = vb;
        }
        self.edge_map[pos] = None;
    }

    fn accepts(&self, c: &TemporalEdge, va: Option<VertexId>, vb: Option<VertexId>) -> bool {
        let fresh = |w: VertexId| !self.vertex_map.contains(&Some(w));
        let src_ok = match va {
            Some(x) => c.src == x,
            None => fresh(c.src),
        };
        let dst_ok = match vb {
            Some(y) => c.dst == y,
            None => fresh(c.dst),
        };
        src_ok
            && dst_ok
            && c.src != c.dst
            && !self.edge_map.iter().flatten().any(|m| m.seq == c.seq)
    }

    /// Admissible keys for position `pos` given the current partial map.
    fn window(&self, pos: usize) -> KeyRange {
        let mut range = KeyRange::ALL;
        let mut t_min = i64::MAX;
        let mut t_max = i64::MIN;
        for (p, mapped) in self.edge_map.iter().enumerate() {
            let Some(m) = mapped else { continue };
            t_min = t_min.min(m.t);
            t_max = t_max.max(m.t);
            if p < pos {
                range.raise_lo(Bound::Excluded(m.key()));
            } else if p > pos {
                range.lower_hi(Bound::Excluded(m.key()));
            }
        }
        range.raise_lo(Bound::Included(EdgeKey::floor(t_max.saturating_sub(self.delta))));
        range.lower_hi(Bound::Included(EdgeKey::ceil(t_min.saturating_add(self.delta))));
        range
    }
}

/// All local counts of `e`, one per anchor position.
pub fn local_count<I: TemporalIndex + ?Sized>(index: &I, motif: &Motif, e: &TemporalEdge, delta: Delta) -> LocalCount {
    Backtracker::new(motif).local_count(index, e, delta)
}

/// Sum over all edges of the per-anchor local counts.
///
/// Each entry equals the exact number of instances, since every instance has
/// exactly one edge at each position.
pub fn anchor_totals(g: &TemporalGraph, motif: &Motif, delta: Delta, workers: Option<usize>) -> Vec<u64> {
    let bt = Backtracker::new(motif);
    let l = motif.len();
    with_workers(workers, || {
        g.edges()
            .par_iter()
            .fold(
                || vec![0u64; l],
                |mut acc, e| {
                    for (j, slot) in acc.iter_mut().enumerate() {
                        *slot += bt.anchored(g, j, e, delta);
                    }
                    acc
                },
            )
            .reduce(
                || vec![0u64; l],
                |mut a, b| {
                    a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                    a
                },
            )
    })
}

/// Exact number of delta-instances of `motif` in `g`.
pub fn count_exact(g: &TemporalGraph, motif: &Motif, delta: Delta) -> Result<u64> {
    count_exact_with_workers(g, motif, delta, None)
}

pub fn count_exact_with_workers(
    g: &TemporalGraph,
    motif: &Motif,
    delta: Delta,
    workers: Option<usize>,
) -> Result<u64> {
    let bt = Backtracker::new(motif);
    let sum: u64 = with_workers(workers, || {
        g.edges().par_iter().map(|e| bt.local_total(g, e, delta)).sum()
    });
    let l = motif.len() as u64;
    if !sum.is_multiple_of(l) {
        return Err(Error::Inconsistent(format!(
            "sum of local counts {sum} is not divisible by motif length {l}"
        )));
    }
    Ok(sum / l)
}
