//! Edge-wedge sampling for 3-vertex 3-edge motifs.
//!
//! For a sampled edge pinned at position `j`, the motif is split into a
//! temporal wedge (the anchor plus a partner edge sharing the wedge center)
//! and a closing edge. Partner edges are read off the center's adjacency and
//! kept with probability `q`; for each kept wedge the closing edges are
//! counted with two binary searches on the pair index.

use std::ops::Bound;
use std::time::Instant;

use rayon::prelude::*;

use crate::coin::{edge_coin, wedge_coin};
use crate::error::{Error, Result};
use crate::graph::{Delta, Direction, EdgeKey, KeyRange, TemporalEdge, TemporalGraph, TemporalIndex, VertexId};
use crate::motif::{Label, Motif, MotifClass, WedgePlan};
use crate::parallel::with_workers;
use crate::sampler::{Algorithm, EstimateOf, SamplerConfigOf};
use crate::scalar::Scalar;

/// An anchor edge and a partner edge matched to a wedge of the motif.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TemporalWedge {
    pub anchor_edge: TemporalEdge,
    pub partner_edge: TemporalEdge,
    /// Graph vertex assigned to each motif label.
    pub vertices: [VertexId; 3],
}

impl TemporalWedge {
    pub fn new(motif: &Motif, plan: &WedgePlan, anchor_edge: TemporalEdge, partner_edge: TemporalEdge) -> Self {
        let mut vertices = [VertexId::MAX; 3];
        let (a, b) = motif.edge(plan.anchor);
        let (x, y) = motif.edge(plan.partner);
        vertices[x] = partner_edge.src;
        vertices[y] = partner_edge.dst;
        vertices[a] = anchor_edge.src;
        vertices[b] = anchor_edge.dst;
        Self {
            anchor_edge,
            partner_edge,
            vertices,
        }
    }
}

/// Pair and key window a closing edge must fall in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThirdEdgeQuery {
    pub src: VertexId,
    pub dst: VertexId,
    pub range: KeyRange,
}

/// Edges that can be matched to `plan.partner` once `e` sits at `plan.anchor`.
pub fn partner_candidates<'a, I: TemporalIndex + ?Sized>(
    index: &'a I,
    motif: &Motif,
    plan: &WedgePlan,
    e: &TemporalEdge,
    delta: Delta,
) -> impl Iterator<Item = TemporalEdge> + 'a {
    let (a, b) = motif.edge(plan.anchor);
    let (x, y) = motif.edge(plan.partner);
    let mapped = |label: Label| {
        if label == a {
            Some(e.src)
        } else if label == b {
            Some(e.dst)
        } else {
            None
        }
    };
    let center = mapped(plan.center).expect("wedge center is an anchor endpoint");
    let (dir, far) = if x == plan.center { (Direction::Out, y) } else { (Direction::In, x) };
    let far_fixed = mapped(far);

    let range = if plan.partner > plan.anchor {
        KeyRange {
            lo: Bound::Excluded(e.key()),
            hi: Bound::Included(EdgeKey::ceil(e.t.saturating_add(delta.get()))),
        }
    } else {
        KeyRange {
            lo: Bound::Included(EdgeKey::floor(e.t.saturating_sub(delta.get()))),
            hi: Bound::Excluded(e.key()),
        }
    };
    let slice: &'a [TemporalEdge] = if e.is_self_loop() {
        &[]
    } else {
        match dir {
            Direction::Out => range.slice(index.out_edges(center)),
            _ => range.slice(index.in_edges(center)),
        }
    };
    let (u, v) = (e.src, e.dst);
    slice.iter().copied().filter(move |g| {
        let w = if dir == Direction::Out { g.dst } else { g.src };
        match far_fixed {
            Some(fixed) => w == fixed,
            None => w != u && w != v,
        }
    })
}

/// Where the closing edge of `w` must lie.
pub fn closing_query(w: &TemporalWedge, plan: &WedgePlan, delta: Delta) -> ThirdEdgeQuery {
    let (earlier, later) = if plan.anchor < plan.partner {
        (w.anchor_edge, w.partner_edge)
    } else {
        (w.partner_edge, w.anchor_edge)
    };
    let first_pos = plan.anchor.min(plan.partner);
    let last_pos = plan.anchor.max(plan.partner);
    let d = delta.get();
    let range = if plan.third < first_pos {
        KeyRange {
            lo: Bound::Included(EdgeKey::floor(later.t.saturating_sub(d))),
            hi: Bound::Excluded(earlier.key()),
        }
    } else if plan.third < last_pos {
        KeyRange {
            lo: Bound::Excluded(earlier.key()),
            hi: Bound::Excluded(later.key()),
        }
    } else {
        KeyRange {
            lo: Bound::Excluded(later.key()),
            hi: Bound::Included(EdgeKey::ceil(earlier.t.saturating_add(d))),
        }
    };
    let (s, t) = plan.third_edge;
    ThirdEdgeQuery {
        src: w.vertices[s],
        dst: w.vertices[t],
        range,
    }
}

/// Number of edges completing `w` into a delta-instance.
pub fn closing_count<I: TemporalIndex + ?Sized>(index: &I, w: &TemporalWedge, plan: &WedgePlan, delta: Delta) -> u64 {
    let q = closing_query(w, plan, delta);
    index.pair_count(q.src, q.dst, q.range) as u64
}

/// Sum of closing counts over the kept wedges for one anchored edge.
///
/// Dividing by `q` gives the estimate of the anchored local count; at `q = 1`
/// it is the exact anchored count.
pub fn anchored_wedge_sum<I: TemporalIndex + ?Sized>(
    index: &I,
    motif: &Motif,
    plan: &WedgePlan,
    e: &TemporalEdge,
    delta: Delta,
    seed: u64,
    q: f64,
) -> u64 {
    partner_candidates(index, motif, plan, e, delta)
        .filter(|g| wedge_coin(seed, e.seq, plan.anchor, g.seq, q))
        .map(|g| closing_count(index, &TemporalWedge::new(motif, plan, *e, g), plan, delta))
        .sum()
}

/// Wedge plans of a supported motif for every anchor and center choice.
#[derive(Debug, Clone)]
pub struct WedgeSampler<'m> {
    motif: &'m Motif,
    /// Star: one plan per anchor. Triangle: `[center = src label, center = dst label]`.
    plans: Vec<[WedgePlan; 2]>,
    triangle: bool,
}

impl<'m> WedgeSampler<'m> {
    pub fn new(motif: &'m Motif) -> Result<Self> {
        let (plans, triangle) = match motif.classify() {
            MotifClass::Star33 { .. } => {
                let plans = (0..3)
                    .map(|j| motif.wedge_plan(j, None).map(|p| [p, p]))
                    .collect::<Result<_>>()?;
                (plans, false)
            }
            MotifClass::Triangle33 => {
                let plans = (0..3)
                    .map(|j| {
                        let (a, b) = motif.edge(j);
                        Ok([motif.wedge_plan(j, Some(a))?, motif.wedge_plan(j, Some(b))?])
                    })
                    .collect::<Result<_>>()?;
                (plans, true)
            }
            MotifClass::General => {
                return Err(Error::UnsupportedMotif {
                    algorithm: "edge-wedge sampling",
                    reason: format!(
                        "motif {motif} is not a 3-vertex 3-edge star or triangle; use edge sampling"
                    ),
                })
            }
        };
        Ok(Self {
            motif,
            plans,
            triangle,
        })
    }

    pub fn motif(&self) -> &Motif {
        self.motif
    }

    /// Plan for `e` at position `j`. For triangles the wedge is centered at
    /// whichever endpoint of `e` has fewer incident edges within
    /// `[t - delta, t + delta]`, the smaller vertex id on a tie.
    pub fn plan_for<I: TemporalIndex + ?Sized>(&self, index: &I, j: usize, e: &TemporalEdge, delta: Delta) -> &WedgePlan {
        if !self.triangle {
            return &self.plans[j][0];
        }
        let lo = e.t.saturating_sub(delta.get());
        let hi = e.t.saturating_add(delta.get());
        let du = index.window_degree(e.src, lo, hi);
        let dv = index.window_degree(e.dst, lo, hi);
        let pick_src = du < dv || (du == dv && e.src <= e.dst);
        &self.plans[j][if pick_src { 0 } else { 1 }]
    }

    /// Per-anchor kept-wedge sums for `e`.
    pub fn local_sums<I: TemporalIndex + ?Sized>(&self, index: &I, e: &TemporalEdge, delta: Delta, seed: u64, q: f64) -> [u64; 3] {
        let mut out = [0u64; 3];
        for (j, slot) in out.iter_mut().enumerate() {
            let plan = self.plan_for(index, j, e, delta);
            *slot = anchored_wedge_sum(index, self.motif, plan, e, delta, seed, q);
        }
        out
    }

    pub fn local_total<I: TemporalIndex + ?Sized>(&self, index: &I, e: &TemporalEdge, delta: Delta, seed: u64, q: f64) -> u64 {
        self.local_sums(index, e, delta, seed, q).iter().sum()
    }
}

/// `sum / (3 p q)`.
pub fn scale_ews<S: Scalar>(wedge_sum: u64, p: S, q: S) -> S {
    S::from_count(wedge_sum) / (S::from_count(3) * p * q)
}

/// Edge-wedge sampling estimate for a (3,3)-star or temporal triangle.
pub fn estimate_ews<S: Scalar>(
    g: &TemporalGraph,
    motif: &Motif,
    delta: Delta,
    cfg: &SamplerConfigOf<S>,
) -> Result<EstimateOf<S>> {
    cfg.validate()?;
    let sampler = WedgeSampler::new(motif)?;
    let start = Instant::now();
    let (p, q, seed) = (cfg.p_f64(), cfg.q_f64(), cfg.seed);
    let (sampled, local_sum) = with_workers(cfg.workers, || {
        g.edges()
            .par_iter()
            .filter(|e| edge_coin(seed, e.seq, p))
            .map(|e| (1u64, sampler.local_total(g, e, delta, seed, q)))
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    });
    Ok(EstimateOf {
        value: scale_ews(local_sum, cfg.p, cfg.q),
        algorithm: Algorithm::EdgeWedgeSampling,
        sampled_edges: sampled,
        local_sum,
        empty_sample: sampled == 0,
        config: *cfg,
        elapsed: start.elapsed(),
    })
}
