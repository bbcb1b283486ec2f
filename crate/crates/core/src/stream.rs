//! One-pass estimation over a time-ordered edge stream.
//!
//! The stream keeps every edge from the last `2 delta` time units in
//! incrementally maintained indexes. A sampled edge waits until an edge
//! strictly later than `t + delta` arrives; at that point its whole
//! `[t - delta, t + delta]` neighbourhood is present and its local count is
//! computed against the window. Sampling decisions and local counts are the
//! same functions of `(seed, seq)` as in batch mode, so for a sorted input the
//! result equals the batch estimate exactly.

use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use crate::backtrack::Backtracker;
use crate::coin::edge_coin;
use crate::error::{Error, Result};
use crate::graph::{Delta, EdgeKey, Keyed, TemporalEdge, TemporalIndex, Timestamp, VertexId};
use crate::motif::Motif;
use crate::sampler::{scale_es, Algorithm, EstimateOf, SamplerConfigOf};
use crate::scalar::Scalar;
use crate::wedge::{scale_ews, WedgeSampler};

/// Append-at-back, pop-at-front run that stays contiguous for binary search.
#[derive(Debug, Clone)]
struct SlidingRun<T> {
    buf: Vec<T>,
    head: usize,
}

impl<T> Default for SlidingRun<T> {
    fn default() -> Self {
        Self {
            buf: Vec::new(),
            head: 0,
        }
    }
}

impl<T: Keyed> SlidingRun<T> {
    fn push(&mut self, x: T) {
        self.buf.push(x);
    }

    fn pop_front(&mut self) {
        debug_assert!(self.head < self.buf.len());
        self.head += 1;
        if self.head == self.buf.len() {
            self.buf.clear();
            self.head = 0;
        } else if self.head >= 64 && self.head * 2 >= self.buf.len() {
            self.buf.drain(..self.head);
            self.head = 0;
        }
    }

    fn as_slice(&self) -> &[T] {
        &self.buf[self.head..]
    }

    fn is_empty(&self) -> bool {
        self.head == self.buf.len()
    }
}

/// Edge indexes restricted to the retained window.
#[derive(Debug, Clone, Default)]
pub struct WindowIndex {
    edges: VecDeque<TemporalEdge>,
    out: Vec<SlidingRun<TemporalEdge>>,
    inn: Vec<SlidingRun<TemporalEdge>>,
    pairs: HashMap<(VertexId, VertexId), SlidingRun<EdgeKey>>,
}

impl WindowIndex {
    fn ensure_vertex(&mut self, v: VertexId) {
        let need = v as usize + 1;
        if self.out.len() < need {
            self.out.resize_with(need, SlidingRun::default);
            self.inn.resize_with(need, SlidingRun::default);
        }
    }

    fn insert(&mut self, e: TemporalEdge) {
        self.ensure_vertex(e.src.max(e.dst));
        self.out[e.src as usize].push(e);
        self.inn[e.dst as usize].push(e);
        self.pairs.entry((e.src, e.dst)).or_default().push(e.key());
        self.edges.push_back(e);
    }

    /// Drops every edge with `t < cutoff`.
    fn evict_before(&mut self, cutoff: Timestamp) {
        while let Some(e) = self.edges.front().copied() {
            if e.t >= cutoff {
                break;
            }
            self.edges.pop_front();
            self.out[e.src as usize].pop_front();
            self.inn[e.dst as usize].pop_front();
            let pair = self.pairs.get_mut(&(e.src, e.dst)).expect("pair present");
            pair.pop_front();
            if pair.is_empty() {
                self.pairs.remove(&(e.src, e.dst));
            }
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn oldest(&self) -> Option<&TemporalEdge> {
        self.edges.front()
    }

    pub fn contains(&self, e: &TemporalEdge) -> bool {
        self.out
            .get(e.src as usize)
            .is_some_and(|run| run.as_slice().binary_search_by_key(&e.key(), |x| x.key()).is_ok())
    }
}

impl TemporalIndex for WindowIndex {
    fn out_edges(&self, v: VertexId) -> &[TemporalEdge] {
        self.out.get(v as usize).map(SlidingRun::as_slice).unwrap_or(&[])
    }

    fn in_edges(&self, v: VertexId) -> &[TemporalEdge] {
        self.inn.get(v as usize).map(SlidingRun::as_slice).unwrap_or(&[])
    }

    fn pair_keys(&self, src: VertexId, dst: VertexId) -> &[EdgeKey] {
        self.pairs.get(&(src, dst)).map(SlidingRun::as_slice).unwrap_or(&[])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamAlgorithm {
    EdgeSampling,
    EdgeWedgeSampling,
}

enum Counter<'m> {
    Edge(Backtracker<'m>),
    Wedge(WedgeSampler<'m>),
}

pub struct StreamState<'m, S> {
    motif: &'m Motif,
    delta: Delta,
    cfg: SamplerConfigOf<S>,
    counter: Counter<'m>,
    window: WindowIndex,
    pending: VecDeque<TemporalEdge>,
    local_sum: u64,
    sampled: u64,
    next_seq: u64,
    last_t: Option<Timestamp>,
    peak_window: usize,
    started: Instant,
}

impl<'m, S: Scalar> StreamState<'m, S> {
    pub fn new(motif: &'m Motif, delta: Delta, cfg: SamplerConfigOf<S>, algorithm: StreamAlgorithm) -> Result<Self> {
        cfg.validate()?;
        let counter = match algorithm {
            StreamAlgorithm::EdgeSampling => Counter::Edge(Backtracker::new(motif)),
            StreamAlgorithm::EdgeWedgeSampling => Counter::Wedge(WedgeSampler::new(motif)?),
        };
        Ok(Self {
            motif,
            delta,
            cfg,
            counter,
            window: WindowIndex::default(),
            pending: VecDeque::new(),
            local_sum: 0,
            sampled: 0,
            next_seq: 0,
            last_t: None,
            peak_window: 0,
            started: Instant::now(),
        })
    }

    /// Ingests the next edge. Timestamps must be non-decreasing.
    pub fn push(&mut self, src: VertexId, dst: VertexId, t: Timestamp) -> Result<()> {
        if let Some(last) = self.last_t {
            if t < last {
                return Err(Error::StreamOrder {
                    record: self.next_seq,
                    t,
                    last,
                });
            }
        }
        let e = TemporalEdge {
            src,
            dst,
            t,
            seq: self.next_seq,
        };
        self.next_seq += 1;
        self.last_t = Some(t);
        self.window.insert(e);
        self.peak_window = self.peak_window.max(self.window.len());
        if edge_coin(self.cfg.seed, e.seq, self.cfg.p_f64()) {
            self.sampled += 1;
            self.pending.push_back(e);
        }
        let d = self.delta.get();
        while let Some(&p) = self.pending.front() {
            if p.t.saturating_add(d) >= t {
                break;
            }
            self.pending.pop_front();
            self.process(&p);
        }
        self.window.evict_before(t.saturating_sub(d.saturating_mul(2)));
        Ok(())
    }

    fn process(&mut self, e: &TemporalEdge) {
        let count = match &self.counter {
            Counter::Edge(bt) => bt.local_total(&self.window, e, self.delta),
            Counter::Wedge(ws) => ws.local_total(&self.window, e, self.delta, self.cfg.seed, self.cfg.q_f64()),
        };
        self.local_sum += count;
    }

    pub fn window(&self) -> &WindowIndex {
        &self.window
    }

    pub fn pending(&self) -> usize {
        self.pending.len()
    }

    /// Largest number of edges retained at once so far.
    pub fn peak_window(&self) -> usize {
        self.peak_window
    }

    pub fn edges_seen(&self) -> u64 {
        self.next_seq
    }

    pub fn finalize(mut self) -> EstimateOf<S> {
        while let Some(p) = self.pending.pop_front() {
            self.process(&p);
        }
        let (value, algorithm) = match self.counter {
            Counter::Edge(_) => (scale_es(self.local_sum, self.cfg.p, self.motif.len()), Algorithm::EdgeSampling),
            Counter::Wedge(_) => (scale_ews(self.local_sum, self.cfg.p, self.cfg.q), Algorithm::EdgeWedgeSampling),
        };
        EstimateOf {
            value,
            algorithm,
            sampled_edges: self.sampled,
            local_sum: self.local_sum,
            empty_sample: self.sampled == 0,
            config: self.cfg,
            elapsed: self.started.elapsed(),
        }
    }
}
