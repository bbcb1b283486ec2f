//! Edge sampling estimator and shared sampler plumbing.
//!
//! Every edge is kept independently with probability `p`; the exact local
//! counts of the kept edges are summed and the sum is scaled by `1 / (p l)`.
//! Local counts are integers, so the sum is formed exactly and the scalar
//! type only enters at the final division.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::backtrack::Backtracker;
use crate::coin::edge_coin;
use crate::error::{Error, Result};
use crate::graph::{Delta, TemporalGraph};
use crate::motif::Motif;
use crate::parallel::with_workers;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Exact,
    EdgeSampling,
    EdgeWedgeSampling,
}

impl Algorithm {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Exact => "exact",
            Self::EdgeSampling => "es",
            Self::EdgeWedgeSampling => "ews",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplerConfigOf<S> {
    /// Edge sampling probability.
    pub p: S,
    /// Wedge sampling probability; only read by edge-wedge sampling.
    pub q: S,
    pub seed: u64,
    /// Thread cap; `None` uses the global pool.
    pub workers: Option<usize>,
}

impl<S: Scalar> SamplerConfigOf<S> {
    pub fn new(p: S, q: S, seed: u64) -> Result<Self> {
        let cfg = Self {
            p,
            q,
            seed,
            workers: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Full sample: `p = q = 1`.
    pub fn exhaustive() -> Self {
        Self {
            p: S::one(),
            q: S::one(),
            seed: 0,
            workers: None,
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn with_workers(self, workers: Option<usize>) -> Self {
        Self { workers, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("p", self.p)?;
        check_probability("q", self.q)
    }

    pub fn p_f64(&self) -> f64 {
        self.p.approx_f64()
    }

    pub fn q_f64(&self) -> f64 {
        self.q.approx_f64()
    }
}

fn check_probability<S: Scalar>(name: &'static str, x: S) -> Result<()> {
    if x > S::zero() && x <= S::one() {
        Ok(())
    } else {
        Err(Error::InvalidProbability {
            name,
            value: x.approx_f64(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateOf<S> {
    pub value: S,
    pub algorithm: Algorithm,
    pub sampled_edges: u64,
    /// Unscaled integer sum behind `value`.
    pub local_sum: u64,
    /// True when no edge was sampled; `value` is then zero.
    pub empty_sample: bool,
    pub config: SamplerConfigOf<S>,
    pub elapsed: Duration,
}

/// Per-edge keep decisions for input ordinals `0..m`.
pub fn sample_mask(m: usize, p: f64, seed: u64) -> Result<Vec<bool>> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::InvalidProbability { name: "p", value: p });
    }
    Ok((0..m as u64).map(|seq| edge_coin(seed, seq, p)).collect())
}

/// `sum / (p * l)`.
pub fn scale_es<S: Scalar>(local_sum: u64, p: S, l: usize) -> S {
    S::from_count(local_sum) / (p * S::from_count(l as u64))
}

/// Estimate from already computed local counts of the sampled edges.
pub fn estimate_from_local_counts<S, I>(counts: I, p: S, l: usize) -> S
where
    S: Scalar,
    I: IntoIterator<Item = u64>,
{
    scale_es(counts.into_iter().sum(), p, l)
}

/// Sampling probability giving an (eps, gamma)-estimator under Chebyshev.
pub fn plan_probability(eps: f64, gamma: f64) -> Result<f64> {
    for (name, v) in [("eps", eps), ("gamma", gamma)] {
        if !(v > 0.0 && v < 1.0) {
            return Err(Error::InvalidProbability { name, value: v });
        }
    }
    Ok(1.0 / (1.0 + gamma * eps * eps))
}

/// Chebyshev upper bound on `Pr[|estimate - C| >= eps C]` for effective
/// sampling rate `rate` (`p` for edge sampling, `p q` for edge-wedge).
pub fn chebyshev_bound(rate: f64, eps: f64) -> f64 {
    (1.0 - rate) / (rate * eps * eps)
}

/// Relative error at which the Chebyshev bound equals `gamma`.
pub fn chebyshev_epsilon(rate: f64, gamma: f64) -> f64 {
    ((1.0 - rate) / (rate * gamma)).sqrt()
}

/// Edge sampling estimate of the number of delta-instances.
pub fn estimate_es<S: Scalar>(
    g: &TemporalGraph,
    motif: &Motif,
    delta: Delta,
    cfg: &SamplerConfigOf<S>,
) -> Result<EstimateOf<S>> {
    cfg.validate()?;
    let start = Instant::now();
    let bt = Backtracker::new(motif);
    let p = cfg.p_f64();
    let seed = cfg.seed;
    let (sampled, local_sum) = with_workers(cfg.workers, || {
        g.edges()
            .par_iter()
            .filter(|e| edge_coin(seed, e.seq, p))
            .map(|e| (1u64, bt.local_total(g, e, delta)))
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
    });
    Ok(EstimateOf {
        value: scale_es(local_sum, cfg.p, motif.len()),
        algorithm: Algorithm::EdgeSampling,
        sampled_edges: sampled,
        local_sum,
        empty_sample: sampled == 0,
        config: *cfg,
        elapsed: start.elapsed(),
    })
}
