#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use temporal_motif::{MatchingOrder, Motif, TemporalGraph};

/// Random connected motif with `l` edges on at most five labels. Each new
/// edge touches an existing label and either introduces a fresh one or joins
/// two existing ones.
pub fn random_motif(rng: &mut ChaCha8Rng, l: usize) -> Motif {
    let mut k = 2;
    let mut edges = vec![(0, 1)];
    while edges.len() < l {
        let a = rng.random_range(0..k);
        let b = if k < 5 && rng.random_bool(0.5) {
            k += 1;
            k - 1
        } else {
            let mut b = rng.random_range(0..k);
            while b == a {
                b = rng.random_range(0..k);
            }
            b
        };
        edges.push(if rng.random_bool(0.5) { (a, b) } else { (b, a) });
    }
    Motif::new(edges).unwrap()
}

fn touches(motif: &Motif, placed: &[usize], p: usize) -> bool {
    let (a, b) = motif.edge(p);
    placed.iter().any(|&o| {
        let (x, y) = motif.edge(o);
        a == x || a == y || b == x || b == y
    })
}

/// Uniformly random connectivity-valid order anchored at `anchor`.
pub fn random_order(rng: &mut ChaCha8Rng, motif: &Motif, anchor: usize) -> MatchingOrder {
    let l = motif.len();
    let mut order = vec![anchor];
    while order.len() < l {
        let eligible: Vec<usize> = (0..l).filter(|p| !order.contains(p) && touches(motif, &order, *p)).collect();
        order.push(eligible[rng.random_range(0..eligible.len())]);
    }
    MatchingOrder::new(motif, order).unwrap()
}

/// Every connectivity-valid order anchored at `anchor`.
pub fn all_orders(motif: &Motif, anchor: usize) -> Vec<MatchingOrder> {
    fn extend(motif: &Motif, prefix: &mut Vec<usize>, out: &mut Vec<MatchingOrder>) {
        if prefix.len() == motif.len() {
            out.push(MatchingOrder::new(motif, prefix.clone()).unwrap());
            return;
        }
        for p in 0..motif.len() {
            if !prefix.contains(&p) && touches(motif, prefix, p) {
                prefix.push(p);
                extend(motif, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(motif, &mut vec![anchor], &mut out);
    out
}

pub fn replay_sorted(g: &TemporalGraph) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
    g.edges().iter().map(|e| (e.src, e.dst, e.t))
}
