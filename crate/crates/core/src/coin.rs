//! Counter-based Bernoulli draws.
//!
//! Each decision is a pure function of the seed and the identity of the
//! thing being sampled, so results do not depend on visiting order or on
//! how work is split across threads.

const EDGE_DOMAIN: u64 = 0x6a09_e667_f3bc_c908;
const WEDGE_DOMAIN: u64 = 0xbb67_ae85_84ca_a73b;

/// SplitMix64 finalizer.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[inline]
fn absorb(state: u64, word: u64) -> u64 {
    mix(state ^ mix(word.wrapping_add(0x9e37_79b9_7f4a_7c15)))
}

/// Uniform in `[0, 1)` with 53 bits of precision.
#[inline]
fn unit(h: u64) -> f64 {
    (h >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[inline]
pub fn edge_hash(seed: u64, seq: u64) -> u64 {
    absorb(absorb(EDGE_DOMAIN, seed), seq)
}

#[inline]
pub fn wedge_hash(seed: u64, anchor_seq: u64, position: usize, partner_seq: u64) -> u64 {
    let s = absorb(absorb(WEDGE_DOMAIN, seed), anchor_seq);
    absorb(absorb(s, position as u64), partner_seq)
}

/// Whether the edge with input ordinal `seq` is sampled at probability `p`.
#[inline]
pub fn edge_coin(seed: u64, seq: u64, p: f64) -> bool {
    p >= 1.0 || unit(edge_hash(seed, seq)) < p
}

/// Whether the wedge `(anchor, position, partner)` is sampled at probability `q`.
#[inline]
pub fn wedge_coin(seed: u64, anchor_seq: u64, position: usize, partner_seq: u64, q: f64) -> bool {
    q >= 1.0 || unit(wedge_hash(seed, anchor_seq, position, partner_seq)) < q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_is_in_range() {
        assert_eq!(unit(0), 0.0);
        assert!(unit(u64::MAX) < 1.0);
    }

    #[test]
    fn streams_differ_by_seed_and_domain() {
        assert_ne!(edge_hash(0, 1), edge_hash(1, 1));
        assert_ne!(edge_hash(0, 1), edge_hash(0, 2));
        assert_ne!(edge_hash(3, 4), wedge_hash(3, 4, 0, 0));
        assert_ne!(wedge_hash(1, 2, 0, 5), wedge_hash(1, 2, 1, 5));
    }

    #[test]
    fn coin_frequency_tracks_p() {
        let hits = (0..200_000u64).filter(|&i| edge_coin(42, i, 0.3)).count();
        // Binomial sd is about 205.
        assert!((hits as i64 - 60_000).abs() < 2_000, "{hits}");
        let hits = (0..200_000u64).filter(|&i| wedge_coin(42, 7, 1, i, 0.5)).count();
        assert!((hits as i64 - 100_000).abs() < 2_500, "{hits}");
    }
}
