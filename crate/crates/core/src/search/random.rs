//! Seeded hyperedge-boundary systems for search corpora.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::{build_system, ConnectivitySystem, Descriptor};
use crate::error::{Error, Result};
use crate::mask::MAX_GROUND;

/// A hyperedge-boundary system with `hyperedge_count` hyperedges of arity
/// `2..=max_arity`, elements drawn without replacement. Same seed, same system.
pub fn generate_random_system(
    n: usize,
    hyperedge_count: usize,
    max_arity: usize,
    seed: u64,
) -> Result<ConnectivitySystem> {
    if n == 0 || n > MAX_GROUND {
        return Err(Error::InvalidParameter(format!("ground-set size {} not in 1..={}", n, MAX_GROUND)));
    }
    if hyperedge_count > 0 && (n < 2 || max_arity < 2) {
        return Err(Error::InvalidParameter(
            "hyperedges need arity >= 2 and a ground set of at least 2 elements".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let top = max_arity.min(n);
    let hyperedges = (0..hyperedge_count)
        .map(|_| {
            let arity = rng.gen_range(2..=top);
            let mut h = sample(&mut rng, n, arity).into_vec();
            h.sort_unstable();
            h
        })
        .collect();
    Ok(build_system(Descriptor::HyperedgeBoundary { n, hyperedges })?
        .with_label(format!("random-n{}-h{}-r{}-s{}", n, hyperedge_count, max_arity, seed)))
}

/// `count` systems on `n` elements; system `i` uses seed `seed + i`.
pub fn random_corpus(
    n: usize,
    count: usize,
    hyperedge_count: usize,
    max_arity: usize,
    seed: u64,
) -> Result<Vec<ConnectivitySystem>> {
    (0..count as u64)
        .map(|i| generate_random_system(n, hyperedge_count, max_arity, seed.wrapping_add(i)))
        .collect()
}
