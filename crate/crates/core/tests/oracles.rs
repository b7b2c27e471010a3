//! Randomised comparisons against brute-force definitions.

use std::collections::HashSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use buchstaber::gf2::{rank, Gf2Mat, Gf2Vec};
use buchstaber::realizability::{realizes_fast, realizes_naive};

/// Rank from the size of the span: `2^rank` distinct subset sums.
fn rank_by_span(bits: &[u32]) -> usize {
    let mut span: HashSet<u32> = HashSet::from([0]);
    for &b in bits {
        let shifted: Vec<u32> = span.iter().map(|s| s ^ b).collect();
        span.extend(shifted);
    }
    span.len().trailing_zeros() as usize
}

#[test]
fn rank_agrees_with_span_size() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..1000 {
        let k = rng.gen_range(2..=12u32);
        let n = rng.gen_range(0..=14usize);
        // sparse vectors make dependent sets common
        let bits: Vec<u32> = (0..n)
            .map(|_| {
                let v: u32 = rng.gen_range(0..1u32 << k);
                if rng.gen_bool(0.5) { v & rng.gen_range(0..1u32 << k) } else { v }
            })
            .collect();
        let vs: Vec<Gf2Vec> = bits.iter().map(|&b| Gf2Vec::new(k, b).unwrap()).collect();
        assert_eq!(rank(&vs).unwrap(), rank_by_span(&bits), "k={k} {bits:?}");
    }
}

#[test]
fn hyperplane_test_agrees_with_subsets() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut realizing = 0;
    for _ in 0..10_000 {
        let k = rng.gen_range(2..=5u32);
        let m = rng.gen_range(k as usize..=10);
        let p = rng.gen_range(k as usize..=m);
        let cols: Vec<u32> = (0..m).map(|_| rng.gen_range(0..1u32 << k)).collect();
        let a = Gf2Mat::from_bits(k, &cols).unwrap();
        let fast = realizes_fast(&a, p).unwrap();
        assert_eq!(fast, realizes_naive(&a, p).unwrap(), "k={k} p={p} {cols:?}");
        realizing += usize::from(fast);
    }
    // both outcomes must be exercised
    assert!(realizing > 500 && realizing < 9500, "{realizing}");
}
