#![allow(dead_code)]

use discdisp::{from_counts, make_distribution, Distribution};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Largest mass of a closed window `[x_i, x_i + eps]`, by enumerating all
/// left ends. Distances get the same 1e-9 relative slack as the library.
pub fn brute_q(points: &[f64], masses: &[f64], eps: f64) -> f64 {
    let mut best: f64 = 0.0;
    for &left in points {
        let s: f64 = points
            .iter()
            .zip(masses)
            .filter(|(&x, _)| x >= left && x - left <= eps + 1e-9 * eps)
            .map(|(_, &m)| m)
            .sum();
        best = best.max(s);
    }
    best
}

pub fn brute_q_of(d: &Distribution, eps: f64) -> f64 {
    brute_q(d.points(), d.masses(), eps)
}

/// All pairwise distances of the support, sorted and deduplicated.
pub fn pair_distances(d: &Distribution) -> Vec<f64> {
    let p = d.points();
    let mut out = vec![0.0];
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            out.push(p[j] - p[i]);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// `k` distinct integers from `0..span`.
pub fn distinct_ints(rng: &mut ChaCha8Rng, k: usize, span: i64) -> Vec<f64> {
    let mut all: Vec<i64> = (0..span).collect();
    all.shuffle(rng);
    let mut v: Vec<f64> = all.into_iter().take(k).map(|x| x as f64).collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn rand_counts(rng: &mut ChaCha8Rng, k: usize, max: u64) -> Vec<u64> {
    (0..k).map(|_| rng.gen_range(1..=max)).collect()
}

/// Count-backed distribution with up to `max_len` points on `0..span`.
pub fn rand_count_dist(rng: &mut ChaCha8Rng, max_len: usize, span: i64) -> Distribution {
    let k = rng.gen_range(1..=max_len.min(span as usize));
    let pts = distinct_ints(rng, k, span);
    let counts = rand_counts(rng, k, 20);
    let rows: Vec<(f64, u64)> = pts.into_iter().zip(counts).collect();
    from_counts(&rows).unwrap()
}

/// Float-mass distribution on arbitrary real points.
pub fn rand_float_dist(rng: &mut ChaCha8Rng, max_len: usize) -> Distribution {
    let k = rng.gen_range(1..=max_len);
    let mut pts: Vec<f64> = (0..k).map(|_| (rng.gen_range(-50.0..50.0f64) * 1000.0).round() / 1000.0).collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    let raw: Vec<f64> = pts.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let masses: Vec<f64> = raw.iter().map(|m| m / total).collect();
    make_distribution(&pts, &masses).unwrap()
}

/// Either backend, support size at most `max_len`.
pub fn rand_dist(rng: &mut ChaCha8Rng, max_len: usize) -> Distribution {
    match rng.gen_range(0..3) {
        0 => rand_float_dist(rng, max_len),
        1 => rand_count_dist(rng, max_len, 12),
        _ => rand_count_dist(rng, max_len, 30),
    }
}

/// Same masses, every gap multiplied by a factor in `[1, 3]`.
pub fn stretched(rng: &mut ChaCha8Rng, d: &Distribution) -> Distribution {
    let p = d.points();
    let mut pts = vec![p[0]];
    for w in p.windows(2) {
        let f = if rng.gen_bool(0.3) { 1.0 } else { rng.gen_range(1.0..3.0) };
        let next = pts.last().unwrap() + (w[1] - w[0]) * f;
        pts.push(next);
    }
    match d.counts() {
        Some(c) => from_counts(&pts.iter().copied().zip(c.iter().copied()).collect::<Vec<_>>()).unwrap(),
        None => make_distribution(&pts, d.masses()).unwrap(),
    }
}

/// Counts on `0..k` rising to a random mode and falling after it.
pub fn unimodal_counts(rng: &mut ChaCha8Rng, k: usize) -> Vec<u64> {
    let mut c = rand_counts(rng, k, 30);
    let mode = rng.gen_range(0..k);
    let (left, right) = c.split_at_mut(mode);
    left.sort_unstable();
    right.sort_unstable_by(|a, b| b.cmp(a));
    // the right part starts at the mode, so it must dominate the left part
    if let (Some(&l), Some(r0)) = (left.last(), right.first_mut()) {
        *r0 = (*r0).max(l);
    }
    c
}

pub fn lattice_dist(counts: &[u64], origin: i64) -> Distribution {
    let rows: Vec<(f64, u64)> = counts.iter().enumerate().map(|(i, &c)| ((origin + i as i64) as f64, c)).collect();
    from_counts(&rows).unwrap()
}
