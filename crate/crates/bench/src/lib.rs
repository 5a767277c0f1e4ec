//! Fixtures shared by the `kernels` benchmarks.

use kzdyn_core::numeric::SelbergParams;
use kzdyn_core::uea::Gen;

/// A word in the lowering generators of `sl_n` that visits every root,
/// repeated `reps` times; straightening it exercises the whole rewrite table.
pub fn lowering_word(n: usize, reps: usize) -> Vec<Gen> {
    let once: Vec<Gen> = (1..n).flat_map(|k| (k + 1..=n).map(move |l| Gen::new(l, k))).collect();
    once.iter().cycle().take(once.len() * reps).copied().collect()
}

/// Selberg parameters of growing dimension with integrable exponents.
pub fn selberg_points() -> Vec<SelbergParams> {
    vec![SelbergParams::new(1, 0.7, 1.3, 0.4), SelbergParams::new(2, 0.6, 0.9, 0.35), SelbergParams::new(3, 0.9, 1.1, 0.3)]
}
