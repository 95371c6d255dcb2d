//! Fixtures shared by the criterion benches.

use sfasim_core::{complete, independent_bits, random_sfa, Algebra, Sfa, DEFAULT_DENSITY};

/// Completed random automata with `n` states over a 64-symbol interval algebra.
pub fn random_complete(n: usize, count: u64) -> Vec<Sfa> {
    let alg = Algebra::interval(0, 63).expect("valid bounds");
    (0..count)
        .map(|seed| complete(&random_sfa(seed, n, DEFAULT_DENSITY, &alg, 6)).sfa)
        .collect()
}

/// The completed independent-bit automaton over `bits` variables.
pub fn bits_complete(bits: u32) -> Sfa {
    complete(&independent_bits(bits)).sfa
}
