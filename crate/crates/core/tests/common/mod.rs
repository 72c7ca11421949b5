//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigUint;
use riffle_core::sim::{play_optimal, word_to_deck, ShuffleWord};
use riffle_core::RationalPoly;

/// Histograms over all `2^n` words of one riffle.
pub struct Enumeration {
    pub n: usize,
    /// `correct[k]`: words on which the optimal guesser is right `k` times.
    pub correct: Vec<u64>,
    /// `luck[k]`: words whose first pure-luck guess comes at `(k, k)`.
    pub luck: Vec<u64>,
    /// `top[m]`: words that put card `m` on top.
    pub top: Vec<u64>,
    pub min_correct: usize,
}

pub fn enumerate(n: usize) -> Enumeration {
    let mut e = Enumeration {
        n,
        correct: vec![0; n + 1],
        luck: vec![0; n / 2 + 1],
        top: vec![0; n + 1],
        min_correct: n,
    };
    for bits in 0..1u64 << n {
        let deck = word_to_deck(&ShuffleWord::from_bits(n, bits));
        let t = play_optimal(&deck);
        e.correct[t.correct] += 1;
        e.luck[t.luck_half] += 1;
        if let Some(&m) = deck.cards().first() {
            e.top[m] += 1;
        }
        e.min_correct = e.min_correct.min(t.correct);
    }
    e
}

pub fn counts_poly(counts: &[u64]) -> RationalPoly {
    RationalPoly::from_biguints(&counts.iter().map(|&c| BigUint::from(c)).collect::<Vec<_>>())
}

pub fn biguints(counts: &[u64]) -> Vec<BigUint> {
    counts.iter().map(|&c| BigUint::from(c)).collect()
}
