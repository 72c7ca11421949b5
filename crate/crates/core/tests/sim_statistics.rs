//! Distributional checks of the samplers and the simulation driver.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use riffle_core::sim::{
    play_two_color, sample_two_color_word, sample_word, sample_word_gsr, simulate,
    simulate_two_color, stream_rng, ShuffleWord,
};
use riffle_core::ExactEngine;

#[derive(Deserialize)]
struct Thresholds {
    chi_square_min_p: f64,
    mean_small_n_sigmas: f64,
    mean_large_n_sigmas: f64,
    cell_sigmas: f64,
}

fn thresholds() -> Thresholds {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/stat_thresholds.toml");
    toml::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn word_index(w: &ShuffleWord) -> usize {
    w.to_string()
        .bytes()
        .enumerate()
        .map(|(i, c)| usize::from(c == b'b') << i)
        .sum()
}

/// p-value of Pearson's homogeneity test between two histograms.
fn homogeneity_p(a: &[u64], b: &[u64]) -> f64 {
    let (na, nb) = (a.iter().sum::<u64>() as f64, b.iter().sum::<u64>() as f64);
    let mut stat = 0.0;
    let mut cells = 0;
    for (&x, &y) in a.iter().zip(b) {
        let tot = (x + y) as f64;
        if tot == 0.0 {
            continue;
        }
        cells += 1;
        let (ea, eb) = (tot * na / (na + nb), tot * nb / (na + nb));
        stat += (x as f64 - ea).powi(2) / ea + (y as f64 - eb).powi(2) / eb;
    }
    1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(stat)
}

#[test]
fn uniform_words_are_uniform() {
    let th = thresholds();
    let mut rng = stream_rng(11, 0);
    let draws = 1_000_000u64;
    let mut counts = [0u64; 16];
    for _ in 0..draws {
        counts[word_index(&sample_word(4, &mut rng))] += 1;
    }
    let p = 1.0 / 16.0;
    let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
    for c in counts {
        assert!(
            (c as f64 - draws as f64 * p).abs() <= th.cell_sigmas * sigma,
            "{counts:?}"
        );
    }
    // the cut is Binomial(n, 1/2)
    let mut cuts = [0u64; 5];
    for (i, &c) in counts.iter().enumerate() {
        cuts[4 - (i as u32).count_ones() as usize] += c;
    }
    for (k, &c) in cuts.iter().enumerate() {
        let pk = [1.0, 4.0, 6.0, 4.0, 1.0][k] / 16.0;
        let sigma = (draws as f64 * pk * (1.0 - pk)).sqrt();
        assert!((c as f64 - draws as f64 * pk).abs() <= th.cell_sigmas * sigma);
    }
}

#[test]
fn two_stage_sampler_matches_uniform_words() {
    let th = thresholds();
    let draws = 1_000_000;
    let mut rng_a = stream_rng(5, 1);
    let mut rng_b = stream_rng(5, 2);
    let (mut a, mut b) = (vec![0u64; 64], vec![0u64; 64]);
    for _ in 0..draws {
        a[word_index(&sample_word_gsr(6, &mut rng_a))] += 1;
        b[word_index(&sample_word(6, &mut rng_b))] += 1;
    }
    let p = homogeneity_p(&a, &b);
    assert!(p > th.chi_square_min_p, "p = {p}");
}

/// Exact law of the two-stage sampler: a cut `k` with probability
/// `binom(n, k) / 2^n`, then each interleaving with probability
/// `prod (remaining in packet) / (remaining total)`.
#[test]
fn two_stage_tree_is_exactly_uniform() {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    for n in 0..=8usize {
        let mut law: HashMap<String, BigRational> = HashMap::new();
        for k in 0..=n {
            let binom = (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1));
            let cut_p = BigRational::new(binom, BigInt::from(1u64 << n));
            for bits in 0..1u64 << n {
                if bits.count_ones() as usize != n - k {
                    continue;
                }
                let w = ShuffleWord::from_bits(n, bits);
                let (mut a, mut b) = (k, n - k);
                let mut p = cut_p.clone();
                for l in w.to_string().bytes() {
                    let tot = BigInt::from(a + b);
                    if l == b'a' {
                        p *= BigRational::new(BigInt::from(a), tot);
                        a -= 1;
                    } else {
                        p *= BigRational::new(BigInt::from(b), tot);
                        b -= 1;
                    }
                }
                *law.entry(w.to_string())
                    .or_insert_with(|| BigRational::from_integer(0.into())) += p;
            }
        }
        assert_eq!(law.len(), 1 << n);
        let uniform = BigRational::new(BigInt::from(1), BigInt::from(1u64 << n));
        assert!(law.values().all(|p| *p == uniform), "n = {n}");
    }
}

#[test]
fn two_color_sampler_matches_exact_law() {
    let th = thresholds();
    let engine = ExactEngine::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let draws = 200_000u64;
    let (mut c_counts, mut h_counts) = (vec![0u64; 11], vec![0u64; 5]);
    for _ in 0..draws {
        let (c, h) = play_two_color(&sample_two_color_word(6, 4, &mut rng));
        c_counts[c] += 1;
        h_counts[h] += 1;
    }
    for (counts, pmf) in [
        (&c_counts, engine.pgf_c(6, 4).unwrap()),
        (&h_counts, engine.h_dist(6, 4).unwrap()),
    ] {
        let mut stat = 0.0;
        let mut cells = 0;
        for (v, &c) in counts.iter().enumerate() {
            let e = pmf.prob(v as i64).to_f64().unwrap() * draws as f64;
            if e > 0.0 {
                stat += (c as f64 - e).powi(2) / e;
                cells += 1;
            } else {
                assert_eq!(c, 0);
            }
        }
        let p = 1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(stat);
        assert!(p > th.chi_square_min_p, "p = {p}");
    }
    let (c, h) = simulate_two_color(6, 4, draws, 8, 2).unwrap();
    let exact_mean = engine.pgf_c(6, 4).unwrap().mean_f64();
    assert!((c.mean - exact_mean).abs() <= th.mean_small_n_sigmas * c.std_error());
    assert_eq!(h.trials, draws);
}

#[test]
fn mean_of_two_card_game() {
    let th = thresholds();
    let (x, p) = simulate(2, 1_000_000, 17, 4).unwrap();
    assert!(
        (x.mean - 1.75).abs() <= th.mean_small_n_sigmas * x.std_error(),
        "mean {}",
        x.mean
    );
    // two cards never leave a tie after the first miss
    assert_eq!(p.hist.keys().copied().collect::<Vec<_>>(), vec![0]);
}

#[test]
fn mean_at_thousand_cards() {
    let th = thresholds();
    let n = 1000.0f64;
    let target = n / 2.0 + (2.0 * n / std::f64::consts::PI).sqrt() - 0.5;
    let workers = std::thread::available_parallelism().map_or(1, |w| w.get());
    let (x, _) = simulate(1000, 100_000, 99, workers).unwrap();
    assert!((target - 524.73).abs() < 0.01);
    assert!(
        (x.mean - target).abs() <= th.mean_large_n_sigmas * x.std_error(),
        "mean {}",
        x.mean
    );
}

#[test]
fn simulated_laws_match_exact_laws() {
    let th = thresholds();
    let engine = ExactEngine::default();
    let n = 12;
    let trials = 300_000;
    let (x, p) = simulate(n, trials, 4, 3).unwrap();
    for (summary, pmf) in [
        (&x, engine.pgf_x(n).unwrap()),
        (&p, engine.p_dist(n).unwrap()),
    ] {
        let mut stat = 0.0;
        let mut cells = 0;
        for v in pmf.min_value()..=pmf.max_value() {
            let e = pmf.prob(v).to_f64().unwrap() * trials as f64;
            if e == 0.0 {
                continue;
            }
            let o = *summary.hist.get(&v).unwrap_or(&0) as f64;
            stat += (o - e).powi(2) / e;
            cells += 1;
        }
        let pv = 1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(stat);
        assert!(pv > th.chi_square_min_p, "p = {pv}");
    }
}

#[test]
fn repeat_runs_are_identical() {
    let a = simulate(50, 70_000, 123, 3).unwrap();
    let b = simulate(50, 70_000, 123, 5).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.0, simulate(50, 70_000, 124, 3).unwrap().0);
}
