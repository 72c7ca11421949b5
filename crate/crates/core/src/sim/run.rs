//! Chunked, seeded, parallel game loops.
//!
//! Trials are cut into fixed chunks of [`CHUNK_GAMES`] games. Chunk `i`
//! draws from substream `i` of a ChaCha8 generator keyed by the master seed,
//! and per-chunk histograms are merged by integer addition, so the result
//! depends only on `(trials, master_seed)` and not on the worker count.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::play::{play_letters, two_color_letters};
use super::summary::DistSummary;
use super::word::{fill_two_color, fill_uniform, Letter};
use crate::error::{domain, Error, Result};

pub const CHUNK_GAMES: u64 = 1 << 16;

pub type SimRng = ChaCha8Rng;

/// Generator for substream `stream` under `master_seed`.
pub fn stream_rng(master_seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Plays `trials` riffle games on `n` cards and summarises the number of
/// correct guesses `X_n` and the first pure-luck half-count `P_n`.
pub fn simulate(
    n: usize,
    trials: u64,
    master_seed: u64,
    workers: usize,
) -> Result<(DistSummary, DistSummary)> {
    run_chunks(
        trials,
        master_seed,
        workers,
        n + 1,
        n / 2 + 1,
        |rng, buf| {
            fill_uniform(buf, n, rng);
            let t = play_letters(buf);
            (t.correct, t.luck_half)
        },
    )
}

/// Plays `trials` two-color games on uniformly shuffled `m1`/`m2` decks and
/// summarises the correct count `C` and the first-tie half-count `H`.
pub fn simulate_two_color(
    m1: usize,
    m2: usize,
    trials: u64,
    master_seed: u64,
    workers: usize,
) -> Result<(DistSummary, DistSummary)> {
    let len = m1 + m2;
    run_chunks(
        trials,
        master_seed,
        workers,
        len + 1,
        len / 2 + 1,
        |rng, buf| {
            fill_two_color(buf, m1, m2, rng);
            two_color_letters(buf, m1, m2)
        },
    )
}

fn run_chunks<G>(
    trials: u64,
    master_seed: u64,
    workers: usize,
    len_first: usize,
    len_second: usize,
    game: G,
) -> Result<(DistSummary, DistSummary)>
where
    G: Fn(&mut SimRng, &mut Vec<Letter>) -> (usize, usize) + Sync,
{
    if trials == 0 {
        return domain("simulation needs at least one trial");
    }
    if workers == 0 {
        return domain("simulation needs at least one worker");
    }
    let chunks = trials.div_ceil(CHUNK_GAMES);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Numeric(format!("thread pool: {e}")))?;

    let per_chunk: Vec<(Vec<u64>, Vec<u64>)> = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|chunk| {
                let games = CHUNK_GAMES.min(trials - chunk * CHUNK_GAMES);
                let mut rng = stream_rng(master_seed, chunk);
                let mut buf = Vec::new();
                let mut first = vec![0u64; len_first];
                let mut second = vec![0u64; len_second];
                for _ in 0..games {
                    let (x, y) = game(&mut rng, &mut buf);
                    first[x] += 1;
                    second[y] += 1;
                }
                (first, second)
            })
            .collect()
    });

    let mut first = vec![0u64; len_first];
    let mut second = vec![0u64; len_second];
    for (f, s) in per_chunk {
        first.iter_mut().zip(f).for_each(|(a, b)| *a += b);
        second.iter_mut().zip(s).for_each(|(a, b)| *a += b);
    }
    Ok((
        DistSummary::from_counts(&first),
        DistSummary::from_counts(&second),
    ))
}
