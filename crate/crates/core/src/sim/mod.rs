//! Monte Carlo engine for the one-time riffle shuffle guessing game.
//!
//! Shuffles are represented by their generating `{A, B}` word; the guesser
//! works on packet counts once a miss reveals the cut, so a game costs
//! `O(n)` with no searching of the deck.

mod play;
mod run;
mod summary;
mod word;

pub use play::{play_optimal, play_two_color, play_word, GuessTrace};
pub use run::{simulate, simulate_two_color, stream_rng, SimRng, CHUNK_GAMES};
pub use summary::DistSummary;
pub use word::{
    sample_two_color_word, sample_word, sample_word_gsr, word_to_deck, Deck, Letter, ShuffleWord,
};
