use serde::{Deserialize, Serialize};

use super::word::{count_a, Deck, Letter, ShuffleWord};

/// Record of one game under the optimal strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GuessTrace {
    pub n: usize,
    pub correct: usize,
    /// Length of the correct prefix while guessing `1, 2, 3, ...`.
    pub run_length: usize,
    /// `k` of the first tied state `(k, k)`, `k >= 1`, met while guessing by
    /// majority; 0 when there is none.
    pub luck_half: usize,
}

/// Plays the optimal strategy on a deck.
///
/// While every guess has been right the guesser names the next label in
/// sequence. A miss at position `j` showing card `m` reveals the cut, leaving
/// the runs `j..m` and `m+1..=n`; from then on the guesser names the run with
/// more cards left, the lower run on a draw.
pub fn play_optimal(deck: &Deck) -> GuessTrace {
    let cards = deck.cards();
    let n = cards.len();
    let mut correct = 0;
    for (i, &m) in cards.iter().enumerate() {
        let j = i + 1;
        if m == j {
            correct += 1;
            continue;
        }
        let run_length = correct;
        let (mut low, mut high) = (m - j, n - m);
        let mut luck_half = 0;
        for &c in &cards[j..] {
            if low == high && luck_half == 0 {
                luck_half = low;
            }
            let guess_low = low >= high;
            let is_low = c < m;
            if guess_low == is_low {
                correct += 1;
            }
            if is_low {
                low -= 1;
            } else {
                high -= 1;
            }
        }
        return GuessTrace {
            n,
            correct,
            run_length,
            luck_half,
        };
    }
    GuessTrace {
        n,
        correct,
        run_length: correct,
        luck_half: 0,
    }
}

/// Same game as [`play_optimal`], played directly on the generating word.
pub fn play_word(w: &ShuffleWord) -> GuessTrace {
    play_letters(w.letters())
}

pub(crate) fn play_letters(letters: &[Letter]) -> GuessTrace {
    let n = letters.len();
    let k = count_a(letters);
    let (mut next_a, mut next_b) = (1, k + 1);
    for (i, &l) in letters.iter().enumerate() {
        let card = match l {
            Letter::A => {
                next_a += 1;
                next_a - 1
            }
            Letter::B => {
                next_b += 1;
                next_b - 1
            }
        };
        if card == i + 1 {
            continue;
        }
        // a miss is always the first B card, so i correct guesses so far
        let rest = &letters[i + 1..];
        let remaining_a = k + 1 - next_a;
        let remaining_b = n + 1 - next_b;
        let (c, luck_half) = two_color_letters(rest, remaining_a, remaining_b);
        return GuessTrace {
            n,
            correct: i + c,
            run_length: i,
            luck_half,
        };
    }
    GuessTrace {
        n,
        correct: n,
        run_length: n,
        luck_half: 0,
    }
}

/// Majority guessing on a word of `A`s and `B`s, `A` on a draw. Returns the
/// number of correct guesses and the first tied `k >= 1` (0 if none).
pub fn play_two_color(w: &ShuffleWord) -> (usize, usize) {
    let a = w.cut();
    two_color_letters(w.letters(), a, w.len() - a)
}

pub(crate) fn two_color_letters(letters: &[Letter], m1: usize, m2: usize) -> (usize, usize) {
    let (mut a, mut b) = (m1, m2);
    let mut correct = 0;
    let mut luck_half = 0;
    for &l in letters {
        if a == b && luck_half == 0 {
            luck_half = a;
        }
        let guess_a = a >= b;
        match l {
            Letter::A => {
                correct += usize::from(guess_a);
                a -= 1;
            }
            Letter::B => {
                correct += usize::from(!guess_a);
                b -= 1;
            }
        }
    }
    (correct, luck_half)
}
