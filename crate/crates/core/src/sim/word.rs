use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{domain, Error, Result};

/// Packet of origin: `A` is the bottom packet `1..=k`, `B` the top packet
/// `k+1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

/// Length-`n` word over `{A, B}`; one word per equally likely riffle.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShuffleWord(Vec<Letter>);

impl ShuffleWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        ShuffleWord(letters)
    }

    /// Word of length `n` whose `i`-th letter is `B` iff bit `i` of `bits`
    /// is set. Enumerating `bits` over `0..2^n` lists every word once.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        ShuffleWord(
            (0..n)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        Letter::B
                    } else {
                        Letter::A
                    }
                })
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Size of the bottom packet, i.e. the number of `A`s.
    pub fn cut(&self) -> usize {
        count_a(&self.0)
    }
}

pub(crate) fn count_a(letters: &[Letter]) -> usize {
    letters.iter().filter(|&&l| l == Letter::A).count()
}

impl fmt::Display for ShuffleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::A => "a",
                Letter::B => "b",
            })?;
        }
        Ok(())
    }
}

impl FromStr for ShuffleWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                'a' | 'A' => Ok(Letter::A),
                'b' | 'B' => Ok(Letter::B),
                other => domain(format!("invalid letter {other:?} in shuffle word")),
            })
            .collect::<Result<Vec<_>>>()
            .map(ShuffleWord)
    }
}

/// A deck reachable by one riffle: an interleaving of `1..=k` and
/// `k+1..=n` for some cut `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Deck(Vec<usize>);

impl Deck {
    /// Validates that `cards` is a permutation of `1..=n` made of at most two
    /// interleaved increasing runs of consecutive labels.
    pub fn new(cards: Vec<usize>) -> Result<Self> {
        let n = cards.len();
        let mut pos = vec![usize::MAX; n + 1];
        for (i, &c) in cards.iter().enumerate() {
            if c == 0 || c > n || pos[c] != usize::MAX {
                return domain(format!("{cards:?} is not a permutation of 1..={n}"));
            }
            pos[c] = i;
        }
        // labels 1..=k and k+1..=n each appear in order iff the positions
        // have at most one descent
        let descents = (1..n).filter(|&c| pos[c] > pos[c + 1]).count();
        if descents > 1 {
            return domain(format!("{cards:?} is not the result of a single riffle"));
        }
        Ok(Deck(cards))
    }

    pub fn cards(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &c)| c == i + 1)
    }
}

/// `A`s become `1..=k` and `B`s become `k+1..=n`, each in order.
pub fn word_to_deck(w: &ShuffleWord) -> Deck {
    let mut next_a = 1;
    let mut next_b = w.cut() + 1;
    let cards = w
        .letters()
        .iter()
        .map(|l| {
            let slot = match l {
                Letter::A => &mut next_a,
                Letter::B => &mut next_b,
            };
            *slot += 1;
            *slot - 1
        })
        .collect();
    Deck(cards)
}

/// Uniform word: `n` independent fair letters.
pub fn sample_word<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ShuffleWord {
    let mut buf = Vec::with_capacity(n);
    fill_uniform(&mut buf, n, rng);
    ShuffleWord(buf)
}

pub(crate) fn fill_uniform<R: Rng + ?Sized>(buf: &mut Vec<Letter>, n: usize, rng: &mut R) {
    buf.clear();
    let mut bits = 0u64;
    for i in 0..n {
        if i % 64 == 0 {
            bits = rng.random();
        }
        buf.push(if bits & 1 == 0 { Letter::A } else { Letter::B });
        bits >>= 1;
    }
}

/// Two-stage riffle: a Binomial(n, 1/2) cut, then cards dropped from the
/// packets with probability proportional to their remaining sizes.
pub fn sample_word_gsr<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ShuffleWord {
    let mut coins = Vec::with_capacity(n);
    fill_uniform(&mut coins, n, rng);
    let k = count_a(&coins);
    sample_two_color_word(k, n - k, rng)
}

/// Uniformly random arrangement of `m1` `A`s and `m2` `B`s, drawn as an urn
/// without replacement.
pub fn sample_two_color_word<R: Rng + ?Sized>(m1: usize, m2: usize, rng: &mut R) -> ShuffleWord {
    let mut buf = Vec::with_capacity(m1 + m2);
    fill_two_color(&mut buf, m1, m2, rng);
    ShuffleWord(buf)
}

pub(crate) fn fill_two_color<R: Rng + ?Sized>(
    buf: &mut Vec<Letter>,
    m1: usize,
    m2: usize,
    rng: &mut R,
) {
    buf.clear();
    let (mut a, mut b) = (m1, m2);
    while a + b > 0 {
        if rng.random_range(0..a + b) < a {
            buf.push(Letter::A);
            a -= 1;
        } else {
            buf.push(Letter::B);
            b -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    #[test]
    fn word_parsing_and_decks() {
        let w: ShuffleWord = "ba".parse().unwrap();
        assert_eq!(word_to_deck(&w).cards(), &[2, 1]);
        assert!("abc".parse::<ShuffleWord>().is_err());
        for k in 0..=6 {
            let w: ShuffleWord = format!("{}{}", "a".repeat(k), "b".repeat(6 - k))
                .parse()
                .unwrap();
            assert!(word_to_deck(&w).is_identity());
        }
        assert_eq!(ShuffleWord::from_bits(3, 0b110).to_string(), "abb");
    }

    #[test]
    fn deck_validation() {
        assert!(Deck::new(vec![1, 4, 2, 5, 3]).is_ok());
        assert!(Deck::new(vec![3, 2, 1]).is_err());
        assert!(Deck::new(vec![1, 1, 2]).is_err());
        assert!(Deck::new(vec![0, 1]).is_err());
        assert!(Deck::new(vec![]).is_ok());
    }

    #[test]
    fn distinct_decks_and_identity_multiplicity() {
        for n in 1..=8usize {
            let mut mult: HashMap<Vec<usize>, usize> = HashMap::new();
            for bits in 0..1u64 << n {
                let d = word_to_deck(&ShuffleWord::from_bits(n, bits));
                assert!(Deck::new(d.cards().to_vec()).is_ok());
                *mult.entry(d.cards().to_vec()).or_default() += 1;
            }
            assert_eq!(mult.len(), (1 << n) - n);
            let id: Vec<usize> = (1..=n).collect();
            assert_eq!(mult[&id], n + 1);
            assert!(mult.iter().filter(|(d, _)| **d != id).all(|(_, &m)| m == 1));
        }
    }

    #[test]
    fn sampled_lengths_and_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        assert!(sample_word(0, &mut rng).is_empty());
        assert_eq!(sample_word(130, &mut rng).len(), 130);
        assert_eq!(sample_word_gsr(9, &mut rng).len(), 9);
        let w = sample_two_color_word(5, 3, &mut rng);
        assert_eq!((w.cut(), w.len()), (5, 8));
    }
}
