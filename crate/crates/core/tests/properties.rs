//! Randomized invariants.

use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use riffle_core::limits::LawDescriptor;
use riffle_core::sim::{
    play_optimal, play_two_color, play_word, word_to_deck, Deck, DistSummary, ShuffleWord,
};
use riffle_core::{ExactEngine, Pmf};

fn word(max: usize) -> impl Strategy<Value = ShuffleWord> {
    (0..=max).prop_flat_map(|n| any::<u64>().prop_map(move |b| ShuffleWord::from_bits(n, b)))
}

proptest! {
    #[test]
    fn traces_respect_bounds(w in word(60)) {
        let deck = word_to_deck(&w);
        prop_assert!(Deck::new(deck.cards().to_vec()).is_ok());
        let t = play_optimal(&deck);
        prop_assert_eq!(t, play_word(&w));
        let n = w.len();
        prop_assert!(t.run_length <= t.correct && t.correct <= n);
        prop_assert!(2 * t.luck_half <= n);
        prop_assert!(t.correct >= n.saturating_sub(1).div_ceil(2));
    }

    #[test]
    fn two_color_games_beat_the_majority(w in word(40)) {
        let (c, h) = play_two_color(&w);
        let a = w.cut();
        let b = w.len() - a;
        prop_assert!(c >= a.max(b));
        prop_assert!(h <= a.min(b));
    }

    #[test]
    fn exact_laws_are_normalised_and_symmetric(m1 in 0usize..25, m2 in 0usize..25) {
        let e = ExactEngine::default();
        let c = e.pgf_c(m1, m2).unwrap();
        prop_assert_eq!(c.total(), BigRational::one());
        prop_assert_eq!(&c, &e.pgf_c(m2, m1).unwrap());
        prop_assert!(c.min_value() >= m1.max(m2) as i64);
        let h = e.h_dist(m1, m2).unwrap();
        prop_assert_eq!(h.total(), BigRational::one());
        prop_assert_eq!(&h, &e.h_dist(m2, m1).unwrap());
    }

    #[test]
    fn pmf_serde_roundtrip(weights in prop::collection::vec(0u32..50, 1..12), offset in -5i64..5) {
        prop_assume!(weights.iter().any(|&w| w > 0));
        let w: Vec<_> = weights.iter().map(|&x| x.into()).collect();
        let p = Pmf::from_weights(offset, &w).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Pmf>(&s).unwrap(), p);
    }

    #[test]
    fn summary_counts_add_up(counts in prop::collection::vec(0u64..1000, 1..30)) {
        prop_assume!(counts.iter().any(|&c| c > 0));
        let s = DistSummary::from_counts(&counts);
        prop_assert_eq!(s.hist.values().sum::<u64>(), s.trials);
        prop_assert_eq!(s.trials, counts.iter().sum::<u64>());
        prop_assert!(s.var >= 0.0);
    }

    #[test]
    fn cdfs_are_monotone(x in 0.0f64..5.0, dx in 0.0f64..1.0, rho in 0.01f64..5.0, c in 0.01f64..5.0) {
        for law in [
            LawDescriptor::GeneralizedGamma,
            LawDescriptor::LinExp { rho },
            LawDescriptor::Levy { c },
            LawDescriptor::ReciprocalShiftedLevy { c },
            LawDescriptor::Arcsine,
        ] {
            let (a, b) = (law.cdf(x), law.cdf(x + dx));
            prop_assert!(a <= b && (0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
        }
    }
}
