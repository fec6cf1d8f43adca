use ddsynth::ltl::Ltl;
use ddsynth::random;
use ddsynth::translate::ltl_to_aca;
use ddsynth::{parse_ltl, Alphabet, LassoWord};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn props() -> Alphabet {
    Alphabet::parse_list("a b c").unwrap()
}

/// Direct semantics on a lasso: every position at or after the loop start has an
/// equivalent one within the next loop length, so quantifiers over the future only
/// need a window of that size.
fn sat(f: &Ltl, w: &LassoWord, i: usize) -> bool {
    let i = w.fold(i);
    let horizon = i.max(w.prefix_len()) + w.cycle_len();
    match f {
        Ltl::True => true,
        Ltl::False => false,
        Ltl::Atom(a) => w.letter_at(i).contains(w.alphabet().index_of(a).unwrap()),
        Ltl::Not(g) => !sat(g, w, i),
        Ltl::And(g, h) => sat(g, w, i) && sat(h, w, i),
        Ltl::Or(g, h) => sat(g, w, i) || sat(h, w, i),
        Ltl::Next(g) => sat(g, w, i + 1),
        Ltl::Until(g, h) => (i..horizon).any(|j| sat(h, w, j) && (i..j).all(|k| sat(g, w, k))),
        Ltl::Release(g, h) => !(i..horizon).any(|j| !sat(h, w, j) && (i..j).all(|k| !sat(g, w, k))),
        Ltl::Eventually(g) => (i..horizon).any(|j| sat(g, w, j)),
        Ltl::Globally(g) => (i..horizon).all(|j| sat(g, w, j)),
    }
}

fn case(seed: u64, size: usize) -> (Ltl, Vec<LassoWord>, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random::formula(&mut rng, &props(), size);
    let words = (0..20).map(|_| random::lasso(&mut rng, &props(), 3, 3)).collect();
    (f, words, rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn negation_flips_evaluation(seed in any::<u64>()) {
        let (f, words, _) = case(seed, 8);
        let neg = f.negate_nnf();
        prop_assert!(neg.is_nnf());
        for w in &words {
            prop_assert_ne!(f.eval_lasso(w).unwrap(), neg.eval_lasso(w).unwrap(), "{} on {}", f, w);
        }
    }

    #[test]
    fn evaluation_matches_direct_semantics(seed in any::<u64>()) {
        let (f, words, _) = case(seed, 7);
        for w in &words {
            prop_assert_eq!(f.eval_lasso(w).unwrap(), sat(&f, w, 0), "{} on {}", f, w);
        }
    }

    #[test]
    fn printing_and_parsing_round_trip(seed in any::<u64>()) {
        let (f, _, _) = case(seed, 10);
        let back = parse_ltl(&f.to_string(), &props()).unwrap();
        prop_assert_eq!(back.normalize(), f.normalize());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn translation_agrees_with_evaluation(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random::nnf_formula(&mut rng, &props(), 8);
        let a = ltl_to_aca(&f, &props()).unwrap();
        prop_assert!(a.len() <= 3 * f.size(), "{} states for {}", a.len(), f);
        for _ in 0..20 {
            let w = random::lasso(&mut rng, &props(), 3, 3);
            prop_assert_eq!(a.accepts(&w).unwrap().0, f.eval_lasso(&w).unwrap(), "{} on {}", f, w);
        }
    }
}
