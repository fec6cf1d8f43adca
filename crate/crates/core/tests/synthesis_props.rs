use ddsynth::fixtures;
use ddsynth::moore::enumerate_machines;
use ddsynth::random;
use ddsynth::synthesis::{bounded_synthesize, uca_model_check};
use ddsynth::{Alphabet, LassoWord, Moore};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn props(s: &str) -> Alphabet {
    Alphabet::parse_list(s).unwrap()
}

fn same_word(a: &LassoWord, b: &LassoWord) -> bool {
    let horizon = a.len() + b.len() + a.cycle_len() * b.cycle_len();
    (0..horizon).all(|j| a.letter_at(j) == b.letter_at(j))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn synthesized_machines_are_accepted_on_sampled_inputs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let u = random::uca(&mut rng, &props("b a"), n);
        if let Some(m) = bounded_synthesize(&u, &props("b"), &props("a"), 3, 4).unwrap() {
            prop_assert!(m.len() <= 3);
            for _ in 0..30 {
                let g = random::lasso(&mut rng, &props("b"), 3, 3);
                prop_assert!(u.accepts(&m.computation(&g).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn search_is_complete_for_small_machines(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let u = random::uca(&mut rng, &props("b a"), n);
        let exists = enumerate_machines(&props("b"), &props("a"), 2).any(|m| uca_model_check(&u, &m).unwrap().holds);
        let k = u.rejecting.iter().filter(|&&r| r).count() * 2;
        prop_assert_eq!(bounded_synthesize(&u, &props("b"), &props("a"), 2, k).unwrap().is_some(), exists);
    }

    #[test]
    fn model_check_matches_sampled_membership(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let u = random::uca(&mut rng, &props("b a"), n);
        let m = random::machine(&mut rng, &props("b"), &props("a"), 3);
        let mc = uca_model_check(&u, &m).unwrap();
        match mc.counterexample {
            Some(g) => prop_assert!(!u.accepts(&m.computation(&g).unwrap()).unwrap()),
            None => for _ in 0..30 {
                let g = random::lasso(&mut rng, &props("b"), 3, 3);
                prop_assert!(u.accepts(&m.computation(&g).unwrap()).unwrap());
            },
        }
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m1 = random::machine(&mut rng, &props("e b c"), &props("a"), 3);
        let m2 = random::machine(&mut rng, &props("a"), &props("b"), 3);
        let m3 = random::machine(&mut rng, &props("e a b"), &props("c"), 3);
        let left = m1.compose(&m2).unwrap().compose(&m3).unwrap();
        let right = m1.compose(&m2.compose(&m3).unwrap()).unwrap();
        let all = props("e a b c");
        for _ in 0..50 {
            let g = random::lasso(&mut rng, &props("e"), 3, 3);
            let l = left.computation(&g).unwrap().reorder(&all).unwrap();
            let r = right.computation(&g).unwrap().reorder(&all).unwrap();
            prop_assert!(same_word(&l, &r), "{} vs {}", l, r);
        }
    }
}

#[test]
fn composed_messages_project_to_each_process() {
    let (s1, s2): (Moore, Moore) = (fixtures::s1(), fixtures::t2());
    let both = s1.compose(&s2).unwrap();
    let g = LassoWord::parse("$ {}", &both.inputs).unwrap();
    let run = both.computation(&g).unwrap();
    for m in [&s1, &s2] {
        let own = run.restrict(&m.variables());
        let local = m.computation(&own.restrict(&m.inputs)).unwrap();
        assert!(same_word(&own.reorder(local.alphabet()).unwrap(), &local));
    }
}
