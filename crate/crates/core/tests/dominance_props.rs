use ddsynth::dd_aca::{build_dd_aca, pair_word};
use ddsynth::dd_game::dd_pair_on_lasso;
use ddsynth::dnf::Dnf;
use ddsynth::random;
use ddsynth::{Acceptance, Alphabet, Alternating};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn inputs() -> Alphabet {
    Alphabet::parse_list("b").unwrap()
}

fn outputs() -> Alphabet {
    Alphabet::parse_list("a").unwrap()
}

fn vars() -> Alphabet {
    Alphabet::parse_list("b a").unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn every_strategy_dominates_itself(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let a = random::aca(&mut rng, &vars(), n);
        let s = random::machine(&mut rng, &inputs(), &outputs(), 3);
        let g = random::lasso(&mut rng, &inputs(), 4, 3);
        prop_assert!(dd_pair_on_lasso(&a, &s, &s, &g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn game_and_product_automaton_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let (a, c) = random::weak_aca_pair(&mut rng, &vars(), n);
        let dd = build_dd_aca(&a, &c, &outputs()).unwrap();
        let s = random::machine(&mut rng, &inputs(), &outputs(), 2);
        let t = random::machine(&mut rng, &inputs(), &outputs(), 2);
        let g = random::lasso(&mut rng, &inputs(), 3, 2);
        let cs = s.computation(&g).unwrap();
        let ct = t.computation(&g).unwrap();
        let (member, cert) = dd.automaton.accepts(&pair_word(&cs, &ct, &outputs()).unwrap()).unwrap();
        prop_assert_eq!(member, dd_pair_on_lasso(&a, &s, &t, &g).unwrap());
        if let Some(cert) = cert {
            prop_assert!(cert.verify(&dd.automaton));
            if cert.nodes.iter().any(|&(q, _)| dd.automaton.names[q].starts_with("c:")) {
                prop_assert!(!a.accepts(&ct).unwrap().0);
            }
        }
        // membership splits into "the alternative loses" or "the product part accepts"
        let mut empty = Alternating::new(vars(), Acceptance::CoBuchi, 1);
        empty.delta = vec![vec![Dnf::falsity(); vars().letter_count()]];
        let product_only = build_dd_aca(&a, &empty, &outputs()).unwrap();
        let by_product = product_only.automaton.accepts(&pair_word(&cs, &ct, &outputs()).unwrap()).unwrap().0;
        prop_assert_eq!(member, by_product || !a.accepts(&ct).unwrap().0);
    }
}
