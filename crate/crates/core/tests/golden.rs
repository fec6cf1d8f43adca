use ddsynth::dd_game::check_pair;
use ddsynth::fixtures;
use ddsynth::mh::{build_dd_uca, build_dd_uca_from};
use ddsynth::random;
use ddsynth::synthesis::{synthesize_dd, uca_model_check, Schedule};
use ddsynth::translate::ltl_to_aca;
use ddsynth::{parse_ltl, Alphabet, LassoWord, Letter, Moore};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn eager_automaton() -> ddsynth::universal::Universal {
    let arch = fixtures::eager_arch();
    let p = arch.process("p").unwrap();
    let phi = parse_ltl(fixtures::EAGER_LTL, &p.variables()).unwrap();
    let neg = ltl_to_aca(&phi.negate_nnf(), &p.variables()).unwrap();
    build_dd_uca_from(&fixtures::eager_aca(), &neg, p).unwrap().uca
}

#[test]
fn always_output_is_delay_dominant() {
    let u = eager_automaton();
    assert!(uca_model_check(&u, &fixtures::always_o()).unwrap().holds);
}

#[test]
fn skipping_the_first_output_needs_a_missing_input() {
    let u = eager_automaton();
    let mc = uca_model_check(&u, &fixtures::skip_first_o()).unwrap();
    assert!(!mc.holds);
    let g = mc.counterexample.unwrap();
    assert!(!g.letter_at(1).contains(0), "{g}");
    assert!(!u.accepts(&fixtures::skip_first_o().computation(&g).unwrap()).unwrap());
}

#[test]
fn synthesis_finds_the_constant_output() {
    let arch = fixtures::eager_arch();
    let phi = parse_ltl(fixtures::EAGER_LTL, &arch.system().variables()).unwrap();
    let out = synthesize_dd(&phi, &arch, "p", &Schedule::default()).unwrap();
    let m = out.synthesis.machine.unwrap();
    let gamma = LassoWord::parse("{} {i} $ {} {i}", &m.inputs).unwrap();
    let trace = m.computation(&gamma).unwrap();
    let o = trace.alphabet().index_of("o").unwrap();
    assert!((0..6).all(|j| trace.letter_at(j).contains(o)));
}

#[test]
fn false_specification_admits_only_dominant_strategies() {
    let arch = fixtures::eager_arch();
    let phi = parse_ltl("false", &arch.system().variables()).unwrap();
    let out = synthesize_dd(&phi, &arch, "p", &Schedule::default()).unwrap();
    // every strategy loses, so every strategy is delay-dominant
    assert!(out.synthesis.machine.is_some());
    let u = ddsynth::translate::ltl_to_uca(&phi, &arch.system().variables()).unwrap();
    let p = arch.process("p").unwrap();
    let s = ddsynth::synthesis::synthesize(&u, &p.inputs, &p.outputs, &Schedule::default()).unwrap();
    assert!(s.machine.is_none());
}

#[test]
fn bad_prefix_example_is_refuted_by_the_game() {
    let a = fixtures::bad_prefix_aca();
    let gamma = LassoWord::parse("$ {}", &Alphabet::parse_list("b").unwrap()).unwrap();
    let (_, out) = check_pair(&a, &fixtures::a_then_nothing(), &fixtures::never_a(), &gamma).unwrap();
    assert!(!out.duplicator_wins);
}

/// Alternatives are compared on the same input word: if the dominant machine loses,
/// so does every other machine.
fn remorsefree_on_samples(phi: &str, arch: &ddsynth::Architecture, process: &str, s: &Moore, seed: u64) {
    let p = arch.process(process).unwrap();
    let f = parse_ltl(phi, &arch.system().variables()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..20 {
        let t = random::machine(&mut rng, &p.inputs, &p.outputs, 3);
        for _ in 0..50 {
            let g = random::lasso(&mut rng, &p.inputs, 4, 3);
            let ok = f.eval_lasso(&s.computation(&g).unwrap()).unwrap();
            let alt = f.eval_lasso(&t.computation(&g).unwrap()).unwrap();
            assert!(ok || !alt, "{g}");
        }
    }
}

#[test]
fn certified_machines_are_remorsefree() {
    let arch = fixtures::messages_arch();
    let p1 = arch.process("p1").unwrap();
    let phi = parse_ltl(fixtures::MESSAGES_LTL, &arch.system().variables()).unwrap();
    assert!(uca_model_check(&build_dd_uca(&phi, p1).unwrap().uca, &fixtures::s1()).unwrap().holds);
    remorsefree_on_samples(fixtures::MESSAGES_LTL, &arch, "p1", &fixtures::s1(), 1);
    remorsefree_on_samples(fixtures::EAGER_LTL, &fixtures::eager_arch(), "p", &fixtures::always_o(), 2);
}

#[test]
fn waiting_machine_counterexample_mentions_the_other_message() {
    let arch = fixtures::messages_arch();
    let p1 = arch.process("p1").unwrap();
    let phi = parse_ltl(fixtures::MESSAGES_LTL, &arch.system().variables()).unwrap();
    let u = build_dd_uca(&phi, p1).unwrap().uca;
    let g = uca_model_check(&u, &fixtures::t1()).unwrap().counterexample.unwrap();
    let any_m2 = g.prefix().iter().chain(g.cycle()).any(|&l: &Letter| l.contains(0));
    assert!(any_m2, "{g}");
}
