//! Random automata, machines, words and formulas for property tests and oracles.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::alphabet::{Alphabet, LassoWord, Letter};
use crate::alternating::{Acceptance, Alternating};
use crate::dnf::Dnf;
use crate::graph;
use crate::ltl::{self, Ltl};
use crate::moore::Moore;
use crate::universal::Universal;

fn letter<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet) -> Letter {
    Letter(rng.gen_range(0..alphabet.letter_count() as u32))
}

/// A lasso with at most `max_prefix` prefix letters and 1 to `max_cycle` loop letters.
pub fn lasso<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, max_prefix: usize, max_cycle: usize) -> LassoWord {
    let p = rng.gen_range(0..=max_prefix);
    let c = rng.gen_range(1..=max_cycle.max(1));
    let prefix = (0..p).map(|_| letter(rng, alphabet)).collect();
    let cycle = (0..c).map(|_| letter(rng, alphabet)).collect();
    LassoWord::new(alphabet.clone(), prefix, cycle).expect("letters fit the alphabet")
}

fn clause<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..n)).collect()
}

fn transition<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Dnf {
    match rng.gen_range(0..20) {
        0 => Dnf::truth(),
        1 => Dnf::falsity(),
        _ => Dnf::from_clauses((0..rng.gen_range(1..=2)).map(|_| clause(rng, n))),
    }
}

/// An alternating co-Büchi automaton with `n` states and short random transitions.
pub fn aca<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, n: usize) -> Alternating {
    let mut a = Alternating::new(alphabet.clone(), Acceptance::CoBuchi, n);
    for q in 0..n {
        a.delta[q] = alphabet.letters().map(|_| transition(rng, n)).collect();
        a.marked[q] = rng.gen_bool(0.5);
    }
    a
}

/// A weak automaton (every strongly connected component entirely rejecting or entirely
/// not) together with an automaton for its complement: the dual transitions with the
/// rejecting set flipped.
pub fn weak_aca_pair<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, n: usize) -> (Alternating, Alternating) {
    let mut a = aca(rng, alphabet, n);
    let comp = graph::scc(&a.state_graph());
    let count = comp.iter().max().map_or(0, |c| c + 1);
    let rejecting: Vec<bool> = (0..count).map(|_| rng.gen_bool(0.5)).collect();
    for q in 0..n {
        a.marked[q] = rejecting[comp[q]];
    }
    let mut c = a.dualize();
    c.acceptance = Acceptance::CoBuchi;
    for q in 0..n {
        c.marked[q] = !a.marked[q];
    }
    (a, c)
}

/// A universal co-Büchi automaton with one or two successors per transition.
pub fn uca<R: Rng + ?Sized>(rng: &mut R, alphabet: &Alphabet, n: usize) -> Universal {
    let mut u = Universal::new(alphabet.clone(), n);
    for q in 0..n {
        u.delta[q] = alphabet
            .letters()
            .map(|_| {
                let mut s = clause(rng, n);
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        u.rejecting[q] = rng.gen_bool(0.4);
    }
    u
}

/// A machine with 1 to `max_states` states, restricted to its reachable part.
pub fn machine<R: Rng + ?Sized>(rng: &mut R, inputs: &Alphabet, outputs: &Alphabet, max_states: usize) -> Moore {
    let n = rng.gen_range(1..=max_states.max(1));
    let mut m = Moore::new(inputs.clone(), outputs.clone(), n).expect("disjoint variables");
    for t in 0..n {
        m.labels[t] = letter(rng, outputs);
        m.trans[t] = inputs.letters().map(|_| rng.gen_range(0..n)).collect();
    }
    m.trim()
}

/// A formula in negation normal form with at most `size` nodes.
pub fn nnf_formula<R: Rng + ?Sized>(rng: &mut R, props: &Alphabet, size: usize) -> Ltl {
    let names = props.props();
    let leaf = |rng: &mut R| -> Ltl {
        match rng.gen_range(0..if size >= 2 { 10 } else { 6 }) {
            0 => Ltl::True,
            1 => Ltl::False,
            k => {
                let a = ltl::atom(names.choose(rng).expect("nonempty alphabet"));
                if k < 6 {
                    a
                } else {
                    ltl::not(a)
                }
            }
        }
    };
    if size <= 1 || rng.gen_bool(0.15) {
        return leaf(rng);
    }
    if size == 2 || rng.gen_bool(0.4) {
        let f = nnf_formula(rng, props, size - 1);
        return match rng.gen_range(0..3) {
            0 => ltl::next(f),
            1 => ltl::eventually(f),
            _ => ltl::globally(f),
        };
    }
    let left = rng.gen_range(1..=size - 2);
    let a = nnf_formula(rng, props, left);
    let b = nnf_formula(rng, props, size - 1 - left);
    match rng.gen_range(0..4) {
        0 => ltl::and(a, b),
        1 => ltl::or(a, b),
        2 => ltl::until(a, b),
        _ => ltl::release(a, b),
    }
}

/// A formula with negations anywhere and at most `size` nodes.
pub fn formula<R: Rng + ?Sized>(rng: &mut R, props: &Alphabet, size: usize) -> Ltl {
    if size >= 2 && rng.gen_bool(0.25) {
        return ltl::not(formula(rng, props, size - 1));
    }
    nnf_formula(rng, props, size)
}
