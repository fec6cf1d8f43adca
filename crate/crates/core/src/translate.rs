//! From LTL to alternating and universal automata.
//!
//! The Büchi automaton has one state per temporal obligation; the co-Büchi
//! automaton for `f` is the dual of the Büchi automaton for `!f`.

use std::collections::HashMap;

use crate::alphabet::{Alphabet, Letter};
use crate::alternating::{Acceptance, Alternating};
use crate::dnf::Dnf;
use crate::error::{Error, Result};
use crate::ltl::Ltl;
use crate::mh::aca_to_uca;
use crate::universal::Universal;

struct Builder<'a> {
    alphabet: &'a Alphabet,
    index: HashMap<Ltl, usize>,
    states: Vec<Ltl>,
}

impl Builder<'_> {
    fn state(&mut self, f: &Ltl) -> Dnf {
        let next = self.states.len();
        let q = *self.index.entry(f.clone()).or_insert_with(|| {
            self.states.push(f.clone());
            next
        });
        Dnf::state(q)
    }

    /// Transition of the obligation `f` on `letter`.
    fn delta(&mut self, f: &Ltl, letter: Letter) -> Dnf {
        match f {
            Ltl::True => Dnf::truth(),
            Ltl::False => Dnf::falsity(),
            Ltl::Atom(p) => holds(letter.contains(self.alphabet.index_of(p).unwrap())),
            Ltl::Not(g) => match &**g {
                Ltl::Atom(p) => holds(!letter.contains(self.alphabet.index_of(p).unwrap())),
                _ => unreachable!("input is in negation normal form"),
            },
            Ltl::And(a, b) => self.delta(a, letter).and(&self.delta(b, letter)),
            Ltl::Or(a, b) => self.delta(a, letter).or(&self.delta(b, letter)),
            Ltl::Next(g) => self.state(g),
            Ltl::Until(a, b) => {
                let stay = self.delta(a, letter).and(&self.state(f));
                self.delta(b, letter).or(&stay)
            }
            Ltl::Release(a, b) => {
                let stop = self.delta(a, letter).or(&self.state(f));
                self.delta(b, letter).and(&stop)
            }
            Ltl::Eventually(g) => self.delta(g, letter).or(&self.state(f)),
            Ltl::Globally(g) => self.delta(g, letter).and(&self.state(f)),
        }
    }
}

fn holds(b: bool) -> Dnf {
    if b {
        Dnf::truth()
    } else {
        Dnf::falsity()
    }
}

/// Alternating Büchi automaton for a formula in negation normal form.
/// Release and globally obligations are accepting; `true` leads into an accepting sink.
pub fn ltl_to_aba(f: &Ltl, alphabet: &Alphabet) -> Result<Alternating> {
    if !f.is_nnf() {
        return Err(Error::Automaton("formula is not in negation normal form".into()));
    }
    f.check_atoms(alphabet)?;
    let mut b = Builder {
        alphabet,
        index: HashMap::new(),
        states: Vec::new(),
    };
    b.state(f);
    let mut delta = Vec::new();
    let mut k = 0;
    while k < b.states.len() {
        let g = b.states[k].clone();
        delta.push(alphabet.letters().map(|l| b.delta(&g, l)).collect::<Vec<_>>());
        k += 1;
    }
    let n = b.states.len();
    let mut a = Alternating::new(alphabet.clone(), Acceptance::Buchi, n);
    a.names = b.states.iter().map(|g| g.to_string()).collect();
    a.marked = b
        .states
        .iter()
        .map(|g| matches!(g, Ltl::Release(..) | Ltl::Globally(_)))
        .collect();
    a.delta = delta;
    if a.delta.iter().flatten().any(|d| d.clauses().iter().any(Vec::is_empty)) {
        let sink = a.len();
        for d in a.delta.iter_mut().flatten() {
            if d.clauses().iter().any(Vec::is_empty) {
                *d = Dnf::from_clauses(d.clauses().iter().map(|c| if c.is_empty() { vec![sink] } else { c.clone() }));
            }
        }
        a.names.push("true".into());
        a.marked.push(true);
        a.delta.push(vec![Dnf::state(sink); alphabet.letter_count()]);
    }
    Ok(a)
}

/// Alternating co-Büchi automaton for `f`, without `true`/`false` transitions.
/// Each state is named after the formula it accepts.
pub fn ltl_to_aca(f: &Ltl, alphabet: &Alphabet) -> Result<Alternating> {
    let neg = f.negate_nnf();
    let aba = ltl_to_aba(&neg, alphabet)?;
    let mut aca = aba.dualize();
    for name in aca.names.iter_mut() {
        *name = if name == "true" {
            "false".into()
        } else {
            crate::ltl::parse_ltl(name, alphabet)
                .map(|g| g.negate_nnf().to_string())
                .unwrap_or_else(|_| name.clone())
        };
    }
    Ok(aca.complete())
}

/// Universal co-Büchi automaton for `f`.
pub fn ltl_to_uca(f: &Ltl, alphabet: &Alphabet) -> Result<Universal> {
    Ok(aca_to_uca(&ltl_to_aca(f, alphabet)?).trim())
}
