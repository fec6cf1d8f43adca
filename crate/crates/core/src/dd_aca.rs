//! The co-Büchi automaton over dominant and primed alternative variables that
//! accepts exactly the pairs of computations on which the dominant one delay-dominates.

use crate::alphabet::{Alphabet, LassoWord, Letter};
use crate::alternating::{Acceptance, Alternating};
use crate::dd_game::theta;
use crate::dnf::Dnf;
use crate::error::{Error, Result};

/// Variables `V` of a process together with a primed copy of its outputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimedAlphabet {
    pub base: Alphabet,
    pub outputs: Alphabet,
    /// `base` followed by the primed outputs
    pub full: Alphabet,
    primed_to_base: Vec<usize>,
}

pub fn primed(name: &str) -> String {
    format!("{name}'")
}

impl PrimedAlphabet {
    pub fn new(base: &Alphabet, outputs: &Alphabet) -> Result<Self> {
        if !outputs.is_subset_of(base) {
            return Err(Error::AlphabetMismatch(format!("outputs [{outputs}] are not among [{base}]")));
        }
        let outs: Vec<&String> = base.props().iter().filter(|p| outputs.contains(p)).collect();
        let full = Alphabet::new(base.props().iter().cloned().chain(outs.iter().map(|o| primed(o))))?;
        let primed_to_base = outs.iter().map(|o| base.index_of(o).unwrap()).collect();
        Ok(PrimedAlphabet {
            base: base.clone(),
            outputs: base.intersect(outputs),
            full,
            primed_to_base,
        })
    }

    /// Splits a letter of the full alphabet into the dominant letter (`ι`) and the
    /// alternative letter (`ι'`): shared inputs, outputs taken from the primed copies.
    pub fn split(&self, letter: Letter) -> (Letter, Letter) {
        let n = self.base.len();
        let own = Letter(letter.0 & self.base.full().0);
        let mut alt = Letter(own.0 & !self.base.mask_of(&self.outputs).0);
        for (k, &b) in self.primed_to_base.iter().enumerate() {
            if letter.contains(n + k) {
                alt = alt.with(b);
            }
        }
        (own, alt)
    }

    /// Renames the outputs of a base letter to their primed copies.
    pub fn prime_letter(&self, letter: Letter) -> Letter {
        let n = self.base.len();
        let mut out = Letter(letter.0 & !self.base.mask_of(&self.outputs).0);
        for (k, &b) in self.primed_to_base.iter().enumerate() {
            if letter.contains(b) {
                out = out.with(n + k);
            }
        }
        out
    }
}

/// The trace with every output renamed to its primed copy; inputs are unchanged.
pub fn prime_trace(w: &LassoWord, outputs: &Alphabet) -> Result<LassoWord> {
    let props: Vec<String> = w
        .alphabet()
        .props()
        .iter()
        .map(|p| if outputs.contains(p) { primed(p) } else { p.clone() })
        .collect();
    LassoWord::new(Alphabet::new(props)?, w.prefix().to_vec(), w.cycle().to_vec())
}

/// The word read by the product automaton: the dominant computation together with
/// the primed outputs of the alternative computation.
pub fn pair_word(dominant: &LassoWord, alternative: &LassoWord, outputs: &Alphabet) -> Result<LassoWord> {
    let alt_out = alternative.restrict(&alternative.alphabet().intersect(outputs));
    dominant.zip_union(&prime_trace(&alt_out, outputs)?)
}

#[derive(Clone, Debug)]
pub struct DdAca {
    /// reachable part, initial state first
    pub automaton: Alternating,
    pub primed: PrimedAlphabet,
    /// `2|Q|² + |Q^c|` for the completed inputs
    pub states_before_pruning: usize,
}

/// Index of the product state `(p, q, m)` among `n` automaton states.
pub fn product_index(n: usize, p: usize, q: usize, top: bool) -> usize {
    (p * n + q) * 2 + usize::from(!top)
}

/// Builds the product automaton from `a_phi`, an automaton `a_neg` for the complement
/// language, and the outputs of the process.
pub fn build_dd_aca(a_phi: &Alternating, a_neg: &Alternating, outputs: &Alphabet) -> Result<DdAca> {
    for a in [a_phi, a_neg] {
        a.validate()?;
        if a.acceptance != Acceptance::CoBuchi {
            return Err(Error::Automaton("expected co-Büchi automata".into()));
        }
    }
    if !a_phi.alphabet.same_set(&a_neg.alphabet) {
        return Err(Error::AlphabetMismatch(format!(
            "[{}] and [{}] differ",
            a_phi.alphabet, a_neg.alphabet
        )));
    }
    let a = a_phi.complete();
    let c = a_neg.complete();
    let primed = PrimedAlphabet::new(&a.alphabet, outputs)?;
    let to_neg = a.alphabet.embedding(&c.alphabet);
    let n = a.len();
    let offset = 2 * n * n;
    let total = offset + c.len();

    let mut names = vec![String::new(); total];
    let mut marked = vec![false; total];
    for p in 0..n {
        for q in 0..n {
            for top in [true, false] {
                let i = product_index(n, p, q, top);
                names[i] = format!("({},{},{})", a.names[p], a.names[q], if top { "T" } else { "F" });
                marked[i] = !top;
            }
        }
    }
    for r in 0..c.len() {
        names[offset + r] = format!("c:{}", c.names[r]);
        marked[offset + r] = c.marked[r];
    }
    debug_assert_eq!(names.len(), total);

    let letters = primed.full.letter_count();
    let mut delta = vec![vec![Dnf::falsity(); letters]; total];
    for l in primed.full.letters() {
        let (own, alt) = primed.split(l);
        for p in 0..n {
            let dp = a.delta(p, alt);
            for q in 0..n {
                let dq = a.delta(q, own);
                for top in [true, false] {
                    let step = |p2: usize, q2: usize| {
                        Dnf::state(product_index(n, p2, q2, theta(a.marked[p2], a.marked[q2], top)))
                    };
                    let per_c: Vec<Dnf> = dp
                        .clauses()
                        .iter()
                        .map(|cl| {
                            let options: Vec<Dnf> = dq
                                .clauses()
                                .iter()
                                .map(|cl2| {
                                    let parts: Vec<Dnf> = cl2
                                        .iter()
                                        .map(|&q2| Dnf::or_all(cl.iter().map(|&p2| step(p2, q2)).collect::<Vec<_>>().iter()))
                                        .collect();
                                    Dnf::and_all(parts.iter())
                                })
                                .collect();
                            Dnf::or_all(options.iter())
                        })
                        .collect();
                    delta[product_index(n, p, q, top)][l.index()] = Dnf::and_all(per_c.iter());
                }
            }
        }
        let neg_letter = Alphabet::map_letter(alt, &to_neg);
        for r in 0..c.len() {
            delta[offset + r][l.index()] = c.delta(r, neg_letter).map_states(|s| s + offset);
        }
        let init = product_index(n, a.initial, a.initial, true);
        let jump = delta[offset + c.initial][l.index()].clone();
        delta[init][l.index()] = delta[init][l.index()].or(&jump);
    }

    let mut full = Alternating::new(primed.full.clone(), Acceptance::CoBuchi, total);
    full.names = names;
    full.marked = marked;
    full.delta = delta;
    full.initial = product_index(n, a.initial, a.initial, true);
    full.validate()?;
    Ok(DdAca {
        automaton: full.trim(),
        primed,
        states_before_pruning: total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn props(s: &str) -> Alphabet {
        Alphabet::parse_list(s).unwrap()
    }

    #[test]
    fn priming() {
        let o = props("m1");
        let w = LassoWord::parse("$ {m1}", &props("m1")).unwrap();
        assert_eq!(prime_trace(&w, &o).unwrap().to_string(), "$ {m1'}");
        let w = LassoWord::parse("$ {m2}", &props("m2")).unwrap();
        assert_eq!(prime_trace(&w, &o).unwrap().to_string(), "$ {m2}");
        let w = LassoWord::parse("$ {m1,m2}", &props("m1 m2")).unwrap();
        let p = prime_trace(&w, &o).unwrap();
        assert_eq!(p.alphabet().to_string(), "m1' m2");
        assert_eq!(p.to_string(), "$ {m1',m2}");
    }

    #[test]
    fn split_inverts_priming() {
        let pa = PrimedAlphabet::new(&props("m1 m2"), &props("m1")).unwrap();
        assert_eq!(pa.full.to_string(), "m1 m2 m1'");
        for own in pa.base.letters() {
            for alt in pa.base.letters() {
                if own.0 & 2 != alt.0 & 2 {
                    continue;
                }
                let l = Letter(own.0 | pa.prime_letter(alt).0);
                assert_eq!(pa.split(l), (own, alt));
            }
        }
    }

    #[test]
    fn state_count_and_membership() {
        let dd = build_dd_aca(&fixtures::messages_aca(), &fixtures::messages_neg_aca(), &props("m1")).unwrap();
        assert_eq!(dd.states_before_pruning, 2 * 16 + 5);
        let gamma = LassoWord::parse("{} {} {m2} $ {}", &props("m2")).unwrap();
        let s = fixtures::s1().computation(&gamma).unwrap();
        let t = fixtures::t1().computation(&gamma).unwrap();
        let o = props("m1");
        assert!(dd.automaton.accepts(&pair_word(&s, &t, &o).unwrap()).unwrap().0);
        assert!(!dd.automaton.accepts(&pair_word(&t, &s, &o).unwrap()).unwrap().0);
    }

    #[test]
    fn complement_part_hangs_off_the_initial_state() {
        let dd = build_dd_aca(&fixtures::messages_aca(), &fixtures::messages_neg_aca(), &props("m1")).unwrap();
        let a = &dd.automaton;
        let g = a.state_graph();
        for q in 0..a.len() {
            if a.names[q].starts_with('(') && q != a.initial {
                assert!(g[q].iter().all(|&s| a.names[s].starts_with('(')));
            }
        }
    }
}
