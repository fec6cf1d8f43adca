//! Alternating co-Büchi to universal co-Büchi via the breakpoint construction on the
//! dual automaton, and the delay-dominance automaton of a process.

use std::collections::HashMap;

use serde::Serialize;

use crate::alphabet::Letter;
use crate::alternating::{Acceptance, Alternating};
use crate::arch::Process;
use crate::dd_aca::build_dd_aca;
use crate::dnf::Dnf;
use crate::error::{Error, Result};
use crate::ltl::Ltl;
use crate::translate::ltl_to_aca;
use crate::universal::Universal;

/// Breakpoint state: `u` the tracked states, `v ⊆ u` those still owing a visit to
/// the dual acceptance set since the last breakpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MhState {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
}

struct Conjunctions<'a> {
    dual: &'a Alternating,
    cache: HashMap<(Vec<usize>, Letter), Dnf>,
}

impl Conjunctions<'_> {
    fn of(&mut self, set: &[usize], l: Letter) -> Dnf {
        if set.is_empty() {
            return Dnf::truth();
        }
        let dual = self.dual;
        self.cache
            .entry((set.to_vec(), l))
            .or_insert_with(|| Dnf::and_all(set.iter().map(|&q| dual.delta(q, l))))
            .clone()
    }
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// A universal co-Büchi automaton with the same language as `a`.
pub fn aca_to_uca(a: &Alternating) -> Universal {
    assert_eq!(a.acceptance, Acceptance::CoBuchi);
    let dual = a.dualize();
    let good = &dual.marked;
    let minus_good = |d: &[usize]| d.iter().copied().filter(|&q| !good[q]).collect::<Vec<_>>();
    let mut conj = Conjunctions {
        dual: &dual,
        cache: HashMap::new(),
    };
    let mut states = vec![MhState {
        u: vec![a.initial],
        v: Vec::new(),
    }];
    let mut index: HashMap<MhState, usize> = HashMap::new();
    index.insert(states[0].clone(), 0);
    let mut delta: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut k = 0;
    while k < states.len() {
        let MhState { u, v } = states[k].clone();
        let rest: Vec<usize> = u.iter().copied().filter(|q| v.binary_search(q).is_err()).collect();
        let mut row = Vec::with_capacity(a.alphabet.letter_count());
        for l in a.alphabet.letters() {
            let mut succ: Vec<MhState> = Vec::new();
            if v.is_empty() {
                for d in conj.of(&u, l).clauses() {
                    succ.push(MhState { u: d.clone(), v: minus_good(d) });
                }
            } else {
                let dv = conj.of(&v, l);
                let dr = conj.of(&rest, l);
                for x in dv.clauses() {
                    for y in dr.clauses() {
                        succ.push(MhState { u: union(x, y), v: minus_good(x) });
                    }
                }
            }
            let mut targets: Vec<usize> = succ
                .into_iter()
                .map(|s| {
                    let next = states.len();
                    *index.entry(s.clone()).or_insert_with(|| {
                        states.push(s);
                        next
                    })
                })
                .collect();
            targets.sort_unstable();
            targets.dedup();
            row.push(targets);
        }
        delta.push(row);
        k += 1;
    }
    let fmt = |s: &[usize]| s.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",");
    Universal {
        alphabet: a.alphabet.clone(),
        names: states.iter().map(|s| format!("{{{}|{}}}", fmt(&s.u), fmt(&s.v))).collect(),
        initial: 0,
        rejecting: states.iter().map(|s| s.v.is_empty()).collect(),
        delta,
    }
    .totalize()
}

/// Stage sizes of the delay-dominance automaton construction.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct DdSizes {
    pub a_phi: usize,
    pub a_neg: usize,
    pub product_before_pruning: usize,
    pub product: usize,
    pub nonprojected: usize,
    pub dd_uca: usize,
}

#[derive(Clone, Debug)]
pub struct DdUca {
    pub uca: Universal,
    pub sizes: DdSizes,
}

/// The delay-dominance automaton for `phi` and `process`, over the process variables.
pub fn build_dd_uca(phi: &Ltl, process: &Process) -> Result<DdUca> {
    let vars = process.variables();
    phi.check_atoms(&vars).map_err(|e| match e {
        Error::UnknownAtom(a) => Error::AlphabetMismatch(format!(
            "atom `{a}` is not a variable of process {}",
            process.name
        )),
        e => e,
    })?;
    let a_phi = ltl_to_aca(phi, &vars)?;
    let a_neg = ltl_to_aca(&phi.negate_nnf(), &vars)?;
    build_dd_uca_from(&a_phi, &a_neg, process)
}

/// Same as [`build_dd_uca`] for given automata of the specification and its negation.
pub fn build_dd_uca_from(a_phi: &Alternating, a_neg: &Alternating, process: &Process) -> Result<DdUca> {
    let vars = process.variables();
    if !a_phi.alphabet.same_set(&vars) {
        return Err(Error::AlphabetMismatch(format!(
            "automaton over [{}], process {} has variables [{}]",
            a_phi.alphabet, process.name, vars
        )));
    }
    let a_phi = a_phi.prune_noncycle_marked();
    let a_neg = a_neg.prune_noncycle_marked();
    let product = build_dd_aca(&a_phi, &a_neg, &process.outputs)?;
    let nonproj = aca_to_uca(&product.automaton).trim();
    let uca = if process.outputs.is_empty() {
        nonproj.clone()
    } else {
        nonproj.project(&vars)?.trim()
    };
    Ok(DdUca {
        sizes: DdSizes {
            a_phi: a_phi.len(),
            a_neg: a_neg.len(),
            product_before_pruning: product.states_before_pruning,
            product: product.automaton.len(),
            nonprojected: nonproj.len(),
            dd_uca: uca.len(),
        },
        uca,
    })
}
