//! Moore machines: process strategies whose output depends only on the current state.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, LassoWord, Letter};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moore {
    pub inputs: Alphabet,
    pub outputs: Alphabet,
    pub initial: usize,
    /// output letter of each state
    pub labels: Vec<Letter>,
    /// `trans[state][input letter]`
    pub trans: Vec<Vec<usize>>,
}

impl Moore {
    /// `n` states, all labelled `{}` and looping on themselves.
    pub fn new(inputs: Alphabet, outputs: Alphabet, n: usize) -> Result<Self> {
        if let Some(p) = inputs.props().iter().find(|p| outputs.contains(p)) {
            return Err(Error::Machine(format!("`{p}` is both an input and an output")));
        }
        if n == 0 {
            return Err(Error::Machine("a machine needs at least one state".into()));
        }
        Ok(Moore {
            initial: 0,
            labels: vec![Letter::EMPTY; n],
            trans: (0..n).map(|t| vec![t; inputs.letter_count()]).collect(),
            inputs,
            outputs,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Inputs followed by outputs: the propositions of a computation.
    pub fn variables(&self) -> Alphabet {
        self.inputs.union(&self.outputs).expect("inputs and outputs are disjoint")
    }

    /// The computation on `gamma`, folded into a lasso by detecting the first
    /// repeated (state, input position) pair.
    pub fn computation(&self, gamma: &LassoWord) -> Result<LassoWord> {
        let g = gamma.reorder(&self.inputs)?;
        let vars = self.variables();
        let out_emb = self.outputs.embedding(&vars);
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut trace = Vec::new();
        let (mut t, mut pos) = (self.initial, 0);
        while let std::collections::hash_map::Entry::Vacant(e) = seen.entry((t, pos)) {
            e.insert(trace.len());
            let input = g.letter_at(pos);
            trace.push(input.union(Alphabet::map_letter(self.labels[t], &out_emb)));
            t = self.trans[t][input.index()];
            pos = g.successor(pos);
        }
        let start = seen[&(t, pos)];
        let cycle = trace.split_off(start);
        LassoWord::new(vars, trace, cycle)
    }

    /// Restriction to the states reachable from the initial state, in BFS order.
    pub fn trim(&self) -> Moore {
        let mut order = vec![self.initial];
        let mut rename = vec![usize::MAX; self.len()];
        rename[self.initial] = 0;
        let mut k = 0;
        while k < order.len() {
            for &s in &self.trans[order[k]] {
                if rename[s] == usize::MAX {
                    rename[s] = order.len();
                    order.push(s);
                }
            }
            k += 1;
        }
        Moore {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            initial: 0,
            labels: order.iter().map(|&t| self.labels[t]).collect(),
            trans: order
                .iter()
                .map(|&t| self.trans[t].iter().map(|&s| rename[s]).collect())
                .collect(),
        }
    }

    /// Parallel composition. Each machine reads the environment inputs together with
    /// the other machine's current outputs.
    pub fn compose(&self, other: &Moore) -> Result<Moore> {
        if let Some(p) = self.outputs.props().iter().find(|p| other.outputs.contains(p)) {
            return Err(Error::OutputOverlap(p.clone()));
        }
        let outputs = self.outputs.union(&other.outputs)?;
        let inputs = self.inputs.union(&other.inputs)?.minus(&outputs);
        let all = inputs.union(&outputs)?;
        let in_emb = inputs.embedding(&all);
        let o1 = self.outputs.embedding(&all);
        let o2 = other.outputs.embedding(&all);
        let to_i1 = all.embedding(&self.inputs);
        let to_i2 = all.embedding(&other.inputs);
        let to_out = all.embedding(&outputs);
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut states = vec![(self.initial, other.initial)];
        index.insert(states[0], 0);
        let mut labels = Vec::new();
        let mut trans = Vec::new();
        let mut k = 0;
        while k < states.len() {
            let (a, b) = states[k];
            let own = Alphabet::map_letter(self.labels[a], &o1).union(Alphabet::map_letter(other.labels[b], &o2));
            labels.push(Alphabet::map_letter(own, &to_out));
            let mut row = Vec::with_capacity(inputs.letter_count());
            for i in inputs.letters() {
                let v = Alphabet::map_letter(i, &in_emb).union(own);
                let a2 = self.trans[a][Alphabet::map_letter(v, &to_i1).index()];
                let b2 = other.trans[b][Alphabet::map_letter(v, &to_i2).index()];
                let next = *index.entry((a2, b2)).or_insert_with(|| {
                    states.push((a2, b2));
                    states.len() - 1
                });
                row.push(next);
            }
            trans.push(row);
            k += 1;
        }
        Ok(Moore {
            inputs,
            outputs,
            initial: 0,
            labels,
            trans,
        })
    }

    /// Smallest equivalent machine: states merged when no input sequence tells them apart.
    pub fn minimize(&self) -> Moore {
        let m = self.trim();
        let n = m.len();
        let mut class: Vec<usize> = {
            let mut ids: HashMap<Letter, usize> = HashMap::new();
            m.labels.iter().map(|l| { let k = ids.len(); *ids.entry(*l).or_insert(k) }).collect()
        };
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|t| {
                    let sig = (class[t], m.trans[t].iter().map(|&s| class[s]).collect());
                    let k = ids.len();
                    *ids.entry(sig).or_insert(k)
                })
                .collect();
            let stable = ids.len() == class.iter().max().map_or(0, |c| c + 1);
            class = next;
            if stable {
                break;
            }
        }
        let count = class.iter().max().unwrap() + 1;
        let mut labels = vec![Letter::EMPTY; count];
        let mut trans = vec![Vec::new(); count];
        for t in 0..n {
            labels[class[t]] = m.labels[t];
            trans[class[t]] = m.trans[t].iter().map(|&s| class[s]).collect();
        }
        Moore {
            inputs: m.inputs.clone(),
            outputs: m.outputs.clone(),
            initial: class[m.initial],
            labels,
            trans,
        }
        .trim()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph moore {\n  rankdir=LR;\n  init [shape=point];\n");
        let _ = writeln!(s, "  init -> t{};", self.initial);
        for t in 0..self.len() {
            let _ = writeln!(s, "  t{t} [shape=box, label=\"t{t}\\n{}\"];", self.outputs.format_letter(self.labels[t]));
        }
        for t in 0..self.len() {
            let mut groups: Vec<(usize, Vec<String>)> = Vec::new();
            for i in self.inputs.letters() {
                let target = self.trans[t][i.index()];
                match groups.iter_mut().find(|(g, _)| *g == target) {
                    Some((_, ls)) => ls.push(self.inputs.format_letter(i)),
                    None => groups.push((target, vec![self.inputs.format_letter(i)])),
                }
            }
            for (target, ls) in groups {
                let _ = writeln!(s, "  t{t} -> t{target} [label=\"{}\"];", ls.join(" "));
            }
        }
        s.push_str("}\n");
        s
    }
}

/// All machines with at most `max_states` states whose states are all reachable,
/// one per isomorphism class: states are numbered in breadth-first discovery order.
pub fn enumerate_machines(inputs: &Alphabet, outputs: &Alphabet, max_states: usize) -> impl Iterator<Item = Moore> {
    let inputs = inputs.clone();
    let outputs = outputs.clone();
    (1..=max_states).flat_map(move |n| {
        let letters = inputs.letter_count();
        let cells = n * letters;
        let tables = (n as u64).pow(cells as u32);
        let labelings = (outputs.letter_count() as u64).pow(n as u32);
        let (inputs, outputs) = (inputs.clone(), outputs.clone());
        (0..tables)
            .filter_map(move |code| {
                let mut c = code;
                let trans: Vec<Vec<usize>> = (0..n)
                    .map(|_| {
                        (0..letters)
                            .map(|_| {
                                let d = (c % n as u64) as usize;
                                c /= n as u64;
                                d
                            })
                            .collect()
                    })
                    .collect();
                bfs_canonical(&trans).then_some(trans)
            })
            .flat_map(move |trans| {
                let (inputs, outputs) = (inputs.clone(), outputs.clone());
                (0..labelings).map(move |code| {
                    let mut c = code;
                    let labels = (0..trans.len())
                        .map(|_| {
                            let l = Letter((c % outputs.letter_count() as u64) as u32);
                            c /= outputs.letter_count() as u64;
                            l
                        })
                        .collect();
                    Moore {
                        inputs: inputs.clone(),
                        outputs: outputs.clone(),
                        initial: 0,
                        labels,
                        trans: trans.clone(),
                    }
                })
            })
    })
}

/// Whether breadth-first search from state 0 reaches every state in index order.
fn bfs_canonical(trans: &[Vec<usize>]) -> bool {
    let mut queue = VecDeque::from([0]);
    let mut next = 1;
    let mut seen = vec![false; trans.len()];
    seen[0] = true;
    while let Some(t) = queue.pop_front() {
        for &s in &trans[t] {
            if !seen[s] {
                if s != next {
                    return false;
                }
                seen[s] = true;
                next += 1;
                queue.push_back(s);
            }
        }
    }
    next == trans.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn word(text: &str, props: &[&str]) -> LassoWord {
        LassoWord::parse(text, &Alphabet::new(props.iter().copied()).unwrap()).unwrap()
    }

    #[test]
    fn constant_machine_computation() {
        let s = fixtures::s1();
        let c = s.computation(&word("$ {}", &["m2"])).unwrap();
        assert_eq!(c.to_string(), "$ {m1}");
    }

    #[test]
    fn waiting_machine_reacts_one_step_late() {
        let t = fixtures::t1();
        let c = t.computation(&word("{} {m2} $ {}", &["m2"])).unwrap();
        assert_eq!(c.to_string(), "{} {m2} $ {m1}");
    }

    #[test]
    fn no_outputs_copies_inputs() {
        let inputs = Alphabet::new(["b"]).unwrap();
        let m = Moore::new(inputs, Alphabet::default(), 1).unwrap();
        let g = word("{b} $ {} {b}", &["b"]);
        assert_eq!(m.computation(&g).unwrap(), g);
    }

    #[test]
    fn composing_constant_machines() {
        let c = fixtures::s1().compose(&fixtures::s2()).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.inputs.is_empty());
        assert_eq!(c.outputs.format_letter(c.labels[0]), "{m1,m2}");
    }

    #[test]
    fn waiting_machines_never_send() {
        let c = fixtures::t1().compose(&fixtures::t2()).unwrap();
        assert!(c.labels.iter().all(|l| *l == Letter::EMPTY));
        assert!(fixtures::t1().compose(&fixtures::t1()).is_err());
    }

    #[test]
    fn composing_with_a_silent_machine() {
        let silent = Moore::new(Alphabet::new(["x"]).unwrap(), Alphabet::default(), 1).unwrap();
        let t = fixtures::t1();
        let c = t.compose(&silent).unwrap();
        let g = word("{} {m2} $ {}", &["m2"]);
        let cg = g.zip_union(&word("$ {}", &["x"])).unwrap();
        assert_eq!(
            c.computation(&cg).unwrap().restrict(&t.variables()).to_string(),
            t.computation(&g).unwrap().to_string()
        );
    }

    #[test]
    fn enumeration_counts() {
        let none = Alphabet::default();
        let a = Alphabet::new(["a"]).unwrap();
        let b = Alphabet::new(["b"]).unwrap();
        assert_eq!(enumerate_machines(&none, &a, 1).count(), 2);
        assert_eq!(enumerate_machines(&b, &none, 1).count(), 1);
        assert_eq!(enumerate_machines(&b, &a, 1).count(), 2);
        // second state: state 0 must reach it (3 rows), state 1 is free (4 rows)
        assert_eq!(enumerate_machines(&b, &none, 2).count(), 1 + 3 * 4);
    }

    #[test]
    fn minimization_merges_equivalent_states() {
        let mut m = Moore::new(Alphabet::new(["b"]).unwrap(), Alphabet::new(["a"]).unwrap(), 3).unwrap();
        m.labels = vec![Letter(1), Letter(1), Letter(0)];
        m.trans = vec![vec![1, 1], vec![0, 0], vec![2, 2]];
        let small = m.minimize();
        assert_eq!(small.len(), 1);
        assert_eq!(small.labels, vec![Letter(1)]);
    }
}
