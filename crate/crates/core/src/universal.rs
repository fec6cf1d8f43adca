//! Universal co-Büchi automata: every run must visit rejecting states finitely often.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, LassoWord, Letter};
use crate::error::{Error, Result};
use crate::graph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universal {
    pub alphabet: Alphabet,
    pub names: Vec<String>,
    pub initial: usize,
    /// `delta[q][letter]`: sorted successor states
    pub delta: Vec<Vec<Vec<usize>>>,
    pub rejecting: Vec<bool>,
}

impl Universal {
    pub fn new(alphabet: Alphabet, n: usize) -> Self {
        Universal {
            names: (0..n).map(|i| format!("u{i}")).collect(),
            initial: 0,
            delta: vec![vec![Vec::new(); alphabet.letter_count()]; n],
            rejecting: vec![false; n],
            alphabet,
        }
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn successors(&self, q: usize, letter: Letter) -> &[usize] {
        &self.delta[q][letter.index()]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if self.initial >= n || self.names.len() != n || self.rejecting.len() != n {
            return Err(Error::Automaton("inconsistent state tables".into()));
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.alphabet.letter_count() {
                return Err(Error::Automaton(format!("state {q} is missing letters")));
            }
            if row.iter().flatten().any(|&s| s >= n) {
                return Err(Error::Automaton(format!("state {q} refers to an unknown state")));
            }
        }
        Ok(())
    }

    pub fn is_total(&self) -> bool {
        self.delta.iter().flatten().all(|s| !s.is_empty())
    }

    /// Sends every missing transition to one non-rejecting absorbing sink.
    /// Under universal branching a missing transition accepts, so the language is unchanged.
    pub fn totalize(&self) -> Universal {
        if self.is_total() {
            return self.clone();
        }
        let mut out = self.clone();
        let sink = out.len();
        out.names.push("true".into());
        out.rejecting.push(false);
        out.delta.push(vec![vec![sink]; self.alphabet.letter_count()]);
        for row in out.delta.iter_mut() {
            for s in row.iter_mut() {
                if s.is_empty() {
                    s.push(sink);
                }
            }
        }
        out
    }

    pub fn state_graph(&self) -> Vec<Vec<usize>> {
        self.delta
            .iter()
            .map(|row| {
                let mut s: Vec<usize> = row.iter().flatten().copied().collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect()
    }

    /// Language-preserving cleanup: keeps reachable states, drops states from which
    /// no rejecting cycle is reachable, unmarks rejecting states on no cycle, totalizes.
    pub fn trim(&self) -> Universal {
        let g = self.state_graph();
        let cyc = graph::on_cycle(&g);
        let bad: Vec<usize> = (0..self.len()).filter(|&q| self.rejecting[q] && cyc[q]).collect();
        let mut rev = vec![Vec::new(); self.len()];
        for (q, succ) in g.iter().enumerate() {
            for &s in succ {
                rev[s].push(q);
            }
        }
        let dangerous = graph::reachable(&rev, &bad);
        if !dangerous[self.initial] {
            let mut u = Universal::new(self.alphabet.clone(), 1);
            u.names = vec!["true".into()];
            u.delta = vec![vec![vec![0]; self.alphabet.letter_count()]];
            return u;
        }
        let keep_graph: Vec<Vec<usize>> = g
            .iter()
            .enumerate()
            .map(|(q, s)| {
                if dangerous[q] {
                    s.iter().copied().filter(|&t| dangerous[t]).collect()
                } else {
                    Vec::new()
                }
            })
            .collect();
        let mut order = vec![self.initial];
        let mut k = 0;
        let mut seen = vec![false; self.len()];
        seen[self.initial] = true;
        while k < order.len() {
            for &v in &keep_graph[order[k]] {
                if !seen[v] {
                    seen[v] = true;
                    order.push(v);
                }
            }
            k += 1;
        }
        let mut rename = vec![usize::MAX; self.len()];
        for (i, &q) in order.iter().enumerate() {
            rename[q] = i;
        }
        let out = Universal {
            alphabet: self.alphabet.clone(),
            names: order.iter().map(|&q| self.names[q].clone()).collect(),
            initial: 0,
            delta: order
                .iter()
                .map(|&q| {
                    self.delta[q]
                        .iter()
                        .map(|s| s.iter().filter(|&&t| dangerous[t]).map(|&t| rename[t]).collect())
                        .collect()
                })
                .collect(),
            rejecting: order.iter().map(|&q| self.rejecting[q] && cyc[q]).collect(),
        };
        out.totalize()
    }

    /// Membership: no run visits rejecting states infinitely often.
    pub fn accepts(&self, word: &LassoWord) -> Result<bool> {
        Ok(self.rejecting_cycle(word)?.is_none())
    }

    /// A rejecting state and folded position that recur on some run, if any.
    pub fn rejecting_cycle(&self, word: &LassoWord) -> Result<Option<(usize, usize)>> {
        let w = word.reorder(&self.alphabet)?;
        let m = w.len();
        let id = |q: usize, pos: usize| q * m + pos;
        let n = self.len() * m;
        let mut succ = vec![Vec::new(); n];
        for q in 0..self.len() {
            for pos in 0..m {
                let next = w.successor(pos);
                succ[id(q, pos)] = self
                    .successors(q, w.letter_at(pos))
                    .iter()
                    .map(|&t| id(t, next))
                    .collect();
            }
        }
        let reach = graph::reachable(&succ, &[id(self.initial, 0)]);
        let cyc = graph::on_cycle(&succ);
        Ok((0..n)
            .find(|&v| reach[v] && cyc[v] && self.rejecting[v / m])
            .map(|v| (v / m, v % m)))
    }

    /// Universal projection onto `keep`: a transition on `a` exists when it exists
    /// on `a ∪ b` for some valuation `b` of the hidden propositions.
    pub fn project(&self, keep: &Alphabet) -> Result<Universal> {
        if !keep.is_subset_of(&self.alphabet) || keep.same_set(&self.alphabet) {
            return Err(Error::AlphabetMismatch(format!(
                "projection set [{keep}] must be a strict subset of [{}]",
                self.alphabet
            )));
        }
        let to_keep = self.alphabet.embedding(keep);
        let mut delta = vec![vec![Vec::new(); keep.letter_count()]; self.len()];
        for (q, row) in self.delta.iter().enumerate() {
            for l in self.alphabet.letters() {
                let a = Alphabet::map_letter(l, &to_keep);
                let target: &mut Vec<usize> = &mut delta[q][a.index()];
                target.extend_from_slice(&row[l.index()]);
            }
            for s in delta[q].iter_mut() {
                s.sort_unstable();
                s.dedup();
            }
        }
        Ok(Universal {
            alphabet: keep.clone(),
            names: self.names.clone(),
            initial: self.initial,
            delta,
            rejecting: self.rejecting.clone(),
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n  init [shape=point];\n");
        let _ = writeln!(s, "  init -> s{};", self.initial);
        for q in 0..self.len() {
            let shape = if self.rejecting[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  s{q} [label=\"{}\", shape={shape}];", self.names[q]);
        }
        for q in 0..self.len() {
            let mut groups: BTreeMap<usize, Vec<String>> = BTreeMap::new();
            for l in self.alphabet.letters() {
                for &t in self.successors(q, l) {
                    groups.entry(t).or_default().push(self.alphabet.format_letter(l));
                }
            }
            for (t, letters) in groups {
                let _ = writeln!(s, "  s{q} -> s{t} [label=\"{}\"];", letters.join(" "));
            }
        }
        s.push_str("}\n");
        s
    }
}
