//! Alternating Büchi and co-Büchi automata with letter-indexed DNF transitions.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::alphabet::{Alphabet, LassoWord, Letter};
use crate::dnf::Dnf;
use crate::error::{Error, Result};
use crate::game::{solve_buchi, Arena, Player};
use crate::graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Acceptance {
    /// Some run tree whose every branch visits marked states infinitely often.
    Buchi,
    /// Some run tree whose every branch visits marked states finitely often.
    CoBuchi,
}

/// An alternating automaton. `marked` holds the accepting states under
/// [`Acceptance::Buchi`] and the rejecting states under [`Acceptance::CoBuchi`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alternating {
    pub alphabet: Alphabet,
    pub names: Vec<String>,
    pub initial: usize,
    /// `delta[q][letter]`
    pub delta: Vec<Vec<Dnf>>,
    pub marked: Vec<bool>,
    pub acceptance: Acceptance,
}

impl Alternating {
    /// `n` states, all transitions `false`, nothing marked.
    pub fn new(alphabet: Alphabet, acceptance: Acceptance, n: usize) -> Self {
        let letters = alphabet.letter_count();
        Alternating {
            names: (0..n).map(|i| format!("q{i}")).collect(),
            initial: 0,
            delta: vec![vec![Dnf::falsity(); letters]; n],
            marked: vec![false; n],
            alphabet,
            acceptance,
        }
    }

    pub fn len(&self) -> usize {
        self.delta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn delta(&self, q: usize, letter: Letter) -> &Dnf {
        &self.delta[q][letter.index()]
    }

    pub fn marked_states(&self) -> Vec<usize> {
        (0..self.len()).filter(|&q| self.marked[q]).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if self.initial >= n {
            return Err(Error::Automaton(format!("initial state {} out of range", self.initial)));
        }
        if self.names.len() != n || self.marked.len() != n {
            return Err(Error::Automaton("state tables have different lengths".into()));
        }
        for (q, row) in self.delta.iter().enumerate() {
            if row.len() != self.alphabet.letter_count() {
                return Err(Error::Automaton(format!("state {q} is missing letters")));
            }
            if let Some(bad) = row.iter().flat_map(|d| d.states()).find(|&s| s >= n) {
                return Err(Error::Automaton(format!("state {q} refers to unknown state {bad}")));
            }
        }
        Ok(())
    }

    /// Successor lists of the state graph: `q -> q'` when `q'` occurs in some transition of `q`.
    pub fn state_graph(&self) -> Vec<Vec<usize>> {
        self.delta
            .iter()
            .map(|row| {
                let mut s: Vec<usize> = row.iter().flat_map(|d| d.states()).collect();
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect()
    }

    /// Every transition is a single state.
    pub fn is_deterministic(&self) -> bool {
        self.delta
            .iter()
            .flatten()
            .all(|d| d.clauses().len() == 1 && d.clauses()[0].len() == 1)
    }

    /// Replaces the constants `true` and `false` by transitions into absorbing sinks,
    /// adding only the sinks that are needed. The language is unchanged.
    pub fn complete(&self) -> Alternating {
        let needs_truth = self.delta.iter().flatten().any(|d| d.clauses().iter().any(Vec::is_empty));
        let needs_false = self.delta.iter().flatten().any(Dnf::is_false);
        let mut out = self.clone();
        let good = matches!(self.acceptance, Acceptance::Buchi);
        let add_sink = |out: &mut Alternating, name: &str, marked: bool| {
            let s = out.len();
            out.names.push(name.to_string());
            out.marked.push(marked);
            out.delta.push(vec![Dnf::state(s); self.alphabet.letter_count()]);
            s
        };
        let truth = needs_truth.then(|| add_sink(&mut out, "true", good));
        let falsity = needs_false.then(|| add_sink(&mut out, "false", !good));
        for row in out.delta.iter_mut() {
            for d in row.iter_mut() {
                if d.is_false() {
                    *d = Dnf::state(falsity.unwrap());
                } else if let Some(t) = truth {
                    if d.clauses().iter().any(Vec::is_empty) {
                        *d = Dnf::from_clauses(
                            d.clauses().iter().map(|c| if c.is_empty() { vec![t] } else { c.clone() }),
                        );
                    }
                }
            }
        }
        out
    }

    /// The dual automaton: conjunction and disjunction swapped, marked states kept,
    /// acceptance condition flipped. It recognizes the complement language.
    pub fn dualize(&self) -> Alternating {
        Alternating {
            delta: self.delta.iter().map(|row| row.iter().map(Dnf::dual).collect()).collect(),
            acceptance: match self.acceptance {
                Acceptance::Buchi => Acceptance::CoBuchi,
                Acceptance::CoBuchi => Acceptance::Buchi,
            },
            ..self.clone()
        }
    }

    /// Unmarks states that lie on no cycle of the state graph. Such a state is
    /// visited at most once per branch, so the language is unchanged.
    pub fn prune_noncycle_marked(&self) -> Alternating {
        let cyc = graph::on_cycle(&self.state_graph());
        let mut out = self.clone();
        for q in 0..self.len() {
            out.marked[q] = self.marked[q] && cyc[q];
        }
        out
    }

    /// Restriction to the states reachable from the initial state, renumbered in BFS order.
    pub fn trim(&self) -> Alternating {
        let g = self.state_graph();
        let mut order = vec![self.initial];
        let mut k = 0;
        let mut seen = vec![false; self.len()];
        seen[self.initial] = true;
        while k < order.len() {
            for &v in &g[order[k]] {
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
        Alternating {
            alphabet: self.alphabet.clone(),
            names: order.iter().map(|&q| self.names[q].clone()).collect(),
            initial: 0,
            delta: order
                .iter()
                .map(|&q| self.delta[q].iter().map(|d| d.map_states(|s| rename[s])).collect())
                .collect(),
            marked: order.iter().map(|&q| self.marked[q]).collect(),
            acceptance: self.acceptance,
        }
    }

    /// Exact membership of a lasso word, decided on the finite acceptance game over
    /// (state, folded position). Returns a run tree certificate when accepted.
    pub fn accepts(&self, word: &LassoWord) -> Result<(bool, Option<RunTreeCertificate>)> {
        let w = word.reorder(&self.alphabet)?;
        let mut arena = Arena::new();
        let mut nodes: Vec<(usize, usize, Option<usize>)> = Vec::new();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let root = arena.add_node(Player::Zero);
        nodes.push((self.initial, 0, None));
        index.insert((self.initial, 0), root);
        let mut k = 0;
        while k < nodes.len() {
            let (q, pos, clause) = nodes[k];
            let d = self.delta(q, w.letter_at(pos));
            match clause {
                None => {
                    for ci in 0..d.clauses().len() {
                        let c = arena.add_node(Player::One);
                        nodes.push((q, pos, Some(ci)));
                        arena.add_edge(k, c);
                    }
                }
                Some(ci) => {
                    let next = w.successor(pos);
                    for &q2 in &d.clauses()[ci] {
                        let v = *index.entry((q2, next)).or_insert_with(|| {
                            nodes.push((q2, next, None));
                            arena.add_node(Player::Zero)
                        });
                        arena.add_edge(k, v);
                    }
                }
            }
            k += 1;
        }
        let target: Vec<bool> = nodes.iter().map(|&(q, _, c)| c.is_none() && self.marked[q]).collect();
        let buchi = match self.acceptance {
            Acceptance::Buchi => Player::Zero,
            Acceptance::CoBuchi => Player::One,
        };
        let sol = solve_buchi(&arena, &target, buchi);
        if sol.winner[root] != Player::Zero {
            return Ok((false, None));
        }
        let mut cert = RunTreeCertificate {
            word: w.clone(),
            choices: BTreeMap::new(),
            nodes: Vec::new(),
            edges: Vec::new(),
        };
        let mut cert_index: HashMap<usize, usize> = HashMap::new();
        let mut stack = vec![root];
        cert_index.insert(root, 0);
        cert.nodes.push((self.initial, 0));
        while let Some(v) = stack.pop() {
            let choice = sol.strategy[v].expect("winning existential node has a choice");
            let (q, pos, _) = nodes[v];
            cert.choices.insert((q, pos), nodes[choice].2.unwrap());
            let from = cert_index[&v];
            for &u in arena.successors(choice) {
                let to = *cert_index.entry(u).or_insert_with(|| {
                    cert.nodes.push((nodes[u].0, nodes[u].1));
                    stack.push(u);
                    cert.nodes.len() - 1
                });
                cert.edges.push((from, to));
            }
        }
        Ok((true, Some(cert)))
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n  init [shape=point];\n");
        let _ = writeln!(s, "  init -> s{};", self.initial);
        for q in 0..self.len() {
            let shape = if self.marked[q] { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  s{q} [label=\"{}\", shape={shape}];", self.names[q]);
        }
        let mut hub = 0;
        for q in 0..self.len() {
            let mut groups: BTreeMap<&Vec<usize>, Vec<String>> = BTreeMap::new();
            for l in self.alphabet.letters() {
                for c in self.delta(q, l).clauses() {
                    groups.entry(c).or_default().push(self.alphabet.format_letter(l));
                }
            }
            for (c, letters) in groups {
                let label = letters.join(" ");
                match c.as_slice() {
                    [single] => {
                        let _ = writeln!(s, "  s{q} -> s{single} [label=\"{label}\"];");
                    }
                    _ => {
                        let _ = writeln!(s, "  h{hub} [shape=point];");
                        let _ = writeln!(s, "  s{q} -> h{hub} [label=\"{label}\", arrowhead=none];");
                        for t in c {
                            let _ = writeln!(s, "  h{hub} -> s{t};");
                        }
                        if c.is_empty() {
                            let _ = writeln!(s, "  h{hub} [shape=box, label=\"true\"];");
                        }
                        hub += 1;
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Finite witness of acceptance on a lasso word: the existential choice made at each
/// reachable (state, folded position) and the resulting graph of run tree nodes.
#[derive(Clone, Debug, Serialize)]
pub struct RunTreeCertificate {
    #[serde(skip)]
    pub word: LassoWord,
    /// (state, position) -> index of the chosen clause
    pub choices: BTreeMap<(usize, usize), usize>,
    /// (state, position)
    pub nodes: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
}

impl RunTreeCertificate {
    /// Re-checks the certificate against `a` without any game solving.
    pub fn verify(&self, a: &Alternating) -> bool {
        let n = self.nodes.len();
        let mut succ = vec![Vec::new(); n];
        for &(u, v) in &self.edges {
            succ[u].push(v);
        }
        for (i, &(q, pos)) in self.nodes.iter().enumerate() {
            let Some(&ci) = self.choices.get(&(q, pos)) else { return false };
            let d = a.delta(q, self.word.letter_at(pos));
            let Some(clause) = d.clauses().get(ci) else { return false };
            let mut expected: Vec<(usize, usize)> =
                clause.iter().map(|&q2| (q2, self.word.successor(pos))).collect();
            let mut got: Vec<(usize, usize)> = succ[i].iter().map(|&j| self.nodes[j]).collect();
            expected.sort_unstable();
            got.sort_unstable();
            if expected != got {
                return false;
            }
        }
        let bad_cycle = match a.acceptance {
            Acceptance::CoBuchi => {
                let cyc = graph::on_cycle(&succ);
                (0..n).any(|i| cyc[i] && a.marked[self.nodes[i].0])
            }
            Acceptance::Buchi => {
                let sub: Vec<Vec<usize>> = (0..n)
                    .map(|i| {
                        if a.marked[self.nodes[i].0] {
                            Vec::new()
                        } else {
                            succ[i].iter().copied().filter(|&j| !a.marked[self.nodes[j].0]).collect()
                        }
                    })
                    .collect();
                graph::on_cycle(&sub).iter().any(|&c| c)
            }
        };
        !bad_cycle
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn messages_membership() {
        let a = fixtures::messages_aca();
        let w = |s: &str| LassoWord::parse(s, &a.alphabet).unwrap();
        let (ok, cert) = a.accepts(&w("{m1} {m2} $ {}")).unwrap();
        assert!(ok);
        let cert = cert.unwrap();
        assert!(cert.verify(&a));
        assert!(cert.nodes.iter().any(|&(q, _)| q == 3));
        assert!(!a.accepts(&w("$ {}")).unwrap().0);
        assert!(a.is_deterministic());
    }

    #[test]
    fn membership_requires_matching_alphabet() {
        let a = fixtures::messages_aca();
        let w = LassoWord::parse("$ {}", &Alphabet::new(["x"]).unwrap()).unwrap();
        assert!(matches!(a.accepts(&w), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn pruning_keeps_cyclic_rejecting_states() {
        let a = fixtures::messages_aca();
        assert_eq!(a.prune_noncycle_marked().marked, a.marked);
        let mut b = Alternating::new(Alphabet::new(["a"]).unwrap(), Acceptance::CoBuchi, 2);
        for l in b.alphabet.clone().letters() {
            b.delta[0][l.index()] = Dnf::state(1);
            b.delta[1][l.index()] = Dnf::state(1);
        }
        b.marked = vec![true, false];
        assert_eq!(b.prune_noncycle_marked().marked, vec![false, false]);
        let mut c = b.clone();
        c.marked = vec![false, false];
        assert_eq!(c.prune_noncycle_marked(), c);
    }

    #[test]
    fn completion_adds_only_needed_sinks() {
        let mut b = Alternating::new(Alphabet::new(["a"]).unwrap(), Acceptance::CoBuchi, 1);
        b.delta[0][1] = Dnf::truth();
        let c = b.complete();
        assert_eq!(c.len(), 3);
        assert_eq!(c.marked, vec![false, false, true]);
        assert_eq!(c.complete(), c);
        let w = |s: &str| LassoWord::parse(s, &b.alphabet).unwrap();
        for word in ["{a} $ {}", "{} $ {a}", "$ {a}"] {
            assert_eq!(b.accepts(&w(word)).unwrap().0, c.accepts(&w(word)).unwrap().0);
        }
    }

    #[test]
    fn dualizing_twice_is_identity() {
        let a = fixtures::eager_aca();
        assert_eq!(a.dualize().dualize(), a);
    }
}
