//! Model checking of Moore machines against universal co-Büchi automata and bounded
//! synthesis through a counting safety game.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::alphabet::{Alphabet, LassoWord, Letter};
use crate::arch::Architecture;
use crate::error::{Error, Result};
use crate::graph;
use crate::ltl::Ltl;
use crate::mh::{build_dd_uca, DdSizes};
use crate::moore::Moore;
use crate::universal::Universal;

/// Letter of `u` read when the machine outputs `o` and receives `i`.
struct LetterTable {
    table: Vec<Vec<Letter>>,
}

impl LetterTable {
    fn new(u: &Universal, inputs: &Alphabet, outputs: &Alphabet) -> Result<Self> {
        let in_emb = inputs.embedding(&u.alphabet);
        let out_emb = outputs.embedding(&u.alphabet);
        let vars = inputs.union(outputs)?;
        if vars.len() != inputs.len() + outputs.len() || !vars.same_set(&u.alphabet) {
            return Err(Error::AlphabetMismatch(format!(
                "automaton over [{}], machine over inputs [{inputs}] and outputs [{outputs}]",
                u.alphabet
            )));
        }
        Ok(LetterTable {
            table: outputs
                .letters()
                .map(|o| {
                    let ol = Alphabet::map_letter(o, &out_emb);
                    inputs.letters().map(|i| Alphabet::map_letter(i, &in_emb).union(ol)).collect()
                })
                .collect(),
        })
    }

    fn get(&self, o: Letter, i: Letter) -> Letter {
        self.table[o.index()][i.index()]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCheck {
    pub holds: bool,
    /// input word on which some run visits a rejecting state infinitely often
    pub counterexample: Option<LassoWord>,
}

/// Whether `u` accepts the computation of `m` on every input word.
pub fn uca_model_check(u: &Universal, m: &Moore) -> Result<ModelCheck> {
    let letters = LetterTable::new(u, &m.inputs, &m.outputs)?;
    let nq = u.len();
    let id = |t: usize, q: usize| t * nq + q;
    let n = m.len() * nq;
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for t in 0..m.len() {
        for q in 0..nq {
            let mut s: Vec<usize> = m
                .inputs
                .letters()
                .flat_map(|i| {
                    let t2 = m.trans[t][i.index()];
                    u.successors(q, letters.get(m.labels[t], i)).iter().map(move |&q2| id(t2, q2))
                })
                .collect();
            s.sort_unstable();
            s.dedup();
            succ[id(t, q)] = s;
        }
    }
    let root = id(m.initial, u.initial);
    let parent = graph::bfs(&succ, &[root]);
    let cyc = graph::on_cycle(&succ);
    let Some(bad) = (0..n).find(|&v| parent[v].is_some() && cyc[v] && u.rejecting[v % nq]) else {
        return Ok(ModelCheck {
            holds: true,
            counterexample: None,
        });
    };
    let input_between = |a: usize, b: usize| -> Letter {
        let (t, q) = (a / nq, a % nq);
        m.inputs
            .letters()
            .find(|&i| {
                m.trans[t][i.index()] == b / nq && u.successors(q, letters.get(m.labels[t], i)).contains(&(b % nq))
            })
            .expect("edge exists")
    };
    let path = graph::path_to(&parent, bad);
    let cycle = graph::cycle_through(&succ, bad).expect("node lies on a cycle");
    let prefix: Vec<Letter> = path.windows(2).map(|w| input_between(w[0], w[1])).collect();
    let looped: Vec<Letter> = (0..cycle.len())
        .map(|j| input_between(cycle[j], cycle[(j + 1) % cycle.len()]))
        .collect();
    Ok(ModelCheck {
        holds: false,
        counterexample: Some(LassoWord::new(m.inputs.clone(), prefix, looped)?),
    })
}

/// Counter maps: `-1` for an untracked state, otherwise the largest number of rejecting
/// visits on a run prefix ending there.
type Counters = Vec<i16>;

fn step(u: &Universal, f: &[i16], l: Letter, k: usize) -> Option<Counters> {
    let mut out = vec![-1i16; f.len()];
    for (q, &c) in f.iter().enumerate() {
        if c < 0 {
            continue;
        }
        for &q2 in u.successors(q, l) {
            let v = c + i16::from(u.rejecting[q2]);
            if v as usize > k {
                return None;
            }
            out[q2] = out[q2].max(v);
        }
    }
    Some(out)
}

fn join_into(target: &mut [i16], f: &[i16]) -> bool {
    let mut changed = false;
    for (t, &v) in target.iter_mut().zip(f) {
        if v > *t {
            *t = v;
            changed = true;
        }
    }
    changed
}

/// The safety game where the system picks an output letter, then the environment an
/// input letter, and the system must keep every counter at most `k`.
#[derive(Clone, Debug)]
pub struct CountingGame {
    pub inputs: Alphabet,
    pub outputs: Alphabet,
    pub k: usize,
    pub positions: Vec<Counters>,
    /// `succ[f][o][i]`, `None` when a counter exceeds `k`
    pub succ: Vec<Vec<Vec<Option<usize>>>>,
    pub winning: Vec<bool>,
    /// least output keeping the play in the winning region
    pub choice: Vec<Option<Letter>>,
    /// false when the initial counters already exceed `k`
    pub initial_safe: bool,
}

impl CountingGame {
    /// Explores and solves the game; `None` when more than `cap` positions are reachable.
    pub fn solve(u: &Universal, inputs: &Alphabet, outputs: &Alphabet, k: usize, cap: usize) -> Result<Option<Self>> {
        let letters = LetterTable::new(u, inputs, outputs)?;
        let mut f0 = vec![-1i16; u.len()];
        f0[u.initial] = i16::from(u.rejecting[u.initial]);
        let mut game = CountingGame {
            inputs: inputs.clone(),
            outputs: outputs.clone(),
            k,
            positions: Vec::new(),
            succ: Vec::new(),
            winning: Vec::new(),
            choice: Vec::new(),
            initial_safe: f0[u.initial] as usize <= k,
        };
        if !game.initial_safe {
            return Ok(Some(game));
        }
        let mut index: HashMap<Counters, usize> = HashMap::new();
        index.insert(f0.clone(), 0);
        game.positions.push(f0);
        let mut x = 0;
        while x < game.positions.len() {
            if game.positions.len() > cap {
                return Ok(None);
            }
            let f = game.positions[x].clone();
            let mut rows = Vec::with_capacity(outputs.letter_count());
            for o in outputs.letters() {
                let row: Vec<Option<usize>> = inputs
                    .letters()
                    .map(|i| {
                        step(u, &f, letters.get(o, i), k).map(|g| {
                            let next = game.positions.len();
                            *index.entry(g.clone()).or_insert_with(|| {
                                game.positions.push(g);
                                next
                            })
                        })
                    })
                    .collect();
                rows.push(row);
            }
            game.succ.push(rows);
            x += 1;
        }
        let n = game.positions.len();
        let mut win = vec![true; n];
        loop {
            let mut changed = false;
            for f in 0..n {
                if win[f] && !game.succ[f].iter().any(|row| row.iter().all(|s| s.is_some_and(|g| win[g]))) {
                    win[f] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        game.choice = (0..n)
            .map(|f| {
                outputs
                    .letters()
                    .find(|o| win[f] && game.succ[f][o.index()].iter().all(|s| s.is_some_and(|g| win[g])))
            })
            .collect();
        game.winning = win;
        Ok(Some(game))
    }

    pub fn won(&self) -> bool {
        self.initial_safe && self.winning[0]
    }

    /// The machine following the least safe output in every reachable position.
    pub fn strategy(&self) -> Option<Moore> {
        if !self.won() {
            return None;
        }
        let mut order = vec![0];
        let mut rename: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        let mut labels = Vec::new();
        let mut trans = Vec::new();
        let mut x = 0;
        while x < order.len() {
            let f = order[x];
            let o = self.choice[f].expect("winning position has a safe output");
            labels.push(o);
            let row = self.succ[f][o.index()]
                .iter()
                .map(|s| {
                    let g = s.expect("safe successor");
                    let next = order.len();
                    *rename.entry(g).or_insert_with(|| {
                        order.push(g);
                        next
                    })
                })
                .collect();
            trans.push(row);
            x += 1;
        }
        Some(Moore {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            initial: 0,
            labels,
            trans,
        })
    }

    /// CNF whose models are the winning strategies: `w_f` marks winning positions,
    /// `c_{f,o}` the outputs allowed at `f`.
    pub fn to_dimacs(&self) -> String {
        let n = self.positions.len();
        let outs = self.outputs.letter_count();
        let w = |f: usize| f as i64 + 1;
        let c = |f: usize, o: usize| (n + f * outs + o) as i64 + 1;
        let mut clauses: Vec<Vec<i64>> = Vec::new();
        if !self.initial_safe {
            clauses.push(vec![]);
        } else {
            clauses.push(vec![w(0)]);
            for f in 0..n {
                let mut pick = vec![-w(f)];
                pick.extend((0..outs).map(|o| c(f, o)));
                clauses.push(pick);
                for o in 0..outs {
                    for s in &self.succ[f][o] {
                        match s {
                            Some(g) => clauses.push(vec![-c(f, o), w(*g)]),
                            None => clauses.push(vec![-c(f, o)]),
                        }
                    }
                }
            }
        }
        let mut s = String::new();
        let _ = writeln!(s, "c counting safety game, bound {}", self.k);
        let _ = writeln!(s, "p cnf {} {}", n + n * outs, clauses.len());
        for cl in clauses {
            for lit in cl {
                let _ = write!(s, "{lit} ");
            }
            s.push_str("0\n");
        }
        s
    }
}

/// Exhaustive search for a machine with at most `n` states whose product with `u`
/// never reaches more than `k` rejecting visits. States are created in breadth-first
/// order, labels and targets are tried in increasing order.
fn search(u: &Universal, letters: &LetterTable, inputs: &Alphabet, outputs: &Alphabet, n: usize, k: usize) -> Option<Moore> {
    struct Search<'a> {
        u: &'a Universal,
        letters: &'a LetterTable,
        inputs: Vec<Letter>,
        outputs: Vec<Letter>,
        n: usize,
        k: usize,
        labels: Vec<Letter>,
        trans: Vec<Vec<usize>>,
    }

    impl Search<'_> {
        /// Propagates counters from `t` along all decided edges; false once a counter
        /// exceeds the bound.
        fn propagate(&self, lam: &mut [Counters], t: usize) -> bool {
            let mut work = vec![t];
            while let Some(s) = work.pop() {
                let Some(row) = self.trans.get(s) else { continue };
                for (x, &target) in row.iter().enumerate() {
                    let Some(g) = step(self.u, &lam[s], self.letters.get(self.labels[s], self.inputs[x]), self.k) else {
                        return false;
                    };
                    if join_into(&mut lam[target], &g) {
                        work.push(target);
                    }
                }
            }
            true
        }

        fn go(&mut self, lam: &mut Vec<Counters>, t: usize, x: usize, used: usize) -> bool {
            if t == used {
                return true;
            }
            if x == 0 && self.labels.len() == t {
                for o in self.outputs.clone() {
                    self.labels.push(o);
                    self.trans.push(Vec::new());
                    if self.go(lam, t, 0, used) {
                        return true;
                    }
                    self.labels.pop();
                    self.trans.pop();
                }
                return false;
            }
            if x == self.inputs.len() {
                return self.go(lam, t + 1, 0, used);
            }
            let limit = (used + 1).min(self.n);
            for t2 in 0..limit {
                let mut next = lam.clone();
                self.trans[t].push(t2);
                if self.propagate(&mut next, t) && self.go(&mut next, t, x + 1, used.max(t2 + 1)) {
                    *lam = next;
                    return true;
                }
                self.trans[t].pop();
            }
            false
        }
    }

    let mut f0 = vec![-1i16; u.len()];
    f0[u.initial] = i16::from(u.rejecting[u.initial]);
    if f0[u.initial] as usize > k {
        return None;
    }
    let mut lam = vec![vec![-1i16; u.len()]; n];
    lam[0] = f0;
    let mut s = Search {
        u,
        letters,
        inputs: inputs.letters().collect(),
        outputs: outputs.letters().collect(),
        n,
        k,
        labels: Vec::new(),
        trans: Vec::new(),
    };
    if !s.go(&mut lam, 0, 0, 1) {
        return None;
    }
    Some(Moore {
        inputs: inputs.clone(),
        outputs: outputs.clone(),
        initial: 0,
        labels: s.labels,
        trans: s.trans,
    })
}

/// Positions explored before the counting game gives way to the direct search.
pub const GAME_CAP: usize = 200_000;

/// A machine with at most `machine_bound` states accepted by `u`, if one exists whose
/// runs see at most `k` rejecting visits.
pub fn bounded_synthesize(u: &Universal, inputs: &Alphabet, outputs: &Alphabet, machine_bound: usize, k: usize) -> Result<Option<Moore>> {
    let game = CountingGame::solve(u, inputs, outputs, k, GAME_CAP)?;
    let result = bounded_with(u, inputs, outputs, machine_bound, k, game.as_ref())?;
    Ok(result)
}

fn bounded_with(
    u: &Universal,
    inputs: &Alphabet,
    outputs: &Alphabet,
    machine_bound: usize,
    k: usize,
    game: Option<&CountingGame>,
) -> Result<Option<Moore>> {
    if machine_bound == 0 {
        return Ok(None);
    }
    let letters = LetterTable::new(u, inputs, outputs)?;
    let found = match game {
        Some(g) if !g.won() => None,
        Some(g) => {
            let m = g.strategy().expect("won game has a strategy").minimize();
            if m.len() <= machine_bound {
                Some(m)
            } else {
                search(u, &letters, inputs, outputs, machine_bound, k).map(|m| m.minimize())
            }
        }
        None => search(u, &letters, inputs, outputs, machine_bound, k).map(|m| m.minimize()),
    };
    if let Some(m) = &found {
        let mc = uca_model_check(u, m)?;
        assert!(mc.holds, "synthesized machine fails model checking");
    }
    Ok(found)
}

/// Iterative deepening order over machine size and counter bound.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Schedule {
    pub machine_bounds: Vec<usize>,
    pub counter_bounds: Vec<usize>,
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule {
            machine_bounds: vec![1, 2, 3, 4],
            counter_bounds: vec![1, 2, 4, 8],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Attempt {
    pub machine_bound: usize,
    pub counter_bound: usize,
    pub found: bool,
}

#[derive(Clone, Debug)]
pub struct Synthesis {
    pub machine: Option<Moore>,
    pub attempts: Vec<Attempt>,
}

/// Runs the schedule in order and stops at the first machine found.
pub fn synthesize(u: &Universal, inputs: &Alphabet, outputs: &Alphabet, schedule: &Schedule) -> Result<Synthesis> {
    let mut games: HashMap<usize, Option<CountingGame>> = HashMap::new();
    let mut attempts = Vec::new();
    for &m in &schedule.machine_bounds {
        for &k in &schedule.counter_bounds {
            let game = match games.entry(k) {
                Entry::Occupied(e) => e.into_mut(),
                Entry::Vacant(e) => e.insert(CountingGame::solve(u, inputs, outputs, k, GAME_CAP)?),
            };
            let found = bounded_with(u, inputs, outputs, m, k, game.as_ref())?;
            attempts.push(Attempt {
                machine_bound: m,
                counter_bound: k,
                found: found.is_some(),
            });
            if found.is_some() {
                return Ok(Synthesis { machine: found, attempts });
            }
        }
    }
    Ok(Synthesis { machine: None, attempts })
}

#[derive(Clone, Debug)]
pub struct DdSynthesis {
    pub automaton: Universal,
    pub sizes: DdSizes,
    pub synthesis: Synthesis,
}

/// A delay-dominant strategy for `process`, found by bounded synthesis on its
/// delay-dominance automaton.
pub fn synthesize_dd(phi: &Ltl, arch: &Architecture, process: &str, schedule: &Schedule) -> Result<DdSynthesis> {
    let p = arch.process(process)?;
    let dd = build_dd_uca(phi, p)?;
    let synthesis = synthesize(&dd.uca, &p.inputs, &p.outputs, schedule)?;
    Ok(DdSynthesis {
        automaton: dd.uca,
        sizes: dd.sizes,
        synthesis,
    })
}
