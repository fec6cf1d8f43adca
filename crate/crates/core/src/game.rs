//! Two-player turn-based games on finite arenas and a Büchi solver.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Arena {
    owner: Vec<Player>,
    succ: Vec<Vec<usize>>,
}

impl Arena {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, owner: Player) -> usize {
        self.owner.push(owner);
        self.succ.push(Vec::new());
        self.owner.len() - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
        }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }
}

/// Winner of every node, and a positional choice for each node owned by its winner.
#[derive(Clone, Debug)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub strategy: Vec<Option<usize>>,
}

impl Solution {
    /// The play from `start` when each player follows its strategy where it has one
    /// and otherwise takes the first successor. Returns the node sequence and the
    /// index where the final cycle begins.
    pub fn play(&self, arena: &Arena, start: usize) -> (Vec<usize>, usize) {
        let mut seen = vec![usize::MAX; arena.len()];
        let mut seq = Vec::new();
        let mut v = start;
        while seen[v] == usize::MAX {
            seen[v] = seq.len();
            seq.push(v);
            v = self.strategy[v].unwrap_or(arena.successors(v)[0]);
        }
        (seq, seen[v])
    }
}

/// Nodes from which `player` can force a visit to `target` within the `alive` subgame.
fn attractor(
    arena: &Arena,
    pred: &[Vec<usize>],
    alive: &[bool],
    target: &[bool],
    player: Player,
) -> (Vec<bool>, Vec<Option<usize>>) {
    let n = arena.len();
    let mut inside = vec![false; n];
    let mut strategy = vec![None; n];
    let mut count: Vec<usize> = (0..n)
        .map(|v| arena.succ[v].iter().filter(|&&w| alive[w]).count())
        .collect();
    let mut queue: Vec<usize> = (0..n).filter(|&v| alive[v] && target[v]).collect();
    for &v in &queue {
        inside[v] = true;
    }
    while let Some(u) = queue.pop() {
        for &p in &pred[u] {
            if !alive[p] || inside[p] {
                continue;
            }
            if arena.owner[p] == player {
                inside[p] = true;
                strategy[p] = Some(u);
                queue.push(p);
            } else {
                count[p] -= 1;
                if count[p] == 0 {
                    inside[p] = true;
                    queue.push(p);
                }
            }
        }
    }
    (inside, strategy)
}

/// Solves the game where `buchi` wins plays visiting `target` infinitely often.
/// A player who cannot move loses.
pub fn solve_buchi(arena: &Arena, target: &[bool], buchi: Player) -> Solution {
    let n0 = arena.len();
    let mut g = arena.clone();
    let mut target = target.to_vec();
    // dead ends lose for their owner: route them into a sink won by the opponent
    let mut sink_for = [None, None];
    for v in 0..n0 {
        if g.succ[v].is_empty() {
            let loser = g.owner[v];
            let slot = loser as usize;
            let s = *sink_for[slot].get_or_insert_with(|| {
                let s = g.add_node(loser);
                g.succ[s].push(s);
                target.push(loser != buchi);
                s
            });
            g.succ[v].push(s);
        }
    }
    let n = g.len();
    let mut pred = vec![Vec::new(); n];
    for v in 0..n {
        for &w in &g.succ[v] {
            pred[w].push(v);
        }
    }
    let other = buchi.opponent();
    let mut winner = vec![buchi; n];
    let mut strategy = vec![None; n];
    let mut alive = vec![true; n];
    loop {
        let goal: Vec<bool> = (0..n).map(|v| alive[v] && target[v]).collect();
        let (attr, attr_strategy) = attractor(&g, &pred, &alive, &goal, buchi);
        let trap: Vec<bool> = (0..n).map(|v| alive[v] && !attr[v]).collect();
        if !trap.iter().any(|&t| t) {
            for v in (0..n).filter(|&v| alive[v] && g.owner[v] == buchi) {
                strategy[v] = if goal[v] {
                    g.succ[v].iter().copied().find(|&w| alive[w])
                } else {
                    attr_strategy[v]
                };
            }
            break;
        }
        let (lost, lost_strategy) = attractor(&g, &pred, &alive, &trap, other);
        for v in (0..n).filter(|&v| lost[v]) {
            winner[v] = other;
            if g.owner[v] == other {
                strategy[v] = if trap[v] {
                    g.succ[v].iter().copied().find(|&w| trap[w])
                } else {
                    lost_strategy[v]
                };
            }
        }
        for v in 0..n {
            if lost[v] {
                alive[v] = false;
            }
        }
    }
    winner.truncate(n0);
    strategy.truncate(n0);
    for s in strategy.iter_mut() {
        if s.is_some_and(|w| w >= n0) {
            *s = None;
        }
    }
    Solution { winner, strategy }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arena(owners: &[Player], edges: &[(usize, usize)]) -> Arena {
        let mut a = Arena::new();
        for &o in owners {
            a.add_node(o);
        }
        for &(u, v) in edges {
            a.add_edge(u, v);
        }
        a
    }

    #[test]
    fn simple_buchi() {
        use Player::*;
        // 0 (Zero) can loop on the target 1 or escape to the sink 2
        let a = arena(&[Zero, One, Zero], &[(0, 1), (0, 2), (1, 0), (2, 2)]);
        let s = solve_buchi(&a, &[false, true, false], Zero);
        assert_eq!(s.winner, vec![Zero, Zero, One]);
        assert_eq!(s.strategy[0], Some(1));
        // if the opponent owns 0 it escapes
        let b = arena(&[One, One, Zero], &[(0, 1), (0, 2), (1, 0), (2, 2)]);
        let s = solve_buchi(&b, &[false, true, false], Zero);
        assert_eq!(s.winner, vec![One, One, One]);
    }

    #[test]
    fn dead_ends_lose() {
        use Player::*;
        let a = arena(&[Zero, One], &[]);
        let s = solve_buchi(&a, &[true, false], Zero);
        assert_eq!(s.winner, vec![One, Zero]);
    }

    /// Winner by brute force over positional strategies of the Büchi player,
    /// with the opponent searching for a reachable cycle avoiding the target.
    /// Assumes the Büchi player has no dead ends.
    fn brute_force(a: &Arena, target: &[bool], start: usize) -> Player {
        let n = a.len();
        let mine: Vec<usize> = (0..n).filter(|&v| a.owner(v) == Player::Zero).collect();
        let mut choice = vec![0usize; mine.len()];
        loop {
            let mut succ: Vec<Vec<usize>> = (0..n).map(|v| a.successors(v).to_vec()).collect();
            for (k, &v) in mine.iter().enumerate() {
                succ[v] = vec![a.successors(v)[choice[k]]];
            }
            let reach = crate::graph::reachable(&succ, &[start]);
            let sub: Vec<Vec<usize>> = (0..n)
                .map(|v| {
                    if reach[v] && !target[v] {
                        succ[v].iter().copied().filter(|&w| !target[w]).collect()
                    } else {
                        Vec::new()
                    }
                })
                .collect();
            let avoid = crate::graph::on_cycle(&sub).iter().enumerate().any(|(v, &c)| c && reach[v] && !target[v]);
            if !avoid {
                return Player::Zero;
            }
            let mut k = 0;
            loop {
                if k == mine.len() {
                    return Player::One;
                }
                choice[k] += 1;
                if choice[k] < a.successors(mine[k]).len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }

    proptest! {
        #[test]
        fn agrees_with_strategy_enumeration(
            owners in prop::collection::vec(any::<bool>(), 1..6),
            edges in prop::collection::vec((0usize..6, 0usize..6), 0..14),
            target in prop::collection::vec(any::<bool>(), 6),
        ) {
            let n = owners.len();
            let own: Vec<Player> = owners.iter().map(|&b| if b { Player::Zero } else { Player::One }).collect();
            let e: Vec<(usize, usize)> = edges.into_iter().filter(|&(u, v)| u < n && v < n).collect();
            let a = arena(&own, &e);
            if (0..n).any(|v| a.owner(v) == Player::Zero && a.successors(v).is_empty()) {
                return Ok(());
            }
            let s = solve_buchi(&a, &target[..n], Player::Zero);
            for v in 0..n {
                prop_assert_eq!(s.winner[v], brute_force(&a, &target[..n], v));
            }
        }
    }
}
