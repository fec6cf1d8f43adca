//! Positive Boolean formulas over automaton states in disjunctive normal form.
//!
//! A [`Dnf`] is a set of clauses, each clause a set of states read as a
//! conjunction. The canonical form keeps clauses sorted, drops duplicates and
//! drops every clause that is a superset of another one, so two formulas are
//! equivalent exactly when their canonical forms are equal.

use serde::Serialize;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Dnf(Vec<Vec<usize>>);

impl Dnf {
    pub fn falsity() -> Dnf {
        Dnf(Vec::new())
    }

    pub fn truth() -> Dnf {
        Dnf(vec![Vec::new()])
    }

    pub fn state(q: usize) -> Dnf {
        Dnf(vec![vec![q]])
    }

    /// A single conjunctive clause.
    pub fn all_of<I: IntoIterator<Item = usize>>(states: I) -> Dnf {
        Dnf::from_clauses([states.into_iter().collect::<Vec<_>>()])
    }

    /// Disjunction of single states.
    pub fn any_of<I: IntoIterator<Item = usize>>(states: I) -> Dnf {
        Dnf::from_clauses(states.into_iter().map(|q| vec![q]))
    }

    pub fn from_clauses<I: IntoIterator<Item = Vec<usize>>>(clauses: I) -> Dnf {
        let mut cs: Vec<Vec<usize>> = clauses
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c.dedup();
                c
            })
            .collect();
        cs.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        cs.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::with_capacity(cs.len());
        for c in cs {
            if !kept.iter().any(|k| is_subset(k, &c)) {
                kept.push(c);
            }
        }
        kept.sort_unstable();
        Dnf(kept)
    }

    pub fn clauses(&self) -> &[Vec<usize>] {
        &self.0
    }

    pub fn is_false(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_true(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_empty()
    }

    pub fn states(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().flatten().copied()
    }

    pub fn or(&self, other: &Dnf) -> Dnf {
        Dnf::from_clauses(self.0.iter().chain(&other.0).cloned())
    }

    pub fn and(&self, other: &Dnf) -> Dnf {
        let mut out = Vec::with_capacity(self.0.len() * other.0.len());
        for a in &self.0 {
            for b in &other.0 {
                out.push(merge(a, b));
            }
        }
        Dnf::from_clauses(out)
    }

    pub fn or_all<'a, I: IntoIterator<Item = &'a Dnf>>(items: I) -> Dnf {
        Dnf::from_clauses(items.into_iter().flat_map(|d| d.0.iter().cloned()))
    }

    pub fn and_all<'a, I: IntoIterator<Item = &'a Dnf>>(items: I) -> Dnf {
        items.into_iter().fold(Dnf::truth(), |acc, d| acc.and(d))
    }

    /// Swaps conjunction and disjunction and returns the result in canonical DNF.
    pub fn dual(&self) -> Dnf {
        Dnf::and_all(self.0.iter().map(|c| Dnf::any_of(c.iter().copied())).collect::<Vec<_>>().iter())
    }

    pub fn map_states(&self, f: impl Fn(usize) -> usize) -> Dnf {
        Dnf::from_clauses(self.0.iter().map(|c| c.iter().map(|&q| f(q)).collect()))
    }

    /// Truth value under the assignment "exactly the states in `set` hold".
    pub fn holds(&self, set: impl Fn(usize) -> bool) -> bool {
        self.0.iter().any(|c| c.iter().all(|&q| set(q)))
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut j = 0;
    for &x in small {
        while j < big.len() && big[j] < x {
            j += 1;
        }
        if j == big.len() || big[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
