//! Propositions, letters as bit sets over them, and ultimately periodic words.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A letter: the set of propositions that hold, as a bit mask over an [`Alphabet`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter(pub u32);

impl Letter {
    pub const EMPTY: Letter = Letter(0);

    pub fn contains(self, prop: usize) -> bool {
        self.0 >> prop & 1 == 1
    }

    pub fn with(self, prop: usize) -> Letter {
        Letter(self.0 | 1 << prop)
    }

    pub fn union(self, other: Letter) -> Letter {
        Letter(self.0 | other.0)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered, duplicate-free list of proposition names.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    props: Vec<String>,
}

impl Alphabet {
    pub const MAX_PROPS: usize = 16;

    pub fn new<I, S>(props: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for p in props {
            let p = p.into();
            if out.contains(&p) {
                return Err(Error::DuplicateProp(p));
            }
            out.push(p);
        }
        if out.len() > Self::MAX_PROPS {
            return Err(Error::AlphabetMismatch(format!(
                "at most {} propositions supported",
                Self::MAX_PROPS
            )));
        }
        Ok(Alphabet { props: out })
    }

    /// Parses a whitespace or comma separated list of names.
    pub fn parse_list(text: &str) -> Result<Self> {
        Self::new(
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty()),
        )
    }

    pub fn props(&self) -> &[String] {
        &self.props
    }

    pub fn len(&self) -> usize {
        self.props.len()
    }

    pub fn is_empty(&self) -> bool {
        self.props.is_empty()
    }

    pub fn letter_count(&self) -> usize {
        1 << self.props.len()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.letter_count() as u32).map(Letter)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.props.iter().position(|p| p == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    pub fn full(&self) -> Letter {
        Letter((1u32 << self.props.len()) - 1)
    }

    /// True when both alphabets name the same propositions, in any order.
    pub fn same_set(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.props.iter().all(|p| other.contains(p))
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.props.iter().all(|p| other.contains(p))
    }

    pub fn union(&self, other: &Alphabet) -> Result<Alphabet> {
        let mut props = self.props.clone();
        for p in &other.props {
            if !props.contains(p) {
                props.push(p.clone());
            }
        }
        Alphabet::new(props)
    }

    pub fn minus(&self, other: &Alphabet) -> Alphabet {
        Alphabet {
            props: self
                .props
                .iter()
                .filter(|p| !other.contains(p))
                .cloned()
                .collect(),
        }
    }

    pub fn intersect(&self, other: &Alphabet) -> Alphabet {
        Alphabet {
            props: self
                .props
                .iter()
                .filter(|p| other.contains(p))
                .cloned()
                .collect(),
        }
    }

    /// Mask of the propositions of `self` that also occur in `other`.
    pub fn mask_of(&self, other: &Alphabet) -> Letter {
        let mut l = Letter::EMPTY;
        for (i, p) in self.props.iter().enumerate() {
            if other.contains(p) {
                l = l.with(i);
            }
        }
        l
    }

    /// Position of each of our propositions in `target`, if present there.
    pub fn embedding(&self, target: &Alphabet) -> Vec<Option<usize>> {
        self.props.iter().map(|p| target.index_of(p)).collect()
    }

    /// Maps a letter along an embedding; propositions without image are dropped.
    pub fn map_letter(letter: Letter, embedding: &[Option<usize>]) -> Letter {
        let mut out = Letter::EMPTY;
        for (i, to) in embedding.iter().enumerate() {
            if let Some(j) = to {
                if letter.contains(i) {
                    out = out.with(*j);
                }
            }
        }
        out
    }

    pub fn letter_from_names<'a, I>(&self, names: I) -> Result<Letter>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut l = Letter::EMPTY;
        for n in names {
            let i = self
                .index_of(n)
                .ok_or_else(|| Error::UnknownAtom(n.to_string()))?;
            l = l.with(i);
        }
        Ok(l)
    }

    pub fn names_of(&self, letter: Letter) -> Vec<&str> {
        self.props
            .iter()
            .enumerate()
            .filter(|(i, _)| letter.contains(*i))
            .map(|(_, p)| p.as_str())
            .collect()
    }

    pub fn format_letter(&self, letter: Letter) -> String {
        format!("{{{}}}", self.names_of(letter).join(","))
    }

    /// Parses `{a,b}` or `{}`.
    pub fn parse_letter(&self, text: &str) -> Result<Letter> {
        let t = text.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Syntax {
                pos: 0,
                expected: "letter `{...}`".into(),
                found: t.to_string(),
            })?;
        self.letter_from_names(
            inner
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty()),
        )
    }

    /// Parses a sequence of letters such as `{a} {} {a,b}`.
    pub fn parse_letters(&self, text: &str) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        let mut rest = text.trim_start();
        let mut pos = text.len() - rest.len();
        while !rest.is_empty() {
            if !rest.starts_with('{') {
                return Err(Error::Syntax {
                    pos,
                    expected: "`{`".into(),
                    found: rest.chars().next().unwrap().to_string(),
                });
            }
            let close = rest.find('}').ok_or_else(|| Error::Syntax {
                pos,
                expected: "`}`".into(),
                found: "end of input".into(),
            })?;
            out.push(self.parse_letter(&rest[..=close])?);
            let after = &rest[close + 1..];
            let trimmed = after.trim_start();
            pos += close + 1 + after.len() - trimmed.len();
            rest = trimmed;
        }
        Ok(out)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.props.join(" "))
    }
}

/// The ultimately periodic word `prefix · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LassoWord {
    alphabet: Alphabet,
    prefix: Vec<Letter>,
    cycle: Vec<Letter>,
}

impl LassoWord {
    pub fn new(alphabet: Alphabet, prefix: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Syntax {
                pos: 0,
                expected: "nonempty loop".into(),
                found: "empty loop".into(),
            });
        }
        let full = alphabet.full();
        if prefix.iter().chain(&cycle).any(|l| l.0 & !full.0 != 0) {
            return Err(Error::AlphabetMismatch(
                "letter uses propositions outside the alphabet".into(),
            ));
        }
        Ok(LassoWord {
            alphabet,
            prefix,
            cycle,
        })
    }

    /// Parses `l1 l2 ... $ k1 k2 ...`.
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let (pre, cyc) = text.split_once('$').ok_or_else(|| Error::Syntax {
            pos: text.len(),
            expected: "`$` separating prefix and loop".into(),
            found: "end of input".into(),
        })?;
        let prefix = alphabet.parse_letters(pre)?;
        let cycle = alphabet.parse_letters(cyc)?;
        LassoWord::new(alphabet.clone(), prefix, cycle)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn prefix(&self) -> &[Letter] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn cycle_len(&self) -> usize {
        self.cycle.len()
    }

    /// Number of distinct positions in the folded representation.
    pub fn len(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Folded position following `pos`.
    pub fn successor(&self, pos: usize) -> usize {
        if pos + 1 < self.len() {
            pos + 1
        } else {
            self.prefix.len()
        }
    }

    /// Folded position of absolute time `i`.
    pub fn fold(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            i
        } else {
            self.prefix.len() + (i - self.prefix.len()) % self.cycle.len()
        }
    }

    /// Letter at absolute time `i`.
    pub fn letter_at(&self, i: usize) -> Letter {
        let f = self.fold(i);
        if f < self.prefix.len() {
            self.prefix[f]
        } else {
            self.cycle[f - self.prefix.len()]
        }
    }

    /// Same word with a longer prefix and/or a loop unrolled to a multiple of its length.
    pub fn reshape(&self, prefix_len: usize, cycle_len: usize) -> LassoWord {
        assert!(prefix_len >= self.prefix.len());
        assert!(cycle_len > 0 && cycle_len.is_multiple_of(self.cycle.len()));
        LassoWord {
            alphabet: self.alphabet.clone(),
            prefix: (0..prefix_len).map(|i| self.letter_at(i)).collect(),
            cycle: (prefix_len..prefix_len + cycle_len)
                .map(|i| self.letter_at(i))
                .collect(),
        }
    }

    /// Re-expresses the word over `target`: shared propositions keep their values,
    /// propositions missing from `self` are false, others are dropped.
    pub fn restrict(&self, target: &Alphabet) -> LassoWord {
        let emb = self.alphabet.embedding(target);
        let map = |ls: &[Letter]| ls.iter().map(|&l| Alphabet::map_letter(l, &emb)).collect();
        LassoWord {
            alphabet: target.clone(),
            prefix: map(&self.prefix),
            cycle: map(&self.cycle),
        }
    }

    /// Like [`LassoWord::restrict`] but requires the same proposition set.
    pub fn reorder(&self, target: &Alphabet) -> Result<LassoWord> {
        if !self.alphabet.same_set(target) {
            return Err(Error::AlphabetMismatch(format!(
                "word over [{}], expected [{}]",
                self.alphabet, target
            )));
        }
        Ok(self.restrict(target))
    }

    /// Letter-wise union of two words over disjoint alphabets.
    pub fn zip_union(&self, other: &LassoWord) -> Result<LassoWord> {
        let alphabet = self.alphabet.union(&other.alphabet)?;
        if alphabet.len() != self.alphabet.len() + other.alphabet.len() {
            return Err(Error::AlphabetMismatch(
                "zipped words must use disjoint propositions".into(),
            ));
        }
        let (p, l) = common_shape(self, other);
        let a = self.restrict(&alphabet).reshape(p, l);
        let b = other.restrict(&alphabet).reshape(p, l);
        let join = |x: &[Letter], y: &[Letter]| {
            x.iter().zip(y).map(|(u, v)| u.union(*v)).collect::<Vec<_>>()
        };
        LassoWord::new(
            alphabet,
            join(&a.prefix, &b.prefix),
            join(&a.cycle, &b.cycle),
        )
    }
}

/// Prefix and loop length on which both words can be represented.
pub fn common_shape(a: &LassoWord, b: &LassoWord) -> (usize, usize) {
    let p = a.prefix_len().max(b.prefix_len());
    (p, lcm(a.cycle_len(), b.cycle_len()))
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .prefix
            .iter()
            .map(|&l| self.alphabet.format_letter(l))
            .collect();
        parts.push("$".into());
        parts.extend(self.cycle.iter().map(|&l| self.alphabet.format_letter(l)));
        write!(f, "{}", parts.join(" "))
    }
}
