//! Linear temporal logic: syntax tree, parser, negation normal form and
//! exact evaluation on lasso words.

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{Alphabet, LassoWord};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ltl {
    True,
    False,
    Atom(String),
    Not(Box<Ltl>),
    And(Box<Ltl>, Box<Ltl>),
    Or(Box<Ltl>, Box<Ltl>),
    Next(Box<Ltl>),
    Until(Box<Ltl>, Box<Ltl>),
    /// Dual of until; produced by negation normal form.
    Release(Box<Ltl>, Box<Ltl>),
    Eventually(Box<Ltl>),
    Globally(Box<Ltl>),
}

use Ltl::*;

pub fn atom(name: &str) -> Ltl {
    Atom(name.to_string())
}

pub fn not(f: Ltl) -> Ltl {
    Not(Box::new(f))
}

pub fn and(a: Ltl, b: Ltl) -> Ltl {
    And(Box::new(a), Box::new(b))
}

pub fn or(a: Ltl, b: Ltl) -> Ltl {
    Or(Box::new(a), Box::new(b))
}

pub fn next(f: Ltl) -> Ltl {
    Next(Box::new(f))
}

pub fn until(a: Ltl, b: Ltl) -> Ltl {
    Until(Box::new(a), Box::new(b))
}

pub fn release(a: Ltl, b: Ltl) -> Ltl {
    Release(Box::new(a), Box::new(b))
}

pub fn eventually(f: Ltl) -> Ltl {
    Eventually(Box::new(f))
}

pub fn globally(f: Ltl) -> Ltl {
    Globally(Box::new(f))
}

impl Ltl {
    /// Number of syntax tree nodes.
    pub fn size(&self) -> usize {
        match self {
            True | False | Atom(_) => 1,
            Not(f) | Next(f) | Eventually(f) | Globally(f) => 1 + f.size(),
            And(a, b) | Or(a, b) | Until(a, b) | Release(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            True | False => {}
            Atom(a) => {
                out.insert(a.clone());
            }
            Not(f) | Next(f) | Eventually(f) | Globally(f) => f.collect_atoms(out),
            And(a, b) | Or(a, b) | Until(a, b) | Release(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Rewrites `F f` to `true U f` and `G f` to `!(true U !f)`.
    pub fn normalize(&self) -> Ltl {
        match self {
            True | False | Atom(_) => self.clone(),
            Not(f) => not(f.normalize()),
            Next(f) => next(f.normalize()),
            And(a, b) => and(a.normalize(), b.normalize()),
            Or(a, b) => or(a.normalize(), b.normalize()),
            Until(a, b) => until(a.normalize(), b.normalize()),
            Release(a, b) => release(a.normalize(), b.normalize()),
            Eventually(f) => until(True, f.normalize()),
            Globally(f) => not(until(True, not(f.normalize()))),
        }
    }

    /// Negation normal form of `self`.
    pub fn nnf(&self) -> Ltl {
        push(self, false)
    }

    /// Negation normal form of `!self`.
    pub fn negate_nnf(&self) -> Ltl {
        push(self, true)
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            True | False | Atom(_) => true,
            Not(f) => matches!(**f, Atom(_)),
            Next(f) | Eventually(f) | Globally(f) => f.is_nnf(),
            And(a, b) | Or(a, b) | Until(a, b) | Release(a, b) => a.is_nnf() && b.is_nnf(),
        }
    }

    /// Checks that every atom is declared in `props`.
    pub fn check_atoms(&self, props: &Alphabet) -> Result<()> {
        match self.atoms().into_iter().find(|a| !props.contains(a)) {
            Some(a) => Err(Error::UnknownAtom(a)),
            None => Ok(()),
        }
    }

    /// Exact truth value on `prefix · loop^ω` at position 0.
    pub fn eval_lasso(&self, w: &LassoWord) -> Result<bool> {
        self.check_atoms(w.alphabet())?;
        Ok(self.eval_positions(w)[0])
    }

    fn eval_positions(&self, w: &LassoWord) -> Vec<bool> {
        let n = w.len();
        match self {
            True => vec![true; n],
            False => vec![false; n],
            Atom(a) => {
                let i = w.alphabet().index_of(a).expect("checked atom");
                (0..n).map(|k| w.letter_at(k).contains(i)).collect()
            }
            Not(f) => f.eval_positions(w).into_iter().map(|b| !b).collect(),
            And(a, b) => zip(a.eval_positions(w), b.eval_positions(w), |x, y| x && y),
            Or(a, b) => zip(a.eval_positions(w), b.eval_positions(w), |x, y| x || y),
            Next(f) => {
                let v = f.eval_positions(w);
                (0..n).map(|k| v[w.successor(k)]).collect()
            }
            Until(a, b) => fixpoint(w, &a.eval_positions(w), &b.eval_positions(w), false),
            Release(a, b) => fixpoint(w, &a.eval_positions(w), &b.eval_positions(w), true),
            Eventually(f) => fixpoint(w, &vec![true; n], &f.eval_positions(w), false),
            Globally(f) => fixpoint(w, &vec![false; n], &f.eval_positions(w), true),
        }
    }
}

fn zip(x: Vec<bool>, y: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    x.into_iter().zip(y).map(|(a, b)| op(a, b)).collect()
}

/// Least (until) or greatest (release) solution of the one-step unfolding over the folded positions.
fn fixpoint(w: &LassoWord, a: &[bool], b: &[bool], greatest: bool) -> Vec<bool> {
    let n = w.len();
    let mut v = vec![greatest; n];
    loop {
        let mut changed = false;
        for k in (0..n).rev() {
            let later = v[w.successor(k)];
            let x = if greatest {
                b[k] && (a[k] || later)
            } else {
                b[k] || (a[k] && later)
            };
            if x != v[k] {
                v[k] = x;
                changed = true;
            }
        }
        if !changed {
            return v;
        }
    }
}

fn push(f: &Ltl, neg: bool) -> Ltl {
    match (f, neg) {
        (True, false) | (False, true) => True,
        (True, true) | (False, false) => False,
        (Atom(_), false) => f.clone(),
        (Atom(_), true) => not(f.clone()),
        (Not(g), _) => push(g, !neg),
        (And(a, b), false) => and(push(a, false), push(b, false)),
        (And(a, b), true) => or(push(a, true), push(b, true)),
        (Or(a, b), false) => or(push(a, false), push(b, false)),
        (Or(a, b), true) => and(push(a, true), push(b, true)),
        (Next(g), _) => next(push(g, neg)),
        (Until(a, b), false) => until(push(a, false), push(b, false)),
        (Until(a, b), true) => release(push(a, true), push(b, true)),
        (Release(a, b), false) => release(push(a, false), push(b, false)),
        (Release(a, b), true) => until(push(a, true), push(b, true)),
        (Eventually(g), false) => eventually(push(g, false)),
        (Eventually(g), true) => globally(push(g, true)),
        (Globally(g), false) => globally(push(g, false)),
        (Globally(g), true) => eventually(push(g, true)),
    }
}

impl fmt::Display for Ltl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            And(a, b) => write!(f, "{} & {}", a.wrapped(), b.wrapped()),
            Or(a, b) => write!(f, "{} | {}", a.wrapped(), b.wrapped()),
            Until(a, b) => write!(f, "{} U {}", a.wrapped(), b.wrapped()),
            Release(a, b) => write!(f, "{} R {}", a.wrapped(), b.wrapped()),
            _ => write!(f, "{}", self.wrapped()),
        }
    }
}

impl Ltl {
    /// Rendering that is safe as an operand of any operator.
    fn wrapped(&self) -> String {
        match self {
            True => "true".into(),
            False => "false".into(),
            Atom(a) => a.clone(),
            Not(g) => format!("!{}", g.wrapped()),
            Next(g) => format!("X {}", g.wrapped()),
            Eventually(g) => format!("F {}", g.wrapped()),
            Globally(g) => format!("G {}", g.wrapped()),
            _ => format!("({self})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    True,
    False,
    Ident(String),
    Not,
    And,
    Or,
    Next,
    Until,
    Release,
    Eventually,
    Globally,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::End => "end of input".into(),
        Tok::True => "`true`".into(),
        Tok::False => "`false`".into(),
        Tok::Not => "`!`".into(),
        Tok::And => "`&`".into(),
        Tok::Or => "`|`".into(),
        Tok::Next => "`X`".into(),
        Tok::Until => "`U`".into(),
        Tok::Release => "`R`".into(),
        Tok::Eventually => "`F`".into(),
        Tok::Globally => "`G`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len()
                && (chars[j].1.is_ascii_alphanumeric() || chars[j].1 == '_' || chars[j].1 == '\'')
            {
                j += 1;
            }
            let end = if j < chars.len() { chars[j].0 } else { text.len() };
            let word = &text[pos..end];
            let tok = match word {
                "true" => Tok::True,
                "false" => Tok::False,
                "X" => Tok::Next,
                "U" => Tok::Until,
                "R" => Tok::Release,
                "F" => Tok::Eventually,
                "G" => Tok::Globally,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((pos, tok));
            i = j;
            continue;
        }
        return Err(Error::Syntax {
            pos,
            expected: "formula".into(),
            found: format!("`{c}`"),
        });
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    at: usize,
    props: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn fail<T>(&self, expected: &str) -> Result<T> {
        let (pos, tok) = &self.toks[self.at];
        Err(Error::Syntax {
            pos: *pos,
            expected: expected.into(),
            found: describe(tok),
        })
    }

    fn disjunction(&mut self) -> Result<Ltl> {
        let mut f = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.at += 1;
            f = or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Ltl> {
        let mut f = self.binary_temporal()?;
        while *self.peek() == Tok::And {
            self.at += 1;
            f = and(f, self.binary_temporal()?);
        }
        Ok(f)
    }

    fn binary_temporal(&mut self) -> Result<Ltl> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Until => {
                self.at += 1;
                Ok(until(lhs, self.binary_temporal()?))
            }
            Tok::Release => {
                self.at += 1;
                Ok(release(lhs, self.binary_temporal()?))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Ltl> {
        let tok = self.peek().clone();
        let wrap: Option<fn(Ltl) -> Ltl> = match tok {
            Tok::Not => Some(not),
            Tok::Next => Some(next),
            Tok::Eventually => Some(eventually),
            Tok::Globally => Some(globally),
            _ => None,
        };
        if let Some(w) = wrap {
            self.at += 1;
            return Ok(w(self.unary()?));
        }
        match tok {
            Tok::True => {
                self.at += 1;
                Ok(True)
            }
            Tok::False => {
                self.at += 1;
                Ok(False)
            }
            Tok::Ident(name) => {
                if !self.props.contains(&name) {
                    return Err(Error::UnknownAtom(name));
                }
                self.at += 1;
                Ok(Atom(name))
            }
            Tok::LParen => {
                self.at += 1;
                let f = self.disjunction()?;
                if *self.peek() != Tok::RParen {
                    return self.fail("`)`, `&`, `|`, `U` or `R`");
                }
                self.at += 1;
                Ok(f)
            }
            _ => self.fail("`true`, `false`, an atom, `!`, `X`, `F`, `G` or `(`"),
        }
    }
}

/// Parses a formula whose atoms must all be declared in `props`.
pub fn parse_ltl(text: &str, props: &Alphabet) -> Result<Ltl> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
        props,
    };
    let f = p.disjunction()?;
    if *p.peek() != Tok::End {
        return p.fail("`&`, `|`, `U`, `R` or end of input");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn props(names: &[&str]) -> Alphabet {
        Alphabet::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn parses_message_spec() {
        let f = parse_ltl("F m1 & F m2", &props(&["m1", "m2"])).unwrap();
        assert_eq!(f, and(eventually(atom("m1")), eventually(atom("m2"))));
    }

    #[test]
    fn parses_constants_and_disjunction() {
        assert_eq!(parse_ltl("true", &props(&[])).unwrap(), True);
        let f = parse_ltl("G F o | X i", &props(&["o", "i"])).unwrap();
        assert_eq!(f, or(globally(eventually(atom("o"))), next(atom("i"))));
    }

    #[test]
    fn precedence_and_associativity() {
        let p = props(&["a", "b", "c"]);
        assert_eq!(
            parse_ltl("a U b U c", &p).unwrap(),
            until(atom("a"), until(atom("b"), atom("c")))
        );
        assert_eq!(
            parse_ltl("a | b & c", &p).unwrap(),
            or(atom("a"), and(atom("b"), atom("c")))
        );
        assert_eq!(
            parse_ltl("!a U b & c", &p).unwrap(),
            and(until(not(atom("a")), atom("b")), atom("c"))
        );
        assert_eq!(
            parse_ltl("X (a | b)", &p).unwrap(),
            next(or(atom("a"), atom("b")))
        );
    }

    #[test]
    fn reports_errors() {
        let p = props(&["a"]);
        assert_eq!(
            parse_ltl("a & zz", &p),
            Err(Error::UnknownAtom("zz".into()))
        );
        match parse_ltl("a & (a", &p) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("{other:?}"),
        }
        assert!(parse_ltl("a a", &p).is_err());
        assert!(parse_ltl("", &p).is_err());
        assert!(parse_ltl("a # a", &p).is_err());
    }

    #[test]
    fn negation_normal_form() {
        let p = props(&["m1", "o", "i", "a"]);
        let f = parse_ltl("F m1", &p).unwrap();
        assert_eq!(f.negate_nnf(), globally(not(atom("m1"))));
        assert_eq!(atom("a").negate_nnf(), not(atom("a")));
        let g = parse_ltl("G F o | X i", &p).unwrap();
        assert_eq!(
            g.negate_nnf(),
            and(eventually(globally(not(atom("o")))), next(not(atom("i"))))
        );
        assert!(g.negate_nnf().is_nnf());
    }

    #[test]
    fn evaluates_on_lassos() {
        let p = props(&["m1", "m2", "o"]);
        let w = |s: &str| LassoWord::parse(s, &p).unwrap();
        let f = |s: &str| parse_ltl(s, &p).unwrap();
        assert!(f("F m1").eval_lasso(&w("{} $ {m1}")).unwrap());
        assert!(!f("F m1 & F m2").eval_lasso(&w("{} $ {}")).unwrap());
        assert!(!f("G F o").eval_lasso(&w("{o} $ {}")).unwrap());
        assert!(f("G F o").eval_lasso(&w("{} $ {} {o}")).unwrap());
        assert!(f("m1 U m2").eval_lasso(&w("{m1} {m1} $ {m2}")).unwrap());
        assert!(!f("m1 U m2").eval_lasso(&w("{m1} $ {m1}")).unwrap());
        assert!(f("m1 R m2").eval_lasso(&w("$ {m2}")).unwrap());
    }

    #[test]
    fn display_round_trips() {
        let p = props(&["a", "b"]);
        for s in ["a U (b U a)", "(a U b) U a", "!(a & b) | X F G a", "a R !b"] {
            let f = parse_ltl(s, &p).unwrap();
            assert_eq!(parse_ltl(&f.to_string(), &p).unwrap(), f);
        }
    }
}
