//! Plain-text formats for automata, Moore machines and architectures.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, Letter};
use crate::alternating::{Acceptance, Alternating};
use crate::arch::{Architecture, Process};
use crate::dnf::Dnf;
use crate::error::{format_err, Error, Result};
use crate::moore::Moore;
use crate::universal::Universal;

/// Either kind of automaton file.
#[derive(Clone, Debug)]
pub enum AutomatonFile {
    Aca(Alternating),
    Uca(Universal),
}

/// Non-empty lines with comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn field<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.strip_prefix(key)
        .and_then(|r| r.trim_start().strip_prefix(':'))
        .map(str::trim)
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| format_err(line, format!("expected a number, found `{s}`")))
}

fn parse_usizes(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|x| !x.is_empty())
        .map(|x| parse_usize(line, x))
        .collect()
}

/// Letters named by `*` or by one or more `{...}` groups.
fn parse_letter_spec(line: usize, alphabet: &Alphabet, spec: &str) -> Result<Option<Vec<Letter>>> {
    let spec = spec.trim();
    if spec == "*" {
        return Ok(None);
    }
    let ls = alphabet
        .parse_letters(spec)
        .map_err(|e| format_err(line, e.to_string()))?;
    if ls.is_empty() {
        return Err(format_err(line, "missing letter"));
    }
    Ok(Some(ls))
}

fn parse_state_set(line: usize, s: &str) -> Result<Vec<usize>> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| format_err(line, format!("expected `{{...}}`, found `{}`", s.trim())))?;
    parse_usizes(line, inner)
}

fn parse_dnf(line: usize, s: &str) -> Result<Dnf> {
    if s.trim() == "false" {
        return Ok(Dnf::falsity());
    }
    let clauses = s
        .split('|')
        .map(|c| parse_state_set(line, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Dnf::from_clauses(clauses))
}

struct Header {
    props: Option<Alphabet>,
    states: Option<usize>,
    initial: Option<usize>,
    marked: Vec<usize>,
    names: Option<Vec<String>>,
}

/// Parses an `aca` or `uca` file.
pub fn parse_automaton(text: &str) -> Result<AutomatonFile> {
    let mut it = lines(text).peekable();
    let (l0, kind) = it.next().ok_or_else(|| format_err(1, "empty automaton file"))?;
    let is_aca = match kind {
        "aca" => true,
        "uca" => false,
        other => return Err(format_err(l0, format!("expected `aca` or `uca`, found `{other}`"))),
    };
    let mut h = Header {
        props: None,
        states: None,
        initial: None,
        marked: Vec::new(),
        names: None,
    };
    let mut trans: Vec<(usize, usize, Option<Vec<Letter>>, &str)> = Vec::new();
    for (ln, line) in it {
        if let Some(v) = field(line, "props") {
            h.props = Some(Alphabet::parse_list(v).map_err(|e| format_err(ln, e.to_string()))?);
        } else if let Some(v) = field(line, "states") {
            h.states = Some(parse_usize(ln, v)?);
        } else if let Some(v) = field(line, "initial") {
            h.initial = Some(parse_usize(ln, v)?);
        } else if let Some(v) = field(line, "rejecting") {
            h.marked = parse_usizes(ln, v)?;
        } else if let Some(v) = field(line, "names") {
            h.names = Some(v.split_whitespace().map(String::from).collect());
        } else if let Some(rest) = line.strip_prefix("trans") {
            let props = h.props.as_ref().ok_or_else(|| format_err(ln, "`props:` must precede transitions"))?;
            let rest = rest.trim_start();
            let (q, rest) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| format_err(ln, "expected `trans <state> <letter> : <target>`"))?;
            let (spec, rhs) = rest
                .split_once(':')
                .ok_or_else(|| format_err(ln, "missing `:` in transition"))?;
            trans.push((ln, parse_usize(ln, q)?, parse_letter_spec(ln, props, spec)?, rhs));
        } else {
            return Err(format_err(ln, format!("unrecognized line `{line}`")));
        }
    }
    let props = h.props.ok_or_else(|| format_err(l0, "missing `props:`"))?;
    let n = h.states.ok_or_else(|| format_err(l0, "missing `states:`"))?;
    if n == 0 {
        return Err(format_err(l0, "an automaton needs at least one state"));
    }
    let initial = h.initial.ok_or_else(|| format_err(l0, "missing `initial:`"))?;
    let names = h.names.unwrap_or_else(|| {
        (0..n).map(|i| format!("{}{i}", if is_aca { "q" } else { "u" })).collect()
    });
    if names.len() != n {
        return Err(format_err(l0, "`names:` must list one name per state"));
    }
    if initial >= n || h.marked.iter().any(|&q| q >= n) {
        return Err(format_err(l0, "state index out of range"));
    }
    // explicit letters win over `*`
    let letters = props.letter_count();
    let mut table: Vec<Vec<Option<(usize, &str)>>> = vec![vec![None; letters]; n];
    let mut wildcard: Vec<Option<(usize, &str)>> = vec![None; n];
    for &(ln, q, ref spec, rhs) in &trans {
        if q >= n {
            return Err(format_err(ln, format!("state {q} out of range")));
        }
        match spec {
            None => {
                if wildcard[q].replace((ln, rhs)).is_some() {
                    return Err(format_err(ln, format!("second `*` transition for state {q}")));
                }
            }
            Some(ls) => {
                for l in ls {
                    if table[q][l.index()].replace((ln, rhs)).is_some() {
                        return Err(format_err(
                            ln,
                            format!("duplicate transition for state {q} on {}", props.format_letter(*l)),
                        ));
                    }
                }
            }
        }
    }
    let mut marked = vec![false; n];
    for q in h.marked {
        marked[q] = true;
    }
    let cell = |q: usize, l: usize| -> Result<(usize, &str)> {
        table[q][l].or(wildcard[q]).ok_or_else(|| {
            format_err(
                l0,
                format!("missing transition for state {q} on {}", props.format_letter(Letter(l as u32))),
            )
        })
    };
    if is_aca {
        let mut a = Alternating::new(props.clone(), Acceptance::CoBuchi, n);
        a.names = names;
        a.initial = initial;
        a.marked = marked;
        for q in 0..n {
            for l in 0..letters {
                let (ln, rhs) = cell(q, l)?;
                a.delta[q][l] = parse_dnf(ln, rhs)?;
            }
        }
        a.validate().map_err(|e| format_err(l0, e.to_string()))?;
        Ok(AutomatonFile::Aca(a))
    } else {
        let mut u = Universal::new(props.clone(), n);
        u.names = names;
        u.initial = initial;
        u.rejecting = marked;
        for q in 0..n {
            for l in 0..letters {
                let (ln, rhs) = cell(q, l)?;
                let d = parse_dnf(ln, rhs)?;
                u.delta[q][l] = match d.clauses() {
                    [] => Vec::new(),
                    [c] => c.clone(),
                    _ => return Err(format_err(ln, "universal automata take one successor set per letter")),
                };
            }
        }
        u.validate().map_err(|e| format_err(l0, e.to_string()))?;
        Ok(AutomatonFile::Uca(u))
    }
}

pub fn parse_aca(text: &str) -> Result<Alternating> {
    match parse_automaton(text)? {
        AutomatonFile::Aca(a) => Ok(a),
        AutomatonFile::Uca(_) => Err(format_err(1, "expected an `aca` file")),
    }
}

pub fn parse_uca(text: &str) -> Result<Universal> {
    match parse_automaton(text)? {
        AutomatonFile::Uca(u) => Ok(u),
        AutomatonFile::Aca(_) => Err(format_err(1, "expected a `uca` file")),
    }
}

fn default_names(names: &[String], prefix: &str) -> bool {
    names.iter().enumerate().all(|(i, n)| *n == format!("{prefix}{i}"))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn write_header(s: &mut String, kind: &str, alphabet: &Alphabet, n: usize, initial: usize, marked: &[bool], names: &[String], prefix: &str) {
    let _ = writeln!(s, "{kind}");
    let _ = writeln!(s, "props: {alphabet}");
    let _ = writeln!(s, "states: {n}");
    let _ = writeln!(s, "initial: {initial}");
    let _ = writeln!(s, "rejecting: {}", join((0..n).filter(|&q| marked[q])));
    if !default_names(names, prefix) {
        let words: Vec<String> = names
            .iter()
            .map(|n| n.split_whitespace().collect::<Vec<_>>().join("_").replace('#', "_"))
            .collect();
        let _ = writeln!(s, "names: {}", words.join(" "));
    }
}

fn format_dnf(d: &Dnf) -> String {
    if d.is_false() {
        return "false".into();
    }
    d.clauses()
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" | ")
}

/// Prints a co-Büchi automaton; rows whose letters all agree are written with `*`.
pub fn print_aca(a: &Alternating) -> String {
    assert_eq!(a.acceptance, Acceptance::CoBuchi, "only co-Büchi automata have a file format");
    let mut s = String::new();
    write_header(&mut s, "aca", &a.alphabet, a.len(), a.initial, &a.marked, &a.names, "q");
    for q in 0..a.len() {
        let row = &a.delta[q];
        if row.iter().all(|d| *d == row[0]) {
            let _ = writeln!(s, "trans {q} * : {}", format_dnf(&row[0]));
        } else {
            for l in a.alphabet.letters() {
                let _ = writeln!(s, "trans {q} {} : {}", a.alphabet.format_letter(l), format_dnf(&row[l.index()]));
            }
        }
    }
    s
}

pub fn print_uca(u: &Universal) -> String {
    let mut s = String::new();
    write_header(&mut s, "uca", &u.alphabet, u.len(), u.initial, &u.rejecting, &u.names, "u");
    let set = |v: &Vec<usize>| format!("{{{}}}", v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","));
    for q in 0..u.len() {
        let row = &u.delta[q];
        if row.iter().all(|d| *d == row[0]) {
            let _ = writeln!(s, "trans {q} * : {}", set(&row[0]));
        } else {
            for l in u.alphabet.letters() {
                let _ = writeln!(s, "trans {q} {} : {}", u.alphabet.format_letter(l), set(&row[l.index()]));
            }
        }
    }
    s
}

/// Parses a `moore` machine file.
pub fn parse_moore(text: &str) -> Result<Moore> {
    let mut it = lines(text);
    match it.next() {
        Some((_, "moore")) => {}
        Some((ln, other)) => return Err(format_err(ln, format!("expected `moore`, found `{other}`"))),
        None => return Err(format_err(1, "empty machine file")),
    }
    let mut inputs = None;
    let mut outputs = None;
    let mut states = None;
    let mut initial = None;
    let mut labels: BTreeMap<usize, (usize, String)> = BTreeMap::new();
    let mut trans: Vec<(usize, usize, String, usize)> = Vec::new();
    for (ln, line) in it {
        if let Some(v) = field(line, "inputs") {
            inputs = Some(Alphabet::parse_list(v).map_err(|e| format_err(ln, e.to_string()))?);
        } else if let Some(v) = field(line, "outputs") {
            outputs = Some(Alphabet::parse_list(v).map_err(|e| format_err(ln, e.to_string()))?);
        } else if let Some(v) = field(line, "states") {
            states = Some(parse_usize(ln, v)?);
        } else if let Some(v) = field(line, "initial") {
            initial = Some(parse_usize(ln, v)?);
        } else if let Some(rest) = line.strip_prefix("label") {
            let (t, l) = rest
                .split_once(':')
                .ok_or_else(|| format_err(ln, "expected `label <state>: {...}`"))?;
            let t = parse_usize(ln, t)?;
            if labels.insert(t, (ln, l.trim().to_string())).is_some() {
                return Err(format_err(ln, format!("second label for state {t}")));
            }
        } else if let Some(rest) = line.strip_prefix("trans") {
            let (lhs, target) = rest
                .split_once("->")
                .ok_or_else(|| format_err(ln, "expected `trans <state> <letter> -> <state>`"))?;
            let lhs = lhs.trim();
            let (t, spec) = lhs
                .split_once(char::is_whitespace)
                .ok_or_else(|| format_err(ln, "missing letter in transition"))?;
            trans.push((ln, parse_usize(ln, t)?, spec.trim().to_string(), parse_usize(ln, target)?));
        } else {
            return Err(format_err(ln, format!("unrecognized line `{line}`")));
        }
    }
    let inputs = inputs.ok_or_else(|| format_err(1, "missing `inputs:`"))?;
    let outputs = outputs.ok_or_else(|| format_err(1, "missing `outputs:`"))?;
    let n = states.ok_or_else(|| format_err(1, "missing `states:`"))?;
    let initial = initial.ok_or_else(|| format_err(1, "missing `initial:`"))?;
    let mut m = Moore::new(inputs.clone(), outputs.clone(), n)?;
    if initial >= n {
        return Err(format_err(1, "initial state out of range"));
    }
    m.initial = initial;
    for (t, (ln, l)) in labels {
        if t >= n {
            return Err(format_err(ln, format!("state {t} out of range")));
        }
        m.labels[t] = outputs.parse_letter(&l).map_err(|e| format_err(ln, e.to_string()))?;
    }
    let mut set = vec![vec![false; inputs.letter_count()]; n];
    let mut wildcard = vec![None; n];
    for (ln, t, spec, target) in trans {
        if t >= n || target >= n {
            return Err(format_err(ln, "state out of range"));
        }
        match parse_letter_spec(ln, &inputs, &spec)? {
            None => {
                if wildcard[t].replace(target).is_some() {
                    return Err(format_err(ln, format!("second `*` transition for state {t}")));
                }
            }
            Some(ls) => {
                for l in ls {
                    if set[t][l.index()] {
                        return Err(format_err(ln, format!("duplicate transition for state {t}")));
                    }
                    set[t][l.index()] = true;
                    m.trans[t][l.index()] = target;
                }
            }
        }
    }
    for t in 0..n {
        for l in 0..inputs.letter_count() {
            if !set[t][l] {
                m.trans[t][l] = wildcard[t].ok_or_else(|| {
                    format_err(1, format!("missing transition for state {t} on {}", inputs.format_letter(Letter(l as u32))))
                })?;
            }
        }
    }
    Ok(m)
}

pub fn print_moore(m: &Moore) -> String {
    let mut s = String::from("moore\n");
    let _ = writeln!(s, "inputs: {}", m.inputs);
    let _ = writeln!(s, "outputs: {}", m.outputs);
    let _ = writeln!(s, "states: {}", m.len());
    let _ = writeln!(s, "initial: {}", m.initial);
    for t in 0..m.len() {
        let _ = writeln!(s, "label {t}: {}", m.outputs.format_letter(m.labels[t]));
    }
    for t in 0..m.len() {
        let row = &m.trans[t];
        if row.iter().all(|&x| x == row[0]) {
            let _ = writeln!(s, "trans {t} * -> {}", row[0]);
        } else {
            for l in m.inputs.letters() {
                let _ = writeln!(s, "trans {t} {} -> {}", m.inputs.format_letter(l), row[l.index()]);
            }
        }
    }
    s
}

/// Parses an architecture file:
///
/// ```text
/// process p1
/// inputs: m2
/// outputs: m1
/// environment
/// outputs: i
/// ```
pub fn parse_architecture(text: &str) -> Result<Architecture> {
    enum Block {
        None,
        Process(usize),
        Env,
    }
    let mut processes: Vec<Process> = Vec::new();
    let mut env = Alphabet::default();
    let mut block = Block::None;
    for (ln, line) in lines(text) {
        if let Some(name) = line.strip_prefix("process ") {
            let name = name.trim().to_string();
            if processes.iter().any(|p| p.name == name) {
                return Err(format_err(ln, format!("duplicate process `{name}`")));
            }
            processes.push(Process {
                name,
                inputs: Alphabet::default(),
                outputs: Alphabet::default(),
            });
            block = Block::Process(processes.len() - 1);
        } else if line == "environment" {
            block = Block::Env;
        } else {
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| format_err(ln, format!("unrecognized line `{line}`")))?;
            let set = Alphabet::parse_list(value).map_err(|e| format_err(ln, e.to_string()))?;
            match (&block, key.trim()) {
                (Block::Process(i), "inputs") => processes[*i].inputs = set,
                (Block::Process(i), "outputs") => processes[*i].outputs = set,
                (Block::Env, "outputs") => env = set,
                _ => return Err(format_err(ln, format!("unexpected `{}` here", key.trim()))),
            }
        }
    }
    Architecture::new(processes, env)
}

pub fn print_architecture(a: &Architecture) -> String {
    let mut s = String::new();
    for p in &a.processes {
        let _ = writeln!(s, "process {}", p.name);
        let _ = writeln!(s, "inputs: {}", p.inputs);
        let _ = writeln!(s, "outputs: {}", p.outputs);
    }
    if !a.env_outputs.is_empty() {
        let _ = writeln!(s, "environment");
        let _ = writeln!(s, "outputs: {}", a.env_outputs);
    }
    s
}

impl From<Error> for String {
    fn from(e: Error) -> String {
        e.to_string()
    }
}
