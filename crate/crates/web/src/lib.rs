//! Browser bindings: each export takes plain text and returns a JSON string, with an
//! `error` field when the input is rejected.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use ddsynth::dd_game::check_pair;
use ddsynth::format::{parse_aca, parse_architecture, parse_moore, print_aca, print_moore};
use ddsynth::synthesis::{synthesize_dd, Schedule};
use ddsynth::translate::ltl_to_aca;
use ddsynth::{parse_ltl, Alphabet, Alternating, LassoWord};

fn respond(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn graph(a: &Alternating) -> Value {
    let edges: Vec<[usize; 2]> = a
        .state_graph()
        .iter()
        .enumerate()
        .flat_map(|(q, s)| s.iter().map(move |&t| [q, t]))
        .collect();
    json!({ "names": a.names, "marked": a.marked, "initial": a.initial, "edges": edges })
}

pub fn translate_json(ltl: &str, props: &str) -> Result<Value, String> {
    let ab = Alphabet::parse_list(props).map_err(|e| e.to_string())?;
    let f = parse_ltl(ltl, &ab).map_err(|e| e.to_string())?;
    let a = ltl_to_aca(&f, &ab).map_err(|e| e.to_string())?;
    Ok(json!({ "text": print_aca(&a), "graph": graph(&a) }))
}

pub fn check_pair_json(aca: &str, dominant: &str, alternative: &str, gamma: &str) -> Result<Value, String> {
    let a = parse_aca(aca).map_err(|e| format!("automaton: {e}"))?;
    let s = parse_moore(dominant).map_err(|e| format!("dominant machine: {e}"))?;
    let t = parse_moore(alternative).map_err(|e| format!("alternative machine: {e}"))?;
    let g = LassoWord::parse(gamma, &s.inputs).map_err(|e| format!("input word: {e}"))?;
    let (game, outcome) = check_pair(&a, &s, &t, &g).map_err(|e| e.to_string())?;
    let report = game.report(&outcome);
    let mut v = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    v["play"] = json!(report.trace_text());
    v["graph"] = graph(&a);
    Ok(v)
}

pub fn synthesize_json(ltl: &str, arch: &str, process: &str) -> Result<Value, String> {
    let arch = parse_architecture(arch).map_err(|e| format!("architecture: {e}"))?;
    let f = parse_ltl(ltl, &arch.system().variables()).map_err(|e| e.to_string())?;
    let out = synthesize_dd(&f, &arch, process, &Schedule::default()).map_err(|e| e.to_string())?;
    Ok(json!({
        "machine": out.synthesis.machine.as_ref().map(print_moore),
        "sizes": out.sizes,
        "attempts": out.synthesis.attempts,
    }))
}

#[wasm_bindgen]
pub fn translate(ltl: &str, props: &str) -> String {
    respond(translate_json(ltl, props))
}

#[wasm_bindgen(js_name = checkPair)]
pub fn check_pair_text(aca: &str, dominant: &str, alternative: &str, gamma: &str) -> String {
    respond(check_pair_json(aca, dominant, alternative, gamma))
}

#[wasm_bindgen]
pub fn synthesize(ltl: &str, arch: &str, process: &str) -> String {
    respond(synthesize_json(ltl, arch, process))
}

/// Text of a bundled example file.
#[wasm_bindgen]
pub fn fixture(name: &str) -> String {
    use ddsynth::fixtures::*;
    match name {
        "messages.aca" => MESSAGES_ACA,
        "bad_prefix.aca" => BAD_PREFIX_ACA,
        "s1.moore" => S1,
        "t1.moore" => T1,
        "a_then_nothing.moore" => A_THEN_NOTHING,
        "never_a.moore" => NEVER_A,
        "messages.arch" => MESSAGES_ARCH,
        "eager.arch" => EAGER_ARCH,
        _ => "",
    }
    .to_string()
}
