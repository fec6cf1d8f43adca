//! Command-line front end: translation, delay-dominance checks and synthesis.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ddsynth::dd_aca::build_dd_aca;
use ddsynth::dd_game::check_pair;
use ddsynth::format::{parse_aca, parse_architecture, parse_moore, parse_uca, print_aca, print_moore, print_uca};
use ddsynth::mh::{aca_to_uca, build_dd_uca, build_dd_uca_from};
use ddsynth::pipeline::compositional_synth;
use ddsynth::synthesis::{synthesize, synthesize_dd, uca_model_check, CountingGame, Schedule, GAME_CAP};
use ddsynth::translate::ltl_to_aca;
use ddsynth::{parse_ltl, Alphabet, Architecture, LassoWord, Ltl, Moore};

const HOLDS: u8 = 0;
const FAILS: u8 = 1;
const EXHAUSTED: u8 = 2;
const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "ddsynth", version, about = "Delay-dominance checking and compositional synthesis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Artifacts {
    /// write a Graphviz rendering of the main graph artifact
    #[arg(long)]
    dot: Option<PathBuf>,
    /// write a JSON report
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// LTL formula to alternating co-Büchi automaton
    Translate {
        #[arg(long)]
        ltl: String,
        /// proposition list, e.g. "a b" or "a,b"
        #[arg(long)]
        props: String,
        /// translate the negation instead
        #[arg(long)]
        negate: bool,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Product automaton accepting delay-dominating computation pairs
    BuildDd {
        #[arg(long)]
        aca: PathBuf,
        #[arg(long)]
        neg_aca: PathBuf,
        #[arg(long)]
        outputs: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Alternating to universal co-Büchi automaton
    ToUca {
        #[arg(long)]
        aca: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Hide all propositions except the kept ones
    Project {
        #[arg(long)]
        uca: PathBuf,
        #[arg(long)]
        keep: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Bounded synthesis of a Moore machine accepted by a universal automaton
    Synth {
        #[arg(long)]
        uca: PathBuf,
        #[arg(long)]
        inputs: String,
        #[arg(long)]
        outputs: String,
        #[arg(long, default_value_t = 4)]
        max_states: usize,
        #[arg(long, default_value_t = 8)]
        max_counter: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// write the counting game constraints for the largest counter bound tried
        #[arg(long)]
        emit_dimacs: Option<PathBuf>,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Synthesize a delay-dominant strategy for one process
    SynthDd {
        #[arg(long)]
        ltl: String,
        #[arg(long)]
        arch: PathBuf,
        #[arg(long)]
        process: String,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Check that a machine is delay-dominant for a process
    CheckDd {
        #[arg(long)]
        ltl: String,
        #[arg(long)]
        arch: PathBuf,
        #[arg(long)]
        process: String,
        #[arg(long)]
        machine: PathBuf,
        /// use this automaton for the specification instead of translating the formula
        #[arg(long)]
        aca: Option<PathBuf>,
        /// automaton for the complement; defaults to the translation of the negated formula
        #[arg(long, requires = "aca")]
        neg_aca: Option<PathBuf>,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Play the delay-dominance game for two machines on one input word
    CheckDdPair {
        #[arg(long)]
        aca: PathBuf,
        #[arg(long)]
        dominant: PathBuf,
        #[arg(long)]
        alt: PathBuf,
        /// input lasso, e.g. "{} {m2} $ {}"
        #[arg(long)]
        gamma: String,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Parallel composition of machines
    Compose {
        #[arg(long, num_args = 1.., required = true)]
        machines: Vec<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Model check a machine against a universal automaton
    Mc {
        #[arg(long)]
        uca: PathBuf,
        #[arg(long)]
        machine: PathBuf,
        #[command(flatten)]
        artifacts: Artifacts,
    },
    /// Full compositional pipeline over an architecture
    Compositional {
        #[arg(long)]
        ltl: String,
        #[arg(long)]
        arch: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[command(flatten)]
        artifacts: Artifacts,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn props(list: &str) -> Result<Alphabet> {
    Ok(Alphabet::parse_list(list)?)
}

fn load_aca(path: &Path) -> Result<ddsynth::Alternating> {
    parse_aca(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_uca(path: &Path) -> Result<ddsynth::Universal> {
    parse_uca(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_moore(path: &Path) -> Result<Moore> {
    parse_moore(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_arch(path: &Path) -> Result<Architecture> {
    parse_architecture(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn system_formula(text: &str, arch: &Architecture) -> Result<Ltl> {
    Ok(parse_ltl(text, &arch.system().variables())?)
}

impl Artifacts {
    fn finish(&self, dot: Option<String>, report: Value) -> Result<()> {
        if let Some(path) = &self.dot {
            match dot {
                Some(d) => write(path, &d)?,
                None => bail!("this command has no graph to export"),
            }
        }
        if let Some(path) = &self.report {
            write(path, &serde_json::to_string_pretty(&report)?)?;
        }
        Ok(())
    }
}

fn states(n: usize) -> String {
    format!("{n} state{}", if n == 1 { "" } else { "s" })
}

fn verdict(holds: bool) -> u8 {
    if holds {
        HOLDS
    } else {
        FAILS
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Translate { ltl, props: list, negate, output, artifacts } => {
            let ab = props(&list)?;
            let f = parse_ltl(&ltl, &ab)?;
            let f = if negate { f.negate_nnf() } else { f };
            let a = ltl_to_aca(&f, &ab)?;
            write(&output, &print_aca(&a))?;
            println!("{}", states(a.len()));
            artifacts.finish(Some(a.to_dot()), json!({ "formula": f.to_string(), "states": a.len() }))?;
            Ok(HOLDS)
        }
        Command::BuildDd { aca, neg_aca, outputs, output, artifacts } => {
            let dd = build_dd_aca(&load_aca(&aca)?, &load_aca(&neg_aca)?, &props(&outputs)?)?;
            write(&output, &print_aca(&dd.automaton))?;
            println!("{} states before pruning, {} reachable", dd.states_before_pruning, dd.automaton.len());
            artifacts.finish(
                Some(dd.automaton.to_dot()),
                json!({ "states_before_pruning": dd.states_before_pruning, "states": dd.automaton.len() }),
            )?;
            Ok(HOLDS)
        }
        Command::ToUca { aca, output, artifacts } => {
            let a = load_aca(&aca)?;
            let u = aca_to_uca(&a).trim();
            write(&output, &print_uca(&u))?;
            println!("{}", states(u.len()));
            artifacts.finish(Some(u.to_dot()), json!({ "input_states": a.len(), "states": u.len() }))?;
            Ok(HOLDS)
        }
        Command::Project { uca, keep, output, artifacts } => {
            let u = load_uca(&uca)?;
            let p = u.project(&props(&keep)?)?.trim();
            write(&output, &print_uca(&p))?;
            println!("{}", states(p.len()));
            artifacts.finish(Some(p.to_dot()), json!({ "input_states": u.len(), "states": p.len() }))?;
            Ok(HOLDS)
        }
        Command::Synth { uca, inputs, outputs, max_states, max_counter, output, emit_dimacs, artifacts } => {
            let u = load_uca(&uca)?;
            let (ins, outs) = (props(&inputs)?, props(&outputs)?);
            let mut counters: Vec<usize> = [1, 2, 4, 8].into_iter().filter(|&k| k < max_counter).collect();
            counters.push(max_counter);
            let schedule = Schedule {
                machine_bounds: (1..=max_states).collect(),
                counter_bounds: counters,
            };
            if let Some(path) = &emit_dimacs {
                match CountingGame::solve(&u, &ins, &outs, max_counter, GAME_CAP)? {
                    Some(g) => write(path, &g.to_dimacs())?,
                    None => bail!("counting game exceeds {GAME_CAP} positions"),
                }
            }
            let s = synthesize(&u, &ins, &outs, &schedule)?;
            let report = json!({ "attempts": s.attempts, "machine_states": s.machine.as_ref().map(Moore::len) });
            match &s.machine {
                Some(m) => {
                    write(&output, &print_moore(m))?;
                    println!("machine with {}", states(m.len()));
                    artifacts.finish(Some(m.to_dot()), report)?;
                    Ok(HOLDS)
                }
                None => {
                    println!("no machine within the bounds");
                    artifacts.finish(None, report)?;
                    Ok(EXHAUSTED)
                }
            }
        }
        Command::SynthDd { ltl, arch, process, output, artifacts } => {
            let arch = load_arch(&arch)?;
            let phi = system_formula(&ltl, &arch)?;
            let out = synthesize_dd(&phi, &arch, &process, &Schedule::default())?;
            let report = json!({
                "sizes": out.sizes,
                "attempts": out.synthesis.attempts,
                "machine_states": out.synthesis.machine.as_ref().map(Moore::len),
            });
            match &out.synthesis.machine {
                Some(m) => {
                    write(&output, &print_moore(m))?;
                    println!("delay-dominant machine with {}", states(m.len()));
                    artifacts.finish(Some(m.to_dot()), report)?;
                    Ok(HOLDS)
                }
                None => {
                    println!("no machine within the bounds");
                    artifacts.finish(None, report)?;
                    Ok(EXHAUSTED)
                }
            }
        }
        Command::CheckDd { ltl, arch, process, machine, aca, neg_aca, artifacts } => {
            let arch = load_arch(&arch)?;
            let p = arch.process(&process)?;
            let phi = system_formula(&ltl, &arch)?;
            let m = load_moore(&machine)?;
            let dd = match &aca {
                None => build_dd_uca(&phi, p)?,
                Some(path) => {
                    let a = load_aca(path)?;
                    let neg = match &neg_aca {
                        Some(n) => load_aca(n)?,
                        None => ltl_to_aca(&phi.negate_nnf(), &a.alphabet)?,
                    };
                    build_dd_uca_from(&a, &neg, p)?
                }
            };
            let mc = uca_model_check(&dd.uca, &m)?;
            let cex = mc.counterexample.as_ref().map(LassoWord::to_string);
            if mc.holds {
                println!("delay-dominant");
            } else {
                println!("not delay-dominant");
                println!("counterexample: {}", cex.as_deref().unwrap_or_default());
            }
            artifacts.finish(
                Some(dd.uca.to_dot()),
                json!({ "holds": mc.holds, "counterexample": cex, "sizes": dd.sizes }),
            )?;
            Ok(verdict(mc.holds))
        }
        Command::CheckDdPair { aca, dominant, alt, gamma, artifacts } => {
            let a = load_aca(&aca)?;
            let s = load_moore(&dominant)?;
            let t = load_moore(&alt)?;
            let g = LassoWord::parse(&gamma, &s.inputs)?;
            let (game, outcome) = check_pair(&a, &s, &t, &g)?;
            let report = game.report(&outcome);
            println!("{}", report.verdict);
            println!("positions: {}, edges: {}", report.positions, report.edges);
            println!("play: {}", report.trace_text());
            if let Some(u) = &report.unmatched {
                println!("unmatched rejecting dominant state {} at round {}", u.state, u.round);
            }
            artifacts.finish(Some(game.to_dot(&outcome)), serde_json::to_value(&report)?)?;
            Ok(verdict(outcome.duplicator_wins))
        }
        Command::Compose { machines, output, artifacts } => {
            let mut loaded = machines.iter().map(|p| load_moore(p));
            let first = loaded.next().expect("at least one machine")?;
            let composed = loaded.try_fold(first, |acc, m| -> Result<Moore> { Ok(acc.compose(&m?)?) })?;
            write(&output, &print_moore(&composed))?;
            println!("{}", states(composed.len()));
            artifacts.finish(Some(composed.to_dot()), json!({ "states": composed.len() }))?;
            Ok(HOLDS)
        }
        Command::Mc { uca, machine, artifacts } => {
            let u = load_uca(&uca)?;
            let m = load_moore(&machine)?;
            let mc = uca_model_check(&u, &m)?;
            let cex = mc.counterexample.as_ref().map(LassoWord::to_string);
            println!("{}", if mc.holds { "holds" } else { "fails" });
            if let Some(c) = &cex {
                println!("counterexample: {c}");
            }
            artifacts.finish(None, json!({ "holds": mc.holds, "counterexample": cex }))?;
            Ok(verdict(mc.holds))
        }
        Command::Compositional { ltl, arch, output, artifacts } => {
            let arch = load_arch(&arch)?;
            let phi = system_formula(&ltl, &arch)?;
            let run = compositional_synth(&phi, &arch, &Schedule::default())?;
            fs::create_dir_all(&output).with_context(|| format!("creating {}", output.display()))?;
            for (p, m) in arch.processes.iter().zip(&run.machines) {
                if let Some(m) = m {
                    write(&output.join(format!("{}.moore", p.name)), &print_moore(m))?;
                }
            }
            let report = serde_json::to_value(&run.report)?;
            write(&output.join("report.json"), &serde_json::to_string_pretty(&report)?)?;
            let r = &run.report;
            for p in &r.processes {
                match p.machine_states {
                    Some(n) => println!("{}: delay-dominant machine with {}", p.name, states(n)),
                    None => println!("{}: no machine within the bounds", p.name),
                }
            }
            let Some(composed) = &run.composed else {
                artifacts.finish(None, report)?;
                return Ok(EXHAUSTED);
            };
            write(&output.join("composed.moore"), &print_moore(composed))?;
            let winning = r.composed_winning == Some(true);
            let dominant = r.composed_dd == Some(true);
            println!("composed: {}, delay-dominant: {dominant}, winning: {winning}", states(composed.len()));
            for c in &r.counterexamples {
                println!("counterexample ({c})");
            }
            artifacts.finish(Some(composed.to_dot()), report)?;
            Ok(verdict(winning && dominant))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(INPUT_ERROR);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
