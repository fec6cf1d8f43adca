//! Compositional synthesis: one delay-dominant strategy per process, composed and
//! checked against the whole specification.

use std::time::Instant;

use serde::Serialize;

use crate::arch::Architecture;
use crate::error::{Error, Result};
use crate::ltl::Ltl;
use crate::mh::{build_dd_uca, DdSizes};
use crate::moore::Moore;
use crate::synthesis::{synthesize_dd, uca_model_check, Attempt, Schedule};
use crate::translate::{ltl_to_aca, ltl_to_uca};

#[derive(Clone, Debug, Serialize)]
pub struct ProcessReport {
    pub name: String,
    pub sizes: DdSizes,
    pub attempts: Vec<Attempt>,
    pub machine_states: Option<usize>,
    /// the machine is accepted by the delay-dominance automaton of its process
    pub dd_verified: Option<bool>,
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineReport {
    pub formula: String,
    pub formula_automaton_states: usize,
    pub processes: Vec<ProcessReport>,
    pub composed_states: Option<usize>,
    pub system_dd_states: Option<usize>,
    /// composed machine accepted by the delay-dominance automaton of the whole system
    pub composed_dd: Option<bool>,
    /// composed machine satisfies the specification on every input
    pub composed_winning: Option<bool>,
    pub counterexamples: Vec<String>,
    pub seconds: f64,
}

#[derive(Clone, Debug)]
pub struct Pipeline {
    pub machines: Vec<Option<Moore>>,
    pub composed: Option<Moore>,
    pub report: PipelineReport,
}

/// Runs the per-process syntheses in parallel, composes the results and checks the
/// composition.
pub fn compositional_synth(phi: &Ltl, arch: &Architecture, schedule: &Schedule) -> Result<Pipeline> {
    let start = Instant::now();
    arch.require_distributed()?;
    let system = arch.system();
    phi.check_atoms(&system.variables())?;
    let a_phi = ltl_to_aca(phi, &system.variables())?;

    let results: Vec<Result<(Option<Moore>, ProcessReport)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = arch
            .processes
            .iter()
            .map(|p| {
                scope.spawn(move || {
                    let t = Instant::now();
                    let out = synthesize_dd(phi, arch, &p.name, schedule)?;
                    let verified = match &out.synthesis.machine {
                        Some(m) => Some(uca_model_check(&out.automaton, m)?.holds),
                        None => None,
                    };
                    let m = out.synthesis.machine;
                    Ok((
                        m.clone(),
                        ProcessReport {
                            name: p.name.clone(),
                            sizes: out.sizes,
                            attempts: out.synthesis.attempts,
                            machine_states: m.as_ref().map(Moore::len),
                            dd_verified: verified,
                            seconds: t.elapsed().as_secs_f64(),
                        },
                    ))
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("synthesis thread panicked")).collect()
    });

    let mut machines = Vec::new();
    let mut processes = Vec::new();
    for r in results {
        let (m, rep) = r?;
        machines.push(m);
        processes.push(rep);
    }
    let mut report = PipelineReport {
        formula: phi.to_string(),
        formula_automaton_states: a_phi.len(),
        processes,
        composed_states: None,
        system_dd_states: None,
        composed_dd: None,
        composed_winning: None,
        counterexamples: Vec::new(),
        seconds: 0.0,
    };
    let composed = if machines.iter().all(Option::is_some) {
        let mut it = machines.iter().flatten();
        let first = it.next().ok_or_else(|| Error::Architecture("no processes declared".into()))?.clone();
        let composed = it.try_fold(first, |acc, m| acc.compose(m))?.minimize();
        let dd = build_dd_uca(phi, &system)?;
        let dd_check = uca_model_check(&dd.uca, &composed)?;
        let win_check = uca_model_check(&ltl_to_uca(phi, &system.variables())?, &composed)?;
        for (what, mc) in [("delay-dominance", &dd_check), ("specification", &win_check)] {
            if let Some(g) = &mc.counterexample {
                report.counterexamples.push(format!("{what}: {g}"));
            }
        }
        report.composed_states = Some(composed.len());
        report.system_dd_states = Some(dd.uca.len());
        report.composed_dd = Some(dd_check.holds);
        report.composed_winning = Some(win_check.holds);
        Some(composed)
    } else {
        None
    };
    report.seconds = start.elapsed().as_secs_f64();
    Ok(Pipeline {
        machines,
        composed,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::arch::Process;
    use crate::fixtures;
    use crate::ltl::parse_ltl;

    #[test]
    fn message_system_is_solved_compositionally() {
        let arch = fixtures::messages_arch();
        let phi = parse_ltl(fixtures::MESSAGES_LTL, &arch.system().variables()).unwrap();
        let run = compositional_synth(&phi, &arch, &Schedule::default()).unwrap();
        let r = &run.report;
        assert!(r.processes.iter().all(|p| p.dd_verified == Some(true)));
        assert_eq!(r.composed_dd, Some(true));
        assert_eq!(r.composed_winning, Some(true));
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn unrealizable_specification_is_not_winning() {
        let proc = |n: &str, i: &str, o: &str| Process {
            name: n.into(),
            inputs: Alphabet::parse_list(i).unwrap(),
            outputs: Alphabet::parse_list(o).unwrap(),
        };
        let arch = Architecture::new(vec![proc("p1", "m2", "m1"), proc("p2", "m1", "m2")], Alphabet::default()).unwrap();
        let phi = parse_ltl("F m1 & G !m1", &arch.system().variables()).unwrap();
        let run = compositional_synth(&phi, &arch, &Schedule::default()).unwrap();
        assert_ne!(run.report.composed_winning, Some(true));
    }

    #[test]
    fn single_process_is_rejected() {
        let arch = fixtures::eager_arch();
        let phi = parse_ltl(fixtures::EAGER_LTL, &arch.system().variables()).unwrap();
        assert!(matches!(
            compositional_synth(&phi, &arch, &Schedule::default()),
            Err(Error::Architecture(_))
        ));
    }
}
