//! Distributed architectures: processes with their own inputs and outputs.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Process {
    pub name: String,
    pub inputs: Alphabet,
    pub outputs: Alphabet,
}

impl Process {
    /// Inputs followed by outputs.
    pub fn variables(&self) -> Alphabet {
        self.inputs.union(&self.outputs).expect("inputs and outputs are disjoint")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Architecture {
    pub processes: Vec<Process>,
    pub env_outputs: Alphabet,
}

impl Architecture {
    pub fn new(processes: Vec<Process>, env_outputs: Alphabet) -> Result<Self> {
        if processes.is_empty() {
            return Err(Error::Architecture("no processes declared".into()));
        }
        for (j, p) in processes.iter().enumerate() {
            if let Some(v) = p.inputs.props().iter().find(|v| p.outputs.contains(v)) {
                return Err(Error::Architecture(format!("`{v}` is both input and output of {}", p.name)));
            }
            if let Some(v) = p.outputs.props().iter().find(|v| env_outputs.contains(v)) {
                return Err(Error::Architecture(format!("`{v}` is output by {} and by the environment", p.name)));
            }
            for q in &processes[..j] {
                if q.name == p.name {
                    return Err(Error::Architecture(format!("duplicate process `{}`", p.name)));
                }
                if let Some(v) = p.outputs.props().iter().find(|v| q.outputs.contains(v)) {
                    return Err(Error::OutputOverlap(v.clone()));
                }
            }
        }
        Ok(Architecture { processes, env_outputs })
    }

    pub fn process(&self, name: &str) -> Result<&Process> {
        self.processes
            .iter()
            .find(|p| p.name == name)
            .ok_or_else(|| Error::Architecture(format!("no process named `{name}`")))
    }

    /// All process outputs, in declaration order.
    pub fn outputs(&self) -> Alphabet {
        self.processes
            .iter()
            .fold(Alphabet::default(), |acc, p| acc.union(&p.outputs).expect("bounded alphabet"))
    }

    /// The whole system seen as one process: it reads whatever no process writes.
    pub fn system(&self) -> Process {
        let outputs = self.outputs();
        let inputs = self
            .processes
            .iter()
            .fold(self.env_outputs.clone(), |acc, p| acc.union(&p.inputs).expect("bounded alphabet"))
            .minus(&outputs);
        Process {
            name: "system".into(),
            inputs,
            outputs,
        }
    }

    /// Compositional synthesis needs at least two processes.
    pub fn require_distributed(&self) -> Result<()> {
        if self.processes.len() < 2 {
            return Err(Error::Architecture(format!(
                "a distributed architecture needs at least two processes, found {}",
                self.processes.len()
            )));
        }
        Ok(())
    }
}
