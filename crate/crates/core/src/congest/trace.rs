use serde::{Deserialize, Serialize};

/// Cost of one phase. Phases are separated by global barriers, so
/// `honest_rounds` is also the length of the phase's interval.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseTrace {
    pub name: String,
    pub honest_rounds: u32,
    pub charged_rounds: u64,
    pub max_bits: u32,
    pub messages: u64,
    pub pa_calls: u32,
}

impl PhaseTrace {
    pub fn new(name: &str) -> Self {
        PhaseTrace { name: name.to_string(), ..PhaseTrace::default() }
    }

    /// Merges another run into this phase.
    pub fn absorb(&mut self, other: &PhaseTrace) {
        self.honest_rounds += other.honest_rounds;
        self.charged_rounds += other.charged_rounds;
        self.max_bits = self.max_bits.max(other.max_bits);
        self.messages += other.messages;
        self.pa_calls += other.pa_calls;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub phases: Vec<PhaseTrace>,
}

impl RoundTrace {
    pub fn push(&mut self, phase: PhaseTrace) {
        self.phases.push(phase);
    }

    pub fn honest_rounds(&self) -> u64 {
        self.phases.iter().map(|p| u64::from(p.honest_rounds)).sum()
    }

    pub fn charged_rounds(&self) -> u64 {
        self.phases.iter().map(|p| p.charged_rounds).sum()
    }

    pub fn max_bits(&self) -> u32 {
        self.phases.iter().map(|p| p.max_bits).max().unwrap_or(0)
    }

    pub fn pa_calls(&self) -> u32 {
        self.phases.iter().map(|p| p.pa_calls).sum()
    }

    pub fn phase(&self, name: &str) -> Option<&PhaseTrace> {
        self.phases.iter().find(|p| p.name == name)
    }
}
